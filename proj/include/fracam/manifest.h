#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracam/models.h"

namespace fracam {

struct RunManifest {
  ModelConfig config;
  FieldSelection selection = FieldSelection::Both;
  ReductionMode mode = ReductionMode::Reduced;
  int N = 64;
  double trusted_fraction = 0.5;
  double dt = 1e-3;
  int steps = 10000;
  std::uint64_t seed = 7;
  std::string out;  // empty: stdout
  std::vector<double> m_sweep;
  std::array<double, 2> x0{1.0, 0.0};
  // |J - alpha B k| must exceed k sqrt(alpha M) or the orbit falls onto the
  // filament; p2 = 1.5 keeps the defaults well clear (r stays in [0.53, 1]).
  std::array<double, 2> p0{0.0, 1.5};

  // Throws ConfigError.
  void validate() const;
};

// Applies keys m, alpha, B, k, rho, K, hbar, selection, mode from a JSON
// object or a TOML-style "key = value" file. Unknown keys are rejected.
void apply_config_text(std::string_view text, RunManifest& manifest);
void apply_config_file(const std::string& path, RunManifest& manifest);

}  // namespace fracam
