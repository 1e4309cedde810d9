#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "fracam/constraints.h"
#include "fracam/dynamics.h"
#include "fracam/manifest.h"
#include "fracam/quantum.h"

namespace fracam {

// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);

nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);
nlohmann::ordered_json analysis_to_json(const ConstraintAnalysis& analysis,
                                        const RunManifest& manifest);

struct SpectrumTable {
  struct Row {
    int n = 0;
    double eigenvalue = 0.0;
    double formula = 0.0;
    double abs_error = 0.0;
  };
  std::vector<Row> rows;
  double max_abs_error = 0.0;
};

// Trusted eigenvalues of the reduced FAM operator against
// alpha B k + (n + 1/2) hbar (or the selection's variant).
SpectrumTable fam_table(const SpectrumResult& result, const ModelConfig& config,
                        FieldSelection selection);
// Full-model Fourier spectrum against n hbar, n = -N/2 .. N/2-1.
SpectrumTable full_model_table(const SpectrumResult& result, double hbar);

// Columns: n,eigenvalue,formulaValue,absError; manifest echoed as a
// leading '#' comment line.
void write_spectrum_csv(std::ostream& os, const SpectrumTable& table, const RunManifest& manifest);

// Columns: t,x1,x2,p1,p2,J,H,phi1,phi2.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const RunManifest& manifest);

nlohmann::ordered_json reduction_to_json(const ReductionReport& report, const RunManifest& manifest);

}  // namespace fracam
