#include "fracam/manifest.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fracam/errors.h"

namespace fracam {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + std::string(key) + "' expects a number, got '" +
                      std::string(text) + "'");
  }
  return value;
}

void apply_number(std::string_view key, double value, RunManifest& m) {
  if (key == "m") m.config.m = value;
  else if (key == "alpha") m.config.alpha = value;
  else if (key == "B") m.config.B = value;
  else if (key == "k") m.config.k = value;
  else if (key == "rho") m.config.rho = value;
  else if (key == "K") m.config.K = value;
  else if (key == "hbar") m.config.hbar = value;
  else throw ConfigError("unknown or non-numeric config key '" + std::string(key) + "'");
}

void apply_value(std::string_view key, std::string_view raw, bool quoted, RunManifest& m) {
  if (key == "selection") {
    m.selection = parse_selection(raw);
  } else if (key == "mode") {
    m.mode = parse_mode(raw);
  } else if (quoted) {
    throw ConfigError("config key '" + std::string(key) + "' expects a number");
  } else {
    apply_number(key, parse_number(key, raw), m);
  }
}

void apply_json(std::string_view text, RunManifest& m) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("JSON config must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      apply_value(key, value.get<std::string>(), true, m);
    } else if (value.is_number()) {
      apply_number(key, value.get<double>(), m);
    } else {
      throw ConfigError("config key '" + key + "' has unsupported type");
    }
  }
}

void apply_key_value(std::string_view text, RunManifest& m) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty() || view.front() == '[') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string_view key = trim(view.substr(0, eq));
    std::string_view value = trim(view.substr(eq + 1));
    bool quoted = false;
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
      quoted = true;
    }
    apply_value(key, value, quoted, m);
  }
}

}  // namespace

void RunManifest::validate() const {
  config.validate();
  if (N < 4) throw ConfigError("--N must be at least 4");
  if (!(trusted_fraction > 0.0 && trusted_fraction <= 1.0)) {
    throw ConfigError("trusted fraction must lie in (0, 1]");
  }
  if (!(dt > 0.0)) throw ConfigError("--dt must be positive");
  if (steps < 0) throw ConfigError("--steps must be nonnegative");
  for (double m : m_sweep) {
    if (!(m > 0.0)) throw ConfigError("--m-sweep masses must be positive");
  }
}

void apply_config_text(std::string_view text, RunManifest& manifest) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    apply_json(body, manifest);
  } else {
    apply_key_value(body, manifest);
  }
}

void apply_config_file(const std::string& path, RunManifest& manifest) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(buffer.str(), manifest);
}

}  // namespace fracam
