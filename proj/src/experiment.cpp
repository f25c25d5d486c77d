// Copyright 2026 The ghzlbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzlbc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ghzlbc/errors.hpp"

namespace ghzlbc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigParseError, where + ": " + what);
}

void reject_unknown(const json& object, const std::string& path, const std::set<std::string>& allowed) {
  if (!object.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) config_error(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& field(const json& object, const std::string& path, const std::string& key) {
  const auto it = object.find(key);
  if (it == object.end()) config_error(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) config_error(path, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) config_error(path, "expected a finite number");
  return v;
}

int integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) config_error(path, "expected an integer");
  return value.get<int>();
}

std::string text(const json& value, const std::string& path) {
  if (!value.is_string()) config_error(path, "expected a string");
  return value.get<std::string>();
}

/// Re-raises library validation errors as config errors tied to a field.
template <typename F>
auto at_field(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

std::size_t line_of(const std::string& source, std::size_t byte) {
  byte = std::min(byte, source.size());
  return 1 + static_cast<std::size_t>(std::count(source.begin(), source.begin() + static_cast<long>(byte), '\n'));
}

void append_optional(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += format_real(*v);
}

}  // namespace

std::vector<double> ExperimentConfig::probabilities_at(double value) const {
  std::vector<double> out;
  for (const auto& a : noise.assignments()) {
    if (const auto* p = std::get_if<Probability>(&a.channel.parameter)) {
      out.push_back(p->value);
    } else if (parameter == GridParameter::Probability) {
      out.push_back(value);
    } else {
      out.push_back(p_of_t(std::get<DecayRate>(a.channel.parameter).value, value));
    }
  }
  return out;
}

std::vector<GridPoint> ExperimentConfig::grid() const {
  std::vector<GridPoint> out;
  out.reserve(points.size());
  for (double v : points) out.push_back({v, probabilities_at(v)});
  return out;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error("line " + std::to_string(line_of(json_text, e.byte)), e.what());
  }
  reject_unknown(root, "", {"n_qubits", "state", "channels", "grid", "methods", "tolerances", "per_bipartition"});

  const int n = integer(field(root, "", "n_qubits"), "n_qubits");
  if (n < 2 || n > 12) config_error("n_qubits", "must be between 2 and 12");

  const json& state = field(root, "", "state");
  reject_unknown(state, "state", {"alpha_re", "alpha_im", "beta_re", "beta_im", "pattern"});
  const Complex alpha{number(field(state, "state", "alpha_re"), "state.alpha_re"),
                      state.contains("alpha_im") ? number(state["alpha_im"], "state.alpha_im") : 0.0};
  const Complex beta{number(field(state, "state", "beta_re"), "state.beta_re"),
                     state.contains("beta_im") ? number(state["beta_im"], "state.beta_im") : 0.0};
  const std::string pattern = text(field(state, "state", "pattern"), "state.pattern");
  GhzSpec spec = at_field("state", [&] { return GhzSpec(n, alpha, beta, pattern); });

  const json& channels = field(root, "", "channels");
  if (!channels.is_array()) config_error("channels", "expected an array");
  std::vector<ChannelAssignment> assignments;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const std::string path = "channels[" + std::to_string(i) + "]";
    const json& c = channels[i];
    reject_unknown(c, path, {"qubit", "kind", "p", "gamma"});
    ChannelAssignment a;
    a.qubit = integer(field(c, path, "qubit"), path + ".qubit");
    const std::string kind = text(field(c, path, "kind"), path + ".kind");
    const auto parsed = parse_channel_kind(kind);
    if (!parsed) config_error(path + ".kind", "expected AD, D or PD, got '" + kind + "'");
    a.channel.kind = *parsed;
    const bool has_p = c.contains("p");
    const bool has_gamma = c.contains("gamma");
    if (has_p == has_gamma) config_error(path, "exactly one of p or gamma is required");
    if (has_p) {
      a.channel.parameter = Probability{number(c["p"], path + ".p")};
    } else {
      a.channel.parameter = DecayRate{number(c["gamma"], path + ".gamma")};
    }
    at_field(has_p ? path + ".p" : path + ".gamma", [&] {
      a.channel.validate();
      return 0;
    });
    assignments.push_back(a);
  }
  NoiseConfig noise = at_field("channels", [&] { return NoiseConfig(n, assignments); });

  ExperimentConfig config(std::move(spec), std::move(noise));

  const json& grid = field(root, "", "grid");
  reject_unknown(grid, "grid", {"parameter", "points"});
  const std::string parameter = text(field(grid, "grid", "parameter"), "grid.parameter");
  if (parameter == "p") {
    config.parameter = GridParameter::Probability;
  } else if (parameter == "t") {
    config.parameter = GridParameter::Time;
    for (std::size_t i = 0; i < config.noise.assignments().size(); ++i) {
      if (!std::holds_alternative<DecayRate>(config.noise.assignments()[i].channel.parameter)) {
        config_error("channels[" + std::to_string(i) + "]", "a time grid requires gamma on every channel");
      }
    }
  } else {
    config_error("grid.parameter", "expected \"p\" or \"t\", got '" + parameter + "'");
  }
  const json& points = field(grid, "grid", "points");
  if (!points.is_array()) config_error("grid.points", "expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = "grid.points[" + std::to_string(i) + "]";
    const double v = number(points[i], path);
    if (v < 0.0) config_error(path, "grid values must be >= 0");
    if (config.parameter == GridParameter::Probability && v > 1.0) config_error(path, "probability above 1");
    if (!config.points.empty() && v < config.points.back()) config_error(path, "grid must be ascending");
    config.points.push_back(v);
  }

  if (root.contains("methods")) {
    const json& methods = root["methods"];
    if (!methods.is_array()) config_error("methods", "expected an array");
    for (std::size_t i = 0; i < methods.size(); ++i) {
      const std::string path = "methods[" + std::to_string(i) + "]";
      const std::string m = text(methods[i], path);
      if (m == "spectral") {
        config.spectral = true;
      } else if (m == "factorized") {
        config.factorized = true;
      } else if (m != "direct") {
        config_error(path, "expected direct, spectral or factorized, got '" + m + "'");
      }
    }
  }
  if (root.contains("tolerances")) {
    const json& tol = root["tolerances"];
    reject_unknown(tol, "tolerances", {"spectral", "factorized"});
    if (tol.contains("spectral")) config.tolerances.spectral = number(tol["spectral"], "tolerances.spectral");
    if (tol.contains("factorized")) {
      config.tolerances.factorized = number(tol["factorized"], "tolerances.factorized");
    }
    if (config.tolerances.spectral <= 0.0 || config.tolerances.factorized <= 0.0) {
      config_error("tolerances", "tolerances must be positive");
    }
  }
  if (root.contains("per_bipartition")) {
    if (!root["per_bipartition"].is_boolean()) config_error("per_bipartition", "expected a boolean");
    config.per_bipartition = root["per_bipartition"].get<bool>();
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigParseError, path.string() + ": cannot open config");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

ordered_json to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["n_qubits"] = config.state.n_qubits();
  j["state"] = {{"alpha_re", config.state.alpha().real()},
                {"alpha_im", config.state.alpha().imag()},
                {"beta_re", config.state.beta().real()},
                {"beta_im", config.state.beta().imag()},
                {"pattern", config.state.pattern()}};
  ordered_json channels = ordered_json::array();
  for (const auto& a : config.noise.assignments()) {
    ordered_json c;
    c["qubit"] = a.qubit;
    c["kind"] = std::string(to_string(a.channel.kind));
    if (const auto* p = std::get_if<Probability>(&a.channel.parameter)) {
      c["p"] = p->value;
    } else {
      c["gamma"] = std::get<DecayRate>(a.channel.parameter).value;
    }
    channels.push_back(std::move(c));
  }
  j["channels"] = std::move(channels);
  j["grid"] = {{"parameter", config.parameter == GridParameter::Probability ? "p" : "t"},
               {"points", config.points}};
  ordered_json methods = ordered_json::array({"direct"});
  if (config.spectral) methods.push_back("spectral");
  if (config.factorized) methods.push_back("factorized");
  j["methods"] = std::move(methods);
  j["tolerances"] = {{"spectral", config.tolerances.spectral}, {"factorized", config.tolerances.factorized}};
  j["per_bipartition"] = config.per_bipartition;
  return j;
}

std::vector<SweepRow> run_evolve(const ExperimentConfig& config) {
  VerifyOptions options;
  options.run_spectral = config.spectral;
  options.run_factorized = config.factorized;
  const VerificationReport report = verify(config.state, config.noise, config.grid(), options);

  std::vector<SweepRow> rows;
  rows.reserve(report.rows.size());
  for (const auto& r : report.rows) {
    SweepRow row;
    row.value = r.value;
    row.lbc_direct = r.closed_form;
    row.lbc_spectral = r.spectral;
    row.lbc_factorized = r.factorized;
    row.condition = r.condition ? std::string(to_string(*r.condition)) : "unknown";
    row.max_deviation = r.max_deviation;
    row.per_bipartition = r.closed_form_terms;
    for (const auto& e : r.errors) row.error += (row.error.empty() ? "" : "; ") + e;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_real(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
  const bool any_error = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); });
  const bool deviation = config.method_count() > 1;

  std::string header = config.parameter == GridParameter::Probability ? "p" : "t";
  header += ",lbc_direct";
  if (config.spectral) header += ",lbc_spectral";
  if (config.factorized) header += ",lbc_factorized,condition";
  if (deviation) header += ",max_deviation";
  if (config.per_bipartition) {
    for (const auto& part : bipartitions(config.state.n_qubits())) header += ",C[" + part.label() + "]";
  }
  if (any_error) header += ",error";
  out << header << '\n';

  for (const auto& row : rows) {
    std::string line = format_real(row.value);
    append_optional(line, row.lbc_direct);
    if (config.spectral) append_optional(line, row.lbc_spectral);
    if (config.factorized) {
      append_optional(line, row.lbc_factorized);
      line += ',' + row.condition;
    }
    if (deviation) line += ',' + format_real(row.max_deviation);
    if (config.per_bipartition) {
      const std::size_t count = bipartitions(config.state.n_qubits()).size();
      for (std::size_t i = 0; i < count; ++i) {
        line += ',';
        if (i < row.per_bipartition.size()) line += format_real(row.per_bipartition[i].concurrence);
      }
    }
    if (any_error) {
      std::string cleaned = row.error;
      std::replace(cleaned.begin(), cleaned.end(), ',', ';');
      std::replace(cleaned.begin(), cleaned.end(), '\n', ' ');
      line += ',' + cleaned;
    }
    out << line << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::IoError, "CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::IoError, "empty CSV");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::IoError, "CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                          std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open");
  return parse_csv(in);
}

VerifyOutcome run_verify(const ExperimentConfig& config, std::optional<double> tol_override,
                         const std::optional<CsvTable>& golden) {
  Tolerances tol = config.tolerances;
  if (tol_override) tol.spectral = tol.factorized = *tol_override;

  VerifyOptions options;
  options.run_spectral = true;
  options.run_factorized = true;
  const VerificationReport report = verify(config.state, config.noise, config.grid(), options);

  bool numerical_failure = false;
  int violations = 0;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["value"] = r.value;
    row["probabilities"] = r.probabilities;
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    row["lbc_direct"] = opt(r.closed_form);
    row["lbc_spectral"] = opt(r.spectral);
    row["lbc_factorized"] = opt(r.factorized);
    row["scenario"] = std::string(to_string(r.scenario));
    row["condition"] = r.condition ? std::string(to_string(*r.condition)) : "unknown";
    row["spectral_deviation"] = opt(r.spectral_deviation);
    row["factorized_deviation"] = opt(r.factorized_deviation);
    row["max_deviation"] = r.max_deviation;
    ordered_json terms = ordered_json::object();
    for (const auto& t : r.closed_form_terms) terms[t.bipartition.label()] = t.concurrence;
    row["per_bipartition"] = std::move(terms);
    row["errors"] = r.errors;

    bool violated = (r.spectral_deviation && *r.spectral_deviation > tol.spectral) ||
                    (r.factorized_deviation && *r.factorized_deviation > tol.factorized);
    for (const auto& e : r.errors) {
      if (e.rfind(std::string(to_string(ErrorCode::NumericalFailure)), 0) == 0) numerical_failure = true;
    }
    if (!r.closed_form) numerical_failure = true;
    row["within_tolerance"] = !violated;
    if (violated) ++violations;
    rows.push_back(std::move(row));
  }

  ordered_json golden_summary = nullptr;
  if (golden) {
    double golden_deviation = 0.0;
    bool mismatch = golden->rows.size() != report.rows.size();
    if (!mismatch) {
      const std::size_t value_col = 0;
      const std::size_t direct_col = golden->column("lbc_direct");
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& cells = golden->rows[i];
        const double value = std::stod(cells[value_col]);
        const auto& direct = report.rows[i].closed_form;
        if (std::abs(value - report.rows[i].value) > 1e-15 || !direct || cells[direct_col].empty()) {
          mismatch = true;
          break;
        }
        golden_deviation = std::max(golden_deviation, std::abs(std::stod(cells[direct_col]) - *direct));
      }
    }
    const bool ok = !mismatch && golden_deviation <= tol.factorized;
    if (!ok) ++violations;
    golden_summary = {{"rows_match", !mismatch}, {"max_deviation", golden_deviation}, {"passed", ok}};
  }

  ordered_json histogram = ordered_json::object();
  for (const auto& [k, v] : report.condition_histogram) histogram[k] = v;

  VerifyOutcome outcome;
  outcome.report["artifact_version"] = kArtifactVersion;
  outcome.report["config"] = to_json(config);
  outcome.report["rows"] = std::move(rows);
  outcome.report["summary"] = {{"max_deviation", report.max_deviation},
                               {"max_spectral_deviation", report.max_spectral_deviation},
                               {"max_factorized_deviation", report.max_factorized_deviation},
                               {"tolerances", {{"spectral", tol.spectral}, {"factorized", tol.factorized}}},
                               {"condition_histogram", std::move(histogram)},
                               {"golden", std::move(golden_summary)},
                               {"violations", violations}};
  outcome.exit_code = numerical_failure ? 3 : (violations > 0 ? 2 : 0);
  return outcome;
}

std::optional<double> sudden_death_threshold(const GhzSpec& spec, const NoiseConfig& config) {
  const DensityMatrix rho0 = ghz_density(spec);
  auto lbc = [&](double p) {
    const std::vector<double> probs(static_cast<std::size_t>(config.size()), p);
    return lbc_closed_form(xstate_view(evolve(rho0, config, probs), spec)).total;
  };
  double hi = 1.0 - 1e-6;
  if (lbc(hi) > 0.0) return std::nullopt;
  double lo = 0.0;
  if (lbc(lo) <= 0.0) return 0.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (lbc(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

std::vector<double> uniform_points(int grid_size) {
  if (grid_size < 2) throw Error(ErrorCode::ConfigMismatch, "grid size must be at least 2");
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) points.push_back(static_cast<double>(i) / (grid_size - 1));
  return points;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot open for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

}  // namespace ghzlbc
