#include "qreset/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

namespace qreset::io {

namespace {

double entry_number(const json& v, const char* what) {
  if (!v.is_number())
    throw std::invalid_argument(std::string("entry field is not a number: ") +
                                what);
  return v.get<double>();
}

double beta_from_json(const json& b) {
  if (b.is_string()) {
    if (b.get<std::string>() == "inf")
      return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("beta: expected a number or \"inf\"");
  }
  return entry_number(b, "beta");
}

}  // namespace

Matrix matrix_from_entries(const json& entries, int n) {
  if (!entries.is_array())
    throw std::invalid_argument("entries: expected an array");
  Matrix m = Matrix::Zero(n, n);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> given(n, n);
  given.setConstant(false);
  for (const json& e : entries) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("entries: each entry is [row, col, re, im]");
    const int r = static_cast<int>(entry_number(e[0], "row"));
    const int c = static_cast<int>(entry_number(e[1], "col"));
    if (r < 0 || r >= n || c < 0 || c >= n)
      throw std::invalid_argument("entries: index out of range");
    m(r, c) = Complex(entry_number(e[2], "re"), entry_number(e[3], "im"));
    given(r, c) = true;
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (given(r, c) && !given(c, r)) m(c, r) = std::conj(m(r, c));
  return m;
}

json matrix_to_entries(const Matrix& m) {
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = r; c < m.cols(); ++c)
      if (m(r, c) != Complex(0.0, 0.0))
        entries.push_back({r, c, m(r, c).real(), m(r, c).imag()});
  return entries;
}

QuadraticModel model_from_json(const json& j) {
  if (!j.contains("n_sites"))
    throw std::invalid_argument("model: missing n_sites");
  const int n = j.at("n_sites").get<int>();
  if (n < 1) throw std::invalid_argument("model: n_sites must be >= 1");
  Statistics stats = Statistics::Fermionic;
  if (j.contains("statistics")) {
    const std::string s = j.at("statistics").get<std::string>();
    if (s == "fermionic")
      stats = Statistics::Fermionic;
    else if (s == "bosonic")
      stats = Statistics::Bosonic;
    else
      throw std::invalid_argument("model: unknown statistics \"" + s + "\"");
  }
  const Matrix m = j.contains("entries")
                       ? matrix_from_entries(j.at("entries"), n)
                       : Matrix::Zero(n, n);
  return build_custom(m, stats);
}

json model_to_json(const QuadraticModel& model) {
  return json{{"n_sites", model.n_sites},
              {"statistics", model.statistics == Statistics::Fermionic
                                 ? "fermionic"
                                 : "bosonic"},
              {"entries", matrix_to_entries(model.coupling)}};
}

QuadraticModel load_model(const std::string& path) {
  return model_from_json(load_json_file(path));
}

SPDM spdm_from_json(const json& j) {
  const int n = j.at("n_sites").get<int>();
  if (n < 1) throw std::invalid_argument("spdm: n_sites must be >= 1");
  return matrix_from_entries(j.at("entries"), n);
}

json spdm_to_json(const SPDM& rho) {
  return json{{"n_sites", static_cast<int>(rho.rows())},
              {"entries", matrix_to_entries(rho)}};
}

ResetProtocol protocol_from_json(const json& j, const QuadraticModel& model,
                                 const Partition& partition,
                                 std::string* warning) {
  const double tau = j.contains("tau") ? j.at("tau").get<double>() : 0.0;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "RI" || mode == "EC") {
    const double beta = beta_from_json(j.at("beta"));
    return make_thermal_protocol(model, partition,
                                 mode == "RI"
                                     ? ResetMode::RepeatedInteractions
                                     : ResetMode::EvolvingCorrelations,
                                 beta, tau);
  }
  if (mode != "custom")
    throw std::invalid_argument("protocol: unknown mode \"" + mode + "\"");
  const json& entries = j.at("custom_pairs");
  if (!entries.is_array())
    throw std::invalid_argument("protocol: custom_pairs must be an array");
  PairList pairs;
  Vector values(entries.size());
  Eigen::Index i = 0;
  for (const json& e : entries) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("custom_pairs: each entry is [a, b, re, im]");
    pairs.push_back({static_cast<int>(entry_number(e[0], "a")),
                     static_cast<int>(entry_number(e[1], "b"))});
    values(i++) = Complex(entry_number(e[2], "re"), entry_number(e[3], "im"));
  }
  if (warning)
    *warning =
        "custom reset set accepted as-is; fermionic admissibility of the "
        "pinned values is not checked";
  return make_custom_protocol(model.n_sites, pairs, values, tau);
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("model")) cfg.model = j.at("model");
  if (j.contains("partition")) {
    cfg.system = j.at("partition").at("system").get<std::vector<int>>();
  } else if (j.contains("system")) {
    cfg.system = j.at("system").get<std::vector<int>>();
  }
  if (j.contains("mode")) cfg.modes = {j.at("mode").get<std::string>()};
  if (j.contains("modes"))
    cfg.modes = j.at("modes").get<std::vector<std::string>>();
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("beta")) {
    const json& b = j.at("beta");
    if (b.is_array())
      for (const json& x : b) cfg.betas.push_back(beta_from_json(x));
    else
      cfg.betas.push_back(beta_from_json(b));
  }
  if (j.contains("custom_pairs")) cfg.custom_pairs = j.at("custom_pairs");
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  if (j.contains("target")) cfg.target = j.at("target").get<std::string>();
  if (j.contains("occupations")) {
    const auto occ = j.at("occupations").get<std::vector<double>>();
    cfg.env_occupations =
        Eigen::Map<const RealVector>(occ.data(), occ.size());
  }
  if (j.contains("reset_block")) cfg.reset_block = j.at("reset_block");
  if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from_json(load_json_file(path));
}

QuadraticModel build_model(const json& model_spec) {
  if (model_spec.is_null())
    throw std::invalid_argument("config: missing model");
  if (model_spec.contains("file"))
    return load_model(model_spec.at("file").get<std::string>());
  if (model_spec.contains("builder")) {
    const std::string builder = model_spec.at("builder").get<std::string>();
    if (builder == "ring") {
      const int n = model_spec.at("n_sites").get<int>();
      const double hopping = model_spec.contains("hopping")
                                 ? model_spec.at("hopping").get<double>()
                                 : 1.0;
      return build_ring(n, hopping);
    }
    throw std::invalid_argument("config: unknown builder \"" + builder + "\"");
  }
  return model_from_json(model_spec);
}

std::string format_full(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string classification_name(MapClassification c) {
  switch (c) {
    case MapClassification::Attractive:
      return "attractive";
    case MapClassification::Marginal:
      return "marginal";
    case MapClassification::Unphysical:
      return "unphysical";
  }
  return "unknown";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace qreset::io
