// File formats: model and density-matrix entry lists, protocol and
// experiment configs (JSON), and full-precision CSV helpers.

#pragma once

#include "qreset/model.hpp"
#include "qreset/reset.hpp"
#include "qreset/steadystate.hpp"
#include "qreset/types.hpp"

#include "json.hpp"

#include <string>

namespace qreset::io {

using json = nlohmann::json;

// Complex matrix as an entry list [[row, col, re, im], ...]. Only the upper
// triangle is required on input; missing lower entries are filled by
// conjugation. Output emits the nonzero upper triangle.
Matrix matrix_from_entries(const json& entries, int n);
json matrix_to_entries(const Matrix& m);

// Model file: {"n_sites", "statistics": "fermionic"|"bosonic", "entries"}.
QuadraticModel model_from_json(const json& j);
json model_to_json(const QuadraticModel& model);
QuadraticModel load_model(const std::string& path);

// Density-matrix file: {"n_sites", "entries"} (same entry-list format).
SPDM spdm_from_json(const json& j);
json spdm_to_json(const SPDM& rho);

// Protocol config: {"mode": "RI"|"EC"|"custom", "tau": real,
// "beta": real|"inf", "custom_pairs": [[a,b,re,im],...]}. RI/EC build
// thermal values from the model and partition. Custom sets are accepted as
// given (Hermitian closure enforced, fermionic admissibility not checked);
// a note for the caller to surface lands in *warning.
ResetProtocol protocol_from_json(const json& j, const QuadraticModel& model,
                                 const Partition& partition,
                                 std::string* warning = nullptr);

// Experiment config shared by the CLI subcommands. Optional fields keep
// their defaults when absent.
struct ExperimentConfig {
  json model;                      // {"builder": "ring", ...} or {"file": p}
  std::vector<int> system;         // partition (system site list)
  std::vector<std::string> modes;  // subset of {"RI", "EC", "custom"}
  double tau = 0.01;
  std::vector<double> betas;       // +inf allowed
  json custom_pairs;               // mode == "custom"
  std::string output;              // "" = stdout
  std::string target = "model";    // spectrum: model | map | generator
  RealVector env_occupations;      // qubit-init: diagonal reset occupations
  json reset_block;                // qubit-init: full reset block instead
  unsigned seed = 0;
  int threads = 0;                 // 0 = runtime default
};

ExperimentConfig experiment_config_from_json(const json& j);
ExperimentConfig load_experiment_config(const std::string& path);
QuadraticModel build_model(const json& model_spec);

// Decimal with 17 significant digits; round-trips the double exactly.
std::string format_full(double x);
std::string classification_name(MapClassification c);

void write_text_file(const std::string& path, const std::string& content);
json load_json_file(const std::string& path);

}  // namespace qreset::io
