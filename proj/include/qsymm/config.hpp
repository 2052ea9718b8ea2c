#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsymm/quadform.hpp"
#include "qsymm/tolerance.hpp"

namespace qsymm {

using json = nlohmann::ordered_json;

struct AnalysisOptions {
  std::optional<double> lattice_cutoff;  // default: 5 x ground value
  std::optional<int> oracle_cutoff;      // default: 60 / 40 / 20 for n = 1 / 2 / 3
  int k_compare = 6;
  int model_degree = 4;
  bool run_oracle = true;
  Tolerances tol;

  int oracle_cutoff_for(int n) const;
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start + i (stop - start) / steps, i = 0..steps, with steps rounded from
  /// (stop - start) / step.
  std::vector<double> points() const;
};

struct FamilyConfig {
  SymbolFamily family;
  GridSpec grid;
};

struct Config {
  QuadraticSymbol symbol;
  AnalysisOptions options;
  std::optional<FamilyConfig> family;
};

/// Validates the config tree. Every failure is an InputError naming the
/// offending field. QSYMM_TOL_OVERRIDE replaces tolerances.rel afterwards.
Config parse_config(const json& j);
/// Reads and parses a JSON file; IoError when it cannot be read.
Config load_config(const std::string& path);

/// Complex matrices as rows of [re, im] pairs; real matrices as rows of
/// numbers.
json matrix_to_json(const cmat& M);
json matrix_to_json(const rmat& M);
json complex_to_json(cplx z);
cmat parse_complex_matrix(const json& j, const std::string& field, int n);

/// Input echo: the symbol and options in the config schema.
json config_to_json(const QuadraticSymbol& q, const AnalysisOptions& options);

}  // namespace qsymm
