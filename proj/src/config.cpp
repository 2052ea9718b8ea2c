#include "qsymm/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qsymm/errors.hpp"

namespace qsymm {

int AnalysisOptions::oracle_cutoff_for(int n) const {
  if (oracle_cutoff) return *oracle_cutoff;
  return n == 1 ? 60 : n == 2 ? 40 : 20;
}

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0)) throw InputError("family.grid.step must be positive");
  if (stop < start) throw InputError("family.grid.stop must not be below start");
  const long steps = std::lround((stop - start) / step);
  std::vector<double> out;
  for (long i = 0; i <= steps; ++i)
    out.push_back(steps == 0 ? start : start + static_cast<double>(i) * (stop - start) / static_cast<double>(steps));
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw InputError(field + ": " + what); }

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !(j.is_number() && std::floor(j.get<double>()) == j.get<double>()))
    fail(field, "expected an integer");
  return static_cast<int>(j.get<double>());
}

cplx complex_entry(const json& e, const std::string& field) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  fail(field, "expected a number or an [re, im] pair");
}

std::string at(const std::string& f, size_t i) { return f + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& f, size_t i, size_t j) { return at(f, i) + "[" + std::to_string(j) + "]"; }

// Accepts n rows of n entries or a flat row-major list of n^2 entries.
template <class Entry, class Mat>
Mat parse_matrix(const json& j, const std::string& field, int n, Entry entry) {
  if (!j.is_array()) fail(field, "expected an array");
  Mat M(n, n);
  const bool nested = j.size() == static_cast<size_t>(n) && j[0].is_array() &&
                      (n > 1 || j[0].size() == 1);
  if (nested) {
    for (size_t r = 0; r < j.size(); ++r) {
      if (!j[r].is_array() || j[r].size() != static_cast<size_t>(n))
        fail(at(field, r), "expected a row of " + std::to_string(n) + " entries");
      for (size_t c = 0; c < j[r].size(); ++c) M(r, c) = entry(j[r][c], at(field, r, c));
    }
    return M;
  }
  if (j.size() != static_cast<size_t>(n) * n)
    fail(field, "expected " + std::to_string(n) + "x" + std::to_string(n) + " entries, got " +
                    std::to_string(j.size()));
  for (size_t k = 0; k < j.size(); ++k) M(k / n, k % n) = entry(j[k], at(field, k));
  return M;
}

const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

}  // namespace

cmat parse_complex_matrix(const json& j, const std::string& field, int n) {
  return parse_matrix<decltype(&complex_entry), cmat>(j, field, n, &complex_entry);
}

namespace {

rmat parse_real_matrix(const json& j, const std::string& field, int n) {
  return parse_matrix<decltype(&number), rmat>(j, field, n, &number);
}

QuadraticSymbol parse_symbol(const json& j, const std::string& prefix, int n, std::optional<rmat> kappa,
                             const Tolerances& tol, bool b_optional) {
  auto block = [&](const char* key, bool optional) -> cmat {
    const json* m = member(j, key);
    if (!m) {
      if (optional) return cmat::Zero(n, n);
      fail(prefix + key, "missing");
    }
    return parse_complex_matrix(*m, prefix + key, n);
  };
  return QuadraticSymbol::make(block("A", false), block("B", b_optional), block("C", false), std::move(kappa), tol);
}

}  // namespace

Config parse_config(const json& j) {
  if (!j.is_object()) throw InputError("config: expected an object at top level");
  Config cfg;
  const json* jn = member(j, "n");
  if (!jn) fail("n", "missing");
  const int n = integer(*jn, "n");
  if (n < 1) fail("n", "must be positive");

  if (const json* o = member(j, "options")) {
    if (!o->is_object()) fail("options", "expected an object");
    AnalysisOptions& op = cfg.options;
    if (const json* v = member(*o, "lattice_cutoff")) op.lattice_cutoff = number(*v, "options.lattice_cutoff");
    if (const json* v = member(*o, "oracle_cutoff")) op.oracle_cutoff = integer(*v, "options.oracle_cutoff");
    if (const json* v = member(*o, "k_compare")) op.k_compare = integer(*v, "options.k_compare");
    if (const json* v = member(*o, "model_degree")) op.model_degree = integer(*v, "options.model_degree");
    if (const json* v = member(*o, "run_oracle")) {
      if (!v->is_boolean()) fail("options.run_oracle", "expected a boolean");
      op.run_oracle = v->get<bool>();
    }
    if (const json* t = member(*o, "tolerances")) {
      if (!t->is_object()) fail("options.tolerances", "expected an object");
      auto set = [&](const char* key, double& dst) {
        if (const json* v = member(*t, key)) {
          dst = number(*v, std::string("options.tolerances.") + key);
          if (!(dst > 0.0)) fail(std::string("options.tolerances.") + key, "must be positive");
        }
      };
      set("rel", op.tol.rel);
      set("rank_rel", op.tol.rank_rel);
      set("cluster_abs", op.tol.cluster_abs);
      set("cluster_rel", op.tol.cluster_rel);
      set("structure", op.tol.structure);
    }
    if (op.k_compare < 1) fail("options.k_compare", "must be positive");
    if (op.model_degree < 0) fail("options.model_degree", "must be nonnegative");
  }
  cfg.options.tol = cfg.options.tol.with_env_override();

  std::optional<rmat> kappa;
  if (const json* k = member(j, "kappa")) kappa = parse_real_matrix(*k, "kappa", n);
  cfg.symbol = parse_symbol(j, "", n, kappa, cfg.options.tol, true);

  if (const json* f = member(j, "family")) {
    if (!f->is_object()) fail("family", "expected an object");
    FamilyConfig fc;
    fc.family.base = cfg.symbol;
    if (const json* p = member(*f, "parameter")) {
      if (!p->is_string()) fail("family.parameter", "expected a string");
      fc.family.parameter = p->get<std::string>();
    }
    const json* d = member(*f, "direction");
    if (!d || !d->is_object()) fail("family.direction", "expected an object with A, B, C");
    auto dir_block = [&](const char* key) -> cmat {
      const json* m = member(*d, key);
      return m ? parse_complex_matrix(*m, std::string("family.direction.") + key, n) : cmat::Zero(n, n);
    };
    fc.family.direction = QuadraticSymbol::make(dir_block("A"), dir_block("B"), dir_block("C"), std::nullopt,
                                                cfg.options.tol);
    const json* g = member(*f, "grid");
    if (!g || !g->is_object()) fail("family.grid", "expected an object with start, stop, step");
    auto need = [&](const char* key) {
      const json* v = member(*g, key);
      if (!v) fail(std::string("family.grid.") + key, "missing");
      return number(*v, std::string("family.grid.") + key);
    };
    fc.grid.start = need("start");
    fc.grid.stop = need("stop");
    fc.grid.step = need("step");
    fc.grid.points();
    cfg.family = std::move(fc);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const cmat& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const rmat& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json config_to_json(const QuadraticSymbol& q, const AnalysisOptions& options) {
  json j;
  j["n"] = q.n;
  j["A"] = matrix_to_json(q.A);
  j["B"] = matrix_to_json(q.B);
  j["C"] = matrix_to_json(q.C);
  if (q.kappa) j["kappa"] = matrix_to_json(*q.kappa);
  json o;
  if (options.lattice_cutoff) o["lattice_cutoff"] = *options.lattice_cutoff;
  if (options.oracle_cutoff) o["oracle_cutoff"] = *options.oracle_cutoff;
  o["k_compare"] = options.k_compare;
  o["model_degree"] = options.model_degree;
  o["run_oracle"] = options.run_oracle;
  o["tolerances"] = {{"rel", options.tol.rel},
                     {"rank_rel", options.tol.rank_rel},
                     {"cluster_abs", options.tol.cluster_abs},
                     {"cluster_rel", options.tol.cluster_rel},
                     {"structure", options.tol.structure}};
  j["options"] = std::move(o);
  return j;
}

}  // namespace qsymm
