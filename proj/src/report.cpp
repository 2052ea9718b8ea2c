#include "qsymm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "qsymm/errors.hpp"

namespace qsymm {

namespace {

std::string skip(const std::string& reason) { return "skipped: " + reason; }

void skip_all(AnalysisReport& r, const std::vector<std::string>& sections, const std::string& reason) {
  for (const auto& s : sections) r.skipped.emplace(s, reason);
}

ModelCheck check_model(const NormalForm& nf, const std::vector<cplx>& mu, int degree) {
  ModelCheck mc;
  mc.degree = degree;
  const MonomialMatrix mm = model_operator_matrix(nf.jordan.lambdas, nf.jordan.gammas, degree);
  mc.lower_triangular = mm.lower_triangular();
  std::vector<cplx> got = mm.eigenvalues();
  std::vector<cplx> want;
  for (const auto& e : lattice_by_degree(mu, degree)) want.push_back(e.value);
  auto by_re = [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
  std::sort(got.begin(), got.end(), by_re);
  std::sort(want.begin(), want.end(), by_re);
  mc.max_error = got.size() == want.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < std::min(got.size(), want.size()); ++i)
    mc.max_error = std::max(mc.max_error, std::abs(got[i] - want[i]));

  const double scale = std::max(1.0, mm.matrix.cwiseAbs().maxCoeff());
  bool offdiag = false, real = true;
  for (Eigen::Index r = 0; r < mm.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < mm.matrix.cols(); ++c) {
      if (r == c) {
        if (std::abs(mm.matrix(r, c).imag()) > 1e-9 * scale) real = false;
      } else if (mm.matrix(r, c) != cplx(0.0)) {
        offdiag = true;
        if (std::abs(mm.matrix(r, r) - mm.matrix(c, c)) <= 1e-9 * scale) mc.defective_block = true;
      }
    }
  mc.diagonal_real = !offdiag && real;
  return mc;
}

double ground_value(const std::vector<cplx>& mu, cplx z) {
  cplx s = 0.0;
  for (cplx m : mu) s += m;
  return std::abs(s / z);
}

}  // namespace

AnalysisReport analyze(const QuadraticSymbol& q, const AnalysisOptions& options) {
  AnalysisReport r;
  r.symbol = q;
  r.options = options;
  const Tolerances& tol = options.tol;
  const std::vector<std::string> downstream{"normalization", "eigen", "normal_form", "model_operator", "lattice",
                                            "oracle"};

  if (q.kappa) {
    r.pt = pt_check(q, tol);
    r.ptf_residual = ptf_residual(q);
  } else {
    r.skipped.emplace("pt", "no involution kappa given");
  }

  try {
    r.certificate = ellipticity_certificate(q, tol);
    r.elliptic = true;
    r.ellipticity_message = "Re(z q) is positive definite";
  } catch (const NotEllipticError& e) {
    r.ellipticity_message = e.what();
    r.verdict.note = "not elliptic";
    skip_all(r, downstream, "not elliptic");
    return r;
  }

  const cplx z = r.certificate->z;
  const QuadraticSymbol qn = q.scaled(z);
  try {
    r.eigen = eigen_analysis(fundamental_matrix(qn), tol);
  } catch (const Error& e) {
    skip_all(r, {"eigen", "normal_form", "model_operator", "lattice", "oracle"}, e.what());
    r.verdict.note = e.what();
    return r;
  }
  r.upper = upper_eigenvalues(*r.eigen);
  r.verdict = classify(*r.eigen, z, tol);
  if (r.eigen->ambiguous)
    r.warnings.push_back("eigenvalue clusters lie within 10x the cluster tolerance; verdict withheld");
  std::vector<cplx> mu;
  for (cplx l : r.upper) mu.push_back(l / I);

  try {
    r.normal_form = normal_form(qn, *r.eigen, tol);
    for (const auto& w : r.normal_form->warnings) r.warnings.push_back(w);
    if (r.normal_form->jordan.ill_conditioned && r.verdict.similarity != Similarity::NonrealSpectrum) {
      r.verdict.similarity = Similarity::Indeterminate;
      r.verdict.note = "Jordan basis is near-defective";
    }
  } catch (const Error& e) {
    skip_all(r, {"normal_form", "model_operator"}, e.what());
  }

  if (r.normal_form) {
    r.model = check_model(*r.normal_form, mu, options.model_degree);
  }

  try {
    double cutoff = options.lattice_cutoff.value_or(5.0 * ground_value(mu, z));
    r.lattice = lattice_spectrum(mu, z, cutoff);
    if (!options.lattice_cutoff)
      while (static_cast<int>(r.lattice->entries.size()) < options.k_compare) {
        cutoff *= 2.0;
        r.lattice = lattice_spectrum(mu, z, cutoff);
      }
  } catch (const Error& e) {
    skip_all(r, {"lattice", "oracle"}, e.what());
  }

  if (!options.run_oracle) {
    r.skipped.emplace("oracle", "disabled by options");
  } else if (r.lattice) {
    try {
      r.oracle_cutoff_used = options.oracle_cutoff_for(q.n);
      const auto eig = oracle::truncated_eigenvalues(oracle::quantize(q, r.oracle_cutoff_used));
      r.comparison = oracle::compare_spectra(eig, *r.lattice, options.k_compare);
      if (r.comparison->flagged > 0)
        r.warnings.push_back(std::to_string(r.comparison->flagged) + " oracle rows exceed the 1e-4 window");
    } catch (const Error& e) {
      r.skipped.emplace("oracle", e.what());
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json vec_to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(complex_to_json(z));
  return a;
}

json signature_to_json(const Signature& s) { return json::array({s.plus, s.minus, s.zero}); }

json weight_to_json(const WeightForm& w) {
  json j;
  j["hessian"] = matrix_to_json(w.hessian);
  j["min_eigenvalue"] = w.min_eigenvalue();
  return j;
}

json normal_form_to_json(const NormalForm& nf) {
  json j;
  j["prep"] = matrix_to_json(nf.preparation.prep);
  j["a_minus"] = matrix_to_json(nf.preparation.a_minus);
  j["a_plus"] = matrix_to_json(nf.preparation.a_plus);
  j["b_matrix"] = matrix_to_json(nf.bargmann.b);
  j["kappa_t"] = matrix_to_json(nf.bargmann.kappa_t);
  j["phi0"] = weight_to_json(nf.bargmann.phi0);
  j["m_matrix"] = matrix_to_json(nf.transformed.m);
  j["c_matrix"] = matrix_to_json(nf.jordan.c);
  j["j_matrix"] = matrix_to_json(nf.jordan.j);
  j["lambdas"] = vec_to_json(nf.jordan.lambdas);
  j["gammas"] = nf.jordan.gammas;
  j["jordan_blocks"] = nf.jordan.blocks;
  j["c_condition"] = nf.jordan.condition;
  j["jordan_residual"] = nf.jordan.residual;
  j["phi1"] = weight_to_json(nf.phi1);
  const NormalFormChecks& c = nf.checks;
  j["checks"] = {{"prep_symplectic_defect", c.prep_symplectic_defect},
                 {"kappa_t_symplectic_defect", c.kappa_t_symplectic_defect},
                 {"kappa_c_symplectic_defect", c.kappa_c_symplectic_defect},
                 {"lambda_minus_graph_residual", nf.preparation.minus_residual},
                 {"fiber_residual", c.fiber_residual},
                 {"base_residual", c.base_residual},
                 {"lambda_phi0_residual", c.lambda_phi0_residual},
                 {"b_symmetry", c.b_symmetry},
                 {"q_tilde_xx_norm", nf.transformed.xx_norm},
                 {"q_tilde_xixi_norm", nf.transformed.xixi_norm},
                 {"spectrum_residual", c.spectrum_residual},
                 {"phi0_critical_error", c.phi0_critical_error},
                 {"phi1_critical_error", c.phi1_critical_error},
                 {"phi0_real_signature", signature_to_json(c.phi0_signature)},
                 {"phi1_signature", signature_to_json(c.phi1_signature)}};
  return j;
}

json cluster_to_json(const EigenCluster& c) {
  json j;
  j["lambda"] = complex_to_json(c.lambda);
  j["alg_mult"] = c.alg_mult;
  j["geom_mult"] = c.geom_mult;
  j["segre"] = c.segre;
  j["members"] = vec_to_json(c.members);
  return j;
}

template <class T>
void put(json& j, const char* key, const AnalysisReport& r, const std::optional<T>& v, json (*f)(const T&)) {
  if (v)
    j[key] = f(*v);
  else
    j[key] = skip(r.skipped.count(key) ? r.skipped.at(key) : "not computed");
}

}  // namespace

namespace {

int array_depth(const json& j) {
  if (j.is_object()) return 100;
  if (!j.is_array()) return 0;
  int d = 0;
  for (const auto& e : j) d = std::max(d, array_depth(e));
  return d + 1;
}

void format_into(std::string& out, const json& j, int indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_array() && (j.empty() || array_depth(j) <= 2)) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (size_t i = 0; i < j.size(); ++i) {
      out += inner;
      format_into(out, j[i], indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += inner + json(k).dump() + ": ";
      format_into(out, v, indent + 2);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string format_json(const json& j) {
  std::string out;
  format_into(out, j, 0);
  return out + "\n";
}

json lattice_to_json(const SpectrumLattice& L) {
  json j;
  j["mu"] = vec_to_json(L.mu);
  j["z"] = complex_to_json(L.z);
  j["cutoff_mode"] = L.real_cutoff ? "real_part" : "modulus";
  json e = json::array();
  for (const auto& en : L.entries) e.push_back({{"value", complex_to_json(en.value)}, {"nu", en.nu}});
  j["entries"] = std::move(e);
  json g = json::array();
  for (const auto& [v, m] : L.grouped()) g.push_back({{"value", complex_to_json(v)}, {"multiplicity", m}});
  j["distinct"] = std::move(g);
  return j;
}

json comparison_to_json(const oracle::Comparison& c) {
  json j;
  j["max_error"] = c.max_error;
  j["flagged"] = c.flagged;
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"oracle", complex_to_json(r.oracle)},
                    {"lattice", complex_to_json(r.lattice)},
                    {"error", r.error},
                    {"flagged", r.flagged}});
  j["rows"] = std::move(rows);
  return j;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["input"] = config_to_json(r.symbol, r.options);

  json v;
  v["elliptic"] = r.elliptic;
  if (r.pt)
    v["pt_symmetric"] = r.pt->holds;
  else
    v["pt_symmetric"] = "not_applicable";
  const bool decided = r.eigen.has_value();
  v["real_spectrum"] = decided ? json(r.verdict.real_spectrum) : json("indeterminate");
  v["similarity"] = to_string(r.verdict.similarity);
  v["statement"] = r.elliptic ? describe(r.verdict.similarity) : "not elliptic; no classification";
  if (decided)
    v["normal_similar"] = r.verdict.normal_similar;
  else
    v["normal_similar"] = "indeterminate";
  v["note"] = r.verdict.note;
  j["verdicts"] = std::move(v);

  json e;
  e["elliptic"] = r.elliptic;
  e["message"] = r.ellipticity_message;
  j["ellipticity"] = std::move(e);
  if (r.certificate)
    j["normalization"] = {{"z", complex_to_json(r.certificate->z)}, {"min_eig", r.certificate->min_eig}};
  else
    j["normalization"] = skip(r.skipped.at("normalization"));

  if (r.pt) {
    j["pt"] = {{"holds", r.pt->holds},
               {"residual_A", r.pt->residual_A},
               {"residual_B", r.pt->residual_B},
               {"residual_C", r.pt->residual_C},
               {"scale", r.pt->scale},
               {"ptf_residual", *r.ptf_residual}};
  } else {
    j["pt"] = skip(r.skipped.at("pt"));
  }
  j["fundamental_matrix"] = matrix_to_json(fundamental_matrix(r.symbol));

  if (r.eigen) {
    json ej;
    ej["of"] = "z F";
    ej["cluster_tol"] = r.eigen->cluster_tol;
    ej["ambiguous"] = r.eigen->ambiguous;
    ej["min_separation"] = r.eigen->min_separation;
    json cl = json::array();
    for (const auto& c : r.eigen->clusters) cl.push_back(cluster_to_json(c));
    ej["clusters"] = std::move(cl);
    ej["upper"] = vec_to_json(r.upper);
    j["eigen"] = std::move(ej);
  } else {
    j["eigen"] = skip(r.skipped.at("eigen"));
  }

  put<NormalForm>(j, "normal_form", r, r.normal_form, &normal_form_to_json);
  put<ModelCheck>(j, "model_operator", r, r.model, +[](const ModelCheck& m) -> json {
    return {{"degree", m.degree},
            {"max_error_vs_lattice", m.max_error},
            {"lower_triangular", m.lower_triangular},
            {"diagonal_real", m.diagonal_real},
            {"defective_block", m.defective_block}};
  });
  put<SpectrumLattice>(j, "lattice", r, r.lattice, &lattice_to_json);
  if (r.comparison) {
    json o = comparison_to_json(*r.comparison);
    o["cutoff"] = r.oracle_cutoff_used;
    o["k"] = r.options.k_compare;
    j["oracle"] = std::move(o);
  } else {
    j["oracle"] = skip(r.skipped.count("oracle") ? r.skipped.at("oracle") : "not computed");
  }
  j["warnings"] = r.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Sweep

SweepResult sweep(const FamilyConfig& fc, const Tolerances& tol) {
  SweepResult s;
  s.parameter = fc.family.parameter;
  const std::vector<double> grid = fc.grid.points();
  const auto cond_rows = oracle::exceptional_condition_sweep(fc.family, grid);
  bool degenerate_noted = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    SweepRow row;
    row.param = grid[i];
    row.gap = cond_rows[i].gap;
    row.cond = cond_rows[i].cond;
    const QuadraticSymbol q = fc.family.at(grid[i]);
    try {
      const NormalizationCertificate cert = ellipticity_certificate(q, tol);
      row.elliptic = true;
      const EigenAnalysis ea = eigen_analysis(fundamental_matrix(q.scaled(cert.z)), tol);
      const Verdict v = classify(ea, cert.z, tol);
      row.real_spectrum = v.real_spectrum;
      row.similarity = v.similarity;
      row.self_adjoint_similar = v.similarity == Similarity::SelfAdjointSimilar;
      for (const auto& c : ea.clusters)
        if (c.lambda.imag() > 0) {
          row.eigenvalues.insert(row.eigenvalues.end(), c.members.begin(), c.members.end());
          if (!degenerate_noted && c.alg_mult > 1 && c.geom_mult == c.alg_mult) {
            degenerate_noted = true;
            s.warnings.push_back("F has a semisimple repeated eigenvalue at " + s.parameter + " = " +
                                 std::to_string(grid[i]) +
                                 "; equal frequencies put the reality threshold at 0");
          }
        }
    } catch (const NotEllipticError&) {
      row.elliptic = false;
    }
    s.rows.push_back(std::move(row));
  }
  for (const auto& row : s.rows) {
    if (!row.real_spectrum) break;
    s.last_real = row.param;
  }
  for (const auto& row : s.rows) {
    if (!row.self_adjoint_similar) break;
    s.last_similar = row.param;
  }
  return s;
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& s) {
  size_t width = 0;
  for (const auto& r : s.rows) width = std::max(width, r.eigenvalues.size());
  os << "param,real_spectrum,self_adjoint_similar,verdict";
  for (size_t k = 1; k <= width; ++k) os << ",re_ev_" << k << ",im_ev_" << k;
  os << ",gap,cond\n";
  for (const auto& r : s.rows) {
    os << num(r.param) << ',' << (r.real_spectrum ? 1 : 0) << ',' << (r.self_adjoint_similar ? 1 : 0) << ','
       << (r.elliptic ? to_string(r.similarity) : "NOT_ELLIPTIC");
    for (size_t k = 0; k < width; ++k) {
      if (k < r.eigenvalues.size())
        os << ',' << num(r.eigenvalues[k].real()) << ',' << num(r.eigenvalues[k].imag());
      else
        os << ",,";
    }
    os << ',' << num(r.gap) << ',' << num(r.cond) << '\n';
  }
}

json sweep_summary(const SweepResult& s) {
  json j;
  j["parameter"] = s.parameter;
  j["points"] = s.rows.size();
  j["last_real_spectrum"] = s.last_real ? json(*s.last_real) : json("none");
  j["last_self_adjoint_similar"] = s.last_similar ? json(*s.last_similar) : json("none");
  j["warnings"] = s.warnings;
  return j;
}

}  // namespace qsymm
