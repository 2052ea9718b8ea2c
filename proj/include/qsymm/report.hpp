#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsymm/bargmann.hpp"
#include "qsymm/config.hpp"
#include "qsymm/oracle.hpp"
#include "qsymm/quadform.hpp"
#include "qsymm/spectral.hpp"

namespace qsymm {

struct ModelCheck {
  int degree = 0;
  double max_error = 0.0;  // model eigenvalues vs lattice by degree
  bool lower_triangular = false;
  bool diagonal_real = false;
  bool defective_block = false;  // non-diagonal block with equal diagonal entries
};

struct AnalysisReport {
  QuadraticSymbol symbol;
  AnalysisOptions options;

  bool elliptic = false;
  std::optional<NormalizationCertificate> certificate;
  std::string ellipticity_message;

  std::optional<PtVerdict> pt;
  std::optional<double> ptf_residual;

  std::optional<EigenAnalysis> eigen;
  std::vector<cplx> upper;  // upper half-plane eigenvalues of z F
  Verdict verdict;
  std::optional<NormalForm> normal_form;
  std::optional<ModelCheck> model;
  std::optional<SpectrumLattice> lattice;
  std::optional<oracle::Comparison> comparison;
  int oracle_cutoff_used = 0;

  std::map<std::string, std::string> skipped;  // section -> reason
  std::vector<std::string> warnings;
};

/// Runs every stage; a failing stage marks the sections depending on it as
/// skipped with a reason.
AnalysisReport analyze(const QuadraticSymbol& q, const AnalysisOptions& options);

json to_json(const AnalysisReport& r);

struct SweepRow {
  double param = 0.0;
  bool elliptic = false;
  bool real_spectrum = false;
  bool self_adjoint_similar = false;
  Similarity similarity = Similarity::Indeterminate;
  std::vector<cplx> eigenvalues;  // upper half-plane eigenvalues of F (raw)
  double gap = 0.0;
  double cond = 0.0;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepRow> rows;
  std::optional<double> last_real;     // end of the leading run of real-spectrum points
  std::optional<double> last_similar;  // end of the leading run of similar points
  std::vector<std::string> warnings;
};

SweepResult sweep(const FamilyConfig& family, const Tolerances& tol);

void write_sweep_csv(std::ostream& os, const SweepResult& s);
json sweep_summary(const SweepResult& s);

/// Indented JSON with short numeric arrays (matrix rows, [re, im] pairs)
/// kept on one line.
std::string format_json(const json& j);

json lattice_to_json(const SpectrumLattice& L);
json comparison_to_json(const oracle::Comparison& c);

}  // namespace qsymm
