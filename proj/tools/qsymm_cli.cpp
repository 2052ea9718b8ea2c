// qsymm: classify PT-symmetric elliptic quadratic operators.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qsymm/config.hpp"
#include "qsymm/errors.hpp"
#include "qsymm/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw qsymm::IoError("cannot open output file " + out);
  f << text;
  if (!f) throw qsymm::IoError("failed writing " + out);
}

const char* kSweepHelp =
    "Sweep a one-parameter family declared in the config's \"family\" table.\n"
    "CSV columns: param, real_spectrum (0/1), self_adjoint_similar (0/1), verdict,\n"
    "re_ev_k, im_ev_k for the upper half-plane eigenvalues of F, gap (closest pair\n"
    "of those eigenvalues), cond (eigenvector matrix condition number).\n"
    "The summary (thresholds, warnings) goes to stderr.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral classification of PT-symmetric elliptic quadratic operators"};
  app.require_subcommand(1);

  std::string config, out;
  double lattice_cutoff = 0.0;
  int oracle_cutoff = 0, k = 6;

  auto* analyze = app.add_subcommand("analyze", "Full report as JSON");
  analyze->add_option("config", config, "Config file (JSON)")->required();
  analyze->add_option("--out", out, "Write the report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", kSweepHelp);
  sweep->add_option("config", config, "Config file (JSON) with a family table")->required();
  sweep->add_option("--out", out, "Write the CSV here instead of stdout");

  auto* lattice = app.add_subcommand("lattice", "Lattice eigenvalues up to a cutoff");
  lattice->add_option("config", config, "Config file (JSON)")->required();
  lattice->add_option("--cutoff", lattice_cutoff, "Bound on Re (or |.|) of the values")->required();

  auto* oracle = app.add_subcommand("oracle", "Hermite-truncation eigenvalues against the lattice");
  oracle->add_option("config", config, "Config file (JSON)")->required();
  oracle->add_option("--cutoff", oracle_cutoff, "Basis size per mode")->required();
  oracle->add_option("-k", k, "Number of eigenvalues to compare")->default_val(6);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    const qsymm::Config cfg = qsymm::load_config(config);
    if (analyze->parsed()) {
      const auto report = qsymm::analyze(cfg.symbol, cfg.options);
      emit(qsymm::format_json(qsymm::to_json(report)), out);
    } else if (sweep->parsed()) {
      if (!cfg.family) throw qsymm::InputError("family: missing (required by sweep)");
      const auto result = qsymm::sweep(*cfg.family, cfg.options.tol);
      std::ostringstream csv;
      qsymm::write_sweep_csv(csv, result);
      emit(csv.str(), out);
      std::cerr << qsymm::format_json(qsymm::sweep_summary(result));
    } else if (lattice->parsed()) {
      qsymm::AnalysisOptions opt = cfg.options;
      opt.lattice_cutoff = lattice_cutoff;
      opt.run_oracle = false;
      const auto report = qsymm::analyze(cfg.symbol, opt);
      qsymm::json j;
      j["verdicts"] = qsymm::to_json(report)["verdicts"];
      j["lattice"] = report.lattice ? qsymm::lattice_to_json(*report.lattice)
                                    : qsymm::json("skipped: " + report.skipped.at("lattice"));
      emit(qsymm::format_json(j), out);
    } else if (oracle->parsed()) {
      qsymm::AnalysisOptions opt = cfg.options;
      opt.oracle_cutoff = oracle_cutoff;
      opt.k_compare = k;
      const auto report = qsymm::analyze(cfg.symbol, opt);
      const auto full = qsymm::to_json(report);
      qsymm::json j;
      j["verdicts"] = full["verdicts"];
      j["oracle"] = full["oracle"];
      emit(qsymm::format_json(j), out);
    }
  } catch (const qsymm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const qsymm::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
