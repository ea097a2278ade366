#include "bliss/cli/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bliss/bliss_lp.hpp"
#include "bliss/cli/report.hpp"
#include "bliss/errors.hpp"
#include "bliss/fcidump.hpp"
#include "bliss/fermionic.hpp"
#include "bliss/pauli_norm.hpp"
#include "bliss/spectral.hpp"

namespace bliss::cli {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

RunResult analyze(MolecularHamiltonian H, const RunConfig& cfg, double parse_seconds) {
  if (cfg.n_elec) H.n_elec = *cfg.n_elec;
  H.validate();

  RunResult out;
  Stopwatch sw;
  double t_bliss = 0, t_pauli = 0, t_ferm = 0, t_spec = 0;

  json bliss = nullptr;
  json solver = nullptr;
  std::optional<FermionicReport> ferm_after;

  switch (cfg.method) {
    case Method::LpBliss: {
      const LpBlissResult r = lp_bliss(H, cfg.solver);
      out.shifted = apply_bliss(H, r.params);
      out.solver_optimal = r.solution.status == SolverStatus::Optimal;
      bliss = bliss_summary(r.params);
      bliss["flavor"] = "lp";
      bliss["mu1_source"] = "lp";
      solver = {{"name", default_lp_solver().name()},
                {"status", to_string(r.solution.status)},
                {"iterations", r.solution.iterations},
                {"objective", r.solution.objective},
                {"rows_before_merge", r.rows_before_merge},
                {"rows_after_merge", r.rows_after_merge}};
      break;
    }
    case Method::FlrBliss:
    case Method::FfrBliss: {
      const auto flavor = cfg.method == Method::FlrBliss ? GlobalBlissFlavor::FLR : GlobalBlissFlavor::FFR;
      SolverStatus st = SolverStatus::Optimal;
      const BlissParams K = assemble_global_bliss(H, flavor, cfg.df_tol, cfg.solver, &st, cfg.mu1_source);
      out.shifted = apply_bliss(H, K);
      out.solver_optimal = st == SolverStatus::Optimal;
      bliss = bliss_summary(K);
      bliss["flavor"] = to_string(flavor);
      bliss["mu1_source"] = to_string(cfg.mu1_source);
      if (flavor == GlobalBlissFlavor::FFR)
        solver = {{"name", default_lp_solver().name()}, {"status", to_string(st)}, {"iterations", nullptr},
                  {"objective", nullptr},             {"rows_before_merge", nullptr}, {"rows_after_merge", nullptr}};
      break;
    }
    case Method::DfLrps:
    case Method::DfLrbs: {
      const auto fm = cfg.method == Method::DfLrps ? FermionicMethod::DF_LRPS : FermionicMethod::DF_LRBS;
      ferm_after = build_fermionic_report(H, fm, cfg.df_tol, cfg.solver);
      out.solver_optimal = ferm_after->solver_status == SolverStatus::Optimal;
      if (fm == FermionicMethod::DF_LRBS)
        solver = {{"name", default_lp_solver().name()},
                  {"status", to_string(ferm_after->solver_status)},
                  {"iterations", nullptr},
                  {"objective", nullptr},
                  {"rows_before_merge", nullptr},
                  {"rows_after_merge", nullptr}};
      break;
    }
    case Method::None:
    case Method::Df:
      break;
  }
  t_bliss = sw.lap();

  const PauliNormBreakdown pauli_before = pauli_one_norm(H);
  const PauliNormBreakdown pauli_after = out.shifted ? pauli_one_norm(*out.shifted) : pauli_before;
  t_pauli = sw.lap();

  const FermionicReport ferm_before = build_fermionic_report(H, FermionicMethod::DF, cfg.df_tol, cfg.solver);
  if (out.shifted) ferm_after = build_fermionic_report(*out.shifted, FermionicMethod::DF, cfg.df_tol, cfg.solver);
  if (!ferm_after) ferm_after = ferm_before;
  t_ferm = sw.lap();

  json spectral = nullptr;
  if (cfg.spectral != SpectralMode::Off) {
    SpectralOptions so;
    so.method = cfg.spectral == SpectralMode::Exact ? SpectralMethod::Exact : SpectralMethod::TruncatedLanczos;
    so.lanczos.truncation_multiplier = cfg.lanczos_mult;
    so.lanczos.residual_tol = cfg.lanczos_tol;
    so.lanczos.max_iterations = cfg.lanczos_max_iter;
    spectral = to_json(build_spectral_report(H, out.shifted ? &*out.shifted : nullptr, so));
  }
  t_spec = sw.lap();

  json& r = out.report;
  r["schema_version"] = 1;
  r["input"] = {{"path", cfg.input.string()},
                {"n_orb", H.n_orb},
                {"n_elec", H.n_elec},
                {"ms2", H.ms2},
                {"e_const", H.e_const}};
  r["config"] = {{"method", to_string(cfg.method)},       {"spectral", to_string(cfg.spectral)},
                 {"seed", cfg.seed},                       {"lanczos_mult", cfg.lanczos_mult},
                 {"lanczos_tol", cfg.lanczos_tol},         {"df_tol", cfg.df_tol}};
  r["lambda_pauli_before"] = pauli_before.lambda_total;
  r["lambda_pauli_after"] = pauli_after.lambda_total;
  r["lambda_pauli_ratio"] = ratio(pauli_before.lambda_total, pauli_after.lambda_total);
  r["lambda_df_before"] = ferm_before.lambda_total;
  r["lambda_df_after"] = ferm_after->lambda_total;
  r["lambda_df_ratio"] = ratio(ferm_before.lambda_total, ferm_after->lambda_total);
  r["pauli_before"] = to_json(pauli_before);
  r["pauli_after"] = to_json(pauli_after);
  r["fermionic_before"] = to_json(ferm_before);
  r["fermionic_after"] = to_json(*ferm_after);
  r["fragments"] = fragments_json(*ferm_after);
  r["bliss"] = bliss;
  r["solver"] = solver;
  r["spectral"] = spectral;
  r["timings_s"] = {{"parse", parse_seconds}, {"bliss", t_bliss},
                    {"pauli", t_pauli},       {"fermionic", t_ferm},
                    {"spectral", t_spec},     {"total", parse_seconds + t_bliss + t_pauli + t_ferm + t_spec}};
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

// Runs body, mapping library exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch sw;
    MolecularHamiltonian H = read_fcidump(cfg.input);
    const double t_parse = sw.lap();
    RunResult res = analyze(std::move(H), cfg, t_parse);

    const std::string text = res.report.dump(2) + "\n";
    if (cfg.out_report)
      write_text(*cfg.out_report, text);
    else
      out << text;
    if (cfg.out_fcidump) {
      if (!res.shifted) {
        err << "note: method '" << to_string(cfg.method) << "' builds no BLISS operator; no FCIDUMP written\n";
      } else {
        write_fcidump(*cfg.out_fcidump, *res.shifted);
      }
    }
    if (!res.solver_optimal) {
      err << "error: linear program did not reach an optimal status (best incumbent reported)\n";
      return static_cast<int>(kExitSolver);
    }
    return static_cast<int>(kExitOk);
  });
}

namespace {

const std::vector<std::string> kColumns = {
    "method",           "lambda_pauli_before", "lambda_pauli_after", "lambda_pauli_ratio",
    "lambda_df_before", "lambda_df_after",     "lambda_df_ratio",    "lambda_two_body_after",
    "half_range_sum",   "delta_e",             "delta_e_ens",        "delta_e_shifted",
    "deviation"};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream os;
  os << std::setprecision(17) << v.get<double>();
  return os.str();
}

}  // namespace

CompareResult compare(const std::vector<RunConfig>& configs) {
  if (configs.size() < 2) throw std::invalid_argument("compare needs at least two configurations");
  for (const auto& c : configs)
    if (c.input != configs.front().input || c.n_elec != configs.front().n_elec)
      throw std::invalid_argument("compare: configurations use different inputs");

  const MolecularHamiltonian H = read_fcidump(configs.front().input);
  CompareResult out;
  out.table = {{"schema_version", 1}, {"input", configs.front().input.string()}, {"rows", json::array()}};
  std::ostringstream csv;
  for (std::size_t c = 0; c < kColumns.size(); ++c) csv << (c ? "," : "") << kColumns[c];
  csv << '\n';

  for (const auto& cfg : configs) {
    const RunResult res = analyze(H, cfg);
    out.solver_optimal = out.solver_optimal && res.solver_optimal;
    const json& r = res.report;
    const json& sp = r["spectral"];
    json row = {
        {"method", r["config"]["method"]},
        {"lambda_pauli_before", r["lambda_pauli_before"]},
        {"lambda_pauli_after", r["lambda_pauli_after"]},
        {"lambda_pauli_ratio", r["lambda_pauli_ratio"]},
        {"lambda_df_before", r["lambda_df_before"]},
        {"lambda_df_after", r["lambda_df_after"]},
        {"lambda_df_ratio", r["lambda_df_ratio"]},
        {"lambda_two_body_after", r["fermionic_after"]["lambda_two_body"]},
        {"half_range_sum", r["fermionic_after"]["half_range_sum"]},
        {"delta_e", sp.is_null() ? json(nullptr) : sp["delta_e"]},
        {"delta_e_ens", sp.is_null() ? json(nullptr) : sp["delta_e_ens"]},
        {"delta_e_shifted", sp.is_null() ? json(nullptr) : sp["delta_e_shifted"]},
        {"deviation", sp.is_null() ? json(nullptr) : sp["deviation"]},
    };
    for (std::size_t c = 0; c < kColumns.size(); ++c) csv << (c ? "," : "") << csv_cell(row[kColumns[c]]);
    csv << '\n';
    out.table["rows"].push_back(std::move(row));
  }
  out.csv = csv.str();
  return out;
}

int run_compare(const std::vector<RunConfig>& configs, const std::optional<std::string>& csv_path,
                const std::optional<std::string>& table_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CompareResult res = compare(configs);
    if (csv_path)
      write_text(*csv_path, res.csv);
    else
      out << res.csv;
    if (table_path) write_text(*table_path, res.table.dump(2) + "\n");
    if (!res.solver_optimal) {
      err << "error: linear program did not reach an optimal status (best incumbent reported)\n";
      return static_cast<int>(kExitSolver);
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace bliss::cli
