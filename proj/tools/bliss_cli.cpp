// bliss: BLISS 1-norm reduction for FCIDUMP Hamiltonians.
//
//   bliss run --input h2.fcidump --method lp-bliss --spectral exact
//   bliss compare --input h2.fcidump --method none --method lp-bliss --csv out.csv
//   bliss schema [--validate report.json]

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bliss/cli/pipeline.hpp"
#include "bliss/cli/run_config.hpp"
#include "bliss/cli/schema.hpp"

namespace {

using bliss::cli::RunConfig;

struct CommonFlags {
  std::string input;
  std::string spectral = "off";
  int n_elec = -1;
  std::uint64_t seed = 0;
  std::size_t lanczos_mult = 5;
  double lanczos_tol = 1e-5;
  std::size_t lanczos_max_iter = 200;
  double df_tol = 1e-8;
  std::size_t lp_max_iter = 0;
  std::string mu1_source = "fragment";

  void attach(CLI::App& app) {
    app.add_option("--input,-i", input, "FCIDUMP file")->required();
    app.add_option("--spectral", spectral, "spectral range estimate: off, exact or lanczos")
        ->check(CLI::IsMember({"off", "exact", "lanczos"}));
    app.add_option("--nelec", n_elec, "electron count (default: NELEC from the file)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "seed recorded in the report");
    app.add_option("--lanczos-mult", lanczos_mult, "determinants kept per Lanczos iteration")
        ->check(CLI::PositiveNumber);
    app.add_option("--lanczos-tol", lanczos_tol, "Lanczos residual threshold")->check(CLI::PositiveNumber);
    app.add_option("--lanczos-max-iter", lanczos_max_iter, "Lanczos iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--df-tol", df_tol, "drop factorization eigenvalues with |w| <= tol")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--mu1-source", mu1_source,
                   "global mu1 for flr/ffr: median of the corrected one-body fragment, or of h")
        ->check(CLI::IsMember({"fragment", "h"}));
    app.add_option("--lp-max-iter", lp_max_iter, "simplex iteration cap (0: 50 * (vars + rows))");
  }

  RunConfig config(const std::string& method) const {
    RunConfig c;
    c.input = input;
    c.method = bliss::cli::parse_method(method);
    c.spectral = bliss::cli::parse_spectral_mode(spectral);
    if (n_elec >= 0) c.n_elec = n_elec;
    c.seed = seed;
    c.lanczos_mult = lanczos_mult;
    c.lanczos_tol = lanczos_tol;
    c.lanczos_max_iter = lanczos_max_iter;
    c.df_tol = df_tol;
    c.solver.max_iterations = lp_max_iter;
    c.mu1_source = bliss::cli::parse_mu1_source(mu1_source);
    return c;
  }
};

const std::vector<std::string> kMethodNames = {"none", "lp-bliss", "flr-bliss", "ffr-bliss",
                                               "df",   "df-lrps",  "df-lrbs"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BLISS 1-norm reduction for FCIDUMP Hamiltonians"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string method = "none";
  std::string out_fcidump;
  std::string out_report;
  auto* run = app.add_subcommand("run", "analyze one method and write a JSON report");
  run_flags.attach(*run);
  run->add_option("--method,-m", method, "none, lp-bliss, flr-bliss, ffr-bliss, df, df-lrps or df-lrbs")
      ->check(CLI::IsMember(kMethodNames));
  run->add_option("--out-fcidump", out_fcidump, "write the shifted Hamiltonian here (BLISS methods)");
  run->add_option("--out-report", out_report, "write the report here instead of stdout");

  CommonFlags cmp_flags;
  std::vector<std::string> methods;
  std::string csv_path;
  std::string table_path;
  auto* cmp = app.add_subcommand("compare", "tabulate several methods on one input as CSV");
  cmp_flags.attach(*cmp);
  cmp->add_option("--method,-m", methods, "method to include (repeat, at least two)")
      ->required()
      ->check(CLI::IsMember(kMethodNames));
  cmp->add_option("--csv", csv_path, "write the CSV here instead of stdout");
  cmp->add_option("--out-table", table_path, "also write the table as JSON");

  std::string validate_path;
  auto* schema = app.add_subcommand("schema", "print the report JSON schema, or validate a report");
  schema->add_option("--validate", validate_path, "report file to check against the schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bliss::cli::kExitUsage;
  }

  if (run->parsed()) {
    RunConfig cfg = run_flags.config(method);
    if (!out_fcidump.empty()) cfg.out_fcidump = out_fcidump;
    if (!out_report.empty()) cfg.out_report = out_report;
    return bliss::cli::run(cfg, std::cout, std::cerr);
  }

  if (cmp->parsed()) {
    std::vector<RunConfig> configs;
    for (const auto& m : methods) configs.push_back(cmp_flags.config(m));
    return bliss::cli::run_compare(configs, csv_path.empty() ? std::nullopt : std::optional(csv_path),
                                   table_path.empty() ? std::nullopt : std::optional(table_path), std::cout,
                                   std::cerr);
  }

  if (validate_path.empty()) {
    std::cout << bliss::cli::report_schema_text();
    return 0;
  }
  std::ifstream in(validate_path);
  if (!in) {
    std::cerr << "error: cannot open '" << validate_path << "'\n";
    return bliss::cli::kExitIo;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << validate_path << ": " << e.what() << '\n';
    return bliss::cli::kExitParse;
  }
  const auto problems = bliss::cli::validate_json(doc, bliss::cli::report_schema());
  for (const auto& p : problems) std::cerr << validate_path << ": " << p << '\n';
  if (problems.empty()) std::cout << validate_path << ": valid\n";
  return problems.empty() ? 0 : bliss::cli::kExitFailure;
}
