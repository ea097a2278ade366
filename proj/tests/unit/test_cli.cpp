#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bliss/cli/pipeline.hpp"
#include "bliss/cli/report.hpp"
#include "bliss/cli/run_config.hpp"
#include "bliss/cli/schema.hpp"
#include "bliss/fcidump.hpp"
#include "bliss/pauli_norm.hpp"
#include "bliss/spectral.hpp"

#include "random_hamiltonians.hpp"

using namespace bliss;
using namespace bliss::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kH2 = fs::path(BLISS_SOURCE_DIR) / "data/h2_minimal_basis.fcidump";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bliss_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

RunConfig config(Method m, SpectralMode s = SpectralMode::Off) {
  RunConfig c;
  c.input = kH2;
  c.method = m;
  c.spectral = s;
  return c;
}

json run_json(const RunConfig& c, int* rc = nullptr) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  if (rc) *rc = code;
  EXPECT_EQ(code, 0) << err.str();
  return json::parse(out.str());
}

std::string read_text(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, NamesRoundTrip) {
  for (auto m : {Method::None, Method::LpBliss, Method::FlrBliss, Method::FfrBliss, Method::Df, Method::DfLrps,
                 Method::DfLrbs})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("bogus"), std::invalid_argument);
  EXPECT_EQ(parse_spectral_mode("lanczos"), SpectralMode::Lanczos);
  EXPECT_EQ(parse_mu1_source("h"), Mu1Source::UnmodifiedH);
}

TEST(Cli, PassthroughReport) {
  const json r = run_json(config(Method::None, SpectralMode::Exact));
  EXPECT_EQ(r["lambda_pauli_before"], r["lambda_pauli_after"]);
  EXPECT_GT(r["lambda_pauli_before"].get<double>(), 0.0);
  EXPECT_GT(r["lambda_df_before"].get<double>(), 0.0);
  EXPECT_TRUE(r["bliss"].is_null());
  const json& sp = r["spectral"];
  EXPECT_GT(sp["delta_e"].get<double>(), 0.0);
  EXPECT_GT(sp["delta_e_ens"].get<double>(), 0.0);
  EXPECT_TRUE(sp["deviation"].is_null());
  EXPECT_TRUE(sp["delta_e_shifted"].is_null());
}

TEST(Cli, EveryMethodProducesValidReport) {
  const json schema = report_schema();
  for (auto m : {Method::None, Method::LpBliss, Method::FlrBliss, Method::FfrBliss, Method::Df, Method::DfLrps,
                 Method::DfLrbs}) {
    const json r = run_json(config(m, SpectralMode::Exact));
    const auto problems = validate_json(r, schema);
    EXPECT_TRUE(problems.empty()) << to_string(m) << ": " << (problems.empty() ? "" : problems.front());
    EXPECT_EQ(r["bliss"].is_null(), !is_bliss_method(m));
    if (is_bliss_method(m)) EXPECT_FALSE(r["spectral"]["deviation"].is_null());
  }
}

TEST(Cli, LpBlissNeverIncreasesPauliNorm) {
  const json r = run_json(config(Method::LpBliss));
  EXPECT_LE(r["lambda_pauli_after"].get<double>(), r["lambda_pauli_before"].get<double>());
  EXPECT_EQ(r["solver"]["status"], "optimal");

  testgen::Rng rng(71);
  const auto path = scratch("random.fcidump");
  write_fcidump(path, testgen::molecular_like_hamiltonian(rng, 3, 2));
  auto c = config(Method::LpBliss);
  c.input = path;
  const json q = run_json(c);
  EXPECT_LE(q["lambda_pauli_after"].get<double>(), q["lambda_pauli_before"].get<double>());
}

TEST(Cli, ShiftedFcidumpKeepsSector) {
  auto c = config(Method::LpBliss);
  c.out_fcidump = scratch("shifted.fcidump");
  c.out_report = scratch("report.json");
  std::ostringstream out, err;
  ASSERT_EQ(run(c, out, err), 0) << err.str();
  EXPECT_TRUE(out.str().empty());
  const auto H = read_fcidump(kH2);
  const auto S = read_fcidump(*c.out_fcidump);
  EXPECT_LE((sector_spectrum(H, 2) - sector_spectrum(S, 2)).cwiseAbs().maxCoeff(), 1e-9);
  const json r = json::parse(read_text(*c.out_report));
  EXPECT_NEAR(r["lambda_pauli_after"].get<double>(), pauli_one_norm(S).lambda_total, 1e-10);
}

TEST(Cli, NelecOverride) {
  auto c = config(Method::None);
  c.n_elec = 1;
  EXPECT_EQ(run_json(c)["input"]["n_elec"], 1);
}

TEST(Cli, InvalidInputNamesLine) {
  const auto path = scratch("bad.fcidump");
  {
    std::ofstream f(path);
    f << "&FCI NORB=2,NELEC=2,\n&END\n0.5 1 1 1 1\n0.3 1 7 0 0\n";
  }
  auto c = config(Method::None);
  c.input = path;
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), kExitParse);
  EXPECT_NE(err.str().find("line 4"), std::string::npos) << err.str();

  c.input = scratch("missing.fcidump");
  fs::remove(c.input);
  EXPECT_EQ(run(c, out, err), kExitIo);
}

TEST(Cli, SolverLimitHasOwnExitCode) {
  auto c = config(Method::LpBliss);
  c.solver.max_iterations = 1;
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), kExitSolver);
  EXPECT_FALSE(out.str().empty());
}

TEST(Cli, DeterministicApartFromTimings) {
  auto c = config(Method::FfrBliss, SpectralMode::Lanczos);
  c.seed = 42;
  const json a = run_json(c), b = run_json(c);
  EXPECT_EQ(without_timings(a).dump(), without_timings(b).dump());
}

TEST(Cli, CompareTable) {
  const auto res = compare({config(Method::None), config(Method::LpBliss)});
  ASSERT_EQ(res.table["rows"].size(), 2u);
  EXPECT_EQ(res.table["rows"][0]["method"], "none");
  EXPECT_FALSE(res.table["rows"][1]["lambda_pauli_ratio"].is_null());
  EXPECT_LT(res.table["rows"][1]["lambda_pauli_ratio"].get<double>(), 1.0);
  std::istringstream csv(res.csv);
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 3);

  const auto df = compare({config(Method::Df), config(Method::DfLrps), config(Method::DfLrbs)});
  ASSERT_EQ(df.table["rows"].size(), 3u);
  for (const auto& row : df.table["rows"]) EXPECT_FALSE(row["lambda_two_body_after"].is_null());

  EXPECT_THROW(compare({config(Method::None)}), std::invalid_argument);
  auto other = config(Method::None);
  other.input = scratch("random.fcidump");
  EXPECT_THROW(compare({config(Method::None), other}), std::invalid_argument);
}

TEST(Cli, SchemaFileMatchesEmbedded) {
  EXPECT_EQ(read_text(fs::path(BLISS_SOURCE_DIR) / "docs/report.schema.json"), report_schema_text());
}

TEST(Cli, ValidatorRejectsBrokenReports) {
  json r = run_json(config(Method::None));
  const json schema = report_schema();
  ASSERT_TRUE(validate_json(r, schema).empty());
  json extra = r;
  extra["surprise"] = 1;
  EXPECT_FALSE(validate_json(extra, schema).empty());
  json missing = r;
  missing.erase("lambda_pauli_after");
  EXPECT_FALSE(validate_json(missing, schema).empty());
  json wrong = r;
  wrong["config"]["method"] = "magic";
  EXPECT_FALSE(validate_json(wrong, schema).empty());
}

TEST(Cli, Binary) {
  const std::string exe = BLISS_CLI_PATH;
  const auto report = scratch("bin_report.json");
  EXPECT_EQ(shell(exe + " run --input " + kH2.string() + " --method ffr-bliss --spectral exact --out-report " +
                  report.string()),
            0);
  EXPECT_EQ(shell(exe + " schema --validate " + report.string() + " > /dev/null"), 0);

  const auto bad = scratch("bin_bad.fcidump");
  {
    std::ofstream f(bad);
    f << "&FCI NORB=2,NELEC=2,\n&END\n0.5 1 1 1 1\n0.3 1 7 0 0\n";
  }
  const auto err = scratch("bin_err.txt");
  EXPECT_EQ(shell(exe + " run --input " + bad.string() + " 2> " + err.string()), kExitParse);
  EXPECT_NE(read_text(err).find("line 4"), std::string::npos);
  EXPECT_EQ(shell(exe + " run --input " + kH2.string() + " --method nope 2> /dev/null"), kExitUsage);

  const auto csv = scratch("cmp.csv");
  EXPECT_EQ(shell(exe + " compare --input " + kH2.string() + " -m none -m lp-bliss -m flr-bliss --csv " + csv.string()),
            0);
  EXPECT_EQ(read_text(csv).substr(0, 7), "method,");
}
