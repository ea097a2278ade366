#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bliss/cli/run_config.hpp"
#include "bliss/hamiltonian.hpp"

namespace bliss::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // any other library error
  kExitUsage = 2,
  kExitIo = 3,
  kExitParse = 4,
  kExitSolver = 5,  // an LP finished without an optimal status
};

struct RunResult {
  nlohmann::json report;
  std::optional<MolecularHamiltonian> shifted;  // set for BLISS methods
  bool solver_optimal = true;
};

/// Runs the configured method on an already loaded Hamiltonian. cfg.n_elec,
/// when set, replaces H.n_elec.
RunResult analyze(MolecularHamiltonian H, const RunConfig& cfg, double parse_seconds = 0.0);

/// Loads cfg.input, analyzes it and writes the report (to cfg.out_report or
/// `out`) and the shifted FCIDUMP. Diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct CompareResult {
  nlohmann::json table;
  std::string csv;
  bool solver_optimal = true;
};

/// Runs every config on the shared input. Throws std::invalid_argument when
/// fewer than two configs are given or their inputs differ.
CompareResult compare(const std::vector<RunConfig>& configs);

int run_compare(const std::vector<RunConfig>& configs, const std::optional<std::string>& csv_path,
                const std::optional<std::string>& table_path, std::ostream& out, std::ostream& err);

}  // namespace bliss::cli
