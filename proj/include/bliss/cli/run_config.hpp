#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bliss/fermionic.hpp"
#include "bliss/lp_solver.hpp"

namespace bliss::cli {

enum class Method { None, LpBliss, FlrBliss, FfrBliss, Df, DfLrps, DfLrbs };
enum class SpectralMode { Off, Exact, Lanczos };

std::string to_string(Method m);
std::string to_string(SpectralMode m);
/// Throws std::invalid_argument on unknown names.
Method parse_method(std::string_view name);
SpectralMode parse_spectral_mode(std::string_view name);
/// "fragment" or "h".
Mu1Source parse_mu1_source(std::string_view name);

/// True for methods that produce a BLISS operator (and a shifted FCIDUMP).
bool is_bliss_method(Method m);

struct RunConfig {
  std::filesystem::path input;
  Method method = Method::None;
  std::optional<int> n_elec;  // defaults to the file's NELEC
  SpectralMode spectral = SpectralMode::Off;
  std::optional<std::filesystem::path> out_fcidump;
  std::optional<std::filesystem::path> out_report;
  std::uint64_t seed = 0;  // recorded only; the pipeline has no random steps
  std::size_t lanczos_mult = 5;
  double lanczos_tol = 1e-5;
  std::size_t lanczos_max_iter = 200;
  double df_tol = 1e-8;
  Mu1Source mu1_source = Mu1Source::OneBodyFragment;  // flr-bliss / ffr-bliss
  SolverOptions solver;
};

}  // namespace bliss::cli
