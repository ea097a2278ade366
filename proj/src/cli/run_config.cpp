#include "bliss/cli/run_config.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace bliss::cli {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethods{{
    {Method::None, "none"},
    {Method::LpBliss, "lp-bliss"},
    {Method::FlrBliss, "flr-bliss"},
    {Method::FfrBliss, "ffr-bliss"},
    {Method::Df, "df"},
    {Method::DfLrps, "df-lrps"},
    {Method::DfLrbs, "df-lrbs"},
}};

constexpr std::array<std::pair<SpectralMode, std::string_view>, 3> kSpectral{{
    {SpectralMode::Off, "off"},
    {SpectralMode::Exact, "exact"},
    {SpectralMode::Lanczos, "lanczos"},
}};

}  // namespace

std::string to_string(Method m) {
  for (const auto& [k, v] : kMethods)
    if (k == m) return std::string(v);
  return "unknown";
}

std::string to_string(SpectralMode m) {
  for (const auto& [k, v] : kSpectral)
    if (k == m) return std::string(v);
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [k, v] : kMethods)
    if (v == name) return k;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

SpectralMode parse_spectral_mode(std::string_view name) {
  for (const auto& [k, v] : kSpectral)
    if (v == name) return k;
  throw std::invalid_argument("unknown spectral mode '" + std::string(name) + "'");
}

Mu1Source parse_mu1_source(std::string_view name) {
  if (name == "fragment") return Mu1Source::OneBodyFragment;
  if (name == "h") return Mu1Source::UnmodifiedH;
  throw std::invalid_argument("unknown mu1 source '" + std::string(name) + "'");
}

bool is_bliss_method(Method m) {
  return m == Method::LpBliss || m == Method::FlrBliss || m == Method::FfrBliss;
}

}  // namespace bliss::cli
