#pragma once

#include <optional>

#include "json.hpp"

#include "bliss/fermionic.hpp"
#include "bliss/pauli_norm.hpp"
#include "bliss/spectral.hpp"

namespace bliss::cli {

nlohmann::json to_json(const PauliNormBreakdown& p);
nlohmann::json to_json(const FermionicReport& r);
nlohmann::json fragments_json(const FermionicReport& r);
nlohmann::json to_json(const SectorExtremes& s);
nlohmann::json to_json(const SpectralReport& r);

/// {mu1, mu2, xi statistics}; the caller adds flavor and mu1_source.
nlohmann::json bliss_summary(const BlissParams& K);

/// after / before, null when before is zero.
nlohmann::json ratio(double before, double after);

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// The report with its "timings_s" block removed, for determinism checks.
nlohmann::json without_timings(nlohmann::json report);

}  // namespace bliss::cli
