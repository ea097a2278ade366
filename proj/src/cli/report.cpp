#include "bliss/cli/report.hpp"

namespace bliss::cli {

using nlohmann::json;

json to_json(const PauliNormBreakdown& p) {
  return {{"lambda_total", p.lambda_total}, {"term1", p.term1}, {"term2", p.term2}, {"term3", p.term3}};
}

json to_json(const FermionicReport& r) {
  return {
      {"method", to_string(r.method)},
      {"n_fragments", r.n_fragments},
      {"mu1", r.mu1},
      {"lambda_1e", r.lambda_1e},
      {"lambda_two_body", r.lambda_two_body},
      {"lambda_two_body_unshifted", r.lambda_two_body_unshifted},
      {"lambda_total", r.lambda_total},
      {"half_range_sum", optional_json(r.half_range_sum)},
      {"solver_status", to_string(r.solver_status)},
  };
}

json fragments_json(const FermionicReport& r) {
  json out = json::array();
  for (std::size_t a = 0; a < r.fragments.size(); ++a) {
    const FragmentNorm& f = r.fragments[a];
    out.push_back({
        {"index", a},
        {"sign", f.sign},
        {"lambda", f.lambda},
        {"lambda_unshifted", f.lambda_unshifted},
        {"half_range", optional_json(f.half_range)},
        {"phi", optional_json(f.phi)},
        {"mu2", optional_json(f.mu2)},
    });
  }
  return out;
}

json to_json(const SectorExtremes& s) {
  return {{"n_elec", s.n_elec}, {"dim", s.dim},     {"e_min", s.e_min},
          {"e_max", s.e_max},   {"exact", s.exact}, {"converged", s.converged}};
}

json to_json(const SpectralReport& r) {
  json sectors = json::array();
  for (const auto& s : r.sectors) sectors.push_back(to_json(s));
  json shifted = json::array();
  for (const auto& s : r.shifted_sectors) shifted.push_back(to_json(s));
  return {
      {"method", to_string(r.method)},
      {"delta_e", r.delta_e},
      {"delta_e_ens", r.delta_e_ens},
      {"delta_e_shifted", optional_json(r.delta_e_shifted)},
      {"deviation", optional_json(r.deviation)},
      {"converged", r.converged},
      {"lanczos_truncation_order", "truncate H v, then orthogonalize"},
      {"sectors", sectors},
      {"shifted_sectors", shifted},
  };
}

json bliss_summary(const BlissParams& K) {
  const Eigen::MatrixXd& xi = K.xi();
  return {
      {"mu1", K.mu1},
      {"mu2", K.mu2},
      {"xi_frobenius", xi.size() ? xi.norm() : 0.0},
      {"xi_max_abs", xi.size() ? xi.cwiseAbs().maxCoeff() : 0.0},
      {"xi_trace", xi.size() ? xi.trace() : 0.0},
  };
}

json ratio(double before, double after) {
  return before == 0.0 ? json(nullptr) : json(after / before);
}

json without_timings(json report) {
  report.erase("timings_s");
  return report;
}

}  // namespace bliss::cli
