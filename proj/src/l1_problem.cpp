#include "bliss/l1_problem.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bliss/errors.hpp"

namespace bliss {

void L1Problem::add_row(L1Row row, double rhs, double weight) {
  rows.push_back(std::move(row));
  b.push_back(rhs);
  weights.push_back(weight);
}

double L1Problem::residual(std::size_t row, std::span<const double> x) const {
  double v = -b[row];
  for (const auto& [var, coef] : rows[row].terms) v += coef * x[var];
  return v;
}

double L1Problem::objective(std::span<const double> x) const {
  if (x.size() != n_vars) throw DimensionError("L1 objective: x has wrong length");
  double total = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) total += weights[r] * std::abs(residual(r, x));
  return total;
}

void L1Problem::validate() const {
  if (b.size() != rows.size() || weights.size() != rows.size())
    throw InvariantError("L1 problem: rows, b and weights differ in length");
  if (!var_names.empty() && var_names.size() != n_vars)
    throw InvariantError("L1 problem: var_names must be empty or one per variable");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!(weights[r] > 0.0))
      throw InvariantError("L1 problem: row " + std::to_string(r) + " has non-positive weight");
    if (!std::isfinite(b[r]))
      throw InvariantError("L1 problem: row " + std::to_string(r) + " has non-finite b");
    for (const auto& [var, coef] : rows[r].terms) {
      if (var >= n_vars)
        throw InvariantError("L1 problem: row " + std::to_string(r) + " references variable " +
                             std::to_string(var));
      if (!std::isfinite(coef))
        throw InvariantError("L1 problem: row " + std::to_string(r) + " has non-finite coefficient");
    }
  }
}

namespace {

// Row terms with duplicates summed and zeros dropped, sorted by variable.
std::vector<std::pair<std::size_t, double>> canonical_terms(const L1Row& row) {
  std::map<std::size_t, double> acc;
  for (const auto& [var, coef] : row.terms) acc[var] += coef;
  std::vector<std::pair<std::size_t, double>> out;
  for (const auto& [var, coef] : acc)
    if (coef != 0.0) out.emplace_back(var, coef);
  return out;
}

}  // namespace

LinearProgram to_linear_program(const L1Problem& p, double* constant) {
  p.validate();
  std::vector<std::size_t> live;
  double fixed = 0.0;
  std::vector<std::vector<std::pair<std::size_t, double>>> terms(p.n_rows());
  for (std::size_t r = 0; r < p.n_rows(); ++r) {
    terms[r] = canonical_terms(p.rows[r]);
    if (terms[r].empty())
      fixed += p.weights[r] * std::abs(p.b[r]);
    else
      live.push_back(r);
  }
  if (constant) *constant = fixed;

  const auto n = static_cast<Eigen::Index>(p.n_vars);
  const auto m = static_cast<Eigen::Index>(live.size());
  LinearProgram lp;
  lp.c = Eigen::VectorXd::Zero(n + m);
  lp.G = Eigen::MatrixXd::Zero(2 * m, n + m);
  lp.h = Eigen::VectorXd::Zero(2 * m);
  lp.nonnegative.assign(static_cast<std::size_t>(n + m), true);
  for (Eigen::Index j = 0; j < n; ++j) lp.nonnegative[static_cast<std::size_t>(j)] = false;

  for (Eigen::Index k = 0; k < m; ++k) {
    const std::size_t r = live[static_cast<std::size_t>(k)];
    lp.c(n + k) = p.weights[r];
    for (const auto& [var, coef] : terms[r]) {
      lp.G(2 * k, static_cast<Eigen::Index>(var)) = coef;
      lp.G(2 * k + 1, static_cast<Eigen::Index>(var)) = -coef;
    }
    lp.G(2 * k, n + k) = -1.0;
    lp.G(2 * k + 1, n + k) = -1.0;
    lp.h(2 * k) = p.b[r];
    lp.h(2 * k + 1) = -p.b[r];
  }
  return lp;
}

L1Solution l1_minimize(const L1Problem& p, const SolverOptions& opts, const LpSolver& solver) {
  const LinearProgram lp = to_linear_program(p);
  L1Solution out;
  out.x_opt.assign(p.n_vars, 0.0);

  const LpResult res = solver.solve(lp, opts);
  out.iterations = res.iterations;
  out.status = res.status;
  if (res.z_feasible)
    for (std::size_t j = 0; j < p.n_vars; ++j) out.x_opt[j] = res.z(static_cast<Eigen::Index>(j));
  out.objective = p.objective(out.x_opt);
  return out;
}

L1Problem merge_duplicate_rows(const L1Problem& p) {
  p.validate();
  constexpr double tol = 1e-14;
  const std::size_t m = p.n_rows();
  std::vector<std::vector<std::pair<std::size_t, double>>> terms(m);
  for (std::size_t r = 0; r < m; ++r) terms[r] = canonical_terms(p.rows[r]);

  auto less = [&](std::size_t a, std::size_t b) {
    const auto& ta = terms[a];
    const auto& tb = terms[b];
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    for (std::size_t k = 0; k < ta.size(); ++k) {
      if (ta[k].first != tb[k].first) return ta[k].first < tb[k].first;
      if (ta[k].second != tb[k].second) return ta[k].second < tb[k].second;
    }
    if (p.b[a] != p.b[b]) return p.b[a] < p.b[b];
    return a < b;
  };
  auto same = [&](std::size_t a, std::size_t b) {
    const auto& ta = terms[a];
    const auto& tb = terms[b];
    if (ta.size() != tb.size()) return false;
    for (std::size_t k = 0; k < ta.size(); ++k)
      if (ta[k].first != tb[k].first || std::abs(ta[k].second - tb[k].second) > tol) return false;
    return std::abs(p.b[a] - p.b[b]) <= tol;
  };

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), less);

  // Each row maps to the first-occurring member of its run of equals.
  std::vector<std::size_t> rep(m);
  for (std::size_t s = 0; s < m;) {
    std::size_t e = s + 1;
    while (e < m && same(order[e - 1], order[e])) ++e;
    std::size_t first = order[s];
    for (std::size_t k = s; k < e; ++k) first = std::min(first, order[k]);
    for (std::size_t k = s; k < e; ++k) rep[order[k]] = first;
    s = e;
  }

  L1Problem out;
  out.n_vars = p.n_vars;
  out.var_names = p.var_names;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t f = rep[r];
    if (slot[f] == m) {
      slot[f] = out.n_rows();
      out.add_row(p.rows[f], p.b[f], p.weights[r]);
    } else {
      out.weights[slot[f]] += p.weights[r];
    }
  }
  return out;
}

void write_l1_problem(std::ostream& out, const L1Problem& p) {
  p.validate();
  const auto old_prec = out.precision(17);
  out << "l1problem 1\n";
  out << "vars " << p.n_vars << " rows " << p.n_rows() << '\n';
  for (std::size_t j = 0; j < p.var_names.size(); ++j)
    out << "name " << j << ' ' << p.var_names[j] << '\n';
  for (std::size_t r = 0; r < p.n_rows(); ++r) out << "row " << r << ' ' << p.b[r] << ' ' << p.weights[r] << '\n';
  for (std::size_t r = 0; r < p.n_rows(); ++r)
    for (const auto& [var, coef] : p.rows[r].terms) out << "a " << r << ' ' << var << ' ' << coef << '\n';
  out.precision(old_prec);
}

L1Problem read_l1_problem(std::istream& in) {
  L1Problem p;
  std::string line;
  std::size_t lineno = 0;
  bool have_magic = false;
  bool have_dims = false;
  std::vector<bool> row_seen;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!have_magic) {
      int version = 0;
      if (tag != "l1problem" || !(ls >> version) || version != 1)
        throw ParseError(lineno, "expected 'l1problem 1'");
      have_magic = true;
      continue;
    }
    if (tag == "vars") {
      std::string rows_kw;
      std::size_t n = 0, m = 0;
      if (!(ls >> n >> rows_kw >> m) || rows_kw != "rows")
        throw ParseError(lineno, "expected 'vars <n> rows <m>'");
      p.n_vars = n;
      p.rows.assign(m, {});
      p.b.assign(m, 0.0);
      p.weights.assign(m, 0.0);
      row_seen.assign(m, false);
      have_dims = true;
    } else if (!have_dims) {
      throw ParseError(lineno, "'" + tag + "' before the vars line");
    } else if (tag == "name") {
      std::size_t j = 0;
      std::string label;
      if (!(ls >> j >> label) || j >= p.n_vars) throw ParseError(lineno, "bad name line");
      if (p.var_names.empty()) p.var_names.assign(p.n_vars, "");
      p.var_names[j] = label;
    } else if (tag == "row") {
      std::size_t r = 0;
      double bv = 0, w = 0;
      if (!(ls >> r >> bv >> w) || r >= p.rows.size()) throw ParseError(lineno, "bad row line");
      p.b[r] = bv;
      p.weights[r] = w;
      row_seen[r] = true;
    } else if (tag == "a") {
      std::size_t r = 0, j = 0;
      double v = 0;
      if (!(ls >> r >> j >> v) || r >= p.rows.size() || j >= p.n_vars)
        throw ParseError(lineno, "bad coefficient line");
      p.rows[r].terms.emplace_back(j, v);
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!have_dims) throw ParseError(0, "missing vars line");
  for (std::size_t r = 0; r < row_seen.size(); ++r)
    if (!row_seen[r]) throw ParseError(0, "row " + std::to_string(r) + " has no row line");
  p.validate();
  return p;
}

}  // namespace bliss
