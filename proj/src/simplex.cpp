#include "spanorm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

template <class T>
T tolerance();
template <>
double tolerance<double>() { return 1e-10; }
template <>
Rational tolerance<Rational>() { return Rational(0); }

// Smallest usable pivot entry, and the relative width of a ratio-test tie.
template <class T>
T pivot_tolerance() { return T(0); }
template <>
double pivot_tolerance<double>() { return 1e-9; }
template <class T>
bool ratio_tie(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) return std::abs(a - b) <= 1e-12 * (1 + std::abs(b));
  return a == b;
}

constexpr std::size_t kIterationLimit = 100000;

// Tableau over normalised rows (rhs >= 0). Columns: structural, one slack per
// row (zero column for equalities), one artificial per row, then the rhs.
template <class T>
class Tableau {
 public:
  explicit Tableau(const LinearProgram<T>& lp)
      : n_(lp.num_variables()), m_(lp.num_rows()), width_(n_ + 2 * m_ + 1),
        cells_((m_ + 1) * width_, T(0)), basis_(m_), sign_(m_, 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      int s = row.rhs < T(0) ? -1 : 1;
      sign_[i] = s;
      for (const auto& [j, a] : row.terms) at(i, j) += s > 0 ? a : T(-a);
      if (row.sense == Sense::LessEq) at(i, n_ + i) = T(s);
      if (row.sense == Sense::GreaterEq) at(i, n_ + i) = T(-s);
      at(i, art(i)) = T(1);
      at(i, rhs()) = s > 0 ? row.rhs : T(-row.rhs);
      basis_[i] = art(i);
    }
    original_.assign(cells_.begin(), cells_.begin() + static_cast<std::ptrdiff_t>(m_ * width_));
  }

  LpSolution<T> run(const LinearProgram<T>& lp) {
    LpSolution<T> out;
    const T eps = tolerance<T>();
    // phase 1: minimise the sum of artificials
    cost_.assign(width_, T(0));
    for (std::size_t i = 0; i < m_; ++i) cost_[art(i)] = T(1);
    load_costs();
    auto st = iterate(true, out.iterations);
    if (st != LpStatus::Optimal) {
      out.status = st;
      return out;
    }
    if (-obj(rhs()) > eps * T(static_cast<long>(m_ + 1))) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    drive_out_artificials();

    cost_.assign(width_, T(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp.cost[j];
    load_costs();
    st = iterate(false, out.iterations);
    out.status = st;
    if (st != LpStatus::Optimal) return out;

    out.x.assign(n_, T(0));
    bool clean = true;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = at(i, rhs());
      if (basis_[i] >= n_ + m_) clean = false;
    }
    out.objective = T(0);
    for (std::size_t j = 0; j < n_; ++j) out.objective += lp.cost[j] * out.x[j];
    out.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      T y = -obj(art(i));
      out.duals[i] = sign_[i] > 0 ? y : T(-y);
    }
    if (clean) out.basis = basis_;
    return out;
  }

 private:
  T& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
  T& obj(std::size_t j) { return cells_[m_ * width_ + j]; }
  std::size_t art(std::size_t i) const { return n_ + m_ + i; }
  std::size_t rhs() const { return width_ - 1; }

  void load_costs() {
    for (std::size_t j = 0; j < width_; ++j) obj(j) = cost_[j];
    price_out();
  }

  // Rebuild the rows as B^-1 times the original rows for the current basis,
  // discarding the roundoff accumulated by in-place pivoting.
  void refactor() {
    if constexpr (std::is_same_v<T, double>) {
      std::vector<double> b(m_ * m_), inv(m_ * m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        inv[i * m_ + i] = 1;
        for (std::size_t k = 0; k < m_; ++k) b[i * m_ + k] = original_[i * width_ + basis_[k]];
      }
      for (std::size_t c = 0; c < m_; ++c) {
        std::size_t r = c;
        for (std::size_t i = c + 1; i < m_; ++i)
          if (std::abs(b[i * m_ + c]) > std::abs(b[r * m_ + c])) r = i;
        if (std::abs(b[r * m_ + c]) < 1e-12) return;  // keep the current tableau
        for (std::size_t j = 0; j < m_; ++j) {
          std::swap(b[r * m_ + j], b[c * m_ + j]);
          std::swap(inv[r * m_ + j], inv[c * m_ + j]);
        }
        const double piv = b[c * m_ + c];
        for (std::size_t j = 0; j < m_; ++j) {
          b[c * m_ + j] /= piv;
          inv[c * m_ + j] /= piv;
        }
        for (std::size_t i = 0; i < m_; ++i) {
          const double f = b[i * m_ + c];
          if (i == c || f == 0) continue;
          for (std::size_t j = 0; j < m_; ++j) {
            b[i * m_ + j] -= f * b[c * m_ + j];
            inv[i * m_ + j] -= f * inv[c * m_ + j];
          }
        }
      }
      // row k of the new tableau belongs to basis_[k]
      for (std::size_t k = 0; k < m_; ++k)
        for (std::size_t j = 0; j < width_; ++j) {
          double v = 0;
          for (std::size_t i = 0; i < m_; ++i) v += inv[k * m_ + i] * original_[i * width_ + j];
          at(k, j) = std::abs(v) < 1e-13 ? 0.0 : v;
        }
      for (std::size_t k = 0; k < m_; ++k) {
        at(k, basis_[k]) = 1;
        if (at(k, rhs()) < 0 && at(k, rhs()) > -1e-9) at(k, rhs()) = 0;
      }
      load_costs();
    }
  }

  void price_out() {
    for (std::size_t i = 0; i < m_; ++i) {
      T c = obj(basis_[i]);
      if (c == T(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) obj(j) -= c * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    T piv = at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= piv;
    at(r, c) = T(1);
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      T f = cells_[i * width_ + c];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) cells_[i * width_ + j] -= f * at(r, j);
      cells_[i * width_ + c] = T(0);
    }
    if constexpr (std::is_same_v<T, double>) {
      // roundoff left by cancellation would otherwise steer later pivots
      for (auto& x : cells_)
        if (std::abs(x) < 1e-13) x = 0;
    }
    basis_[r] = c;
  }

  LpStatus iterate(bool phase1, std::size_t& iterations) {
    const T eps = tolerance<T>();
    const std::size_t last = phase1 ? width_ - 1 : n_ + m_;
    std::size_t since = 0;
    bool fresh = !std::is_same_v<T, double>;
    while (true) {
      if (++iterations > kIterationLimit) return LpStatus::IterationLimit;
      std::size_t enter = last;
      for (std::size_t j = 0; j < last; ++j)
        if (obj(j) < -eps) {
          enter = j;
          break;
        }
      if (enter == last) {
        if (!fresh) {
          refactor();
          fresh = true;
          continue;
        }
        return LpStatus::Optimal;
      }
      std::size_t leave = m_;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        T a = at(i, enter);
        if (!(a > pivot_tolerance<T>())) continue;
        T ratio = at(i, rhs()) / a;
        if (leave == m_ ||
            (ratio_tie(ratio, best) ? basis_[i] < basis_[leave] : ratio < best)) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) {
        if (!fresh) {
          refactor();
          fresh = true;
          continue;
        }
        return LpStatus::Unbounded;
      }
      pivot(leave, enter);
      if constexpr (std::is_same_v<T, double>) {
        fresh = false;
        if (++since % 16 == 0) {
          refactor();
          fresh = true;
        }
      }
    }
  }

  void drive_out_artificials() {
    const T eps = tolerance<T>();
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      // largest entry, so a tiny pivot never scales the row up
      std::size_t best = n_ + m_;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        T a = at(i, j) < T(0) ? T(-at(i, j)) : at(i, j);
        if (a > eps && (best == n_ + m_ || a > (at(i, best) < T(0) ? T(-at(i, best)) : at(i, best))))
          best = j;
        if constexpr (!std::is_same_v<T, double>) {
          if (best != n_ + m_) break;
        }
      }
      if (best != n_ + m_) pivot(i, best);
    }
  }

  std::size_t n_, m_, width_;
  std::vector<T> cells_;
  std::vector<T> original_;  // normalised rows before any pivot
  std::vector<T> cost_;      // objective of the current phase
  std::vector<std::size_t> basis_;
  std::vector<int> sign_;
};

// Exact Gaussian elimination; returns nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t m = b.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t r = c;
    while (r < m && a[r][c] == 0) ++r;
    if (r == m) return std::nullopt;
    std::swap(a[r], a[c]);
    std::swap(b[r], b[c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < m; ++j)
        if (a[c][j] != 0) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < m; ++i) b[i] /= a[i][i];
  return b;
}

// Standard-form column: structural variable or the slack of a row.
std::vector<std::pair<std::size_t, Rational>> column(const LinearProgram<Rational>& lp,
                                                     const std::vector<std::vector<Rational>>& dense,
                                                     std::size_t j) {
  std::vector<std::pair<std::size_t, Rational>> out;
  const std::size_t n = lp.num_variables();
  if (j < n) {
    for (std::size_t i = 0; i < lp.num_rows(); ++i)
      if (dense[i][j] != 0) out.emplace_back(i, dense[i][j]);
  } else {
    std::size_t i = j - n;
    if (lp.rows[i].sense == Sense::LessEq) out.emplace_back(i, Rational(1));
    if (lp.rows[i].sense == Sense::GreaterEq) out.emplace_back(i, Rational(-1));
  }
  return out;
}

std::optional<LpSolution<Rational>> certify_basis(const LinearProgram<Rational>& lp,
                                                  const std::vector<std::size_t>& basis) {
  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_variables();
  if (basis.size() != m) return std::nullopt;
  for (auto j : basis)
    if (j >= n + m || (j >= n && lp.rows[j - n].sense == Sense::Equal)) return std::nullopt;
  auto dense = lp.dense();
  std::vector<std::vector<Rational>> bm(m, std::vector<Rational>(m, Rational(0)));
  std::vector<std::vector<Rational>> bt(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> cb(m, Rational(0)), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (auto& [i, a] : column(lp, dense, basis[k])) {
      bm[i][k] = a;
      bt[k][i] = a;
    }
    if (basis[k] < n) cb[k] = lp.cost[basis[k]];
  }
  for (std::size_t i = 0; i < m; ++i) rhs[i] = lp.rows[i].rhs;
  auto xb = solve_square(bm, rhs);
  if (!xb) return std::nullopt;
  for (const auto& v : *xb)
    if (v < 0) return std::nullopt;
  auto y = solve_square(bt, cb);
  if (!y) return std::nullopt;
  std::vector<bool> in_basis(n + m, false);
  for (auto j : basis) in_basis[j] = true;
  for (std::size_t j = 0; j < n + m; ++j) {
    if (in_basis[j] || (j >= n && lp.rows[j - n].sense == Sense::Equal)) continue;
    Rational r = j < n ? lp.cost[j] : Rational(0);
    for (auto& [i, a] : column(lp, dense, j)) r -= (*y)[i] * a;
    if (r < 0) return std::nullopt;
  }
  LpSolution<Rational> out;
  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t k = 0; k < m; ++k)
    if (basis[k] < n) out.x[basis[k]] = (*xb)[k];
  out.objective = 0;
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.cost[j] * out.x[j];
  out.duals = std::move(*y);
  out.basis = basis;
  return out;
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

template <class T>
std::vector<std::vector<T>> LinearProgram<T>::dense() const {
  std::vector<std::vector<T>> a(rows.size(), std::vector<T>(variables.size(), T(0)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i].terms) a[i][j] += v;
  return a;
}

template <class T>
std::optional<std::size_t> LinearProgram<T>::find_variable(const std::string& name) const {
  for (std::size_t j = 0; j < variables.size(); ++j)
    if (variables[j] == name) return j;
  return std::nullopt;
}

template <class T>
std::optional<std::size_t> LinearProgram<T>::find_row(const std::string& name) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].name == name) return i;
  return std::nullopt;
}

namespace {

// Optimality of a floating-point answer re-checked against the original data:
// primal rows, signs, reduced costs and the duality gap, all within 1e-9.
bool certified(const LinearProgram<double>& lp, const LpSolution<double>& sol) {
  if (sol.status != LpStatus::Optimal) return false;
  const double tol = 1e-9;
  const std::size_t n = lp.num_variables();
  std::vector<double> reduced(lp.cost);
  double dual_obj = 0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    double lhs = 0, scale = 1 + std::abs(row.rhs);
    for (const auto& [j, a] : row.terms) {
      lhs += a * sol.x[j];
      scale += std::abs(a * sol.x[j]);
      reduced[j] -= a * sol.duals[i];
    }
    const double y = sol.duals[i];
    switch (row.sense) {
      case Sense::GreaterEq:
        if (lhs < row.rhs - tol * scale || y < -tol) return false;
        break;
      case Sense::LessEq:
        if (lhs > row.rhs + tol * scale || y > tol) return false;
        break;
      case Sense::Equal:
        if (std::abs(lhs - row.rhs) > tol * scale) return false;
        break;
    }
    dual_obj += row.rhs * y;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (sol.x[j] < -tol || reduced[j] < -tol) return false;
  return std::abs(sol.objective - dual_obj) <= tol * (1 + std::abs(sol.objective));
}

LinearProgram<Rational> to_rational(const LinearProgram<double>& lp) {
  LinearProgram<Rational> out;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) out.add_variable(lp.variables[j], Rational(lp.cost[j]));
  for (const auto& row : lp.rows) {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (const auto& [j, a] : row.terms) terms.emplace_back(j, Rational(a));
    out.add_row(row.name, std::move(terms), row.sense, Rational(row.rhs));
  }
  return out;
}

}  // namespace

template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp) {
  for (const auto& row : lp.rows)
    for (const auto& term : row.terms)
      require(term.first < lp.num_variables(), "row '" + row.name + "' references an unknown variable");
  Tableau<T> tab(lp);
  auto sol = tab.run(lp);
  if constexpr (std::is_same_v<T, double>) {
    if (!certified(lp, sol)) {
      // the same LP in exact arithmetic (doubles convert exactly)
      auto exact = solve_lp(to_rational(lp));
      LpSolution<double> out;
      out.status = exact.status;
      out.iterations = sol.iterations + exact.iterations;
      out.basis = exact.basis;
      out.objective = exact.objective.get_d();
      for (const auto& v : exact.x) out.x.push_back(v.get_d());
      for (const auto& v : exact.duals) out.duals.push_back(v.get_d());
      return out;
    }
  }
  return sol;
}

LpSolution<Rational> solve_lp_exact(const LinearProgram<Rational>& lp,
                                    const std::vector<std::size_t>* hint) {
  if (hint) {
    if (auto sol = certify_basis(lp, *hint)) return *sol;
  }
  return solve_lp(lp);
}

LinearProgram<double> to_double(const LinearProgram<Rational>& lp) {
  LinearProgram<double> out;
  for (std::size_t j = 0; j < lp.num_variables(); ++j)
    out.add_variable(lp.variables[j], lp.cost[j].get_d());
  for (const auto& row : lp.rows) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (const auto& [j, a] : row.terms) terms.emplace_back(j, a.get_d());
    out.add_row(row.name, std::move(terms), row.sense, row.rhs.get_d());
  }
  return out;
}

template struct LinearProgram<double>;
template struct LinearProgram<Rational>;
template LpSolution<double> solve_lp(const LinearProgram<double>&);
template LpSolution<Rational> solve_lp(const LinearProgram<Rational>&);

}  // namespace spanorm
