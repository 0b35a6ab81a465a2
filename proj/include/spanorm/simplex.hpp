#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spanorm/rational.hpp"

namespace spanorm {

enum class Sense { LessEq, GreaterEq, Equal };

// minimise cost . x  subject to rows, x >= 0
template <class T>
struct LinearProgram {
  struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, T>> terms;
    Sense sense = Sense::GreaterEq;
    T rhs{};
  };

  std::vector<std::string> variables;
  std::vector<T> cost;
  std::vector<Row> rows;

  std::size_t add_variable(std::string name, T c = T(0)) {
    variables.push_back(std::move(name));
    cost.push_back(std::move(c));
    return variables.size() - 1;
  }
  std::size_t add_row(std::string name, std::vector<std::pair<std::size_t, T>> terms, Sense sense,
                      T rhs) {
    rows.push_back({std::move(name), std::move(terms), sense, std::move(rhs)});
    return rows.size() - 1;
  }
  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_rows() const { return rows.size(); }
  // Dense row-major coefficient matrix (rows x variables).
  std::vector<std::vector<T>> dense() const;
  std::optional<std::size_t> find_variable(const std::string& name) const;
  std::optional<std::size_t> find_row(const std::string& name) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };
const char* to_string(LpStatus s);

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  T objective{};
  std::vector<T> x;
  // Row duals in the orientation of the rows as written: >= rows get
  // non-negative duals, <= rows non-positive, = rows free.
  std::vector<T> duals;
  // Optimal basis in standard-form column ids: variable j -> j, slack of row
  // i -> num_variables + i. Empty when an artificial stayed basic.
  std::vector<std::size_t> basis;
  std::size_t iterations = 0;
};

// Dense two-phase tableau simplex with Bland's rule. double uses a 1e-10
// tolerance; Rational is exact.
template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp);

// Exact solve. When `hint` is a basis (e.g. from a floating-point solve) it is
// checked for exact primal and dual feasibility first; on failure the full
// exact simplex runs.
LpSolution<Rational> solve_lp_exact(const LinearProgram<Rational>& lp,
                                    const std::vector<std::size_t>* hint = nullptr);

LinearProgram<double> to_double(const LinearProgram<Rational>& lp);

}  // namespace spanorm
