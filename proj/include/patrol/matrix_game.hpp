// Finite two-person zero-sum games: the row player maximizes, the column player minimizes.
#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <string>
#include <vector>

#include "patrol/rational.hpp"

namespace patrol {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
struct MatrixGameSolution {
  T value{};
  std::vector<T> row;
  std::vector<T> col;
  /// Worst payoff of `row` over columns and best payoff against `col` over rows.
  T lower{};
  T upper{};
  std::size_t iterations = 0;
  std::string method;
};

/// Linear program solved by the simplex method with Bland's rule; exact for Rational.
/// Throws PreconditionError for an empty matrix, Error when `max_pivots` (0: unlimited) runs out.
template <class T>
MatrixGameSolution<T> solve_matrix_game(const Matrix<T>& payoff, std::size_t max_pivots = 0);

extern template MatrixGameSolution<double> solve_matrix_game<double>(const Matrix<double>&, std::size_t);
extern template MatrixGameSolution<Rational> solve_matrix_game<Rational>(const Matrix<Rational>&, std::size_t);

/// Multiplicative weights for the row player against column best responses, stopped once the
/// certified gap upper - lower is at most eps (or after max_iter rounds).
MatrixGameSolution<double> solve_matrix_game_mwu(const Matrix<double>& payoff, double eps, std::size_t max_iter = 200000);

}  // namespace patrol
