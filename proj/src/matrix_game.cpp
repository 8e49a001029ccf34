#include "patrol/matrix_game.hpp"

#include <cmath>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

template <class T>
bool negative(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return x < -1e-9;
  } else {
    return x < 0;
  }
}

template <class T>
bool positive(const T& x) {
  return negative<T>(-x);
}

// Floating ties must be detected with a tolerance, or Bland's rule can cycle.
template <class T>
bool same(const T& a, const T& b) {
  return !negative<T>(a - b) && !negative<T>(b - a);
}

template <class T>
void certify(const Matrix<T>& a, MatrixGameSolution<T>& s) {
  const auto m = a.rows(), n = a.cols();
  s.lower = s.upper = T{};
  for (Eigen::Index j = 0; j < n; ++j) {
    T v{};
    for (Eigen::Index i = 0; i < m; ++i) v += s.row[static_cast<std::size_t>(i)] * a(i, j);
    if (j == 0 || v < s.lower) s.lower = v;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    T v{};
    for (Eigen::Index j = 0; j < n; ++j) v += a(i, j) * s.col[static_cast<std::size_t>(j)];
    if (i == 0 || v > s.upper) s.upper = v;
  }
}

}  // namespace

template <class T>
MatrixGameSolution<T> solve_matrix_game(const Matrix<T>& payoff, std::size_t max_pivots) {
  const Eigen::Index m = payoff.rows(), n = payoff.cols();
  if (m == 0 || n == 0) throw PreconditionError("empty payoff matrix");
  // With B = A + shift > 0: max 1'y s.t. B y <= 1, y >= 0 has optimum 1 / value(B).
  T shift = T(1) - payoff.minCoeff();
  Matrix<T> tab = Matrix<T>::Zero(m + 1, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) tab(i, j) = payoff(i, j) + shift;
    tab(i, n + i) = T(1);
    tab(i, n + m) = T(1);
  }
  for (Eigen::Index j = 0; j < n; ++j) tab(m, j) = T(-1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  MatrixGameSolution<T> s;
  s.method = "simplex";
  // Dantzig's rule, switching to Bland's rule (which cannot cycle) after a run of degenerate pivots.
  std::size_t degenerate = 0;
  for (;;) {
    bool bland = degenerate >= 20;
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (!negative(tab(m, j))) continue;
      if (enter < 0 || (!bland && tab(m, j) < tab(m, enter))) enter = j;
      if (bland) break;
    }
    if (enter < 0) break;
    if (max_pivots != 0 && s.iterations == max_pivots) throw Error("simplex pivot limit reached");
    Eigen::Index leave = -1;
    T best{};
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!positive(tab(i, enter))) continue;
      T ratio = tab(i, n + m) / tab(i, enter);
      bool tie = leave >= 0 && same(ratio, best);
      if (leave < 0 || (!tie && ratio < best) ||
          (tie && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    degenerate = tab(leave, n + m) == T{} ? degenerate + 1 : 0;
    T pivot = tab(leave, enter);
    // The tableau is sparse; touching only the pivot row's nonzeros matters for exact arithmetic.
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j <= n + m; ++j) {
      if (tab(leave, j) != T{}) {
        tab(leave, j) /= pivot;
        support.push_back(j);
      }
    }
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave || tab(i, enter) == T{}) continue;
      T f = tab(i, enter);
      for (Eigen::Index j : support) {
        tab(i, j) -= f * tab(leave, j);
        if constexpr (std::is_floating_point_v<T>) {
          if (same(tab(i, j), T{})) tab(i, j) = T{};
        }
      }
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++s.iterations;
  }

  T z = tab(m, n + m);
  s.col.assign(static_cast<std::size_t>(n), T{});
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) s.col[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = tab(i, n + m) / z;
  }
  s.row.assign(static_cast<std::size_t>(m), T{});
  for (Eigen::Index i = 0; i < m; ++i) s.row[static_cast<std::size_t>(i)] = tab(m, n + i) / z;
  s.value = T(1) / z - shift;
  certify(payoff, s);
  return s;
}

template MatrixGameSolution<double> solve_matrix_game<double>(const Matrix<double>&, std::size_t);
template MatrixGameSolution<Rational> solve_matrix_game<Rational>(const Matrix<Rational>&, std::size_t);

MatrixGameSolution<double> solve_matrix_game_mwu(const Matrix<double>& payoff, double eps, std::size_t max_iter) {
  const Eigen::Index m = payoff.rows(), n = payoff.cols();
  if (m == 0 || n == 0) throw PreconditionError("empty payoff matrix");
  double lo = payoff.minCoeff(), hi = payoff.maxCoeff();
  double span = hi > lo ? hi - lo : 1.0;
  Eigen::VectorXd logw = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(m), col_count = Eigen::VectorXd::Zero(n);
  double rate = std::sqrt(8.0 * std::log(static_cast<double>(m) + 1.0) / static_cast<double>(max_iter));

  MatrixGameSolution<double> s;
  s.method = "multiplicative-weights";
  for (std::size_t t = 1; t <= max_iter; ++t) {
    Eigen::VectorXd w = (logw.array() - logw.maxCoeff()).exp();
    w /= w.sum();
    Eigen::RowVectorXd against = w.transpose() * payoff;
    Eigen::Index j = 0;
    against.minCoeff(&j);
    row_sum += w;
    col_count(j) += 1.0;
    logw += rate * (payoff.col(j).array() - lo).matrix() / span;
    s.iterations = t;
    if (t % 50 == 0 || t == max_iter) {
      s.row.assign(row_sum.data(), row_sum.data() + m);
      s.col.assign(col_count.data(), col_count.data() + n);
      for (auto& x : s.row) x /= static_cast<double>(t);
      for (auto& x : s.col) x /= static_cast<double>(t);
      certify(payoff, s);
      if (s.upper - s.lower <= eps) break;
    }
  }
  s.value = (s.lower + s.upper) / 2;
  return s;
}

}  // namespace patrol
