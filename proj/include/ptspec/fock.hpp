#pragma once

#include "ptspec/ladder.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace ptspec {

enum class OperatorKind {
  annihilation,
  creation,
  position,
  momentum,
  metric,
  number,
  composite
};

// Dense truncated operator on the N-dimensional number basis.
template <class Scalar = double>
struct TruncatedOperator {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix entries;
  OperatorKind kind = OperatorKind::composite;
  Sector sector = Sector::standard;

  Eigen::Index dim() const { return entries.rows(); }
};

// The number basis is orthonormal: |n> = (adag)^n / sqrt(n!) |0>.  A variant
// normalized by 1/n! instead rescales state components by sqrt(n!) but leaves
// spectra and metric signs unchanged; it is not offered here.
struct BasisConvention {
  std::string normalization;
  std::string note;
};

inline const BasisConvention& basis_convention() {
  static const BasisConvention conv{
      "orthonormal",
      "number basis |n> = (adag)^n/sqrt(n!)|0>; component n of a vector is the "
      "coefficient of the unit-norm state |n>"};
  return conv;
}

namespace detail {
inline void check_dim(Eigen::Index n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": dimension must be at least 1");
}
}  // namespace detail

// Truncated annihilation and creation matrices: a|n> = sqrt(n)|n-1>.
template <class Scalar = double>
std::pair<TruncatedOperator<Scalar>, TruncatedOperator<Scalar>> ladder_matrices(Eigen::Index n) {
  detail::check_dim(n, "ladder_matrices");
  TruncatedOperator<Scalar> low{to_matrix<Scalar>(LadderPolynomial::lowering(Sector::standard), n),
                                OperatorKind::annihilation};
  TruncatedOperator<Scalar> raise{to_matrix<Scalar>(LadderPolynomial::raising(Sector::standard), n),
                                  OperatorKind::creation};
  return {std::move(low), std::move(raise)};
}

// x = (a + adag)/sqrt2 (real symmetric) and p = -i(a - adag)/sqrt2
// (pure imaginary, Hermitian).
template <class Scalar = double>
std::pair<TruncatedOperator<Scalar>, TruncatedOperator<Scalar>> canonical_matrices(Eigen::Index n) {
  detail::check_dim(n, "canonical_matrices");
  TruncatedOperator<Scalar> x{to_matrix<Scalar>(LadderPolynomial::position(Sector::standard), n),
                              OperatorKind::position};
  TruncatedOperator<Scalar> p{to_matrix<Scalar>(LadderPolynomial::momentum(Sector::standard), n),
                              OperatorKind::momentum};
  return {std::move(x), std::move(p)};
}

// Indefinite metric eta = diag((-1)^n); involutive and diagonal at any truncation.
template <class Scalar = double>
TruncatedOperator<Scalar> metric_matrix(Eigen::Index n) {
  detail::check_dim(n, "metric_matrix");
  TruncatedOperator<Scalar> eta;
  eta.kind = OperatorKind::metric;
  eta.entries = TruncatedOperator<Scalar>::Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) eta.entries(j, j) = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
  return eta;
}

// diag(0..n-1) in either sector: adag a, or bbar b for the tilde oscillator.
template <class Scalar = double>
TruncatedOperator<Scalar> number_matrix(Eigen::Index n, Sector sector = Sector::standard) {
  detail::check_dim(n, "number_matrix");
  TruncatedOperator<Scalar> num;
  num.kind = OperatorKind::number;
  num.sector = sector;
  num.entries = to_matrix<Scalar>(LadderPolynomial::number_op(sector), n);
  return num;
}

// k-th power of x or p with exact band entries, free of truncation-edge
// corruption: the power is taken on the window enlarged by k and cropped back
// to N x N, realized through the normal-ordered form of the power.
template <class Scalar = double>
TruncatedOperator<Scalar> exact_power(OperatorKind base, int k, Eigen::Index n) {
  detail::check_dim(n, "exact_power");
  if (k < 1) throw std::invalid_argument("exact_power: exponent must be at least 1");
  if (base != OperatorKind::position && base != OperatorKind::momentum)
    throw std::invalid_argument("exact_power: base must be position or momentum");
  const LadderPolynomial gen = (base == OperatorKind::position)
                                   ? LadderPolynomial::position(Sector::standard)
                                   : LadderPolynomial::momentum(Sector::standard);
  TruncatedOperator<Scalar> out;
  out.kind = (k == 1) ? base : OperatorKind::composite;
  out.entries = to_matrix<Scalar>(gen.pow(k), n);
  return out;
}

}  // namespace ptspec
