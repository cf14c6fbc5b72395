#pragma once

#include "ptspec/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace ptspec {

// Which construction a spec denotes: the manifestly PT-invariant form
// omega(p^2 + x^2 - g(ix)^k), or the wrong-sign Hermitian form quantized with
// the indefinite metric and expressed through the tilde generators.
enum class Formulation { pt, wrong_sign_tilde };

struct OscillatorSpec {
  double omega = 1.0;
  double g = 0.0;
  int k = 3;
  Formulation formulation = Formulation::pt;

  void validate() const {
    if (!(omega > 0) || !std::isfinite(omega))
      throw std::invalid_argument("OscillatorSpec: omega must be positive and finite");
    if (!std::isfinite(g)) throw std::invalid_argument("OscillatorSpec: g must be finite");
    if (k < 1) throw std::invalid_argument("OscillatorSpec: k must be at least 1");
  }
};

template <class Scalar = double>
struct HamiltonianMatrix {
  using Matrix = typename TruncatedOperator<Scalar>::Matrix;

  OscillatorSpec spec;
  Matrix entries;
  Scalar pseudo_hermitian_defect = 0;

  Eigen::Index dim() const { return entries.rows(); }
};

// max |M^dag - eta M eta| entrywise; zero characterizes eta-pseudo-Hermiticity.
template <class Scalar>
Scalar pseudo_hermiticity_defect(const typename TruncatedOperator<Scalar>::Matrix& m) {
  Eigen::Vector<Scalar, Eigen::Dynamic> signs(m.rows());
  for (Eigen::Index j = 0; j < m.rows(); ++j) signs(j) = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
  return (m.adjoint() - signs.asDiagonal() * m * signs.asDiagonal()).cwiseAbs().maxCoeff();
}

template <class Scalar>
Scalar hermiticity_defect(const typename TruncatedOperator<Scalar>::Matrix& m) {
  return (m.adjoint() - m).cwiseAbs().maxCoeff();
}

namespace detail {

// omega((p^2 + x^2) - g (i x)^k) assembled from normal-ordered powers in the
// given sector.  The two sectors share coefficient maps and matrix realization,
// so the assembled matrices agree entry for entry.
template <class Scalar>
HamiltonianMatrix<Scalar> assemble_oscillator(const OscillatorSpec& spec, Eigen::Index n,
                                              Sector sector) {
  spec.validate();
  check_dim(n, "hamiltonian");
  const LadderPolynomial x = LadderPolynomial::position(sector);
  const LadderPolynomial p = LadderPolynomial::momentum(sector);
  const LadderPolynomial quad = p * p + x * x;
  const LadderPolynomial inter = x.scaled(ExactScalar::imaginary_unit()).pow(spec.k);

  HamiltonianMatrix<Scalar> h;
  h.spec = spec;
  h.entries = to_matrix<Scalar>(quad, n) - Scalar(spec.g) * to_matrix<Scalar>(inter, n);
  h.entries *= Scalar(spec.omega);
  h.pseudo_hermitian_defect = pseudo_hermiticity_defect<Scalar>(h.entries);
  return h;
}

}  // namespace detail

// Truncated matrix of omega(p^2 + x^2 - g(ix)^k) on the standard number basis.
template <class Scalar = double>
HamiltonianMatrix<Scalar> build_pt_hamiltonian(const OscillatorSpec& spec, Eigen::Index n) {
  OscillatorSpec s = spec;
  s.formulation = Formulation::pt;
  return detail::assemble_oscillator<Scalar>(s, n, Sector::standard);
}

// The wrong-sign oscillator omega(ptilde^2 + xtilde^2 - g(i xtilde)^k) expressed
// through the tilde generators b, bbar and realized on the same basis.  By the
// generator replacement the construction reproduces the PT matrix entry for entry.
template <class Scalar = double>
HamiltonianMatrix<Scalar> build_wrong_sign_hamiltonian(const OscillatorSpec& spec, Eigen::Index n) {
  OscillatorSpec s = spec;
  s.formulation = Formulation::wrong_sign_tilde;
  return detail::assemble_oscillator<Scalar>(s, n, Sector::tilde);
}

}  // namespace ptspec
