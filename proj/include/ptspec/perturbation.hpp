#pragma once

#include "ptspec/hamiltonian.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ptspec {

// Rayleigh-Schrodinger series for level n of omega(p^2 + x^2 - g(ix)^k) in
// intermediate normalization (the component on the unperturbed state is one at
// every order).  The adiabatically switched time-ordered series produces the
// same energy shifts order by order, so these coefficients double as the
// adiabatic prediction.
struct PerturbationSeries {
  OscillatorSpec spec;
  int level = 0;
  int order = 0;
  std::vector<double> energy_coeffs;            // E = sum_j energy_coeffs[j] g^j
  std::vector<Eigen::VectorXcd> state_orders;   // order-j correction on the basis window
  Eigen::Index window = 0;

  double energy_at(double g) const;
};

// Requires odd k (real-shift regime), n <= 10, order <= 6.
PerturbationSeries rs_series(const OscillatorSpec& spec, int n, int order);

// Second-order adiabatic diagonal amplitude for switching rate eps:
// T2(eps) = -g^2 sum_m V_nm V_mn / (2 eps (eps - i Delta_nm)), Delta_nm = 2 omega (n - m).
// As eps -> 0 the amplitude splits into pole_coeff/eps + finite_part + O(eps);
// the pole carries the second-order energy shift, pole_coeff = -i g^2 E2 / 2.
struct AdiabaticAmplitude2 {
  OscillatorSpec spec;
  int level = 0;
  double epsilon = 0.0;
  std::complex<double> value;         // T2(eps)
  std::complex<double> pole_coeff;    // coefficient of 1/eps; purely imaginary
  std::complex<double> finite_part;   // eps-independent remainder
};

AdiabaticAmplitude2 adiabatic_diagonal_order2(const OscillatorSpec& spec, int n, double eps);

// Indefinite norm of the perturbative state, order by order in g.  The constant
// term is (-1)^n; odd orders vanish.
struct NormCheck {
  OscillatorSpec spec;
  int level = 0;
  std::vector<double> eta_norm_series;   // coefficient of g^j
  int sign_prediction = 0;               // (-1)^level

  double series_at(double g) const;
};

// Requires odd k, n <= 10, order <= 4.
NormCheck gml_norm_check(const OscillatorSpec& spec, int n, int order);

}  // namespace ptspec
