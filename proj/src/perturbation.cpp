#include "ptspec/perturbation.hpp"

#include "ptspec/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace ptspec {

namespace {

void check_level_and_parity(const OscillatorSpec& spec, int n, int max_level) {
  spec.validate();
  if (spec.k % 2 == 0)
    throw std::invalid_argument("perturbation: series requires odd k");
  if (n < 0 || n > max_level)
    throw std::invalid_argument("perturbation: level out of supported range");
}

// matrix of the coupling operator -omega (i x)^k on a window large enough that
// every state reachable within `orders` applications is represented exactly
Eigen::MatrixXcd coupling_matrix(const OscillatorSpec& spec, Eigen::Index window) {
  const LadderPolynomial ix =
      LadderPolynomial::position(Sector::standard).scaled(ExactScalar::imaginary_unit());
  return -spec.omega * to_matrix<double>(ix.pow(spec.k), window);
}

}  // namespace

double PerturbationSeries::energy_at(double g) const {
  double sum = 0.0;
  double gp = 1.0;
  for (double c : energy_coeffs) {
    sum += c * gp;
    gp *= g;
  }
  return sum;
}

PerturbationSeries rs_series(const OscillatorSpec& spec, int n, int order) {
  check_level_and_parity(spec, n, 10);
  if (order < 0 || order > 6)
    throw std::invalid_argument("rs_series: order must lie in [0, 6]");

  PerturbationSeries out;
  out.spec = spec;
  out.level = n;
  out.order = order;
  out.window = n + order * spec.k + 1;

  const Eigen::MatrixXcd v = coupling_matrix(spec, out.window);

  out.state_orders.assign(static_cast<std::size_t>(order) + 1,
                          Eigen::VectorXcd::Zero(out.window));
  out.state_orders[0](n) = 1.0;
  out.energy_coeffs.assign(static_cast<std::size_t>(order) + 1, 0.0);
  out.energy_coeffs[0] = spec.omega * (2.0 * n + 1.0);

  for (int j = 1; j <= order; ++j) {
    const Eigen::VectorXcd w = v * out.state_orders[static_cast<std::size_t>(j - 1)];
    // projection on the unperturbed state gives the order-j energy; the
    // imaginary part cancels identically for odd k
    out.energy_coeffs[static_cast<std::size_t>(j)] = w(n).real();

    Eigen::VectorXcd& psi = out.state_orders[static_cast<std::size_t>(j)];
    for (Eigen::Index m = 0; m < out.window; ++m) {
      if (m == n) continue;  // intermediate normalization
      std::complex<double> num = -w(m);
      for (int l = 1; l < j; ++l) {
        num += out.energy_coeffs[static_cast<std::size_t>(l)] *
               out.state_orders[static_cast<std::size_t>(j - l)](m);
      }
      const double gap = 2.0 * spec.omega * (static_cast<double>(m) - n);
      psi(m) = num / gap;
    }
  }
  return out;
}

AdiabaticAmplitude2 adiabatic_diagonal_order2(const OscillatorSpec& spec, int n, double eps) {
  check_level_and_parity(spec, n, 10);
  if (!(eps > 0) || !std::isfinite(eps))
    throw std::invalid_argument("adiabatic_diagonal_order2: eps must be positive");

  const Eigen::Index window = n + spec.k + 1;
  const Eigen::MatrixXcd v = coupling_matrix(spec, window);
  const double g2 = spec.g * spec.g;
  const std::complex<double> iu(0.0, 1.0);

  AdiabaticAmplitude2 out;
  out.spec = spec;
  out.level = n;
  out.epsilon = eps;
  for (Eigen::Index m = 0; m < window; ++m) {
    if (m == n) continue;  // diagonal coupling vanishes for odd k
    const std::complex<double> prod = v(n, m) * v(m, n);
    if (prod == 0.0) continue;
    const double delta = 2.0 * spec.omega * (static_cast<double>(n) - static_cast<double>(m));
    out.value += -g2 * prod / (2.0 * eps * (eps - iu * delta));
    out.pole_coeff += -g2 * prod * iu / (2.0 * delta);
    out.finite_part += -g2 * prod / (2.0 * delta * delta);
  }
  return out;
}

double NormCheck::series_at(double g) const {
  double sum = 0.0;
  double gp = 1.0;
  for (double c : eta_norm_series) {
    sum += c * gp;
    gp *= g;
  }
  return sum;
}

NormCheck gml_norm_check(const OscillatorSpec& spec, int n, int order) {
  check_level_and_parity(spec, n, 10);
  if (order < 0 || order > 4)
    throw std::invalid_argument("gml_norm_check: order must lie in [0, 4]");

  const PerturbationSeries series = rs_series(spec, n, order);

  NormCheck out;
  out.spec = spec;
  out.level = n;
  out.sign_prediction = (n % 2 == 0) ? 1 : -1;
  out.eta_norm_series.assign(static_cast<std::size_t>(order) + 1, 0.0);
  out.eta_norm_series[0] = out.sign_prediction;
  // order j collects <psi_l | eta | psi_(j-l)>; the l = 0 and l = j terms vanish
  // by intermediate normalization
  for (int j = 1; j <= order; ++j) {
    std::complex<double> coeff = 0.0;
    for (int l = 1; l < j; ++l) {
      coeff += eta_inner(series.state_orders[static_cast<std::size_t>(l)],
                         series.state_orders[static_cast<std::size_t>(j - l)]);
    }
    out.eta_norm_series[static_cast<std::size_t>(j)] = coeff.real();
  }
  return out;
}

}  // namespace ptspec
