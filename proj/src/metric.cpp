#include "ptspec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ptspec {

std::complex<double> eta_inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) throw std::invalid_argument("eta_inner: length mismatch");
  std::complex<double> sum = 0.0;
  for (Eigen::Index n = 0; n < u.size(); ++n) {
    const std::complex<double> term = std::conj(u(n)) * v(n);
    sum += (n % 2 == 0) ? term : -term;
  }
  return sum;
}

std::vector<EigenpairWithNorm> eigen_norms(const OscillatorSpec& spec, int n_levels,
                                           Eigen::Index dim, int continuation_steps) {
  spec.validate();
  if (spec.k % 2 == 0)
    throw std::invalid_argument("eigen_norms: continuation labeling requires odd k");
  if (n_levels < 1) throw std::invalid_argument("eigen_norms: n_levels must be at least 1");
  if (dim < 3 * n_levels)
    throw std::invalid_argument("eigen_norms: dimension too small for the requested levels");
  if (continuation_steps < 1)
    throw std::invalid_argument("eigen_norms: need at least one continuation step");

  std::vector<EigenpairWithNorm> out(static_cast<std::size_t>(n_levels));
  // at g = 0 level n is the basis state with value omega(2n + 1)
  for (int n = 0; n < n_levels; ++n) {
    auto& lvl = out[static_cast<std::size_t>(n)];
    lvl.unperturbed_index = n;
    lvl.pair.value = spec.omega * (2.0 * n + 1.0);
    lvl.pair.vector = Eigen::VectorXcd::Zero(dim);
    lvl.pair.vector(n) = 1.0;
  }

  if (spec.g != 0.0) {
    for (int step = 1; step <= continuation_steps; ++step) {
      OscillatorSpec stage = spec;
      stage.g = spec.g * step / continuation_steps;
      const auto h = build_pt_hamiltonian(stage, dim);
      auto pairs = eigen_decompose(h.entries);
      pairs.resize(static_cast<std::size_t>(dim / 3));

      std::vector<bool> claimed(pairs.size(), false);
      for (auto& lvl : out) {
        std::size_t best = pairs.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pairs.size(); ++j) {
          if (claimed[j]) continue;
          const double dist = std::abs(pairs[j].value - lvl.pair.value);
          if (dist < best_dist) {
            best_dist = dist;
            best = j;
          }
        }
        claimed[best] = true;
        lvl.pair = pairs[best];
      }
    }
  }

  for (auto& lvl : out) {
    const Eigen::VectorXcd v = lvl.pair.vector.normalized();
    lvl.eta_norm = eta_inner(v, v).real();
    lvl.near_zero = std::abs(lvl.eta_norm) < 1e-6;
    lvl.sign = (std::abs(lvl.eta_norm) < 1e-10) ? 0 : (lvl.eta_norm > 0 ? 1 : -1);
  }
  return out;
}

double intermediate_normalized_norm(const EigenpairWithNorm& level) {
  if (level.unperturbed_index < 0 || level.unperturbed_index >= level.pair.vector.size())
    throw std::invalid_argument("intermediate_normalized_norm: missing unperturbed index");
  const Eigen::VectorXcd v = level.pair.vector.normalized();
  const double weight = std::norm(v(level.unperturbed_index));
  if (weight == 0.0)
    throw std::runtime_error("intermediate_normalized_norm: vanishing basis component");
  return eta_inner(v, v).real() / weight;
}

OrthogonalityReport eta_orthogonality_defect(const std::vector<EigenpairWithNorm>& levels,
                                             double separation) {
  OrthogonalityReport report;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      if (std::abs(levels[i].pair.value - levels[j].pair.value) <= separation) {
        report.skipped.emplace_back(static_cast<int>(i), static_cast<int>(j));
        continue;
      }
      const double overlap = std::abs(eta_inner(levels[i].pair.vector.normalized(),
                                                levels[j].pair.vector.normalized()));
      report.defect = std::max(report.defect, overlap);
      ++report.pairs_checked;
    }
  }
  return report;
}

std::vector<Eigen::VectorXcd> physical_projector(const Eigen::MatrixXcd& m,
                                                 const std::vector<EigenpairWithNorm>& levels) {
  constexpr double residual_tol = 1e-10;
  for (const auto& lvl : levels) {
    if (lvl.sign == 0)
      throw std::runtime_error("physical_projector: undefined norm sign at level " +
                               std::to_string(lvl.unperturbed_index));
  }
  std::vector<Eigen::VectorXcd> basis;
  for (const auto& lvl : levels) {
    if (lvl.sign <= 0) continue;
    const Eigen::VectorXcd v = lvl.pair.vector.normalized();
    if (v.size() != m.rows())
      throw std::invalid_argument("physical_projector: vector and matrix dimensions differ");
    const double residual = (m * v - lvl.pair.value * v).norm();
    if (residual > residual_tol * std::max(1.0, m.norm()))
      throw std::runtime_error("physical_projector: closure residual too large at level " +
                               std::to_string(lvl.unperturbed_index));
    basis.push_back(v);
  }
  return basis;
}

}  // namespace ptspec
