#include "ptspec/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ptspec {

namespace {

bool value_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Two eigenpairs are a defective (or numerically defective) pair when their
// values nearly coincide and their vectors fail to span a two-dimensional space.
void flag_defective_pairs(std::vector<Eigenpair>& pairs) {
  constexpr double value_tol = 1e-8;
  constexpr double span_tol = 1e-6;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (std::abs(pairs[i].value - pairs[j].value) >= value_tol) continue;
      Eigen::MatrixXcd cols(pairs[i].vector.size(), 2);
      cols.col(0) = pairs[i].vector.normalized();
      cols.col(1) = pairs[j].vector.normalized();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
      if (svd.singularValues().minCoeff() < span_tol) {
        pairs[i].defective = true;
        pairs[j].defective = true;
      }
    }
  }
}

}  // namespace

std::vector<Eigenpair> eigen_decompose(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigen_decompose: matrix must be square");
  if (m.rows() < 1) throw std::invalid_argument("eigen_decompose: matrix must be non-empty");
  if (!m.allFinite()) throw std::invalid_argument("eigen_decompose: matrix has non-finite entries");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_decompose: solver failed to converge at dimension " +
                             std::to_string(m.rows()));

  std::vector<Eigenpair> pairs(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    Eigenpair& p = pairs[static_cast<std::size_t>(j)];
    p.value = solver.eigenvalues()(j);
    p.vector = solver.eigenvectors().col(j);
    const double vnorm = p.vector.norm();
    p.residual = (m * p.vector - p.value * p.vector).norm() / vnorm;
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) { return value_less(a.value, b.value); });
  flag_defective_pairs(pairs);
  return pairs;
}

std::vector<int> default_dimension_ladder() { return {32, 48, 64, 96, 128, 192, 256}; }

Spectrum converged_spectrum(const OscillatorSpec& spec, int n_levels, double tol,
                            const std::vector<int>& dims) {
  spec.validate();
  if (n_levels < 1) throw std::invalid_argument("converged_spectrum: n_levels must be at least 1");
  if (!(tol > 0)) throw std::invalid_argument("converged_spectrum: tol must be positive");
  if (dims.empty()) throw std::invalid_argument("converged_spectrum: dimension ladder is empty");

  std::vector<int> ladder = dims;
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  for (int n : ladder) {
    if (n < 1 || n > 512)
      throw std::invalid_argument("converged_spectrum: dimensions must lie in [1, 512]");
  }
  // drop dimensions whose eligible window (lowest floor(N/3) levels) is too small
  std::vector<int> usable;
  for (int n : ladder)
    if (n / 3 >= n_levels) usable.push_back(n);
  if (usable.empty())
    throw std::invalid_argument(
        "converged_spectrum: no ladder dimension can track the requested level count");

  Spectrum out;
  out.spec = spec;
  out.levels.resize(static_cast<std::size_t>(n_levels));

  for (int dim : usable) {
    const auto h = build_pt_hamiltonian(spec, dim);
    auto pairs = eigen_decompose(h.entries);
    pairs.resize(static_cast<std::size_t>(dim / 3));  // eligible window, already sorted

    if (out.levels[0].dims_used.empty()) {
      for (int j = 0; j < n_levels; ++j) {
        auto& lvl = out.levels[static_cast<std::size_t>(j)];
        lvl.index = j;
        lvl.value = pairs[static_cast<std::size_t>(j)].value;
        lvl.dims_used.push_back(dim);
      }
    } else {
      // nearest-value one-to-one matching, lowest tracked index first
      std::vector<bool> claimed(pairs.size(), false);
      for (auto& lvl : out.levels) {
        std::size_t best = pairs.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pairs.size(); ++j) {
          if (claimed[j]) continue;
          const double dist = std::abs(pairs[j].value - lvl.value);
          if (dist < best_dist) {
            best_dist = dist;
            best = j;
          }
        }
        claimed[best] = true;
        lvl.deltas.push_back(best_dist);
        lvl.value = pairs[best].value;
        lvl.dims_used.push_back(dim);
      }
    }
    out.final_dim = dim;

    bool all_converged = true;
    for (auto& lvl : out.levels) {
      lvl.converged = !lvl.deltas.empty() && lvl.deltas.back() < tol;
      all_converged = all_converged && lvl.converged;
    }
    if (all_converged) break;
  }

  std::sort(out.levels.begin(), out.levels.end(),
            [](const ConvergedLevel& a, const ConvergedLevel& b) {
              return value_less(a.value, b.value);
            });
  for (std::size_t j = 0; j < out.levels.size(); ++j) out.levels[j].index = static_cast<int>(j);
  return out;
}

RealityReport reality_report(const Spectrum& spectrum) {
  RealityReport report;
  bool any = false;
  for (const auto& lvl : spectrum.levels) {
    if (!lvl.converged) continue;
    any = true;
    report.per_level.push_back({lvl.index, lvl.value.real(), lvl.value.imag()});
    report.max_imag = std::max(report.max_imag, std::abs(lvl.value.imag()));
  }
  if (!any) throw std::runtime_error("reality_report: spectrum holds no converged level");
  return report;
}

}  // namespace ptspec
