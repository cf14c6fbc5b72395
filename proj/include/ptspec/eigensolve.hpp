#pragma once

#include "ptspec/hamiltonian.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ptspec {

struct Eigenpair {
  std::complex<double> value;
  Eigen::VectorXcd vector;   // unit Euclidean norm
  double residual = 0.0;     // |M v - lambda v| / |v|
  bool defective = false;    // nearly repeated value with degenerate eigenvectors
};

// Dense non-Hermitian eigendecomposition, sorted by (Re, Im) ascending.
// Throws std::invalid_argument on non-square or non-finite input and
// std::runtime_error when the solver fails to converge.
std::vector<Eigenpair> eigen_decompose(const Eigen::MatrixXcd& m);

struct ConvergedLevel {
  int index = 0;                  // position in the (Re, Im)-sorted spectrum
  std::complex<double> value;
  bool converged = false;
  std::vector<int> dims_used;     // dimensions at which the level was tracked
  std::vector<double> deltas;     // |value change| between successive dimensions
};

struct Spectrum {
  OscillatorSpec spec;
  std::vector<ConvergedLevel> levels;
  int final_dim = 0;
};

// {32, 48, 64, 96, 128, 192, 256}
std::vector<int> default_dimension_ladder();

// Diagonalizes the PT matrix along an increasing dimension ladder, tracking the
// lowest levels (only the lowest floor(N/3) levels at dimension N are eligible;
// higher ones are truncation artifacts).  Levels are matched across dimensions
// by nearest value, one-to-one, lowest index first.  A level is converged when
// the change between the last two dimensions drops below tol; non-convergence
// yields converged = false flags rather than an exception.
Spectrum converged_spectrum(const OscillatorSpec& spec, int n_levels, double tol,
                            const std::vector<int>& dims = default_dimension_ladder());

struct RealityReport {
  struct PerLevel {
    int index = 0;
    double re = 0.0;
    double im = 0.0;
  };
  double max_imag = 0.0;   // over converged levels
  std::vector<PerLevel> per_level;
};

// Throws std::runtime_error when the spectrum holds no converged level.
RealityReport reality_report(const Spectrum& spectrum);

}  // namespace ptspec
