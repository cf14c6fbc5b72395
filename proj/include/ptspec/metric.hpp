#pragma once

#include "ptspec/eigensolve.hpp"

#include <complex>
#include <vector>

namespace ptspec {

// Indefinite inner product <u|eta|v> = sum_n (-1)^n conj(u_n) v_n.
// Conjugate linear in the first argument.  Throws on length mismatch.
std::complex<double> eta_inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct EigenpairWithNorm {
  Eigenpair pair;
  double eta_norm = 0.0;        // <v|eta|v> for the unit-norm vector
  int sign = 0;                 // sign of eta_norm; 0 when undefined
  int unperturbed_index = -1;   // basis index the level connects to at g = 0
  bool near_zero = false;       // |eta_norm| below the 1e-6 reliability floor
};

// Diagonalizes at fixed dimension and attaches indefinite norms.  Levels are
// labeled by continuation from g = 0 in steps of g/8, matching values at each
// step; the unperturbed index fixes the expected sign (-1)^index.  Near-zero
// norms are returned flagged, never dropped.  Requires odd k.
std::vector<EigenpairWithNorm> eigen_norms(const OscillatorSpec& spec, int n_levels,
                                           Eigen::Index dim, int continuation_steps = 8);

// eta_norm rescaled to the normalization in which the component on the
// unperturbed basis state equals one.
double intermediate_normalized_norm(const EigenpairWithNorm& level);

struct OrthogonalityReport {
  double defect = 0.0;                         // max |<v_m|eta|v_n>| over checked pairs
  int pairs_checked = 0;
  std::vector<std::pair<int, int>> skipped;    // pairs closer than the separation floor
};

// Pairwise eta-orthogonality of eigenvectors from one matrix; pairs of
// eigenvalues closer than `separation` are reported as skipped.
OrthogonalityReport eta_orthogonality_defect(const std::vector<EigenpairWithNorm>& levels,
                                             double separation = 1e-6);

// Basis of the positive-norm subspace: the eigenvectors with eta_norm > 0.
// Refuses (std::runtime_error naming the level) when any sign is undefined, and
// verifies that the matrix maps each returned vector onto its eigenvalue within
// residual 1e-10, so the span is invariant.
std::vector<Eigen::VectorXcd> physical_projector(const Eigen::MatrixXcd& m,
                                                 const std::vector<EigenpairWithNorm>& levels);

}  // namespace ptspec
