// Shared scalar/matrix aliases and the error taxonomy.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qreset {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Single-particle density matrix rho_{ab} = <a^dag_a a_b>.
using SPDM = Eigen::MatrixXcd;

// An eigensolver or linear solve failed to meet its residual contract.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (I - D) is singular within tolerance: the map has eigenvalues at 1 and the
// fixed point is non-unique or marginal. Carries the offending eigenvalues.
class singular_map_error : public numerical_error {
 public:
  singular_map_error(const std::string& what, std::vector<Complex> eigenvalues)
      : numerical_error(what), near_unit_eigenvalues(std::move(eigenvalues)) {}
  std::vector<Complex> near_unit_eigenvalues;
};

// Eigenvector matrix too ill-conditioned for closed-form propagation.
class not_diagonalisable_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Singular continuous generator with an inconsistent drive: no steady state.
class no_steady_state_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Request exceeds a hard size limit (e.g. Fock-space dimension).
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qreset
