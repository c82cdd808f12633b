#include "qreset/state.hpp"

#include <cmath>

namespace qreset {

SPDM from_occupations(const RealVector& occupations) {
  for (Eigen::Index i = 0; i < occupations.size(); ++i) {
    const double n = occupations(i);
    if (!(n >= 0.0 && n <= 1.0))
      throw std::invalid_argument("from_occupations: occupation outside [0,1]");
  }
  return occupations.cast<Complex>().asDiagonal();
}

double fermi_occupation(double energy, double beta, double zero_tol) {
  if (std::isinf(beta)) {
    if (std::abs(energy) <= zero_tol) return 0.5;
    return energy < 0.0 ? 1.0 : 0.0;
  }
  return 1.0 / (1.0 + std::exp(beta * energy));
}

SPDM thermal_spdm(const Spectra& spectra, double beta) {
  const int n = spectra.size();
  const double zero_tol = 1e-12 * std::max(1.0, spectra.spectral_radius());
  Vector occ(n);
  for (int k = 0; k < n; ++k)
    occ(k) = fermi_occupation(spectra.energies(k), beta, zero_tol);
  // rho_{ab} = sum_n f_n psi*_{na} psi_{nb}
  return spectra.modes.adjoint() * occ.asDiagonal() * spectra.modes;
}

SPDM evolve(const SPDM& rho, const Matrix& u) {
  if (rho.rows() != u.rows() || rho.cols() != u.cols() ||
      rho.rows() != rho.cols())
    throw std::invalid_argument("evolve: dimension mismatch");
  return u.conjugate() * rho * u.transpose();
}

SPDM to_eigenbasis(const SPDM& rho, const Spectra& spectra) {
  if (rho.rows() != spectra.size() || rho.cols() != spectra.size())
    throw std::invalid_argument("to_eigenbasis: dimension mismatch");
  return spectra.modes * rho * spectra.modes.adjoint();
}

SPDM from_eigenbasis(const SPDM& rho_tilde, const Spectra& spectra) {
  if (rho_tilde.rows() != spectra.size() || rho_tilde.cols() != spectra.size())
    throw std::invalid_argument("from_eigenbasis: dimension mismatch");
  return spectra.modes.adjoint() * rho_tilde * spectra.modes;
}

SPDM diagonal_ensemble(const SPDM& rho0, const Spectra& spectra,
                       double degeneracy_tol) {
  SPDM tilde = to_eigenbasis(rho0, spectra);
  const int n = spectra.size();
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      if (std::abs(spectra.energies(row) - spectra.energies(col)) >
          degeneracy_tol)
        tilde(row, col) = Complex(0.0, 0.0);
  return from_eigenbasis(tilde, spectra);
}

SPDM diagonal_ensemble(const SPDM& rho0, const Spectra& spectra) {
  return diagonal_ensemble(rho0, spectra, 1e-9 * spectra.spectral_radius());
}

Matrix restrict_to(const Matrix& rho, const std::vector<int>& indices) {
  Matrix block(indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) {
      if (indices[r] < 0 || indices[r] >= rho.rows() || indices[c] < 0 ||
          indices[c] >= rho.cols())
        throw std::invalid_argument("restrict_to: index out of range");
      block(r, c) = rho(indices[r], indices[c]);
    }
  return block;
}

}  // namespace qreset
