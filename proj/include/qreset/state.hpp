// Single-particle density matrices: construction, basis changes, unitary
// stepping and infinite-time averaging. All functions are pure.

#pragma once

#include "qreset/model.hpp"
#include "qreset/types.hpp"

namespace qreset {

// rho = diag(n) with every occupation in [0, 1].
SPDM from_occupations(const RealVector& occupations);

// Fermi-Dirac state of the diagonalised Hamiltonian at inverse temperature
// beta (1/J, chemical potential 0), expressed in the site basis. beta may be
// +infinity; zero-energy modes then get occupation 1/2.
SPDM thermal_spdm(const Spectra& spectra, double beta);

// One unitary interval: rho'_{ab} = sum U*_{aa'} U_{bb'} rho_{a'b'}.
SPDM evolve(const SPDM& rho, const Matrix& u);

// rho~_{nm} = sum psi_{na} psi*_{mb} rho_{ab} and its inverse.
SPDM to_eigenbasis(const SPDM& rho, const Spectra& spectra);
SPDM from_eigenbasis(const SPDM& rho_tilde, const Spectra& spectra);

// Infinite-time average: in the eigenbasis, zero every entry whose energy
// mismatch exceeds degeneracy_tol, keeping coherences inside degenerate
// blocks. Overload picks tol = 1e-9 * spectral radius.
SPDM diagonal_ensemble(const SPDM& rho0, const Spectra& spectra,
                       double degeneracy_tol);
SPDM diagonal_ensemble(const SPDM& rho0, const Spectra& spectra);

// Principal submatrix on the given site indices.
Matrix restrict_to(const Matrix& rho, const std::vector<int>& indices);

// Fermi factor 1/(exp(beta e) + 1); handles beta = +inf with the
// zero-energy-to-1/2 convention (|e| <= zero_tol counts as zero).
double fermi_occupation(double energy, double beta, double zero_tol = 0.0);

}  // namespace qreset
