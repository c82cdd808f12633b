// Quadratic lattice Hamiltonians H = sum_{ab} a^dag_a M_{ab} a_b, their
// spectra, and the exact single-particle evolution operator.

#pragma once

#include "qreset/types.hpp"

namespace qreset {

enum class Statistics { Fermionic, Bosonic };

// Validated Hermitian coupling matrix. Units: energies in J, hbar = 1,
// times in hbar/J, inverse temperatures in 1/J.
struct QuadraticModel {
  int n_sites = 0;
  Matrix coupling;  // N x N, Hermitian
  Statistics statistics = Statistics::Fermionic;
};

// Eigendecomposition of the coupling matrix.
// modes is unitary with row n holding eigenvector n: sum_b M_{ab} psi_{nb}
// = energies_n psi_{na}. Energies ascend; degenerate blocks keep the order
// and orthonormal basis the eigensolver produced.
struct Spectra {
  RealVector energies;  // length N, ascending
  Matrix modes;         // N x N, psi_{n,a} at (n, a)

  int size() const { return static_cast<int>(energies.size()); }
  // Eigenvectors as columns (the transpose of modes), handy for transforms.
  Matrix mode_columns() const { return modes.transpose(); }
  double spectral_radius() const {
    return energies.size() == 0
               ? 0.0
               : std::max(std::abs(energies(0)),
                          std::abs(energies(energies.size() - 1)));
  }
};

// Site labels split into system and environment. Both nonempty, disjoint,
// covering 0..N-1.
struct Partition {
  std::vector<int> system;
  std::vector<int> environment;
};

// Periodic hopping ring with amplitude -J on every bond. N >= 3 so that no
// bond is counted twice. Fermionic.
QuadraticModel build_ring(int n_sites, double hopping);

// Wrap an arbitrary Hermitian matrix; rejects non-Hermitian input beyond
// 1e-12 relative tolerance.
QuadraticModel build_custom(const Matrix& coupling, Statistics statistics);

Spectra diagonalize(const QuadraticModel& model);

// U_{ab}(t) = sum_n exp(-i e_n t) psi_{na} psi*_{nb}, i.e. exp(-i M t).
Matrix evolution_operator(const Spectra& spectra, double t);

// Build a partition from the system index list; the environment is the
// ascending complement. Requires both parts nonempty.
Partition make_partition(int n_sites, std::vector<int> system_sites);

bool is_hermitian(const Matrix& a, double tol);

}  // namespace qreset
