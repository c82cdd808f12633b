// Brute-force many-body (Fock-space) evolution on small fermionic instances.
// Test support shipped with the library; never used on production paths.

#pragma once

#include "qreset/model.hpp"
#include "qreset/types.hpp"

namespace qreset {

// Amplitudes over the occupation-number basis. Basis index b encodes the
// occupations little-endian in the site index: bit a of b is n_a.
struct FockState {
  int n_sites = 0;
  Vector amplitudes;  // length 2^n_sites, unit norm
};

// Matrix of sum_{ab} M_ab adag_a a_b with fermionic anticommutation signs
// (Jordan-Wigner string over sites below the operator's site). N <= 12.
Matrix fock_hamiltonian(const QuadraticModel& model);

// Two-point functions <adag_a a_b> of a Fock state.
Matrix fock_two_point(const FockState& state);

// exp(-i H t) |state> through full Hermitian diagonalisation.
FockState fock_evolve(const FockState& state, const QuadraticModel& model,
                      double t);

// Product state with the listed sites occupied.
FockState fock_product_state(int n_sites, const std::vector<int>& occupied);

}  // namespace qreset
