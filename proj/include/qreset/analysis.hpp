// Physics diagnostics: the pseudo-thermalisation metric, thermality of
// steady states, effective temperatures and the qubit-initialisation
// condition.

#pragma once

#include "qreset/model.hpp"
#include "qreset/reset.hpp"
#include "qreset/types.hpp"

namespace qreset {

struct ThermalityReport {
  double diag_sum = 0.0;     // sum_a |rho~_aa| in the system eigenbasis
  double offdiag_sum = 0.0;  // sum_{a != b} |rho~_ab|
  // Effective inverse temperature per mode, beta_a = ln(1/rho~_aa - 1)/E_a.
  // NaN marks modes where the inversion is undefined (occupation outside
  // (0,1) or |E_a| < 1e-12).
  RealVector betas;
};

// Maximum over system tuples (a,b,g,d) of the initial-state retention kernel
// |sum_E P_E(b,a) P_E(g,d) / dim(E)|, where P_E projects onto the eigenspaces
// grouped within degeneracy_tol. With a non-degenerate spectrum this is
// exactly max |sum_n psi*_na psi_nb psi_ng psi*_nd|; the projector form keeps
// the value independent of the basis chosen inside degenerate blocks.
// degeneracy_tol < 0 selects 1e-9 * spectral radius.
double pseudo_thermal_metric(const Spectra& spectra,
                             const std::vector<int>& system,
                             double degeneracy_tol = -1.0);

// rho_system is the system block of the steady state in the site basis;
// system_spectra diagonalises the standalone system Hamiltonian M|SxS.
ThermalityReport thermality_report(const Matrix& rho_system,
                                   const Spectra& system_spectra);

// All pairs (env site, system site) with |n_e M_{s,e}| > 1e-12, in the basis
// where the environment reset state is diagonal. An empty list is equivalent
// to the empty system being a fixed point of the continuous EC dynamics
// (drive vector identically zero).
std::vector<std::pair<int, int>> qubit_init_check(
    const QuadraticModel& model, const Partition& partition,
    const RealVector& env_occupations);

struct InfTempCheck {
  bool ok = false;
  double residual = 0.0;
};

// Residual |D V + C - V|_inf at the infinite-temperature vector
// V_i = delta_{a_i b_i}/2; ok iff <= 1e-10. Meaningful for protocols that
// reset R to the infinite-temperature values.
InfTempCheck verify_infinite_temperature(const StroboscopicMap& map);

}  // namespace qreset
