// Reset protocols and the stroboscopic affine map V -> D V + C.
//
// A protocol names the set R of density-matrix entries that are overwritten
// after every unitary interval and the values they are pinned to. The two
// canonical modes: repeated interactions (everything except the
// system-system block is reset, cross correlations zeroed) and evolving
// correlations (only the environment-environment block is reset).

#pragma once

#include "qreset/kernels.hpp"
#include "qreset/model.hpp"
#include "qreset/state.hpp"
#include "qreset/types.hpp"

namespace qreset {

enum class ResetMode { RepeatedInteractions, EvolvingCorrelations, Custom };

struct ResetProtocol {
  int n_sites = 0;
  double period = 0.0;  // tau in hbar/J; > 0 for the discrete map
  // Dense views of R: mask(a,b) true iff (a,b) is reset, values holding the
  // pinned entries (zero outside the mask).
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  Matrix values;

  // Row-major list of pairs in R and their values, aligned.
  PairList reset_pairs() const;
  Vector reset_values() const;
  // Row-major enumeration of the evolving pairs (the complement of R);
  // D, C and every packed vector follow this order.
  PairList evolving_pairs() const;
};

// The reset index set for a canonical mode, as a row-major pair list.
PairList reset_set(int n_sites, const Partition& partition, ResetMode mode);

// Values pinned by a thermal reset: the environment block carries the Gibbs
// state of the decoupled environment Hamiltonian M|ExE at inverse
// temperature beta; repeated interactions additionally pin the
// system-environment blocks to zero.
Matrix thermal_reset_values(const QuadraticModel& model,
                            const Partition& partition, ResetMode mode,
                            double beta);

// Assemble a thermal protocol for RI or EC mode.
ResetProtocol make_thermal_protocol(const QuadraticModel& model,
                                    const Partition& partition, ResetMode mode,
                                    double beta, double tau);

// Arbitrary Hermitian-closed reset set with explicit values. Fermionic
// admissibility of the values is the caller's responsibility.
ResetProtocol make_custom_protocol(int n_sites, const PairList& pairs,
                                   const Vector& values, double tau);

// Checks Hermitian closure of R and of its values; for protocols resetting a
// full environment block, also that the block's eigenvalues lie in [0,1].
void validate(const ResetProtocol& protocol);

struct StroboscopicMap {
  PairList pairs;  // evolving pairs; index i of V corresponds to pairs[i]
  Matrix d;        // K x K, Eq. D_ij = U*_{a_i a_j}(tau) U_{b_i b_j}(tau)
  Vector c;        // K, drive collecting the reset entries through U
};

// Build the map for one period of the protocol. Requires tau > 0 (the
// continuous generator covers tau = 0).
StroboscopicMap build_map(const QuadraticModel& model,
                          const ResetProtocol& protocol);

// Same, with an explicit evolution operator and pair enumeration (any order
// covering the complement of R exactly once). Lets tests check that packed
// results are invariant under re-enumeration.
StroboscopicMap build_map(const Matrix& u, const ResetProtocol& protocol,
                          const PairList& pair_order);

// V' = D V + C
Vector step(const StroboscopicMap& map, const Vector& v);

// Stroboscopic trajectory rho(0), rho(tau), ..., rho(n_steps * tau). Each
// period is one unitary interval followed by an instantaneous reset; returned
// states are post-reset. rho(0) is the initial state as given.
std::vector<SPDM> simulate(const QuadraticModel& model,
                           const ResetProtocol& protocol, const SPDM& rho0,
                           int n_steps);

// Gather rho entries into a packed vector following the pair list.
Vector pack(const SPDM& rho, const PairList& pairs);
// Scatter a packed vector back into a full matrix, filling R from the
// protocol's pinned values.
SPDM unpack(const Vector& v, const ResetProtocol& protocol,
            const PairList& pairs);

}  // namespace qreset
