// Fixed points and spectra of the stroboscopic map and of its tau -> 0
// continuous limit.

#pragma once

#include "qreset/reset.hpp"
#include "qreset/types.hpp"

namespace qreset {

enum class MapClassification { Attractive, Marginal, Unphysical };

struct MapSpectrum {
  Vector eigenvalues;  // sorted by (re, im)
  MapClassification classification = MapClassification::Marginal;
  double tol = 1e-9;
};

struct SolverOptions {
  // |lambda - 1| <= tol_unit counts as a unit eigenvalue. The ring's marginal
  // modes sit close to the unit circle, hence the knob.
  double tol_unit = 1e-9;
  // Eigenvector condition number above which D is treated as defective.
  double max_eigenvector_condition = 1e8;
};

// Exact generator of the continuous resetting limit: dV/dt = Dcal V + Ccal.
struct ContinuousGenerator {
  PairList pairs;
  Matrix dcal;
  Vector ccal;
};

struct ContinuousFixedPoint {
  Vector v;
  int kernel_dim = 0;      // dimension of the null space of Dcal
  bool degenerate = false; // true when the minimum-norm branch was taken
  double residual = 0.0;   // max-norm of Dcal v + Ccal
};

// Non-Hermitian eigenvalues of D with stability classification: attractive
// when every |lambda| < 1 - tol, unphysical when some |lambda| > 1 + tol,
// marginal otherwise.
MapSpectrum map_spectrum(const StroboscopicMap& map, double tol = 1e-9);
// Continuous analogue using Re(sigma) against -tol / +tol.
MapSpectrum map_spectrum(const ContinuousGenerator& gen, double tol = 1e-9);

// Solve (I - D) V* = C directly. The residual contract is
// |(I-D)V* - C|_inf <= 1e-10 (1 + |C|_inf); when it cannot be met because D
// has eigenvalues at 1 (within tol_unit), throws singular_map_error carrying
// them. Singularity is diagnosed only on failure; the happy path never
// computes the spectrum.
Vector fixed_point_discrete(const StroboscopicMap& map,
                            const SolverOptions& options = {});

// V[n] through the eigendecomposition of D, with the linear-growth branch on
// unit eigenvalues. Throws not_diagonalisable_error when the eigenvector
// matrix condition exceeds options.max_eigenvector_condition; callers fall
// back to step iteration.
Vector trajectory_closed_form(const StroboscopicMap& map, const Vector& v0,
                              long long n, const SolverOptions& options = {});

ContinuousGenerator continuous_generator(const QuadraticModel& model,
                                         const ResetProtocol& protocol);

// Steady state of the continuous flow. Nonsingular Dcal (smallest singular
// value > 1e-10 * largest): direct solve of Dcal V = -Ccal. Singular:
// minimum-norm least-squares solution, kernel dimension and the Degenerate
// flag; an inconsistent system (residual above 1e-8) throws
// no_steady_state_error.
ContinuousFixedPoint fixed_point_continuous(const ContinuousGenerator& gen);

// Propagate dV/dt = Dcal V + Ccal for time t via the eigendecomposition
// closed form (zero modes grow linearly); falls back to fixed-step RK4 when
// Dcal is defective.
Vector ode_evolve(const ContinuousGenerator& gen, const Vector& v0, double t,
                  const SolverOptions& options = {});

}  // namespace qreset
