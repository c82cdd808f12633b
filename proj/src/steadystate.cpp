#include "qreset/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qreset {

namespace {

Vector sorted_by_re_im(Vector v) {
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return v;
}

Vector schur_eigenvalues(const Matrix& a) {
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw numerical_error("map_spectrum: Schur decomposition failed");
  return schur.matrixT().diagonal();
}

struct EigenSystem {
  Vector eigenvalues;
  Matrix vectors;              // columns
  Eigen::PartialPivLU<Matrix> vectors_lu;
};

EigenSystem diagonalise_or_throw(const Matrix& a, double max_condition) {
  Eigen::ComplexEigenSolver<Matrix> ces(a, /*computeEigenvectors=*/true);
  if (ces.info() != Eigen::Success)
    throw numerical_error("eigendecomposition failed");
  EigenSystem sys;
  sys.eigenvalues = ces.eigenvalues();
  sys.vectors = ces.eigenvectors();
  Eigen::BDCSVD<Matrix> svd(sys.vectors);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > max_condition) {
    std::ostringstream msg;
    msg << "matrix is numerically defective (eigenvector condition "
        << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity())
        << ")";
    throw not_diagonalisable_error(msg.str());
  }
  sys.vectors_lu.compute(sys.vectors);
  return sys;
}

}  // namespace

MapSpectrum map_spectrum(const StroboscopicMap& map, double tol) {
  MapSpectrum out;
  out.tol = tol;
  out.eigenvalues = sorted_by_re_im(schur_eigenvalues(map.d));
  const auto moduli = out.eigenvalues.cwiseAbs();
  if ((moduli.array() > 1.0 + tol).any())
    out.classification = MapClassification::Unphysical;
  else if ((moduli.array() < 1.0 - tol).all())
    out.classification = MapClassification::Attractive;
  else
    out.classification = MapClassification::Marginal;
  return out;
}

MapSpectrum map_spectrum(const ContinuousGenerator& gen, double tol) {
  MapSpectrum out;
  out.tol = tol;
  out.eigenvalues = sorted_by_re_im(schur_eigenvalues(gen.dcal));
  const auto re = out.eigenvalues.real();
  if ((re.array() > tol).any())
    out.classification = MapClassification::Unphysical;
  else if ((re.array() < -tol).all())
    out.classification = MapClassification::Attractive;
  else
    out.classification = MapClassification::Marginal;
  return out;
}

Vector fixed_point_discrete(const StroboscopicMap& map,
                            const SolverOptions& options) {
  const Eigen::Index k = map.d.rows();
  const Matrix lhs = Matrix::Identity(k, k) - map.d;
  const Vector v = Eigen::PartialPivLU<Matrix>(lhs).solve(map.c);
  const double c_scale = 1.0 + (k > 0 ? map.c.cwiseAbs().maxCoeff() : 0.0);
  const double residual = (lhs * v - map.c).cwiseAbs().maxCoeff();
  if (residual <= 1e-10 * c_scale) return v;
  // Diagnose: eigenvalues at 1 make the fixed point non-unique or marginal.
  const Vector lambdas = schur_eigenvalues(map.d);
  std::vector<Complex> near_unit;
  for (Eigen::Index i = 0; i < lambdas.size(); ++i)
    if (std::abs(lambdas(i) - 1.0) <= options.tol_unit)
      near_unit.push_back(lambdas(i));
  std::ostringstream msg;
  msg << "fixed_point_discrete: residual " << residual
      << " exceeds contract (" << 1e-10 * c_scale << ")";
  if (!near_unit.empty()) {
    msg << "; " << near_unit.size() << " eigenvalue(s) within " << options.tol_unit
        << " of 1";
    throw singular_map_error(msg.str(), std::move(near_unit));
  }
  throw numerical_error(msg.str());
}

Vector trajectory_closed_form(const StroboscopicMap& map, const Vector& v0,
                              long long n, const SolverOptions& options) {
  if (v0.size() != map.d.rows())
    throw std::invalid_argument("trajectory_closed_form: length mismatch");
  if (n < 0) throw std::invalid_argument("trajectory_closed_form: n < 0");
  if (n == 0) return v0;
  const EigenSystem sys =
      diagonalise_or_throw(map.d, options.max_eigenvector_condition);
  const Vector v0_tilde = sys.vectors_lu.solve(v0);
  const Vector c_tilde = sys.vectors_lu.solve(map.c);
  Vector out_tilde(v0.size());
  for (Eigen::Index i = 0; i < v0.size(); ++i) {
    const Complex lambda = sys.eigenvalues(i);
    if (std::abs(lambda - 1.0) <= options.tol_unit) {
      out_tilde(i) = v0_tilde(i) + static_cast<double>(n) * c_tilde(i);
    } else {
      const Complex pole = c_tilde(i) / (lambda - 1.0);
      const Complex lambda_n =
          lambda == Complex(0.0, 0.0)
              ? Complex(0.0, 0.0)
              : std::pow(lambda, static_cast<double>(n));
      out_tilde(i) = (v0_tilde(i) + pole) * lambda_n - pole;
    }
  }
  return sys.vectors * out_tilde;
}

ContinuousGenerator continuous_generator(const QuadraticModel& model,
                                         const ResetProtocol& protocol) {
  ContinuousGenerator gen;
  gen.pairs = protocol.evolving_pairs();
  gen.dcal = kernels::generator_matrix(model.coupling, gen.pairs);
  gen.ccal = kernels::generator_drive(model.coupling, gen.pairs,
                                      protocol.reset_pairs(),
                                      protocol.reset_values());
  return gen;
}

ContinuousFixedPoint fixed_point_continuous(const ContinuousGenerator& gen) {
  const Eigen::Index k = gen.dcal.rows();
  ContinuousFixedPoint out;
  if (k == 0) return out;
  Eigen::BDCSVD<Matrix> svd(gen.dcal,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv(0);
  const double cutoff = 1e-10 * smax;
  if (sv(k - 1) > cutoff) {
    out.v = Eigen::PartialPivLU<Matrix>(gen.dcal).solve(-gen.ccal);
    out.residual = (gen.dcal * out.v + gen.ccal).cwiseAbs().maxCoeff();
    return out;
  }
  // Minimum-norm least-squares through the truncated SVD.
  Vector projected = svd.matrixU().adjoint() * (-gen.ccal);
  int kernel_dim = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (sv(i) > cutoff)
      projected(i) /= sv(i);
    else {
      projected(i) = Complex(0.0, 0.0);
      ++kernel_dim;
    }
  }
  out.v = svd.matrixV() * projected;
  out.kernel_dim = kernel_dim;
  out.degenerate = true;
  out.residual = (gen.dcal * out.v + gen.ccal).cwiseAbs().maxCoeff();
  if (out.residual > 1e-8) {
    std::ostringstream msg;
    msg << "fixed_point_continuous: inconsistent system, least-squares "
           "residual "
        << out.residual;
    throw no_steady_state_error(msg.str());
  }
  return out;
}

Vector ode_evolve(const ContinuousGenerator& gen, const Vector& v0, double t,
                  const SolverOptions& options) {
  if (v0.size() != gen.dcal.rows())
    throw std::invalid_argument("ode_evolve: length mismatch");
  if (!std::isfinite(t))
    throw std::invalid_argument("ode_evolve: time must be finite");
  if (t == 0.0) return v0;
  try {
    const EigenSystem sys =
        diagonalise_or_throw(gen.dcal, options.max_eigenvector_condition);
    const double sigma_scale =
        std::max(1.0, sys.eigenvalues.cwiseAbs().maxCoeff());
    const Vector v0_tilde = sys.vectors_lu.solve(v0);
    const Vector c_tilde = sys.vectors_lu.solve(gen.ccal);
    Vector out_tilde(v0.size());
    for (Eigen::Index i = 0; i < v0.size(); ++i) {
      const Complex sigma = sys.eigenvalues(i);
      if (std::abs(sigma) <= 1e-12 * sigma_scale) {
        out_tilde(i) = v0_tilde(i) + c_tilde(i) * t;
      } else {
        const Complex pole = c_tilde(i) / sigma;
        out_tilde(i) = std::exp(sigma * t) * (v0_tilde(i) + pole) - pole;
      }
    }
    return sys.vectors * out_tilde;
  } catch (const not_diagonalisable_error&) {
    // Fixed-step classical RK4 on f(v) = Dcal v + Ccal.
    const double rate = std::max(1.0, gen.dcal.cwiseAbs().rowwise().sum().maxCoeff());
    const long long steps = std::max<long long>(
        1000, static_cast<long long>(std::ceil(20.0 * std::abs(t) * rate)));
    const double h = t / static_cast<double>(steps);
    Vector v = v0;
    const auto f = [&](const Vector& x) -> Vector {
      return gen.dcal * x + gen.ccal;
    };
    for (long long s = 0; s < steps; ++s) {
      const Vector k1 = f(v);
      const Vector k2 = f(v + 0.5 * h * k1);
      const Vector k3 = f(v + 0.5 * h * k2);
      const Vector k4 = f(v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
  }
}

}  // namespace qreset
