#include "qreset/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qreset {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

QuadraticModel build_ring(int n_sites, double hopping) {
  if (n_sites < 3)
    throw std::invalid_argument(
        "build_ring: need at least 3 sites (N=2 would put two bonds on one "
        "pair)");
  if (!std::isfinite(hopping))
    throw std::invalid_argument("build_ring: hopping must be finite");
  Matrix m = Matrix::Zero(n_sites, n_sites);
  for (int l = 0; l < n_sites; ++l) {
    const int r = (l + 1) % n_sites;
    m(l, r) = -hopping;
    m(r, l) = -hopping;
  }
  return QuadraticModel{n_sites, std::move(m), Statistics::Fermionic};
}

QuadraticModel build_custom(const Matrix& coupling, Statistics statistics) {
  if (coupling.rows() != coupling.cols() || coupling.rows() < 1)
    throw std::invalid_argument("build_custom: coupling must be square, N>=1");
  if (!coupling.allFinite())
    throw std::invalid_argument("build_custom: coupling has non-finite entries");
  if (!is_hermitian(coupling, 1e-12))
    throw std::invalid_argument("build_custom: coupling is not Hermitian");
  return QuadraticModel{static_cast<int>(coupling.rows()), coupling,
                        statistics};
}

Spectra diagonalize(const QuadraticModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(model.coupling);
  if (solver.info() != Eigen::Success)
    throw numerical_error("diagonalize: eigensolver did not converge");
  Spectra s;
  s.energies = solver.eigenvalues();
  s.modes = solver.eigenvectors().transpose();
  // residual report guards against silent LAPACK-style misconvergence
  const double scale = std::max(s.spectral_radius(), 1e-300);
  const double resid = (model.coupling * solver.eigenvectors() -
                        solver.eigenvectors() * s.energies.asDiagonal())
                           .cwiseAbs()
                           .maxCoeff();
  if (resid > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "diagonalize: eigenpair residual " << resid << " exceeds "
        << 1e-10 * scale;
    throw numerical_error(msg.str());
  }
  return s;
}

Matrix evolution_operator(const Spectra& spectra, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("evolution_operator: time must be finite");
  const int n = spectra.size();
  Vector phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = std::exp(Complex(0.0, -spectra.energies(k) * t));
  const Matrix cols = spectra.mode_columns();
  return cols * phases.asDiagonal() * cols.adjoint();
}

Partition make_partition(int n_sites, std::vector<int> system_sites) {
  if (n_sites < 2)
    throw std::invalid_argument("make_partition: need at least 2 sites");
  std::set<int> sys(system_sites.begin(), system_sites.end());
  if (sys.size() != system_sites.size())
    throw std::invalid_argument("make_partition: duplicate system index");
  if (sys.empty() || static_cast<int>(sys.size()) >= n_sites)
    throw std::invalid_argument(
        "make_partition: system and environment must both be nonempty");
  for (int i : sys)
    if (i < 0 || i >= n_sites)
      throw std::invalid_argument("make_partition: site index out of range");
  Partition p;
  p.system = std::move(system_sites);
  for (int i = 0; i < n_sites; ++i)
    if (!sys.count(i)) p.environment.push_back(i);
  return p;
}

}  // namespace qreset
