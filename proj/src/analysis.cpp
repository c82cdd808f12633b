#include "qreset/analysis.hpp"

#include "qreset/state.hpp"

#include <cmath>
#include <limits>

namespace qreset {

double pseudo_thermal_metric(const Spectra& spectra,
                             const std::vector<int>& system,
                             double degeneracy_tol) {
  const int n = spectra.size();
  const int ns = static_cast<int>(system.size());
  if (ns == 0 || ns > n)
    throw std::invalid_argument("pseudo_thermal_metric: bad system set");
  for (int s : system)
    if (s < 0 || s >= n)
      throw std::invalid_argument("pseudo_thermal_metric: index out of range");
  if (degeneracy_tol < 0.0) degeneracy_tol = 1e-9 * spectra.spectral_radius();

  // Eigenvalue clusters over the (ascending) spectrum.
  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n ||
        spectra.energies(k) - spectra.energies(k - 1) > degeneracy_tol) {
      clusters.emplace_back(begin, k);
      begin = k;
    }
  }

  // System block of each eigenspace projector, P_E(x,y) = sum_{n in E}
  // psi_nx psi*_ny, pre-scaled by 1/sqrt(dim E).
  std::vector<Matrix> blocks;
  blocks.reserve(clusters.size());
  for (const auto& [lo, hi] : clusters) {
    Matrix p = Matrix::Zero(ns, ns);
    for (int k = lo; k < hi; ++k)
      for (int x = 0; x < ns; ++x)
        for (int y = 0; y < ns; ++y)
          p(x, y) +=
              spectra.modes(k, system[x]) * std::conj(spectra.modes(k, system[y]));
    blocks.push_back(p / std::sqrt(static_cast<double>(hi - lo)));
  }

  double best = 0.0;
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b)
      for (int g = 0; g < ns; ++g)
        for (int d = 0; d < ns; ++d) {
          Complex acc{0.0, 0.0};
          for (const Matrix& p : blocks) acc += p(b, a) * p(g, d);
          best = std::max(best, std::abs(acc));
        }
  return best;
}

ThermalityReport thermality_report(const Matrix& rho_system,
                                   const Spectra& system_spectra) {
  const int ns = system_spectra.size();
  if (rho_system.rows() != ns || rho_system.cols() != ns)
    throw std::invalid_argument("thermality_report: dimension mismatch");
  const Matrix tilde = to_eigenbasis(rho_system, system_spectra);
  ThermalityReport report;
  report.betas.resize(ns);
  for (int r = 0; r < ns; ++r)
    for (int c = 0; c < ns; ++c) {
      if (r == c)
        report.diag_sum += std::abs(tilde(r, c));
      else
        report.offdiag_sum += std::abs(tilde(r, c));
    }
  for (int a = 0; a < ns; ++a) {
    const double occ = tilde(a, a).real();
    const double energy = system_spectra.energies(a);
    if (occ > 0.0 && occ < 1.0 && std::abs(energy) >= 1e-12)
      report.betas(a) = std::log(1.0 / occ - 1.0) / energy;
    else
      report.betas(a) = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

std::vector<std::pair<int, int>> qubit_init_check(
    const QuadraticModel& model, const Partition& partition,
    const RealVector& env_occupations) {
  if (env_occupations.size() !=
      static_cast<Eigen::Index>(partition.environment.size()))
    throw std::invalid_argument(
        "qubit_init_check: occupation count must match environment size");
  for (Eigen::Index i = 0; i < env_occupations.size(); ++i)
    if (!(env_occupations(i) >= 0.0 && env_occupations(i) <= 1.0))
      throw std::invalid_argument(
          "qubit_init_check: occupation outside [0,1]");
  std::vector<std::pair<int, int>> violations;
  for (std::size_t e = 0; e < partition.environment.size(); ++e)
    for (int s : partition.system) {
      const double weight =
          env_occupations(e) *
          std::abs(model.coupling(s, partition.environment[e]));
      if (weight > 1e-12)
        violations.emplace_back(partition.environment[e], s);
    }
  return violations;
}

InfTempCheck verify_infinite_temperature(const StroboscopicMap& map) {
  Vector half(map.pairs.size());
  for (std::size_t i = 0; i < map.pairs.size(); ++i)
    half(i) = map.pairs[i].alpha == map.pairs[i].beta ? 0.5 : 0.0;
  const Vector stepped = kernels::affine_apply(map.d, map.c, half);
  InfTempCheck check;
  check.residual = (stepped - half).cwiseAbs().maxCoeff();
  check.ok = check.residual <= 1e-10;
  return check;
}

}  // namespace qreset
