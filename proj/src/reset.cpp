#include "qreset/reset.hpp"

#include <cmath>
#include <unordered_set>

namespace qreset {

namespace {

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

PairList ResetProtocol::reset_pairs() const {
  PairList out;
  for (int a = 0; a < n_sites; ++a)
    for (int b = 0; b < n_sites; ++b)
      if (mask(a, b)) out.push_back({a, b});
  return out;
}

Vector ResetProtocol::reset_values() const {
  const PairList pairs = reset_pairs();
  Vector out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out(i) = values(pairs[i].alpha, pairs[i].beta);
  return out;
}

PairList ResetProtocol::evolving_pairs() const {
  PairList out;
  for (int a = 0; a < n_sites; ++a)
    for (int b = 0; b < n_sites; ++b)
      if (!mask(a, b)) out.push_back({a, b});
  return out;
}

PairList reset_set(int n_sites, const Partition& partition, ResetMode mode) {
  std::vector<bool> in_system(n_sites, false);
  for (int s : partition.system) in_system.at(s) = true;
  PairList out;
  for (int a = 0; a < n_sites; ++a)
    for (int b = 0; b < n_sites; ++b) {
      const bool both_system = in_system[a] && in_system[b];
      const bool both_env = !in_system[a] && !in_system[b];
      switch (mode) {
        case ResetMode::RepeatedInteractions:
          if (!both_system) out.push_back({a, b});
          break;
        case ResetMode::EvolvingCorrelations:
          if (both_env) out.push_back({a, b});
          break;
        case ResetMode::Custom:
          throw std::invalid_argument(
              "reset_set: custom mode has no canonical pair set");
      }
    }
  return out;
}

Matrix thermal_reset_values(const QuadraticModel& model,
                            const Partition& partition, ResetMode mode,
                            double beta) {
  // The environment equilibrates with its super-environment while detached,
  // so the Gibbs state is that of the decoupled block M|ExE.
  const Matrix env_block =
      restrict_to(model.coupling, partition.environment);
  const QuadraticModel env_model{static_cast<int>(partition.environment.size()),
                                 env_block, model.statistics};
  const SPDM env_thermal = thermal_spdm(diagonalize(env_model), beta);
  Matrix out = Matrix::Zero(model.n_sites, model.n_sites);
  for (std::size_t r = 0; r < partition.environment.size(); ++r)
    for (std::size_t c = 0; c < partition.environment.size(); ++c)
      out(partition.environment[r], partition.environment[c]) =
          env_thermal(r, c);
  // RI pins the cross blocks to zero, which `out` already holds.
  (void)mode;
  return out;
}

ResetProtocol make_thermal_protocol(const QuadraticModel& model,
                                    const Partition& partition, ResetMode mode,
                                    double beta, double tau) {
  ResetProtocol p;
  p.n_sites = model.n_sites;
  p.period = tau;
  p.mask.setConstant(model.n_sites, model.n_sites, false);
  for (const IndexPair& pr : reset_set(model.n_sites, partition, mode))
    p.mask(pr.alpha, pr.beta) = true;
  p.values = thermal_reset_values(model, partition, mode, beta);
  validate(p);
  return p;
}

ResetProtocol make_custom_protocol(int n_sites, const PairList& pairs,
                                   const Vector& values, double tau) {
  if (static_cast<std::size_t>(values.size()) != pairs.size())
    throw std::invalid_argument("make_custom_protocol: values/pairs mismatch");
  ResetProtocol p;
  p.n_sites = n_sites;
  p.period = tau;
  p.mask.setConstant(n_sites, n_sites, false);
  p.values = Matrix::Zero(n_sites, n_sites);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    if (a < 0 || a >= n_sites || b < 0 || b >= n_sites)
      throw std::invalid_argument("make_custom_protocol: pair out of range");
    if (p.mask(a, b))
      throw std::invalid_argument("make_custom_protocol: duplicate pair");
    p.mask(a, b) = true;
    p.values(a, b) = values(i);
  }
  validate(p);
  return p;
}

void validate(const ResetProtocol& protocol) {
  const int n = protocol.n_sites;
  if (protocol.mask.rows() != n || protocol.mask.cols() != n ||
      protocol.values.rows() != n || protocol.values.cols() != n)
    throw std::invalid_argument("reset protocol: shape mismatch");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (protocol.mask(a, b) != protocol.mask(b, a))
        throw std::invalid_argument(
            "reset protocol: reset set is not Hermitian-closed");
      if (protocol.mask(a, b) &&
          std::abs(protocol.values(a, b) - std::conj(protocol.values(b, a))) >
              1e-12)
        throw std::invalid_argument(
            "reset protocol: reset values break Hermiticity");
    }
  // Full-block resets must pin a fermionic-admissible state. Detect maximal
  // index sets whose full block is reset and check the pinned eigenvalues.
  std::vector<int> block;
  for (int a = 0; a < n; ++a)
    if (protocol.mask(a, a)) block.push_back(a);
  bool full_block = !block.empty();
  for (int a : block)
    for (int b : block)
      if (!protocol.mask(a, b)) full_block = false;
  if (full_block) {
    Matrix sub(block.size(), block.size());
    for (std::size_t r = 0; r < block.size(); ++r)
      for (std::size_t c = 0; c < block.size(); ++c)
        sub(r, c) = protocol.values(block[r], block[c]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    if (es.info() == Eigen::Success &&
        (es.eigenvalues().minCoeff() < -1e-9 ||
         es.eigenvalues().maxCoeff() > 1.0 + 1e-9))
      throw std::invalid_argument(
          "reset protocol: pinned block has occupations outside [0,1]");
  }
}

StroboscopicMap build_map(const QuadraticModel& model,
                          const ResetProtocol& protocol) {
  if (!(protocol.period > 0.0))
    throw std::invalid_argument(
        "build_map: period must be positive (use the continuous generator "
        "for tau = 0)");
  const Matrix u =
      evolution_operator(diagonalize(model), protocol.period);
  return build_map(u, protocol, protocol.evolving_pairs());
}

StroboscopicMap build_map(const Matrix& u, const ResetProtocol& protocol,
                          const PairList& pair_order) {
  if (u.rows() != protocol.n_sites || u.cols() != protocol.n_sites)
    throw std::invalid_argument("build_map: operator/protocol size mismatch");
  std::unordered_set<std::uint64_t> seen;
  for (const IndexPair& pr : pair_order) {
    if (protocol.mask(pr.alpha, pr.beta))
      throw std::invalid_argument("build_map: pair order contains reset pair");
    if (!seen.insert(pair_key(pr.alpha, pr.beta)).second)
      throw std::invalid_argument("build_map: duplicate pair in order");
  }
  const std::size_t expected = static_cast<std::size_t>(protocol.n_sites) *
                                   protocol.n_sites -
                               protocol.reset_pairs().size();
  if (pair_order.size() != expected)
    throw std::invalid_argument("build_map: pair order must cover complement");
  StroboscopicMap map;
  map.pairs = pair_order;
  map.d = kernels::step_matrix(u, pair_order);
  map.c = kernels::drive_vector(u, pair_order, protocol.reset_pairs(),
                                protocol.reset_values());
  return map;
}

Vector step(const StroboscopicMap& map, const Vector& v) {
  if (v.size() != static_cast<Eigen::Index>(map.pairs.size()))
    throw std::invalid_argument("step: state vector length mismatch");
  return kernels::affine_apply(map.d, map.c, v);
}

std::vector<SPDM> simulate(const QuadraticModel& model,
                           const ResetProtocol& protocol, const SPDM& rho0,
                           int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("simulate: n_steps < 0");
  if (rho0.rows() != model.n_sites || rho0.cols() != model.n_sites)
    throw std::invalid_argument("simulate: state size mismatch");
  const Matrix u = evolution_operator(diagonalize(model), protocol.period);
  std::vector<SPDM> trajectory;
  trajectory.reserve(n_steps + 1);
  trajectory.push_back(rho0);
  SPDM rho = rho0;
  for (int s = 0; s < n_steps; ++s) {
    rho = evolve(rho, u);
    for (int a = 0; a < protocol.n_sites; ++a)
      for (int b = 0; b < protocol.n_sites; ++b)
        if (protocol.mask(a, b)) rho(a, b) = protocol.values(a, b);
    trajectory.push_back(rho);
  }
  return trajectory;
}

Vector pack(const SPDM& rho, const PairList& pairs) {
  Vector v(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    v(i) = rho(pairs[i].alpha, pairs[i].beta);
  return v;
}

SPDM unpack(const Vector& v, const ResetProtocol& protocol,
            const PairList& pairs) {
  if (v.size() != static_cast<Eigen::Index>(pairs.size()))
    throw std::invalid_argument("unpack: length mismatch");
  SPDM rho = protocol.values;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    rho(pairs[i].alpha, pairs[i].beta) = v(i);
  return rho;
}

}  // namespace qreset
