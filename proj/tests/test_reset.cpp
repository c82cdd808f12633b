#include "qreset/reset.hpp"

#include "qreset/steadystate.hpp"

#include "doctest.h"
#include "testutil.hpp"

#include <algorithm>
#include <random>

using namespace qreset;
using qreset::test::max_abs_diff;
using qreset::test::random_hermitian;
using qreset::test::random_spdm;

namespace {

ResetProtocol empty_reset_protocol(int n, double tau) {
  return make_custom_protocol(n, {}, Vector(0), tau);
}

// Hermitian-consistent initial state whose reset entries already sit at the
// protocol's pinned values, the premise of the packed/full correspondence.
SPDM consistent_initial_state(const ResetProtocol& protocol, std::mt19937& rng) {
  SPDM rho = random_spdm(protocol.n_sites, rng);
  for (int a = 0; a < protocol.n_sites; ++a)
    for (int b = 0; b < protocol.n_sites; ++b)
      if (protocol.mask(a, b)) rho(a, b) = protocol.values(a, b);
  return rho;
}

}  // namespace

TEST_CASE("reset_set counts") {
  SUBCASE("N=3, S={0}") {
    const Partition p = make_partition(3, {0});
    CHECK(reset_set(3, p, ResetMode::RepeatedInteractions).size() == 8);
    const PairList ec = reset_set(3, p, ResetMode::EvolvingCorrelations);
    CHECK(ec.size() == 4);
    for (const IndexPair& pr : ec) {
      CHECK(pr.alpha >= 1);
      CHECK(pr.beta >= 1);
    }
  }
  SUBCASE("N=100, |S|=8, EC leaves K=1536") {
    std::vector<int> system(8);
    for (int i = 0; i < 8; ++i) system[i] = i;
    const QuadraticModel model = build_ring(100, 1.0);
    const ResetProtocol protocol = make_thermal_protocol(
        model, make_partition(100, system), ResetMode::EvolvingCorrelations,
        1.0, 0.01);
    CHECK(protocol.evolving_pairs().size() == 1536);
  }
}

TEST_CASE("thermal reset values") {
  const QuadraticModel model = build_ring(6, 1.0);
  const Partition p = make_partition(6, {0, 1});
  SUBCASE("beta = 0 pins the half-filled environment") {
    const Matrix v =
        thermal_reset_values(model, p, ResetMode::EvolvingCorrelations, 0.0);
    for (int e : p.environment) {
      CHECK(std::abs(v(e, e) - Complex(0.5, 0.0)) < 1e-12);
      for (int f : p.environment)
        if (e != f) CHECK(std::abs(v(e, f)) < 1e-12);
    }
  }
  SUBCASE("repeated interactions zero the cross blocks exactly") {
    const ResetProtocol protocol = make_thermal_protocol(
        model, p, ResetMode::RepeatedInteractions, 0.7, 0.01);
    for (int s : p.system)
      for (int e : p.environment) {
        CHECK(protocol.mask(s, e));
        CHECK(protocol.values(s, e) == Complex(0.0, 0.0));
        CHECK(protocol.values(e, s) == Complex(0.0, 0.0));
      }
  }
  SUBCASE("a decoupled zero-energy site pins to 1/2 at any beta") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;  // system site; environment site 1 has zero energy
    const QuadraticModel tiny = build_custom(m, Statistics::Fermionic);
    const Partition tp = make_partition(2, {0});
    for (double beta : {0.2, 5.0}) {
      const Matrix v = thermal_reset_values(
          tiny, tp, ResetMode::EvolvingCorrelations, beta);
      CHECK(std::abs(v(1, 1) - Complex(0.5, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("protocol validation") {
  // non-Hermitian-closed custom set is rejected
  CHECK_THROWS_AS(
      make_custom_protocol(2, {{0, 1}}, Vector::Constant(1, Complex(1, 0)),
                           0.1),
      std::invalid_argument);
  // value Hermiticity enforced
  PairList pairs = {{0, 1}, {1, 0}};
  Vector values(2);
  values << Complex(0.3, 0.1), Complex(0.3, 0.1);  // not conjugate
  CHECK_THROWS_AS(make_custom_protocol(2, pairs, values, 0.1),
                  std::invalid_argument);
  values << Complex(0.3, 0.1), Complex(0.3, -0.1);
  CHECK_NOTHROW(make_custom_protocol(2, pairs, values, 0.1));
  // full-block reset with occupations outside [0,1] is rejected
  PairList block = {{0, 0}};
  CHECK_THROWS_AS(
      make_custom_protocol(1, block, Vector::Constant(1, Complex(1.7, 0)), 0.1),
      std::invalid_argument);
}

TEST_CASE("build_map requires a positive period") {
  const QuadraticModel model = build_ring(4, 1.0);
  const Partition p = make_partition(4, {0});
  const ResetProtocol protocol = make_thermal_protocol(
      model, p, ResetMode::EvolvingCorrelations, 1.0, 0.0);
  CHECK_THROWS_AS(build_map(model, protocol), std::invalid_argument);
}

TEST_CASE("empty reset set: zero drive, unitary conjugation step") {
  std::mt19937 rng(19);
  const QuadraticModel model =
      build_custom(random_hermitian(4, rng), Statistics::Fermionic);
  const ResetProtocol protocol = empty_reset_protocol(4, 0.3);
  const StroboscopicMap map = build_map(model, protocol);
  CHECK(map.pairs.size() == 16);
  CHECK(map.c.cwiseAbs().maxCoeff() == 0.0);
  const SPDM rho = random_spdm(4, rng);
  const Matrix u = evolution_operator(diagonalize(model), 0.3);
  const Vector stepped = step(map, pack(rho, map.pairs));
  CHECK(max_abs_diff(stepped, pack(evolve(rho, u), map.pairs)) < 1e-12);
}

TEST_CASE("map matches the first-order expansion at tiny tau") {
  const QuadraticModel model = build_ring(6, 1.0);
  const Partition p = make_partition(6, {0, 1});
  const double tau = 1e-6;
  const ResetProtocol protocol = make_thermal_protocol(
      model, p, ResetMode::EvolvingCorrelations, 0.9, tau);
  const StroboscopicMap map = build_map(model, protocol);
  const ContinuousGenerator gen = continuous_generator(model, protocol);
  const Eigen::Index k = map.d.rows();
  CHECK(((map.d - Matrix::Identity(k, k)) / tau - gen.dcal)
            .cwiseAbs()
            .maxCoeff() < 1e-5);
  CHECK((map.c / tau - gen.ccal).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("N=100 ring EC map has the documented dimension") {
  std::vector<int> system(8);
  for (int i = 0; i < 8; ++i) system[i] = i;
  const QuadraticModel model = build_ring(100, 1.0);
  const ResetProtocol protocol = make_thermal_protocol(
      model, make_partition(100, system), ResetMode::EvolvingCorrelations,
      1.0, 0.01);
  const StroboscopicMap map = build_map(model, protocol);
  CHECK(map.d.rows() == 1536);
  CHECK(map.d.cols() == 1536);
  CHECK(map.c.size() == 1536);
}

TEST_CASE("step on identity map and length validation") {
  StroboscopicMap map;
  map.pairs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  map.d = Matrix::Identity(4, 4);
  map.c = Vector::Zero(4);
  Vector v(4);
  v << Complex(0.1, 0), Complex(0, 0.2), Complex(0, -0.2), Complex(0.7, 0);
  CHECK(max_abs_diff(step(map, v), v) == 0.0);
  CHECK_THROWS_AS(step(map, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("stepping preserves Hermitian pairing") {
  std::mt19937 rng(67);
  const QuadraticModel model =
      build_custom(random_hermitian(5, rng), Statistics::Fermionic);
  const Partition p = make_partition(5, {0, 1});
  const ResetProtocol protocol = make_thermal_protocol(
      model, p, ResetMode::EvolvingCorrelations, 1.2, 0.2);
  const StroboscopicMap map = build_map(model, protocol);
  Vector v = pack(consistent_initial_state(protocol, rng), map.pairs);
  for (int it = 0; it < 5; ++it) v = step(map, v);
  for (std::size_t i = 0; i < map.pairs.size(); ++i) {
    const auto [a, b] = map.pairs[i];
    const auto mirror =
        std::find(map.pairs.begin(), map.pairs.end(), IndexPair{b, a});
    REQUIRE(mirror != map.pairs.end());
    const std::size_t j = mirror - map.pairs.begin();
    CHECK(std::abs(v(i) - std::conj(v(j))) < 1e-12);
  }
}

TEST_CASE("simulate") {
  std::mt19937 rng(29);
  SUBCASE("zero steps returns the initial state") {
    const QuadraticModel model = build_ring(4, 1.0);
    const ResetProtocol protocol = make_thermal_protocol(
        model, make_partition(4, {0}), ResetMode::RepeatedInteractions, 1.0,
        0.1);
    const SPDM rho0 = random_spdm(4, rng);
    const auto traj = simulate(model, protocol, rho0, 0);
    REQUIRE(traj.size() == 1);
    CHECK(max_abs_diff(traj[0], rho0) == 0.0);
  }
  SUBCASE("no reset: three periods equal one triple-length step") {
    const QuadraticModel model =
        build_custom(random_hermitian(5, rng), Statistics::Fermionic);
    const ResetProtocol protocol = empty_reset_protocol(5, 0.4);
    const SPDM rho0 = random_spdm(5, rng);
    const auto traj = simulate(model, protocol, rho0, 3);
    const Matrix u3 = evolution_operator(diagonalize(model), 3 * 0.4);
    CHECK(max_abs_diff(traj[3], evolve(rho0, u3)) < 1e-10);
  }
  SUBCASE("packed trajectory matches repeated step()") {
    const QuadraticModel model =
        build_custom(random_hermitian(5, rng), Statistics::Fermionic);
    const Partition p = make_partition(5, {0, 1});
    const ResetProtocol protocol = make_thermal_protocol(
        model, p, ResetMode::EvolvingCorrelations, 0.8, 0.15);
    const StroboscopicMap map = build_map(model, protocol);
    const SPDM rho0 = consistent_initial_state(protocol, rng);
    const auto traj = simulate(model, protocol, rho0, 6);
    Vector v = pack(rho0, map.pairs);
    for (int n = 1; n <= 6; ++n) {
      v = step(map, v);
      CHECK(max_abs_diff(v, pack(traj[n], map.pairs)) < 1e-12);
    }
  }
  SUBCASE("trajectories stay Hermitian and fermionic-admissible") {
    const QuadraticModel model = build_ring(6, 1.0);
    const Partition p = make_partition(6, {0, 1, 2});
    for (ResetMode mode : {ResetMode::RepeatedInteractions,
                           ResetMode::EvolvingCorrelations}) {
      const ResetProtocol protocol =
          make_thermal_protocol(model, p, mode, 0.5, 0.3);
      const SPDM rho0 = random_spdm(6, rng);
      for (const SPDM& rho : simulate(model, protocol, rho0, 20)) {
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-6);
        CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-6);
      }
    }
  }
}

TEST_CASE("packed results are invariant under pair re-enumeration") {
  std::mt19937 rng(83);
  const QuadraticModel model =
      build_custom(random_hermitian(5, rng), Statistics::Fermionic);
  const Partition p = make_partition(5, {0, 2});
  const ResetProtocol protocol = make_thermal_protocol(
      model, p, ResetMode::EvolvingCorrelations, 1.0, 0.25);
  const Matrix u = evolution_operator(diagonalize(model), 0.25);

  const StroboscopicMap row_major = build_map(u, protocol,
                                              protocol.evolving_pairs());
  PairList shuffled = protocol.evolving_pairs();
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const StroboscopicMap permuted = build_map(u, protocol, shuffled);

  const SPDM rho_a = unpack(fixed_point_discrete(row_major), protocol,
                            row_major.pairs);
  const SPDM rho_b =
      unpack(fixed_point_discrete(permuted), protocol, permuted.pairs);
  CHECK(max_abs_diff(rho_a, rho_b) < 1e-10);

  // rejected orders: reset pair inside, duplicates, wrong size
  PairList bad = shuffled;
  bad[0] = protocol.reset_pairs()[0];
  CHECK_THROWS_AS(build_map(u, protocol, bad), std::invalid_argument);
  bad = shuffled;
  bad[1] = bad[0];
  CHECK_THROWS_AS(build_map(u, protocol, bad), std::invalid_argument);
  bad = shuffled;
  bad.pop_back();
  CHECK_THROWS_AS(build_map(u, protocol, bad), std::invalid_argument);
}
