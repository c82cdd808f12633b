#include "qreset/model.hpp"

#include "doctest.h"
#include "testutil.hpp"

#include <random>

using namespace qreset;
using qreset::test::max_abs_diff;
using qreset::test::random_hermitian;

TEST_CASE("build_ring lays -J on every bond") {
  const QuadraticModel m = build_ring(4, 1.0);
  CHECK(m.statistics == Statistics::Fermionic);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 1) = expected(1, 2) = expected(2, 3) = expected(3, 0) = -1.0;
  expected(1, 0) = expected(2, 1) = expected(3, 2) = expected(0, 3) = -1.0;
  CHECK(max_abs_diff(m.coupling, expected) == 0.0);
}

TEST_CASE("build_ring N=100 has two bonds per site") {
  const QuadraticModel m = build_ring(100, 1.0);
  for (int row = 0; row < 100; ++row)
    CHECK(m.coupling.row(row).cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("build_ring rejects N < 3 and non-finite J") {
  CHECK_THROWS_AS(build_ring(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_ring(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_ring(5, std::nan("")), std::invalid_argument);
}

TEST_CASE("build_custom validates Hermiticity") {
  CHECK_NOTHROW(build_custom(Matrix::Identity(2, 2), Statistics::Fermionic));
  Matrix pauli_y(2, 2);
  pauli_y << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  CHECK_NOTHROW(build_custom(pauli_y, Statistics::Fermionic));
  Matrix bad(2, 2);
  bad << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_THROWS_AS(build_custom(bad, Statistics::Fermionic),
                  std::invalid_argument);
}

TEST_CASE("ring spectra follow the closed-form dispersion") {
  // e_k = -2 J cos(2 pi k / N)
  SUBCASE("N=3, J=2") {
    const Spectra s = diagonalize(build_ring(3, 2.0));
    CHECK(s.energies(0) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(s.energies(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.energies(2) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("N=4, J=1") {
    const Spectra s = diagonalize(build_ring(4, 1.0));
    CHECK(s.energies(0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(std::abs(s.energies(1)) < 1e-12);
    CHECK(std::abs(s.energies(2)) < 1e-12);
    CHECK(s.energies(3) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("diagonalize sorts and returns a permutation for diagonal input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const Spectra s = diagonalize(build_custom(m, Statistics::Fermionic));
  CHECK(s.energies(0) == doctest::Approx(1.0));
  CHECK(s.energies(1) == doctest::Approx(3.0));
  // rows are unit vectors on the matching site
  CHECK(std::abs(s.modes(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(s.modes(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("spectra invariants: unitarity, eigen-residual, reconstruction") {
  std::mt19937 rng(11);
  const QuadraticModel m =
      build_custom(random_hermitian(8, rng), Statistics::Fermionic);
  const Spectra s = diagonalize(m);
  CHECK((s.modes * s.modes.adjoint() - Matrix::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  const Matrix cols = s.mode_columns();
  CHECK((m.coupling * cols - cols * s.energies.asDiagonal())
            .cwiseAbs()
            .maxCoeff() < 1e-10 * s.spectral_radius());
  const Matrix rebuilt =
      cols * s.energies.cast<Complex>().asDiagonal() * cols.adjoint();
  CHECK(max_abs_diff(rebuilt, m.coupling) <= 1e-10 * s.spectral_radius());
  for (int n = 0; n + 1 < s.size(); ++n)
    CHECK(s.energies(n) <= s.energies(n + 1));
}

TEST_CASE("evolution operator basics") {
  SUBCASE("t = 0 is the identity") {
    const Spectra s = diagonalize(build_ring(5, 1.0));
    CHECK(max_abs_diff(evolution_operator(s, 0.0), Matrix::Identity(5, 5)) <
          1e-12);
  }
  SUBCASE("diagonal model gives diagonal phases") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 0.3;
    m(1, 1) = -1.2;
    m(2, 2) = 2.0;
    const Spectra s = diagonalize(build_custom(m, Statistics::Fermionic));
    const Matrix u = evolution_operator(s, 0.7);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(u(k, k) - std::exp(Complex(0, -m(k, k).real() * 0.7))) <
            1e-12);
    CHECK(std::abs(u(0, 1)) < 1e-14);
  }
  SUBCASE("two-site hop transfers fully at t = pi/2") {
    Matrix m(2, 2);
    m << 0, -1, -1, 0;
    const Spectra s = diagonalize(build_custom(m, Statistics::Fermionic));
    const Matrix u = evolution_operator(s, M_PI / 2.0);
    CHECK(std::abs(u(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(u(0, 0)) < 1e-12);
  }
}

TEST_CASE("unitarity and group property over random times") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> time_dist(-100.0, 100.0);
  const QuadraticModel ring = build_ring(7, 1.0);
  const QuadraticModel dense =
      build_custom(random_hermitian(6, rng), Statistics::Fermionic);
  for (const QuadraticModel& m : {ring, dense}) {
    const Spectra s = diagonalize(m);
    const int n = m.n_sites;
    for (int trial = 0; trial < 8; ++trial) {
      const double t1 = time_dist(rng), t2 = time_dist(rng);
      const Matrix u1 = evolution_operator(s, t1);
      CHECK((u1.adjoint() * u1 - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <
            1e-9);
      CHECK(max_abs_diff(u1 * evolution_operator(s, t2),
                         evolution_operator(s, t1 + t2)) < 1e-9);
    }
  }
}

TEST_CASE("make_partition splits and validates") {
  const Partition p = make_partition(5, {1, 3});
  CHECK(p.environment == std::vector<int>{0, 2, 4});
  CHECK_THROWS_AS(make_partition(3, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(3, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(3, {5}), std::invalid_argument);
}
