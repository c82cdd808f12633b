#include "qreset/kernels.hpp"

#include "qreset/model.hpp"
#include "qreset/reset.hpp"

#include "doctest.h"
#include "testutil.hpp"

#include <random>

using namespace qreset;
using qreset::test::max_abs_diff;
using qreset::test::random_unitary;

namespace {

PairList all_pairs(int n) {
  PairList out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.push_back({a, b});
  return out;
}

// Odd sizes on purpose: chunk boundaries must not change results.
struct Fixture {
  std::mt19937 rng{97};
  int n = 13;
  Matrix u = random_unitary(13, rng);
  PairList pairs;
  PairList reset_pairs;
  Vector reset_values;

  Fixture() {
    const PairList everything = all_pairs(n);
    for (std::size_t i = 0; i < everything.size(); ++i) {
      if (i % 3 == 0)
        reset_pairs.push_back(everything[i]);
      else
        pairs.push_back(everything[i]);
    }
    std::normal_distribution<double> gauss;
    reset_values.resize(reset_pairs.size());
    for (Eigen::Index i = 0; i < reset_values.size(); ++i)
      reset_values(i) = Complex(gauss(rng), gauss(rng));
  }
};

}  // namespace

TEST_CASE("step matrix matches the definition entrywise") {
  Fixture f;
  const Matrix d = kernels::step_matrix_serial(f.u, f.pairs);
  for (std::size_t i = 0; i < f.pairs.size(); i += 17)
    for (std::size_t j = 0; j < f.pairs.size(); j += 13)
      CHECK(d(i, j) == std::conj(f.u(f.pairs[i].alpha, f.pairs[j].alpha)) *
                           f.u(f.pairs[i].beta, f.pairs[j].beta));
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  Fixture f;
  std::normal_distribution<double> gauss;
  Vector v(f.pairs.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = Complex(gauss(f.rng), gauss(f.rng));

  const Matrix d_ref = kernels::step_matrix_serial(f.u, f.pairs);
  const Vector c_ref =
      kernels::drive_vector_serial(f.u, f.pairs, f.reset_pairs, f.reset_values);
  const Matrix g_ref = kernels::generator_matrix_serial(f.u, f.pairs);
  const Vector gc_ref = kernels::generator_drive_serial(
      f.u, f.pairs, f.reset_pairs, f.reset_values);
  const Vector av_ref = kernels::affine_apply_serial(d_ref, c_ref, v);

  const int original = threads::max_threads();
  for (int nt : {1, 2, 3, 7, 8}) {
    CAPTURE(nt);
    threads::set_max_threads(nt);
    CHECK(max_abs_diff(kernels::step_matrix(f.u, f.pairs), d_ref) == 0.0);
    CHECK(max_abs_diff(
              kernels::drive_vector(f.u, f.pairs, f.reset_pairs, f.reset_values),
              c_ref) == 0.0);
    CHECK(max_abs_diff(kernels::generator_matrix(f.u, f.pairs), g_ref) == 0.0);
    CHECK(max_abs_diff(kernels::generator_drive(f.u, f.pairs, f.reset_pairs,
                                                f.reset_values),
                       gc_ref) == 0.0);
    CHECK(max_abs_diff(kernels::affine_apply(d_ref, c_ref, v), av_ref) == 0.0);
  }
  threads::set_max_threads(original);
}

TEST_CASE("affine apply agrees with dense algebra") {
  Fixture f;
  std::normal_distribution<double> gauss;
  Vector v(f.pairs.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = Complex(gauss(f.rng), gauss(f.rng));
  const Matrix d = kernels::step_matrix_serial(f.u, f.pairs);
  const Vector c =
      kernels::drive_vector_serial(f.u, f.pairs, f.reset_pairs, f.reset_values);
  const Vector expected = d * v + c;
  CHECK(max_abs_diff(kernels::affine_apply(d, c, v), expected) < 1e-14);
  CHECK_THROWS_AS(kernels::affine_apply(d, c, Vector::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("drive vector equals the masked-evolution route") {
  // C_i can also be read off U* rho0|R U^T; the kernel's literal sum must
  // agree.
  const QuadraticModel model = build_ring(6, 1.0);
  const Partition partition = make_partition(6, {0, 1});
  const ResetProtocol protocol = make_thermal_protocol(
      model, partition, ResetMode::EvolvingCorrelations, 0.7, 0.05);
  const Matrix u = evolution_operator(diagonalize(model), 0.05);
  const Vector c = kernels::drive_vector(u, protocol.evolving_pairs(),
                                         protocol.reset_pairs(),
                                         protocol.reset_values());
  const Matrix masked = u.conjugate() * protocol.values * u.transpose();
  const PairList pairs = protocol.evolving_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    CHECK(std::abs(c(i) - masked(pairs[i].alpha, pairs[i].beta)) < 1e-13);
}
