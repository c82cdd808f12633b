// Times the serial reference kernels against their OpenMP versions on the
// ring geometry at a few sizes. Run with OMP_NUM_THREADS or --threads to
// control the parallel side.

#include "qreset/kernels.hpp"
#include "qreset/model.hpp"
#include "qreset/reset.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>

namespace {

using namespace qreset;
using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.4f ms   parallel %9.4f ms   speedup %.2fx\n",
              name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  for (int i = 1; i < argc - 1; ++i)
    if (std::strcmp(argv[i], "--threads") == 0) threads = std::atoi(argv[i + 1]);
  if (threads > 0) threads::set_max_threads(threads);
  std::printf("threads: %d\n", threads::max_threads());

  for (const auto& [n, ns] : {std::pair{40, 4}, std::pair{100, 8}}) {
    const QuadraticModel model = build_ring(n, 1.0);
    std::vector<int> system(ns);
    for (int i = 0; i < ns; ++i) system[i] = i;
    const Partition partition = make_partition(n, system);
    const ResetProtocol protocol = make_thermal_protocol(
        model, partition, ResetMode::EvolvingCorrelations, 1.0, 0.01);
    const Matrix u = evolution_operator(diagonalize(model), 0.01);
    const PairList pairs = protocol.evolving_pairs();
    const PairList reset_pairs = protocol.reset_pairs();
    const Vector reset_values = protocol.reset_values();
    std::printf("\nring N=%d |S|=%d (K=%zu)\n", n, ns, pairs.size());

    const int reps = n <= 40 ? 20 : 5;
    report("step matrix",
           time_of([&] { kernels::step_matrix_serial(u, pairs); }, reps),
           time_of([&] { kernels::step_matrix(u, pairs); }, reps));
    report("drive vector",
           time_of(
               [&] {
                 kernels::drive_vector_serial(u, pairs, reset_pairs,
                                              reset_values);
               },
               reps),
           time_of(
               [&] { kernels::drive_vector(u, pairs, reset_pairs, reset_values); },
               reps));
    report("generator matrix",
           time_of([&] { kernels::generator_matrix_serial(model.coupling, pairs); },
                   reps),
           time_of([&] { kernels::generator_matrix(model.coupling, pairs); },
                   reps));

    const Matrix d = kernels::step_matrix(u, pairs);
    const Vector c =
        kernels::drive_vector(u, pairs, reset_pairs, reset_values);
    Vector v = Vector::Zero(pairs.size());
    report("affine apply x100",
           time_of(
               [&] {
                 Vector w = v;
                 for (int it = 0; it < 100; ++it)
                   w = kernels::affine_apply_serial(d, c, w);
               },
               3),
           time_of(
               [&] {
                 Vector w = v;
                 for (int it = 0; it < 100; ++it)
                   w = kernels::affine_apply(d, c, w);
               },
               3));
  }
  return 0;
}
