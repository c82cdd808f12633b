#include "qreset/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace qreset {

namespace threads {

#ifdef _OPENMP
int max_threads() { return omp_get_max_threads(); }
void set_max_threads(int n) { omp_set_num_threads(std::max(1, n)); }
#else
int max_threads() { return 1; }
void set_max_threads(int) {}
#endif

}  // namespace threads

namespace kernels {

namespace {

constexpr Complex kImaginary{0.0, 1.0};

void step_matrix_rows(const Matrix& u, const PairList& pairs,
                      std::ptrdiff_t row_begin, std::ptrdiff_t row_end,
                      Matrix& out) {
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(pairs.size());
  for (std::ptrdiff_t i = row_begin; i < row_end; ++i) {
    const int ai = pairs[i].alpha, bi = pairs[i].beta;
    for (std::ptrdiff_t j = 0; j < k; ++j)
      out(i, j) = std::conj(u(ai, pairs[j].alpha)) * u(bi, pairs[j].beta);
  }
}

void drive_vector_rows(const Matrix& u, const PairList& pairs,
                       const PairList& reset_pairs, const Vector& reset_values,
                       std::ptrdiff_t row_begin, std::ptrdiff_t row_end,
                       Vector& out) {
  const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(reset_pairs.size());
  for (std::ptrdiff_t i = row_begin; i < row_end; ++i) {
    const int ai = pairs[i].alpha, bi = pairs[i].beta;
    Complex acc{0.0, 0.0};
    for (std::ptrdiff_t s = 0; s < r; ++s)
      acc += std::conj(u(ai, reset_pairs[s].alpha)) *
             u(bi, reset_pairs[s].beta) * reset_values(s);
    out(i) = acc;
  }
}

void generator_matrix_rows(const Matrix& m, const PairList& pairs,
                           std::ptrdiff_t row_begin, std::ptrdiff_t row_end,
                           Matrix& out) {
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(pairs.size());
  for (std::ptrdiff_t i = row_begin; i < row_end; ++i) {
    const int ai = pairs[i].alpha, bi = pairs[i].beta;
    for (std::ptrdiff_t j = 0; j < k; ++j) {
      const int aj = pairs[j].alpha, bj = pairs[j].beta;
      Complex entry{0.0, 0.0};
      if (bi == bj) entry += std::conj(m(ai, aj));
      if (ai == aj) entry -= m(bi, bj);
      out(i, j) = kImaginary * entry;
    }
  }
}

void generator_drive_rows(const Matrix& m, const PairList& pairs,
                          const PairList& reset_pairs,
                          const Vector& reset_values,
                          std::ptrdiff_t row_begin, std::ptrdiff_t row_end,
                          Vector& out) {
  const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(reset_pairs.size());
  for (std::ptrdiff_t i = row_begin; i < row_end; ++i) {
    const int ai = pairs[i].alpha, bi = pairs[i].beta;
    Complex acc{0.0, 0.0};
    for (std::ptrdiff_t s = 0; s < r; ++s) {
      const int as = reset_pairs[s].alpha, bs = reset_pairs[s].beta;
      Complex entry{0.0, 0.0};
      if (bi == bs) entry += std::conj(m(ai, as));
      if (ai == as) entry -= m(bi, bs);
      acc += reset_values(s) * entry;
    }
    out(i) = kImaginary * acc;
  }
}

void affine_apply_rows(const Matrix& d, const Vector& c, const Vector& v,
                       std::ptrdiff_t row_begin, std::ptrdiff_t row_end,
                       Vector& out) {
  const std::ptrdiff_t n = row_end - row_begin;
  if (n <= 0) return;
  out.segment(row_begin, n).noalias() = d.middleRows(row_begin, n) * v;
  out.segment(row_begin, n) += c.segment(row_begin, n);
}

// Run worker over [0, rows) in static chunks. Each row is produced by
// exactly one thread running the same code as the serial reference.
template <class Worker>
void parallel_rows(std::ptrdiff_t rows, Worker&& worker) {
#ifdef _OPENMP
  const int nt = std::max(1, std::min<std::ptrdiff_t>(threads::max_threads(),
                                                      rows > 0 ? rows : 1));
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int t = 0; t < nt; ++t) {
    const std::ptrdiff_t lo = rows * t / nt;
    const std::ptrdiff_t hi = rows * (t + 1) / nt;
    worker(lo, hi);
  }
#else
  worker(0, rows);
#endif
}

}  // namespace

Matrix step_matrix_serial(const Matrix& u, const PairList& pairs) {
  Matrix out(pairs.size(), pairs.size());
  step_matrix_rows(u, pairs, 0, static_cast<std::ptrdiff_t>(pairs.size()), out);
  return out;
}

Matrix step_matrix(const Matrix& u, const PairList& pairs) {
  Matrix out(pairs.size(), pairs.size());
  parallel_rows(static_cast<std::ptrdiff_t>(pairs.size()),
                [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                  step_matrix_rows(u, pairs, lo, hi, out);
                });
  return out;
}

Vector drive_vector_serial(const Matrix& u, const PairList& pairs,
                           const PairList& reset_pairs,
                           const Vector& reset_values) {
  Vector out(pairs.size());
  drive_vector_rows(u, pairs, reset_pairs, reset_values, 0,
                    static_cast<std::ptrdiff_t>(pairs.size()), out);
  return out;
}

Vector drive_vector(const Matrix& u, const PairList& pairs,
                    const PairList& reset_pairs, const Vector& reset_values) {
  Vector out(pairs.size());
  parallel_rows(static_cast<std::ptrdiff_t>(pairs.size()),
                [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                  drive_vector_rows(u, pairs, reset_pairs, reset_values, lo, hi,
                                    out);
                });
  return out;
}

Matrix generator_matrix_serial(const Matrix& m, const PairList& pairs) {
  Matrix out(pairs.size(), pairs.size());
  generator_matrix_rows(m, pairs, 0, static_cast<std::ptrdiff_t>(pairs.size()),
                        out);
  return out;
}

Matrix generator_matrix(const Matrix& m, const PairList& pairs) {
  Matrix out(pairs.size(), pairs.size());
  parallel_rows(static_cast<std::ptrdiff_t>(pairs.size()),
                [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                  generator_matrix_rows(m, pairs, lo, hi, out);
                });
  return out;
}

Vector generator_drive_serial(const Matrix& m, const PairList& pairs,
                              const PairList& reset_pairs,
                              const Vector& reset_values) {
  Vector out(pairs.size());
  generator_drive_rows(m, pairs, reset_pairs, reset_values, 0,
                       static_cast<std::ptrdiff_t>(pairs.size()), out);
  return out;
}

Vector generator_drive(const Matrix& m, const PairList& pairs,
                       const PairList& reset_pairs,
                       const Vector& reset_values) {
  Vector out(pairs.size());
  parallel_rows(static_cast<std::ptrdiff_t>(pairs.size()),
                [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                  generator_drive_rows(m, pairs, reset_pairs, reset_values, lo,
                                       hi, out);
                });
  return out;
}

Vector affine_apply_serial(const Matrix& d, const Vector& c, const Vector& v) {
  if (d.cols() != v.size() || d.rows() != c.size())
    throw std::invalid_argument("affine_apply: dimension mismatch");
  Vector out(d.rows());
  affine_apply_rows(d, c, v, 0, d.rows(), out);
  return out;
}

Vector affine_apply(const Matrix& d, const Vector& c, const Vector& v) {
  if (d.cols() != v.size() || d.rows() != c.size())
    throw std::invalid_argument("affine_apply: dimension mismatch");
  Vector out(d.rows());
  parallel_rows(d.rows(), [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
    affine_apply_rows(d, c, v, lo, hi, out);
  });
  return out;
}

}  // namespace kernels
}  // namespace qreset
