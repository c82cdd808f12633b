// Hot dense kernels behind map assembly and stroboscopic stepping.
//
// Every kernel comes in two flavours: a *_serial reference and an
// OpenMP-parallel version that splits the row range across threads while
// running the identical per-row code. Results are bit-identical for any
// thread count, which keeps sweep output reproducible. The qreset_bench tool
// times the two against each other.

#pragma once

#include "qreset/types.hpp"

namespace qreset {

// One (alpha, beta) entry of the single-particle density matrix.
struct IndexPair {
  int alpha = 0;
  int beta = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

using PairList = std::vector<IndexPair>;

namespace threads {
// Upper bound for qreset's OpenMP regions (and the CLI sweep). Defaults to
// the OpenMP runtime's own maximum.
int max_threads();
void set_max_threads(int n);
}  // namespace threads

namespace kernels {

// D_ij = U*_{a_i a_j} U_{b_i b_j}
Matrix step_matrix_serial(const Matrix& u, const PairList& pairs);
Matrix step_matrix(const Matrix& u, const PairList& pairs);

// C_i = sum_r U*_{a_i a_r} U_{b_i b_r} v_r  over reset pairs r
Vector drive_vector_serial(const Matrix& u, const PairList& pairs,
                           const PairList& reset_pairs,
                           const Vector& reset_values);
Vector drive_vector(const Matrix& u, const PairList& pairs,
                    const PairList& reset_pairs, const Vector& reset_values);

// Dcal_ij = i (M*_{a_i a_j} d_{b_i b_j} - d_{a_i a_j} M_{b_i b_j})
Matrix generator_matrix_serial(const Matrix& m, const PairList& pairs);
Matrix generator_matrix(const Matrix& m, const PairList& pairs);

// Ccal_i = i sum_r v_r (M*_{a_i a_r} d_{b_i b_r} - d_{a_i a_r} M_{b_i b_r})
Vector generator_drive_serial(const Matrix& m, const PairList& pairs,
                              const PairList& reset_pairs,
                              const Vector& reset_values);
Vector generator_drive(const Matrix& m, const PairList& pairs,
                       const PairList& reset_pairs,
                       const Vector& reset_values);

// out = D v + C
Vector affine_apply_serial(const Matrix& d, const Vector& c, const Vector& v);
Vector affine_apply(const Matrix& d, const Vector& c, const Vector& v);

}  // namespace kernels
}  // namespace qreset
