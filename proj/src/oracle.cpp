#include "qreset/oracle.hpp"

#include <bit>
#include <cmath>

namespace qreset {

namespace {

constexpr int kMaxSites = 12;

void check_size(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("fock: need at least one site");
  if (n_sites > kMaxSites)
    throw resource_limit_error("fock: Fock space capped at 12 sites");
}

// Parity of occupied sites below `site` (the Jordan-Wigner string).
double jw_sign(unsigned basis, int site) {
  const unsigned below = basis & ((1u << site) - 1u);
  return std::popcount(below) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

Matrix fock_hamiltonian(const QuadraticModel& model) {
  check_size(model.n_sites);
  if (model.statistics != Statistics::Fermionic)
    throw std::invalid_argument("fock_hamiltonian: fermionic models only");
  const unsigned dim = 1u << model.n_sites;
  Matrix h = Matrix::Zero(dim, dim);
  for (unsigned b = 0; b < dim; ++b) {
    for (int beta = 0; beta < model.n_sites; ++beta) {
      if (!(b >> beta & 1u)) continue;
      const double sign_annihilate = jw_sign(b, beta);
      const unsigned b1 = b ^ (1u << beta);
      for (int alpha = 0; alpha < model.n_sites; ++alpha) {
        if (b1 >> alpha & 1u) continue;
        const Complex amplitude = model.coupling(alpha, beta);
        if (amplitude == Complex(0.0, 0.0)) continue;
        const unsigned b2 = b1 | (1u << alpha);
        h(b2, b) += amplitude * sign_annihilate * jw_sign(b1, alpha);
      }
    }
  }
  return h;
}

Matrix fock_two_point(const FockState& state) {
  check_size(state.n_sites);
  const unsigned dim = 1u << state.n_sites;
  if (state.amplitudes.size() != static_cast<Eigen::Index>(dim))
    throw std::invalid_argument("fock_two_point: amplitude length mismatch");
  Matrix rho = Matrix::Zero(state.n_sites, state.n_sites);
  for (unsigned b = 0; b < dim; ++b) {
    const Complex amp = state.amplitudes(b);
    if (amp == Complex(0.0, 0.0)) continue;
    for (int beta = 0; beta < state.n_sites; ++beta) {
      if (!(b >> beta & 1u)) continue;
      const double sign_annihilate = jw_sign(b, beta);
      const unsigned b1 = b ^ (1u << beta);
      for (int alpha = 0; alpha < state.n_sites; ++alpha) {
        if (b1 >> alpha & 1u) continue;
        const unsigned b2 = b1 | (1u << alpha);
        rho(alpha, beta) += std::conj(state.amplitudes(b2)) * amp *
                            sign_annihilate * jw_sign(b1, alpha);
      }
    }
  }
  return rho;
}

FockState fock_evolve(const FockState& state, const QuadraticModel& model,
                      double t) {
  check_size(model.n_sites);
  if (state.n_sites != model.n_sites)
    throw std::invalid_argument("fock_evolve: site count mismatch");
  const Matrix h = fock_hamiltonian(model);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error("fock_evolve: eigensolver failed");
  const unsigned dim = 1u << model.n_sites;
  Vector phases(dim);
  for (unsigned k = 0; k < dim; ++k)
    phases(k) = std::exp(Complex(0.0, -solver.eigenvalues()(k) * t));
  FockState out;
  out.n_sites = state.n_sites;
  out.amplitudes = solver.eigenvectors() *
                   (phases.asDiagonal() *
                    (solver.eigenvectors().adjoint() * state.amplitudes));
  return out;
}

FockState fock_product_state(int n_sites, const std::vector<int>& occupied) {
  check_size(n_sites);
  unsigned index = 0;
  for (int site : occupied) {
    if (site < 0 || site >= n_sites)
      throw std::invalid_argument("fock_product_state: site out of range");
    if (index >> site & 1u)
      throw std::invalid_argument("fock_product_state: duplicate site");
    index |= 1u << site;
  }
  FockState state;
  state.n_sites = n_sites;
  state.amplitudes = Vector::Zero(1u << n_sites);
  state.amplitudes(index) = Complex(1.0, 0.0);
  return state;
}

}  // namespace qreset
