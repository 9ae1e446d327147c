#include "factorlat/model.hpp"

#include <bit>

namespace factorlat {

std::vector<double> hamiltonian_diagonal(const ModelParams& params,
                                         const Lattice& lat) {
  const int N = lat.n_sites();
  if (N > kMaxSites) throw std::invalid_argument("site count above cap");
  const std::int64_t dim = std::int64_t(1) << N;
  const double hz = params.field[2];
  const double dz4 = params.delta_z / 4.0;

  std::vector<double> diag(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    double d = -hz * (double(std::popcount(std::uint64_t(b))) - 0.5 * N);
    for (const auto& bond : lat.bonds) {
      const bool eq = (((b >> bond.i) ^ (b >> bond.j)) & 1) == 0;
      d += eq ? dz4 : -dz4;
    }
    diag[b] = d;
  }
  return diag;
}

Eigen::MatrixXcd dense_matrix(const ModelParams& params, const Lattice& lat) {
  const int N = lat.n_sites();
  if (N > kDenseMaxSites)
    throw std::invalid_argument("dense_matrix refused: N > 12");
  const std::int64_t dim = std::int64_t(1) << N;
  Eigen::MatrixXcd H(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), col(dim);
  auto diag = hamiltonian_diagonal(params, lat);
  for (std::int64_t c = 0; c < dim; ++c) {
    e[c] = 1.0;
    apply_hamiltonian(params, lat, diag, e, col);
    H.col(c) = col;
    e[c] = 0.0;
  }
  return H;
}

Eigen::VectorXcd canonical_transform(const Eigen::VectorXcd& v,
                                     const std::vector<int>& sublattice) {
  const int N = int(sublattice.size());
  const std::int64_t dim = std::int64_t(1) << N;
  if (v.size() != dim)
    throw std::invalid_argument("state vector dimension mismatch");
  std::uint64_t sub2 = 0;
  for (int s = 0; s < N; ++s)
    if (sublattice[s] == 2) sub2 |= std::uint64_t(1) << s;
  Eigen::VectorXcd out(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    // eigenvalue of prod_{i in sub2} (2 Sz_i): (-1)^(# down spins on sub2)
    const int down = std::popcount(~std::uint64_t(b) & sub2);
    out[b] = (down & 1) ? -v[b] : v[b];
  }
  return out;
}

}  // namespace factorlat
