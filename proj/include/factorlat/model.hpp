#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "factorlat/lattice.hpp"

namespace factorlat {

inline constexpr int kMaxSites = 24;        // 2^24 amplitudes, desk-scale cap
inline constexpr int kDenseMaxSites = 12;   // dense oracle memory guard

enum class Axis { x = 0, y = 1, z = 2 };

// XYZ model in reduced units (J = 1):
//   H = sum_<ij> [ Sx Sx + dy Sy Sy + dz Sz Sz ] - sum_i h.S_i
//       - eps * sum_i (-1)^{sublattice(i)-1} S^a_i
// in the original antiferromagnetic frame. The pinning term is staggered so
// that it couples to the (staggered) order parameter: a = x for dy <= 1,
// a = y for dy > 1.
struct ModelParams {
  double delta_y = 1.0;
  double delta_z = 1.0;
  Eigen::Vector3d field = Eigen::Vector3d::Zero();
  double pinning = 0.0;

  Axis pinning_axis() const { return delta_y > 1.0 ? Axis::y : Axis::x; }

  // true when the Hamiltonian is real in the Sz product basis
  bool is_real() const {
    if (field[1] != 0.0) return false;
    if (pinning != 0.0 && pinning_axis() == Axis::y) return false;
    return true;
  }
};

enum class Frame { original, transformed };

namespace detail {

// coefficient of <b| -h_y Sy_i |b ^ mask_i>: bit set in b -> -i/2, else +i/2
inline std::complex<double> sy_coeff(bool bit_up) {
  return bit_up ? std::complex<double>(0.0, -0.5)
                : std::complex<double>(0.0, 0.5);
}

template <typename Scalar>
struct SyTerm;

template <>
struct SyTerm<std::complex<double>> {
  static std::complex<double> coeff(bool bit_up, double strength) {
    return -strength * sy_coeff(bit_up);
  }
};

}  // namespace detail

// Diagonal of H in the Sz product basis, precomputed once per (params, lattice).
std::vector<double> hamiltonian_diagonal(const ModelParams& params,
                                         const Lattice& lat);

// out = H * in, gather form: out[b] collects from b and the states reachable
// by one bond double-flip or one single-site flip. Scalar is double (valid
// only when params.is_real()) or std::complex<double>.
template <typename Scalar>
void apply_hamiltonian(const ModelParams& params, const Lattice& lat,
                       const std::vector<double>& diag,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& in,
                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out);

// Convenience overload that recomputes the diagonal.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_hamiltonian(
    const ModelParams& params, const Lattice& lat,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& in) {
  auto diag = hamiltonian_diagonal(params, lat);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(in.size());
  apply_hamiltonian(params, lat, diag, in, out);
  return out;
}

// Full 2^N x 2^N matrix, oracle use only. Refuses N > kDenseMaxSites.
Eigen::MatrixXcd dense_matrix(const ModelParams& params, const Lattice& lat);

// Sublattice rotation U = prod_{i in sublattice 2} (2 Sz_i): flips the sign
// of S^{x,y} on sublattice 2. Involutive.
Eigen::VectorXcd canonical_transform(const Eigen::VectorXcd& v,
                                     const std::vector<int>& sublattice);

// --- template implementation -------------------------------------------------

template <typename Scalar>
void apply_hamiltonian(const ModelParams& params, const Lattice& lat,
                       const std::vector<double>& diag,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& in,
                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out) {
  const int N = lat.n_sites();
  if (N > kMaxSites) throw std::invalid_argument("site count above cap");
  const std::int64_t dim = std::int64_t(1) << N;
  if (in.size() != dim || std::int64_t(diag.size()) != dim)
    throw std::invalid_argument("state vector dimension mismatch");
  if constexpr (!std::is_same_v<Scalar, std::complex<double>>) {
    if (!params.is_real())
      throw std::invalid_argument(
          "real fast path requires h_y = 0 and x-axis pinning");
  }
  out.resize(dim);

  const double cy_eq = (1.0 - params.delta_y) / 4.0;   // equal bits
  const double cy_ne = (1.0 + params.delta_y) / 4.0;   // differing bits
  const double hx = params.field[0];
  const double hy = params.field[1];
  const double eps = params.pinning;
  const bool pin_x = eps != 0.0 && params.pinning_axis() == Axis::x;
  const bool pin_y = eps != 0.0 && params.pinning_axis() == Axis::y;

  const int n_bonds = int(lat.bonds.size());
  std::vector<std::int64_t> bond_mask(n_bonds);
  std::vector<std::int64_t> mask_i(n_bonds);
  for (int k = 0; k < n_bonds; ++k) {
    mask_i[k] = std::int64_t(1) << lat.bonds[k].i;
    bond_mask[k] = mask_i[k] | (std::int64_t(1) << lat.bonds[k].j);
  }
  std::vector<double> stagger(N);
  for (int s = 0; s < N; ++s) stagger[s] = lat.sublattice[s] == 1 ? 1.0 : -1.0;

  for (std::int64_t b = 0; b < dim; ++b) {
    Scalar acc = Scalar(diag[b]) * in[b];
    for (int k = 0; k < n_bonds; ++k) {
      const bool eq = ((b & mask_i[k]) != 0) ==
                      ((b & bond_mask[k] & ~mask_i[k]) != 0);
      acc += Scalar(eq ? cy_eq : cy_ne) * in[b ^ bond_mask[k]];
    }
    if (hx != 0.0 || pin_x) {
      for (int s = 0; s < N; ++s) {
        const double c = -0.5 * (hx + (pin_x ? eps * stagger[s] : 0.0));
        if (c != 0.0) acc += Scalar(c) * in[b ^ (std::int64_t(1) << s)];
      }
    }
    if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
      if (hy != 0.0 || pin_y) {
        for (int s = 0; s < N; ++s) {
          const double strength = hy + (pin_y ? eps * stagger[s] : 0.0);
          if (strength == 0.0) continue;
          const bool up = (b >> s) & 1;
          acc += detail::SyTerm<Scalar>::coeff(up, strength) *
                 in[b ^ (std::int64_t(1) << s)];
        }
      }
    }
    out[b] = acc;
  }
}

}  // namespace factorlat
