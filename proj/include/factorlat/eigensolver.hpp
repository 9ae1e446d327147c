#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace factorlat {

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct SolverConfig {
  double tolerance = 1e-10;  // residual bound ||Hv - Ev||
  int max_iterations = 500;  // matvec budget per eigenpair
  std::uint64_t seed = 1;
  int k = 1;  // 1 or 2
  int basis_window = 80;  // restart window (memory bound)
};

struct ConvergenceError : std::runtime_error {
  double best_residual;
  explicit ConvergenceError(double r)
      : std::runtime_error("eigensolver did not converge, best residual " +
                           std::to_string(r)),
        best_residual(r) {}
};

template <typename Scalar>
struct EigenResult {
  std::vector<double> energies;          // ascending
  std::vector<VecX<Scalar>> vectors;     // unit norm, mutually orthogonal
  std::vector<double> residuals;         // ||Hv - Ev|| per pair
  int iterations = 0;                    // total matvecs
  bool degenerate = false;               // gap below 100 * tolerance
};

namespace detail {

template <typename Scalar>
VecX<Scalar> random_start(std::int64_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VecX<Scalar> v(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    if constexpr (std::is_same_v<Scalar, std::complex<double>>)
      v[i] = Scalar(u(rng), u(rng));
    else
      v[i] = u(rng);
  }
  return v;
}

// Lowest eigenpair of the restriction of A to the orthogonal complement of
// `deflate`, via restarted Rayleigh-Ritz with full reorthogonalization.
// Equivalent to thick-restart Lanczos; the projected matrix is maintained
// explicitly so restarts are exact.
template <typename Scalar>
void lowest_pair(const std::function<void(const VecX<Scalar>&, VecX<Scalar>&)>& apply,
                 std::int64_t dim, const SolverConfig& cfg,
                 const std::vector<VecX<Scalar>>& deflate, std::mt19937_64& rng,
                 double& energy, VecX<Scalar>& vector, double& residual,
                 int& iterations) {
  const int m = int(std::min<std::int64_t>(std::max(cfg.basis_window, 4),
                                           dim - std::int64_t(deflate.size())));
  const int keep = std::min(4, m - 1);

  MatX<Scalar> V(dim, m);
  MatX<Scalar> M = MatX<Scalar>::Zero(m, m);
  VecX<Scalar> w(dim), ax(dim);

  auto project_out = [&](VecX<Scalar>& x) {
    for (const auto& d : deflate) x -= d * d.dot(x);
  };

  VecX<Scalar> v0 = random_start<Scalar>(dim, rng);
  project_out(v0);
  v0.normalize();
  V.col(0) = v0;

  int j = 0;  // index of the basis column being processed
  double scale = 0.0;
  double best_res = std::numeric_limits<double>::infinity();
  double best_energy = 0.0;
  VecX<Scalar> best_x;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    apply(V.col(j), w);
    ++iterations;
    project_out(w);
    scale = std::max(scale, w.norm());

    auto Vj = V.leftCols(j + 1);
    VecX<Scalar> c = Vj.adjoint() * w;
    M.col(j).head(j + 1) = c;
    M.row(j).head(j + 1) = c.conjugate();
    w.noalias() -= Vj * c;
    VecX<Scalar> c2 = Vj.adjoint() * w;  // second reorthogonalization pass
    w.noalias() -= Vj * c2;
    const double beta = w.norm();

    Eigen::SelfAdjointEigenSolver<MatX<Scalar>> es(
        M.topLeftCorner(j + 1, j + 1));
    const VecX<Scalar> s = es.eigenvectors().col(0);
    const double est = beta * std::abs(s[j]);

    const bool breakdown = beta <= 1e-13 * std::max(scale, 1.0);
    const bool window_full = (j + 1 == m);
    const bool space_exhausted =
        j + 1 + std::int64_t(deflate.size()) >= dim;
    const bool last_iter = iter + 1 == cfg.max_iterations;

    if (est <= 0.5 * cfg.tolerance || window_full || breakdown ||
        space_exhausted || last_iter) {
      VecX<Scalar> x = V.leftCols(j + 1) * s;
      x.normalize();
      apply(x, ax);
      ++iterations;
      project_out(ax);
      const double rq = std::real(Scalar(x.dot(ax)));
      const double res = (ax - rq * x).norm();
      if (res < best_res) {
        best_res = res;
        best_energy = rq;
        best_x = std::move(x);
      }
      if (best_res <= cfg.tolerance || space_exhausted) {
        energy = best_energy;
        vector = best_x;
        residual = best_res;
        return;
      }
      if (last_iter) break;
      if (window_full || breakdown) {
        // thick restart: keep the lowest Ritz vectors, continue with the
        // orthogonalized remainder (or a fresh random direction on breakdown)
        const int l = std::min(keep, j + 1);
        MatX<Scalar> Y = V.leftCols(j + 1) * es.eigenvectors().leftCols(l);
        V.leftCols(l) = Y;
        M.setZero();
        for (int i = 0; i < l; ++i) M(i, i) = es.eigenvalues()[i];
        if (!breakdown) {
          V.col(l) = w / beta;
        } else {
          VecX<Scalar> r = random_start<Scalar>(dim, rng);
          project_out(r);
          r.noalias() -= V.leftCols(l) * (V.leftCols(l).adjoint() * r).eval();
          r.normalize();
          V.col(l) = r;
        }
        j = l;
        continue;
      }
    }
    V.col(j + 1) = w / beta;
    ++j;
  }
  throw ConvergenceError(best_res);
}

}  // namespace detail

// Lowest cfg.k eigenpairs of the Hermitian operator `apply` of dimension dim.
// k = 2 is obtained by deflating the converged ground vector.
template <typename Scalar>
EigenResult<Scalar> lanczos_ground(
    const std::function<void(const VecX<Scalar>&, VecX<Scalar>&)>& apply,
    std::int64_t dim, const SolverConfig& cfg) {
  if (cfg.tolerance <= 0) throw std::invalid_argument("tolerance must be > 0");
  if (cfg.k != 1 && cfg.k != 2) throw std::invalid_argument("k must be 1 or 2");
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");

  EigenResult<Scalar> result;
  std::mt19937_64 rng(cfg.seed);
  std::vector<VecX<Scalar>> deflate;
  for (int p = 0; p < cfg.k; ++p) {
    double energy = 0, residual = 0;
    VecX<Scalar> vec;
    detail::lowest_pair<Scalar>(apply, dim, cfg, deflate, rng, energy, vec,
                                residual, result.iterations);
    result.energies.push_back(energy);
    result.vectors.push_back(vec);
    result.residuals.push_back(residual);
    deflate.push_back(std::move(vec));
  }
  if (cfg.k == 2) {
    if (result.energies[1] < result.energies[0]) {
      std::swap(result.energies[0], result.energies[1]);
      std::swap(result.vectors[0], result.vectors[1]);
      std::swap(result.residuals[0], result.residuals[1]);
    }
    result.degenerate =
        result.energies[1] - result.energies[0] < 100.0 * cfg.tolerance;
  }
  return result;
}

// Full-spectrum dense solve, oracle for small N.
EigenResult<std::complex<double>> dense_ground(const Eigen::MatrixXcd& H,
                                               int k);

struct GapResult {
  double gap = 0.0;       // E1 - E0, clamped at 0
  bool degenerate = false;
  double e0 = 0.0;
  double e1 = 0.0;
};

template <typename Scalar>
GapResult energy_gap(
    const std::function<void(const VecX<Scalar>&, VecX<Scalar>&)>& apply,
    std::int64_t dim, SolverConfig cfg) {
  cfg.k = 2;
  auto r = lanczos_ground<Scalar>(apply, dim, cfg);
  GapResult g;
  g.e0 = r.energies[0];
  g.e1 = r.energies[1];
  g.gap = std::max(0.0, g.e1 - g.e0);
  g.degenerate = r.degenerate;
  return g;
}

}  // namespace factorlat
