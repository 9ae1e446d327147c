#include "factorlat/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace factorlat {

namespace {
using cplx = std::complex<double>;

std::int64_t dim_of(const Eigen::VectorXcd& v) { return v.size(); }

int sites_of(const Eigen::VectorXcd& v) {
  std::int64_t d = v.size();
  int n = 0;
  while ((std::int64_t(1) << n) < d) ++n;
  if ((std::int64_t(1) << n) != d)
    throw std::invalid_argument("state dimension is not a power of two");
  return n;
}
}  // namespace

void require_normalized(const Eigen::VectorXcd& v) {
  if (std::abs(v.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("state vector is not normalized");
}

double magnetization(const Eigen::VectorXcd& v, Axis axis, int site) {
  require_normalized(v);
  const std::int64_t dim = dim_of(v);
  const std::int64_t m = std::int64_t(1) << site;
  cplx acc = 0.0;
  switch (axis) {
    case Axis::z:
      for (std::int64_t b = 0; b < dim; ++b)
        acc += std::norm(v[b]) * ((b & m) ? 0.5 : -0.5);
      break;
    case Axis::x:
      for (std::int64_t b = 0; b < dim; ++b)
        acc += std::conj(v[b]) * v[b ^ m] * 0.5;
      break;
    case Axis::y:
      for (std::int64_t b = 0; b < dim; ++b) {
        const cplx c = (b & m) ? cplx(0, -0.5) : cplx(0, 0.5);
        acc += std::conj(v[b]) * c * v[b ^ m];
      }
      break;
  }
  return acc.real();
}

double magnetization_averaged(const Eigen::VectorXcd& v, Axis axis,
                              int n_sites) {
  double s = 0;
  for (int i = 0; i < n_sites; ++i) s += magnetization(v, axis, i);
  return s / n_sites;
}

double correlator(const Eigen::VectorXcd& v, int i, int j, Axis axis) {
  if (i == j)
    throw std::invalid_argument(
        "on-site correlator is identically 1/4; use distinct sites");
  require_normalized(v);
  const std::int64_t dim = dim_of(v);
  const std::int64_t mi = std::int64_t(1) << i;
  const std::int64_t mj = std::int64_t(1) << j;
  const std::int64_t mij = mi | mj;
  cplx acc = 0.0;
  switch (axis) {
    case Axis::z:
      for (std::int64_t b = 0; b < dim; ++b) {
        const bool eq = ((b & mi) != 0) == ((b & mj) != 0);
        acc += std::norm(v[b]) * (eq ? 0.25 : -0.25);
      }
      break;
    case Axis::x:
      for (std::int64_t b = 0; b < dim; ++b)
        acc += std::conj(v[b]) * v[b ^ mij] * 0.25;
      break;
    case Axis::y:
      for (std::int64_t b = 0; b < dim; ++b) {
        const bool eq = ((b & mi) != 0) == ((b & mj) != 0);
        acc += std::conj(v[b]) * v[b ^ mij] * (eq ? -0.25 : 0.25);
      }
      break;
  }
  return acc.real();
}

Eigen::MatrixXcd reduced_density_matrix(const Eigen::VectorXcd& v,
                                        const std::vector<int>& sites,
                                        int n_sites) {
  require_normalized(v);
  if (sites.empty() || sites.size() > 2)
    throw std::invalid_argument("reduced density matrix supports 1 or 2 sites");
  if (sites.size() == 2 && sites[0] == sites[1])
    throw std::invalid_argument("sites must be distinct");
  const std::int64_t dim = dim_of(v);
  (void)n_sites;

  if (sites.size() == 1) {
    const std::int64_t m = std::int64_t(1) << sites[0];
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    for (std::int64_t b = 0; b < dim; ++b) {
      const int r = (b & m) ? 0 : 1;  // 0 = up
      rho(r, r) += std::norm(v[b]);
      rho(r, 1 - r) += v[b] * std::conj(v[b ^ m]);
    }
    return rho;
  }

  const std::int64_t mi = std::int64_t(1) << sites[0];
  const std::int64_t mj = std::int64_t(1) << sites[1];
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  for (std::int64_t b = 0; b < dim; ++b) {
    const int r = ((b & mi) ? 0 : 2) + ((b & mj) ? 0 : 1);
    for (int c = 0; c < 4; ++c) {
      std::int64_t b2 = b;
      b2 = (c & 2) ? (b2 & ~mi) : (b2 | mi);
      b2 = (c & 1) ? (b2 & ~mj) : (b2 | mj);
      rho(r, c) += v[b] * std::conj(v[b2]);
    }
  }
  return rho;
}

double structure_factor_xx(const Eigen::VectorXcd& v, int n_sites) {
  require_normalized(v);
  const std::int64_t dim = dim_of(v);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
  for (int s = 0; s < n_sites; ++s) {
    const std::int64_t m = std::int64_t(1) << s;
    for (std::int64_t b = 0; b < dim; ++b) w[b] += 0.5 * v[b ^ m];
  }
  return w.squaredNorm() / n_sites;
}

ObservableSet compute_observables(const Eigen::VectorXcd& v, const Lattice& lat,
                                  const DistanceClasses& classes,
                                  int n_shells) {
  const int N = lat.n_sites();
  if (sites_of(v) != N)
    throw std::invalid_argument("state dimension does not match lattice");
  ObservableSet obs;
  obs.M_site.resize(N);
  for (int i = 0; i < N; ++i) {
    for (Axis a : {Axis::x, Axis::y, Axis::z})
      obs.M_site[i][int(a)] = magnetization(v, a, i);
    obs.M += obs.M_site[i];
  }
  obs.M /= N;

  const int k = n_shells > 0
                    ? std::min<int>(n_shells, int(classes.classes.size()))
                    : int(classes.classes.size());
  obs.g.resize(k);
  for (int c = 0; c < k; ++c) {
    const auto& cls = classes.classes[c];
    PairCorrelations acc;
    for (const auto& [i, j] : cls.pairs) {
      acc.gxx += correlator(v, i, j, Axis::x);
      acc.gyy += correlator(v, i, j, Axis::y);
      acc.gzz += correlator(v, i, j, Axis::z);
    }
    const double n = double(cls.pairs.size());
    obs.g[c] = {acc.gxx / n, acc.gyy / n, acc.gzz / n};
  }
  obs.Sxx0 = structure_factor_xx(v, N);
  return obs;
}

}  // namespace factorlat
