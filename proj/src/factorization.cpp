#include "factorlat/factorization.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "factorlat/ground.hpp"

namespace factorlat {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Vector3d unit(double theta, double phi) {
  return {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta),
          std::cos(theta)};
}
}  // namespace

Eigen::Vector3d ProductAngles::n1() const { return unit(theta1, phi1); }
Eigen::Vector3d ProductAngles::n2() const { return unit(theta2, phi2); }

Eigen::Vector3d ellipsoid_field(double delta_y, double delta_z,
                                const Eigen::Vector3d& direction,
                                int coordination) {
  const double A = (1 + delta_y) * (1 + delta_z);
  const double B = (1 + delta_y) * (delta_y + delta_z);
  const double C = (1 + delta_z) * (delta_y + delta_z);
  if (A <= 0 || B <= 0 || C <= 0)
    throw std::invalid_argument("anisotropy pairwise sums must be positive");
  const double dn = direction.norm();
  if (dn == 0) throw std::invalid_argument("zero field direction");
  const Eigen::Vector3d u = direction / dn;
  const double q = u[0] * u[0] / A + u[1] * u[1] / B + u[2] * u[2] / C;
  const double s = 0.5 * coordination / std::sqrt(q);
  return s * u;
}

ProductAngles product_angles_xyx(double delta_y) {
  if (delta_y <= 0) throw std::invalid_argument("delta_y must be positive");
  ProductAngles a;
  if (delta_y < 1.0) {  // easy-plane, order along x
    a.theta1 = a.theta2 = std::acos(std::sqrt((1 + delta_y) / 2.0));
    a.phi1 = 0.0;
    a.phi2 = kPi;
  } else if (delta_y > 1.0) {  // easy-axis, order along y
    a.theta1 = a.theta2 = std::acos(std::sqrt(2.0 / (1 + delta_y)));
    a.phi1 = kPi / 2;
    a.phi2 = -kPi / 2;
  }  // delta_y == 1: polarized, theta = 0, phi irrelevant
  return a;
}

Eigen::VectorXcd product_state(const ProductAngles& angles,
                               const std::vector<int>& sublattice) {
  const int N = int(sublattice.size());
  if (N > kMaxSites) throw std::invalid_argument("site count above cap");
  const std::int64_t dim = std::int64_t(1) << N;
  using cplx = std::complex<double>;

  std::vector<std::array<cplx, 2>> spinor(N);  // [up, down]
  for (int s = 0; s < N; ++s) {
    const double th = sublattice[s] == 1 ? angles.theta1 : angles.theta2;
    const double ph = sublattice[s] == 1 ? angles.phi1 : angles.phi2;
    spinor[s] = {cplx(std::cos(th / 2), 0),
                 std::polar(std::sin(th / 2), ph)};
  }
  Eigen::VectorXcd v(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    cplx amp = 1.0;
    for (int s = 0; s < N; ++s) amp *= spinor[s][(b >> s) & 1 ? 0 : 1];
    v[b] = amp;
  }
  v.normalize();
  return v;
}

double factorized_energy(double delta_y, double delta_z, int coordination) {
  return -(1 + delta_y + delta_z) / 2.0 * coordination / 4.0;
}

double product_energy_per_site(const ModelParams& params,
                               const ProductAngles& angles, int coordination) {
  const Eigen::Vector3d n1 = angles.n1();
  const Eigen::Vector3d n2 = angles.n2();
  const double e_bond =
      0.25 * (n1[0] * n2[0] + params.delta_y * n1[1] * n2[1] +
              params.delta_z * n1[2] * n2[2]);
  double e = 0.5 * coordination * e_bond - 0.25 * params.field.dot(n1 + n2);
  if (params.pinning != 0.0) {
    const int a = int(params.pinning_axis());
    e -= 0.25 * params.pinning * (n1[a] - n2[a]);  // staggered pinning
  }
  return e;
}

FactorizationCertificate certify_factorization(const ModelParams& params,
                                               const Lattice& lat,
                                               const ProductAngles& angles,
                                               const SolverConfig& cfg) {
  const int N = lat.n_sites();
  FactorizationCertificate cert;
  cert.field = params.field;
  cert.angles = angles;

  const Eigen::VectorXcd psi = product_state(angles, lat.sublattice);
  const Eigen::VectorXcd hpsi = apply_hamiltonian(params, lat, psi);
  cert.energy = psi.dot(hpsi).real();
  cert.energy_per_site = cert.energy / N;
  cert.residual = (hpsi - cert.energy * psi).norm();

  const GroundSolve gs = solve_ground(params, lat, cfg);
  cert.ground_energy = gs.energy;
  cert.is_ground = std::abs(cert.energy - gs.energy) <= 1e-8 * N;
  cert.valid = cert.residual <= 1e-9 && cert.is_ground;
  return cert;
}

namespace {

// Nelder-Mead over (theta1, phi1, theta2, phi2); converges when the simplex
// diameter in angle space falls below `diam_tol`.
struct Simplex4 {
  using Point = Eigen::Vector4d;
  static constexpr int n = 4;

  template <typename F>
  static std::pair<Point, double> minimize(const F& f, Point x0, double step,
                                           double diam_tol, int max_evals,
                                           int& evals) {
    std::array<Point, n + 1> xs;
    std::array<double, n + 1> fs;
    xs[0] = x0;
    fs[0] = f(x0);
    ++evals;
    for (int i = 0; i < n; ++i) {
      xs[i + 1] = x0;
      xs[i + 1][i] += step;
      fs[i + 1] = f(xs[i + 1]);
      ++evals;
    }
    auto order = [&] {
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          if (fs[j] < fs[i]) {
            std::swap(fs[i], fs[j]);
            std::swap(xs[i], xs[j]);
          }
    };
    while (evals < max_evals) {
      order();
      double diam = 0;
      for (int i = 1; i <= n; ++i)
        diam = std::max(diam, (xs[i] - xs[0]).norm());
      if (diam < diam_tol) break;

      Point centroid = Point::Zero();
      for (int i = 0; i < n; ++i) centroid += xs[i];
      centroid /= n;

      const Point xr = centroid + (centroid - xs[n]);
      const double fr = f(xr);
      ++evals;
      if (fr < fs[0]) {
        const Point xe = centroid + 2.0 * (centroid - xs[n]);
        const double fe = f(xe);
        ++evals;
        if (fe < fr) {
          xs[n] = xe;
          fs[n] = fe;
        } else {
          xs[n] = xr;
          fs[n] = fr;
        }
      } else if (fr < fs[n - 1]) {
        xs[n] = xr;
        fs[n] = fr;
      } else {
        const Point xc = centroid + 0.5 * (xs[n] - centroid);
        const double fc = f(xc);
        ++evals;
        if (fc < fs[n]) {
          xs[n] = xc;
          fs[n] = fc;
        } else {
          for (int i = 1; i <= n; ++i) {
            xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
            fs[i] = f(xs[i]);
            ++evals;
          }
        }
      }
    }
    order();
    return {xs[0], fs[0]};
  }
};

double wrap_angle(double phi) {
  phi = std::fmod(phi + kPi, 2 * kPi);
  if (phi < 0) phi += 2 * kPi;
  phi -= kPi;
  return phi == -kPi ? kPi : phi;  // range (-pi, pi]
}

}  // namespace

VariationalResult variational_product_solve(const ModelParams& params,
                                            int coordination, int n_seeds,
                                            std::uint64_t seed) {
  if (n_seeds < 1) throw std::invalid_argument("need at least one seed");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uth(0.0, kPi);
  std::uniform_real_distribution<double> uph(-kPi, kPi);

  auto energy = [&](const Eigen::Vector4d& x) {
    ProductAngles a{x[0], x[1], x[2], x[3]};
    return product_energy_per_site(params, a, coordination);
  };

  VariationalResult best;
  best.energy_per_site = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_seeds; ++s) {
    Eigen::Vector4d x0{uth(rng), uph(rng), uth(rng), uph(rng)};
    int evals = 0;
    auto [x, fx] = Simplex4::minimize(energy, x0, 0.4, 1e-10, 20000, evals);
    best.evaluations += evals;
    if (fx < best.energy_per_site) {
      best.energy_per_site = fx;
      best.angles = {x[0], x[1], x[2], x[3]};
    }
  }
  if (!std::isfinite(best.energy_per_site))
    throw std::runtime_error("variational solve failed to converge");

  // Newton polish on the analytic gradient; the simplex alone leaves the
  // angles ~sqrt(eps) off, which is visible in the certification residual
  auto gradient = [&](const Eigen::Vector4d& x) {
    ProductAngles a{x[0], x[1], x[2], x[3]};
    const Eigen::Vector3d n1 = a.n1(), n2 = a.n2();
    const Eigen::Vector3d D{1.0, params.delta_y, params.delta_z};
    const double z = coordination;
    const int ax = int(params.pinning_axis());
    Eigen::Vector3d e_a = Eigen::Vector3d::Zero();
    e_a[ax] = 1.0;
    auto jac = [](double th, double ph) {
      Eigen::Matrix<double, 3, 2> J;
      J << std::cos(ph) * std::cos(th), -std::sin(ph) * std::sin(th),
           std::sin(ph) * std::cos(th),  std::cos(ph) * std::sin(th),
          -std::sin(th),                 0.0;
      return J;
    };
    const Eigen::Vector3d f1 =
        0.125 * z * D.cwiseProduct(n2) - 0.25 * params.field -
        0.25 * params.pinning * e_a;
    const Eigen::Vector3d f2 =
        0.125 * z * D.cwiseProduct(n1) - 0.25 * params.field +
        0.25 * params.pinning * e_a;
    Eigen::Vector4d g;
    g.head<2>() = jac(x[0], x[1]).transpose() * f1;
    g.tail<2>() = jac(x[2], x[3]).transpose() * f2;
    return g;
  };
  Eigen::Vector4d x{best.angles.theta1, best.angles.phi1, best.angles.theta2,
                    best.angles.phi2};
  for (int it = 0; it < 50; ++it) {
    const Eigen::Vector4d g = gradient(x);
    if (g.norm() < 1e-13) break;
    Eigen::Matrix4d H;  // Hessian from central differences of the gradient
    const double hstep = 1e-6;
    for (int c = 0; c < 4; ++c) {
      Eigen::Vector4d xp = x, xm = x;
      xp[c] += hstep;
      xm[c] -= hstep;
      H.col(c) = (gradient(xp) - gradient(xm)) / (2 * hstep);
    }
    H = 0.5 * (H + H.transpose()).eval();
    const Eigen::Vector4d dx = H.fullPivLu().solve(g);
    if (!dx.allFinite() || dx.norm() > 0.5) break;  // keep to the local basin
    x -= dx;
  }
  const double fx = energy(x);
  if (fx <= best.energy_per_site + 1e-12) {
    best.energy_per_site = std::min(fx, best.energy_per_site);
    best.angles = {x[0], x[1], x[2], x[3]};
  }

  // canonicalize: theta in [0, pi], phi in (-pi, pi]
  auto canon = [](double& theta, double& phi) {
    theta = std::fmod(theta, 2 * kPi);
    if (theta < 0) theta += 2 * kPi;
    if (theta > kPi) {
      theta = 2 * kPi - theta;
      phi += kPi;
    }
    phi = wrap_angle(phi);
  };
  canon(best.angles.theta1, best.angles.phi1);
  canon(best.angles.theta2, best.angles.phi2);
  return best;
}

}  // namespace factorlat
