#include <doctest.h>

#include <random>

#include "factorlat/entanglement.hpp"
#include "factorlat/factorization.hpp"
#include "factorlat/ground.hpp"
#include "factorlat/observables.hpp"

using namespace factorlat;
using Eigen::Vector3d;

TEST_CASE("ellipsoid membership for 100 random parameter triples") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ud(0.1, 4.0);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double dy = ud(rng), dz = ud(rng);
    Vector3d dir{uc(rng), uc(rng), uc(rng)};
    if (dir.norm() < 1e-3) dir = {0, 0, 1};
    const Vector3d h = ellipsoid_field(dy, dz, dir, 4);
    const double A = (1 + dy) * (1 + dz);
    const double B = (1 + dy) * (dy + dz);
    const double C = (1 + dz) * (dy + dz);
    const double lhs = h[0] * h[0] / A + h[1] * h[1] / B + h[2] * h[2] / C;
    CHECK(std::abs(lhs - 4.0) < 1e-12);
  }
}

TEST_CASE("ellipsoid field magnitudes for the XYX model along z") {
  CHECK(ellipsoid_field(0.25, 1.0, {0, 0, 1}, 4).norm() ==
        doctest::Approx(3.1622776601683795).epsilon(1e-12));
  CHECK(ellipsoid_field(4.0, 1.0, {0, 0, 1}, 4).norm() ==
        doctest::Approx(6.324555320336759).epsilon(1e-12));
  CHECK(ellipsoid_field(1.0, 1.0, {0.3, -0.5, 0.2}, 4).norm() ==
        doctest::Approx(4.0).epsilon(1e-12));
  // chain scaling: coordination 2 halves the field
  CHECK(ellipsoid_field(0.25, 1.0, {0, 0, 1}, 2).norm() ==
        doctest::Approx(3.1622776601683795 / 2).epsilon(1e-12));
  CHECK_THROWS_AS(ellipsoid_field(0.25, 1.0, {0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ellipsoid_field(-0.5, 0.2, {0, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("closed-form XYX angles") {
  ProductAngles ep = product_angles_xyx(0.25);
  CHECK(ep.theta1 == doctest::Approx(0.6590580358).epsilon(1e-9));
  CHECK(ep.theta2 == doctest::Approx(ep.theta1));
  CHECK(ep.phi1 == doctest::Approx(0.0));
  CHECK(ep.phi2 == doctest::Approx(M_PI));

  ProductAngles ea = product_angles_xyx(4.0);
  CHECK(ea.theta1 == doctest::Approx(0.8860771238).epsilon(1e-9));
  CHECK(ea.phi1 == doctest::Approx(M_PI / 2));
  CHECK(ea.phi2 == doctest::Approx(-M_PI / 2));

  ProductAngles iso = product_angles_xyx(1.0);
  CHECK(iso.theta1 == doctest::Approx(0.0));
  CHECK_THROWS_AS(product_angles_xyx(0.0), std::invalid_argument);
}

TEST_CASE("product states of extremal angles are basis states") {
  std::vector<int> sub{1, 2, 1, 2};
  Eigen::VectorXcd up = product_state({0, 0, 0, 0}, sub);
  CHECK(std::abs(up[15]) == doctest::Approx(1.0));
  Eigen::VectorXcd down = product_state({M_PI, 0, M_PI, 0}, sub);
  CHECK(std::abs(down[0]) == doctest::Approx(1.0));
}

TEST_CASE("any product state has zero one-tangle") {
  Lattice lat = build_lattice({1, 6, 1, Boundary::periodic});
  Eigen::VectorXcd psi = product_state({1.1, 0.3, 2.0, -2.5}, lat.sublattice);
  for (int s = 0; s < 6; ++s) {
    const Eigen::MatrixXcd rho = reduced_density_matrix(psi, {s}, 6);
    CHECK(one_tangle(rho) < 1e-14);
  }
}

TEST_CASE("chain certification at the coordination-scaled field") {
  Lattice lat = build_lattice({1, 10, 1, Boundary::periodic});
  for (double dy : {0.25, 4.0, 1.0}) {
    ModelParams p;
    p.delta_y = dy;
    p.field = ellipsoid_field(dy, 1.0, {0, 0, 1}, 2);
    FactorizationCertificate cert =
        certify_factorization(p, lat, product_angles_xyx(dy));
    CHECK(cert.residual < 1e-10);
    CHECK(cert.is_ground);
    CHECK(cert.valid);
    CHECK(cert.energy_per_site ==
          doctest::Approx(factorized_energy(dy, 1.0, 2)).epsilon(1e-10));
  }
}

TEST_CASE("off-ellipsoid field does not certify") {
  Lattice lat = build_lattice({1, 10, 1, Boundary::periodic});
  ModelParams p;
  p.delta_y = 0.25;
  p.field = 1.05 * ellipsoid_field(0.25, 1.0, {0, 0, 1}, 2);
  FactorizationCertificate cert =
      certify_factorization(p, lat, product_angles_xyx(0.25));
  CHECK(cert.residual > 1e-6);
  CHECK_FALSE(cert.valid);
  // variational dominance off the ellipsoid: ED ground is strictly lower
  CHECK(cert.ground_energy < cert.energy - 1e-10);
}

TEST_CASE("closed-form product energy equals the Rayleigh quotient") {
  Lattice lat = build_lattice({1, 8, 1, Boundary::periodic});
  ModelParams p{0.7, 1.3, {0.2, 0.1, 0.8}, 0.04};
  ProductAngles a{0.9, 0.4, 2.1, -1.3};
  Eigen::VectorXcd psi = product_state(a, lat.sublattice);
  const Eigen::VectorXcd hpsi = apply_hamiltonian(p, lat, psi);
  CHECK(psi.dot(hpsi).real() / 8 ==
        doctest::Approx(product_energy_per_site(p, a, 2)).epsilon(1e-12));
}

TEST_CASE("variational solve recovers the closed-form XYX optimum") {
  ModelParams p;
  p.delta_y = 0.25;
  p.field = ellipsoid_field(0.25, 1.0, {0, 0, 1}, 4);
  VariationalResult r = variational_product_solve(p, 4);
  CHECK(r.energy_per_site ==
        doctest::Approx(factorized_energy(0.25, 1.0, 4)).epsilon(1e-8));
  ProductAngles ref = product_angles_xyx(0.25);
  // sublattice labels may swap; compare as a set
  const bool direct = std::abs(r.angles.theta1 - ref.theta1) < 1e-5 &&
                      std::abs(std::abs(r.angles.phi1 - r.angles.phi2) - M_PI) <
                          1e-5;
  CHECK(direct);
}

TEST_CASE("variational energy on a general ellipsoid point certifies") {
  ModelParams p;
  p.delta_y = 0.5;
  p.delta_z = 0.8;
  p.field = ellipsoid_field(0.5, 0.8, Vector3d{1, 1, 1}.normalized(), 2);
  VariationalResult r = variational_product_solve(p, 2);
  CHECK(r.energy_per_site ==
        doctest::Approx(factorized_energy(0.5, 0.8, 2)).epsilon(1e-8));
  Lattice lat = build_lattice({1, 8, 1, Boundary::periodic});
  FactorizationCertificate cert = certify_factorization(p, lat, r.angles);
  CHECK(cert.valid);
}

TEST_CASE("mirror-degenerate product state certifies at the same energy") {
  Lattice lat = build_lattice({1, 10, 1, Boundary::periodic});
  ModelParams p;
  p.delta_y = 0.25;
  p.field = ellipsoid_field(0.25, 1.0, {0, 0, 1}, 2);
  ProductAngles a = product_angles_xyx(0.25);
  ProductAngles mirror{a.theta1, a.phi1 + M_PI, a.theta2, a.phi2 + M_PI};
  FactorizationCertificate c1 = certify_factorization(p, lat, a);
  FactorizationCertificate c2 = certify_factorization(p, lat, mirror);
  CHECK(c1.valid);
  CHECK(c2.valid);
  CHECK(c1.energy == doctest::Approx(c2.energy).epsilon(1e-12));
}
