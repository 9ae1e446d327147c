#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "factorlat/model.hpp"

using namespace factorlat;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

namespace {

// Pauli matrices in local basis order (down, up): kron index 1 = spin up,
// matching the library's bit = 1 <-> up convention.
MatrixXcd pauli(int a) {
  MatrixXcd m(2, 2);
  switch (a) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, cplx(0, 1), cplx(0, -1), 0; break;
    default: m << -1, 0, 0, 1; break;
  }
  return m;
}

// S^a on site `s` of N sites, independent construction: site 0 is the least
// significant bit, local index 0 = spin up, matching the library convention.
MatrixXcd site_op(int a, int s, int N) {
  MatrixXcd op = MatrixXcd::Identity(1, 1);
  for (int q = N - 1; q >= 0; --q) {
    const MatrixXcd f =
        q == s ? (0.5 * pauli(a)).eval() : MatrixXcd::Identity(2, 2).eval();
    op = Eigen::kroneckerProduct(op, f).eval();
  }
  return op;
}

MatrixXcd reference_matrix(const ModelParams& p, const Lattice& lat) {
  const int N = lat.n_sites();
  const std::int64_t dim = std::int64_t(1) << N;
  MatrixXcd H = MatrixXcd::Zero(dim, dim);
  for (const auto& b : lat.bonds)
    H += site_op(0, b.i, N) * site_op(0, b.j, N) +
         p.delta_y * site_op(1, b.i, N) * site_op(1, b.j, N) +
         p.delta_z * site_op(2, b.i, N) * site_op(2, b.j, N);
  for (int s = 0; s < N; ++s)
    for (int a = 0; a < 3; ++a)
      if (p.field[a] != 0.0) H -= p.field[a] * site_op(a, s, N);
  if (p.pinning != 0.0) {
    const int a = int(p.pinning_axis());
    for (int s = 0; s < N; ++s)
      H -= p.pinning * (lat.sublattice[s] == 1 ? 1.0 : -1.0) *
           site_op(a, s, N);
  }
  return H;
}

}  // namespace

TEST_CASE("dense matrix matches independent Kronecker construction") {
  Lattice chain = build_lattice({1, 4, 1, Boundary::periodic});
  Lattice open5 = build_lattice({1, 5, 1, Boundary::open});
  std::vector<std::pair<Lattice, ModelParams>> cases;
  cases.push_back({chain, ModelParams{0.25, 1.0, {0.3, 0.0, 1.1}, 0.0}});
  cases.push_back({chain, ModelParams{4.0, 0.7, {0.0, 0.5, 0.2}, 0.0}});
  cases.push_back({chain, ModelParams{0.5, 1.0, {0.0, 0.0, 1.0}, 0.05}});
  cases.push_back({chain, ModelParams{2.0, 1.0, {0.0, 0.0, 1.0}, 0.05}});
  cases.push_back({open5, ModelParams{0.8, 1.3, {0.1, 0.2, 0.3}, 0.02}});
  for (const auto& [lat, p] : cases) {
    const MatrixXcd H = dense_matrix(p, lat);
    const MatrixXcd R = reference_matrix(p, lat);
    CHECK((H - R).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("apply is Hermitian and linear") {
  Lattice lat = build_lattice({1, 6, 1, Boundary::periodic});
  ModelParams p{0.25, 1.0, {0.2, 0.4, 1.3}, 0.0};
  const std::int64_t dim = 64;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  VectorXcd x(dim), y(dim);
  for (auto* v : {&x, &y})
    for (std::int64_t i = 0; i < dim; ++i) (*v)[i] = cplx(u(rng), u(rng));
  const VectorXcd Hx = apply_hamiltonian(p, lat, x);
  const VectorXcd Hy = apply_hamiltonian(p, lat, y);
  CHECK(std::abs(y.dot(Hx) - std::conj(x.dot(Hy))) < 1e-12);
  const cplx a(0.3, -0.8), b(1.2, 0.1);
  const VectorXcd Hax = apply_hamiltonian(p, lat, (a * x + b * y).eval());
  CHECK((Hax - a * Hx - b * Hy).norm() < 1e-12);
}

TEST_CASE("real fast path agrees with the complex path") {
  Lattice lat = build_lattice({1, 8, 1, Boundary::periodic});
  ModelParams p{0.25, 1.0, {0.4, 0.0, 1.2}, 0.03};
  REQUIRE(p.is_real());
  const std::int64_t dim = 256;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd xr(dim);
  for (std::int64_t i = 0; i < dim; ++i) xr[i] = u(rng);
  const Eigen::VectorXd Hr = apply_hamiltonian(p, lat, xr);
  const VectorXcd Hc = apply_hamiltonian(p, lat, VectorXcd(xr.cast<cplx>()));
  CHECK((Hc - Hr.cast<cplx>()).norm() < 1e-13);
}

TEST_CASE("real fast path refuses complex Hamiltonians") {
  Lattice lat = build_lattice({1, 4, 1, Boundary::periodic});
  ModelParams p{0.25, 1.0, {0.0, 0.5, 0.0}, 0.0};
  Eigen::VectorXd x = Eigen::VectorXd::Ones(16);
  CHECK_FALSE(p.is_real());
  CHECK_THROWS_AS(apply_hamiltonian(p, lat, x), std::invalid_argument);
  // y-pinning (easy-axis regime) is complex too
  ModelParams q{2.0, 1.0, {0.0, 0.0, 1.0}, 0.1};
  CHECK_FALSE(q.is_real());
}

TEST_CASE("diagonal matches dense matrix diagonal") {
  Lattice lat = build_lattice({1, 6, 1, Boundary::periodic});
  ModelParams p{0.7, 1.4, {0.0, 0.0, 0.9}, 0.0};
  const auto diag = hamiltonian_diagonal(p, lat);
  const MatrixXcd H = dense_matrix(p, lat);
  for (std::int64_t b = 0; b < 64; ++b)
    CHECK(std::abs(H(b, b) - diag[b]) < 1e-14);
}

TEST_CASE("canonical transform is involutive and spectrum-preserving") {
  Lattice lat = build_lattice({1, 6, 1, Boundary::periodic});
  ModelParams p{0.25, 1.0, {0.0, 0.0, 1.0}, 0.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  VectorXcd x(64);
  for (int i = 0; i < 64; ++i) x[i] = cplx(u(rng), u(rng));

  const VectorXcd ux = canonical_transform(x, lat.sublattice);
  CHECK((canonical_transform(ux, lat.sublattice) - x).norm() < 1e-14);
  CHECK(ux.norm() == doctest::Approx(x.norm()));

  // U H U = H' where H' has the xy-bond signs flipped; energies match
  ModelParams pf = p;  // transformed couplings: x,y -> -x,-y on bonds
  const MatrixXcd H = dense_matrix(p, lat);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  // build U H U column by column and diagonalize
  MatrixXcd UHU(64, 64);
  for (int c = 0; c < 64; ++c) {
    VectorXcd e = VectorXcd::Zero(64);
    e[c] = 1.0;
    UHU.col(c) = canonical_transform(
        VectorXcd(H * canonical_transform(e, lat.sublattice)), lat.sublattice);
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es2(UHU);
  CHECK((es.eigenvalues() - es2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-11);
  (void)pf;
}

TEST_CASE("site count above cap rejected") {
  LatticeSpec s{2, 5, 5, Boundary::open};
  Lattice lat = build_lattice(s);
  ModelParams p;
  VectorXcd x(1);
  CHECK_THROWS_AS(apply_hamiltonian(p, lat, x), std::invalid_argument);
  CHECK_THROWS_AS(dense_matrix(p, build_lattice({2, 4, 4, Boundary::open})),
                  std::invalid_argument);  // dense oracle cap is lower
}
