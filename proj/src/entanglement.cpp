#include "factorlat/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace factorlat {

namespace {

void require_psd(const Eigen::MatrixXcd& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

}  // namespace

double one_tangle(const Eigen::Vector3d& M_site) {
  return 1.0 - 4.0 * M_site.squaredNorm();
}

double one_tangle(const Eigen::MatrixXcd& rho1) {
  if (rho1.rows() != 2 || rho1.cols() != 2)
    throw std::invalid_argument("one_tangle expects a 2x2 density matrix");
  require_psd(rho1, 1e-9);
  return 4.0 * rho1.determinant().real();
}

double one_tangle_checked(const Eigen::MatrixXcd& rho1,
                          const Eigen::Vector3d& M_site) {
  const double det_form = one_tangle(rho1);
  const double mag_form = one_tangle(M_site);
  if (std::abs(det_form - mag_form) > 1e-12)
    throw std::runtime_error("one-tangle dual-formula disagreement");
  return det_form;
}

Concurrence concurrence_formula(const PairCorrelations& g, double Mz) {
  for (double x : {g.gxx, g.gyy, g.gzz})
    if (std::abs(x) > 0.25 + 1e-9)
      throw std::invalid_argument("correlator outside [-1/4, 1/4]");
  double radicand = (0.25 + g.gzz) * (0.25 + g.gzz) - Mz * Mz;
  if (radicand < -1e-12)
    throw std::invalid_argument("negative radicand: inconsistent inputs");
  radicand = std::max(0.0, radicand);

  Concurrence c;
  c.c1 = g.gzz - 0.25 + std::abs(g.gxx - g.gyy);
  c.c2 = std::abs(g.gxx + g.gyy) - std::sqrt(radicand);
  const double m = std::max({0.0, c.c1, c.c2});
  c.C = 2.0 * m;
  if (m == 0.0)
    c.branch = ConcurrenceBranch::zero;
  else
    c.branch = (c.c1 >= c.c2) ? ConcurrenceBranch::one : ConcurrenceBranch::two;
  return c;
}

double concurrence_wootters(const Eigen::Matrix4cd& rho2) {
  require_psd(rho2, 1e-9);
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y in the basis |up up>, |up dn>, |dn up>, |dn dn>
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const Eigen::Matrix4cd R = rho2 * yy * rho2.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(R);
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i)
    lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double tau_two(const std::vector<ShellConcurrence>& shells, int cutoff) {
  int k = int(shells.size());
  if (cutoff > 0 && cutoff <= k) {
    if (std::abs(shells[cutoff - 1].C) > 1e-10)
      throw std::invalid_argument(
          "concurrence nonzero at the cutoff shell: cutoff too small");
    k = cutoff;
  }
  double t = 0.0;
  for (int s = 0; s < k; ++s)
    t += shells[s].multiplicity * shells[s].C * shells[s].C;
  return t;
}

std::optional<double> entanglement_ratio(double tau1, double tau2) {
  if (tau1 < kRatioTau1Threshold) return std::nullopt;
  return tau2 / tau1;
}

std::pair<bool, double> ckw_check(double tau1, double tau2) {
  const double margin = tau1 - tau2;
  return {margin >= -1e-9, margin};
}

EntanglementReport compute_entanglement(const Eigen::VectorXcd& v,
                                        const Lattice& lat,
                                        const DistanceClasses& classes,
                                        const ObservableSet& obs) {
  const int N = lat.n_sites();
  EntanglementReport rep;

  double tau1_sum = 0.0;
  for (int i = 0; i < N; ++i) {
    const Eigen::MatrixXcd rho1 = reduced_density_matrix(v, {i}, N);
    tau1_sum += one_tangle_checked(rho1, obs.M_site[i]);
  }
  rep.tau1 = tau1_sum / N;

  const int k = int(obs.g.size());
  std::vector<ShellConcurrence> shells(k);
  for (int c = 0; c < k; ++c) {
    const auto& cls = classes.classes[c];
    rep.C.push_back(concurrence_formula(obs.g[c], obs.M[2]));

    double cw = 0.0;
    for (const auto& [i, j] : cls.pairs) {
      const Eigen::Matrix4cd rho2 = reduced_density_matrix(v, {i, j}, N);
      cw += concurrence_wootters(rho2);
    }
    rep.C_wootters.push_back(cw / double(cls.pairs.size()));

    shells[c] = {rep.C[c].C, cls.per_site_multiplicity};
  }
  // truncated shell lists go through the cutoff guard
  rep.tau2 = k < int(classes.classes.size()) ? tau_two(shells, k) : tau_two(shells);
  rep.ratio = entanglement_ratio(rep.tau1, rep.tau2);
  std::tie(rep.ckw_satisfied, rep.ckw_margin) = ckw_check(rep.tau1, rep.tau2);
  return rep;
}

}  // namespace factorlat
