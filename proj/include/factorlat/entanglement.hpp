#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "factorlat/lattice.hpp"
#include "factorlat/observables.hpp"

namespace factorlat {

enum class ConcurrenceBranch { zero, one, two };

struct Concurrence {
  double C = 0.0;
  ConcurrenceBranch branch = ConcurrenceBranch::zero;
  double c1 = 0.0;  // g_zz - 1/4 + |g_xx - g_yy|
  double c2 = 0.0;  // |g_xx + g_yy| - sqrt((1/4 + g_zz)^2 - Mz^2)
};

struct ShellConcurrence {
  double C = 0.0;
  int multiplicity = 1;  // partners per site in this shell
};

struct EntanglementReport {
  double tau1 = 0.0;                   // site-averaged one-tangle
  std::vector<Concurrence> C;          // per distance class
  std::vector<double> C_wootters;      // oracle value per class
  double tau2 = 0.0;
  std::optional<double> ratio;         // tau2 / tau1, absent when tau1 ~ 0
  bool ckw_satisfied = true;
  double ckw_margin = 0.0;             // tau1 - tau2
};

inline constexpr double kRatioTau1Threshold = 1e-8;

// One-tangle from per-site magnetization: 1 - 4 sum_a (M^a)^2.
double one_tangle(const Eigen::Vector3d& M_site);
// One-tangle as 4 det rho1; throws on non-PSD rho beyond 1e-9.
double one_tangle(const Eigen::MatrixXcd& rho1);
// Both routes, cross-checked to 1e-12.
double one_tangle_checked(const Eigen::MatrixXcd& rho1,
                          const Eigen::Vector3d& M_site);

// Symmetric-sector closed form, C = 2 max(0, C1, C2).
Concurrence concurrence_formula(const PairCorrelations& g, double Mz);

// Wootters construction from the two-site reduced density matrix.
double concurrence_wootters(const Eigen::Matrix4cd& rho2);

// tau2 = sum over shells of multiplicity * C^2. cutoff <= 0 sums every
// given shell (exact when the shells cover all pairs). A positive cutoff
// truncates to that many shells and requires C = 0 on the outermost included
// shell, throwing otherwise (cutoff too small).
double tau_two(const std::vector<ShellConcurrence>& shells, int cutoff = 0);

std::optional<double> entanglement_ratio(double tau1, double tau2);

// CKW monogamy check tau1 >= tau2; returns (satisfied, margin).
std::pair<bool, double> ckw_check(double tau1, double tau2);

// Full report for a normalized state: per-site one-tangle averaged,
// class-averaged concurrences with the Wootters oracle, exact tau2.
EntanglementReport compute_entanglement(const Eigen::VectorXcd& v,
                                        const Lattice& lat,
                                        const DistanceClasses& classes,
                                        const ObservableSet& obs);

}  // namespace factorlat
