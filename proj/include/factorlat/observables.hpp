#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "factorlat/lattice.hpp"
#include "factorlat/model.hpp"

namespace factorlat {

struct PairCorrelations {
  double gxx = 0, gyy = 0, gzz = 0;
};

// Site-averaged magnetizations, class-averaged correlators, and the q=0
// transverse structure factor.
struct ObservableSet {
  Eigen::Vector3d M = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> M_site;          // per site
  std::vector<PairCorrelations> g;              // per distance class
  double Sxx0 = 0.0;
};

// Throws if |norm(v) - 1| > 1e-8.
void require_normalized(const Eigen::VectorXcd& v);

double magnetization(const Eigen::VectorXcd& v, Axis axis, int site);
double magnetization_averaged(const Eigen::VectorXcd& v, Axis axis, int n_sites);

// <S^a_i S^a_j>, i != j.
double correlator(const Eigen::VectorXcd& v, int i, int j, Axis axis);

// Partial trace onto 1 or 2 sites. Local basis index 0 = spin up;
// for two sites the index is 2*idx(first) + idx(second).
Eigen::MatrixXcd reduced_density_matrix(const Eigen::VectorXcd& v,
                                        const std::vector<int>& sites,
                                        int n_sites);

// S_xx(q=0) = (1/N) sum_ij g^xx_ij, on-site terms included.
double structure_factor_xx(const Eigen::VectorXcd& v, int n_sites);

// Full observable set; correlators averaged over each distance class.
// n_shells = 0 computes every class.
ObservableSet compute_observables(const Eigen::VectorXcd& v, const Lattice& lat,
                                  const DistanceClasses& classes,
                                  int n_shells = 0);

}  // namespace factorlat
