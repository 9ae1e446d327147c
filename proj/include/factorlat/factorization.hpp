#pragma once

#include <Eigen/Dense>
#include <vector>

#include "factorlat/eigensolver.hpp"
#include "factorlat/lattice.hpp"
#include "factorlat/model.hpp"

namespace factorlat {

// Two-sublattice product ansatz: spin on sublattice I points along
// n_I = (cos phi_I sin theta_I, sin phi_I sin theta_I, cos theta_I).
struct ProductAngles {
  double theta1 = 0, phi1 = 0;
  double theta2 = 0, phi2 = 0;

  Eigen::Vector3d n1() const;
  Eigen::Vector3d n2() const;
};

struct FactorizationCertificate {
  Eigen::Vector3d field = Eigen::Vector3d::Zero();
  ProductAngles angles;
  double energy = 0.0;            // Rayleigh quotient <psi|H|psi>
  double energy_per_site = 0.0;
  double residual = 0.0;          // ||H psi - E psi||
  double ground_energy = 0.0;     // Lanczos E0
  bool is_ground = false;         // |E - E0| <= 1e-8 * N
  bool valid = false;             // residual <= 1e-9 and is_ground
};

// Field of magnitude s along `direction` such that the product ground state
// is exact, with s^2 (ux^2/A + uy^2/B + uz^2/C) = (z/2)^2 for coordination z:
// A = (1+dy)(1+dz), B = (1+dy)(dy+dz), C = (1+dz)(dy+dz). z = 4 reproduces
// the square-lattice ellipsoid; z = 2 is the chain.
Eigen::Vector3d ellipsoid_field(double delta_y, double delta_z,
                                const Eigen::Vector3d& direction,
                                int coordination = 4);

// Closed-form angles for the XYX model (dz = 1) with the field along z at
// the factorizing field. Easy-plane (dy < 1): phi = (0, pi),
// cos theta = sqrt((1+dy)/2). Easy-axis (dy > 1): phi = (pi/2, -pi/2),
// cos theta = sqrt(2/(1+dy)). dy = 1: polarized, theta = 0.
ProductAngles product_angles_xyx(double delta_y);

// Normalized tensor product of per-sublattice spinors
// (cos(theta/2), e^{i phi} sin(theta/2)).
Eigen::VectorXcd product_state(const ProductAngles& angles,
                               const std::vector<int>& sublattice);

// Energy per site of the factorized state: -(1+dy+dz)/2 * z/4.
double factorized_energy(double delta_y, double delta_z, int coordination = 4);

// Per-site energy of the two-sublattice product ansatz, closed form per bond
// (no 2^N vector involved).
double product_energy_per_site(const ModelParams& params,
                               const ProductAngles& angles, int coordination);

FactorizationCertificate certify_factorization(const ModelParams& params,
                                               const Lattice& lat,
                                               const ProductAngles& angles,
                                               const SolverConfig& cfg = {});

struct VariationalResult {
  ProductAngles angles;
  double energy_per_site = 0.0;
  int evaluations = 0;
};

// Minimizes the closed-form product energy over the 4 angles by Nelder-Mead
// with `n_seeds` seeded random restarts. N-independent.
VariationalResult variational_product_solve(const ModelParams& params,
                                            int coordination,
                                            int n_seeds = 16,
                                            std::uint64_t seed = 1);

}  // namespace factorlat
