#include "factorlat/ground.hpp"

namespace factorlat {

namespace {

template <typename Scalar>
GroundSolve solve_impl(const ModelParams& params, const Lattice& lat,
                       const SolverConfig& cfg) {
  const std::int64_t dim = std::int64_t(1) << lat.n_sites();
  const auto diag = hamiltonian_diagonal(params, lat);
  std::function<void(const VecX<Scalar>&, VecX<Scalar>&)> apply =
      [&](const VecX<Scalar>& in, VecX<Scalar>& out) {
        apply_hamiltonian(params, lat, diag, in, out);
      };
  auto r = lanczos_ground<Scalar>(apply, dim, cfg);

  GroundSolve g;
  g.energy = r.energies[0];
  g.residual = r.residuals[0];
  g.iterations = r.iterations;
  if (cfg.k == 2) {
    g.gap = r.energies[1] - r.energies[0];
    g.degenerate = r.degenerate;
  }
  if constexpr (std::is_same_v<Scalar, double>)
    g.psi = r.vectors[0].template cast<std::complex<double>>();
  else
    g.psi = r.vectors[0];
  return g;
}

}  // namespace

GroundSolve solve_ground(const ModelParams& params, const Lattice& lat,
                         const SolverConfig& cfg) {
  if (params.is_real()) return solve_impl<double>(params, lat, cfg);
  return solve_impl<std::complex<double>>(params, lat, cfg);
}

}  // namespace factorlat
