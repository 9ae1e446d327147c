#include "factorlat/eigensolver.hpp"

namespace factorlat {

EigenResult<std::complex<double>> dense_ground(const Eigen::MatrixXcd& H,
                                               int k) {
  if (H.rows() > (1 << 12))
    throw std::invalid_argument("dense_ground refused: N > 12");
  if (k < 1 || k > int(H.rows()))
    throw std::invalid_argument("invalid eigenpair count");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  EigenResult<std::complex<double>> r;
  for (int p = 0; p < k; ++p) {
    r.energies.push_back(es.eigenvalues()[p]);
    Eigen::VectorXcd v = es.eigenvectors().col(p);
    r.residuals.push_back((H * v - es.eigenvalues()[p] * v).norm());
    r.vectors.push_back(std::move(v));
  }
  if (k >= 2)
    r.degenerate = r.energies[1] - r.energies[0] < 1e-8;
  return r;
}

}  // namespace factorlat
