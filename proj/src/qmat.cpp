#include "qbell/qmat.hpp"

namespace qbell {

SignedSvd3 svd3(const Eigen::Matrix3d& m, const Tolerances& tol) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SignedSvd3 out;
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.values = svd.singularValues();  // nonnegative, descending
  if (out.u.determinant() < 0.0) {
    out.u.col(2) = -out.u.col(2);
    out.values(2) = -out.values(2);
  }
  if (out.v.determinant() < 0.0) {
    out.v.col(2) = -out.v.col(2);
    out.values(2) = -out.values(2);
  }

  // Canonical order inside exact magnitude ties: triples whose rank-1 term
  // has a positive dominant entry come first. That sign is invariant under
  // the (t, u, v) internal sign shuffle, unlike the signed value itself.
  // Simultaneous column permutations of u and v leave the reconstruction
  // unchanged; an odd permutation flips both determinants, which a joint
  // third-column negation restores.
  const auto gauge = [&](int k) {
    int iu = 0, iv = 0;
    out.u.col(k).cwiseAbs().maxCoeff(&iu);
    out.v.col(k).cwiseAbs().maxCoeff(&iv);
    return out.values(k) * out.u(iu, k) * out.v(iv, k) < 0.0 ? -1 : 1;
  };
  const double tie_eps = 1e-14 * std::max(1.0, std::abs(out.values(0)));
  int swaps = 0;
  const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 1}};
  for (const auto& p : pairs) {
    const int i = p[0], j = p[1];
    if (std::abs(out.values(i)) - std::abs(out.values(j)) <= tie_eps &&
        gauge(i) < gauge(j)) {
      std::swap(out.values(i), out.values(j));
      out.u.col(i).swap(out.u.col(j));
      out.v.col(i).swap(out.v.col(j));
      ++swaps;
    }
  }
  if (swaps % 2 == 1) {
    out.u.col(2) = -out.u.col(2);
    out.v.col(2) = -out.v.col(2);
  }

  const Eigen::Vector3d mag = out.values.cwiseAbs();
  out.degenerate = (mag(0) - mag(1) < tol.compare_tol) ||
                   (mag(1) - mag(2) < tol.compare_tol);
  return out;
}

}  // namespace qbell
