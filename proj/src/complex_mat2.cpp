#include "qotto/complex_mat2.hpp"

namespace qotto {

ComplexMat2 polar_unitary(const ComplexMat2& m) {
  // M = m^dag m is positive definite; sqrt(M) = (M + s I) / t with
  // s = sqrt(det M), t = sqrt(tr M + 2 s).
  const ComplexMat2 gram = m.adjoint() * m;
  const double s = std::sqrt(std::max(gram.det().real(), 0.0));
  const double t = std::sqrt(gram.trace().real() + 2.0 * s);
  const ComplexMat2 root = (gram + s * ComplexMat2::identity()) * (1.0 / t);
  const complex d = root.det();
  const ComplexMat2 inv_root{root.a[3] / d, -root.a[1] / d, -root.a[2] / d, root.a[0] / d};
  return m * inv_root;
}

}  // namespace qotto
