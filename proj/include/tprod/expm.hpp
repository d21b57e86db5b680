#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "tprod/tensor.hpp"

namespace tprod {
namespace detail {

// Pade approximants of exp at 0, degrees 3/5/7/9/13, split into the odd part
// U and even part V so that exp(A) ~ (V - U)^-1 (V + U).
inline void pade3(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
  static const double b[] = {120., 60., 12., 1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  u.noalias() = a * (b[3] * a2 + b[1] * i);
  v = b[2] * a2 + b[0] * i;
}

inline void pade5(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
  static const double b[] = {30240., 15120., 3360., 420., 30., 1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a4 = a2 * a2;
  u.noalias() = a * (b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[4] * a4 + b[2] * a2 + b[0] * i;
}

inline void pade7(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
  static const double b[] = {17297280., 8648640., 1995840., 277200.,
                             25200.,    1512.,    56.,      1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  u.noalias() = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
}

inline void pade9(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
  static const double b[] = {17643225600., 8821612800., 2075673600., 302702400.,
                             30270240.,    2162160.,    110880.,     3960.,
                             90.,          1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix a8 = a6 * a2;
  u.noalias() = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
}

inline void pade13(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  u.noalias() = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                     b[5] * a4 + b[3] * a2 + b[1] * i);
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
      b[2] * a2 + b[0] * i;
}

}  // namespace detail

// Matrix exponential by scaling and squaring with Pade approximants
// (Higham 2005 degree selection on the 1-norm).
inline Matrix matrix_exp(const Matrix& a) {
  const double nrm = a.cwiseAbs().colwise().sum().maxCoeff();
  const Matrix a2 = a * a;
  Matrix u, v;
  int squarings = 0;
  if (nrm < 1.495585217958292e-2) {
    detail::pade3(a, a2, u, v);
  } else if (nrm < 2.539398330063230e-1) {
    detail::pade5(a, a2, u, v);
  } else if (nrm < 9.504178996162932e-1) {
    detail::pade7(a, a2, u, v);
  } else if (nrm < 2.097847961257068e0) {
    detail::pade9(a, a2, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(
                                std::log2(nrm / 5.371920351148152))));
    const double scale = std::pow(2.0, -squarings);
    const Matrix as = scale * a;
    const Matrix as2 = (scale * scale) * a2;
    detail::pade13(as, as2, u, v);
  }
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace tprod
