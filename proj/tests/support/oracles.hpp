#pragma once

// Test-only oracles. Everything here goes through dense (m n) x (m n)
// matrices built from first principles, independent of the library's
// FFT/face-wise code paths it is used to check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tprod/tensor.hpp"

namespace oracle {

using tprod::Complex;
using tprod::Matrix;
using tprod::Tensor3;

// Block circulant assembled entry by entry from the definition.
inline Matrix dense_bcirc(const Tensor3& t) {
  const int m = t.rows(), p = t.cols(), n = t.slices();
  Matrix b(m * n, p * n);
  for (int rb = 0; rb < n; ++rb)
    for (int cb = 0; cb < n; ++cb) {
      const int k = (rb - cb + n) % n;
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < m; ++i) b(rb * m + i, cb * p + j) = t(i, j, k);
    }
  return b;
}

inline std::vector<Complex> dense_eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// Eigenvalues of the materialized block circulant: the reference multiset for
// T-eigenvalues.
inline std::vector<Complex> bcirc_eigenvalues(const Tensor3& t) {
  return dense_eigenvalues(dense_bcirc(t));
}

// Normalized DFT Kronecker factor F_n kron I_m, materialized directly.
inline Matrix dft_kron(int n, int m) {
  Matrix f(n, n);
  const double step = -2.0 * std::numbers::pi / n;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      f(r, c) = std::polar(1.0 / std::sqrt(double(n)), step * double(r) * double(c));
  Matrix k = Matrix::Zero(n * m, n * m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      k.block(r * m, c * m, m, m) = f(r, c) * Matrix::Identity(m, m);
  return k;
}

// Diagonal blocks of (F kron I) bcirc(t) (F kron I)^H: the faces computed by
// dense conjugation instead of tube FFTs.
inline std::vector<Matrix> dense_faces(const Tensor3& t) {
  const int m = t.rows(), n = t.slices();
  const Matrix k = dft_kron(n, m);
  const Matrix d = k * dense_bcirc(t) * k.adjoint();
  std::vector<Matrix> faces;
  for (int i = 0; i < n; ++i) faces.push_back(d.block(i * m, i * m, m, m));
  return faces;
}

inline Matrix blockdiag(const std::vector<Matrix>& faces) {
  int total = 0;
  for (const Matrix& f : faces) total += static_cast<int>(f.rows());
  Matrix b = Matrix::Zero(total, total);
  int off = 0;
  for (const Matrix& f : faces) {
    b.block(off, off, f.rows(), f.cols()) = f;
    off += static_cast<int>(f.rows());
  }
  return b;
}

// Matrix exponential by plain Taylor summation; converges for any argument,
// accurate to ~1e-12 relative for moderate norms.
inline Matrix expm_series(const Matrix& a) {
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 200; ++k) {
    term = (term * a) / double(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  return sum;
}

}  // namespace oracle
