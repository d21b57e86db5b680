#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <lapacke.h>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tprod/tensor.hpp"

namespace tprod {

namespace detail {

// Forward DFT of length n with convention w = exp(-2*pi*i/n):
//   out[k] = sum_j in[j] * w^(j*k).
// Direct O(n^2) evaluation; the recursive transform below bottoms out here
// for prime lengths.
inline void dft_direct(const Complex* in, Complex* out, int n, int in_stride = 1) {
  const double step = -2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    Complex acc(0, 0);
    for (int j = 0; j < n; ++j)
      acc += in[static_cast<std::size_t>(j) * in_stride] *
             std::polar(1.0, step * ((static_cast<long long>(j) * k) % n));
    out[k] = acc;
  }
}

inline int smallest_prime_factor(int n) {
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// Mixed-radix Cooley-Tukey; splits on the smallest prime factor and falls
// back to the direct DFT at prime lengths.
inline void fft_recursive(const Complex* in, Complex* out, int n, int in_stride) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const int p = smallest_prime_factor(n);
  if (p == n) {
    dft_direct(in, out, n, in_stride);
    return;
  }
  const int m = n / p;
  std::vector<Complex> sub(static_cast<std::size_t>(n));
  for (int r = 0; r < p; ++r)
    fft_recursive(in + static_cast<std::size_t>(r) * in_stride,
                  sub.data() + static_cast<std::size_t>(r) * m, m, in_stride * p);
  const double step = -2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    Complex acc(0, 0);
    for (int r = 0; r < p; ++r)
      acc += std::polar(1.0, step * ((static_cast<long long>(r) * k) % n)) *
             sub[static_cast<std::size_t>(r) * m + k % m];
    out[k] = acc;
  }
}

inline void fft_forward(const Complex* in, Complex* out, int n, int in_stride = 1) {
  fft_recursive(in, out, n, in_stride);
}

// Inverse transform: out[k] = (1/n) sum_j in[j] * w^(-j*k).
inline void fft_inverse(const Complex* in, Complex* out, int n, int in_stride = 1) {
  std::vector<Complex> tmp(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    tmp[j] = std::conj(in[static_cast<std::size_t>(j) * in_stride]);
  std::vector<Complex> hat(static_cast<std::size_t>(n));
  fft_recursive(tmp.data(), hat.data(), n, 1);
  for (int k = 0; k < n; ++k) out[k] = std::conj(hat[k]) / static_cast<double>(n);
}

}  // namespace detail

// The n DFT-transformed frontal faces of a tensor. Conjugating bcirc(t) by the
// unitary (F_n kron I_m) block-diagonalizes it, and the diagonal blocks are
// exactly these faces: face j = sum_k A_k w^(j*k), w = exp(-2*pi*i/n).
class FaceSet {
 public:
  FaceSet(int rows, int cols, int count)
      : rows_(rows), cols_(cols),
        faces_(static_cast<std::size_t>(count), Matrix::Zero(rows, cols)) {
    if (rows < 1 || cols < 1 || count < 1)
      throw dimension_error("FaceSet: dimensions must be >= 1");
  }
  explicit FaceSet(std::vector<Matrix> faces) : faces_(std::move(faces)) {
    if (faces_.empty()) throw dimension_error("FaceSet: no faces given");
    rows_ = static_cast<int>(faces_[0].rows());
    cols_ = static_cast<int>(faces_[0].cols());
    for (const Matrix& f : faces_)
      if (f.rows() != rows_ || f.cols() != cols_)
        throw dimension_error("FaceSet: inconsistent face shapes");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int count() const { return static_cast<int>(faces_.size()); }

  Matrix& face(int i) { return faces_[static_cast<std::size_t>(i)]; }
  const Matrix& face(int i) const { return faces_[static_cast<std::size_t>(i)]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Matrix> faces_;
};

// DFT along the third mode; one transform per (i,j) tube.
inline FaceSet to_faces(const Tensor3& t) {
  const int m = t.rows(), p = t.cols(), n = t.slices();
  FaceSet f(m, p, n);
  std::vector<Complex> hat(static_cast<std::size_t>(n));
  const int tube_stride = m * p;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < m; ++i) {
      detail::fft_forward(&t(i, j, 0), hat.data(), n, tube_stride);
      for (int k = 0; k < n; ++k) f.face(k)(i, j) = hat[k];
    }
  return f;
}

inline Tensor3 from_faces(const FaceSet& f) {
  const int m = f.rows(), p = f.cols(), n = f.count();
  Tensor3 t(m, p, n);
  std::vector<Complex> tube(static_cast<std::size_t>(n));
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < n; ++k) tube[k] = f.face(k)(i, j);
      detail::fft_inverse(tube.data(), out.data(), n, 1);
      for (int k = 0; k < n; ++k) t(i, j, k) = out[k];
    }
  return t;
}

// Applies `op` to every face independently, preserving order. Failures are
// rethrown annotated with the face index.
template <typename Op>
FaceSet face_map(const FaceSet& f, Op&& op) {
  std::vector<Matrix> mapped;
  mapped.reserve(static_cast<std::size_t>(f.count()));
  for (int i = 0; i < f.count(); ++i) {
    try {
      mapped.push_back(op(f.face(i)));
    } catch (const std::exception& e) {
      throw std::runtime_error("face_map: op failed at face " + std::to_string(i) +
                               ": " + e.what());
    }
  }
  return FaceSet(std::move(mapped));
}

namespace detail {

// Singular values in descending order via LAPACK (values only, no vectors);
// far cheaper than a Jacobi SVD and accurate enough for norms, ranks and
// resolvent quantities. The argument is taken by value since zgesvd destroys
// its input.
inline Eigen::VectorXd singular_values(Matrix a) {
  const int m = static_cast<int>(a.rows()), p = static_cast<int>(a.cols());
  const int k = std::min(m, p);
  Eigen::VectorXd s(k);
  if (k == 0) return s;
  std::vector<double> superb(static_cast<std::size_t>(std::max(1, k - 1)));
  const int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'N', 'N', m, p,
      reinterpret_cast<lapack_complex_double*>(a.data()), m, s.data(), nullptr,
      1, nullptr, 1, superb.data());
  if (info != 0)
    throw std::runtime_error("singular_values: zgesvd failed with info = " +
                             std::to_string(info));
  return s;
}

inline double sigma_max(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return singular_values(a)(0);
}

inline double sigma_min(const Matrix& a) {
  const Eigen::VectorXd sv = singular_values(a);
  return sv(sv.size() - 1);
}

// Operator / Frobenius norm of blockdiag(faces); block structure makes every
// selector reducible to a per-face computation.
inline double blockdiag_norm(const FaceSet& f, Norm p) {
  double v = 0;
  switch (p) {
    case Norm::two:
      for (int i = 0; i < f.count(); ++i) v = std::max(v, sigma_max(f.face(i)));
      return v;
    case Norm::fro:
      for (int i = 0; i < f.count(); ++i) v += f.face(i).squaredNorm();
      return std::sqrt(v);
    case Norm::one:
      for (int i = 0; i < f.count(); ++i)
        v = std::max(v, f.face(i).cwiseAbs().colwise().sum().maxCoeff());
      return v;
    case Norm::inf:
      for (int i = 0; i < f.count(); ++i)
        v = std::max(v, f.face(i).cwiseAbs().rowwise().sum().maxCoeff());
      return v;
  }
  return v;
}

}  // namespace detail

// ||t||_p = ||bcirc(t)||_p. The 2-norm and Frobenius norm are evaluated in the
// transform domain (the conjugation is unitary); 1- and inf-norms are read off
// the materialized block circulant, which costs O((mn)*(pn)) memory.
inline double tensor_norm(const Tensor3& t, Norm p) {
  switch (p) {
    case Norm::two:
      return detail::blockdiag_norm(to_faces(t), Norm::two);
    case Norm::fro:
      return std::sqrt(static_cast<double>(t.slices())) * t.frobenius_norm();
    case Norm::one:
      return bcirc(t).matrix.cwiseAbs().colwise().sum().maxCoeff();
    case Norm::inf:
      return bcirc(t).matrix.cwiseAbs().rowwise().sum().maxCoeff();
  }
  return 0;
}

// Face-wise inverse in the transform domain: O(n*m^3) instead of O((mn)^3).
// Reports the face with the smallest sigma_min when the tensor is singular.
inline Tensor3 t_inverse(const Tensor3& t) {
  detail::require_square_slices(t, "t_inverse");
  const FaceSet f = to_faces(t);
  double smax = 0, smin = std::numeric_limits<double>::infinity();
  int worst_face = 0;
  for (int i = 0; i < f.count(); ++i) {
    const Eigen::VectorXd sv = detail::singular_values(f.face(i));
    smax = std::max(smax, sv(0));
    if (sv(sv.size() - 1) < smin) {
      smin = sv(sv.size() - 1);
      worst_face = i;
    }
  }
  if (smin <= 1e-13 * std::max(1.0, smax))
    throw singular_tensor_error(
        worst_face, smin,
        "t_inverse: transformed face " + std::to_string(worst_face) +
            " is numerically singular (sigma_min = " + std::to_string(smin) + ")");
  return from_faces(face_map(f, [](const Matrix& a) { return Matrix(a.inverse()); }));
}

}  // namespace tprod
