#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "tprod/errors.hpp"

namespace tprod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Norm selector shared by tensor, pseudospectra and perturbation routines.
// `fro` is the Frobenius norm of the block circulant; the rest are the usual
// operator norms of the block circulant.
enum class Norm { one, two, inf, fro };

// Dense third-order complex tensor. Frontal slice k (0-based) is the m x p
// matrix obtained by fixing the last index. Storage is slice-major,
// column-major within each slice: index(i,j,k) = k*m*p + j*m + i, so every
// frontal slice is a contiguous column-major block and the unfold of an
// m x 1 x n tensor is its raw data vector.
class Tensor3 {
 public:
  Tensor3() = default;

  Tensor3(int rows, int cols, int slices)
      : rows_(rows), cols_(cols), slices_(slices) {
    if (rows < 1 || cols < 1 || slices < 1)
      throw dimension_error("Tensor3: dimensions must be >= 1, got " +
                            shape_string(rows, cols, slices));
    data_.assign(static_cast<std::size_t>(rows) * cols * slices, Complex(0, 0));
  }

  static Tensor3 zero(int rows, int cols, int slices) {
    return Tensor3(rows, cols, slices);
  }

  static Tensor3 from_slices(const std::vector<Matrix>& slices) {
    if (slices.empty()) throw dimension_error("from_slices: no slices given");
    Tensor3 t(static_cast<int>(slices[0].rows()),
              static_cast<int>(slices[0].cols()),
              static_cast<int>(slices.size()));
    for (int k = 0; k < t.slices_; ++k) {
      if (slices[k].rows() != t.rows_ || slices[k].cols() != t.cols_)
        throw dimension_error("from_slices: slice " + std::to_string(k) +
                              " has inconsistent shape");
      t.slice(k) = slices[k];
    }
    return t;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int slices() const { return slices_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Complex& operator()(int i, int j, int k) const {
    return data_[index(i, j, k)];
  }

  Eigen::Map<Matrix> slice(int k) {
    return {data_.data() + static_cast<std::size_t>(k) * rows_ * cols_, rows_, cols_};
  }
  Eigen::Map<const Matrix> slice(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * rows_ * cols_, rows_, cols_};
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }

  bool same_shape(const Tensor3& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && slices_ == o.slices_;
  }

  // Entrywise Frobenius norm of the tensor itself (not of its bcirc).
  double frobenius_norm() const {
    double s = 0;
    for (const Complex& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  Tensor3& operator+=(const Tensor3& o) {
    require_same_shape(o, "+=");
    for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += o.data_[q];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    require_same_shape(o, "-=");
    for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= o.data_[q];
    return *this;
  }
  Tensor3& operator*=(Complex c) {
    for (Complex& v : data_) v *= c;
    return *this;
  }

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Complex c, Tensor3 t) { return t *= c; }
  friend Tensor3 operator*(Tensor3 t, Complex c) { return t *= c; }
  friend Tensor3 operator-(Tensor3 t) { return t *= Complex(-1, 0); }

  static std::string shape_string(int m, int p, int n) {
    return std::to_string(m) + "x" + std::to_string(p) + "x" + std::to_string(n);
  }
  std::string shape_string() const { return shape_string(rows_, cols_, slices_); }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * cols_ + j) * rows_ + i;
  }
  void require_same_shape(const Tensor3& o, const char* op) const {
    if (!same_shape(o))
      throw dimension_error(std::string("Tensor3 ") + op + ": shape mismatch " +
                            shape_string() + " vs " + o.shape_string());
  }

  int rows_ = 0, cols_ = 0, slices_ = 0;
  std::vector<Complex> data_;
};

// Identity tensor: first frontal slice is I_m, the rest are zero.
inline Tensor3 identity_tensor(int m, int n) {
  Tensor3 t(m, m, n);
  t.slice(0) = Matrix::Identity(m, m);
  return t;
}

// Vertical stack of the frontal slices, (m*n) x p.
inline Matrix unfold(const Tensor3& t) {
  Matrix s(static_cast<Eigen::Index>(t.rows()) * t.slices(), t.cols());
  for (int k = 0; k < t.slices(); ++k)
    s.middleRows(static_cast<Eigen::Index>(k) * t.rows(), t.rows()) = t.slice(k);
  return s;
}

// Inverse of unfold; the row count must be divisible by the slice count.
inline Tensor3 fold(const Matrix& stacked, int slices) {
  if (slices < 1 || stacked.rows() % slices != 0)
    throw dimension_error("fold: row count " + std::to_string(stacked.rows()) +
                          " not divisible by slice count " + std::to_string(slices));
  const int m = static_cast<int>(stacked.rows()) / slices;
  Tensor3 t(m, static_cast<int>(stacked.cols()), slices);
  for (int k = 0; k < slices; ++k)
    t.slice(k) = stacked.middleRows(static_cast<Eigen::Index>(k) * m, m);
  return t;
}

// Block circulant matrix assembled from the frontal slices: block (r,c) is
// slice (r-c) mod n. Size (m*n) x (p*n).
struct BlockCirculant {
  Tensor3 base;
  Matrix matrix;
};

inline BlockCirculant bcirc(const Tensor3& t) {
  const int m = t.rows(), p = t.cols(), n = t.slices();
  Matrix b(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(p) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      b.block(static_cast<Eigen::Index>(r) * m, static_cast<Eigen::Index>(c) * p,
              m, p) = t.slice((r - c + n) % n);
  return {t, std::move(b)};
}

// t-product: fold(bcirc(a) * unfold(b)), computed as the circular convolution
// of the frontal slices so that no (mn) x (pn) matrix is materialized.
inline Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
  if (a.cols() != b.rows() || a.slices() != b.slices())
    throw dimension_error("tprod: incompatible shapes " + a.shape_string() +
                          " and " + b.shape_string());
  const int n = a.slices();
  Tensor3 c(a.rows(), b.cols(), n);
  for (int k = 0; k < n; ++k) {
    auto ck = c.slice(k);
    for (int j = 0; j < n; ++j) ck.noalias() += a.slice(j) * b.slice((k - j + n) % n);
  }
  return c;
}

// Transpose each frontal slice, then reverse the order of slices 2..n.
inline Tensor3 transpose(const Tensor3& t) {
  const int n = t.slices();
  Tensor3 r(t.cols(), t.rows(), n);
  r.slice(0) = t.slice(0).transpose();
  for (int k = 1; k < n; ++k) r.slice(k) = t.slice(n - k).transpose();
  return r;
}

inline Tensor3 conj_transpose(const Tensor3& t) {
  const int n = t.slices();
  Tensor3 r(t.cols(), t.rows(), n);
  r.slice(0) = t.slice(0).adjoint();
  for (int k = 1; k < n; ++k) r.slice(k) = t.slice(n - k).adjoint();
  return r;
}

namespace detail {
// Default absolute tolerance for structural predicates; `tol < 0` selects it.
inline double predicate_tol(const Tensor3& t, double tol) {
  return tol >= 0 ? tol : 1e-10 * std::max(1.0, t.frobenius_norm());
}
inline void require_square_slices(const Tensor3& t, const char* who) {
  if (t.rows() != t.cols())
    throw dimension_error(std::string(who) + ": frontal slices must be square, got " +
                          t.shape_string());
}
}  // namespace detail

// A = A^H, equivalently bcirc(A) Hermitian.
inline bool is_hermitian(const Tensor3& t, double tol = -1) {
  detail::require_square_slices(t, "is_hermitian");
  return (t - conj_transpose(t)).frobenius_norm() <= detail::predicate_tol(t, tol);
}

// A * A^H = A^H * A, equivalently bcirc(A) normal.
inline bool is_normal(const Tensor3& t, double tol = -1) {
  detail::require_square_slices(t, "is_normal");
  const Tensor3 th = conj_transpose(t);
  const double residual = (t_product(t, th) - t_product(th, t)).frobenius_norm();
  // commutator scales quadratically with the data
  return residual <= detail::predicate_tol(t, tol) * std::max(1.0, t.frobenius_norm());
}

// Off-diagonal mass of A * A^H - A^H * A; reused by f_diagonalize_normal.
inline double normality_residual(const Tensor3& t) {
  const Tensor3 th = conj_transpose(t);
  return (t_product(t, th) - t_product(th, t)).frobenius_norm();
}

// All frontal slices diagonal.
inline bool is_f_diagonal(const Tensor3& t, double tol = -1) {
  double off = 0;
  for (int k = 0; k < t.slices(); ++k)
    for (int j = 0; j < t.cols(); ++j)
      for (int i = 0; i < t.rows(); ++i)
        if (i != j) off += std::norm(t(i, j, k));
  return std::sqrt(off) <= detail::predicate_tol(t, tol);
}

}  // namespace tprod
