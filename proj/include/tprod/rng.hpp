#pragma once

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "tprod/tensor.hpp"
#include "tprod/transform.hpp"

namespace tprod {

// Deterministic random source. The normal variates are generated by an
// explicit Box-Muller transform (std::normal_distribution is
// implementation-defined, which would break byte-reproducible outputs).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // standard complex normal: E|z|^2 = 1
  Complex complex_normal() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * normal(), s * normal()};
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0;
};

inline Tensor3 random_tensor(int m, int p, int n, Rng& rng) {
  Tensor3 t(m, p, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < m; ++i) t(i, j, k) = rng.complex_normal();
  return t;
}

inline Tensor3 random_hermitian_tensor(int m, int n, Rng& rng) {
  const Tensor3 g = random_tensor(m, m, n, rng);
  return (g + conj_transpose(g)) * Complex(0.5, 0);
}

inline Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

// Haar-ish unitary: QR of a Gaussian matrix with the phases of R's diagonal
// folded into Q.
inline Matrix random_unitary(int m, Rng& rng) {
  const Matrix g = random_matrix(m, m, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

// Normal tensor built in the transform domain as U_i D_i U_i^H per face,
// together with the unitary tensor P = from_faces(U_i) that F-diagonalizes it.
struct ConstructedTensor {
  Tensor3 a;  // the tensor
  Tensor3 p;  // transform with P^-1 * A * P F-diagonal
};

inline ConstructedTensor random_normal_tensor(int m, int n, Rng& rng) {
  FaceSet fa(m, m, n), fp(m, m, n);
  for (int i = 0; i < n; ++i) {
    const Matrix u = random_unitary(m, rng);
    Eigen::VectorXcd d(m);
    for (int q = 0; q < m; ++q) d(q) = rng.complex_normal();
    fa.face(i) = u * d.asDiagonal() * u.adjoint();
    fp.face(i) = u;
  }
  return {from_faces(fa), from_faces(fp)};
}

// F-diagonalizable tensor with per-face eigenvector condition bounded by
// resampling.
inline ConstructedTensor random_f_diagonalizable(int m, int n, Rng& rng,
                                                 double max_face_cond = 50.0) {
  FaceSet fa(m, m, n), fp(m, m, n);
  for (int i = 0; i < n; ++i) {
    Matrix v;
    for (;;) {
      v = random_matrix(m, m, rng);
      const Eigen::VectorXd sv = detail::singular_values(v);
      if (sv(sv.size() - 1) > 0 && sv(0) / sv(sv.size() - 1) <= max_face_cond) break;
    }
    Eigen::VectorXcd d(m);
    for (int q = 0; q < m; ++q) d(q) = rng.complex_normal();
    fa.face(i) = v * d.asDiagonal() * v.partialPivLu().inverse();
    fp.face(i) = v;
  }
  return {from_faces(fa), from_faces(fp)};
}

}  // namespace tprod
