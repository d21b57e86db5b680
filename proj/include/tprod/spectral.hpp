#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <lapacke.h>

#include "tprod/transform.hpp"

namespace tprod {

// Multiset of the m*n T-eigenvalues of an m x m x n tensor, i.e. the
// eigenvalues of bcirc(A), gathered face by face. Within each face the values
// are sorted by (Re, Im); faces appear in DFT order. Eigenvectors, when
// requested, are m x 1 x n tensors aligned by index.
struct TSpectrum {
  std::vector<Complex> eigenvalues;
  std::vector<int> face_index;
  std::vector<Tensor3> eigenvectors;  // empty unless requested

  bool has_vectors() const { return !eigenvectors.empty(); }
};

namespace detail {

inline bool re_im_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Embeds a face-i matrix eigenvector into face i of an otherwise-zero face
// set, inverse-transforms, and normalizes: unit 2-norm of unfold(X), first
// nonzero component rotated onto the positive real axis.
inline Tensor3 embed_face_vector(const Eigen::VectorXcd& v, int face, int m, int n) {
  FaceSet f(m, 1, n);
  f.face(face).col(0) = v;
  Tensor3 x = from_faces(f);
  double nrm = x.frobenius_norm();  // = ||unfold(x)||_2 since p = 1
  if (nrm > 0) x *= Complex(1.0 / nrm, 0);
  for (int k = 0; k < n && nrm > 0; ++k) {
    bool done = false;
    for (int i = 0; i < m; ++i) {
      const Complex c = x(i, 0, k);
      if (std::abs(c) > 1e-12) {
        x *= std::conj(c) / std::abs(c);
        done = true;
        break;
      }
    }
    if (done) break;
  }
  return x;
}

}  // namespace detail

// T-eigenvalues (and optionally T-eigenvectors) of a square-sliced tensor:
// the union over the transformed faces of their matrix eigenvalue multisets.
inline TSpectrum t_eigenvalues(const Tensor3& a, bool want_vectors = false) {
  detail::require_square_slices(a, "t_eigenvalues");
  const int m = a.rows(), n = a.slices();
  const FaceSet f = to_faces(a);
  TSpectrum s;
  s.eigenvalues.reserve(static_cast<std::size_t>(m) * n);
  s.face_index.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < n; ++i) {
    Eigen::ComplexEigenSolver<Matrix> es(f.face(i), want_vectors);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("t_eigenvalues: eigensolver failed on face " +
                               std::to_string(i));
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = es.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return detail::re_im_less(ev(x), ev(y));
    });
    for (int q : order) {
      s.eigenvalues.push_back(ev(q));
      s.face_index.push_back(i);
      if (want_vectors)
        s.eigenvectors.push_back(
            detail::embed_face_vector(es.eigenvectors().col(q), i, m, n));
    }
  }
  return s;
}

// Generalized T-eigenvalues of A relative to B, face by face, as (alpha, beta)
// pairs from the QZ decomposition. A pair with |beta| <= 1e-12 (|alpha|+|beta|)
// is flagged infinite rather than dropped. `rank_bcirc_b` reports
// rank(bcirc(B)); the pencil has the full m*n finite eigenvalue count exactly
// when that rank is m*n.
struct GeneralizedTSpectrum {
  std::vector<Complex> alphas, betas;
  std::vector<int> face_index;
  std::vector<bool> infinite;
  int rank_bcirc_b = 0;
  bool regular = false;  // rank_bcirc_b == m*n

  std::size_t size() const { return alphas.size(); }
  Complex eigenvalue(std::size_t q) const { return alphas[q] / betas[q]; }
  std::vector<Complex> finite_eigenvalues() const {
    std::vector<Complex> out;
    for (std::size_t q = 0; q < alphas.size(); ++q)
      if (!infinite[q]) out.push_back(alphas[q] / betas[q]);
    return out;
  }
};

namespace detail {

struct PencilEigen {
  std::vector<Complex> alpha, beta;
};

// Complex QZ via LAPACK zggev; a and b are taken by value (overwritten).
inline PencilEigen qz_eigenvalues(Matrix a, Matrix b) {
  const int n = static_cast<int>(a.rows());
  PencilEigen out;
  out.alpha.resize(static_cast<std::size_t>(n));
  out.beta.resize(static_cast<std::size_t>(n));
  if (n == 0) return out;
  Complex vdummy;  // jobvl = jobvr = 'N'; arrays unreferenced but kept non-null
  const int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(b.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.alpha.data()),
      reinterpret_cast<lapack_complex_double*>(out.beta.data()),
      reinterpret_cast<lapack_complex_double*>(&vdummy), 1,
      reinterpret_cast<lapack_complex_double*>(&vdummy), 1);
  if (info != 0)
    throw std::runtime_error("zggev failed with info = " + std::to_string(info));
  return out;
}

// rank(blockdiag(faces)): singular values of the block diagonal are the union
// of the per-face singular values, thresholded against the global largest one.
inline int blockdiag_rank(const FaceSet& f) {
  std::vector<double> all;
  double smax = 0;
  for (int i = 0; i < f.count(); ++i) {
    const Eigen::VectorXd sv = singular_values(f.face(i));
    for (Eigen::Index q = 0; q < sv.size(); ++q) {
      all.push_back(sv(q));
      smax = std::max(smax, sv(q));
    }
  }
  const double tol = std::max(f.rows(), f.cols()) *
                     std::numeric_limits<double>::epsilon() * smax;
  int r = 0;
  for (double s : all)
    if (s > tol) ++r;
  return r;
}

}  // namespace detail

inline GeneralizedTSpectrum generalized_t_eigenvalues(const Tensor3& a,
                                                      const Tensor3& b) {
  detail::require_square_slices(a, "generalized_t_eigenvalues");
  if (!a.same_shape(b))
    throw dimension_error("generalized_t_eigenvalues: shape mismatch " +
                          a.shape_string() + " vs " + b.shape_string());
  const int m = a.rows(), n = a.slices();
  const FaceSet fa = to_faces(a), fb = to_faces(b);
  GeneralizedTSpectrum g;
  g.rank_bcirc_b = detail::blockdiag_rank(fb);
  for (int i = 0; i < n; ++i) {
    auto pe = detail::qz_eigenvalues(fa.face(i), fb.face(i));
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    auto is_inf = [&](int q) {
      return std::abs(pe.beta[q]) <=
             1e-12 * (std::abs(pe.alpha[q]) + std::abs(pe.beta[q]));
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const bool ix = is_inf(x), iy = is_inf(y);
      if (ix != iy) return iy;  // finite first
      if (ix) return detail::re_im_less(pe.alpha[x], pe.alpha[y]);
      return detail::re_im_less(pe.alpha[x] / pe.beta[x], pe.alpha[y] / pe.beta[y]);
    });
    for (int q : order) {
      g.alphas.push_back(pe.alpha[q]);
      g.betas.push_back(pe.beta[q]);
      g.face_index.push_back(i);
      g.infinite.push_back(is_inf(q));
    }
  }
  g.regular = (g.rank_bcirc_b == m * n);
  return g;
}

// T-Schur decomposition Q^H * A * Q = D + N. The transform-domain factors are
// primary: q_faces hold the per-face unitary Schur vectors, d_faces the
// diagonals and n_faces the strictly upper parts, with exact zeros placed
// elsewhere. The spatial-domain tensors are their inverse transforms.
struct TSchur {
  Tensor3 q, d, n;
  FaceSet q_faces, d_faces, n_faces;
};

inline TSchur t_schur(const Tensor3& a) {
  detail::require_square_slices(a, "t_schur");
  const int m = a.rows(), n = a.slices();
  const FaceSet f = to_faces(a);
  FaceSet qf(m, m, n), df(m, m, n), nf(m, m, n);
  for (int i = 0; i < n; ++i) {
    Eigen::ComplexSchur<Matrix> schur(f.face(i), true);
    if (schur.info() != Eigen::Success)
      throw std::runtime_error("t_schur: Schur iteration failed on face " +
                               std::to_string(i));
    qf.face(i) = schur.matrixU();
    const Matrix& t = schur.matrixT();
    df.face(i) = Matrix(t.diagonal().asDiagonal());
    nf.face(i) = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix();
  }
  Tensor3 q = from_faces(qf), d = from_faces(df), nn = from_faces(nf);
  return {std::move(q), std::move(d), std::move(nn),
          std::move(qf), std::move(df), std::move(nf)};
}

// Unitary F-diagonalization of a normal tensor: U * A * U^H = D. Throws
// not_normal_error (carrying the commutator residual) on non-normal input.
struct FDiagonalization {
  Tensor3 u, d;
};

inline FDiagonalization f_diagonalize_normal(const Tensor3& a, double tol = -1) {
  detail::require_square_slices(a, "f_diagonalize_normal");
  if (!is_normal(a, tol))
    throw not_normal_error(normality_residual(a),
                           "f_diagonalize_normal: input is not normal "
                           "(||A*A^H - A^H*A||_F = " +
                               std::to_string(normality_residual(a)) + ")");
  const int m = a.rows(), n = a.slices();
  const FaceSet f = to_faces(a);
  FaceSet uf(m, m, n), df(m, m, n);
  for (int i = 0; i < n; ++i) {
    // the Schur form of a normal matrix is diagonal up to roundoff
    Eigen::ComplexSchur<Matrix> schur(f.face(i), true);
    if (schur.info() != Eigen::Success)
      throw std::runtime_error("f_diagonalize_normal: Schur failed on face " +
                               std::to_string(i));
    uf.face(i) = schur.matrixU().adjoint();
    df.face(i) = Matrix(schur.matrixT().diagonal().asDiagonal());
  }
  return {from_faces(uf), from_faces(df)};
}

// Spectral-variation distance s_A(B) = max_{mu in L(B)} min_{la in L(A)} |la - mu|.
inline double spectral_variation(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b))
    throw dimension_error("spectral_variation: shape mismatch " + a.shape_string() +
                          " vs " + b.shape_string());
  const auto la = t_eigenvalues(a).eigenvalues;
  const auto lb = t_eigenvalues(b).eigenvalues;
  double worst = 0;
  for (const Complex& mu : lb) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& lam : la) best = std::min(best, std::abs(lam - mu));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace tprod
