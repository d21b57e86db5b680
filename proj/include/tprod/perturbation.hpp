#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "tprod/spectral.hpp"
#include "tprod/transform.hpp"

namespace tprod {

namespace detail {

// Normalized DFT Kronecker factor F_n kron I_m that block-diagonalizes an
// (m n) x (m n) block circulant.
inline Matrix dft_kron_matrix(int n, int m) {
  Matrix k = Matrix::Zero(static_cast<Eigen::Index>(n) * m,
                          static_cast<Eigen::Index>(n) * m);
  const double step = -2.0 * std::numbers::pi / n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) {
      const Complex f = scale * std::polar(1.0, step * ((static_cast<long long>(j) * c) % n));
      for (int r = 0; r < m; ++r)
        k(static_cast<Eigen::Index>(j) * m + r,
          static_cast<Eigen::Index>(c) * m + r) = f;
    }
  return k;
}

// kappa_p(F_n kron I_m); exactly 1 for the 2-norm, computed numerically on the
// materialized matrix for p in {1, inf} and cached per (n, m, p).
inline double dft_kron_condition(int n, int m, Norm p) {
  if (p == Norm::two) return 1.0;
  static std::map<std::tuple<int, int, int>, double> cache;
  static std::mutex mu;
  const auto key = std::make_tuple(n, m, static_cast<int>(p));
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Matrix k = dft_kron_matrix(n, m);
  const Matrix kh = k.adjoint();
  double v;
  switch (p) {
    case Norm::one:
      v = k.cwiseAbs().colwise().sum().maxCoeff() *
          kh.cwiseAbs().colwise().sum().maxCoeff();
      break;
    case Norm::inf:
      v = k.cwiseAbs().rowwise().sum().maxCoeff() *
          kh.cwiseAbs().rowwise().sum().maxCoeff();
      break;
    default:  // Frobenius: ||K||_F = sqrt(mn) for unitary K
      v = static_cast<double>(m) * n;
      break;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = v;
  return v;
}

// Off-F-diagonal mass of P^-1 * A * P in the transform domain; scale_out gets
// the Frobenius norm of the transformed product for relative tolerances.
inline double f_diagonalization_residual(const FaceSet& fa, const FaceSet& fp,
                                         double* scale_out = nullptr) {
  double off2 = 0, scale2 = 0;
  for (int i = 0; i < fa.count(); ++i) {
    const Matrix g = fp.face(i).partialPivLu().solve(fa.face(i) * fp.face(i));
    scale2 += g.squaredNorm();
    Matrix off = g;
    off.diagonal().setZero();
    off2 += off.squaredNorm();
  }
  if (scale_out) *scale_out = std::sqrt(scale2);
  return std::sqrt(off2);
}

// Smallest positive q with |N|^q = 0 for a strictly upper triangular face,
// found by binary lifting on the boolean sparsity pattern.
inline int nilpotency_index(const Matrix& strictly_upper) {
  using Pattern = Eigen::MatrixXd;
  const int m = static_cast<int>(strictly_upper.rows());
  Pattern base = (strictly_upper.cwiseAbs().array() > 0.0).cast<double>();
  auto is_zero = [](const Pattern& x) { return x.maxCoeff() <= 0.0; };
  auto mul = [](const Pattern& x, const Pattern& y) {
    return Pattern(((x * y).array() > 0.0).cast<double>());
  };
  if (is_zero(base)) return 1;
  std::vector<Pattern> powers{base};  // powers[j] = |N|^(2^j)
  while (!is_zero(powers.back())) {
    powers.push_back(mul(powers.back(), powers.back()));
    if (static_cast<int>(powers.size()) > m + 2)
      throw std::logic_error("nilpotency_index: pattern is not nilpotent");
  }
  // refine within (2^(J-1), 2^J]
  int exponent = 1 << (powers.size() - 2);
  Pattern current = powers[powers.size() - 2];
  for (int j = static_cast<int>(powers.size()) - 3; j >= 0; --j) {
    const Pattern candidate = mul(current, powers[j]);
    if (!is_zero(candidate)) {
      current = candidate;
      exponent += 1 << j;
    }
  }
  return exponent + 1;
}

}  // namespace detail

// Gershgorin disks from the block-diagonalized form, with the transformation
// X of the theorem instantiated as either the identity (raw) or the per-face
// Schur vectors (schur: centers are eigenvalues, radii come from the
// strictly-upper factor).
enum class GershgorinMode { raw, schur };

struct DiskSet {
  std::vector<Complex> centers;
  std::vector<double> radii;
  GershgorinMode mode;

  bool contains(Complex z, double slack = 0) const {
    for (std::size_t q = 0; q < centers.size(); ++q)
      if (std::abs(z - centers[q]) <= radii[q] + slack) return true;
    return false;
  }
};

inline DiskSet gershgorin_disks(const Tensor3& a,
                                GershgorinMode mode = GershgorinMode::raw) {
  detail::require_square_slices(a, "gershgorin_disks");
  const int m = a.rows(), n = a.slices();
  DiskSet disks;
  disks.mode = mode;
  disks.centers.reserve(static_cast<std::size_t>(m) * n);
  disks.radii.reserve(static_cast<std::size_t>(m) * n);
  const FaceSet f = to_faces(a);
  for (int i = 0; i < n; ++i) {
    Matrix t;
    if (mode == GershgorinMode::raw) {
      t = f.face(i);
    } else {
      Eigen::ComplexSchur<Matrix> schur(f.face(i), false);
      if (schur.info() != Eigen::Success)
        throw std::runtime_error("gershgorin_disks: Schur failed on face " +
                                 std::to_string(i));
      t = schur.matrixT();
    }
    for (int r = 0; r < m; ++r) {
      disks.centers.push_back(t(r, r));
      double radius = 0;
      for (int c = 0; c < m; ++c)
        if (c != r && (mode == GershgorinMode::raw || c > r))
          radius += std::abs(t(r, c));
      disks.radii.push_back(radius);
    }
  }
  return disks;
}

// Bound / observation pair for a perturbation theorem. `holds` is
// observed <= bound + 1e-9 * scale with scale = max(1, ||A||_2); `detail`
// carries the named intermediate quantities.
struct BoundReport {
  double bound = 0;
  double observed = 0;
  bool holds = false;
  std::map<std::string, double> detail;
};

namespace detail {

inline void finalize_report(BoundReport& rep, double scale) {
  rep.holds = rep.observed <= rep.bound + 1e-9 * std::max(1.0, scale);
}

}  // namespace detail

// Bauer-Fike: |lambda - mu| <= kappa_p(P) ||dA||_p for p in {2, F}, with the
// extra kappa_p(F_n kron I_m) factor for p in {1, inf}. P must F-diagonalize A.
inline BoundReport bauer_fike_bound(const Tensor3& a, const Tensor3& p_tensor,
                                    const Tensor3& delta, Norm p = Norm::two,
                                    double residual_tol = -1) {
  detail::require_square_slices(a, "bauer_fike_bound");
  if (!a.same_shape(p_tensor) || !a.same_shape(delta))
    throw dimension_error("bauer_fike_bound: shape mismatch");
  const FaceSet fa = to_faces(a), fp = to_faces(p_tensor);
  double scale = 0;
  const double residual = detail::f_diagonalization_residual(fa, fp, &scale);
  const double tol = residual_tol >= 0 ? residual_tol : 1e-8 * std::max(1.0, scale);
  if (residual > tol)
    throw not_f_diagonalizable_error(
        residual, "bauer_fike_bound: P^-1 * A * P is not F-diagonal (residual " +
                      std::to_string(residual) + ")");
  const Tensor3 p_inv = t_inverse(p_tensor);
  const double kappa_p = tensor_norm(p_tensor, p) * tensor_norm(p_inv, p);
  const double delta_norm = tensor_norm(delta, p);
  const bool needs_dft_factor = (p == Norm::one || p == Norm::inf);
  const double kappa_dft =
      needs_dft_factor ? detail::dft_kron_condition(a.slices(), a.rows(), p) : 1.0;
  BoundReport rep;
  rep.bound = kappa_p * kappa_dft * delta_norm;
  rep.observed = spectral_variation(a, a + delta);
  rep.detail["kappa_P"] = kappa_p;
  rep.detail["delta_norm"] = delta_norm;
  rep.detail["kappa_dft"] = kappa_dft;
  rep.detail["decomposition_residual"] = residual;
  detail::finalize_report(rep, tensor_norm(a, Norm::two));
  return rep;
}

// Generalized Bauer-Fike via the T-Schur decomposition:
// bound = max(theta, theta^(1/q)), theta = ||bcirc(dA)||_p sum_{k<q} ||N||_p^k
// for p in {2, F}; for p in {1, inf} theta additionally carries
// kappa_p(Q) kappa_p(F_n kron I_m) and the sum uses ||N||_2 (as printed in the
// source theorem; detail["mixed_norm"] flags it).
inline BoundReport generalized_bf_bound(const Tensor3& a, const Tensor3& delta,
                                        Norm p = Norm::two) {
  detail::require_square_slices(a, "generalized_bf_bound");
  if (!a.same_shape(delta))
    throw dimension_error("generalized_bf_bound: shape mismatch");
  const TSchur schur = t_schur(a);
  int q = 1;
  for (int i = 0; i < schur.n_faces.count(); ++i)
    q = std::max(q, detail::nilpotency_index(schur.n_faces.face(i)));
  const bool mixed = (p == Norm::one || p == Norm::inf);
  const double n_norm =
      detail::blockdiag_norm(schur.n_faces, mixed ? Norm::two : p);
  double sum = 0, power = 1;
  for (int k = 0; k < q; ++k) {
    sum += power;
    power *= n_norm;
  }
  double theta = tensor_norm(delta, p) * sum;
  double kappa_q = 1.0, kappa_dft = 1.0;
  if (mixed) {
    kappa_q = tensor_norm(schur.q, p) * tensor_norm(conj_transpose(schur.q), p);
    kappa_dft = detail::dft_kron_condition(a.slices(), a.rows(), p);
    theta *= kappa_q * kappa_dft;
  }
  BoundReport rep;
  rep.bound = std::max(theta, std::pow(theta, 1.0 / q));
  rep.observed = spectral_variation(a, a + delta);
  rep.detail["q"] = q;
  rep.detail["theta"] = theta;
  rep.detail["norm_N"] = n_norm;
  rep.detail["kappa_Q"] = kappa_q;
  rep.detail["kappa_dft"] = kappa_dft;
  rep.detail["mixed_norm"] = mixed ? 1.0 : 0.0;
  detail::finalize_report(rep, tensor_norm(a, Norm::two));
  return rep;
}

// Kahan regions for a Hermitian tensor perturbed by an arbitrary tensor:
// sigma_k = { z : |z - lambda_k| <= ||E||_2, |Im z| <= ||E_y||_2 } with
// E_y = (bcirc(E) - bcirc(E)^H) / (2i).
struct KahanRegion {
  double center;           // lambda_k (real)
  double radius;           // ||E||_2
  double strip_half_width; // ||E_y||_2
};

struct KahanResult {
  std::vector<double> lambda;  // non-increasing
  std::vector<KahanRegion> regions;
  double e_norm = 0;   // ||E||_2
  double ey_norm = 0;  // ||E_y||_2
  double max_im = 0;   // max |Im mu| over the perturbed spectrum
  BoundReport report;
};

inline KahanResult kahan_regions(const Tensor3& a, const Tensor3& e,
                                 double hermitian_tol = -1) {
  detail::require_square_slices(a, "kahan_regions");
  if (!a.same_shape(e)) throw dimension_error("kahan_regions: shape mismatch");
  if (!is_hermitian(a, hermitian_tol))
    throw not_hermitian_error("kahan_regions: tensor is not Hermitian");
  KahanResult res;
  for (const Complex& l : t_eigenvalues(a).eigenvalues)
    res.lambda.push_back(l.real());
  std::sort(res.lambda.begin(), res.lambda.end(), std::greater<double>());
  res.e_norm = tensor_norm(e, Norm::two);
  const Tensor3 ey = (e - conj_transpose(e)) * Complex(0, -0.5);
  res.ey_norm = tensor_norm(ey, Norm::two);
  for (double l : res.lambda)
    res.regions.push_back({l, res.e_norm, res.ey_norm});
  const auto perturbed = t_eigenvalues(a + e).eigenvalues;
  double observed = 0;
  for (const Complex& mu : perturbed) {
    double best = std::numeric_limits<double>::infinity();
    for (double l : res.lambda) best = std::min(best, std::abs(mu - l));
    observed = std::max(observed, best);
    res.max_im = std::max(res.max_im, std::abs(mu.imag()));
  }
  res.report.bound = res.e_norm;
  res.report.observed = observed;
  res.report.detail["Ey_norm"] = res.ey_norm;
  res.report.detail["max_im"] = res.max_im;
  const double tol = 1e-9 * std::max(1.0, tensor_norm(a, Norm::two));
  res.report.holds = observed <= res.e_norm + tol && res.max_im <= res.ey_norm + tol;
  return res;
}

}  // namespace tprod
