#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "tprod/parallel.hpp"
#include "tprod/spectral.hpp"
#include "tprod/transform.hpp"

namespace tprod {

namespace detail {

// sigma_min(z I - face) per face, minimized over faces: the 2-norm membership
// quantity of Definition-style pseudospectra. 0 means some shifted face is
// exactly singular.
inline double sigma_min_shifted(const Matrix& face, Complex z) {
  const Matrix m = z * Matrix::Identity(face.rows(), face.cols()) - face;
  return sigma_min(m);
}

// Grid scalar g(z): min over faces of sigma_min(zI - face) for the 2-norm,
// 1 / max_i ||(zI - face_i)^-1||_p for p in {1, inf}. Singular resolvents map
// to 0 so that every epsilon level contains them.
inline double grid_value(const FaceSet& f, Complex z, Norm p) {
  const int m = f.rows();
  const Matrix eye = Matrix::Identity(m, m);
  if (p == Norm::two) {
    double v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < f.count(); ++i)
      v = std::min(v, sigma_min(Matrix(z * eye - f.face(i))));
    return v;
  }
  double rq = 0;  // max_i ||(zI - face_i)^-1||_p
  for (int i = 0; i < f.count(); ++i) {
    const Matrix shifted = z * eye - f.face(i);
    const Eigen::VectorXd sv = singular_values(shifted);
    if (sv(sv.size() - 1) <= m * std::numeric_limits<double>::epsilon() * sv(0))
      return 0.0;  // singular face: infinite resolvent
    const Matrix inv = shifted.inverse();
    const double nrm = (p == Norm::one)
                           ? inv.cwiseAbs().colwise().sum().maxCoeff()
                           : inv.cwiseAbs().rowwise().sum().maxCoeff();
    rq = std::max(rq, nrm);
  }
  return rq > 0 ? 1.0 / rq : std::numeric_limits<double>::infinity();
}

inline void require_pseudo_norm(Norm p, const char* who) {
  if (p == Norm::fro)
    throw std::invalid_argument(std::string(who) +
                                ": Frobenius-norm pseudospectra are not defined; "
                                "use norm 1, 2 or inf");
}

}  // namespace detail

// max over faces of ||(zI - face)^-1||_p; +inf when some face is singular at z.
inline double resolvent_quantity(const Tensor3& a, Complex z, Norm p = Norm::two) {
  detail::require_square_slices(a, "resolvent_quantity");
  detail::require_pseudo_norm(p, "resolvent_quantity");
  const double g = detail::grid_value(to_faces(a), z, p);
  return g == 0 ? std::numeric_limits<double>::infinity() : 1.0 / g;
}

// z is in the epsilon-pseudospectrum iff the resolvent quantity reaches 1/eps.
inline bool membership(const Tensor3& a, Complex z, double eps, Norm p = Norm::two) {
  if (!(eps > 0)) throw std::invalid_argument("membership: eps must be positive");
  detail::require_square_slices(a, "membership");
  detail::require_pseudo_norm(p, "membership");
  return detail::grid_value(to_faces(a), z, p) <= eps;
}

struct GridRegion {
  double re_min, re_max, im_min, im_max;
};

// Rectangular grid of g(z) over a complex-plane region. Row-major with the
// imaginary axis outermost: values[iy * nx + ix]. Membership at level eps is
// value <= eps, so the member set is non-decreasing in eps by construction.
struct PseudoGrid {
  double re_min, re_max, im_min, im_max;
  int nx, ny;
  std::vector<double> values;
  std::vector<double> epsilons;
  Norm norm;

  double re(int ix) const { return re_min + ix * (re_max - re_min) / (nx - 1); }
  double im(int iy) const { return im_min + iy * (im_max - im_min) / (ny - 1); }
  Complex point(int ix, int iy) const { return {re(ix), im(iy)}; }
  double value(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * nx + ix];
  }
  bool member(int ix, int iy, double eps) const { return value(ix, iy) <= eps; }
  double cell_diagonal() const {
    return std::hypot((re_max - re_min) / (nx - 1), (im_max - im_min) / (ny - 1));
  }
};

inline PseudoGrid pseudo_grid(const Tensor3& a, const GridRegion& region, int nx,
                              int ny, std::vector<double> epsilons,
                              Norm p = Norm::two) {
  detail::require_square_slices(a, "pseudo_grid");
  detail::require_pseudo_norm(p, "pseudo_grid");
  if (nx < 2 || ny < 2 || !(region.re_min < region.re_max) ||
      !(region.im_min < region.im_max))
    throw dimension_error("pseudo_grid: invalid region or resolution");
  for (double e : epsilons)
    if (!(e > 0))
      throw std::invalid_argument("pseudo_grid: epsilon levels must be positive");
  PseudoGrid grid{region.re_min, region.re_max, region.im_min, region.im_max,
                  nx,            ny,            {},            std::move(epsilons),
                  p};
  grid.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  const FaceSet f = to_faces(a);
  detail::parallel_for(0, ny, [&](int iy) {
    for (int ix = 0; ix < nx; ++ix)
      grid.values[static_cast<std::size_t>(iy) * nx + ix] =
          detail::grid_value(f, grid.point(ix, iy), p);
  });
  return grid;
}

// Spectrum bounding box padded by 1.5 * max(eps) * kappa, where kappa is the
// worst per-face eigenvector condition number capped at (||A||_2 + eps) / eps
// (beyond that cap the whole pseudospectrum is inside the padded box anyway).
inline GridRegion auto_region(const Tensor3& a, const std::vector<double>& epsilons) {
  detail::require_square_slices(a, "auto_region");
  if (epsilons.empty())
    throw std::invalid_argument("auto_region: need at least one epsilon level");
  const double max_eps = *std::max_element(epsilons.begin(), epsilons.end());
  const FaceSet f = to_faces(a);
  const double norm2 = detail::blockdiag_norm(f, Norm::two);
  const double cap = (norm2 + max_eps) / max_eps;
  double kappa = 1.0;
  for (int i = 0; i < f.count(); ++i) {
    Eigen::ComplexEigenSolver<Matrix> es(f.face(i), true);
    const Eigen::VectorXd sv = detail::singular_values(es.eigenvectors());
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0 ? sv(0) / smin : cap;
    kappa = std::max(kappa, std::min(cond, cap));
  }
  const auto spec = t_eigenvalues(a).eigenvalues;
  double re_lo = spec[0].real(), re_hi = spec[0].real();
  double im_lo = spec[0].imag(), im_hi = spec[0].imag();
  for (const Complex& l : spec) {
    re_lo = std::min(re_lo, l.real());
    re_hi = std::max(re_hi, l.real());
    im_lo = std::min(im_lo, l.imag());
    im_hi = std::max(im_hi, l.imag());
  }
  const double pad = 1.5 * max_eps * kappa;
  return {re_lo - pad, re_hi + pad, im_lo - pad, im_hi + pad};
}

// Minimal 2-norm perturbation of blockdiag(faces) making z an exact
// eigenvalue: E = -sigma_min u v^H from the minimal singular triplet of
// (blockdiag(faces) - zI), embedded in the owning face's diagonal block.
struct PerturbationWitness {
  Matrix e;     // (m n) x (m n), block-diagonal domain
  double norm;  // ||E||_2 = sigma_min, or 0 when z is already a T-eigenvalue
};

inline PerturbationWitness perturbation_witness(const Tensor3& a, Complex z) {
  detail::require_square_slices(a, "perturbation_witness");
  const int m = a.rows(), n = a.slices();
  const FaceSet f = to_faces(a);
  const Matrix eye = Matrix::Identity(m, m);
  double best = std::numeric_limits<double>::infinity();
  int best_face = 0;
  for (int i = 0; i < n; ++i) {
    const double s = detail::sigma_min(Matrix(f.face(i) - z * eye));
    if (s < best) {
      best = s;
      best_face = i;
    }
  }
  Matrix e = Matrix::Zero(static_cast<Eigen::Index>(m) * n,
                          static_cast<Eigen::Index>(m) * n);
  const double scale = std::max(1.0, std::abs(z) + detail::blockdiag_norm(f, Norm::two));
  if (best <= 1e-14 * scale) return {std::move(e), 0.0};
  Eigen::JacobiSVD<Matrix> svd(Matrix(f.face(best_face) - z * eye),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index last = svd.singularValues().size() - 1;
  const Eigen::VectorXcd u = svd.matrixU().col(last);
  const Eigen::VectorXcd v = svd.matrixV().col(last);
  e.block(static_cast<Eigen::Index>(best_face) * m,
          static_cast<Eigen::Index>(best_face) * m, m, m) =
      -best * u * v.adjoint();
  return {std::move(e), best};
}

// Pointwise grid verification of the shift / scaling / conjugation laws
// L_eps(A + c) = c + L_eps(A), L_{|c| eps}(c A) = c L_eps(A),
// L_eps(A^H) = conj(L_eps(A)). Points closer than `margin` to the level set
// are not counted as disagreements (membership there is fp-ambiguous).
struct PseudoLawCheck {
  double max_value_diff = 0;
  int disagreements = 0;
};

struct PseudoPropertyReport {
  PseudoLawCheck shift, scaling, conjugation;
  bool conjugation_checked = false;  // conjugation law needs the 2-norm
  int interior_points = 0;
  double margin = 0;
};

inline PseudoPropertyReport check_pseudo_properties(const Tensor3& a, Complex c,
                                                    double eps,
                                                    const GridRegion& region,
                                                    int nx, int ny,
                                                    Norm p = Norm::two,
                                                    double margin = -1) {
  detail::require_square_slices(a, "check_pseudo_properties");
  detail::require_pseudo_norm(p, "check_pseudo_properties");
  if (!(eps > 0))
    throw std::invalid_argument("check_pseudo_properties: eps must be positive");
  const bool check_scaling = (c != Complex(0, 0));
  const FaceSet fa = to_faces(a);
  const FaceSet fshift = to_faces(a + c * identity_tensor(a.rows(), a.slices()));
  const FaceSet fscale = to_faces(c * a);
  const FaceSet fadj = to_faces(conj_transpose(a));
  PseudoPropertyReport rep;
  rep.conjugation_checked = (p == Norm::two);
  rep.margin = margin >= 0 ? margin : 1e-8 * std::max(1.0, detail::blockdiag_norm(fa, Norm::two));
  const double dre = (region.re_max - region.re_min) / (nx - 1);
  const double dim = (region.im_max - region.im_min) / (ny - 1);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Complex z(region.re_min + ix * dre, region.im_min + iy * dim);
      const double g0 = detail::grid_value(fa, z, p);
      const bool interior = std::abs(g0 - eps) > rep.margin;
      if (interior) ++rep.interior_points;
      const bool m0 = g0 <= eps;

      const double g1 = detail::grid_value(fshift, z + c, p);
      rep.shift.max_value_diff = std::max(rep.shift.max_value_diff, std::abs(g1 - g0));
      if (interior && (g1 <= eps) != m0) ++rep.shift.disagreements;

      if (check_scaling) {
        const double g2 = detail::grid_value(fscale, c * z, p);
        rep.scaling.max_value_diff =
            std::max(rep.scaling.max_value_diff, std::abs(g2 - std::abs(c) * g0));
        if (interior && (g2 <= std::abs(c) * eps) != m0) ++rep.scaling.disagreements;
      }

      if (rep.conjugation_checked) {
        const double g3 = detail::grid_value(fadj, std::conj(z), p);
        rep.conjugation.max_value_diff =
            std::max(rep.conjugation.max_value_diff, std::abs(g3 - g0));
        if (interior && (g3 <= eps) != m0) ++rep.conjugation.disagreements;
      }
    }
  return rep;
}

// Grid verification of the two-sided inclusion
// L(A) + D_eps  subset  L_eps(A)  subset  L(A) + D_{eps kappa2(P)}
// for an F-diagonalizable tensor with transform P.
struct InclusionReport {
  double kappa2 = 0;
  double decomposition_residual = 0;
  int lower_violations = 0;  // dist < eps but not a member
  int upper_violations = 0;  // member but dist > eps * kappa2
  int points = 0;
};

inline InclusionReport bauer_fike_inclusion_check(const Tensor3& a,
                                                  const Tensor3& p_tensor,
                                                  double eps,
                                                  const GridRegion& region, int nx,
                                                  int ny, double residual_tol = -1) {
  detail::require_square_slices(a, "bauer_fike_inclusion_check");
  if (!a.same_shape(p_tensor))
    throw dimension_error("bauer_fike_inclusion_check: P shape mismatch");
  if (!(eps > 0))
    throw std::invalid_argument("bauer_fike_inclusion_check: eps must be positive");
  const FaceSet fa = to_faces(a), fp = to_faces(p_tensor);
  InclusionReport rep;
  // validate P^-1 * A * P is F-diagonal (checked in the transform domain)
  double off2 = 0, scale2 = 0, pmax = 0, pmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fa.count(); ++i) {
    const Eigen::VectorXd sv = detail::singular_values(fp.face(i));
    pmax = std::max(pmax, sv(0));
    pmin = std::min(pmin, sv(sv.size() - 1));
    const Matrix g = fp.face(i).partialPivLu().solve(fa.face(i) * fp.face(i));
    scale2 += g.squaredNorm();
    Matrix offdiag = g;
    offdiag.diagonal().setZero();
    off2 += offdiag.squaredNorm();
  }
  rep.decomposition_residual = std::sqrt(off2);
  const double tol =
      residual_tol >= 0 ? residual_tol : 1e-8 * std::max(1.0, std::sqrt(scale2));
  if (rep.decomposition_residual > tol)
    throw not_f_diagonalizable_error(
        rep.decomposition_residual,
        "bauer_fike_inclusion_check: P^-1 * A * P is not F-diagonal (residual " +
            std::to_string(rep.decomposition_residual) + ")");
  rep.kappa2 = pmax / pmin;
  const auto spec = t_eigenvalues(a).eigenvalues;
  const double fp_tol = 1e-10 * std::max(1.0, detail::blockdiag_norm(fa, Norm::two));
  const double dre = (region.re_max - region.re_min) / (nx - 1);
  const double dim = (region.im_max - region.im_min) / (ny - 1);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Complex z(region.re_min + ix * dre, region.im_min + iy * dim);
      double dist = std::numeric_limits<double>::infinity();
      for (const Complex& l : spec) dist = std::min(dist, std::abs(z - l));
      const bool member = detail::grid_value(fa, z, Norm::two) <= eps;
      ++rep.points;
      if (dist <= eps - fp_tol && !member) ++rep.lower_violations;
      if (member && dist > eps * rep.kappa2 + fp_tol) ++rep.upper_violations;
    }
  return rep;
}

}  // namespace tprod
