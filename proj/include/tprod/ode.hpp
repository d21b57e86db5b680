#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tprod/expm.hpp"
#include "tprod/transform.hpp"

namespace tprod {

using SolutionFn = std::function<Tensor3(double)>;
using GeneratorFn = std::function<Tensor3(double)>;

// t-exponential: the tensor whose bcirc is exp(t * bcirc(A)), computed as the
// matrix exponential of each transformed face.
inline Tensor3 t_exp(const Tensor3& a, double t) {
  detail::require_square_slices(a, "t_exp");
  if (t == 0.0) return identity_tensor(a.rows(), a.slices());
  const FaceSet f = to_faces(a);
  return from_faces(
      face_map(f, [t](const Matrix& face) { return matrix_exp(Matrix(t * face)); }));
}

// Sampled exact solution of dY/dt = A * Y, Y(0) = Y0: states[k] is the
// propagated initial value at times[k].
struct OdeSolution {
  std::vector<double> times;
  std::vector<Tensor3> states;
  Tensor3 generator;
};

inline OdeSolution solve_ivp(const Tensor3& a, const Tensor3& y0,
                             std::vector<double> times) {
  detail::require_square_slices(a, "solve_ivp");
  if (a.cols() != y0.rows() || a.slices() != y0.slices())
    throw dimension_error("solve_ivp: generator " + a.shape_string() +
                          " incompatible with initial value " + y0.shape_string());
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("solve_ivp: times must start at t = 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("solve_ivp: times must be strictly increasing");
  OdeSolution sol;
  sol.times = std::move(times);
  sol.generator = a;
  sol.states.reserve(sol.times.size());
  sol.states.push_back(y0);  // exact, no transform round trip at t = 0
  for (std::size_t k = 1; k < sol.times.size(); ++k)
    sol.states.push_back(t_product(t_exp(a, sol.times[k]), y0));
  return sol;
}

// Centered-difference defect ||(X(t+h) - X(t-h)) / 2h - A(t) * X(t)||_F.
inline double ode_residual(const GeneratorFn& a, const SolutionFn& x, double t,
                           double h = 1e-5) {
  const Tensor3 forward = x(t + h), backward = x(t - h);
  const Tensor3 derivative = (forward - backward) * Complex(1.0 / (2.0 * h), 0);
  return (derivative - t_product(a(t), x(t))).frobenius_norm();
}

inline double ode_residual(const Tensor3& a, const SolutionFn& x, double t,
                           double h = 1e-5) {
  return ode_residual([&a](double) { return a; }, x, t, h);
}

// Verifies the superposition principle: c1 x1 + c2 x2 must satisfy the ODE.
// Returns the max centered-difference residual over the samples.
inline double superposition_check(const GeneratorFn& a, const SolutionFn& x1,
                                  const SolutionFn& x2, Complex c1, Complex c2,
                                  std::span<const double> samples, double h = 1e-5) {
  const SolutionFn combo = [&](double t) { return c1 * x1(t) + c2 * x2(t); };
  double worst = 0;
  for (double t : samples) worst = std::max(worst, ode_residual(a, combo, t, h));
  return worst;
}

inline double superposition_check(const Tensor3& a, const SolutionFn& x1,
                                  const SolutionFn& x2, Complex c1, Complex c2,
                                  std::span<const double> samples, double h = 1e-5) {
  return superposition_check([&a](double) { return a; }, x1, x2, c1, c2, samples, h);
}

// Wronskian of m*n solution tensors of size m x 1 x n: the determinant of the
// matrix whose columns are their unfolds.
inline Complex wronskian(std::span<const Tensor3> states) {
  if (states.empty()) throw dimension_error("wronskian: no solutions given");
  const int m = states[0].rows(), n = states[0].slices();
  const std::size_t need = static_cast<std::size_t>(m) * n;
  if (states[0].cols() != 1)
    throw dimension_error("wronskian: solutions must be m x 1 x n");
  if (states.size() != need)
    throw dimension_error("wronskian: expected " + std::to_string(need) +
                          " solutions, got " + std::to_string(states.size()));
  Matrix mat(static_cast<Eigen::Index>(need), static_cast<Eigen::Index>(need));
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (!states[q].same_shape(states[0]))
      throw dimension_error("wronskian: inconsistent solution shapes");
    mat.col(static_cast<Eigen::Index>(q)) = unfold(states[q]);
  }
  return mat.determinant();
}

inline Complex wronskian(const std::vector<Tensor3>& states) {
  return wronskian(std::span<const Tensor3>(states));
}

// W(t) sampled along a solution family. By the dichotomy theorem the values
// are either all zero or all nonzero on the interval.
struct WronskianTrace {
  std::vector<double> times;
  std::vector<Complex> values;
};

inline WronskianTrace wronskian_trace(const std::vector<SolutionFn>& solutions,
                                      std::vector<double> times) {
  WronskianTrace trace;
  trace.times = std::move(times);
  trace.values.reserve(trace.times.size());
  std::vector<Tensor3> states;
  states.reserve(solutions.size());
  for (double t : trace.times) {
    states.clear();
    for (const SolutionFn& s : solutions) states.push_back(s(t));
    trace.values.push_back(wronskian(states));
  }
  return trace;
}

// Splits a complex-valued solution of a real-coefficient system into its real
// and imaginary parts; each part is itself a solution, and the returned
// residuals certify it at the given samples.
struct RealSplit {
  SolutionFn re, im;
  double max_residual_re = 0;
  double max_residual_im = 0;
};

inline RealSplit real_solution_split(const SolutionFn& x, const Tensor3& a,
                                     std::span<const double> samples,
                                     double h = 1e-5, double real_tol = -1) {
  detail::require_square_slices(a, "real_solution_split");
  double max_im = 0;
  for (int k = 0; k < a.slices(); ++k)
    for (int j = 0; j < a.cols(); ++j)
      for (int i = 0; i < a.rows(); ++i)
        max_im = std::max(max_im, std::abs(a(i, j, k).imag()));
  const double tol = real_tol >= 0 ? real_tol : 1e-12 * std::max(1.0, a.frobenius_norm());
  if (max_im > tol)
    throw std::invalid_argument(
        "real_solution_split: coefficient tensor has non-real entries (max |Im| = " +
        std::to_string(max_im) + ")");
  auto part = [x](bool real_part) {  // copy: the closures outlive this call
    return SolutionFn([x, real_part](double t) {
      Tensor3 v = x(t);
      Tensor3 out(v.rows(), v.cols(), v.slices());
      for (int k = 0; k < v.slices(); ++k)
        for (int j = 0; j < v.cols(); ++j)
          for (int i = 0; i < v.rows(); ++i)
            out(i, j, k) = real_part ? Complex(v(i, j, k).real(), 0)
                                     : Complex(v(i, j, k).imag(), 0);
      return out;
    });
  };
  RealSplit split{part(true), part(false), 0, 0};
  for (double t : samples) {
    split.max_residual_re = std::max(split.max_residual_re,
                                     ode_residual(a, split.re, t, h));
    split.max_residual_im = std::max(split.max_residual_im,
                                     ode_residual(a, split.im, t, h));
  }
  return split;
}

}  // namespace tprod
