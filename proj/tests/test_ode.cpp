#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "tprod/matching.hpp"
#include "tprod/ode.hpp"
#include "tprod/spectral.hpp"
#include "tprod/rng.hpp"

using namespace tprod;

TEST_CASE("matrix_exp against the series oracle") {
  Rng rng(137);
  SECTION("faces with norm at most 1") {
    for (int trial = 0; trial < 8; ++trial) {
      const int m = rng.uniform_int(1, 5);
      Matrix a = random_matrix(m, m, rng);
      a /= std::max(1.0, a.cwiseAbs().colwise().sum().maxCoeff());
      const Matrix ours = matrix_exp(a);
      const Matrix ref = oracle::expm_series(a);
      REQUIRE((ours - ref).norm() <= 1e-12 * ref.norm());
    }
  }
  SECTION("larger norms exercise the scaling-and-squaring path") {
    for (double scale : {3.0, 7.0, 20.0}) {
      const Matrix a = scale * random_matrix(4, 4, rng) / 2.0;
      const Matrix ours = matrix_exp(a);
      const Matrix ref = oracle::expm_series(a);
      REQUIRE((ours - ref).norm() <= 1e-10 * ref.norm());
    }
  }
}

TEST_CASE("t_exp") {
  Rng rng(139);
  SECTION("t = 0 gives the identity tensor exactly") {
    const Tensor3 a = random_tensor(3, 3, 2, rng);
    const Tensor3 e = t_exp(a, 0.0);
    REQUIRE((e - identity_tensor(3, 2)).frobenius_norm() == 0.0);
  }
  SECTION("zero generator gives the identity tensor") {
    const Tensor3 e = t_exp(Tensor3::zero(3, 3, 4), 1.7);
    REQUIRE((e - identity_tensor(3, 4)).frobenius_norm() <= 1e-14);
  }
  SECTION("1x1x2 (0, s) gives (cosh ts, sinh ts)") {
    const double s = 0.8, t = 1.3;
    Tensor3 a(1, 1, 2);
    a(0, 0, 1) = Complex(s, 0);
    const Tensor3 e = t_exp(a, t);
    REQUIRE(std::abs(e(0, 0, 0) - Complex(std::cosh(t * s), 0)) <= 1e-13);
    REQUIRE(std::abs(e(0, 0, 1) - Complex(std::sinh(t * s), 0)) <= 1e-13);
  }
  SECTION("bcirc of the t-exponential is the exponential of bcirc") {
    const Tensor3 a = random_tensor(2, 2, 3, rng);
    const double t = 0.6;
    const Matrix lhs = oracle::dense_bcirc(t_exp(a, t));
    const Matrix rhs = oracle::expm_series(t * oracle::dense_bcirc(a));
    REQUIRE((lhs - rhs).norm() <= 1e-11 * rhs.norm());
  }
  SECTION("semigroup property") {
    const Tensor3 a = random_tensor(2, 2, 2, rng);
    const Tensor3 lhs = t_exp(a, 0.9);
    const Tensor3 rhs = t_product(t_exp(a, 0.4), t_exp(a, 0.5));
    REQUIRE((lhs - rhs).frobenius_norm() <=
            1e-10 * std::max(1.0, lhs.frobenius_norm()));
  }
  SECTION("commutes with similarity transforms") {
    const Tensor3 a = random_tensor(3, 3, 2, rng);
    Tensor3 p = identity_tensor(3, 2);
    p += Complex(0.3, 0) * random_tensor(3, 3, 2, rng);
    const Tensor3 p_inv = t_inverse(p);
    const Tensor3 lhs = t_exp(t_product(t_product(p_inv, a), p), 0.7);
    const Tensor3 rhs = t_product(t_product(p_inv, t_exp(a, 0.7)), p);
    REQUIRE((lhs - rhs).frobenius_norm() <=
            1e-9 * std::max(1.0, rhs.frobenius_norm()));
  }
}

TEST_CASE("solve_ivp") {
  Rng rng(149);
  SECTION("zero generator holds the state constant") {
    const Tensor3 y0 = random_tensor(3, 2, 2, rng);
    const OdeSolution sol = solve_ivp(Tensor3::zero(3, 3, 2), y0, {0, 0.5, 1.0});
    for (const Tensor3& s : sol.states)
      REQUIRE((s - y0).frobenius_norm() <= 1e-13 * y0.frobenius_norm());
  }
  SECTION("scalar case is e^{alpha t} y0") {
    Tensor3 a(1, 1, 1), y0(1, 1, 1);
    const Complex alpha(0.3, -1.1), start(2, 1);
    a(0, 0, 0) = alpha;
    y0(0, 0, 0) = start;
    const OdeSolution sol = solve_ivp(a, y0, {0, 0.5, 1.25});
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
      const Complex expected = std::exp(alpha * sol.times[k]) * start;
      REQUIRE(std::abs(sol.states[k](0, 0, 0) - expected) <= 1e-12);
    }
  }
  SECTION("initial state is returned exactly") {
    const Tensor3 a = random_tensor(2, 2, 2, rng);
    const Tensor3 y0 = random_tensor(2, 1, 2, rng);
    const OdeSolution sol = solve_ivp(a, y0, {0, 1});
    REQUIRE((sol.states[0] - y0).frobenius_norm() == 0.0);
  }
  SECTION("centered differences certify the trajectory") {
    const Tensor3 a = random_tensor(2, 2, 2, rng);
    const Tensor3 y0 = random_tensor(2, 1, 2, rng);
    const SolutionFn x = [&](double t) { return t_product(t_exp(a, t), y0); };
    const double h = 1e-4;
    const double scale = a.frobenius_norm() * y0.frobenius_norm();
    for (double t : {0.2, 0.7, 1.1})
      REQUIRE(ode_residual(a, x, t, h) <= 1e-6 * std::max(1.0, scale));
  }
  SECTION("solution is linear in the initial value") {
    const Tensor3 a = random_tensor(2, 2, 2, rng);
    const Tensor3 y0a = random_tensor(2, 2, 2, rng);
    const Tensor3 y0b = random_tensor(2, 2, 2, rng);
    const OdeSolution sum = solve_ivp(a, y0a + y0b, {0, 0.8});
    const OdeSolution sa = solve_ivp(a, y0a, {0, 0.8});
    const OdeSolution sb = solve_ivp(a, y0b, {0, 0.8});
    REQUIRE((sum.states[1] - (sa.states[1] + sb.states[1])).frobenius_norm() <=
            1e-13 * std::max(1.0, sum.states[1].frobenius_norm()));
  }
  SECTION("argument validation") {
    const Tensor3 a = random_tensor(2, 2, 2, rng);
    const Tensor3 y0 = random_tensor(2, 1, 2, rng);
    REQUIRE_THROWS_AS(solve_ivp(a, y0, {0.5, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(solve_ivp(a, y0, {0, 1.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(solve_ivp(a, random_tensor(3, 1, 2, rng), {0, 1}),
                      dimension_error);
    REQUIRE_THROWS_AS(solve_ivp(a, random_tensor(2, 1, 3, rng), {0, 1}),
                      dimension_error);
  }
}

TEST_CASE("eigenpairs generate exponential solutions") {
  Rng rng(151);
  const Tensor3 a = random_tensor(2, 2, 2, rng);
  const TSpectrum s = t_eigenvalues(a, true);
  for (std::size_t q = 0; q < s.eigenvalues.size(); ++q) {
    const Complex lambda = s.eigenvalues[q];
    const Tensor3 x0 = s.eigenvectors[q];
    const SolutionFn x = [lambda, x0](double t) {
      return std::exp(lambda * t) * x0;
    };
    for (double t : {0.1, 0.6})
      REQUIRE(ode_residual(a, x, t, 1e-5) <= 1e-8 * std::max(1.0, std::abs(std::exp(lambda * t))));
  }
}

TEST_CASE("superposition principle") {
  Rng rng(157);
  const Tensor3 a = random_tensor(2, 2, 2, rng);
  const Tensor3 y1 = random_tensor(2, 1, 2, rng);
  const Tensor3 y2 = random_tensor(2, 1, 2, rng);
  const SolutionFn x1 = [&](double t) { return t_product(t_exp(a, t), y1); };
  const SolutionFn x2 = [&](double t) { return t_product(t_exp(a, t), y2); };
  const std::vector<double> samples{0.1, 0.4, 0.9};
  SECTION("trivial combinations") {
    const std::vector<double> single{0.4};
    const double own1 = ode_residual(a, x1, 0.4, 1e-5);
    const double combo =
        superposition_check(a, x1, x2, Complex(1, 0), Complex(0, 0), single);
    REQUIRE(combo == Catch::Approx(own1).margin(1e-14));
    REQUIRE(superposition_check(a, x1, x2, Complex(0, 0), Complex(0, 0), samples) ==
            0.0);
  }
  SECTION("random combinations satisfy the ODE") {
    REQUIRE(superposition_check(a, x1, x2, Complex(0.7, -1.2), Complex(2.1, 0.4),
                                samples) <= 1e-8);
  }
  SECTION("time-varying generator taken as input") {
    // A(t) = t * A with exact solution exp(t^2/2 * A) * y0
    const GeneratorFn gen = [&](double t) { return Complex(t, 0) * a; };
    const SolutionFn x = [&](double t) { return t_product(t_exp(a, 0.5 * t * t), y1); };
    REQUIRE(superposition_check(gen, x, x, Complex(0.5, 0), Complex(0.5, 0),
                                samples) <= 1e-8);
  }
}

TEST_CASE("wronskian") {
  Rng rng(163);
  const int m = 2, n = 2, mn = 4;
  const Tensor3 a = random_tensor(m, m, n, rng);
  // fundamental set from unit initial data: unfold(X_i(0)) = e_i
  std::vector<Tensor3> initial;
  for (int q = 0; q < mn; ++q) {
    Matrix e = Matrix::Zero(mn, 1);
    e(q, 0) = Complex(1, 0);
    initial.push_back(fold(e, n));
  }
  SECTION("W(0) = det(I) = 1 exactly") {
    REQUIRE(wronskian(initial) == Complex(1, 0));
  }
  SECTION("duplicated solutions give W = 0 exactly") {
    std::vector<Tensor3> dep = initial;
    dep[3] = dep[0];
    REQUIRE(wronskian(dep) == Complex(0, 0));
  }
  SECTION("Abel-Liouville form and the dichotomy") {
    std::vector<SolutionFn> sols;
    for (int q = 0; q < mn; ++q) {
      const Tensor3 y0 = initial[q];
      sols.push_back([&a, y0](double t) { return t_product(t_exp(a, t), y0); });
    }
    std::vector<double> times;
    for (int k = 0; k < 10; ++k) times.push_back(0.1 * k);
    const WronskianTrace trace = wronskian_trace(sols, times);
    // trace(bcirc(A)) = n * trace(A_1)
    Complex tr(0, 0);
    for (int i = 0; i < m; ++i) tr += a(i, i, 0);
    tr *= double(n);
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
      const Complex expected = std::exp(tr * trace.times[k]);
      REQUIRE(std::abs(trace.values[k]) > 0);
      REQUIRE(std::abs(trace.values[k] - expected) <=
              1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
  SECTION("count and shape mismatches are rejected") {
    std::vector<Tensor3> three(initial.begin(), initial.begin() + 3);
    REQUIRE_THROWS_AS(wronskian(three), dimension_error);
    std::vector<Tensor3> wide(mn, random_tensor(m, 2, n, rng));
    REQUIRE_THROWS_AS(wronskian(wide), dimension_error);
  }
}

TEST_CASE("real_solution_split") {
  Rng rng(167);
  // real coefficient tensor
  Tensor3 a(2, 2, 2);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) a(i, j, k) = Complex(rng.normal(), 0);
  const std::vector<double> samples{0.2, 0.5};
  SECTION("real solutions split into themselves and zero") {
    Tensor3 y0(2, 1, 2);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) y0(i, 0, k) = Complex(rng.normal(), 0);
    const SolutionFn x = [&](double t) { return t_product(t_exp(a, t), y0); };
    const RealSplit split = real_solution_split(x, a, samples);
    REQUIRE((split.im(0.3)).frobenius_norm() <= 1e-13);
    REQUIRE((split.re(0.3) - x(0.3)).frobenius_norm() <= 1e-13);
    REQUIRE(split.max_residual_re <= 1e-8);
  }
  SECTION("complex eigenpair of a real tensor splits into two real solutions") {
    const TSpectrum s = t_eigenvalues(a, true);
    std::size_t pick = 0;
    double best_im = 0;
    for (std::size_t q = 0; q < s.eigenvalues.size(); ++q)
      if (std::abs(s.eigenvalues[q].imag()) > best_im) {
        best_im = std::abs(s.eigenvalues[q].imag());
        pick = q;
      }
    const Complex lambda = s.eigenvalues[pick];
    const Tensor3 x0 = s.eigenvectors[pick];
    const SolutionFn x = [lambda, x0](double t) {
      return std::exp(lambda * t) * x0;
    };
    const RealSplit split = real_solution_split(x, a, samples);
    REQUIRE(split.max_residual_re <= 1e-8);
    REQUIRE(split.max_residual_im <= 1e-8);
  }
  SECTION("constant complex solution of the zero system") {
    const Tensor3 zero = Tensor3::zero(2, 2, 2);
    Tensor3 c(2, 1, 2);
    c(0, 0, 0) = Complex(1, 1);
    const SolutionFn x = [c](double) { return c; };
    const RealSplit split = real_solution_split(x, zero, samples);
    REQUIRE(split.max_residual_re <= 1e-12);
    REQUIRE(split.max_residual_im <= 1e-12);
  }
  SECTION("complex coefficients are rejected") {
    Tensor3 bad = a;
    bad(0, 0, 0) += Complex(0, 0.5);
    const SolutionFn x = [&](double) { return Tensor3::zero(2, 1, 2); };
    REQUIRE_THROWS_AS(real_solution_split(x, bad, samples), std::invalid_argument);
  }
}
