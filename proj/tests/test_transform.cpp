#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "tprod/io.hpp"
#include "tprod/matching.hpp"
#include "tprod/rng.hpp"
#include "tprod/transform.hpp"

using namespace tprod;

TEST_CASE("to_faces computes the DFT of the slices") {
  SECTION("n = 1 is the identity transform") {
    Rng rng(1);
    const Tensor3 t = random_tensor(3, 2, 1, rng);
    const FaceSet f = to_faces(t);
    REQUIRE(f.count() == 1);
    REQUIRE((f.face(0) - t.slice(0)).norm() == 0.0);
  }
  SECTION("1x1x2 gives (a+b, a-b)") {
    Tensor3 t(1, 1, 2);
    t(0, 0, 0) = Complex(2, 1);
    t(0, 0, 1) = Complex(-1, 3);
    const FaceSet f = to_faces(t);
    REQUIRE(std::abs(f.face(0)(0, 0) - Complex(1, 4)) <= 1e-15);
    REQUIRE(std::abs(f.face(1)(0, 0) - Complex(3, -2)) <= 1e-15);
  }
  SECTION("equal slices concentrate in face 0") {
    // three equal tridiagonal Toeplitz slices: faces (3 T, 0, 0) since
    // 1 + w + w^2 = 0 for the cube root w
    const Tensor3 a0 = gen_example("A0", 5);
    const FaceSet f = to_faces(a0);
    const Matrix t = toeplitz_tpz(5);
    REQUIRE((f.face(0) - 3.0 * t).norm() <= 1e-14 * t.norm());
    REQUIRE(f.face(1).norm() <= 1e-14 * t.norm());
    REQUIRE(f.face(2).norm() <= 1e-14 * t.norm());
  }
}

TEST_CASE("block-diagonalization identity against the dense oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = rng.uniform_int(1, 4), n = rng.uniform_int(1, 6);
    const Tensor3 t = random_tensor(m, m, n, rng);
    const auto dense = oracle::dense_faces(t);
    const FaceSet f = to_faces(t);
    for (int i = 0; i < n; ++i)
      REQUIRE((f.face(i) - dense[i]).norm() <= 1e-12 * std::max(1.0, dense[i].norm()));
    // and the off-diagonal blocks of the conjugated bcirc vanish
    const Matrix k = oracle::dft_kron(n, m);
    const Matrix conj = k * oracle::dense_bcirc(t) * k.adjoint();
    Matrix off = conj;
    for (int i = 0; i < n; ++i) off.block(i * m, i * m, m, m).setZero();
    REQUIRE(off.norm() <= 1e-12 * std::max(1.0, conj.norm()));
  }
}

TEST_CASE("from_faces inverts to_faces") {
  SECTION("constant faces give a single leading slice") {
    Rng rng(9);
    const Matrix m = random_matrix(3, 2, rng);
    FaceSet f(3, 2, 4);
    for (int i = 0; i < 4; ++i) f.face(i) = m;
    const Tensor3 t = from_faces(f);
    REQUIRE((t.slice(0) - m).norm() <= 1e-14 * m.norm());
    for (int k = 1; k < 4; ++k) REQUIRE(t.slice(k).norm() <= 1e-14 * m.norm());
  }
  SECTION("round trip on random 3x3x4") {
    Rng rng(11);
    const Tensor3 t = random_tensor(3, 3, 4, rng);
    const Tensor3 r = from_faces(to_faces(t));
    REQUIRE((r - t).frobenius_norm() <= 1e-12 * t.frobenius_norm());
  }
  SECTION("faces (a+b, a-b) fold back to (a, b)") {
    FaceSet f(1, 1, 2);
    const Complex a(0.5, -2), b(1.5, 1);
    f.face(0)(0, 0) = a + b;
    f.face(1)(0, 0) = a - b;
    const Tensor3 t = from_faces(f);
    REQUIRE(std::abs(t(0, 0, 0) - a) <= 1e-15);
    REQUIRE(std::abs(t(0, 0, 1) - b) <= 1e-15);
  }
}

TEST_CASE("face_map") {
  Rng rng(13);
  SECTION("identity op is a no-op") {
    const Tensor3 t = random_tensor(2, 2, 3, rng);
    const FaceSet f = to_faces(t);
    const FaceSet g = face_map(f, [](const Matrix& m) { return m; });
    for (int i = 0; i < 3; ++i) REQUIRE((g.face(i) - f.face(i)).norm() == 0.0);
  }
  SECTION("per-face inverse reproduces the t_inverse example") {
    Tensor3 t(1, 1, 2);
    t(0, 0, 0) = Complex(2, 0);
    t(0, 0, 1) = Complex(1, 0);
    const FaceSet f = to_faces(t);
    REQUIRE(std::abs(f.face(0)(0, 0) - Complex(3, 0)) <= 1e-15);
    REQUIRE(std::abs(f.face(1)(0, 0) - Complex(1, 0)) <= 1e-15);
    const Tensor3 inv =
        from_faces(face_map(f, [](const Matrix& m) { return Matrix(m.inverse()); }));
    REQUIRE(std::abs(inv(0, 0, 0) - Complex(2.0 / 3.0, 0)) <= 1e-15);
    REQUIRE(std::abs(inv(0, 0, 1) - Complex(-1.0 / 3.0, 0)) <= 1e-15);
  }
  SECTION("squaring faces equals faces of the t-product square") {
    const Tensor3 t = random_tensor(3, 3, 4, rng);
    const FaceSet f = to_faces(t);
    const FaceSet sq = face_map(f, [](const Matrix& m) { return Matrix(m * m); });
    const FaceSet ref = to_faces(t_product(t, t));
    for (int i = 0; i < 4; ++i)
      REQUIRE((sq.face(i) - ref.face(i)).norm() <=
              1e-11 * std::max(1.0, ref.face(i).norm()));
  }
  SECTION("op failures carry the face index") {
    const FaceSet f = to_faces(random_tensor(2, 2, 3, rng));
    int calls = 0;
    try {
      face_map(f, [&calls](const Matrix& m) -> Matrix {
        if (++calls == 2) throw std::runtime_error("boom");
        return m;
      });
      FAIL("expected failure");
    } catch (const std::runtime_error& e) {
      REQUIRE(std::string(e.what()).find("face 1") != std::string::npos);
    }
  }
}

TEST_CASE("F-diagonality transfers between tensor and faces") {
  Rng rng(17);
  SECTION("diagonal slices imply diagonal faces") {
    Tensor3 t(3, 3, 4);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 3; ++i) t(i, i, k) = rng.complex_normal();
    const FaceSet f = to_faces(t);
    for (int i = 0; i < 4; ++i) {
      Matrix off = f.face(i);
      off.diagonal().setZero();
      REQUIRE(off.norm() == 0.0);  // tube DFT never mixes positions
    }
  }
  SECTION("diagonal faces imply diagonal slices") {
    FaceSet f(3, 3, 4);
    for (int i = 0; i < 4; ++i)
      for (int q = 0; q < 3; ++q) f.face(i)(q, q) = rng.complex_normal();
    const Tensor3 t = from_faces(f);
    REQUIRE(is_f_diagonal(t, 1e-13));
  }
}

TEST_CASE("faces carry the spectrum of bcirc") {
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = rng.uniform_int(2, 5), n = rng.uniform_int(2, 5);
    const Tensor3 t = random_tensor(m, m, n, rng);
    std::vector<Complex> from_faces_eigs;
    const FaceSet f = to_faces(t);
    for (int i = 0; i < n; ++i)
      for (const Complex& l : oracle::dense_eigenvalues(f.face(i)))
        from_faces_eigs.push_back(l);
    const auto dense = oracle::bcirc_eigenvalues(t);
    REQUIRE(match_distance(from_faces_eigs, dense) <=
            1e-9 * std::max(1.0, tensor_norm(t, Norm::two)));
  }
}

TEST_CASE("to_faces is linear") {
  Rng rng(23);
  const Tensor3 a = random_tensor(3, 2, 5, rng);
  const Tensor3 b = random_tensor(3, 2, 5, rng);
  const Complex al(1.5, -0.5), be(0.25, 2);
  const FaceSet lhs = to_faces(al * a + be * b);
  const FaceSet fa = to_faces(a), fb = to_faces(b);
  for (int i = 0; i < 5; ++i) {
    const Matrix rhs = al * fa.face(i) + be * fb.face(i);
    REQUIRE((lhs.face(i) - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("recursive FFT agrees with the direct DFT") {
  Rng rng(29);
  for (int n : {2, 3, 4, 5, 6, 8, 9, 12, 16, 30}) {
    std::vector<Complex> x(n), fast(n), direct(n);
    for (Complex& v : x) v = rng.complex_normal();
    detail::fft_forward(x.data(), fast.data(), n);
    detail::dft_direct(x.data(), direct.data(), n);
    double scale = 0, diff = 0;
    for (int k = 0; k < n; ++k) {
      scale = std::max(scale, std::abs(direct[k]));
      diff = std::max(diff, std::abs(fast[k] - direct[k]));
    }
    REQUIRE(diff <= 1e-12 * std::max(1.0, scale));
    // inverse undoes forward
    std::vector<Complex> back(n);
    detail::fft_inverse(fast.data(), back.data(), n);
    for (int k = 0; k < n; ++k) REQUIRE(std::abs(back[k] - x[k]) <= 1e-13);
  }
}
