#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tprod/ode.hpp"
#include "tprod/pseudospectra.hpp"
#include "tprod/tensor.hpp"

namespace tprod {

// 17 significant digits round-trip a double exactly.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// a+bi / a-bi with 17 significant digits per component.
inline std::string format_complex(Complex z) {
  char buf[144];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// Tensor file: a small key/value header followed by the real and imaginary
// parts as flat arrays in storage order (slice-major, column-major within
// each slice). Round trips are bit exact.
//
//   tensor3
//   m <rows>
//   p <cols>
//   n <slices>
//   real
//   <m*p*n values>
//   imag
//   <m*p*n values>
inline void save_tensor(const std::string& path, const Tensor3& t) {
  std::ofstream out(path);
  if (!out) throw io_error("save_tensor: cannot open '" + path + "' for writing");
  out << "tensor3\n";
  out << "m " << t.rows() << "\n";
  out << "p " << t.cols() << "\n";
  out << "n " << t.slices() << "\n";
  out << "real\n";
  for (std::size_t q = 0; q < t.size(); ++q)
    out << format_double(t.data()[q].real()) << (q % 8 == 7 ? "\n" : " ");
  if (t.size() % 8 != 0) out << "\n";
  out << "imag\n";
  for (std::size_t q = 0; q < t.size(); ++q)
    out << format_double(t.data()[q].imag()) << (q % 8 == 7 ? "\n" : " ");
  if (t.size() % 8 != 0) out << "\n";
  if (!out) throw io_error("save_tensor: write to '" + path + "' failed");
}

namespace detail {

class TokenReader {
 public:
  TokenReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  bool next(std::string& tok) {
    for (;;) {
      if (pos_ >= tokens_.size()) {
        if (!std::getline(in_, line_buf_)) return false;
        ++line_;
        tokens_.clear();
        pos_ = 0;
        std::istringstream ls(line_buf_);
        std::string t;
        while (ls >> t) tokens_.push_back(t);
        continue;
      }
      tok = tokens_[pos_++];
      return true;
    }
  }

  std::string require(const char* what) {
    std::string tok;
    if (!next(tok))
      throw io_error(path_ + ":" + std::to_string(line_) +
                     ": unexpected end of file, expected " + what);
    return tok;
  }

  int require_int(const char* what) {
    const std::string tok = require(what);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw io_error(path_ + ":" + std::to_string(line_) + ": expected integer " +
                     what + ", got '" + tok + "'");
    }
  }

  double require_double(const char* what) {
    const std::string tok = require(what);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw io_error(path_ + ":" + std::to_string(line_) + ": expected number " +
                     what + ", got '" + tok + "'");
    }
  }

  void require_keyword(const std::string& kw) {
    const std::string tok = require(kw.c_str());
    if (tok != kw)
      throw io_error(path_ + ":" + std::to_string(line_) + ": expected '" + kw +
                     "', got '" + tok + "'");
  }

  int line() const { return line_; }
  const std::string& path() const { return path_; }

 private:
  std::istream& in_;
  std::string path_;
  std::string line_buf_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace detail

inline Tensor3 load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("load_tensor: cannot open '" + path + "'");
  detail::TokenReader r(in, path);
  r.require_keyword("tensor3");
  r.require_keyword("m");
  const int m = r.require_int("row count");
  r.require_keyword("p");
  const int p = r.require_int("column count");
  r.require_keyword("n");
  const int n = r.require_int("slice count");
  if (m < 1 || p < 1 || n < 1)
    throw io_error(path + ": inconsistent dimensions " +
                   Tensor3::shape_string(m, p, n));
  Tensor3 t(m, p, n);
  r.require_keyword("real");
  for (std::size_t q = 0; q < t.size(); ++q)
    t.data()[q].real(r.require_double("real entry"));
  r.require_keyword("imag");
  for (std::size_t q = 0; q < t.size(); ++q)
    t.data()[q].imag(r.require_double("imaginary entry"));
  std::string extra;
  if (r.next(extra))
    throw io_error(path + ":" + std::to_string(r.line()) +
                   ": trailing content '" + extra + "'");
  return t;
}

// Grid file: CSV "re,im,value" in row-major order (imaginary axis outer, real
// axis inner), one row per grid point, plus a companion "<path>.meta" record
// with region, resolution, norm, epsilon levels and tensor provenance.
inline void write_grid_csv(const std::string& path, const PseudoGrid& grid,
                           const std::string& provenance) {
  std::ofstream out(path);
  if (!out) throw io_error("write_grid_csv: cannot open '" + path + "' for writing");
  out << "re,im,value\n";
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      out << format_double(grid.re(ix)) << "," << format_double(grid.im(iy)) << ","
          << format_double(grid.value(ix, iy)) << "\n";
  if (!out) throw io_error("write_grid_csv: write to '" + path + "' failed");

  std::ofstream meta(path + ".meta");
  if (!meta) throw io_error("write_grid_csv: cannot open '" + path + ".meta'");
  meta << "re_min " << format_double(grid.re_min) << "\n";
  meta << "re_max " << format_double(grid.re_max) << "\n";
  meta << "im_min " << format_double(grid.im_min) << "\n";
  meta << "im_max " << format_double(grid.im_max) << "\n";
  meta << "nx " << grid.nx << "\n";
  meta << "ny " << grid.ny << "\n";
  meta << "norm " << (grid.norm == Norm::one ? "1" : grid.norm == Norm::two ? "2" : "inf")
       << "\n";
  meta << "epsilons";
  for (double e : grid.epsilons) meta << " " << format_double(e);
  meta << "\n";
  meta << "tensor " << provenance << "\n";
}

// Trajectory file: CSV "t,i,j,k,re,im", entries in storage order per sample.
inline void write_trajectory_csv(const std::string& path, const OdeSolution& sol) {
  std::ofstream out(path);
  if (!out)
    throw io_error("write_trajectory_csv: cannot open '" + path + "' for writing");
  out << "t,i,j,k,re,im\n";
  for (std::size_t s = 0; s < sol.times.size(); ++s) {
    const Tensor3& x = sol.states[s];
    for (int k = 0; k < x.slices(); ++k)
      for (int j = 0; j < x.cols(); ++j)
        for (int i = 0; i < x.rows(); ++i)
          out << format_double(sol.times[s]) << "," << i << "," << j << "," << k
              << "," << format_double(x(i, j, k).real()) << ","
              << format_double(x(i, j, k).imag()) << "\n";
  }
  if (!out) throw io_error("write_trajectory_csv: write to '" + path + "' failed");
}

// N x N tridiagonal Toeplitz test matrix: zero diagonal, unit superdiagonal,
// 1/4 subdiagonal.
inline Matrix toeplitz_tpz(int n) {
  Matrix t = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    t(i, i + 1) = 1.0;
    t(i + 1, i) = 0.25;
  }
  return t;
}

// The four example tensors used by the pseudospectra demonstrations, all with
// three N x N frontal slices built from the tridiagonal Toeplitz matrix:
//   A0: (T, T, T)        A1: (T, 2T, 2T)
//   A2: (T/4, T/2, T)    A3: (T, 10T, I)
inline Tensor3 gen_example(const std::string& name, int n) {
  if (n < 2) throw std::invalid_argument("gen_example: N must be >= 2");
  const Matrix t = toeplitz_tpz(n);
  const Matrix eye = Matrix::Identity(n, n);
  if (name == "A0") return Tensor3::from_slices({t, t, t});
  if (name == "A1") return Tensor3::from_slices({t, 2.0 * t, 2.0 * t});
  if (name == "A2") return Tensor3::from_slices({0.25 * t, 0.5 * t, t});
  if (name == "A3") return Tensor3::from_slices({t, 10.0 * t, eye});
  throw std::invalid_argument("gen_example: unknown example '" + name +
                              "' (expected A0, A1, A2 or A3)");
}

}  // namespace tprod
