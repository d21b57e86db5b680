#pragma once

#include <stdexcept>
#include <string>

namespace tprod {

// Shape disagreement between operands (inner dimensions, slice counts, ...).
class dimension_error : public std::invalid_argument {
 public:
  explicit dimension_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Some transformed face is numerically singular; carries the offending face.
class singular_tensor_error : public std::runtime_error {
 public:
  singular_tensor_error(int face, double sigma_min, const std::string& msg)
      : std::runtime_error(msg), face_(face), sigma_min_(sigma_min) {}
  int face() const { return face_; }
  double sigma_min() const { return sigma_min_; }

 private:
  int face_;
  double sigma_min_;
};

// Normality test failed; carries the residual ||A*A^H - A^H*A||_F.
class not_normal_error : public std::runtime_error {
 public:
  not_normal_error(double residual, const std::string& msg)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class not_hermitian_error : public std::runtime_error {
 public:
  explicit not_hermitian_error(const std::string& msg) : std::runtime_error(msg) {}
};

// P^-1 * A * P is not F-diagonal within tolerance; carries the off-diagonal mass.
class not_f_diagonalizable_error : public std::runtime_error {
 public:
  not_f_diagonalizable_error(double residual, const std::string& msg)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// File parsing / serialization failure with position diagnostics.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tprod
