#ifndef FINITETRAP_MATRIX_HPP
#define FINITETRAP_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finitetrap/errors.hpp"

namespace finitetrap {

using Complex = std::complex<double>;

// Dense complex matrix on a truncated Fock (or vibronic product) basis.
// Dimensions in this library stay small (a few hundred at most), so no
// effort is spent on sparsity.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(std::size_t dim, std::string label = {})
      : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}), label_(std::move(label)) {
    if (dim == 0) throw UsageError("OperatorMatrix: dimension must be positive");
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  OperatorMatrix adjoint() const {
    OperatorMatrix out(dim_, label_.empty() ? std::string{} : label_ + "^dag");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  OperatorMatrix operator*(const OperatorMatrix& rhs) const {
    check_same_dim(rhs);
    OperatorMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const Complex a = (*this)(i, k);
        if (a == Complex{}) continue;
        for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
      }
    }
    return out;
  }

  OperatorMatrix operator+(const OperatorMatrix& rhs) const {
    check_same_dim(rhs);
    OperatorMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + rhs.entries_[i];
    return out;
  }

  OperatorMatrix operator-(const OperatorMatrix& rhs) const {
    check_same_dim(rhs);
    OperatorMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - rhs.entries_[i];
    return out;
  }

  OperatorMatrix operator*(Complex scale) const {
    OperatorMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scale;
    return out;
  }

  std::vector<Complex> apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw UsageError("OperatorMatrix::apply: vector length mismatch");
    std::vector<Complex> out(dim_, Complex{});
    for (std::size_t i = 0; i < dim_; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  double frobenius_norm() const {
    double acc = 0.0;
    for (const Complex& e : entries_) acc += std::norm(e);
    return std::sqrt(acc);
  }

  bool is_hermitian(double tol = 1e-12) const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

 private:
  void check_same_dim(const OperatorMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw UsageError("OperatorMatrix: dimension mismatch");
  }

  std::size_t dim_;
  std::vector<Complex> entries_;
  std::string label_;
};

}  // namespace finitetrap

#endif  // FINITETRAP_MATRIX_HPP
