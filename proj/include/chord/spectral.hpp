#pragma once

#include "chord/bigint.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chord {

/// Small dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {}

  static IntMatrix identity(int size);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int i, int j) { return data_[index(i, j)]; }
  std::int64_t operator()(int i, int j) const { return data_[index(i, j)]; }

  IntMatrix transpose() const;
  std::int64_t trace() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(std::int64_t s, const IntMatrix& a);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * cols_ + j); }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Matrices of K_{k+1}: adjacency A, incidence B (edges in lexicographic
/// order), line-graph adjacency L and M = (k-2) I - L.
struct GraphMatrices {
  int k = 0;
  int edges = 0;
  IntMatrix A, B, L, M;
};

/// Throws DomainError for k < 2, ContractViolation if B B^T = kI + A or
/// B^T B = 2I + L fails.
GraphMatrices build_matrices(int k);

struct Eigenvalue {
  Rational value;
  std::int64_t multiplicity = 0;
};

struct SpectrumReport {
  std::string matrix;
  int k = 0;
  std::vector<Eigenvalue> claimed;
  bool verified = false;
  std::string certificate;
};

SpectrumReport verify_spectrum_A(int k);
SpectrumReport verify_spectrum_BBt(int k);
SpectrumReport verify_spectrum_L(int k);
SpectrumReport verify_spectrum_M(int k);

/// j^T M^{-1} j by exact solve of M x = j. Throws ContractViolation if the
/// solve is singular or disagrees with the eigenvector route M j = -k j.
Rational grand_sum_inverse(int k);

/// j^T M^{-1} j * det M with det M by fraction-free elimination.
Rational corollary_product(int k);

/// Grand sum and its product with det M against the closed forms
/// -(k+1)/2 and (k+1) k^{k(k-1)/2} / 2.
SpectrumReport verify_grand_sum_and_product(int k);

/// The five certificates for one k: A, BB^T, L, M, grand sum / product.
std::vector<SpectrumReport> spectral_certificates(int k);

/// Determinant by Bareiss fraction-free elimination.
BigInt determinant(const IntMatrix& m);

/// Exact solution of m x = rhs; throws ContractViolation when m is singular.
std::vector<Rational> solve_exact(const IntMatrix& m, std::span<const std::int64_t> rhs);

}  // namespace chord
