#pragma once

/// \file
/// Small dense complex matrices and determinants.

#include <cstddef>
#include <vector>

#include "ellipdet/numeric.hpp"

namespace ellipdet {

class ComplexMatrix {
 public:
  /// Zero matrix of order n (n >= 1).
  explicit ComplexMatrix(int n);
  /// Row-major entries; throws DomainError unless entries.size() == n*n.
  ComplexMatrix(int n, std::vector<CScalar> entries);

  static ComplexMatrix identity(int n);

  [[nodiscard]] int order() const { return n_; }

  /// 0-based (row, column).
  CScalar& operator()(int row, int col) { return entries_[index(row, col)]; }
  const CScalar& operator()(int row, int col) const { return entries_[index(row, col)]; }

  /// Same matrix with column order reversed.
  [[nodiscard]] ComplexMatrix reversed_columns() const;
  [[nodiscard]] bool all_finite() const;

 private:
  [[nodiscard]] std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(col);
  }

  int n_;
  std::vector<CScalar> entries_;
};

/// Largest order accepted by det_cofactor.
inline constexpr int kMaxCofactorOrder = 7;

/// Gaussian elimination with partial pivoting by magnitude. A singular
/// matrix yields 0 (no error).
CScalar det_lu(const ComplexMatrix& m, const PrecisionContext& ctx);

/// First-row Laplace expansion. Throws DomainError for order > 7.
CScalar det_cofactor(const ComplexMatrix& m);

/// Throws DomainError on order mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace ellipdet
