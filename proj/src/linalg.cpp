#include "ellipdet/linalg.hpp"

#include <string>
#include <utility>

namespace ellipdet {

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
  if (n < 1) throw DomainError("matrix order must be positive");
  entries_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
}

ComplexMatrix::ComplexMatrix(int n, std::vector<CScalar> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw DomainError("matrix order must be positive");
  if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DomainError("matrix of order " + std::to_string(n) + " needs n*n entries");
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = CScalar(1);
  return m;
}

ComplexMatrix ComplexMatrix::reversed_columns() const {
  ComplexMatrix out(n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) out(r, c) = (*this)(r, n_ - 1 - c);
  }
  return out;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : entries_) {
    if (!z.is_finite()) return false;
  }
  return true;
}

CScalar det_lu(const ComplexMatrix& m, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const int n = m.order();
  ComplexMatrix a = m;
  CScalar det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    Real best = a(col, col).norm();
    for (int r = col + 1; r < n; ++r) {
      Real mag = a(r, col).norm();
      if (best < mag) {
        best = std::move(mag);
        pivot = r;
      }
    }
    if (best.is_zero()) return CScalar(0);
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    const CScalar inv_pivot = a(col, col).reciprocal();
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const CScalar factor = a(r, col) * inv_pivot;
      for (int c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

namespace {

CScalar cofactor_expand(const ComplexMatrix& m, std::vector<int>& columns, int row) {
  const int n = m.order();
  if (row == n) return CScalar(1);
  CScalar sum(0);
  int sign = 1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int col = columns[i];
    if (!m(row, col).is_zero()) {
      std::vector<int> rest;
      rest.reserve(columns.size() - 1);
      for (std::size_t k = 0; k < columns.size(); ++k) {
        if (k != i) rest.push_back(columns[k]);
      }
      CScalar term = m(row, col) * cofactor_expand(m, rest, row + 1);
      if (sign > 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

CScalar det_cofactor(const ComplexMatrix& m) {
  if (m.order() > kMaxCofactorOrder) {
    throw DomainError("cofactor expansion limited to order " + std::to_string(kMaxCofactorOrder));
  }
  std::vector<int> columns;
  for (int c = 0; c < m.order(); ++c) columns.push_back(c);
  return cofactor_expand(m, columns, 0);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.order() != b.order()) throw DomainError("matmul order mismatch");
  const int n = a.order();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      CScalar sum(0);
      for (int k = 0; k < n; ++k) sum += a(r, k) * b(k, c);
      out(r, c) = std::move(sum);
    }
  }
  return out;
}

}  // namespace ellipdet
