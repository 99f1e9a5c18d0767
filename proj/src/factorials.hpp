#pragma once

// Internal: shifted-factorial tables with pole guarding, shared by the
// identity evaluators.

#include <string>
#include <vector>

#include "ellipdet/linalg.hpp"
#include "ellipdet/params.hpp"
#include "ellipdet/theta.hpp"

namespace ellipdet::detail {

class Factorials {
 public:
  Factorials(const EllipticBase& base, const PrecisionContext& ctx, Real threshold)
      : base_(base), ctx_(ctx), threshold_(std::move(threshold)) {}

  Factorials(const EllipticBase& base, const PrecisionContext& ctx);

  [[nodiscard]] const EllipticBase& base() const { return base_; }
  [[nodiscard]] const CScalar& q() const { return base_.q(); }
  [[nodiscard]] const PrecisionContext& ctx() const { return ctx_; }

  CScalar theta(const CScalar& x) const { return theta_product(x, base_, ctx_); }
  /// theta(x) destined for a denominator.
  CScalar theta_den(const CScalar& x, const std::string& label) const;

  /// (a)_0 .. (a)_k
  std::vector<CScalar> table(const CScalar& a, int k) const { return epoch_table(a, k, base_, ctx_); }
  /// (a)_0 .. (a)_k with every factor pole-checked.
  std::vector<CScalar> den_table(const CScalar& a, int k, const std::string& label) const;

  /// prod (num_i)_k / prod (den_i)_k
  CScalar ratio(const std::vector<CScalar>& num, const std::vector<CScalar>& den, int k,
                const std::string& label) const;

  /// q^k
  CScalar qpow(long k) const { return pow_int(base_.q(), k); }

 private:
  const EllipticBase& base_;
  const PrecisionContext& ctx_;
  Real threshold_;
};

/// Bases of one matrix row: entry (row, col) is
/// prod (num_i)_col / prod (den_i)_col.
struct RowBases {
  std::vector<CScalar> num;
  std::vector<CScalar> den;
};

ComplexMatrix ratio_matrix(const std::vector<RowBases>& rows, const Factorials& f,
                           const std::string& label);

/// prod_{j=2}^{n} (base_of(j))_{j-1} where base_of(j) = scale * q^{shift + j}
CScalar staircase(const CScalar& scale, long shift, int n, const Factorials& f, bool denominator,
                  const std::string& label);

}  // namespace ellipdet::detail
