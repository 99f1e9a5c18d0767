#include "factorials.hpp"

#include "ellipdet/identities.hpp"

namespace ellipdet::detail {

Factorials::Factorials(const EllipticBase& base, const PrecisionContext& ctx)
    : Factorials(base, ctx, pole_threshold(ctx)) {}

CScalar Factorials::theta_den(const CScalar& x, const std::string& label) const {
  if (x.is_zero()) throw DegenerateParameters(label + " (argument 0)");
  CScalar value = theta(x);
  if (abs(value) < threshold_) throw DegenerateParameters(label);
  return value;
}

std::vector<CScalar> Factorials::den_table(const CScalar& a, int k, const std::string& label) const {
  std::vector<CScalar> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  out.emplace_back(1);
  CScalar arg = a;
  for (int i = 0; i < k; ++i) {
    out.push_back(out.back() * theta_den(arg, label + " factor " + std::to_string(i)));
    arg *= q();
  }
  return out;
}

CScalar Factorials::ratio(const std::vector<CScalar>& num, const std::vector<CScalar>& den, int k,
                          const std::string& label) const {
  CScalar top(1);
  for (const auto& a : num) top *= table(a, k).back();
  CScalar bottom(1);
  for (std::size_t i = 0; i < den.size(); ++i) {
    bottom *= den_table(den[i], k, label + " den " + std::to_string(i)).back();
  }
  return top / bottom;
}

ComplexMatrix ratio_matrix(const std::vector<RowBases>& rows, const Factorials& f,
                           const std::string& label) {
  const int n = static_cast<int>(rows.size());
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    std::vector<CScalar> entries(static_cast<std::size_t>(n), CScalar(1));
    for (const auto& a : rows[r].num) {
      const auto t = f.table(a, n - 1);
      for (int c = 0; c < n; ++c) entries[c] *= t[c];
    }
    for (std::size_t i = 0; i < rows[r].den.size(); ++i) {
      const auto t = f.den_table(rows[r].den[i], n - 1,
                                 label + " row " + std::to_string(r + 1) + " den " +
                                     std::to_string(i));
      for (int c = 0; c < n; ++c) entries[c] /= t[c];
    }
    for (int c = 0; c < n; ++c) m(r, c) = std::move(entries[c]);
  }
  return m;
}

CScalar staircase(const CScalar& scale, long shift, int n, const Factorials& f, bool denominator,
                  const std::string& label) {
  CScalar out(1);
  for (int j = 2; j <= n; ++j) {
    const CScalar a = scale * f.qpow(shift + j);
    if (denominator) {
      out *= f.den_table(a, j - 1, label + " j=" + std::to_string(j)).back();
    } else {
      out *= f.table(a, j - 1).back();
    }
  }
  return out;
}

}  // namespace ellipdet::detail
