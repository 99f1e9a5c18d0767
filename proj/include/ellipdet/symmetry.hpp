#pragma once

/// \file
/// The two generators of the six-element symmetry group of the determinant
/// transformation, realised as maps on DtParams.
///
/// Every map g comes with a prefactor P_g such that
///   det X(p) = P_g(p) * det X(g p),
/// where X is the matrix (b_j,c_j,d_j)_{k-1} / (a/b_j,a/c_j,a/d_j)_{k-1}.
/// Words compose like functions: "sigma tau" applies tau first, and its
/// prefactor is P_tau(p) * P_sigma(tau p).

#include <string>
#include <vector>

#include "ellipdet/identities.hpp"
#include "ellipdet/params.hpp"

namespace ellipdet {

enum class Generator { sigma, tau };

/// A reduced word over {sigma, tau}, leftmost letter applied last.
struct SymElement {
  std::vector<Generator> word;

  /// "id", "sigma", "tau", "sigma_tau", ...
  [[nodiscard]] std::string name() const;
  /// The explicit closed form of the same element, if it is not the identity.
  [[nodiscard]] bool has_form() const { return !word.empty(); }
  [[nodiscard]] DtForm form() const;
};

struct SymImage {
  DtParams params;
  CScalar prefactor;
};

/// (a, b_j, c_j, d_j) -> (e, a/(c_j d_j), a/(b_j d_j), a/(b_j c_j)).
SymImage apply_sigma(const DtParams& p, const PrecisionContext& ctx);

/// (a, b_j, c_j, d_j) -> (q^{4-2n}/a, q^{2-n}b_j/a, q^{2-n}c_j/a, q^{2-n}d_j/a).
SymImage apply_tau(const DtParams& p, const PrecisionContext& ctx);

SymImage apply(Generator g, const DtParams& p, const PrecisionContext& ctx);

/// Applies the word right to left, multiplying prefactors, each evaluated at
/// its own intermediate point.
SymImage apply_word(const std::vector<Generator>& word, const DtParams& p,
                    const PrecisionContext& ctx);

struct OrbitEntry {
  SymElement element;
  DtParams params;
  CScalar prefactor;
};

/// id, sigma, tau, sigma_tau, tau_sigma, sigma_tau_sigma, in that order.
std::vector<SymElement> group_elements();
std::vector<OrbitEntry> orbit(const DtParams& p, const PrecisionContext& ctx);

/// Largest componentwise rel_residual between two parameter tuples
/// (a, then all b_j, c_j, d_j). Tuples of different order never match.
Real param_distance(const DtParams& x, const DtParams& y);

struct GroupLaws {
  /// worst parameter round-trip error over sigma^2, tau^2, (sigma tau)^3
  Real roundtrip_residual;
  /// worst |prefactor - 1| (relative) over the same round trips
  Real prefactor_residual;
  /// sigma tau sigma against tau sigma tau
  Real braid_residual;
  /// smallest param_distance between the six points visited by (sigma tau)^3
  Real min_intermediate_distance;
  /// composed prefactor of (sigma tau)^3
  CScalar cube_prefactor;
  bool roundtrip_ok = false;
  bool generic = false;
};

GroupLaws group_laws(const DtParams& p, const PrecisionContext& ctx);

/// Passes when the round trips hold to 2^-(P-16), the round-trip
/// prefactors equal 1 to the tolerance, and (sigma tau)^3 visits six
/// distinct points.
VerificationReport check_group_laws(const DtParams& p, const PrecisionContext& ctx);

struct HexagonEntry {
  SymElement element;
  CScalar image_det;  // det X(g p)
  CScalar composed;   // composed prefactor
  CScalar explicit_prefactor;
  /// det X(p) vs composed * det X(g p)
  Real det_residual;
  /// composed vs explicit closed form; zero for the identity
  Real prefactor_residual;
};

struct Hexagon {
  CScalar lhs_det;
  std::vector<HexagonEntry> entries;
  Real worst_det_residual;
  Real worst_prefactor_residual;
};

Hexagon hexagon(const DtParams& p, const PrecisionContext& ctx);

/// All six expressions of the orbit agree with det X(p), and each composed
/// prefactor matches its closed form.
VerificationReport check_hexagon(const DtParams& p, const PrecisionContext& ctx);

}  // namespace ellipdet
