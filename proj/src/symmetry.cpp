#include "ellipdet/symmetry.hpp"

#include <utility>

namespace ellipdet {

namespace {

using Word = std::vector<Generator>;

constexpr Generator S = Generator::sigma;
constexpr Generator T = Generator::tau;

}  // namespace

std::string SymElement::name() const {
  if (word.empty()) return "id";
  std::string out;
  for (const auto g : word) {
    if (!out.empty()) out += '_';
    out += g == S ? "sigma" : "tau";
  }
  return out;
}

DtForm SymElement::form() const {
  if (word == Word{S}) return DtForm::sigma;
  if (word == Word{T}) return DtForm::tau;
  if (word == Word{S, T}) return DtForm::sigma_tau;
  if (word == Word{T, S}) return DtForm::tau_sigma;
  if (word == Word{S, T, S}) return DtForm::sigma_tau_sigma;
  throw DomainError("no closed form for " + name());
}

SymImage apply_sigma(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  DtParams out{p.base, p.n, p.e(), {}, {}, {}};
  for (int j = 0; j < p.n; ++j) {
    out.b.push_back(p.a / (p.c[j] * p.d[j]));
    out.c.push_back(p.a / (p.b[j] * p.d[j]));
    out.d.push_back(p.a / (p.b[j] * p.c[j]));
  }
  return {std::move(out), dt_prefactor(p, DtForm::sigma, ctx)};
}

SymImage apply_tau(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const CScalar s = pow_int(p.base.q(), 2 - p.n) / p.a;
  DtParams out{p.base, p.n, pow_int(p.base.q(), 4 - 2 * p.n) / p.a, {}, {}, {}};
  for (int j = 0; j < p.n; ++j) {
    out.b.push_back(s * p.b[j]);
    out.c.push_back(s * p.c[j]);
    out.d.push_back(s * p.d[j]);
  }
  return {std::move(out), dt_prefactor(p, DtForm::tau, ctx)};
}

SymImage apply(Generator g, const DtParams& p, const PrecisionContext& ctx) {
  return g == S ? apply_sigma(p, ctx) : apply_tau(p, ctx);
}

SymImage apply_word(const std::vector<Generator>& word, const DtParams& p,
                    const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  SymImage out{p, CScalar(1)};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    SymImage step = apply(*it, out.params, ctx);
    out.prefactor *= step.prefactor;
    out.params = std::move(step.params);
  }
  return out;
}

std::vector<SymElement> group_elements() {
  return {{{}}, {{S}}, {{T}}, {{S, T}}, {{T, S}}, {{S, T, S}}};
}

std::vector<OrbitEntry> orbit(const DtParams& p, const PrecisionContext& ctx) {
  std::vector<OrbitEntry> out;
  for (auto& element : group_elements()) {
    SymImage image = apply_word(element.word, p, ctx);
    out.push_back({std::move(element), std::move(image.params), std::move(image.prefactor)});
  }
  return out;
}

Real param_distance(const DtParams& x, const DtParams& y) {
  if (x.n != y.n || x.b.size() != y.b.size() || x.c.size() != y.c.size() ||
      x.d.size() != y.d.size()) {
    return Real(1);
  }
  Real worst = rel_residual(x.a, y.a);
  for (std::size_t j = 0; j < x.b.size(); ++j) {
    worst = max(worst, rel_residual(x.b[j], y.b[j]));
    worst = max(worst, rel_residual(x.c[j], y.c[j]));
    worst = max(worst, rel_residual(x.d[j], y.d[j]));
  }
  return worst;
}

GroupLaws group_laws(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  GroupLaws out{Real(0), Real(0), Real(0), Real(0), CScalar(1)};

  for (const Word& word : {Word{S, S}, Word{T, T}}) {
    const SymImage image = apply_word(word, p, ctx);
    out.roundtrip_residual = max(out.roundtrip_residual, param_distance(image.params, p));
    out.prefactor_residual = max(out.prefactor_residual, rel_residual(image.prefactor, CScalar(1)));
  }

  // (sigma tau)^3, keeping every intermediate point.
  std::vector<DtParams> visited{p};
  CScalar prefactor(1);
  for (int step = 0; step < 6; ++step) {
    SymImage image = apply(step % 2 == 0 ? T : S, visited.back(), ctx);
    prefactor *= image.prefactor;
    visited.push_back(std::move(image.params));
  }
  out.roundtrip_residual = max(out.roundtrip_residual, param_distance(visited.back(), p));
  out.prefactor_residual = max(out.prefactor_residual, rel_residual(prefactor, CScalar(1)));
  out.cube_prefactor = std::move(prefactor);

  out.min_intermediate_distance = Real(1);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      Real dist = param_distance(visited[i], visited[j]);
      if (dist < out.min_intermediate_distance) out.min_intermediate_distance = std::move(dist);
    }
  }

  out.braid_residual = param_distance(apply_word({S, T, S}, p, ctx).params,
                                      apply_word({T, S, T}, p, ctx).params);
  const Real limit = exp2_int(-(ctx.precision_bits - 16));
  out.roundtrip_ok = out.roundtrip_residual <= limit && out.braid_residual <= limit;
  out.generic = out.min_intermediate_distance > pole_threshold(ctx);
  return out;
}

VerificationReport check_group_laws(const DtParams& p, const PrecisionContext& ctx) {
  const GroupLaws laws = group_laws(p, ctx);
  const PrecisionScope scope(ctx);
  const Real worst = max(max(laws.roundtrip_residual, laws.braid_residual), laws.prefactor_residual);
  VerificationReport report =
      make_report("group_laws", laws.cube_prefactor, CScalar(1), worst, ctx, p.digest(ctx));
  report.passed = report.passed && laws.roundtrip_ok && laws.generic;
  return report;
}

Hexagon hexagon(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  Hexagon out{det_lu(dt_lhs_matrix(p, ctx), ctx), {}, Real(0), Real(0)};
  for (auto& entry : orbit(p, ctx)) {
    HexagonEntry h{entry.element, det_lu(dt_lhs_matrix(entry.params, ctx), ctx), entry.prefactor,
                   CScalar(1), Real(0), Real(0)};
    if (h.element.has_form()) {
      h.explicit_prefactor = dt_prefactor(p, h.element.form(), ctx);
      h.prefactor_residual = rel_residual(h.composed, h.explicit_prefactor);
    }
    h.det_residual = rel_residual(out.lhs_det, h.composed * h.image_det);
    out.worst_det_residual = max(out.worst_det_residual, h.det_residual);
    out.worst_prefactor_residual = max(out.worst_prefactor_residual, h.prefactor_residual);
    out.entries.push_back(std::move(h));
  }
  return out;
}

VerificationReport check_hexagon(const DtParams& p, const PrecisionContext& ctx) {
  const Hexagon h = hexagon(p, ctx);
  const PrecisionScope scope(ctx);
  // Report the last orbit member's expression as the rhs.
  const HexagonEntry& last = h.entries.back();
  return make_report("hexagon", h.lhs_det, last.composed * last.image_det,
                     max(h.worst_det_residual, h.worst_prefactor_residual), ctx, p.digest(ctx));
}

}  // namespace ellipdet
