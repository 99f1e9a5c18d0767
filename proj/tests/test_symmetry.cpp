#include "doctest.h"

#include "ellipdet/sampling.hpp"
#include "ellipdet/symmetry.hpp"
#include "support.hpp"

using namespace ellipdet;

namespace {

DtParams sample(int n, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.seed = seed;
  return sample_dt(n, cfg, testing::ctx256());
}

}  // namespace

TEST_CASE("generators are involutions with reciprocal prefactors") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const Real bound = exp2_int(-(ctx.precision_bits - 16));
  for (int n = 1; n <= 5; ++n) {
    const DtParams p = sample(n, 200 + n);
    for (const Generator g : {Generator::sigma, Generator::tau}) {
      const SymImage once = apply(g, p, ctx);
      const SymImage twice = apply(g, once.params, ctx);
      CAPTURE(n);
      CHECK(param_distance(twice.params, p) <= bound);
      CHECK(rel_diff(once.prefactor * twice.prefactor, CScalar(1)) <= Real(1e-35));
    }
  }
}

TEST_CASE("sigma swaps a and e") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const DtParams p = sample(3, 210);
  const SymImage s = apply_sigma(p, ctx);
  CHECK(rel_diff(s.params.a, p.e()) <= exp2_int(-270));
  CHECK(rel_diff(s.params.e(), p.a) <= exp2_int(-270));
  CHECK(s.params.constraint_residual() <= exp2_int(-270));
}

TEST_CASE("tau at n = 1") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const DtParams p = sample(1, 220);
  const SymImage t = apply_tau(p, ctx);
  const CScalar q = p.base.q();
  CHECK(t.prefactor == CScalar(1));
  CHECK(rel_diff(t.params.a, q * q / p.a) <= exp2_int(-270));
  CHECK(rel_diff(t.params.b[0], q * p.b[0] / p.a) <= exp2_int(-270));
  CHECK(rel_diff(t.params.c[0], q * p.c[0] / p.a) <= exp2_int(-270));
  CHECK(rel_diff(t.params.d[0], q * p.d[0] / p.a) <= exp2_int(-270));
}

TEST_CASE("words act right to left") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const DtParams p = sample(3, 230);
  const SymImage st = apply_word({Generator::sigma, Generator::tau}, p, ctx);
  const SymImage t = apply_tau(p, ctx);
  const SymImage s_of_t = apply_sigma(t.params, ctx);
  CHECK(param_distance(st.params, s_of_t.params) <= exp2_int(-270));
  CHECK(rel_diff(st.prefactor, t.prefactor * s_of_t.prefactor) <= exp2_int(-260));
}

TEST_CASE("group elements") {
  const std::vector<SymElement> g = group_elements();
  REQUIRE(g.size() == 6);
  CHECK(g[0].name() == "id");
  CHECK_FALSE(g[0].has_form());
  CHECK(g[3].name() == "sigma_tau");
  CHECK(g[3].form() == DtForm::sigma_tau);
  CHECK(g[5].name() == "sigma_tau_sigma");
}

TEST_CASE("braid relation and group laws") {
  const PrecisionContext ctx = make_context(256, 32, 1e-30);
  const PrecisionScope scope(ctx);
  for (int n = 1; n <= 4; ++n) {
    const GroupLaws laws = group_laws(sample(n, 240 + n), ctx);
    CAPTURE(n);
    CHECK(laws.roundtrip_ok);
    CHECK(laws.generic);
    CHECK(laws.braid_residual <= exp2_int(-(ctx.precision_bits - 16)));
    CHECK(laws.prefactor_residual <= Real(1e-30));
    CHECK(rel_diff(laws.cube_prefactor, CScalar(1)) <= Real(1e-30));
    CHECK(check_group_laws(sample(n, 250 + n), ctx).passed);
  }
}

TEST_CASE("hexagon of equivalent determinants") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  for (int n = 1; n <= 4; ++n) {
    const DtParams p = sample(n, 260 + n);
    const Hexagon h = hexagon(p, ctx);
    REQUIRE(h.entries.size() == 6);
    CAPTURE(n);
    CHECK(h.worst_det_residual <= Real(1e-35));
    CHECK(h.worst_prefactor_residual <= Real(1e-30));
    for (const HexagonEntry& e : h.entries) {
      if (!e.element.has_form()) continue;
      CHECK(rel_diff(e.explicit_prefactor, dt_prefactor(p, e.element.form(), ctx)) <=
            exp2_int(-250));
    }
    CHECK(check_hexagon(p, ctx).passed);
  }
}

TEST_CASE("orbit lists six parameter sets") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const DtParams p = sample(2, 270);
  const std::vector<OrbitEntry> o = orbit(p, ctx);
  REQUIRE(o.size() == 6);
  CHECK(param_distance(o[0].params, p).is_zero());
  CHECK(o[0].prefactor == CScalar(1));
  for (std::size_t i = 0; i < o.size(); ++i) {
    for (std::size_t j = i + 1; j < o.size(); ++j) {
      CHECK(param_distance(o[i].params, o[j].params) > Real(1e-20));
    }
  }
}
