#include "doctest.h"
#include "gliders/error.hpp"
#include "gliders/factors.hpp"

using namespace gliders;

namespace {

ConfigurationWindow raw(Index offset, std::vector<State> cells, int alphabet) {
  return {offset, std::move(cells), alphabet};
}

State apply3(const LocalRule& rule, State l, State c, State r) {
  const State w[] = {l, c, r};
  return rule.apply(w);
}

}  // namespace

TEST_CASE("defect projection") {
  const auto traffic = traffic_factor();
  const auto p = defect_projection(raw(3, {0, 0, 1, 1, 0}, 2), traffic.sft);
  CHECK(p.offset() == 3);
  CHECK(p.signs() == std::vector<int>{1, 0, -1, 0});
  CHECK(defect_projection(raw(0, {0, 1, 0, 1, 0, 1}, 2), traffic.sft).signs() == std::vector<int>(5, 0));
  const auto cyclic = cyclic3_factor();
  CHECK(defect_projection(raw(0, {0, 0, 1}, 3), cyclic.sft).signs() == std::vector<int>{0, -1});
  CHECK_THROWS_AS(defect_projection(raw(0, {0}, 2), traffic.sft), ContractError);
}

TEST_CASE("sft validation") {
  CHECK_THROWS_AS(SftSpec(2, 2, {{0, 0}}, {{0, 0}}), ContractError);
  CHECK_THROWS_AS(SftSpec(2, 2, {{0, 0, 1}}, {}), ContractError);
  CHECK_THROWS_AS(SftSpec(2, 2, {{0, 2}}, {}), ContractError);
}

TEST_CASE("built-in local rules") {
  const auto traffic = traffic_factor().source_rule;
  CHECK(apply3(traffic, 1, 1, 0) == 0);
  CHECK(apply3(traffic, 1, 0, 0) == 1);
  CHECK(apply3(traffic, 1, 0, 1) == 1);
  CHECK(apply3(traffic, 0, 1, 1) == 1);
  CHECK(apply3(traffic, 0, 1, 0) == 0);
  const auto cyclic = cyclic3_factor().source_rule;
  CHECK(apply3(cyclic, 1, 0, 0) == 1);
  CHECK(apply3(cyclic, 0, 0, 1) == 1);
  CHECK(apply3(cyclic, 2, 0, 2) == 0);
  CHECK(apply3(cyclic, 0, 2, 1) == 0);
  const auto product = product_factor().source_rule;
  CHECK(apply3(product, 1, 1, 1) == 1);
  for (State l : {0, 1})
    for (State c : {0, 1})
      for (State r : {0, 1})
        if (!(l && c && r)) CHECK(apply3(product, l, c, r) == 0);
  const auto identity = captive_identity_factor();
  const auto w = raw(0, {0, 1, 1, 0, 1}, 2);
  const auto next = step(w, identity.source_rule);
  CHECK(next == w.slice(1, 4));
  CHECK_THROWS_AS(captive_factor([](State a, State b) { return static_cast<State>(a + b); }, 3, "bad"),
                  ContractError);
}

TEST_CASE("commutation, exhaustive") {
  CHECK(commutation_check_exhaustive(traffic_factor(), 10).passed);
  CHECK(commutation_check_exhaustive(cyclic3_factor(), 8).passed);
  CHECK(commutation_check_exhaustive(product_factor(), 10).passed);
  CHECK(commutation_check_exhaustive(captive_identity_factor(), 10).passed);
  CHECK(commutation_check_exhaustive(captive_shift_factor(), 10).passed);
  CHECK(commutation_check_exhaustive(factor_by_name("captive-min"), 10).passed);
  CHECK(commutation_check_exhaustive(factor_by_name("captive-max"), 10).passed);
  const auto r = commutation_check_exhaustive(traffic_factor(), 6);
  CHECK(r.windows_checked == 64);
}

TEST_CASE("commutation, random wide windows") {
  for (const auto& name : factor_names()) {
    const auto r = commutation_check(factor_by_name(name), 100, 500, 17);
    CAPTURE(name);
    CHECK(r.passed);
    CHECK(r.windows_checked == 100);
  }
}

TEST_CASE("corrupted split is caught") {
  auto traffic = traffic_factor();
  traffic.sft = SftSpec(2, 2, {{1, 1}}, {{0, 0}});
  const auto r = commutation_check_exhaustive(traffic, 8);
  CHECK_FALSE(r.passed);
  REQUIRE(r.counterexample.has_value());
  CHECK_FALSE(commutes_on(traffic, *r.counterexample));

  auto cyclic = cyclic3_factor();
  cyclic.sft = SftSpec(3, 2, {{1, 0}, {0, 2}, {1, 2}}, {{0, 1}, {2, 1}, {2, 0}});
  CHECK_FALSE(commutation_check(cyclic, 200, 60, 1).passed);
}

TEST_CASE("product defects alternate") {
  const auto product = product_factor();
  const auto sampler = SamplerSpec::bernoulli({0.5, 0.5}, 3);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto p = defect_projection(sample_window(sampler, 0, 999, t), product.sft);
    int last = 0;
    for (int v : p.signs()) {
      if (v == 0) continue;
      CHECK(v != last);
      last = v;
    }
  }
}

TEST_CASE("one-sided captive projections are not centred") {
  const auto sampler = SamplerSpec::bernoulli({0.5, 0.5}, 1);
  for (const auto& f : {captive_identity_factor(), captive_shift_factor()}) {
    const auto d = lifted_mix_diagnostics(f, sampler, 100000, 20);
    CAPTURE(f.name);
    CHECK((d.verdict == MixVerdict::mean_nonzero || d.verdict == MixVerdict::variance_zero));
  }
}

TEST_CASE("projection commutes with translation") {
  const auto cyclic = cyclic3_factor();
  const auto sampler = SamplerSpec::bernoulli({1.0 / 3, 1.0 / 3, 1.0 / 3}, 4);
  const auto a = sample_window(sampler, -40, 40, 0);
  const auto shifted = ConfigurationWindow(a.offset() + 7, std::vector<State>(a.cells().begin(), a.cells().end()), 3);
  const auto pa = defect_projection(a, cyclic.sft);
  const auto ps = defect_projection(shifted, cyclic.sft);
  CHECK(ps.offset() == pa.offset() + 7);
  CHECK(ps.signs() == pa.signs());
}

TEST_CASE("lifted product entry times vanish") {
  const auto cdf = lifted_cdf_experiment(product_factor(), SamplerSpec::bernoulli({0.5, 0.5}, 1), 200,
                                         {0.5, 1, 2}, 500);
  for (double e : cdf.estimates) CHECK(e <= 0.01);
  CHECK(cdf.factor_name == "product");
}

TEST_CASE("factor lookup") {
  CHECK(factor_by_name("traffic").target.v_plus() == 1);
  CHECK(factor_by_name("captive-identity").target.v_plus() == 0);
  CHECK_THROWS_AS(factor_by_name("nope"), ContractError);
}
