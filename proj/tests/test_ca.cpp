#include <random>

#include "doctest.h"
#include "gliders/ca.hpp"
#include "gliders/error.hpp"

using namespace gliders;

namespace {

std::vector<int> signs_of(std::uint64_t code, int length) {
  std::vector<int> s(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i, code /= 3) s[static_cast<std::size_t>(i)] = static_cast<int>(code % 3) - 1;
  return s;
}

std::uint64_t power3(int e) {
  std::uint64_t p = 1;
  while (e-- > 0) p *= 3;
  return p;
}

}  // namespace

TEST_CASE("local rule examples") {
  const GlidersRule sym(-1, 1);
  const int a[] = {1, 0, 0};
  const int b[] = {1, -1, 0};
  CHECK(gliders_local_rule(sym, a) == 1);
  CHECK(gliders_local_rule(sym, b) == 0);
  const int short_window[] = {1, 0};
  CHECK_THROWS_AS(gliders_local_rule(sym, short_window), ContractError);

  const GlidersRule one_sided(-1, 0);
  for (int l = -1; l <= 1; ++l)
    for (int r : {0, 1}) {
      const int w[] = {l, 0, r};
      CHECK(gliders_local_rule(one_sided, w) == 0);
    }
}

TEST_CASE("rule validation and mirroring") {
  CHECK_THROWS_AS(GlidersRule(0, 1), ContractError);
  CHECK_THROWS_AS(GlidersRule(-1, -1), ContractError);
  CHECK(GlidersRule(-3, 1).radius() == 3);
  CHECK(GlidersRule(-1, 2).radius() == 2);
  const GlidersRule m = GlidersRule(-3, 1).mirrored();
  CHECK(m.v_minus() == -1);
  CHECK(m.v_plus() == 3);
  CHECK_THROWS_AS(GlidersRule(-1, 0).mirrored(), ContractError);
}

TEST_CASE("step shrinks the window") {
  const LocalRule rule = make_local_rule(GlidersRule(-1, 1));
  const auto out = step(ConfigurationWindow::from_signs(0, {0, 1, -1, 0}), rule);
  CHECK(out.offset() == 1);
  CHECK(out.signs() == std::vector<int>{0, 0});

  const LocalRule wide = make_local_rule(GlidersRule(-3, 1));
  const auto zeros = step(ConfigurationWindow::from_signs(5, std::vector<int>(20, 0)), wide);
  CHECK(zeros.offset() == 8);
  CHECK(zeros.signs() == std::vector<int>(14, 0));
  CHECK_THROWS_AS(step(ConfigurationWindow::from_signs(0, {0, 0, 0, 0, 0, 0}), wide), ContractError);
}

TEST_CASE("tabulated and direct evaluation agree") {
  for (const GlidersRule g : {GlidersRule(-1, 0), GlidersRule(-2, 1), GlidersRule(-1, 2)}) {
    const LocalRule rule = make_local_rule(g);
    REQUIRE(rule.tabulated());
    const int len = static_cast<int>(rule.window_length());
    for (std::uint64_t code = 0; code < power3(len); ++code) {
      const auto s = signs_of(code, len);
      const auto w = ConfigurationWindow::from_signs(0, s);
      CHECK(decode_sign(rule.apply(w.cells())) == gliders_local_rule(g, s));
    }
  }
}

TEST_CASE("simulate") {
  const GlidersRule sym(-1, 1);
  const auto input = ConfigurationWindow::from_signs(0, {1, 0, 0, 0, -1});
  const auto one = simulate(input, make_local_rule(sym), 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == input);

  const auto padded = ConfigurationWindow::from_signs(-2, {0, 0, 1, 0, 0, 0, -1, 0, 0});
  const auto d = simulate(padded, make_local_rule(sym), 2);
  REQUIRE(d.size() == 3);
  CHECK(d[1].signs() == std::vector<int>{0, 0, 1, 0, -1, 0, 0});
  CHECK(d[2].signs() == std::vector<int>{0, 0, 0, 0, 0});

  try {
    simulate(input, make_local_rule(sym), 3);
    FAIL("expected an error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("particles never overlap and charge is conserved in the cone") {
  // Mutual exclusion: a cell is never both a +1 and a -1 candidate.
  for (const GlidersRule g : {GlidersRule(-1, 0), GlidersRule(-1, 1), GlidersRule(-2, 1), GlidersRule(-1, 2)}) {
    const int len = 2 * g.radius() + 1;
    for (std::uint64_t code = 0; code < power3(len); ++code) {
      const auto s = signs_of(code, len);
      const int v = gliders_local_rule(g, s);
      CHECK((v >= -1 && v <= 1));
    }
  }
  // Annihilation only: a particle at time 1 was a particle of the same sign
  // one step upstream.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-1, 1);
  for (const GlidersRule g : {GlidersRule(-1, 1), GlidersRule(-2, 1), GlidersRule(-3, 1)}) {
    const LocalRule rule = make_local_rule(g);
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<int> s(40);
      for (auto& v : s) v = d(rng);
      const auto a = ConfigurationWindow::from_signs(0, s);
      const auto b = step(a, rule);
      for (Index j = b.offset(); j < b.end(); ++j) {
        const int v = decode_sign(b.at(j));
        if (v == 1) CHECK(decode_sign(a.at(j - g.v_plus())) == 1);
        if (v == -1) CHECK(decode_sign(a.at(j - g.v_minus())) == -1);
      }
    }
  }
}

TEST_CASE("shrinking consistency") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-1, 1);
  const LocalRule rule = make_local_rule(GlidersRule(-2, 1));
  std::vector<int> s(60);
  for (auto& v : s) v = d(rng);
  const auto a = ConfigurationWindow::from_signs(-10, s);
  const auto whole = simulate(a, rule, 5);
  const auto part = simulate(a.slice(0, 40), rule, 5);
  for (std::size_t t = 0; t < part.size(); ++t)
    CHECK(part[t] == whole[t].slice(part[t].offset(), part[t].end()));
}

TEST_CASE("window accessors") {
  const auto w = ConfigurationWindow::from_signs(-2, {1, 0, -1});
  CHECK(w.end() == 1);
  CHECK(w.contains(-2));
  CHECK_FALSE(w.contains(1));
  CHECK(decode_sign(w.at(0)) == -1);
  CHECK_THROWS_AS(w.at(1), DomainError);
  CHECK_THROWS_AS(ConfigurationWindow::from_signs(0, {2}), ContractError);
}

TEST_CASE("rendering") {
  const GlidersRule sym(-1, 1);
  const auto d = simulate(ConfigurationWindow::from_signs(0, {0, 1, 0, 0, -1, 0}), make_local_rule(sym), 1);
  CHECK(render_ascii(d) == ".+-.\n+..-\n");
  const std::string pgm = render_pgm(d);
  CHECK(pgm.rfind("P5\n4 2\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n4 2\n255\n").size() + 8);
  CHECK(static_cast<unsigned char>(pgm[pgm.size() - 8]) == 128);
  CHECK(static_cast<unsigned char>(pgm[pgm.size() - 7]) == 255);
}
