#include "doctest.h"
#include "substar/operator_model.hpp"

#include <random>

using namespace substar;

namespace {

const char* kCorpus[] = {
    "a -> ab\nb -> ab\n",
    "a -> aab\nb -> ab\n",
    "a -> abba\nb -> aba\n",
    "a -> abc\nb -> abbc\nc -> acc\n",
    "a -> aba\nb -> a\n",
    "a -> abab\nb -> ab\n",
};

Monomial random_monomial(const Diagram& d, std::mt19937_64& rng) {
  const Letter t = rng() % d.substitution().size();
  const unsigned lx = 1 + rng() % 4;
  const unsigned ly = 1 + rng() % 4;
  const std::int64_t span = 2 * std::max(d.nu(t, lx), d.nu(t, ly));
  auto exp = [&] { return static_cast<std::int64_t>(rng() % (2 * span + 1)) - span; };
  return {{t, lx}, {t, ly}, exp(), exp()};
}

// composition in the model, independent of the symbolic product
ModelVector compose(const OperatorModel& m, const Monomial& x, const Monomial& y, const TailPath& l) {
  ModelVector out;
  if (auto p = m.apply(y, l)) {
    if (auto q = m.apply(x, *p)) out[*q] = 1;
  }
  return out;
}

}  // namespace

TEST_CASE("generators act as in the model") {
  auto d = Diagram(parse_substitution("a -> aab\nb -> ab"), 20);
  Algebra alg(d);
  OperatorModel model(d);
  auto basis = d.tail_paths(5);
  std::vector<FinitePath> paths{FinitePath{0, {}}, FinitePath{1, {}}};
  for (unsigned n = 2; n <= 3; ++n) {
    for (const auto& f : d.enumerate_paths(n)) paths.push_back(f);
  }
  for (const auto& f : paths) {
    for (const auto& l : basis) {
      ModelVector want;
      if (auto p = model.s(f, l)) want[*p] = 1;
      CHECK(model.apply(alg.s(f), l) == want);
      want.clear();
      if (auto p = model.s_star(f, l)) want[*p] = 1;
      CHECK(model.apply(alg.s_star(f), l) == want);
    }
  }
  for (const auto& l : basis) {
    CHECK(model.apply(alg.one(), l) == ModelVector{{l, 1}});
    CHECK(model.apply(alg.u(3), l) == ModelVector{{d.vershik_power(l, 3), 1}});
  }
}

TEST_CASE("product matches composition of operators") {
  for (const char* text : kCorpus) {
    auto d = Diagram(parse_substitution(text), 24);
    Algebra alg(d);
    OperatorModel model(d);
    auto basis = d.tail_paths(5);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_monomial(d, rng);
      const auto y = random_monomial(d, rng);
      const auto xy = alg.multiply(x, y);
      for (const auto& l : basis) {
        const auto got = model.apply(xy, l);
        const auto want = compose(model, x, y, l);
        if (got != want) {
          FAIL_CHECK(text << to_string(d, x) << " * " << to_string(d, y) << " at " << d.describe(l));
          break;
        }
      }
    }
  }
}

TEST_CASE("adjoint is the transpose") {
  for (const char* text : kCorpus) {
    auto d = Diagram(parse_substitution(text), 24);
    OperatorModel model(d);
    auto basis = d.tail_paths(5);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto x = random_monomial(d, rng);
      for (const auto& l : basis) {
        if (auto p = model.apply(x, l)) CHECK(model.apply(x.adjoint(), *p) == l);
      }
    }
  }
}

TEST_CASE("normalization and expansion keep the operator") {
  for (const char* text : kCorpus) {
    auto d = Diagram(parse_substitution(text), 24);
    Algebra alg(d);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const Element x(random_monomial(d, rng));
      auto v = check_identity(alg, x, alg.normalize(x, 5), 5);
      CHECK(v.pass);
      CHECK(v.coefficients_match);
      for (const auto& [m, c] : x.terms()) {
        CHECK(check_identity(alg, x, alg.refine(m), 5).pass);
        CHECK(check_identity(alg, x, alg.expand(m), 5).pass);
      }
    }
    CHECK(check_identity(alg, alg.multiply(alg.u(1), alg.u(-1)), alg.one(), 6).pass);
    CHECK_FALSE(check_identity(alg, alg.u(1), alg.one(), 6).pass);
  }
}

TEST_CASE("expectations") {
  auto d = Diagram(parse_substitution("a -> ab\nb -> ab"), 20);
  Algebra alg(d);
  auto f = d.minimal({0, 3});
  auto x = alg.s(f) + alg.e(f) + alg.term(1, f, f, 0) + alg.one();
  auto ex = Algebra::expectation_E(x);
  CHECK(ex == alg.e(f) + alg.term(1, f, f, 0) + alg.one());
  CHECK(Algebra::expectation_F(ex) == alg.e(f) + alg.one());
  CHECK(Algebra::expectation_G(x) == alg.e(f) + alg.one());
  CHECK_THROWS(Algebra::expectation_F(x));
}

TEST_CASE("non-proper substitutions are rejected") {
  auto d = Diagram(parse_substitution("a -> ba\nb -> ab"), 8);
  CHECK_THROWS(Algebra{d});
  CHECK_THROWS(OperatorModel{d});
}
