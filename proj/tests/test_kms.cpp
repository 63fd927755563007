#include "doctest.h"
#include "oracles.hpp"
#include "substar/kms.hpp"

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

const char* kParaPeriodic[] = {"a -> ab\nb -> ab\n", "a -> abab\nb -> ab\n"};

Monomial random_degree0(const Diagram& d, std::mt19937_64& rng, unsigned max_level) {
  const Letter t = rng() % d.substitution().size();
  const unsigned l = 1 + rng() % max_level;
  const auto nu = d.nu(t, l);
  return {{t, l}, {t, l}, static_cast<std::int64_t>(rng() % nu), static_cast<std::int64_t>(rng() % nu)};
}

}  // namespace

TEST_CASE("perron data") {
  auto p = perron(parse_substitution("a -> ab\nb -> ab"));
  CHECK(p.exact);
  CHECK(p.lambda == 2);
  CHECK(p.v == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  auto q = perron(parse_substitution("a -> aab\nb -> ab"));
  CHECK_FALSE(q.exact);
  const Real golden = (3 + sqrt(Real(5))) / 2;
  CHECK(q.lambda_hi - q.lambda_lo <= Real("1e-12"));
  CHECK(q.lambda_lo <= golden + Real("1e-40"));
  CHECK(q.lambda_hi >= golden - Real("1e-40"));
  auto r = perron(parse_substitution("a -> abab\nb -> ab"));
  CHECK(r.exact);
  CHECK(r.lambda == 3);
  for (const char* text : kCorpus) {
    const auto s = parse_substitution(text);
    const auto pd = perron(s);
    for (const auto& v : pd.v_approx) CHECK(v > 0);
    CHECK(pd.residual <= Real("1e-30"));
    if (is_para_periodic(s)) CHECK(pd.exact);
  }
}

TEST_CASE("cylinder measures") {
  Diagram d(parse_substitution("a -> ab\nb -> ab"), 12);
  Trace tr(d);
  for (const auto& f : d.enumerate_paths(2)) CHECK(*tr.cylinder_measure(f).exact == Rational(1, 4));
  for (const auto& f : d.enumerate_paths(3)) CHECK(*tr.cylinder_measure(f).exact == Rational(1, 8));

  for (const char* text : kCorpus) {
    Diagram dd(parse_substitution(text), 12);
    Trace t(dd);
    for (unsigned n = 2; n <= 6; ++n) {
      Real total = 0;
      Rational exact_total = 0;
      for (const auto& f : dd.enumerate_paths(n)) {
        const auto mu = t.cylinder_measure(f);
        CHECK(mu.value > 0);
        total += mu.value;
        if (mu.exact) exact_total += *mu.exact;
        // Kolmogorov consistency
        Real children = 0;
        for (const auto& e : dd.edges_from(f.target())) {
          children += t.cylinder_measure(Vertex{e.target, n + 1}).value;
        }
        CHECK(abs(children - mu.value) <= Real("1e-12"));
      }
      if (t.perron().exact) CHECK(exact_total == 1);
      CHECK(abs(total - 1) <= Real("1e-12"));
    }
  }
}

TEST_CASE("measure agrees with path counting") {
  for (const char* text : kParaPeriodic) {
    const auto s = parse_substitution(text);
    Diagram d(s, 12);
    Trace t(d);
    for (unsigned l = 1; l <= 5; ++l) {
      for (Letter a = 0; a < s.size(); ++a) {
        CHECK(*t.cylinder_measure(Vertex{a, l}).exact == oracle::counting_measure(s, {a, l}, l + 2));
      }
    }
  }
  for (const char* text : kCorpus) {
    const auto s = parse_substitution(text);
    Diagram d(s, 12);
    Trace t(d);
    for (Letter a = 0; a < s.size(); ++a) {
      const Rational c = oracle::counting_measure(s, {a, 3}, 60);
      const Real approx = Real(c.get_num().get_str()) / Real(c.get_den().get_str());
      CHECK(abs(approx - t.cylinder_measure(Vertex{a, 3}).value) <= Real("1e-12"));
    }
  }
}

TEST_CASE("trace laws") {
  for (const char* text : kParaPeriodic) {
    Diagram d(parse_substitution(text), 16);
    Algebra alg(d);
    Trace t(d);
    auto mu = [&](const Vertex& x) { return *t.cylinder_measure(x).exact; };
    CHECK(t.phi_exact(alg.one()) == 1);
    for (unsigned n = 2; n <= 4; ++n) {
      for (const auto& f : d.enumerate_paths(n)) {
        const auto e = alg.e(f);
        CHECK(t.phi_exact(e) > 0);
        CHECK(t.phi_exact(e) == oracle::model_trace(d, e, n, mu));
        for (std::int64_t k = 1; k < d.nu(f.vertex()); ++k) {
          for (std::int64_t sk : {k, -k}) {
            const auto x = alg.multiply(alg.u(sk), e);
            CHECK(t.phi_exact(x) == 0);
            CHECK(oracle::model_trace(d, x, n, mu) == 0);
          }
        }
      }
    }
    const auto n_sigma = *t.para_periodic();
    for (unsigned lf = 1; lf <= 6; ++lf) {
      for (unsigned lg = 1; lg <= 6; ++lg) {
        for (Letter a = 0; a < d.substitution().size(); ++a) {
          const auto f = d.minimal({a, lf}), g = d.minimal({a, lg});
          Rational scale = 1;
          for (unsigned i = lf; i < lg; ++i) scale *= n_sigma;
          for (unsigned i = lg; i < lf; ++i) scale /= n_sigma;
          CHECK(t.phi_exact(alg.e(f)) == scale * t.phi_exact(alg.e(g)));
        }
      }
    }
  }
}

TEST_CASE("tracial and gauge invariant") {
  for (const char* text : kCorpus) {
    Diagram d(parse_substitution(text), 20);
    Algebra alg(d);
    Trace t(d);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
      const Element x(random_degree0(d, rng, 3)), y(random_degree0(d, rng, 3));
      const auto xy = t.phi(alg.multiply(x, y)), yx = t.phi(alg.multiply(y, x));
      if (xy.exact) CHECK(*xy.exact == *yx.exact);
      CHECK(abs(xy.value - yx.value) <= Real("1e-12"));
      const auto px = t.phi(x).value;
      CHECK(px == t.phi(Algebra::expectation_E(x)).value);
      CHECK(px == t.phi(Algebra::expectation_G(x)).value);
    }
  }
}

TEST_CASE("gauge action at t = i") {
  Diagram d(parse_substitution("a -> ab\nb -> ab"), 12);
  Algebra alg(d);
  Trace t(d);
  const auto f = d.minimal({0, 2});
  CHECK(t.theta_i(alg.s(f)) == Rational(1, 2) * alg.s(f));
  CHECK(t.theta_i(alg.s_star(f)) == 2 * alg.s_star(f));
  CHECK(t.theta_i(alg.one()) == alg.one());
  CHECK(t.theta_i(alg.u(1)) == alg.u(1));
  CHECK(t.theta_i(alg.e(f)) == alg.e(f));
  CHECK(t.kms_check(alg, alg.one(), alg.one()));

  Diagram g(parse_substitution("a -> aab\nb -> ab"), 12);
  Trace tg(g);
  CHECK_THROWS(tg.theta_i(Algebra(g).one()));
  CHECK_THROWS(tg.phi_exact(Algebra(g).one()));
}

TEST_CASE("KMS condition on sampled pairs") {
  for (const char* text : kParaPeriodic) {
    Diagram d(parse_substitution(text), 20);
    Algebra alg(d);
    Trace t(d);
    const auto r = kms_sample(alg, t, 500, 17);
    CHECK(r.pairs == 500);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
    for (auto n : r.per_branch) CHECK(n > 0);
    // the match branch has the scaled value
    const auto f = d.minimal({0, 2});
    const auto g = d.minimal({0, 3});
    const auto x = alg.term(0, f, g, 0);
    const auto y = Algebra::adjoint(x);
    CHECK(t.phi_exact(alg.multiply(x, y)) == t.phi_exact(alg.multiply(y, t.theta_i(x))));
    CHECK(t.phi_exact(alg.multiply(x, y)) == *t.para_periodic() * t.phi_exact(alg.e(g)));
  }
}
