#include "doctest.h"
#include "substar/substitution.hpp"

#include <set>

using namespace substar;

namespace {

Substitution sub(const char* text) { return parse_substitution(text); }

const char* kCorpus[] = {
    "a -> ab\nb -> ab\n",
    "a -> aab\nb -> ab\n",
    "a -> abba\nb -> aba\n",
    "a -> abc\nb -> abbc\nc -> acc\n",
    "a -> aba\nb -> a\n",
    "a -> abab\nb -> ab\n",
};

// Brute force: scan sigma^n(a) for every letter.
bool brute_primitive(const Substitution& s, unsigned n) {
  auto p = iterate(s, n);
  for (Letter a = 0; a < s.size(); ++a) {
    std::set<Letter> seen(p.image(a).begin(), p.image(a).end());
    if (seen.size() != s.size()) return false;
  }
  return true;
}

std::size_t least_period(const Word& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return w.size();
}

}  // namespace

TEST_CASE("parse examples") {
  auto s = sub("a -> ab\nb -> ab");
  CHECK(s.size() == 2);
  CHECK(s.spell(s.image(0)) == "ab");
  CHECK(s.spell(s.image(1)) == "ab");
  CHECK_THROWS_WITH_AS(sub("a -> a"), doctest::Contains("alphabet size 1 < 2"), ParseError);
  CHECK_THROWS_WITH_AS(sub("a -> ab\nb ->"), doctest::Contains("empty image"), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    sub("# header\na -> ab\n\nb -> ac\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("unknown letter 'c'") != std::string::npos);
  }
  try {
    sub("a -> ab\na -> b\nb -> a\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(sub("a ab\nb -> a"), ParseError);
  CHECK_THROWS_AS(sub("ab -> ab\nb -> a"), ParseError);
}

TEST_CASE("unicode letters and comments") {
  auto s = sub("α -> αβ  # first\nβ -> α β\n");
  CHECK(s.alphabet().symbol(0) == "α");
  CHECK(s.spell(s.image(1)) == "αβ");
  CHECK(parse_substitution(s.to_spec()) == s);
}

TEST_CASE("iterate") {
  auto s = sub("a -> ab\nb -> ab");
  auto s2 = iterate(s, 2);
  CHECK(s2.spell(s2.image(0)) == "abab");
  CHECK(s2.spell(s2.image(1)) == "abab");
  CHECK(iterate(s, 1) == s);
  CHECK_THROWS(iterate(s, 0));
  auto t = sub("a -> aab\nb -> ab");
  CHECK(iterate(t, 2).spell(iterate(t, 2).image(0)) == "aabaabab");
}

TEST_CASE("occurrence matrix") {
  CHECK(occurrence_matrix(sub("a -> ab\nb -> ab")).rows() ==
        std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 1}});
  CHECK(occurrence_matrix(sub("a -> aab\nb -> ab")).rows() ==
        std::vector<std::vector<std::int64_t>>{{2, 1}, {1, 1}});
  for (const char* text : kCorpus) {
    auto s = sub(text);
    auto m = occurrence_matrix(s);
    auto power = m;
    for (unsigned n = 1; n <= 4; ++n) {
      CHECK(occurrence_matrix(iterate(s, n)) == power);
      power = power * m;
    }
    for (Letter a = 0; a < s.size(); ++a) {
      std::int64_t row = 0;
      for (Letter b = 0; b < s.size(); ++b) row += m(a, b);
      CHECK(row == static_cast<std::int64_t>(s.image(a).size()));
    }
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(sub("a -> ab\nb -> ab")).witness == 1);
  CHECK_FALSE(is_primitive(sub("a -> ab\nb -> b")).primitive);
  CHECK(is_primitive(sub("a -> aab\nb -> ab")).witness == 1);
  auto r = is_primitive(sub("a -> aba\nb -> a"));
  CHECK(r.primitive);
  CHECK(r.witness == 2);
  const char* more[] = {"a -> ab\nb -> b", "a -> b\nb -> a", "a -> ab\nb -> c\nc -> a"};
  for (const char* text : kCorpus) {
    auto s = sub(text);
    auto r2 = is_primitive(s);
    for (unsigned n = 1; n <= 6; ++n) {
      CHECK(brute_primitive(s, n) == (r2.primitive && n >= r2.witness));
    }
  }
  for (const char* text : more) {
    auto s = sub(text);
    bool any = false;
    for (unsigned n = 1; n <= 6; ++n) any = any || brute_primitive(s, n);
    CHECK(any == is_primitive(s).primitive);
  }
}

TEST_CASE("proper") {
  CHECK(is_proper(sub("a -> ab\nb -> ab")) == ProperLetters{0, 1});
  CHECK_FALSE(is_proper(sub("a -> ab\nb -> a")));
  CHECK(is_proper(sub("a -> aab\nb -> ab")) == ProperLetters{0, 1});
  CHECK(is_proper(sub("a -> abba\nb -> aba")) == ProperLetters{0, 0});
}

TEST_CASE("fixed point prefix") {
  auto s = sub("a -> ab\nb -> ab");
  CHECK(s.spell(fixed_point_prefix(s, 0, 8)) == "abababab");
  auto t = sub("a -> aab\nb -> ab");
  CHECK(t.spell(fixed_point_prefix(t, 0, 7)) == "aabaaba");
  CHECK_THROWS(fixed_point_prefix(s, 1, 0));
  CHECK_THROWS(fixed_point_prefix(s, 1, 4));
  for (const char* text : kCorpus) {
    auto u = sub(text);
    for (std::size_t len = 1; len < 40; ++len) {
      auto w = fixed_point_prefix(u, 0, len);
      auto w1 = fixed_point_prefix(u, 0, len + 1);
      CHECK(std::equal(w.begin(), w.end(), w1.begin()));
    }
  }
}

TEST_CASE("periodicity") {
  auto s = sub("a -> ab\nb -> ab");
  auto p = periodicity(s, 100);
  REQUIRE(std::holds_alternative<Periodic>(p));
  CHECK(std::get<Periodic>(p).period == 2);
  CHECK(std::get<Periodic>(p).power == 2);
  CHECK_THROWS(periodicity(s, 0));

  auto t = sub("a -> aab\nb -> ab");
  const auto need = aperiodicity_threshold(t);
  CHECK(std::holds_alternative<Unknown>(periodicity(t, need - 1)));
  auto q = periodicity(t, need);
  REQUIRE(std::holds_alternative<Aperiodic>(q));
  CHECK(std::get<Aperiodic>(q).certified_bound == need);

  auto pp = periodicity(sub("a -> abab\nb -> ab"), 200);
  REQUIRE(std::holds_alternative<Periodic>(pp));
  CHECK(std::get<Periodic>(pp).period == 2);
  CHECK(std::get<Periodic>(pp).power == 3);

  for (const char* text : kCorpus) {
    auto u = sub(text);
    auto r = periodicity(u, aperiodicity_threshold(u));
    if (auto* per = std::get_if<Periodic>(&r)) {
      auto w = fixed_point_prefix(u, 0, 4 * per->period);
      CHECK(least_period(w) == per->period);
      Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(per->period));
      Word rep;
      for (std::size_t i = 0; i < per->power; ++i) rep.insert(rep.end(), head.begin(), head.end());
      CHECK(u.apply(head) == rep);
    } else {
      CHECK(std::holds_alternative<Aperiodic>(r));
    }
  }
}

TEST_CASE("para-periodic") {
  CHECK(is_para_periodic(sub("a -> ab\nb -> ab")) == 2);
  CHECK_FALSE(is_para_periodic(sub("a -> aab\nb -> ab")));
  CHECK_FALSE(is_para_periodic(sub("a -> abba\nb -> aba")));
  CHECK(is_para_periodic(sub("a -> abab\nb -> ab")) == 3);
  for (const char* text : kCorpus) {
    auto s = sub(text);
    if (auto n = is_para_periodic(s)) {
      auto m = occurrence_matrix(s);
      auto m2 = m * m;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) CHECK(m2(i, j) == *n * m(i, j));
    }
  }
}

TEST_CASE("factor complexity") {
  auto s = sub("a -> ab\nb -> ab");
  CHECK(factor_complexity(s, 3) == 2);
  CHECK(factor_complexity(s, 1) == 2);
  auto t = sub("a -> aab\nb -> ab");
  CHECK(factor_complexity(t, 2) == 3);
  auto f = factors(t, 2);
  CHECK(f.size() == 3);

  // Oracle: factors of a long fixed-word prefix.
  for (const char* text : kCorpus) {
    auto u = sub(text);
    auto w = fixed_point_prefix(u, 0, 20000);
    auto profile = complexity_profile(u, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
      std::set<Word> seen;
      for (std::size_t i = 0; i + n <= w.size(); ++i) seen.emplace(w.begin() + i, w.begin() + i + n);
      CHECK(seen.size() == factor_complexity(u, n));
      CHECK(profile[n - 1] == seen.size());
    }
  }
}

TEST_CASE("classify") {
  auto c = classify(sub("a -> ab\nb -> ab"), 100);
  CHECK(c.primitive.primitive);
  CHECK(c.proper == ProperLetters{0, 1});
  CHECK(std::holds_alternative<Periodic>(*c.periodicity));
  CHECK(c.para_periodic == 2);
}
