#include "substar/substitution.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace substar {

namespace {

// Splits UTF-8 text into scalar values, each returned as its encoded bytes.
std::vector<std::string> utf8_scalars(std::string_view text, std::size_t line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    } else if (c >= 0x80) {
      throw ParseError(line, "invalid UTF-8 sequence");
    }
    if (i + len > text.size()) throw ParseError(line, "truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        throw ParseError(line, "invalid UTF-8 sequence");
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_space(const std::string& scalar) {
  return scalar == " " || scalar == "\t" || scalar == "\r";
}

}  // namespace

CountMatrix CountMatrix::operator*(const CountMatrix& o) const {
  if (o.d_ != d_) throw Error("matrix size mismatch");
  CountMatrix r(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t k = 0; k < d_; ++k) {
      const auto x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) r(i, j) += x * o(k, j);
    }
  }
  return r;
}

bool CountMatrix::positive() const {
  return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x > 0; });
}

std::vector<std::vector<std::int64_t>> CountMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(d_);
  for (std::size_t i = 0; i < d_; ++i) out[i].assign(v_.begin() + i * d_, v_.begin() + (i + 1) * d_);
  return out;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) {
    throw Error("alphabet size " + std::to_string(symbols_.size()) + " < 2");
  }
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) throw Error("duplicate letter '" + s + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size()) throw Error("one image per letter required");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty()) throw Error("empty image for '" + alphabet_.symbol(a) + "'");
    for (auto b : images_[a]) {
      if (b >= alphabet_.size()) throw Error("image letter out of range");
    }
  }
}

Substitution Substitution::from_rules(
    const std::vector<std::pair<std::string, std::string>>& rules) {
  std::string text;
  for (const auto& [l, w] : rules) text += l + " -> " + w + "\n";
  return parse_substitution(text);
}

std::size_t Substitution::max_image_length() const {
  std::size_t m = 0;
  for (const auto& w : images_) m = std::max(m, w.size());
  return m;
}

std::size_t Substitution::min_image_length() const {
  std::size_t m = images_.empty() ? 0 : images_[0].size();
  for (const auto& w : images_) m = std::min(m, w.size());
  return m;
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (auto a : w) {
    const auto& img = images_.at(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::string Substitution::spell(const Word& w) const {
  std::string out;
  for (auto a : w) out += alphabet_.symbol(a);
  return out;
}

Word Substitution::read(std::string_view text) const {
  Word out;
  for (const auto& sc : utf8_scalars(text, 0)) {
    auto l = alphabet_.find(sc);
    if (!l) throw Error("unknown letter '" + sc + "'");
    out.push_back(*l);
  }
  return out;
}

std::string Substitution::to_spec() const {
  std::string out;
  for (std::size_t a = 0; a < size(); ++a) {
    out += alphabet_.symbol(a) + " -> " + spell(images_[a]) + "\n";
  }
  return out;
}

Substitution parse_substitution(std::string_view text) {
  struct Rule {
    std::size_t line;
    std::string lhs;
    std::vector<std::string> rhs;
  };
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError(line_no, "expected 'letter -> word'");
    const auto lhs = trim(line.substr(0, arrow));
    const auto rhs = trim(line.substr(arrow + 2));
    auto lhs_scalars = utf8_scalars(lhs, line_no);
    if (lhs_scalars.size() != 1) {
      throw ParseError(line_no, "left-hand side must be a single letter");
    }
    std::vector<std::string> word;
    for (auto& sc : utf8_scalars(rhs, line_no)) {
      if (!is_space(sc)) word.push_back(std::move(sc));
    }
    if (word.empty()) throw ParseError(line_no, "empty image for '" + lhs_scalars[0] + "'");
    for (const auto& r : rules) {
      if (r.lhs == lhs_scalars[0]) {
        throw ParseError(line_no, "duplicate rule for '" + lhs_scalars[0] + "'");
      }
    }
    rules.push_back({line_no, lhs_scalars[0], std::move(word)});
    if (nl == text.size()) break;
  }
  if (rules.size() < 2) {
    throw ParseError(line_no, "alphabet size " + std::to_string(rules.size()) + " < 2");
  }
  std::vector<std::string> symbols;
  for (const auto& r : rules) symbols.push_back(r.lhs);
  Alphabet alphabet(symbols);
  std::vector<Word> images;
  for (const auto& r : rules) {
    Word w;
    for (const auto& sc : r.rhs) {
      auto l = alphabet.find(sc);
      if (!l) throw ParseError(r.line, "unknown letter '" + sc + "'");
      w.push_back(*l);
    }
    images.push_back(std::move(w));
  }
  return Substitution(std::move(alphabet), std::move(images));
}

Substitution iterate(const Substitution& s, unsigned n) {
  if (n == 0) throw Error("iterate: n must be >= 1");
  std::vector<Word> images = s.images();
  for (unsigned k = 1; k < n; ++k) {
    for (auto& w : images) w = s.apply(w);
  }
  return Substitution(s.alphabet(), std::move(images));
}

CountMatrix occurrence_matrix(const Substitution& s) {
  CountMatrix m(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (auto b : s.image(a)) m(a, b) += 1;
  }
  return m;
}

PrimitivityResult is_primitive(const Substitution& s) {
  const std::size_t d = s.size();
  const std::size_t wielandt = d * d - 2 * d + 2;
  std::vector<std::vector<bool>> base(d, std::vector<bool>(d, false));
  for (std::size_t a = 0; a < d; ++a) {
    for (auto b : s.image(a)) base[a][b] = true;
  }
  auto power = base;
  for (std::size_t n = 1; n <= wielandt; ++n) {
    bool all = true;
    for (const auto& row : power) {
      for (bool x : row) all = all && x;
    }
    if (all) return {true, static_cast<unsigned>(n)};
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (!power[i][k]) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (base[k][j]) next[i][j] = true;
        }
      }
    }
    power = std::move(next);
  }
  return {false, 0};
}

std::optional<ProperLetters> is_proper(const Substitution& s) {
  const Letter first = s.image(0).front();
  const Letter last = s.image(0).back();
  for (const auto& w : s.images()) {
    if (w.front() != first || w.back() != last) return std::nullopt;
  }
  return ProperLetters{first, last};
}

Word fixed_point_prefix(const Substitution& s, Letter seed, std::size_t length) {
  if (length == 0) throw Error("fixed_point_prefix: length must be >= 1");
  if (seed >= s.size()) throw Error("fixed_point_prefix: seed out of range");
  if (s.image(seed).front() != seed) {
    throw Error("fixed_point_prefix: seed '" + s.alphabet().symbol(seed) +
                "' is not prefix-stable");
  }
  Word w{seed};
  while (w.size() < length) {
    Word next = s.apply(w);
    if (next.size() == w.size()) throw Error("fixed_point_prefix: word does not grow");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

std::size_t period_candidate_cap(const Substitution& s) {
  std::size_t cap = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    cap = std::max(cap, s.apply(s.image(a)).size());
  }
  return cap;
}

std::size_t aperiodicity_threshold(const Substitution& s) {
  return 2 * s.max_image_length() * s.size() * period_candidate_cap(s);
}

Periodicity periodicity(const Substitution& s, std::size_t bound) {
  if (bound == 0) throw Error("periodicity: bound must be >= 1");
  const auto proper = is_proper(s);
  if (!proper) throw Error("periodicity: substitution is not proper");
  const std::size_t cap = period_candidate_cap(s);
  const Word w = fixed_point_prefix(s, proper->first, cap * s.max_image_length() + 1);
  for (std::size_t p = 1; p <= cap; ++p) {
    const Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    const Word su = s.apply(u);
    if (su.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < su.size() && ok; ++i) ok = su[i] == u[i % p];
    if (ok) return Periodic{p, su.size() / p};
  }
  const std::size_t required = aperiodicity_threshold(s);
  if (bound < required) return Unknown{bound, required};
  const auto profile = complexity_profile(s, bound);
  for (std::size_t n = 1; n <= bound; ++n) {
    if (profile[n - 1] <= n) return Unknown{bound, required};
  }
  return Aperiodic{bound};
}

std::optional<std::int64_t> is_para_periodic(const Substitution& s) {
  const auto m = occurrence_matrix(s);
  const auto m2 = m * m;
  // The ratio is fixed by any nonzero entry of M.
  std::optional<std::int64_t> n;
  for (std::size_t i = 0; i < m.size() && !n; ++i) {
    for (std::size_t j = 0; j < m.size() && !n; ++j) {
      if (m(i, j) != 0) {
        if (m2(i, j) % m(i, j) != 0) return std::nullopt;
        n = m2(i, j) / m(i, j);
      }
    }
  }
  if (!n) return std::nullopt;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m2(i, j) != *n * m(i, j)) return std::nullopt;
    }
  }
  return n;
}

namespace {

std::vector<std::u32string> two_letter_factors(const Substitution& s) {
  std::set<std::u32string> f2;
  std::vector<std::u32string> frontier;
  auto add_from = [&](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      std::u32string f{static_cast<char32_t>(w[i]), static_cast<char32_t>(w[i + 1])};
      if (f2.insert(f).second) frontier.push_back(f);
    }
  };
  for (const auto& img : s.images()) add_from(img);
  while (!frontier.empty()) {
    auto f = frontier.back();
    frontier.pop_back();
    add_from(s.apply(Word{static_cast<Letter>(f[0]), static_cast<Letter>(f[1])}));
  }
  return {f2.begin(), f2.end()};
}

std::vector<std::u32string> factor_strings(const Substitution& s, std::size_t n) {
  if (n == 0) return {std::u32string{}};
  if (n == 1) {
    std::set<std::u32string> letters;
    for (const auto& img : s.images()) {
      for (auto a : img) letters.insert(std::u32string(1, static_cast<char32_t>(a)));
    }
    return {letters.begin(), letters.end()};
  }
  const auto f2 = two_letter_factors(s);
  // Least j with every |sigma^j(a)| >= n: then each length-n factor sits
  // inside sigma^j(x) sigma^j(y) for a two-letter factor xy.
  std::vector<Word> blocks;
  for (std::size_t a = 0; a < s.size(); ++a) blocks.push_back(Word{static_cast<Letter>(a)});
  auto shortest = [&] {
    std::size_t m = blocks[0].size();
    for (const auto& b : blocks) m = std::min(m, b.size());
    return m;
  };
  while (shortest() < n) {
    for (auto& b : blocks) b = s.apply(b);
  }
  std::vector<std::u32string> buffers;
  buffers.reserve(f2.size());
  for (const auto& xy : f2) {
    std::u32string w;
    for (auto c : blocks[xy[0]]) w.push_back(static_cast<char32_t>(c));
    for (auto c : blocks[xy[1]]) w.push_back(static_cast<char32_t>(c));
    buffers.push_back(std::move(w));
  }
  std::unordered_set<std::u32string_view> seen;
  for (const auto& w : buffers) {
    const std::u32string_view v(w);
    for (std::size_t i = 0; i + n <= v.size(); ++i) seen.insert(v.substr(i, n));
  }
  std::vector<std::u32string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Word> factors(const Substitution& s, std::size_t n) {
  std::vector<Word> out;
  for (const auto& f : factor_strings(s, n)) out.emplace_back(f.begin(), f.end());
  return out;
}

std::size_t factor_complexity(const Substitution& s, std::size_t n) {
  if (n == 0) throw Error("factor_complexity: n must be >= 1");
  return factor_strings(s, n).size();
}

std::vector<std::size_t> complexity_profile(const Substitution& s, std::size_t n) {
  if (n == 0) return {};
  // Factors are right-extendable, so p(i) counts distinct length-i prefixes.
  const auto f = factor_strings(s, n);
  std::vector<std::size_t> profile(n, 1);
  std::vector<std::size_t> bumps(n + 1, 0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    std::size_t lcp = 0;
    while (lcp < n && f[k][lcp] == f[k - 1][lcp]) ++lcp;
    // distinct for every prefix length > lcp
    bumps[lcp] += 1;
  }
  std::size_t acc = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    acc += bumps[i - 1];
    profile[i - 1] = acc;
  }
  return profile;
}

Classification classify(const Substitution& s, std::size_t periodicity_bound) {
  Classification c;
  c.primitive = is_primitive(s);
  c.proper = is_proper(s);
  c.para_periodic = is_para_periodic(s);
  if (c.primitive.primitive && c.proper) c.periodicity = periodicity(s, periodicity_bound);
  return c;
}

}  // namespace substar
