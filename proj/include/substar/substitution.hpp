#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace substar {

/// Index of a letter in its alphabet.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Dense non-negative integer matrix; entry (a, b) counts b in sigma(a).
class CountMatrix {
 public:
  CountMatrix() = default;
  explicit CountMatrix(std::size_t d) : d_(d), v_(d * d, 0) {}

  std::size_t size() const { return d_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return v_[r * d_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return v_[r * d_ + c]; }

  CountMatrix operator*(const CountMatrix& o) const;
  bool operator==(const CountMatrix& o) const = default;
  bool positive() const;
  std::vector<std::vector<std::int64_t>> rows() const;

 private:
  std::size_t d_ = 0;
  std::vector<std::int64_t> v_;
};

class Alphabet {
 public:
  Alphabet() = default;
  /// Throws if a symbol repeats or fewer than two are given.
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }
  std::optional<Letter> find(std::string_view symbol) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

class Substitution {
 public:
  Substitution() = default;
  Substitution(Alphabet alphabet, std::vector<Word> images);

  /// Convenience: letters are single characters, e.g. {{"a","ab"},{"b","ab"}}.
  static Substitution from_rules(const std::vector<std::pair<std::string, std::string>>& rules);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return alphabet_.size(); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  std::size_t max_image_length() const;
  std::size_t min_image_length() const;

  Word apply(const Word& w) const;
  std::string spell(const Word& w) const;
  Word read(std::string_view text) const;

  /// Serialises back to the rule format accepted by parse_substitution.
  std::string to_spec() const;

  bool operator==(const Substitution&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
};

Substitution parse_substitution(std::string_view text);

Substitution iterate(const Substitution& s, unsigned n);

CountMatrix occurrence_matrix(const Substitution& s);

struct PrimitivityResult {
  bool primitive = false;
  unsigned witness = 0;  // least n with M^n > 0; 0 when not primitive
};
PrimitivityResult is_primitive(const Substitution& s);

struct ProperLetters {
  Letter first;
  Letter last;
  bool operator==(const ProperLetters&) const = default;
};
std::optional<ProperLetters> is_proper(const Substitution& s);

/// First `length` letters of lim sigma^n(seed).
Word fixed_point_prefix(const Substitution& s, Letter seed, std::size_t length);

struct Periodic {
  std::size_t period;  // p_sigma
  std::size_t power;   // d_sigma with sigma(u) = u^d
};
struct Aperiodic {
  std::size_t certified_bound;
};
struct Unknown {
  std::size_t bound;
  std::size_t required;  // bound needed before Aperiodic can be certified
};
using Periodicity = std::variant<Periodic, Aperiodic, Unknown>;

/// Period candidates are all p <= max_a |sigma^2(a)|. Aperiodic needs
/// complexity p(n) > n for every n <= bound and bound >= aperiodicity_threshold.
Periodicity periodicity(const Substitution& s, std::size_t bound);
std::size_t period_candidate_cap(const Substitution& s);
std::size_t aperiodicity_threshold(const Substitution& s);

std::optional<std::int64_t> is_para_periodic(const Substitution& s);

/// Distinct factors of length n of the language of a primitive substitution.
std::vector<Word> factors(const Substitution& s, std::size_t n);
std::size_t factor_complexity(const Substitution& s, std::size_t n);
/// p(1..n) in one pass; entry i holds p(i+1).
std::vector<std::size_t> complexity_profile(const Substitution& s, std::size_t n);

struct Classification {
  PrimitivityResult primitive;
  std::optional<ProperLetters> proper;
  std::optional<Periodicity> periodicity;  // only computed for primitive proper input
  std::optional<std::int64_t> para_periodic;
};
Classification classify(const Substitution& s, std::size_t periodicity_bound);

}  // namespace substar
