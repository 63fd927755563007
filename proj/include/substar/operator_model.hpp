#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "substar/algebra.hpp"

namespace substar {

/// Finitely supported vector on the eventually-extreme infinite paths.
using ModelVector = std::map<TailPath, Rational>;

/// The countable representation: s_f prepends f, s_f^* strips it, u is the
/// Vershik map. Every monomial sends a basis vector to a basis vector or 0.
class OperatorModel {
 public:
  explicit OperatorModel(const Diagram& d);

  const Diagram& diagram() const { return d_; }

  std::optional<TailPath> s(const FinitePath& f, const TailPath& l) const;
  std::optional<TailPath> s_star(const FinitePath& f, const TailPath& l) const;
  TailPath u(std::int64_t k, const TailPath& l) const { return d_.vershik_power(l, k); }

  std::optional<TailPath> apply(const Monomial& m, const TailPath& l) const;
  ModelVector apply(const Element& x, const TailPath& l) const;
  ModelVector apply(const Element& x, const ModelVector& v) const;

 private:
  const Diagram& d_;
};

struct Verdict {
  bool pass = true;
  std::size_t probes = 0;
  std::string witness;            // first distinguishing basis path, if any
  bool coefficients_match = true;  // structural comparison after common-level normalization
};

/// Compares lhs and rhs on every canonical basis path with prefix level <= probe_depth.
/// The operator comparison decides the verdict; a coefficient mismatch alone is only reported.
Verdict check_identity(const Algebra& alg, const Element& lhs, const Element& rhs,
                       unsigned probe_depth);
Verdict check_identity(const Algebra& alg, const Element& lhs, const Element& rhs,
                       const std::vector<TailPath>& basis);

/// Basis paths for probing: all canonical ones up to max_level.
std::vector<TailPath> probe_basis(const Diagram& d, unsigned max_level);

}  // namespace substar
