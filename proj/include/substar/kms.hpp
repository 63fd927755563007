#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "substar/algebra.hpp"

namespace substar {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Perron eigenvalue of M and the left eigenvector (M^T v = lambda v),
/// normalized by sum_a |sigma(a)| v_a = lambda.
struct PerronData {
  bool exact = false;            // lambda is an integer and v is rational
  Rational lambda;               // valid when exact
  std::vector<Rational> v;       // valid when exact
  Real lambda_lo, lambda_hi;     // certified enclosure; equal when exact
  std::vector<Real> v_approx;
  Real residual = 0;             // max |(M^T v - lambda v)_a| for the approximate data
};

PerronData perron(const Substitution& s);

struct TraceValue {
  std::optional<Rational> exact;
  Real value = 0;
  Real error = 0;
  std::string to_string() const;
};

/// The trace on the gauge-invariant part composed with E, with the cylinder measure.
class Trace {
 public:
  /// The diagram must outlive the trace.
  explicit Trace(const Diagram& d);

  const PerronData& perron() const { return perron_; }
  std::optional<std::int64_t> para_periodic() const { return n_; }

  /// mu(U(f)) for any finite path ending at x.
  TraceValue cylinder_measure(const Vertex& x) const;
  TraceValue cylinder_measure(const FinitePath& f) const { return cylinder_measure(f.vertex()); }

  TraceValue phi(const Element& x) const;
  /// Exact value; throws unless the Perron data is exact.
  Rational phi_exact(const Element& x) const;

  /// Each monomial scaled by N^{-degree}. Throws unless para-periodic.
  Element theta_i(const Element& x) const;

  /// phi(x y) == phi(y theta_i(x)), exactly.
  bool kms_check(const Algebra& alg, const Element& x, const Element& y) const;

 private:
  const Diagram& d_;
  PerronData perron_;
  std::optional<std::int64_t> n_;
};

/// Branches of the monomial case analysis for phi(xy) versus phi(y theta(x)).
enum class KmsBranch { Unbalanced, Mismatch, Offset, Match };
constexpr std::size_t kKmsBranches = 4;
const char* to_string(KmsBranch b);
KmsBranch classify_pair(const Monomial& x, const Monomial& y);

struct KmsReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::array<std::size_t, kKmsBranches> per_branch{};
  std::string first_failure;
};

/// Seeded windowed monomial pairs, cycling through the branches.
KmsReport kms_sample(const Algebra& alg, const Trace& trace, std::size_t count, std::uint64_t seed,
                     unsigned max_level = 4);

}  // namespace substar
