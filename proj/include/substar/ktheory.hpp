#pragma once

#include <string>
#include <vector>

#include "substar/diagram.hpp"
#include "substar/lattice.hpp"

namespace substar {

/// lim(Z^r, A) with det A != 0.
struct StationaryLimitGroup {
  std::size_t rank = 0;
  IntMatrix A;
  /// Z^r when A is unimodular, Z[1/N]^r when A = N I, lim(Z^r, A) otherwise.
  std::string to_string() const;
};

IntMatrix occurrence_int_matrix(const Substitution& s);

StationaryLimitGroup dimension_group(const Substitution& s);

struct KGroupsF {
  StationaryLimitGroup K0;
  AbelianGroup K1;
};
KGroupsF k_groups_F(const Substitution& s);

AbelianGroup kernel_one_minus_tau(const Substitution& s);
AbelianGroup cokernel_one_minus_tau(const Substitution& s);

struct KGroupsB {
  AbelianGroup K0;
  AbelianGroup K1;
  bool operator==(const KGroupsB&) const = default;
};
KGroupsB k_groups_B(const Substitution& s);

struct Check {
  bool pass = false;
  std::string detail;
};

/// A = N I on the eventual range. Throws unless s is para-periodic.
Check tau_para_periodic_check(const Substitution& s);

/// Path counting by target label intertwines refinement of cylinders with M.
/// With corrupt set, labels 0 and 1 are swapped at odd levels.
Check psi_commutation_check(const Diagram& d, unsigned n_max, bool corrupt = false);

struct OracleStage {
  unsigned stage = 0;
  AbelianGroup coker;
  std::size_t ker_rank = 0;
};

/// Stage n computes Z^d / ((M - I) Z^d + ker M^n) and the rank of
/// {x : (M - I) x in ker M^n} / ker M^n on the full occurrence matrix.
struct OracleReport {
  std::vector<OracleStage> stages;
  bool stabilized = false;
  unsigned stable_from = 0;
  bool agrees = false;  // stable values equal the closed-form groups
};
OracleReport brute_force_k_oracle(const Substitution& s, unsigned stages);

/// K-groups of B for s, s^2, ..., s^max_power; passes when all coincide.
struct PowerInvariance {
  std::vector<KGroupsB> groups;
  bool pass = false;
};
PowerInvariance power_invariance_check(const Substitution& s, unsigned max_power);

}  // namespace substar
