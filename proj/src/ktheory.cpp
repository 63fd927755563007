#include "substar/ktheory.hpp"

#include <fmt/format.h>

namespace substar {

namespace {

void require_primitive(const Substitution& s) {
  if (!is_primitive(s).primitive) throw Error("substitution is not primitive");
}

IntMatrix minus_identity(const IntMatrix& m) { return m - IntMatrix::identity(m.rows()); }

std::size_t nullity(const IntMatrix& m) { return m.cols() - rank(m); }

IntMatrix scalar(std::size_t n, const Integer& v) {
  IntMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = v;
  return s;
}

}  // namespace

std::string StationaryLimitGroup::to_string() const {
  const std::string power = rank == 1 ? "" : fmt::format("^{}", rank);
  if (abs(determinant(A)) == 1) return "Z" + power;
  if (A == scalar(rank, A(0, 0))) return fmt::format("Z[1/{}]{}", A(0, 0).get_str(), power);
  return fmt::format("lim(Z{}, {})", power, A.to_string());
}

IntMatrix occurrence_int_matrix(const Substitution& s) {
  const auto c = occurrence_matrix(s);
  IntMatrix m(c.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = static_cast<long>(c(i, j));
  }
  return m;
}

StationaryLimitGroup dimension_group(const Substitution& s) {
  require_primitive(s);
  const auto e = eventual_range(occurrence_int_matrix(s));
  return {e.rank, e.A};
}

KGroupsF k_groups_F(const Substitution& s) { return {dimension_group(s), AbelianGroup{1, {}}}; }

AbelianGroup kernel_one_minus_tau(const Substitution& s) {
  const auto g = dimension_group(s);
  return {rational_kernel(minus_identity(g.A)).cols(), {}};
}

AbelianGroup cokernel_one_minus_tau(const Substitution& s) {
  return cokernel(minus_identity(dimension_group(s).A));
}

KGroupsB k_groups_B(const Substitution& s) {
  return {cokernel_one_minus_tau(s).plus_z(), kernel_one_minus_tau(s).plus_z()};
}

Check tau_para_periodic_check(const Substitution& s) {
  const auto n = is_para_periodic(s);
  if (!n) throw Error("substitution is not para-periodic");
  const auto m = occurrence_int_matrix(s);
  const auto e = eventual_range(m);
  Check c;
  c.pass = e.rank == rank(m) && e.A == scalar(e.rank, static_cast<long>(*n));
  c.detail = fmt::format("N = {}, rank {}, A = {}", *n, e.rank, e.A.to_string());
  return c;
}

Check psi_commutation_check(const Diagram& d, unsigned n_max, bool corrupt) {
  if (n_max + 1 > d.depth()) throw Error(fmt::format("psi check needs depth {}", n_max + 1));
  const std::size_t k = d.substitution().size();
  const auto m = occurrence_int_matrix(d.substitution());
  auto label = [&](Letter t, unsigned level) -> Letter {
    if (!corrupt || level % 2 == 0 || t > 1) return t;
    return 1 - t;
  };
  Check c{true, {}};
  std::size_t checked = 0;
  for (unsigned n = 2; n <= n_max && c.pass; ++n) {
    for (const auto& f : d.enumerate_paths(n)) {
      IntMatrix lhs(k, 1);
      for (const auto& e : d.edges_from(f.target())) {
        FinitePath h{f.target(), {e}};
        lhs(label(concat(f, h).target(), n + 1), 0) += 1;
      }
      IntMatrix base(k, 1);
      base(label(f.target(), n), 0) = 1;
      ++checked;
      if (lhs != m * base) {
        c.pass = false;
        c.detail = "fails at " + d.describe(f);
        break;
      }
    }
  }
  if (c.pass) c.detail = fmt::format("{} cylinder generators", checked);
  return c;
}

OracleReport brute_force_k_oracle(const Substitution& s, unsigned stages) {
  require_primitive(s);
  if (stages < 3) throw Error("oracle needs at least 3 stages");
  const auto m = occurrence_int_matrix(s);
  const auto mi = minus_identity(m);
  OracleReport r;
  IntMatrix mn = IntMatrix::identity(m.rows());
  for (unsigned n = 1; n <= stages; ++n) {
    mn = mn * m;
    OracleStage st;
    st.stage = n;
    st.coker = cokernel(mi.hcat(rational_kernel(mn)));
    st.ker_rank = nullity(mn * mi) - nullity(mn);
    r.stages.push_back(st);
  }
  const auto& last = r.stages.back();
  std::size_t from = r.stages.size();
  while (from > 0 && r.stages[from - 1].coker == last.coker && r.stages[from - 1].ker_rank == last.ker_rank) {
    --from;
  }
  r.stable_from = static_cast<unsigned>(from + 1);
  r.stabilized = r.stable_from <= m.rows();
  r.agrees = r.stabilized && last.coker == cokernel_one_minus_tau(s) &&
             AbelianGroup{last.ker_rank, {}} == kernel_one_minus_tau(s);
  return r;
}

PowerInvariance power_invariance_check(const Substitution& s, unsigned max_power) {
  PowerInvariance p;
  for (unsigned n = 1; n <= max_power; ++n) p.groups.push_back(k_groups_B(iterate(s, n)));
  p.pass = true;
  for (const auto& g : p.groups) p.pass = p.pass && g == p.groups.front();
  return p;
}

}  // namespace substar
