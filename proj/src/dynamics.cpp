#include "substar/dynamics.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "substar/ktheory.hpp"

namespace substar {

Word orbit_reading(const Diagram& d, std::size_t k) {
  Word out;
  out.reserve(k);
  auto p = d.p_min();
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(p.prefix.root);
    if (i + 1 < k) p = d.vershik_step(p, Direction::Forward);
  }
  return out;
}

Word vershik_reading(const Diagram& d, std::size_t k, std::size_t periodicity_bound) {
  const auto per = periodicity(d.substitution(), periodicity_bound);
  if (!std::holds_alternative<Aperiodic>(per)) {
    throw Error("vershik_reading needs a certified aperiodic substitution");
  }
  return orbit_reading(d, k);
}

OdometerProfile odometer_profile(const Substitution& s, std::size_t periodicity_bound) {
  const auto per = periodicity(s, periodicity_bound);
  const auto* p = std::get_if<Periodic>(&per);
  if (!p) throw Error("odometer_profile needs a periodic substitution");
  return {p->period, p->power, fmt::format("({},{},{},...)", p->period, p->power, p->power)};
}

CylinderOrbit cylinder_orbit(const Diagram& d, unsigned level) {
  const auto total = level == 1 ? d.substitution().size() : static_cast<std::size_t>(d.count_paths(level));
  std::vector<FinitePath> seq;
  seq.reserve(2 * total);
  auto p = d.p_min();
  for (std::size_t i = 0; i < 2 * total; ++i) {
    auto cyl = d.extend(p, std::max(level, 2u)).prefix;
    cyl.edges.resize(level - 1);
    seq.push_back(std::move(cyl));
    p = d.vershik_step(p, Direction::Forward);
  }
  CylinderOrbit o;
  o.level = level;
  for (std::size_t per = 1; per <= total && o.period == 0; ++per) {
    bool ok = true;
    for (std::size_t i = per; i < seq.size() && ok; ++i) ok = seq[i] == seq[i - per];
    if (ok) o.period = per;
  }
  const std::size_t span = o.period ? o.period : total;
  o.distinct = std::set<FinitePath>(seq.begin(), seq.begin() + span).size();
  o.cyclic = o.period != 0 && o.distinct == o.period;
  return o;
}

FLabel classify_F_sigma(const Substitution& s, std::size_t periodicity_bound) {
  const auto per = periodicity(s, periodicity_bound);
  if (const auto* p = std::get_if<Periodic>(&per)) {
    return {"bunce-deddens", fmt::format("Bunce-Deddens algebra, supernatural number {}*{}^inf", p->period, p->power)};
  }
  if (std::holds_alternative<Aperiodic>(per)) {
    return {"crossed-product", "crossed product of an aperiodic substitution minimal Cantor system, K0 = " +
                                   dimension_group(s).to_string()};
  }
  const auto& u = std::get<Unknown>(per);
  return {"undetermined", fmt::format("periodicity unresolved at bound {} (needs {})", u.bound, u.required)};
}

}  // namespace substar
