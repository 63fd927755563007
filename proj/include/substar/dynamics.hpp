#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "substar/diagram.hpp"

namespace substar {

/// Root labels along the forward Vershik orbit of p_min, K letters.
Word orbit_reading(const Diagram& d, std::size_t k);

/// orbit_reading for certified-aperiodic input; throws otherwise.
Word vershik_reading(const Diagram& d, std::size_t k, std::size_t periodicity_bound);

struct OdometerProfile {
  std::size_t period = 0;  // p
  std::size_t power = 0;   // d
  std::string base;        // (p,d,d,...)
};

/// Throws unless the substitution is periodic.
OdometerProfile odometer_profile(const Substitution& s, std::size_t periodicity_bound);

struct CylinderOrbit {
  unsigned level = 0;
  std::size_t period = 0;   // least period of the level-n cylinder sequence along the orbit
  std::size_t distinct = 0; // distinct cylinders within one period
  bool cyclic = false;      // period == distinct, so each cylinder is visited once per cycle
};

/// Follows the orbit of p_min for 2 |P^(n)| steps.
CylinderOrbit cylinder_orbit(const Diagram& d, unsigned level);

struct FLabel {
  std::string kind;   // "bunce-deddens", "crossed-product" or "undetermined"
  std::string label;
};

FLabel classify_F_sigma(const Substitution& s, std::size_t periodicity_bound);

}  // namespace substar
