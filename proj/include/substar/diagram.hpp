#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "substar/substitution.hpp"

namespace substar {

struct Vertex {
  Letter label = 0;
  unsigned level = 1;
  auto operator<=>(const Vertex&) const = default;
};

/// Edge into x(target, n); its source is sigma(target)[index]. Indices are 0-based.
struct Edge {
  Letter target = 0;
  std::uint32_t index = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Path from the top vertex down to level edges.size() + 1.
/// root is the level-1 label; edges[0] is the level-2 edge.
/// A level-1 path (no edges) stands for the projection onto paths with that root.
struct FinitePath {
  Letter root = 0;
  std::vector<Edge> edges;

  unsigned level() const { return static_cast<unsigned>(edges.size()) + 1; }
  Letter target() const { return edges.empty() ? root : edges.back().target; }
  Vertex vertex() const { return {target(), level()}; }
  /// Label of the vertex at level j (1 <= j <= level()).
  Letter label_at(unsigned j) const { return j == 1 ? root : edges[j - 2].target; }

  auto operator<=>(const FinitePath&) const = default;
};

/// f g, defined when f.target() == g.root.
FinitePath concat(const FinitePath& f, const FinitePath& g);
bool is_prefix(const FinitePath& p, const FinitePath& f);
/// The part of f below level p.level(); requires is_prefix(p, f).
FinitePath strip_prefix(const FinitePath& p, const FinitePath& f);

enum class Tail : std::uint8_t { Min, Max };
enum class Direction : std::uint8_t { Forward, Backward };

/// Infinite path whose edges below the prefix are all minimal (or all maximal).
struct TailPath {
  FinitePath prefix;
  Tail tail = Tail::Min;
  auto operator<=>(const TailPath&) const = default;
};

class NoSuccessor : public Error {
 public:
  using Error::Error;
};

class Diagram {
 public:
  /// Requires a primitive substitution and depth >= 2.
  Diagram(Substitution s, unsigned depth);

  const Substitution& substitution() const { return s_; }
  unsigned depth() const { return depth_; }
  /// Largest level whose path counts fit in int64.
  unsigned level_cap() const { return static_cast<unsigned>(nu_.size()) - 1; }
  bool proper() const { return proper_; }
  Letter first_letter() const;  // b: common first letter
  Letter last_letter() const;   // c: common last letter

  std::int64_t nu(Letter a, unsigned level) const;
  std::int64_t nu(const Vertex& x) const { return nu(x.label, x.level); }
  /// max / min of nu over the vertices of a level.
  std::int64_t max_nu(unsigned level) const;
  std::int64_t min_nu(unsigned level) const;
  /// Number of paths to x(c, level + 1) whose last edge index is < k.
  std::int64_t offset(Letter c, std::uint32_t k, unsigned level) const;

  std::uint32_t fiber_size(Letter a) const {
    return static_cast<std::uint32_t>(s_.image(a).size());
  }
  Letter source(const Edge& e) const { return s_.image(e.target)[e.index]; }
  bool is_max_edge(const Edge& e) const { return e.index + 1 == fiber_size(e.target); }
  bool is_min_edge(const Edge& e) const { return e.index == 0; }
  /// Edges whose source is label a, ordered by (target, index).
  const std::vector<Edge>& edges_from(Letter a) const { return out_.at(a); }

  bool valid(const FinitePath& f) const;
  void require_valid(const FinitePath& f) const;

  /// Position of f among the paths to r(f) in successor order, 0-based.
  std::int64_t position(const FinitePath& f) const;
  FinitePath path_at(const Vertex& x, std::int64_t pos) const;
  FinitePath minimal(const Vertex& x) const;
  FinitePath maximal(const Vertex& x) const;
  bool is_min(const FinitePath& f) const;
  bool is_max(const FinitePath& f) const;

  /// Same as minimal / maximal but rejects level < 2.
  FinitePath extreme_path(const Vertex& x, Tail kind) const;

  /// Paths of P^(n), ordered by target label then successor order.
  std::vector<FinitePath> enumerate_paths(unsigned n) const;
  void for_each_path(unsigned n, const std::function<void(const FinitePath&)>& fn) const;
  std::int64_t count_paths(unsigned n) const;

  FinitePath successor(const FinitePath& f) const;
  FinitePath predecessor(const FinitePath& f) const;
  /// k-fold successor; k may be negative. Throws if it leaves the tower.
  FinitePath successor_power(const FinitePath& f, std::int64_t k) const;

  // Infinite paths.
  TailPath p_min() const;
  TailPath p_max() const;
  TailPath canonical(TailPath p) const;
  /// Materializes tail edges until the prefix reaches the given level.
  TailPath extend(const TailPath& p, unsigned level) const;
  Edge tail_edge(Tail kind) const;
  bool valid(const TailPath& p) const;
  bool in_cylinder(const TailPath& p, const FinitePath& f) const;

  TailPath vershik_step(const TailPath& p, Direction dir) const;
  /// lambda^k, k of either sign, in time polynomial in log|k|.
  TailPath vershik_power(const TailPath& p, std::int64_t k) const;

  /// All canonical TailPaths with prefix level <= max_level, both tails.
  std::vector<TailPath> tail_paths(unsigned max_level) const;

  /// Extensions of a maximal f (with p_max not in U(f)) through maximal edges
  /// ending at the first non-maximal edge. They partition U(f).
  std::vector<FinitePath> gadget_S(const FinitePath& f) const;

  /// First factor of p(f, v): the smallest extension of f (depth, then lexicographic)
  /// whose position is at least max nu over level 2N.
  FinitePath gadget_p1(const FinitePath& f, unsigned N) const;
  /// Second factor: shortest path from root to label `to` that does not overlap
  /// itself or any of `others` under shifts 1..N.
  FinitePath gadget_p2(Letter root, Letter to, unsigned N,
                       const std::vector<FinitePath>& others = {}) const;
  FinitePath gadget_p(const FinitePath& f, Letter v, unsigned N) const;
  /// p(f, v) for every v with a shared first factor and pairwise non-overlapping
  /// second factors of equal length.
  std::vector<FinitePath> gadget_family(const FinitePath& f, unsigned N) const;

  /// Levels 0..depth in DOT format.
  std::string to_dot() const;

  /// 1-based index list, e.g. "a@3[1,2]".
  std::string describe(const FinitePath& f) const;
  std::string describe(const TailPath& p) const;

 private:
  void require_proper() const;
  void require_level(unsigned level) const;

  Substitution s_;
  unsigned depth_;
  bool proper_ = false;
  Letter first_ = 0;
  Letter last_ = 0;
  std::vector<std::vector<std::int64_t>> nu_;                  // [level][letter]
  std::vector<std::vector<std::vector<std::int64_t>>> offset_;  // [level][letter][k]
  std::vector<std::vector<Edge>> out_;
};

/// True when some g of level s + 1 has p a prefix of g q (shift s).
bool overlaps(const FinitePath& p, const FinitePath& q, unsigned shift);

}  // namespace substar
