#include "substar/diagram.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

namespace substar {

FinitePath concat(const FinitePath& f, const FinitePath& g) {
  if (f.target() != g.root) throw Error("concat: label mismatch");
  FinitePath out = f;
  out.edges.insert(out.edges.end(), g.edges.begin(), g.edges.end());
  return out;
}

bool is_prefix(const FinitePath& p, const FinitePath& f) {
  if (p.root != f.root || p.edges.size() > f.edges.size()) return false;
  return std::equal(p.edges.begin(), p.edges.end(), f.edges.begin());
}

FinitePath strip_prefix(const FinitePath& p, const FinitePath& f) {
  if (!is_prefix(p, f)) throw Error("strip_prefix: not a prefix");
  FinitePath out;
  out.root = p.target();
  out.edges.assign(f.edges.begin() + static_cast<std::ptrdiff_t>(p.edges.size()), f.edges.end());
  return out;
}

bool overlaps(const FinitePath& p, const FinitePath& q, unsigned shift) {
  if (p.level() < shift + 1) return true;
  if (p.label_at(shift + 1) != q.root) return false;
  for (std::size_t j = 0; shift + j < p.edges.size() && j < q.edges.size(); ++j) {
    if (p.edges[shift + j] != q.edges[j]) return false;
  }
  return true;
}

Diagram::Diagram(Substitution s, unsigned depth) : s_(std::move(s)), depth_(depth) {
  if (depth < 2) throw Error("diagram depth must be >= 2");
  if (!is_primitive(s_).primitive) throw Error("substitution is not primitive");
  if (auto pl = is_proper(s_)) {
    proper_ = true;
    first_ = pl->first;
    last_ = pl->last;
  }
  const std::size_t d = s_.size();
  nu_.push_back({});
  nu_.push_back(std::vector<std::int64_t>(d, 1));
  while (true) {
    const auto& prev = nu_.back();
    std::vector<std::vector<std::int64_t>> offs(d);
    std::vector<std::int64_t> next(d, 0);
    bool overflow = false;
    for (Letter a = 0; a < d && !overflow; ++a) {
      offs[a].push_back(0);
      for (auto b : s_.image(a)) {
        std::int64_t v = 0;
        if (__builtin_add_overflow(offs[a].back(), prev[b], &v)) {
          overflow = true;
          break;
        }
        offs[a].push_back(v);
      }
      if (!overflow) next[a] = offs[a].back();
    }
    if (overflow) break;
    offset_.resize(nu_.size());
    offset_.back() = std::move(offs);
    nu_.push_back(std::move(next));
  }
  out_.resize(d);
  for (Letter a = 0; a < d; ++a) {
    for (std::uint32_t k = 0; k < s_.image(a).size(); ++k) out_[s_.image(a)[k]].push_back({a, k});
  }
  if (depth_ > level_cap()) {
    throw Error(fmt::format("depth {} exceeds the int64 path-count range ({})", depth_, level_cap()));
  }
}

Letter Diagram::first_letter() const {
  require_proper();
  return first_;
}

Letter Diagram::last_letter() const {
  require_proper();
  return last_;
}

void Diagram::require_proper() const {
  if (!proper_) throw Error("substitution is not proper");
}

void Diagram::require_level(unsigned level) const {
  if (level < 1 || level > level_cap()) {
    throw Error(fmt::format("level {} outside 1..{}", level, level_cap()));
  }
}

std::int64_t Diagram::nu(Letter a, unsigned level) const {
  require_level(level);
  return nu_[level].at(a);
}

std::int64_t Diagram::max_nu(unsigned level) const {
  require_level(level);
  return *std::max_element(nu_[level].begin(), nu_[level].end());
}

std::int64_t Diagram::min_nu(unsigned level) const {
  require_level(level);
  return *std::min_element(nu_[level].begin(), nu_[level].end());
}

std::int64_t Diagram::offset(Letter c, std::uint32_t k, unsigned level) const {
  if (level < 1 || level >= level_cap()) {
    throw Error(fmt::format("level {} outside 1..{}", level + 1, level_cap()));
  }
  return offset_[level].at(c).at(k);
}

bool Diagram::valid(const FinitePath& f) const {
  if (f.root >= s_.size()) return false;
  Letter above = f.root;
  for (const auto& e : f.edges) {
    if (e.target >= s_.size() || e.index >= fiber_size(e.target)) return false;
    if (source(e) != above) return false;
    above = e.target;
  }
  return f.level() <= level_cap();
}

void Diagram::require_valid(const FinitePath& f) const {
  if (!valid(f)) throw Error("invalid path " + describe(f));
}

std::int64_t Diagram::position(const FinitePath& f) const {
  std::int64_t pos = 0;
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    pos += offset(f.edges[i].target, f.edges[i].index, static_cast<unsigned>(i) + 1);
  }
  return pos;
}

FinitePath Diagram::path_at(const Vertex& x, std::int64_t pos) const {
  if (pos < 0 || pos >= nu(x)) {
    throw Error(fmt::format("position {} outside tower of size {}", pos, nu(x)));
  }
  FinitePath f;
  f.edges.resize(x.level - 1);
  Letter c = x.label;
  for (unsigned j = x.level; j >= 2; --j) {
    const auto& offs = offset_[j - 1][c];
    auto it = std::upper_bound(offs.begin(), offs.end(), pos);
    const auto k = static_cast<std::uint32_t>(it - offs.begin() - 1);
    pos -= offs[k];
    f.edges[j - 2] = {c, k};
    c = s_.image(c)[k];
  }
  f.root = c;
  return f;
}

FinitePath Diagram::minimal(const Vertex& x) const { return path_at(x, 0); }

FinitePath Diagram::maximal(const Vertex& x) const { return path_at(x, nu(x) - 1); }

bool Diagram::is_min(const FinitePath& f) const {
  return std::all_of(f.edges.begin(), f.edges.end(), [&](const Edge& e) { return is_min_edge(e); });
}

bool Diagram::is_max(const FinitePath& f) const {
  return std::all_of(f.edges.begin(), f.edges.end(), [&](const Edge& e) { return is_max_edge(e); });
}

FinitePath Diagram::extreme_path(const Vertex& x, Tail kind) const {
  if (x.level < 2) throw Error("extreme_path: level must be >= 2");
  return kind == Tail::Min ? minimal(x) : maximal(x);
}

void Diagram::for_each_path(unsigned n, const std::function<void(const FinitePath&)>& fn) const {
  if (n < 2 || n > depth_) throw Error(fmt::format("level {} outside 2..{}", n, depth_));
  for (Letter a = 0; a < s_.size(); ++a) {
    const Vertex x{a, n};
    for (std::int64_t p = 0; p < nu(x); ++p) fn(path_at(x, p));
  }
}

std::vector<FinitePath> Diagram::enumerate_paths(unsigned n) const {
  std::vector<FinitePath> out;
  for_each_path(n, [&](const FinitePath& f) { out.push_back(f); });
  return out;
}

std::int64_t Diagram::count_paths(unsigned n) const {
  std::int64_t total = 0;
  for (Letter a = 0; a < s_.size(); ++a) total += nu(a, n);
  return total;
}

FinitePath Diagram::successor(const FinitePath& f) const {
  require_valid(f);
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    if (is_max_edge(f.edges[i])) continue;
    FinitePath g = f;
    g.edges[i].index += 1;
    const auto top = minimal({source(g.edges[i]), static_cast<unsigned>(i) + 1});
    g.root = top.root;
    std::copy(top.edges.begin(), top.edges.end(), g.edges.begin());
    return g;
  }
  throw NoSuccessor("path " + describe(f) + " is maximal");
}

FinitePath Diagram::predecessor(const FinitePath& f) const {
  require_valid(f);
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    if (is_min_edge(f.edges[i])) continue;
    FinitePath g = f;
    g.edges[i].index -= 1;
    const auto top = maximal({source(g.edges[i]), static_cast<unsigned>(i) + 1});
    g.root = top.root;
    std::copy(top.edges.begin(), top.edges.end(), g.edges.begin());
    return g;
  }
  throw NoSuccessor("path " + describe(f) + " is minimal");
}

FinitePath Diagram::successor_power(const FinitePath& f, std::int64_t k) const {
  require_valid(f);
  const auto pos = position(f);
  const auto size = nu(f.vertex());
  if (k > size - 1 - pos || -k > pos) {
    throw NoSuccessor(fmt::format("successor power {} leaves the tower of {}", k, describe(f)));
  }
  return path_at(f.vertex(), pos + k);
}

Edge Diagram::tail_edge(Tail kind) const {
  require_proper();
  return kind == Tail::Min ? Edge{first_, 0} : Edge{last_, fiber_size(last_) - 1};
}

TailPath Diagram::p_min() const { return {minimal({first_letter(), 2}), Tail::Min}; }

TailPath Diagram::p_max() const { return {maximal({last_letter(), 2}), Tail::Max}; }

TailPath Diagram::canonical(TailPath p) const {
  const Edge e = tail_edge(p.tail);
  while (p.prefix.level() < 2) p.prefix.edges.push_back(e);
  while (p.prefix.level() > 2 && p.prefix.edges.back() == e) p.prefix.edges.pop_back();
  return p;
}

TailPath Diagram::extend(const TailPath& p, unsigned level) const {
  if (level > level_cap()) throw Error(fmt::format("cannot extend beyond level {}", level_cap()));
  TailPath q = p;
  const Edge e = tail_edge(p.tail);
  while (q.prefix.level() < level) q.prefix.edges.push_back(e);
  return q;
}

bool Diagram::valid(const TailPath& p) const {
  if (!proper_ || !valid(p.prefix) || p.prefix.level() < 2) return false;
  return p.prefix.target() == tail_edge(p.tail).target;
}

bool Diagram::in_cylinder(const TailPath& p, const FinitePath& f) const {
  return is_prefix(f, extend(p, f.level()).prefix);
}

TailPath Diagram::vershik_step(const TailPath& p, Direction dir) const {
  TailPath q = canonical(p);
  const bool fwd = dir == Direction::Forward;
  const auto& edges = q.prefix.edges;
  const bool stuck = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return fwd ? is_max_edge(e) : is_min_edge(e);
  });
  if (stuck) {
    // The tail edge is non-extreme in the other direction.
    if ((q.tail == Tail::Max) == fwd) return fwd ? p_min() : p_max();
    q = extend(q, q.prefix.level() + 1);
  }
  q.prefix = fwd ? successor(q.prefix) : predecessor(q.prefix);
  return canonical(std::move(q));
}

TailPath Diagram::vershik_power(const TailPath& p, std::int64_t k) const {
  TailPath q = canonical(p);
  while (k != 0) {
    const auto pos = position(q.prefix);
    const auto size = nu(q.prefix.vertex());
    if (k > 0) {
      if (q.tail == Tail::Max) {
        const auto dist = size - 1 - pos;
        if (k <= dist) {
          q.prefix = path_at(q.prefix.vertex(), pos + k);
          break;
        }
        k -= dist + 1;
        q = p_min();
        continue;
      }
      while (k >= nu(q.prefix.vertex()) - pos) q = extend(q, q.prefix.level() + 1);
      q.prefix = path_at(q.prefix.vertex(), pos + k);
      break;
    }
    if (q.tail == Tail::Min) {
      if (-k <= pos) {
        q.prefix = path_at(q.prefix.vertex(), pos + k);
        break;
      }
      k += pos + 1;
      q = p_max();
      continue;
    }
    while (position(q.prefix) < -k) q = extend(q, q.prefix.level() + 1);
    q.prefix = path_at(q.prefix.vertex(), position(q.prefix) + k);
    break;
  }
  return canonical(std::move(q));
}

std::vector<TailPath> Diagram::tail_paths(unsigned max_level) const {
  std::vector<TailPath> out;
  for (Tail kind : {Tail::Min, Tail::Max}) {
    const Edge e = tail_edge(kind);
    for (unsigned n = 2; n <= max_level; ++n) {
      const Vertex x{e.target, n};
      for (std::int64_t pos = 0; pos < nu(x); ++pos) {
        auto f = path_at(x, pos);
        if (n > 2 && f.edges.back() == e) continue;
        out.push_back({std::move(f), kind});
      }
    }
  }
  return out;
}

std::vector<FinitePath> Diagram::gadget_S(const FinitePath& f) const {
  require_valid(f);
  if (f.level() < 2 || !is_max(f)) throw Error("gadget_S: path must be maximal");
  if (f.target() == last_letter()) throw Error("gadget_S: p_max lies in U(f)");
  std::vector<FinitePath> out;
  std::vector<FinitePath> frontier{f};
  while (!frontier.empty()) {
    std::vector<FinitePath> next;
    for (const auto& g : frontier) {
      for (const auto& e : edges_from(g.target())) {
        FinitePath h = g;
        h.edges.push_back(e);
        if (is_max_edge(e)) {
          next.push_back(std::move(h));
        } else {
          out.push_back(std::move(h));
        }
      }
    }
    if (!next.empty() && next.front().level() > level_cap()) throw Error("gadget_S: no finite cover");
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Largest sum of offsets over extensions of `depth` edges below a vertex
// with label t at level j.
struct MaxExtension {
  const Diagram& d;
  std::map<std::tuple<Letter, unsigned, unsigned>, std::int64_t> memo;

  std::int64_t operator()(Letter t, unsigned j, unsigned depth) {
    if (depth == 0) return 0;
    auto key = std::make_tuple(t, j, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (const auto& e : d.edges_from(t)) {
      best = std::max(best, d.offset(e.target, e.index, j) + (*this)(e.target, j + 1, depth - 1));
    }
    memo[key] = best;
    return best;
  }
};

}  // namespace

FinitePath Diagram::gadget_p1(const FinitePath& f, unsigned N) const {
  require_valid(f);
  if (N < 2) throw Error("gadget: N must be >= 2");
  const std::int64_t K = max_nu(2 * N);
  const std::int64_t base = position(f);
  if (base >= K) return f;
  MaxExtension best{*this, {}};
  for (unsigned depth = 1; f.level() + depth < level_cap(); ++depth) {
    if (base + best(f.target(), f.level(), depth) < K) continue;
    FinitePath g = f;
    std::function<bool(std::int64_t, unsigned)> dfs = [&](std::int64_t acc, unsigned left) {
      const unsigned j = g.level();
      for (const auto& e : edges_from(g.target())) {
        const auto val = acc + offset(e.target, e.index, j);
        if (val + best(e.target, j + 1, left - 1) < K) continue;
        g.edges.push_back(e);
        if (left == 1 || dfs(val, left - 1)) return true;
        g.edges.pop_back();
      }
      return false;
    };
    if (dfs(base, depth)) {
      if (g.level() > depth_) {
        throw Error(fmt::format("gadget needs diagram depth >= {}", g.level()));
      }
      return g;
    }
  }
  throw Error("gadget_p1: no extension within the int64 range");
}

namespace {

bool clear_of(const FinitePath& q, unsigned N, const std::vector<FinitePath>& others) {
  for (unsigned s = 1; s <= N; ++s) {
    if (overlaps(q, q, s)) return false;
    for (const auto& o : others) {
      if (overlaps(q, o, s) || overlaps(o, q, s)) return false;
    }
  }
  return true;
}

std::optional<FinitePath> search_p2(const Diagram& d, Letter root, Letter to, unsigned N,
                                    const std::vector<FinitePath>& others, unsigned edges) {
  FinitePath q;
  q.root = root;
  std::optional<FinitePath> found;
  std::function<void()> dfs = [&] {
    if (found) return;
    if (q.edges.size() == edges) {
      if (q.target() == to && clear_of(q, N, others)) found = q;
      return;
    }
    for (const auto& e : d.edges_from(q.target())) {
      q.edges.push_back(e);
      dfs();
      q.edges.pop_back();
      if (found) return;
    }
  };
  dfs();
  return found;
}

constexpr unsigned kMaxP2Edges = 24;

}  // namespace

FinitePath Diagram::gadget_p2(Letter root, Letter to, unsigned N,
                              const std::vector<FinitePath>& others) const {
  for (unsigned e = 1; e <= kMaxP2Edges; ++e) {
    if (auto q = search_p2(*this, root, to, N, others, e)) return *q;
  }
  throw Error("gadget_p2: no non-overlapping path found");
}

FinitePath Diagram::gadget_p(const FinitePath& f, Letter v, unsigned N) const {
  const auto p1 = gadget_p1(f, N);
  const auto p = concat(p1, gadget_p2(p1.target(), v, N));
  if (p.level() > depth_) throw Error(fmt::format("gadget needs diagram depth >= {}", p.level()));
  return p;
}

std::vector<FinitePath> Diagram::gadget_family(const FinitePath& f, unsigned N) const {
  const auto p1 = gadget_p1(f, N);
  for (unsigned e = 1; e <= kMaxP2Edges; ++e) {
    std::vector<FinitePath> chosen;
    for (Letter v = 0; v < s_.size(); ++v) {
      auto q = search_p2(*this, p1.target(), v, N, chosen, e);
      if (!q) break;
      chosen.push_back(std::move(*q));
    }
    if (chosen.size() != s_.size()) continue;
    std::vector<FinitePath> out;
    for (const auto& q : chosen) out.push_back(concat(p1, q));
    if (out.front().level() > depth_) {
      throw Error(fmt::format("gadget needs diagram depth >= {}", out.front().level()));
    }
    return out;
  }
  throw Error("gadget_family: no non-overlapping family found");
}

std::string Diagram::to_dot() const {
  std::ostringstream out;
  const auto name = [&](Letter a, unsigned n) { return "\"" + s_.alphabet().symbol(a) + "@" + std::to_string(n) + "\""; };
  out << "digraph bratteli {\n  rankdir=TB;\n  \"x0\";\n";
  for (unsigned n = 1; n <= depth_; ++n) {
    out << "  { rank=same;";
    for (Letter a = 0; a < s_.size(); ++a) out << ' ' << name(a, n) << ';';
    out << " }\n";
  }
  for (Letter a = 0; a < s_.size(); ++a) out << "  \"x0\" -> " << name(a, 1) << ";\n";
  for (unsigned n = 2; n <= depth_; ++n) {
    for (Letter a = 0; a < s_.size(); ++a) {
      for (std::uint32_t k = 0; k < fiber_size(a); ++k) {
        out << "  " << name(s_.image(a)[k], n - 1) << " -> " << name(a, n) << " [label=\"" << k + 1
            << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string Diagram::describe(const FinitePath& f) const {
  std::string out = (f.target() < s_.size() ? s_.alphabet().symbol(f.target()) : "?") + "@" +
                    std::to_string(f.level()) + "[";
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(f.edges[i].index + 1);
  }
  return out + "]";
}

std::string Diagram::describe(const TailPath& p) const {
  return describe(p.prefix) + (p.tail == Tail::Min ? "min" : "max");
}

}  // namespace substar
