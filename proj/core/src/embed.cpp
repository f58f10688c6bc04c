#include "brw/embed.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace brw {

namespace {

// One evaluation obligation discovered while extending a partial map: a tuple
// over the source universe whose entries are all <= v (and include v), with
// the truth value it must keep in the target.
struct Constraint {
  int symbol;
  Tuple tuple;
  bool expected;
};

// Constraints are grouped by the largest universe element in the tuple, so a
// partial map 0..v can be checked incrementally when v is assigned.
std::vector<std::vector<Constraint>> build_constraints(const Structure& a) {
  const int k = a.size();
  std::vector<std::vector<Constraint>> by_vertex(k);
  const Language& lang = a.language();
  for (int s = 0; s < lang.size(); ++s) {
    const int arity = lang.at(s).arity;
    Tuple t(arity, 0);
    // Enumerate all arity-tuples over {0..k-1}; file each under its max entry.
    while (true) {
      int mx = 0;
      for (int v : t) mx = std::max(mx, v);
      by_vertex[mx].push_back({s, t, a.holds(s, t)});
      int pos = arity - 1;
      while (pos >= 0 && t[pos] == k - 1) t[pos--] = 0;
      if (pos < 0) break;
      ++t[pos];
    }
  }
  return by_vertex;
}

bool backtrack(const Structure& a, const Structure& b,
               const std::vector<std::vector<Constraint>>& constraints,
               const std::vector<std::vector<int>>* candidates,
               const std::function<bool(const Tuple&)>& visit) {
  const int k = a.size();
  const int n = b.size();
  Tuple map(k, -1);
  Tuple image;
  std::vector<bool> used(n, false);

  std::function<bool(int)> go = [&](int v) -> bool {
    if (v == k) return visit(map);
    const std::vector<int>* pool = candidates ? &(*candidates)[v] : nullptr;
    const int limit = pool ? static_cast<int>(pool->size()) : n;
    for (int idx = 0; idx < limit; ++idx) {
      const int w = pool ? (*pool)[idx] : idx;
      if (used[w]) continue;
      map[v] = w;
      bool ok = true;
      for (const Constraint& c : constraints[v]) {
        image.clear();
        for (int u : c.tuple) image.push_back(map[u]);
        if (b.holds(c.symbol, image) != c.expected) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = true;
        if (!go(v + 1)) return false;
        used[w] = false;
      }
      map[v] = -1;
    }
    return true;
  };
  return go(0);
}

}  // namespace

bool is_embedding(const Structure& a, const Structure& b, const Tuple& map) {
  if (a.language() != b.language()) throw std::invalid_argument("is_embedding: language mismatch");
  if (static_cast<int>(map.size()) != a.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (int v : map) {
    if (v < 0 || v >= b.size() || used[v]) return false;
    used[v] = true;
  }
  const Language& lang = a.language();
  Tuple image;
  for (int s = 0; s < lang.size(); ++s) {
    const int arity = lang.at(s).arity;
    Tuple t(arity, 0);
    const int k = a.size();
    if (k == 0) continue;
    while (true) {
      image.clear();
      for (int u : t) image.push_back(map[u]);
      if (a.holds(s, t) != b.holds(s, image)) return false;
      int pos = arity - 1;
      while (pos >= 0 && t[pos] == k - 1) t[pos--] = 0;
      if (pos < 0) break;
      ++t[pos];
    }
  }
  return true;
}

bool for_each_embedding(const Structure& a, const Structure& b,
                        const std::function<bool(const Tuple&)>& visit) {
  if (a.language() != b.language()) throw std::invalid_argument("embeddings: language mismatch");
  if (a.size() == 0) return visit(Tuple{});
  if (a.size() > b.size()) return true;
  auto constraints = build_constraints(a);
  return backtrack(a, b, constraints, nullptr, visit);
}

std::vector<Tuple> enumerate_embeddings(const Structure& a, const Structure& b) {
  std::vector<Tuple> out;
  for_each_embedding(a, b, [&](const Tuple& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

Tuple compose(const Tuple& outer, const Tuple& inner) {
  Tuple out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer.at(inner[i]);
  return out;
}

namespace {

// Iterated neighborhood refinement; returns a stable vertex coloring that is
// invariant under isomorphism. Used only to prune the isomorphism search.
std::vector<std::uint64_t> refine_colors(const Structure& a) {
  const int n = a.size();
  std::vector<std::uint64_t> color(n, 0);
  const Language& lang = a.language();
  for (int round = 0; round < n + 2; ++round) {
    std::vector<std::vector<std::uint64_t>> sig(n);
    for (int v = 0; v < n; ++v) sig[v].push_back(color[v]);
    for (int s = 0; s < lang.size(); ++s) {
      for (const Tuple& t : a.tuples(s)) {
        std::uint64_t h = fnv64(&s, sizeof(s));
        for (int u : t) {
          h ^= color[u] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        for (std::size_t p = 0; p < t.size(); ++p) {
          std::uint64_t hp = h ^ (0xabcdef1234567ull * (p + 1));
          sig[t[p]].push_back(hp);
        }
      }
    }
    std::vector<std::uint64_t> next(n);
    for (int v = 0; v < n; ++v) {
      std::sort(sig[v].begin() + 1, sig[v].end());
      next[v] = fnv64(sig[v].data(), sig[v].size() * sizeof(std::uint64_t));
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

}  // namespace

std::optional<Tuple> find_isomorphism(const Structure& a, const Structure& b) {
  if (a.language() != b.language()) throw std::invalid_argument("isomorphism: language mismatch");
  if (a.size() != b.size()) return std::nullopt;
  for (int s = 0; s < a.language().size(); ++s)
    if (a.tuples(s).size() != b.tuples(s).size()) return std::nullopt;
  if (a.size() == 0) return Tuple{};

  auto ca = refine_colors(a);
  auto cb = refine_colors(b);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }
  std::vector<std::vector<int>> candidates(a.size());
  for (int v = 0; v < a.size(); ++v)
    for (int w = 0; w < b.size(); ++w)
      if (ca[v] == cb[w]) candidates[v].push_back(w);

  auto constraints = build_constraints(a);
  std::optional<Tuple> found;
  backtrack(a, b, constraints, &candidates, [&](const Tuple& f) {
    found = f;
    return false;
  });
  return found;
}

std::vector<Tuple> automorphisms(const Structure& a) { return enumerate_embeddings(a, a); }

namespace {

// Joint configuration of a pair of embeddings, with the two maps recorded as
// marker relations so that "same 2-type" is plain isomorphism.
Structure decorate_pair(const Structure& a, const Structure& ambient, const Tuple& f0, const Tuple& f1) {
  Tuple universe;
  universe.reserve(f0.size() + f1.size());
  universe.insert(universe.end(), f0.begin(), f0.end());
  universe.insert(universe.end(), f1.begin(), f1.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  Structure joint = ambient.induced(universe);
  std::vector<int> position(ambient.size(), -1);
  for (std::size_t i = 0; i < universe.size(); ++i) position[universe[i]] = static_cast<int>(i);

  std::string m0 = "_p0", m1 = "_p1";
  while (ambient.language().index_of(m0) >= 0) m0 = "_" + m0;
  while (ambient.language().index_of(m1) >= 0) m1 = "_" + m1;
  std::vector<Symbol> syms = ambient.language().symbols();
  syms.push_back({m0, a.size()});
  syms.push_back({m1, a.size()});

  Structure out(Language(std::move(syms)), joint.size());
  for (int s = 0; s < ambient.language().size(); ++s)
    for (const Tuple& t : joint.tuples(s)) out.add(s, t);
  Tuple t0, t1;
  for (int v : f0) t0.push_back(position[v]);
  for (int v : f1) t1.push_back(position[v]);
  out.add(ambient.language().size(), t0);
  out.add(ambient.language().size() + 1, t1);
  return out;
}

}  // namespace

TwoTypeSummary enumerate_2types(const Structure& a, const Structure& ambient) {
  if (a.language() != ambient.language()) throw std::invalid_argument("2-types: language mismatch");
  TwoTypeSummary out;
  auto embs = enumerate_embeddings(a, ambient);
  // Group candidate representatives by a cheap invariant before isomorphism
  // testing: the structure's literal encoding is too strict, but tuple counts
  // and size are isomorphism-invariant.
  std::map<std::pair<int, std::vector<std::size_t>>, std::vector<std::size_t>> buckets;
  for (const Tuple& f0 : embs) {
    for (const Tuple& f1 : embs) {
      ++out.pairs;
      Structure dec = decorate_pair(a, ambient, f0, f1);
      std::vector<std::size_t> counts;
      for (int s = 0; s < dec.language().size(); ++s) counts.push_back(dec.tuples(s).size());
      auto key = std::make_pair(dec.size(), std::move(counts));
      bool matched = false;
      for (std::size_t idx : buckets[key]) {
        if (find_isomorphism(out.types[idx].decorated, dec).has_value()) {
          ++out.counts[idx];
          matched = true;
          break;
        }
      }
      if (!matched) {
        buckets[key].push_back(out.types.size());
        out.types.push_back({std::move(dec)});
        out.counts.push_back(1);
      }
    }
  }
  return out;
}

TwoType pair_2type(const Structure& a, const Structure& ambient, const Tuple& f0, const Tuple& f1) {
  if (!is_embedding(a, ambient, f0) || !is_embedding(a, ambient, f1))
    throw std::invalid_argument("pair_2type: not an embedding");
  return {decorate_pair(a, ambient, f0, f1)};
}

bool same_2type(const TwoType& s, const TwoType& t) {
  if (s.decorated.language() != t.decorated.language()) return false;
  return find_isomorphism(s.decorated, t.decorated).has_value();
}

std::optional<int> roelcke_witness(const Structure& a,
                                   const std::vector<Structure>& exhaustion,
                                   int n_max) {
  if (exhaustion.empty()) throw std::invalid_argument("roelcke_witness: empty exhaustion");
  if (n_max < 0 || n_max >= static_cast<int>(exhaustion.size()))
    throw std::invalid_argument("roelcke_witness: n_max out of range");
  for (std::size_t i = 0; i + 1 < exhaustion.size(); ++i) {
    const Structure& lo = exhaustion[i];
    const Structure& hi = exhaustion[i + 1];
    if (lo.language() != hi.language())
      throw std::invalid_argument("roelcke_witness: exhaustion language mismatch");
    if (lo.size() > hi.size()) throw std::invalid_argument("roelcke_witness: exhaustion not increasing");
    Tuple incl(lo.size());
    for (int v = 0; v < lo.size(); ++v) incl[v] = v;
    if (hi.induced(incl) != lo)
      throw std::invalid_argument("roelcke_witness: not an inclusion chain at index " + std::to_string(i));
  }

  TwoTypeSummary target = enumerate_2types(a, exhaustion[n_max]);
  if (target.types.empty()) return std::nullopt;
  for (int n = 0; n <= n_max; ++n) {
    TwoTypeSummary here = enumerate_2types(a, exhaustion[n]);
    bool all = true;
    for (const TwoType& t : target.types) {
      bool found = false;
      for (const TwoType& h : here.types) {
        if (same_2type(t, h)) {
          found = true;
          break;
        }
      }
      if (!found) {
        all = false;
        break;
      }
    }
    if (all) return n;
  }
  return std::nullopt;
}

}  // namespace brw
