#include "brw/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "brw/embed.hpp"
#include "brw/util.hpp"

namespace brw {

namespace {

// Sorted leaves with the pairwise meet-level matrix (diagonal = leaf level).
struct ViewData {
  TreeCoding::LeafView v;
  std::vector<std::vector<int>> ml;
};

ViewData make_view(const TreeCoding& c) {
  ViewData vd;
  vd.v = c.view();
  if (c.kind() == CodingKind::ultrametric) return vd;
  int n = static_cast<int>(vd.v.word.size());
  vd.ml.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    vd.ml[i][i] = vd.v.level[i];
    for (int j = i + 1; j < n; ++j)
      vd.ml[i][j] = vd.ml[j][i] = static_cast<int>(meet(vd.v.word[i], vd.v.word[j]).size());
  }
  return vd;
}

// Canonical key of the expansion pattern an embedding induces: the order
// pattern of the images, the image part labels where the parts are part of
// the expansion, and the rank pattern of the pairwise meet levels (which
// determines the level-comparison relation).
std::string expansion_key(CodingKind kind, const Tuple& f, const ViewData& vd) {
  int k = static_cast<int>(f.size());
  std::string key;
  key.reserve(2 * k + k * k / 2);
  std::vector<int> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < k; ++i)
    key += static_cast<char>(std::lower_bound(sorted.begin(), sorted.end(), f[i]) -
                             sorted.begin());
  if (kind == CodingKind::ultrametric) return key;
  if (kind == CodingKind::s2)
    for (int i = 0; i < k; ++i) key += static_cast<char>(vd.v.label[f[i]]);
  std::vector<int> vals;
  vals.reserve(k * (k + 1) / 2);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) vals.push_back(vd.ml[f[i]][f[j]]);
  std::vector<int> dist(vals);
  std::sort(dist.begin(), dist.end());
  dist.erase(std::unique(dist.begin(), dist.end()), dist.end());
  for (int v : vals)
    key += static_cast<char>(std::lower_bound(dist.begin(), dist.end(), v) - dist.begin());
  return key;
}

// Chain part labels of `a` in universe order, or empty when `a` carries no
// parts.
std::vector<int> part_labels(const Structure& a) {
  std::vector<int> lab(a.size(), -1);
  bool any = false;
  for (const auto& sym : a.language().symbols()) {
    if (sym.arity != 1 || sym.name.empty() || sym.name[0] != 'P') continue;
    int p = std::stoi(sym.name.substr(1));
    for (const auto& t : a.tuples(sym.name)) lab[t[0]] = p;
    any = true;
  }
  if (!any) return {};
  return lab;
}

// Visits embeddings of `a` into the coding's base emission. Chains (with or
// without part labels) enumerate increasing tuples directly; everything else
// goes through the generic backtracking enumerator.
template <typename Visit>
void for_each_base_embedding(const Structure& a, const TreeCoding& coding, const ViewData& vd,
                             Visit visit) {
  CodingKind kind = coding.kind();
  if (kind == CodingKind::devlin || kind == CodingKind::qn) {
    int k = a.size();
    int n = static_cast<int>(vd.v.word.size());
    if (k == 0 || k > n) {
      if (k == 0) visit(Tuple{});
      return;
    }
    std::vector<int> lab = part_labels(a);
    Tuple f(k);
    auto rec = [&](auto&& self, int pos, int from) -> void {
      if (pos == k) {
        visit(f);
        return;
      }
      for (int q = from; q <= n - (k - pos); ++q) {
        if (!lab.empty() && vd.v.label[q] != lab[pos]) continue;
        f[pos] = q;
        self(self, pos + 1, q + 1);
      }
    };
    rec(rec, 0, 0);
    return;
  }
  Structure base = coding.emit(Reduct::base);
  for_each_embedding(a, base, [&](const Tuple& f) {
    visit(f);
    return true;
  });
}

}  // namespace

std::vector<Structure> enumerate_expansions(const Structure& a, const TreeCoding& coding) {
  Structure full = coding.emit(Reduct::full);
  Structure base = coding.emit(Reduct::base);
  std::vector<Structure> out;
  std::unordered_set<std::string> seen;
  for_each_embedding(a, base, [&](const Tuple& f) {
    Structure pulled = full.induced(f);
    if (seen.insert(pulled.encode()).second) out.push_back(std::move(pulled));
    return true;
  });
  return out;
}

DegreeResult stabilized_degree(const Structure& a, TreeCoding coding,
                               const std::vector<int>& checkpoints, int window) {
  if (window < 1) throw std::invalid_argument("stabilized_degree: window must be >= 1");
  DegreeResult res;
  std::unordered_set<std::string> patterns;

  auto sample = [&](int rounds) {
    ViewData vd = make_view(coding);
    for_each_base_embedding(a, coding, vd, [&](const Tuple& f) {
      patterns.insert(expansion_key(coding.kind(), f, vd));
    });
    res.history.push_back(
        {rounds, coding.leaf_count(), static_cast<std::int64_t>(patterns.size())});
  };

  if (coding.kind() == CodingKind::ultrametric) {
    sample(0);
    res.degree = res.history.back().accumulated;
    res.stabilized = true;
    return res;
  }

  if (checkpoints.empty() || !std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw std::invalid_argument("stabilized_degree: checkpoints must be ascending and nonempty");

  int grown = coding.rounds();
  int flat = 0;
  std::int64_t last = -1;
  for (int target : checkpoints) {
    if (target > grown) {
      coding.grow(target - grown);
      grown = target;
    }
    sample(target);
    std::int64_t now = res.history.back().accumulated;
    flat = (now == last) ? flat + 1 : 0;
    last = now;
    log_debug("degree checkpoint rounds=%d universe=%d accumulated=%lld", target,
              coding.leaf_count(), static_cast<long long>(now));
    if (flat >= window) {
      res.stabilized = true;
      break;
    }
  }
  res.degree = last;
  return res;
}

std::int64_t set_degree(int n) {
  if (n < 0 || n > 7) throw std::invalid_argument("set_degree: n must be in [0, 7]");
  Structure a = make_edgeless(n);
  Structure big = make_edgeless(n + 2);
  std::unordered_set<std::string> orders;
  for_each_embedding(a, big, [&](const Tuple& f) {
    std::vector<int> sorted(f.begin(), f.end());
    std::sort(sorted.begin(), sorted.end());
    std::string key;
    for (int x : f)
      key += static_cast<char>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                               sorted.begin());
    orders.insert(key);
    return true;
  });
  return static_cast<std::int64_t>(orders.size());
}

ExpansionColoring expansion_coloring(const Structure& a, const TreeCoding& coding) {
  ExpansionColoring out;
  ViewData vd = make_view(coding);
  std::vector<std::string> keys;
  Structure base = coding.emit(Reduct::base);
  for_each_embedding(a, base, [&](const Tuple& f) {
    std::string key = expansion_key(coding.kind(), f, vd);
    auto it = std::find(keys.begin(), keys.end(), key);
    int color;
    if (it == keys.end()) {
      color = static_cast<int>(keys.size());
      keys.push_back(key);
    } else {
      color = static_cast<int>(it - keys.begin());
    }
    out.embeddings.push_back(f);
    out.color.push_back(color);
    return true;
  });
  out.key = std::move(keys);
  return out;
}

std::vector<int> geometric_checkpoints(int first, int last, double ratio) {
  if (first < 1 || last < first || ratio <= 1.0)
    throw std::invalid_argument("geometric_checkpoints: need 1 <= first <= last, ratio > 1");
  std::vector<int> out;
  double x = first;
  while (static_cast<int>(std::lround(x)) < last) {
    int r = static_cast<int>(std::lround(x));
    if (out.empty() || r > out.back()) out.push_back(r);
    x *= ratio;
  }
  out.push_back(last);
  return out;
}

}  // namespace brw
