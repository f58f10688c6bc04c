#include "brw/diagram.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <stdexcept>

#include "brw/embed.hpp"

namespace brw {

namespace {

std::string pair_key(int m, int n) { return std::to_string(m) + "," + std::to_string(n); }

std::string show(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

int index_of_tuple(const std::vector<Tuple>& list, const Tuple& t) {
  auto it = std::find(list.begin(), list.end(), t);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

// Expansion symbol for label p at level m.
std::string level_symbol(int m, const std::string& label) {
  return "S" + std::to_string(m) + "_" + label;
}

}  // namespace

DiagramReport validate(const Diagram& d) {
  DiagramReport report;
  auto fail = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };
  int r = d.level_count();
  if (r == 0) {
    fail("no levels");
    return report;
  }
  if (d.levels[0].size() != 1)
    fail("level 0 must carry exactly one label, has " + std::to_string(d.levels[0].size()));

  // Shape: every pair m <= n needs a connector list and a |J_n| x |H m,n|
  // cell with entries in J_m.
  for (int m = 0; m < r; ++m) {
    for (int n = m; n < r; ++n) {
      auto c = d.connectors.find({m, n});
      if (c == d.connectors.end()) {
        fail("missing connector list (" + pair_key(m, n) + ")");
        continue;
      }
      auto cell = d.cells.find({m, n});
      if (cell == d.cells.end()) {
        fail("missing cell (" + pair_key(m, n) + ")");
        continue;
      }
      const auto& grid = cell->second;
      if (grid.size() != d.levels[n].size()) {
        fail("cell (" + pair_key(m, n) + ") has " + std::to_string(grid.size()) + " rows, expected " +
             std::to_string(d.levels[n].size()));
        continue;
      }
      bool sized = true;
      for (std::size_t q = 0; q < grid.size(); ++q) {
        if (grid[q].size() != c->second.size()) {
          fail("cell (" + pair_key(m, n) + ") row " + std::to_string(q) + " has " +
               std::to_string(grid[q].size()) + " columns, expected " + std::to_string(c->second.size()));
          sized = false;
          continue;
        }
        for (std::size_t f = 0; f < grid[q].size(); ++f)
          if (grid[q][f] < 0 || grid[q][f] >= static_cast<int>(d.levels[m].size())) {
            fail("cell (" + pair_key(m, n) + ") entry at (" + std::to_string(q) + "," + std::to_string(f) +
                 ") is outside level " + std::to_string(m));
            sized = false;
          }
      }
      if (!sized) continue;

      // Surjectivity of every column onto J_m.
      for (std::size_t f = 0; f < c->second.size(); ++f) {
        std::set<int> image;
        for (std::size_t q = 0; q < grid.size(); ++q) image.insert(grid[q][f]);
        if (image.size() != d.levels[m].size())
          fail("column (" + pair_key(m, n) + ") at connector " + std::to_string(f) +
               " is not onto level " + std::to_string(m));
      }
    }
  }
  if (!report.valid()) return report;  // coherence needs well-shaped cells

  // Coherence: connectors compose back into the system and the cells
  // commute with composition.
  for (int m = 0; m < r; ++m) {
    for (int n = m; n < r; ++n) {
      const auto& lower = d.connectors.at({m, n});
      for (int big = n; big < r; ++big) {
        const auto& upper = d.connectors.at({n, big});
        const auto& direct = d.connectors.at({m, big});
        for (std::size_t fi = 0; fi < lower.size(); ++fi) {
          for (std::size_t si = 0; si < upper.size(); ++si) {
            const Tuple& f = lower[fi];
            const Tuple& s = upper[si];
            bool composable = std::all_of(f.begin(), f.end(), [&s](int v) {
              return v >= 0 && v < static_cast<int>(s.size());
            });
            if (!composable) {
              fail("connector " + show(f) + " in (" + pair_key(m, n) + ") does not compose with " +
                   show(s) + " in (" + pair_key(n, big) + ")");
              continue;
            }
            Tuple t = compose(s, f);
            int ti = index_of_tuple(direct, t);
            if (ti < 0) {
              fail("composite " + show(t) + " of (" + pair_key(m, n) + ") and (" + pair_key(n, big) +
                   ") connectors is missing from (" + pair_key(m, big) + ")");
              continue;
            }
            for (std::size_t j = 0; j < d.levels[big].size(); ++j) {
              int through = d.cell(m, n, d.cell(n, big, static_cast<int>(j), static_cast<int>(si)),
                                   static_cast<int>(fi));
              int straight = d.cell(m, big, static_cast<int>(j), ti);
              if (through != straight)
                fail("cells disagree at levels (" + pair_key(m, n) + "," + std::to_string(big) +
                     "): label " + std::to_string(j) + ", connectors " + std::to_string(si) + " o " +
                     std::to_string(fi));
            }
          }
        }
      }
    }
  }
  return report;
}

std::optional<DiagramIso> isomorphic(const Diagram& d1, const Diagram& d2) {
  if (d1.level_count() != d2.level_count())
    throw std::invalid_argument("isomorphic: diagrams have different level counts");
  if (d1.connectors != d2.connectors)
    throw std::invalid_argument("isomorphic: diagrams have different connector systems");
  int r = d1.level_count();
  for (int n = 0; n < r; ++n)
    if (d1.levels[n].size() != d2.levels[n].size()) return std::nullopt;

  std::vector<std::vector<int>> sigma(r);

  // Signature of a label at level n through the already-fixed lower levels:
  // the run of cell images over every m < n and connector. Labels can only
  // map to labels with the same signature, which cuts the bijection search
  // to near-nothing in practice.
  auto signature = [&](const Diagram& d, int n, int q, bool push_through) {
    std::vector<int> sig;
    for (int m = 0; m < n; ++m) {
      const auto& grid = d.cells.at({m, n});
      for (std::size_t f = 0; f < grid[q].size(); ++f) {
        int v = grid[q][f];
        sig.push_back(push_through ? sigma[m][v] : v);
      }
    }
    return sig;
  };

  // Diagonal cells constrain labels within one level; everything across
  // levels is already encoded in the signatures.
  auto diagonal_ok = [&](int n) {
    const auto& g1 = d1.cells.at({n, n});
    const auto& g2 = d2.cells.at({n, n});
    for (std::size_t q = 0; q < g1.size(); ++q)
      for (std::size_t f = 0; f < g1[q].size(); ++f)
        if (sigma[n][g1[q][f]] != g2[sigma[n][q]][f]) return false;
    return true;
  };

  std::function<bool(int)> solve = [&](int n) -> bool {
    if (n == r) return true;
    int k = static_cast<int>(d1.levels[n].size());
    std::vector<std::vector<int>> candidates(k);
    {
      std::map<std::vector<int>, std::vector<int>> by_sig;
      for (int q2 = 0; q2 < k; ++q2) by_sig[signature(d2, n, q2, false)].push_back(q2);
      for (int q = 0; q < k; ++q) {
        auto it = by_sig.find(signature(d1, n, q, true));
        if (it == by_sig.end()) return false;
        candidates[q] = it->second;
      }
    }
    sigma[n].assign(k, -1);
    std::vector<char> used(k, 0);
    std::function<bool(int)> assign = [&](int q) -> bool {
      if (q == k) return diagonal_ok(n) && solve(n + 1);
      for (int q2 : candidates[q]) {
        if (used[q2]) continue;
        used[q2] = 1;
        sigma[n][q] = q2;
        if (assign(q + 1)) return true;
        used[q2] = 0;
        sigma[n][q] = -1;
      }
      return false;
    };
    if (!assign(0)) {
      sigma[n].clear();
      return false;
    }
    return true;
  };

  if (!solve(0)) return std::nullopt;
  return DiagramIso{sigma};
}

std::vector<std::vector<Structure>> expansion_from_diagram(const Diagram& d,
                                                           const std::vector<Structure>& exhaustion) {
  DiagramReport report = validate(d);
  if (!report.valid())
    throw std::invalid_argument("expansion_from_diagram: invalid diagram: " + report.violations.front());
  int r = d.level_count();
  if (static_cast<int>(exhaustion.size()) != r)
    throw std::invalid_argument("expansion_from_diagram: exhaustion length must match the level count");
  if (exhaustion[0].size() < 1)
    throw std::invalid_argument("expansion_from_diagram: exhaustion must start at a nonempty structure");
  for (int m = 0; m < r; ++m)
    for (int n = m; n < r; ++n)
      if (d.connectors.at({m, n}) != enumerate_embeddings(exhaustion[m], exhaustion[n]))
        throw std::invalid_argument("expansion_from_diagram: connectors at (" + pair_key(m, n) +
                                    ") are not the embeddings of the exhaustion");

  // One new symbol per label: S_m^p has the arity of the level-m structure.
  std::vector<Symbol> symbols = exhaustion[0].language().symbols();
  for (int m = 0; m < r; ++m)
    for (const std::string& label : d.levels[m])
      symbols.push_back({level_symbol(m, label), exhaustion[m].size()});
  Language expanded{symbols};

  std::vector<std::vector<Structure>> out(r);
  for (int n = 0; n < r; ++n) {
    for (std::size_t q = 0; q < d.levels[n].size(); ++q) {
      Structure a(expanded, exhaustion[n].size());
      const Language& base = exhaustion[n].language();
      for (int s = 0; s < base.size(); ++s)
        for (const Tuple& t : exhaustion[n].tuples(base.at(s).name)) a.add(base.at(s).name, t);
      // A connector tuple satisfies exactly the symbol its cell points at.
      for (int m = 0; m <= n; ++m) {
        const auto& conns = d.connectors.at({m, n});
        for (std::size_t f = 0; f < conns.size(); ++f) {
          int p = d.cell(m, n, static_cast<int>(q), static_cast<int>(f));
          a.add(level_symbol(m, d.levels[m][p]), conns[f]);
        }
      }
      out[n].push_back(std::move(a));
    }
  }
  return out;
}

Diagram diagram_of_expansion(const std::vector<std::vector<Structure>>& expansions,
                             const std::vector<Structure>& exhaustion) {
  int r = static_cast<int>(expansions.size());
  if (static_cast<int>(exhaustion.size()) != r)
    throw std::invalid_argument("diagram_of_expansion: exhaustion length must match the level count");
  Diagram d;
  d.levels.resize(r);
  for (int n = 0; n < r; ++n) {
    if (expansions[n].empty())
      throw std::invalid_argument("diagram_of_expansion: level " + std::to_string(n) + " is empty");
    for (std::size_t q = 0; q < expansions[n].size(); ++q) d.levels[n].push_back("q" + std::to_string(q));
  }
  for (int m = 0; m < r; ++m) {
    for (int n = m; n < r; ++n) {
      std::vector<Tuple> conns = enumerate_embeddings(exhaustion[m], exhaustion[n]);
      std::vector<std::vector<int>> grid(expansions[n].size(), std::vector<int>(conns.size(), -1));
      for (std::size_t q = 0; q < expansions[n].size(); ++q) {
        for (std::size_t f = 0; f < conns.size(); ++f) {
          Structure pulled = expansions[n][q].induced(conns[f]);
          auto it = std::find(expansions[m].begin(), expansions[m].end(), pulled);
          if (it == expansions[m].end())
            throw std::invalid_argument("diagram_of_expansion: the restriction of expansion " +
                                        std::to_string(q) + " at level " + std::to_string(n) +
                                        " along connector " + show(conns[f]) +
                                        " is missing from level " + std::to_string(m));
          grid[q][f] = static_cast<int>(it - expansions[m].begin());
        }
      }
      d.connectors[{m, n}] = std::move(conns);
      d.cells[{m, n}] = std::move(grid);
    }
  }
  return d;
}

Diagram diagram_from_colorings(const std::vector<Structure>& shapes,
                               const std::vector<Coloring>& colorings) {
  if (shapes.size() != colorings.size())
    throw std::invalid_argument("diagram_from_colorings: one shape per coloring required");
  int r = static_cast<int>(shapes.size());
  Diagram d;
  d.levels.resize(r);
  for (int n = 0; n < r; ++n) d.levels[n] = colorings[n].label;
  for (int m = 0; m < r; ++m) {
    for (int n = m; n < r; ++n) {
      std::vector<Tuple> conns = enumerate_embeddings(shapes[m], shapes[n]);
      d.cells[{m, n}] = coloring_diagram(colorings[m], colorings[n], conns).cell;
      d.connectors[{m, n}] = std::move(conns);
    }
  }
  return d;
}

std::vector<Structure> chain_exhaustion(const std::vector<int>& sizes) {
  std::vector<Structure> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || (i > 0 && sizes[i] < sizes[i - 1]))
      throw std::invalid_argument("chain_exhaustion: sizes must be positive and non-decreasing");
    out.push_back(make_chain(sizes[i]));
  }
  return out;
}

Diagram random_diagram(std::mt19937& rng) {
  int r = 1 + static_cast<int>(rng() % 3);
  std::vector<int> sizes = {1};
  for (int n = 1; n < r; ++n) {
    int step = 1 + static_cast<int>(rng() % 2);
    sizes.push_back(std::min(sizes.back() + step, 4));
  }
  std::vector<Structure> chain = chain_exhaustion(sizes);

  Diagram d;
  d.levels.resize(r);
  d.levels[0] = {"q0_0"};
  std::vector<int> counts = {1};
  for (int n = 1; n < r; ++n) {
    // Later levels are at least as rich, so surjections exist downward.
    int k = counts.back() + static_cast<int>(rng() % (4 - counts.back() + 1));
    counts.push_back(k);
    for (int i = 0; i < k; ++i) d.levels[n].push_back("q" + std::to_string(n) + "_" + std::to_string(i));
  }

  for (int m = 0; m < r; ++m) {
    for (int n = m; n < r; ++n) {
      std::vector<Tuple> conns = enumerate_embeddings(chain[m], chain[n]);
      std::vector<std::vector<int>> grid(counts[n], std::vector<int>(conns.size(), 0));
      if (m == n) {
        // Strictly increasing chain sizes leave only the identity embedding.
        for (int q = 0; q < counts[n]; ++q)
          for (std::size_t f = 0; f < conns.size(); ++f) grid[q][f] = q;
      } else if (m > 0) {
        // Per-connector random surjections; every other cell is forced, so
        // the diagram laws hold however these are drawn.
        for (std::size_t f = 0; f < conns.size(); ++f) {
          while (true) {
            std::set<int> image;
            for (int q = 0; q < counts[n]; ++q) {
              grid[q][f] = static_cast<int>(rng() % counts[m]);
              image.insert(grid[q][f]);
            }
            if (static_cast<int>(image.size()) == counts[m]) break;
          }
        }
      }
      d.connectors[{m, n}] = std::move(conns);
      d.cells[{m, n}] = std::move(grid);
    }
  }
  return d;
}

std::optional<JepWitness> jep_check(const Diagram& d, int m, int p, int q, int n_max) {
  int r = d.level_count();
  if (m < 0 || m >= r) throw std::invalid_argument("jep_check: level out of range");
  int k = static_cast<int>(d.levels[m].size());
  if (p < 0 || p >= k || q < 0 || q >= k) throw std::invalid_argument("jep_check: label out of range");
  for (int n = m; n < r && n <= n_max; ++n) {
    const auto& conns = d.connectors.at({m, n});
    if (conns.empty()) continue;
    Tuple inclusion(conns[0].size());
    std::iota(inclusion.begin(), inclusion.end(), 0);
    int ii = index_of_tuple(conns, inclusion);
    if (ii < 0) continue;
    for (std::size_t q2 = 0; q2 < d.levels[n].size(); ++q2) {
      if (d.cell(m, n, static_cast<int>(q2), ii) != p) continue;
      for (std::size_t f = 0; f < conns.size(); ++f)
        if (d.cell(m, n, static_cast<int>(q2), static_cast<int>(f)) == q)
          return JepWitness{n, static_cast<int>(q2), static_cast<int>(f)};
    }
  }
  return std::nullopt;
}

std::optional<ApWitness> ap_check(const Diagram& d, int m, int n, int p, int q, int f_p, int f_q,
                                  int n_max) {
  int r = d.level_count();
  if (m < 0 || n < m || n >= r) throw std::invalid_argument("ap_check: levels out of range");
  int k = static_cast<int>(d.levels[n].size());
  if (p < 0 || p >= k || q < 0 || q >= k) throw std::invalid_argument("ap_check: label out of range");
  int fcount = static_cast<int>(d.connectors.at({m, n}).size());
  if (f_p < 0 || f_p >= fcount || f_q < 0 || f_q >= fcount)
    throw std::invalid_argument("ap_check: connector out of range");
  if (d.cell(m, n, p, f_p) != d.cell(m, n, q, f_q))
    throw std::invalid_argument("ap_check: the two restrictions disagree, nothing to amalgamate over");
  for (int big = n; big < r && big <= n_max; ++big) {
    const auto& conns = d.connectors.at({n, big});
    for (std::size_t q2 = 0; q2 < d.levels[big].size(); ++q2)
      for (std::size_t sp = 0; sp < conns.size(); ++sp) {
        if (d.cell(n, big, static_cast<int>(q2), static_cast<int>(sp)) != p) continue;
        for (std::size_t sq = 0; sq < conns.size(); ++sq)
          if (d.cell(n, big, static_cast<int>(q2), static_cast<int>(sq)) == q)
            return ApWitness{big, static_cast<int>(q2), static_cast<int>(sp), static_cast<int>(sq)};
      }
  }
  return std::nullopt;
}

nlohmann::json Diagram::to_json() const {
  nlohmann::json j;
  j["levels"] = levels;
  nlohmann::json conns = nlohmann::json::object();
  for (const auto& [key, list] : connectors) conns[pair_key(key.first, key.second)] = list;
  j["connectors"] = conns;
  nlohmann::json cell_obj = nlohmann::json::object();
  for (const auto& [key, grid] : cells) {
    nlohmann::json one = nlohmann::json::object();
    for (std::size_t q = 0; q < grid.size(); ++q)
      for (std::size_t f = 0; f < grid[q].size(); ++f)
        one[levels[key.second][q] + "|f" + std::to_string(f)] = levels[key.first][grid[q][f]];
    cell_obj[pair_key(key.first, key.second)] = one;
  }
  j["cells"] = cell_obj;
  return j;
}

Diagram Diagram::from_json(const nlohmann::json& j) {
  try {
    Diagram d;
    d.levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
    auto parse_pair = [](const std::string& key) {
      auto comma = key.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("diagram: bad level pair '" + key + "'");
      return std::pair<int, int>{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    };
    auto label_index = [&d](int level, const std::string& label) {
      if (level < 0 || level >= d.level_count())
        throw std::invalid_argument("diagram: level out of range in cells");
      const auto& labels = d.levels[level];
      auto it = std::find(labels.begin(), labels.end(), label);
      if (it == labels.end())
        throw std::invalid_argument("diagram: unknown label '" + label + "' at level " +
                                    std::to_string(level));
      return static_cast<int>(it - labels.begin());
    };
    for (const auto& [key, list] : j.at("connectors").items())
      d.connectors[parse_pair(key)] = list.get<std::vector<Tuple>>();
    for (const auto& [key, entries] : j.at("cells").items()) {
      auto mn = parse_pair(key);
      if (mn.second < 0 || mn.second >= d.level_count())
        throw std::invalid_argument("diagram: cell level out of range in '" + key + "'");
      auto conn = d.connectors.find(mn);
      if (conn == d.connectors.end())
        throw std::invalid_argument("diagram: cell '" + key + "' has no connector list");
      std::vector<std::vector<int>> grid(d.levels[mn.second].size(),
                                         std::vector<int>(conn->second.size(), -1));
      for (const auto& [cell_key, value] : entries.items()) {
        auto bar = cell_key.rfind("|f");
        if (bar == std::string::npos)
          throw std::invalid_argument("diagram: bad cell key '" + cell_key + "'");
        int q = label_index(mn.second, cell_key.substr(0, bar));
        int f = std::stoi(cell_key.substr(bar + 2));
        if (f < 0 || f >= static_cast<int>(conn->second.size()))
          throw std::invalid_argument("diagram: connector index out of range in '" + cell_key + "'");
        grid[q][f] = label_index(mn.first, value.get<std::string>());
      }
      for (std::size_t qi = 0; qi < grid.size(); ++qi)
        for (std::size_t fi = 0; fi < grid[qi].size(); ++fi)
          if (grid[qi][fi] < 0)
            throw std::invalid_argument("diagram: cell '" + key + "' is missing the entry for '" +
                                        d.levels[mn.second][qi] + "|f" + std::to_string(fi) + "'");
      d.cells[mn] = std::move(grid);
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("diagram: malformed JSON: ") + e.what());
  }
}

}  // namespace brw
