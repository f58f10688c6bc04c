#include "brw/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace brw {

namespace {

void require_shape(const SemigroupTable& s, const char* who) {
  int n = s.size();
  if (n == 0) throw std::invalid_argument(std::string(who) + ": empty table");
  for (const auto& row : s.table) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string(who) + ": table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument(std::string(who) + ": entry outside the universe");
  }
}

void require_semigroup(const SemigroupTable& s, const char* who) {
  require_shape(s, who);
  AssociativityResult r = check_associativity(s);
  if (!r.associative) {
    const auto& w = *r.witness;
    throw std::invalid_argument(std::string(who) + ": table is not associative at (" +
                                std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                                std::to_string(w[2]) + ")");
  }
}

// Principal one-sided sets xS (or Sx); these are the candidate minimal
// ideals: each is itself an ideal, and every minimal ideal arises this way.
std::vector<std::vector<int>> principal_sets(const SemigroupTable& s, bool right) {
  int n = s.size();
  std::set<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    std::set<int> members;
    for (int y = 0; y < n; ++y) members.insert(right ? s.mul(x, y) : s.mul(y, x));
    out.emplace(members.begin(), members.end());
  }
  return {out.begin(), out.end()};
}

std::vector<std::vector<int>> minimal_of(std::vector<std::vector<int>> sets) {
  std::vector<std::vector<int>> out;
  for (const auto& candidate : sets) {
    bool minimal = true;
    for (const auto& other : sets) {
      if (other == candidate) continue;
      if (std::includes(candidate.begin(), candidate.end(), other.begin(), other.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(candidate);
  }
  return out;
}

std::string show_set(const std::vector<int>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

}  // namespace

AssociativityResult check_associativity(const SemigroupTable& s) {
  require_shape(s, "check_associativity");
  int n = s.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z)))
          return {false, std::array<int, 3>{x, y, z}};
  return {true, std::nullopt};
}

std::vector<int> idempotents(const SemigroupTable& s) {
  require_semigroup(s, "idempotents");
  std::vector<int> out;
  for (int x = 0; x < s.size(); ++x)
    if (s.mul(x, x) == x) out.push_back(x);
  if (out.empty())
    throw std::logic_error("idempotents: finite associative table without an idempotent (internal error)");
  return out;
}

std::vector<std::vector<int>> minimal_right_ideals(const SemigroupTable& s) {
  require_semigroup(s, "minimal_right_ideals");
  return minimal_of(principal_sets(s, true));
}

std::vector<std::vector<int>> minimal_left_ideals(const SemigroupTable& s) {
  require_semigroup(s, "minimal_left_ideals");
  return minimal_of(principal_sets(s, false));
}

bool SemifactsReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const SemifactClause& c) { return c.pass; });
}

SemifactsReport verify_semifacts(const SemigroupTable& s) {
  require_semigroup(s, "verify_semifacts");
  int n = s.size();
  SemifactsReport report;
  auto clause = [&report](const std::string& name, bool pass, std::string witness) {
    report.clauses.push_back({name, pass, pass ? std::string{} : std::move(witness)});
  };

  // 1. An idempotent exists.
  {
    std::vector<int> idem;
    for (int x = 0; x < n; ++x)
      if (s.mul(x, x) == x) idem.push_back(x);
    clause("idempotent-exists", !idem.empty(), "no x with x*x = x");

    // 2. An idempotent is a left identity on its principal right ideal.
    bool pass = true;
    std::string witness;
    for (int u : idem) {
      for (int y = 0; y < n && pass; ++y) {
        int x = s.mul(u, y);
        if (s.mul(u, x) != x) {
          pass = false;
          witness = "u=" + std::to_string(u) + ", x=" + std::to_string(x) + " in uS but ux=" +
                    std::to_string(s.mul(u, x));
        }
      }
      if (!pass) break;
    }
    clause("idempotent-left-identity", pass, witness);
  }

  std::vector<std::vector<int>> rights = minimal_of(principal_sets(s, true));
  std::vector<std::vector<int>> lefts = minimal_of(principal_sets(s, false));

  // 3. Every right ideal contains a minimal right ideal: exhaustive over
  // the right-closed nonempty subsets (fine at these sizes).
  {
    bool pass = true;
    std::string witness;
    for (unsigned mask = 1; mask < (1u << n) && pass; ++mask) {
      std::vector<int> ideal;
      for (int x = 0; x < n; ++x)
        if (mask & (1u << x)) ideal.push_back(x);
      bool closed = true;
      for (int x : ideal)
        for (int y = 0; y < n && closed; ++y)
          if (!(mask & (1u << s.mul(x, y)))) closed = false;
      if (!closed) continue;
      bool contains = std::any_of(rights.begin(), rights.end(), [&](const std::vector<int>& m) {
        return std::includes(ideal.begin(), ideal.end(), m.begin(), m.end());
      });
      if (!contains) {
        pass = false;
        witness = "right ideal " + show_set(ideal) + " contains no minimal right ideal";
      }
    }
    clause("right-ideal-contains-minimal", pass, witness);
  }

  // 4. Each minimal-right/minimal-left intersection is a group with exactly
  // one idempotent.
  {
    bool pass = true;
    std::string witness;
    for (const auto& m : rights) {
      for (const auto& l : lefts) {
        std::vector<int> inter;
        std::set_intersection(m.begin(), m.end(), l.begin(), l.end(), std::back_inserter(inter));
        std::string where = show_set(m) + " and " + show_set(l);
        if (inter.empty()) {
          pass = false;
          witness = "disjoint minimal ideals " + where;
          break;
        }
        std::set<int> members(inter.begin(), inter.end());
        std::vector<int> idem;
        for (int a : inter) {
          if (s.mul(a, a) == a) idem.push_back(a);
          for (int b : inter)
            if (pass && !members.count(s.mul(a, b))) {
              pass = false;
              witness = "intersection of " + where + " not closed at " + std::to_string(a) + "*" +
                        std::to_string(b);
            }
        }
        if (!pass) break;
        if (idem.size() != 1) {
          pass = false;
          witness = "intersection of " + where + " has " + std::to_string(idem.size()) + " idempotents";
          break;
        }
        int e = idem.front();
        for (int a : inter) {
          if (s.mul(e, a) != a || s.mul(a, e) != a) {
            pass = false;
            witness = "idempotent " + std::to_string(e) + " is not an identity on the intersection of " +
                      where;
            break;
          }
          bool inverse = std::any_of(inter.begin(), inter.end(), [&](int b) {
            return s.mul(a, b) == e && s.mul(b, a) == e;
          });
          if (!inverse) {
            pass = false;
            witness = std::to_string(a) + " has no inverse in the intersection of " + where;
            break;
          }
        }
        if (!pass) break;
      }
      if (!pass) break;
    }
    clause("intersection-groups", pass, witness);
  }

  // 5. Idempotent transfer: for minimal right ideals M, N and x in M there
  // is y in N with yx an idempotent inside N.
  {
    bool pass = true;
    std::string witness;
    for (const auto& m : rights) {
      for (const auto& other : rights) {
        for (int x : m) {
          bool found = std::any_of(other.begin(), other.end(), [&](int y) {
            int yx = s.mul(y, x);
            return s.mul(yx, yx) == yx &&
                   std::binary_search(other.begin(), other.end(), yx);
          });
          if (!found) {
            pass = false;
            witness = "x=" + std::to_string(x) + " in " + show_set(m) + " has no y in " +
                      show_set(other) + " with yx an idempotent there";
            break;
          }
        }
        if (!pass) break;
      }
      if (!pass) break;
    }
    clause("idempotent-transfer", pass, witness);
  }

  return report;
}

std::vector<SemigroupTable> enumerate_semigroups(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("enumerate_semigroups: size must be in [1, 4]");
  std::vector<SemigroupTable> out;
  SemigroupTable s;
  s.table.assign(n, std::vector<int>(n, -1));

  // Entries fill row-major; a triple is checkable as soon as the four
  // entries either side needs are all set, and any mismatch prunes the
  // whole subtree.
  auto filled = [&s](int x, int y) { return s.table[x][y] >= 0; };
  auto consistent = [&](void) {
    int size = s.size();
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) {
        if (!filled(x, y)) continue;
        for (int z = 0; z < size; ++z) {
          if (!filled(y, z)) continue;
          int xy = s.table[x][y];
          int yz = s.table[y][z];
          if (!filled(xy, z) || !filled(x, yz)) continue;
          if (s.table[xy][z] != s.table[x][yz]) return false;
        }
      }
    return true;
  };
  std::function<void(int)> fill = [&](int pos) {
    if (pos == n * n) {
      out.push_back(s);
      return;
    }
    int i = pos / n;
    int j = pos % n;
    for (int v = 0; v < n; ++v) {
      s.table[i][j] = v;
      if (consistent()) fill(pos + 1);
    }
    s.table[i][j] = -1;
  };
  fill(0);
  return out;
}

SemigroupTable sample_semigroup(int n, std::mt19937& rng) {
  static std::map<int, std::vector<SemigroupTable>> cache;
  static std::mutex guard;
  const std::vector<SemigroupTable>* all;
  {
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, enumerate_semigroups(n)).first;
    all = &it->second;
  }
  std::uniform_int_distribution<std::size_t> pick(0, all->size() - 1);
  return (*all)[pick(rng)];
}

nlohmann::json SemigroupTable::to_json() const { return nlohmann::json(table); }

SemigroupTable SemigroupTable::from_json(const nlohmann::json& j) {
  try {
    SemigroupTable s{j.get<std::vector<std::vector<int>>>()};
    require_shape(s, "semigroup");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("semigroup: malformed JSON: ") + e.what());
  }
}

}  // namespace brw
