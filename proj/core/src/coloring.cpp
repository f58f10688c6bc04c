#include "brw/coloring.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <string>

#include "brw/degrees.hpp"
#include "brw/embed.hpp"

namespace brw {

namespace {

std::string tuple_key(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t[i]);
  }
  return out;
}

// Index of each domain tuple, for composition lookups.
std::map<Tuple, int> domain_index(const Coloring& c) {
  std::map<Tuple, int> idx;
  for (std::size_t i = 0; i < c.domain.size(); ++i) idx.emplace(c.domain[i], static_cast<int>(i));
  return idx;
}

void require_same_domain(const Coloring& gamma, const Coloring& delta, const char* who) {
  if (gamma.domain != delta.domain)
    throw std::invalid_argument(std::string(who) + ": colorings live on different embedding sets");
}

int lookup(const std::map<Tuple, int>& idx, const Tuple& t, const char* who) {
  auto it = idx.find(t);
  if (it == idx.end())
    throw std::invalid_argument(std::string(who) + ": composed embedding " + tuple_key(t) +
                                " is outside the coarse coloring's domain");
  return it->second;
}

}  // namespace

Coloring make_coloring(std::vector<Tuple> domain, const std::vector<std::string>& labels) {
  if (labels.size() != domain.size())
    throw std::invalid_argument("make_coloring: one label per embedding required");
  Coloring c;
  c.domain = std::move(domain);
  c.color.reserve(c.domain.size());
  std::map<std::string, int> seen;
  for (const std::string& l : labels) {
    auto [it, fresh] = seen.emplace(l, static_cast<int>(c.label.size()));
    if (fresh) c.label.push_back(l);
    c.color.push_back(it->second);
  }
  return c;
}

Coloring expansion_coloring_of(const Structure& a, const TreeCoding& coding) {
  ExpansionColoring raw = expansion_coloring(a, coding);
  Coloring c;
  c.domain = std::move(raw.embeddings);
  c.color = std::move(raw.color);
  c.label.reserve(raw.key.size());
  for (std::size_t i = 0; i < raw.key.size(); ++i) c.label.push_back("p" + std::to_string(i));
  return c;
}

bool refines(const Coloring& gamma, const Coloring& delta) {
  require_same_domain(gamma, delta, "refines");
  // delta refines gamma when each delta class lands in one gamma class.
  std::vector<int> image(delta.label.size(), -1);
  for (std::size_t i = 0; i < delta.color.size(); ++i) {
    int& g = image[delta.color[i]];
    if (g == -1)
      g = gamma.color[i];
    else if (g != gamma.color[i])
      return false;
  }
  return true;
}

bool equivalent(const Coloring& gamma, const Coloring& delta) {
  return refines(gamma, delta) && refines(delta, gamma);
}

Coloring product(const Coloring& gamma, const Coloring& delta) {
  require_same_domain(gamma, delta, "product");
  Coloring out;
  out.domain = gamma.domain;
  out.color.reserve(out.domain.size());
  std::map<std::pair<int, int>, int> seen;
  for (std::size_t i = 0; i < out.domain.size(); ++i) {
    std::pair<int, int> cls{gamma.color[i], delta.color[i]};
    auto [it, fresh] = seen.emplace(cls, static_cast<int>(out.label.size()));
    if (fresh) out.label.push_back(gamma.label[cls.first] + "&" + delta.label[cls.second]);
    out.color.push_back(it->second);
  }
  return out;
}

bool strongly_refines(const Coloring& gamma_m, const Coloring& delta_n,
                      const std::vector<Tuple>& connectors) {
  std::map<Tuple, int> idx = domain_index(gamma_m);
  for (const Tuple& f : connectors) {
    // Pullback along f: the class of each delta color must be gamma-constant.
    std::vector<int> image(delta_n.label.size(), -1);
    for (std::size_t i = 0; i < delta_n.domain.size(); ++i) {
      int g = gamma_m.color[lookup(idx, compose(delta_n.domain[i], f), "strongly_refines")];
      int& slot = image[delta_n.color[i]];
      if (slot == -1)
        slot = g;
      else if (slot != g)
        return false;
    }
  }
  return true;
}

ColoringDiagramCell coloring_diagram(const Coloring& gamma_m, const Coloring& delta_n,
                                     const std::vector<Tuple>& connectors) {
  std::map<Tuple, int> idx = domain_index(gamma_m);
  ColoringDiagramCell out;
  out.cell.assign(delta_n.label.size(), std::vector<int>(connectors.size(), -1));
  std::vector<int> witness(delta_n.label.size(), -1);  // first embedding per delta class
  for (std::size_t fi = 0; fi < connectors.size(); ++fi) {
    std::fill(witness.begin(), witness.end(), -1);
    for (std::size_t i = 0; i < delta_n.domain.size(); ++i) {
      int j = delta_n.color[i];
      int g = gamma_m.color[lookup(idx, compose(delta_n.domain[i], connectors[fi]), "coloring_diagram")];
      if (out.cell[j][fi] == -1) {
        out.cell[j][fi] = g;
        witness[j] = static_cast<int>(i);
      } else if (out.cell[j][fi] != g) {
        throw std::invalid_argument(
            "coloring_diagram: not strongly refining: embeddings " + tuple_key(delta_n.domain[witness[j]]) +
            " and " + tuple_key(delta_n.domain[i]) + " share fine color '" + delta_n.label[j] +
            "' but disagree through connector " + tuple_key(connectors[fi]));
      }
    }
  }
  return out;
}

PersistenceResult persistence_check(const Coloring& gamma_m, const std::vector<Tuple>& copies,
                                    const std::vector<Tuple>& connectors) {
  std::map<Tuple, int> idx = domain_index(gamma_m);
  PersistenceResult r;
  for (std::size_t s = 0; s < copies.size(); ++s) {
    std::vector<char> hit(gamma_m.label.size(), 0);
    for (const Tuple& f : connectors)
      hit[gamma_m.color[lookup(idx, compose(copies[s], f), "persistence_check")]] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
      r.persistent = false;
      r.failing_copy = static_cast<int>(s);
      return r;
    }
  }
  r.persistent = true;
  return r;
}

std::optional<int> refinement_search(const Coloring& gamma, const Coloring& delta,
                                     const std::vector<Tuple>& copies,
                                     const std::vector<Tuple>& connectors) {
  std::map<Tuple, int> gidx = domain_index(gamma);
  std::map<Tuple, int> didx = domain_index(delta);
  for (std::size_t s = 0; s < copies.size(); ++s) {
    // Pull both colorings back along the copy and test refinement there.
    // Only constancy of gamma on delta classes matters, so work directly on
    // the composite colors.
    std::map<int, int> image;  // delta color -> gamma color
    bool refined = true;
    for (const Tuple& f : connectors) {
      Tuple sf = compose(copies[s], f);
      int d = delta.color[lookup(didx, sf, "refinement_search")];
      int g = gamma.color[lookup(gidx, sf, "refinement_search")];
      auto [it, fresh] = image.emplace(d, g);
      if (!fresh && it->second != g) {
        refined = false;
        break;
      }
    }
    if (refined) return static_cast<int>(s);
  }
  return std::nullopt;  // not found at this depth; says nothing about deeper copies
}

InducedColoring induced_coloring(const Coloring& gamma_big, const Structure& b,
                                 const Structure& ambient, const Tuple& i_b) {
  std::vector<Tuple> all = enumerate_embeddings(b, ambient);
  std::map<Tuple, int> pos;
  for (std::size_t i = 0; i < all.size(); ++i) pos.emplace(all[i], static_cast<int>(i));

  // Color sets S_f, via one pass over the big coloring's domain.
  std::vector<std::vector<int>> sets(all.size());
  for (std::size_t i = 0; i < gamma_big.domain.size(); ++i) {
    Tuple f = compose(gamma_big.domain[i], i_b);
    auto it = pos.find(f);
    if (it == pos.end())
      throw std::invalid_argument("induced_coloring: restricted embedding " + tuple_key(f) +
                                  " is not an embedding of the small structure");
    std::vector<int>& s = sets[it->second];
    if (std::find(s.begin(), s.end(), gamma_big.color[i]) == s.end()) s.push_back(gamma_big.color[i]);
  }

  // Join embeddings whose color sets meet: union everything sharing a color.
  std::vector<int> parent(all.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> carrier(gamma_big.label.size(), -1);  // color -> one embedding seeing it
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (int c : sets[i]) {
      if (carrier[c] == -1)
        carrier[c] = static_cast<int>(i);
      else
        parent[find(static_cast<int>(i))] = find(carrier[c]);
    }
  }

  InducedColoring out;
  std::map<int, int> comp;  // component root -> induced color
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (sets[i].empty()) {
      out.excluded.push_back(all[i]);
      continue;
    }
    auto [it, fresh] = comp.emplace(find(static_cast<int>(i)), static_cast<int>(out.coloring.label.size()));
    if (fresh) out.coloring.label.push_back("c" + std::to_string(it->second));
    out.coloring.domain.push_back(all[i]);
    out.coloring.color.push_back(it->second);
  }
  return out;
}

nlohmann::json Coloring::to_json() const {
  nlohmann::json j;
  j["domain"] = domain;
  nlohmann::json colors = nlohmann::json::object();
  for (std::size_t i = 0; i < domain.size(); ++i) colors[tuple_key(domain[i])] = label[color[i]];
  j["colors"] = colors;
  return j;
}

Coloring Coloring::from_json(const nlohmann::json& j) {
  try {
    std::vector<Tuple> domain = j.at("domain").get<std::vector<Tuple>>();
    const nlohmann::json& colors = j.at("colors");
    std::vector<std::string> labels;
    labels.reserve(domain.size());
    for (const Tuple& t : domain) labels.push_back(colors.at(tuple_key(t)).get<std::string>());
    return make_coloring(std::move(domain), labels);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coloring: malformed JSON: ") + e.what());
  }
}

}  // namespace brw
