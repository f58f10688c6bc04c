#include "brw/structure.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace brw {

Language::Language(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::unordered_set<std::string> seen;
  for (const Symbol& s : symbols_) {
    if (s.arity < 1) throw std::invalid_argument("language: arity of '" + s.name + "' must be >= 1");
    if (!seen.insert(s.name).second) throw std::invalid_argument("language: duplicate symbol '" + s.name + "'");
  }
}

int Language::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (symbols_[i].name == name) return i;
  return -1;
}

bool Language::extends(const Language& base) const {
  for (const Symbol& s : base.symbols()) {
    int i = index_of(s.name);
    if (i < 0 || symbols_[i].arity != s.arity) return false;
  }
  return true;
}

Structure::Structure(Language lang, int size) : lang_(std::move(lang)), size_(size) {
  if (size < 0) throw std::invalid_argument("structure: negative size");
  rels_.resize(lang_.size());
}

void Structure::add(int symbol_index, const Tuple& tuple) {
  const Symbol& sym = lang_.at(symbol_index);
  if (static_cast<int>(tuple.size()) != sym.arity)
    throw std::invalid_argument("structure: tuple arity mismatch for '" + sym.name + "'");
  for (int v : tuple)
    if (v < 0 || v >= size_) throw std::invalid_argument("structure: tuple entry outside universe");
  auto& vec = rels_[symbol_index];
  auto it = std::lower_bound(vec.begin(), vec.end(), tuple);
  if (it == vec.end() || *it != tuple) vec.insert(it, tuple);
}

void Structure::add(const std::string& symbol, const Tuple& tuple) {
  int i = lang_.index_of(symbol);
  if (i < 0) throw std::invalid_argument("structure: unknown symbol '" + symbol + "'");
  add(i, tuple);
}

bool Structure::holds(int symbol_index, const Tuple& tuple) const {
  const auto& vec = rels_.at(symbol_index);
  return std::binary_search(vec.begin(), vec.end(), tuple);
}

bool Structure::holds(const std::string& symbol, const Tuple& tuple) const {
  int i = lang_.index_of(symbol);
  if (i < 0) throw std::invalid_argument("structure: unknown symbol '" + symbol + "'");
  return holds(i, tuple);
}

const std::vector<Tuple>& Structure::tuples(const std::string& symbol) const {
  int i = lang_.index_of(symbol);
  if (i < 0) throw std::invalid_argument("structure: unknown symbol '" + symbol + "'");
  return tuples(i);
}

Structure Structure::reduct(const Language& sub) const {
  if (!lang_.extends(sub)) throw std::invalid_argument("reduct: target language is not a sub-language");
  Structure out(sub, size_);
  for (int i = 0; i < sub.size(); ++i) {
    int src = lang_.index_of(sub.at(i).name);
    out.rels_[i] = rels_[src];
  }
  return out;
}

Structure Structure::induced(const Tuple& map) const {
  const int k = static_cast<int>(map.size());
  std::vector<int> inverse(size_, -1);
  for (int i = 0; i < k; ++i) {
    int v = map[i];
    if (v < 0 || v >= size_) throw std::invalid_argument("induced: image outside universe");
    if (inverse[v] != -1) throw std::invalid_argument("induced: map is not injective");
    inverse[v] = i;
  }
  Structure out(lang_, k);
  Tuple pulled;
  for (int s = 0; s < lang_.size(); ++s) {
    for (const Tuple& t : rels_[s]) {
      bool inside = true;
      pulled.clear();
      for (int v : t) {
        if (inverse[v] < 0) {
          inside = false;
          break;
        }
        pulled.push_back(inverse[v]);
      }
      if (inside) out.add(s, pulled);
    }
  }
  return out;
}

std::string Structure::encode() const {
  std::string out;
  out += std::to_string(size_);
  for (int s = 0; s < lang_.size(); ++s) {
    out += '|';
    out += lang_.at(s).name;
    out += ':';
    for (const Tuple& t : rels_[s]) {
      out += '(';
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t[i]);
      }
      out += ')';
    }
  }
  return out;
}

nlohmann::json Structure::to_json() const {
  nlohmann::json j;
  j["language"] = nlohmann::json::array();
  for (const Symbol& s : lang_.symbols()) j["language"].push_back({{"name", s.name}, {"arity", s.arity}});
  j["size"] = size_;
  nlohmann::json rel = nlohmann::json::object();
  for (int s = 0; s < lang_.size(); ++s) rel[lang_.at(s).name] = rels_[s];
  j["relations"] = rel;
  return j;
}

Structure Structure::from_json(const nlohmann::json& j) {
  try {
    std::vector<Symbol> syms;
    for (const auto& s : j.at("language")) syms.push_back({s.at("name").get<std::string>(), s.at("arity").get<int>()});
    Structure out(Language(std::move(syms)), j.at("size").get<int>());
    if (j.contains("relations")) {
      for (const auto& [name, tuples] : j.at("relations").items()) {
        for (const auto& t : tuples) out.add(name, t.get<Tuple>());
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("structure: malformed JSON: ") + e.what());
  }
}

Structure make_chain(int n) {
  Structure s(Language({{"<", 2}}), n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.add(0, {i, j});
  return s;
}

Structure make_edgeless(int n) { return Structure(Language(std::vector<Symbol>{}), n); }

Structure make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Structure s(Language({{"E", 2}}), n);
  for (auto [a, b] : edges) {
    s.add(0, {a, b});
    s.add(0, {b, a});
  }
  return s;
}

Structure make_tournament(int n, const std::vector<std::pair<int, int>>& arcs) {
  Structure s(Language({{"E", 2}}), n);
  for (auto [a, b] : arcs) s.add(0, {a, b});
  return s;
}

}  // namespace brw
