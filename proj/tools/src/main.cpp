// brw — command-line front end for the coding/degree/coloring/diagram/
// semigroup library. Every run emits a manifest (subcommand, argv, seed,
// input/output hashes, wall time) so results can be reproduced and compared
// byte for byte. Artifacts go to --out, or to stdout when --out is absent;
// the manifest then goes to <out>.manifest.json, or to stderr.
//
// Exit codes: 0 success, 1 usage error, 2 validation/acceptance failure.
// BRW_LOG=info|debug turns on progress notes from the library (stderr).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "brw/acceptance.hpp"
#include "brw/coding.hpp"
#include "brw/coloring.hpp"
#include "brw/degrees.hpp"
#include "brw/diagram.hpp"
#include "brw/embed.hpp"
#include "brw/oracle.hpp"
#include "brw/semigroup.hpp"
#include "brw/structure.hpp"
#include "brw/util.hpp"

namespace {

using nlohmann::json;

// Flag combinations the parser cannot rule out; reported as usage (exit 1)
// rather than validation failure (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunContext {
  std::string subcommand;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  int threads = 1;
  double budget_seconds = 0.0;  // 0 = unlimited
  std::string out;              // empty = stdout
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::map<std::string, std::string> input_hashes;
  std::map<std::string, std::string> output_hashes;
};

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double elapsed_seconds(const RunContext& ctx) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
}

void check_budget(const RunContext& ctx, const std::string& where) {
  if (ctx.budget_seconds > 0 && elapsed_seconds(ctx) > ctx.budget_seconds)
    throw BudgetExceeded("budget of " + std::to_string(ctx.budget_seconds) +
                         "s exceeded during " + where);
}

std::string slurp(RunContext& ctx, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  ctx.input_hashes[path] = hex64(brw::fnv64(bytes));
  return bytes;
}

json load_json(RunContext& ctx, const std::string& path) {
  std::string bytes = slurp(ctx, path);
  try {
    return json::parse(bytes);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Writes the artifact and records its hash. Exactly one artifact per run.
void deliver(RunContext& ctx, const std::string& bytes) {
  if (ctx.out.empty()) {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    std::fflush(stdout);
    ctx.output_hashes["stdout"] = hex64(brw::fnv64(bytes));
    return;
  }
  std::ofstream f(ctx.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + ctx.out);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  ctx.output_hashes[ctx.out] = hex64(brw::fnv64(bytes));
}

void emit_manifest(const RunContext& ctx) {
  json m{{"subcommand", ctx.subcommand},
         {"argv", ctx.argv},
         {"seed", ctx.seed},
         {"inputs", ctx.input_hashes},
         {"outputs", ctx.output_hashes},
         {"wall_ms",
          static_cast<std::int64_t>(std::llround(elapsed_seconds(ctx) * 1000.0))}};
  std::string text = m.dump(2) + "\n";
  if (ctx.out.empty()) {
    std::fputs(text.c_str(), stderr);
    return;
  }
  std::ofstream f(ctx.out + ".manifest.json", std::ios::binary);
  if (f) f << text;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// coding builders shared by `coding grow`, `degrees`, and the `color` family.

struct CodingOpts {
  std::string kind = "devlin";
  int rounds = 30;
  int parts = 2;
  int height = 2;
  int branch = 2;
};

void add_coding_flags(CLI::App* cmd, CodingOpts& o) {
  cmd->add_option("--kind,--family", o.kind, "coding kind")
      ->check(CLI::IsMember({"devlin", "rado", "qn", "s2", "ultrametric"}))
      ->required();
  cmd->add_option("--rounds", o.rounds, "growth rounds (one leaf per round)");
  cmd->add_option("--parts", o.parts, "part count for the qn kind");
  cmd->add_option("--height", o.height, "level count for the ultrametric kind");
  cmd->add_option("--branch", o.branch, "branching for the ultrametric kind");
}

brw::TreeCoding build_coding(const CodingOpts& o) {
  if (o.rounds < 0) throw UsageError("--rounds must be >= 0");
  if (o.kind == "devlin") return brw::grow_devlin(o.rounds);
  if (o.kind == "rado") return brw::grow_rado(o.rounds);
  if (o.kind == "qn") return brw::build_qn(o.parts, o.rounds);
  if (o.kind == "s2") return brw::build_s2(o.rounds);
  return brw::build_ultrametric(o.height, o.branch);
}

// A k-chain in the base language of the coding kind: plain for devlin, part-0
// labeled for qn. Other kinds have no canonical k-th shape.
brw::Structure chain_shape(const std::string& kind, int k, int parts) {
  if (k < 1) throw UsageError("--k/--kmax must be >= 1");
  if (kind == "devlin") return brw::make_chain(k);
  if (kind == "qn") {
    std::vector<brw::Symbol> syms{{"<", 2}};
    for (int p = 0; p < parts; ++p) syms.push_back({"P" + std::to_string(p), 1});
    brw::Structure s(brw::Language(syms), k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) s.add("<", {i, j});
    for (int i = 0; i < k; ++i) s.add("P0", {i});
    return s;
  }
  throw UsageError("chain shapes need --kind devlin or qn; pass --shape for other kinds");
}

brw::Tuple parse_tuple(const std::string& text) {
  brw::Tuple t;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      t.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + text + "' as a comma-separated tuple");
    }
  }
  return t;
}

// Label arguments for diagram jep/ap: an exact label string, or an index.
int resolve_label(const brw::Diagram& d, int level, const std::string& text) {
  if (level < 0 || level >= d.level_count())
    throw std::invalid_argument("level " + std::to_string(level) + " out of range");
  const auto& labels = d.levels[level];
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == text) return static_cast<int>(i);
  try {
    std::size_t pos = 0;
    int idx = std::stoi(text, &pos);
    if (pos == text.size() && idx >= 0 && idx < static_cast<int>(labels.size())) return idx;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("no label '" + text + "' at level " + std::to_string(level));
}

// ---------------------------------------------------------------------------
// Subcommand handlers. Each returns the process exit code.

struct GrowOpts {
  CodingOpts coding;
  std::string reduct = "full";
  std::string format = "json";
  bool rounds_given = false;
};

int cmd_coding_grow(RunContext& ctx, const GrowOpts& o) {
  if (o.coding.kind == "ultrametric" && o.rounds_given)
    throw UsageError("ultrametric codings are built complete; use --height/--branch, not --rounds");
  brw::TreeCoding coding = build_coding(o.coding);
  if (o.format == "dot") {
    deliver(ctx, coding.dot());
    return 0;
  }
  if (o.format == "csv") {
    brw::TreeCoding::LeafView v = coding.view();
    std::string csv = "index,word,level,label\n";
    for (std::size_t i = 0; i < v.word.size(); ++i)
      csv += std::to_string(i) + "," + v.word[i] + "," + std::to_string(v.level[i]) + "," +
             std::to_string(v.label[i]) + "\n";
    deliver(ctx, csv);
    return 0;
  }
  brw::Reduct reduct = o.reduct == "base" ? brw::Reduct::base : brw::Reduct::full;
  deliver(ctx, dump_json(coding.emit(reduct).to_json()));
  return 0;
}

struct DegreesOpts {
  CodingOpts coding;
  int kmax = 0;
  std::string shape_file;
  int first = 60, last = 120, window = 2;
  double ratio = 1.5;
};

int cmd_degrees(RunContext& ctx, const DegreesOpts& o) {
  if ((o.kmax > 0) == !o.shape_file.empty())
    throw UsageError("degrees: pass exactly one of --kmax or --shape");
  std::vector<std::pair<std::string, brw::Structure>> shapes;
  if (o.kmax > 0) {
    for (int k = 1; k <= o.kmax; ++k)
      shapes.emplace_back("chain" + std::to_string(k), chain_shape(o.coding.kind, k, o.coding.parts));
  } else {
    shapes.emplace_back(o.shape_file, brw::Structure::from_json(load_json(ctx, o.shape_file)));
  }

  auto oracle_of = [&](const brw::Structure& a) -> std::int64_t {
    if (o.coding.kind == "devlin") return brw::devlin_oracle(a.size());
    if (o.coding.kind == "qn") return brw::qn_oracle(a, o.coding.parts);
    if (o.coding.kind == "rado") return brw::rado_oracle(a);
    if (o.coding.kind == "s2") return brw::s2_oracle(a);
    return brw::ultrametric_oracle(a);
  };

  std::vector<int> checkpoints = brw::geometric_checkpoints(o.first, o.last, o.ratio);
  std::string csv = "family,shape,degree,depth,stabilized,oracle\n";
  for (const auto& [name, shape] : shapes) {
    check_budget(ctx, "degrees row " + name);
    brw::DegreeResult res =
        brw::stabilized_degree(shape, build_coding(o.coding), checkpoints, o.window);
    csv += o.coding.kind + "," + name + "," + std::to_string(res.degree) + "," +
           std::to_string(res.history.back().rounds) + "," +
           (res.stabilized ? "true" : "false") + "," + std::to_string(oracle_of(shape)) + "\n";
  }
  deliver(ctx, csv);
  return 0;
}

struct CanonicalOpts {
  CodingOpts coding;
  int k = 2;
  std::string shape_file;
};

int cmd_color_canonical(RunContext& ctx, const CanonicalOpts& o) {
  brw::TreeCoding coding = build_coding(o.coding);
  brw::Structure shape = o.shape_file.empty()
                             ? chain_shape(o.coding.kind, o.k, o.coding.parts)
                             : brw::Structure::from_json(load_json(ctx, o.shape_file));
  deliver(ctx, dump_json(brw::expansion_coloring_of(shape, coding).to_json()));
  return 0;
}

struct PersistOpts {
  CodingOpts coding;
  int k = 2;
  int n_max = 4;
  std::string coloring_file;
};

int cmd_color_persist(RunContext& ctx, const PersistOpts& o) {
  brw::TreeCoding coding = build_coding(o.coding);
  brw::Structure small = chain_shape(o.coding.kind, o.k, o.coding.parts);
  brw::Structure ambient = coding.emit(brw::Reduct::base);
  brw::Coloring gamma = o.coloring_file.empty()
                            ? brw::expansion_coloring_of(small, coding)
                            : brw::Coloring::from_json(load_json(ctx, o.coloring_file));
  if (o.n_max < o.k) throw UsageError("persist: --n-max must be >= --k");

  json sweep = json::array();
  std::optional<int> minimal;
  for (int n = o.k; n <= o.n_max; ++n) {
    check_budget(ctx, "persistence sweep n=" + std::to_string(n));
    brw::Structure mid = chain_shape(o.coding.kind, n, o.coding.parts);
    std::vector<brw::Tuple> copies = brw::enumerate_embeddings(mid, ambient);
    std::vector<brw::Tuple> connectors = brw::enumerate_embeddings(small, mid);
    brw::PersistenceResult res = brw::persistence_check(gamma, copies, connectors);
    json row{{"n", n}, {"copies", copies.size()}, {"persistent", res.persistent}};
    row["failing_copy"] = res.failing_copy ? json(*res.failing_copy) : json(nullptr);
    sweep.push_back(row);
    if (res.persistent && !minimal) minimal = n;
  }
  json out{{"persistence_family", o.coding.kind},
           {"persistence_k", o.k},
           {"persistence_rounds", coding.rounds()},
           {"persistence_colors", gamma.color_count()},
           {"persistence_sweep", sweep},
           {"persistence_minimal_n", minimal ? json(*minimal) : json(nullptr)}};
  deliver(ctx, dump_json(out));
  return 0;
}

struct ColorDiagramOpts {
  CodingOpts coding;
  int kmax = 3;
};

int cmd_color_diagram(RunContext& ctx, const ColorDiagramOpts& o) {
  brw::TreeCoding coding = build_coding(o.coding);
  std::vector<brw::Structure> shapes;
  std::vector<brw::Coloring> colorings;
  for (int k = 1; k <= o.kmax; ++k) {
    check_budget(ctx, "coloring level k=" + std::to_string(k));
    shapes.push_back(chain_shape(o.coding.kind, k, o.coding.parts));
    colorings.push_back(brw::expansion_coloring_of(shapes.back(), coding));
  }
  deliver(ctx, dump_json(brw::diagram_from_colorings(shapes, colorings).to_json()));
  return 0;
}

struct InduceOpts {
  CodingOpts coding;
  int big = 3;
  int small = 2;
  std::string inclusion;  // comma tuple; default initial segment
  std::string coloring_file;
};

int cmd_color_induce(RunContext& ctx, const InduceOpts& o) {
  if (o.small > o.big) throw UsageError("induce: --small must be <= --big");
  brw::TreeCoding coding = build_coding(o.coding);
  brw::Structure small = chain_shape(o.coding.kind, o.small, o.coding.parts);
  brw::Coloring gamma =
      o.coloring_file.empty()
          ? brw::expansion_coloring_of(chain_shape(o.coding.kind, o.big, o.coding.parts), coding)
          : brw::Coloring::from_json(load_json(ctx, o.coloring_file));
  brw::Tuple i_b;
  if (o.inclusion.empty())
    for (int i = 0; i < o.small; ++i) i_b.push_back(i);
  else
    i_b = parse_tuple(o.inclusion);
  brw::Structure ambient = coding.emit(brw::Reduct::base);
  brw::InducedColoring induced = brw::induced_coloring(gamma, small, ambient, i_b);
  json out{{"induced_coloring", induced.coloring.to_json()},
           {"excluded", induced.excluded},
           {"excluded_count", induced.excluded.size()}};
  deliver(ctx, dump_json(out));
  return 0;
}

struct SearchOpts {
  CodingOpts coding;
  int k = 2;
  int copy_size = 3;
  std::string gamma_file;
  std::string delta_file;
};

int cmd_color_search(RunContext& ctx, const SearchOpts& o) {
  if (o.copy_size < o.k) throw UsageError("search: --copy-size must be >= --k");
  brw::TreeCoding coding = build_coding(o.coding);
  brw::Structure small = chain_shape(o.coding.kind, o.k, o.coding.parts);
  brw::Structure mid = chain_shape(o.coding.kind, o.copy_size, o.coding.parts);
  brw::Structure ambient = coding.emit(brw::Reduct::base);
  brw::Coloring gamma = brw::Coloring::from_json(load_json(ctx, o.gamma_file));
  brw::Coloring delta = o.delta_file.empty()
                            ? brw::expansion_coloring_of(small, coding)
                            : brw::Coloring::from_json(load_json(ctx, o.delta_file));
  std::vector<brw::Tuple> copies = brw::enumerate_embeddings(mid, ambient);
  std::vector<brw::Tuple> connectors = brw::enumerate_embeddings(small, mid);
  std::optional<int> found = brw::refinement_search(gamma, delta, copies, connectors);
  json out{{"refinement_search_copy", found ? json(*found) : json(nullptr)},
           {"copies", copies.size()}};
  deliver(ctx, dump_json(out));
  return found ? 0 : 2;
}

int cmd_diagram_validate(RunContext& ctx, const std::string& in) {
  brw::Diagram d = brw::Diagram::from_json(load_json(ctx, in));
  brw::DiagramReport report = brw::validate(d);
  deliver(ctx, dump_json(json{{"valid", report.valid()}, {"violations", report.violations}}));
  return report.valid() ? 0 : 2;
}

int cmd_diagram_iso(RunContext& ctx, const std::string& in, const std::string& in2) {
  brw::Diagram d1 = brw::Diagram::from_json(load_json(ctx, in));
  brw::Diagram d2 = brw::Diagram::from_json(load_json(ctx, in2));
  std::optional<brw::DiagramIso> iso = brw::isomorphic(d1, d2);
  json out{{"isomorphic", iso.has_value()}};
  out["sigma"] = iso ? json(iso->sigma) : json(nullptr);
  deliver(ctx, dump_json(out));
  return iso ? 0 : 2;
}

// The exhaustion chain a diagram's connectors describe: level n is a chain
// whose size is the arity of the identity connector at (n, n).
std::vector<brw::Structure> exhaustion_of(const brw::Diagram& d) {
  std::vector<int> sizes;
  for (int n = 0; n < d.level_count(); ++n) {
    auto it = d.connectors.find({n, n});
    if (it == d.connectors.end() || it->second.empty())
      throw std::invalid_argument("diagram has no identity connector at level " +
                                  std::to_string(n));
    sizes.push_back(static_cast<int>(it->second.front().size()));
  }
  return brw::chain_exhaustion(sizes);
}

int cmd_diagram_expand(RunContext& ctx, const std::string& in, bool round_trip) {
  brw::Diagram d = brw::Diagram::from_json(load_json(ctx, in));
  std::vector<brw::Structure> exhaustion = exhaustion_of(d);
  std::vector<std::vector<brw::Structure>> expansions = brw::expansion_from_diagram(d, exhaustion);
  json levels = json::array();
  for (const auto& level : expansions) {
    json row = json::array();
    for (const brw::Structure& s : level) row.push_back(s.to_json());
    levels.push_back(row);
  }
  json out{{"levels", levels}};
  bool ok = true;
  if (round_trip) {
    brw::Diagram back = brw::diagram_of_expansion(expansions, exhaustion);
    ok = brw::isomorphic(d, back).has_value();
    out["round_trip_isomorphic"] = ok;
  }
  deliver(ctx, dump_json(out));
  return ok ? 0 : 2;
}

struct JepOpts {
  std::string in;
  int m = 1;
  std::string p, q;
  int n_max = -1;
};

int cmd_diagram_jep(RunContext& ctx, const JepOpts& o) {
  brw::Diagram d = brw::Diagram::from_json(load_json(ctx, o.in));
  int n_max = o.n_max < 0 ? d.level_count() - 1 : o.n_max;
  int p = resolve_label(d, o.m, o.p);
  int q = resolve_label(d, o.m, o.q);
  std::optional<brw::JepWitness> w = brw::jep_check(d, o.m, p, q, n_max);
  json out{{"witness", nullptr}};
  if (w)
    out["witness"] = {{"n", w->n},
                      {"label", d.levels[w->n][w->label]},
                      {"connector", w->connector}};
  deliver(ctx, dump_json(out));
  return w ? 0 : 2;
}

struct ApOpts {
  std::string in;
  int m = 1, n = 2;
  std::string p, q;
  int f_p = 0, f_q = 0;
  int n_max = -1;
};

int cmd_diagram_ap(RunContext& ctx, const ApOpts& o) {
  brw::Diagram d = brw::Diagram::from_json(load_json(ctx, o.in));
  int n_max = o.n_max < 0 ? d.level_count() - 1 : o.n_max;
  int p = resolve_label(d, o.n, o.p);
  int q = resolve_label(d, o.n, o.q);
  std::optional<brw::ApWitness> w = brw::ap_check(d, o.m, o.n, p, q, o.f_p, o.f_q, n_max);
  json out{{"witness", nullptr}};
  if (w)
    out["witness"] = {{"big", w->big},
                      {"label", d.levels[w->big][w->label]},
                      {"s_p", w->s_p},
                      {"s_q", w->s_q}};
  deliver(ctx, dump_json(out));
  return w ? 0 : 2;
}

struct SemigroupVerifyOpts {
  int size = 3;
  bool exhaustive = false;
  long samples = 0;
};

int cmd_semigroup_verify(RunContext& ctx, const SemigroupVerifyOpts& o) {
  if (o.exhaustive == (o.samples > 0))
    throw UsageError("semigroup verify: pass exactly one of --exhaustive or --samples");
  long tables = 0, failures = 0;
  std::map<std::string, long> clause_failures;
  auto run_one = [&](const brw::SemigroupTable& t) {
    ++tables;
    brw::SemifactsReport report = brw::verify_semifacts(t);
    if (!report.all_pass()) ++failures;
    for (const brw::SemifactClause& c : report.clauses)
      if (!c.pass) ++clause_failures[c.name];
  };
  if (o.exhaustive) {
    for (const brw::SemigroupTable& t : brw::enumerate_semigroups(o.size)) {
      run_one(t);
      if (tables % 512 == 0) check_budget(ctx, "exhaustive verify");
    }
  } else {
    std::mt19937 rng(static_cast<std::uint32_t>(ctx.seed));
    for (long i = 0; i < o.samples; ++i) {
      run_one(brw::sample_semigroup(o.size, rng));
      if (tables % 512 == 0) check_budget(ctx, "sampled verify");
    }
  }
  json out{{"size", o.size},
           {"mode", o.exhaustive ? "exhaustive" : "sampled"},
           {"seed", ctx.seed},
           {"tables", tables},
           {"failures", failures},
           {"clause_failures", clause_failures}};
  deliver(ctx, dump_json(out));
  return failures == 0 ? 0 : 2;
}

int cmd_semigroup_inspect(RunContext& ctx, const std::string& in) {
  brw::SemigroupTable t = brw::SemigroupTable::from_json(load_json(ctx, in));
  brw::AssociativityResult assoc = brw::check_associativity(t);
  if (!assoc.associative) {
    json out{{"size", t.size()},
             {"associative", false},
             {"witness", std::vector<int>(assoc.witness->begin(), assoc.witness->end())}};
    deliver(ctx, dump_json(out));
    return 2;
  }
  brw::SemifactsReport report = brw::verify_semifacts(t);
  json clauses = json::array();
  for (const brw::SemifactClause& c : report.clauses)
    clauses.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  json out{{"size", t.size()},
           {"associative", true},
           {"idempotents", brw::idempotents(t)},
           {"minimal_right_ideals", brw::minimal_right_ideals(t)},
           {"minimal_left_ideals", brw::minimal_left_ideals(t)},
           {"semifacts", clauses},
           {"all_pass", report.all_pass()}};
  deliver(ctx, dump_json(out));
  return report.all_pass() ? 0 : 2;
}

struct TypesOpts {
  std::string a_file;
  std::string ambient_file;
  std::string compare_file;
  std::vector<std::string> exhaustion_files;
};

int cmd_types(RunContext& ctx, const TypesOpts& o) {
  brw::Structure a = brw::Structure::from_json(load_json(ctx, o.a_file));
  if (!o.exhaustion_files.empty()) {
    if (!o.ambient_file.empty() || !o.compare_file.empty())
      throw UsageError("types: --exhaustion excludes --ambient/--compare");
    std::vector<brw::Structure> chain;
    for (const std::string& f : o.exhaustion_files)
      chain.push_back(brw::Structure::from_json(load_json(ctx, f)));
    int last = static_cast<int>(chain.size()) - 1;
    std::optional<int> witness = brw::roelcke_witness(a, chain, last);
    json out{{"roelcke_witness", witness ? json(*witness) : json(nullptr)},
             {"levels", chain.size()}};
    deliver(ctx, dump_json(out));
    return witness ? 0 : 2;
  }
  if (o.ambient_file.empty()) throw UsageError("types: pass --ambient or --exhaustion");
  auto summarize = [](const brw::TwoTypeSummary& s) {
    return json{{"types", s.types.size()}, {"pairs", s.pairs}, {"counts", s.counts}};
  };
  brw::TwoTypeSummary first = brw::enumerate_2types(
      a, brw::Structure::from_json(load_json(ctx, o.ambient_file)));
  json out{{"ambient", summarize(first)}};
  bool stable = true;
  if (!o.compare_file.empty()) {
    brw::TwoTypeSummary second = brw::enumerate_2types(
        a, brw::Structure::from_json(load_json(ctx, o.compare_file)));
    stable = first.types.size() == second.types.size();
    out["compare"] = summarize(second);
    out["stable"] = stable;
  }
  deliver(ctx, dump_json(out));
  return stable ? 0 : 2;
}

int cmd_verify_all(RunContext& ctx, const std::vector<int>& only) {
  // Progress lines (with timings) go to stderr; the artifact keeps only the
  // deterministic fields so identical runs stay byte-identical.
  brw::AcceptanceReport report =
      brw::run_acceptance(only, [&](const brw::CriterionResult& r) {
        std::fprintf(stderr, "%s\n", brw::format_line(r).c_str());
        check_budget(ctx, "acceptance criterion " + std::to_string(r.id));
      });
  json criteria = json::array();
  for (const brw::CriterionResult& r : report.results)
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"budget_seconds", r.budget_seconds}});
  deliver(ctx, dump_json(json{{"criteria", criteria}, {"all_pass", report.all_pass()}}));
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "brw — finite big-Ramsey workbench: tree codings, stabilized degrees,\n"
      "expansion colorings, restriction diagrams, and finite semigroup checks.\n"
      "Artifacts are JSON/CSV (DOT for tree skeletons); every run emits a\n"
      "manifest with input/output hashes. BRW_LOG=info|debug adds progress\n"
      "notes on stderr."};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.argv.assign(argv, argv + argc);
  app.add_option("--out", ctx.out, "write the artifact to this file (default: stdout)");
  app.add_option("--seed", ctx.seed, "seed for randomized subcommands");
  app.add_option("--threads", ctx.threads, "cap on subcommand-internal parallelism")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", ctx.budget_seconds,
                 "abort (exit 2) when the run exceeds this wall-time budget");

  std::function<int(RunContext&)> run;
  auto bind = [&run](CLI::App* cmd, std::function<int(RunContext&)> fn) {
    cmd->fallthrough();
    cmd->callback([&run, fn] { run = fn; });
  };

  // coding ------------------------------------------------------------------
  auto* coding = app.add_subcommand("coding", "build tree codings and export them");
  coding->require_subcommand(1);
  coding->fallthrough();
  auto grow_opts = std::make_shared<GrowOpts>();
  auto* grow = coding->add_subcommand("grow", "grow a coding and emit it");
  add_coding_flags(grow, grow_opts->coding);
  grow->add_option("--reduct", grow_opts->reduct, "emit the full expansion or the base reduct")
      ->check(CLI::IsMember({"full", "base"}));
  grow->add_option("--format", grow_opts->format,
                   "json = emitted structure, dot = tree skeleton, csv = leaf table")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  grow->get_option("--rounds")->each([grow_opts](const std::string&) {
    grow_opts->rounds_given = true;
  });
  bind(grow, [grow_opts](RunContext& c) { return cmd_coding_grow(c, *grow_opts); });

  // degrees -----------------------------------------------------------------
  auto degrees_opts = std::make_shared<DegreesOpts>();
  auto* degrees = app.add_subcommand(
      "degrees", "stabilized expansion counts with oracle cross-checks (CSV)");
  add_coding_flags(degrees, degrees_opts->coding);
  degrees->add_option("--kmax", degrees_opts->kmax, "compute chains of size 1..kmax");
  degrees->add_option("--shape", degrees_opts->shape_file, "structure JSON to count instead");
  degrees->add_option("--first", degrees_opts->first, "first checkpoint (rounds)");
  degrees->add_option("--last", degrees_opts->last, "final checkpoint (rounds)");
  degrees->add_option("--ratio", degrees_opts->ratio, "checkpoint growth ratio");
  degrees->add_option("--window", degrees_opts->window, "flat checkpoints needed to stabilize");
  bind(degrees, [degrees_opts](RunContext& c) { return cmd_degrees(c, *degrees_opts); });

  // color ---------------------------------------------------------------
  auto* color = app.add_subcommand("color", "expansion colorings and the coloring calculus");
  color->require_subcommand(1);
  color->fallthrough();

  auto canonical_opts = std::make_shared<CanonicalOpts>();
  auto* canonical =
      color->add_subcommand("canonical", "export the canonical expansion coloring (JSON)");
  add_coding_flags(canonical, canonical_opts->coding);
  canonical->add_option("--k", canonical_opts->k, "chain size to color");
  canonical->add_option("--shape", canonical_opts->shape_file, "structure JSON to color instead");
  bind(canonical, [canonical_opts](RunContext& c) { return cmd_color_canonical(c, *canonical_opts); });

  auto persist_opts = std::make_shared<PersistOpts>();
  auto* persist = color->add_subcommand(
      "persist", "sweep copy sizes for a finite persistence certificate");
  add_coding_flags(persist, persist_opts->coding);
  persist->add_option("--k", persist_opts->k, "colored chain size");
  persist->add_option("--n-max", persist_opts->n_max, "largest copy size to sweep");
  persist->add_option("--coloring", persist_opts->coloring_file,
                      "coloring JSON (default: canonical)");
  bind(persist, [persist_opts](RunContext& c) { return cmd_color_persist(c, *persist_opts); });

  auto cdiag_opts = std::make_shared<ColorDiagramOpts>();
  auto* cdiag = color->add_subcommand(
      "diagram", "assemble the restriction diagram of the canonical chain colorings");
  add_coding_flags(cdiag, cdiag_opts->coding);
  cdiag->add_option("--kmax", cdiag_opts->kmax, "levels: chains of size 1..kmax");
  bind(cdiag, [cdiag_opts](RunContext& c) { return cmd_color_diagram(c, *cdiag_opts); });

  auto induce_opts = std::make_shared<InduceOpts>();
  auto* induce = color->add_subcommand(
      "induce", "project a big-chain coloring onto small-chain embeddings");
  add_coding_flags(induce, induce_opts->coding);
  induce->add_option("--big", induce_opts->big, "colored chain size");
  induce->add_option("--small", induce_opts->small, "projected chain size");
  induce->add_option("--inclusion", induce_opts->inclusion,
                     "inclusion of the small chain, e.g. 0,2 (default: initial segment)");
  induce->add_option("--coloring", induce_opts->coloring_file,
                     "coloring JSON for the big chain (default: canonical)");
  bind(induce, [induce_opts](RunContext& c) { return cmd_color_induce(c, *induce_opts); });

  auto search_opts = std::make_shared<SearchOpts>();
  auto* search = color->add_subcommand(
      "search", "first copy whose pullback of --gamma is refined by the canonical coloring");
  add_coding_flags(search, search_opts->coding);
  search->add_option("--k", search_opts->k, "colored chain size");
  search->add_option("--copy-size", search_opts->copy_size, "size of the copies searched");
  search->add_option("--gamma", search_opts->gamma_file, "coloring JSON to be refined")
      ->required();
  search->add_option("--delta", search_opts->delta_file,
                     "refining coloring JSON (default: canonical)");
  bind(search, [search_opts](RunContext& c) { return cmd_color_search(c, *search_opts); });

  // diagram -------------------------------------------------------------
  auto* diagram = app.add_subcommand("diagram", "validate, compare, and realize diagrams");
  diagram->require_subcommand(1);
  diagram->fallthrough();

  auto validate_in = std::make_shared<std::string>();
  auto* dvalidate = diagram->add_subcommand("validate", "check shape, surjectivity, coherence");
  dvalidate->add_option("--in", *validate_in, "diagram JSON")->required();
  bind(dvalidate, [validate_in](RunContext& c) { return cmd_diagram_validate(c, *validate_in); });

  auto iso_in = std::make_shared<std::pair<std::string, std::string>>();
  auto* diso = diagram->add_subcommand("iso", "search for a level-wise isomorphism");
  diso->add_option("--in", iso_in->first, "first diagram JSON")->required();
  diso->add_option("--in2", iso_in->second, "second diagram JSON")->required();
  bind(diso, [iso_in](RunContext& c) { return cmd_diagram_iso(c, iso_in->first, iso_in->second); });

  auto expand_in = std::make_shared<std::string>();
  auto expand_check = std::make_shared<bool>(false);
  auto* dexpand = diagram->add_subcommand(
      "expand", "realize the diagram as expansion structures over its chain exhaustion");
  dexpand->add_option("--in", *expand_in, "diagram JSON")->required();
  dexpand->add_flag("--check", *expand_check, "also read the diagram back and compare");
  bind(dexpand, [expand_in, expand_check](RunContext& c) {
    return cmd_diagram_expand(c, *expand_in, *expand_check);
  });

  auto jep_opts = std::make_shared<JepOpts>();
  auto* djep = diagram->add_subcommand("jep", "joint-embedding witness for two labels");
  djep->add_option("--in", jep_opts->in, "diagram JSON")->required();
  djep->add_option("--m", jep_opts->m, "level of the two labels");
  djep->add_option("--p", jep_opts->p, "first label (name or index)")->required();
  djep->add_option("--q", jep_opts->q, "second label (name or index)")->required();
  djep->add_option("--n-max", jep_opts->n_max, "deepest level to search (default: last)");
  bind(djep, [jep_opts](RunContext& c) { return cmd_diagram_jep(c, *jep_opts); });

  auto ap_opts = std::make_shared<ApOpts>();
  auto* dap = diagram->add_subcommand("ap", "amalgamation witness over a common restriction");
  dap->add_option("--in", ap_opts->in, "diagram JSON")->required();
  dap->add_option("--m", ap_opts->m, "base level");
  dap->add_option("--n", ap_opts->n, "level of the two labels");
  dap->add_option("--p", ap_opts->p, "first label (name or index)")->required();
  dap->add_option("--q", ap_opts->q, "second label (name or index)")->required();
  dap->add_option("--fp", ap_opts->f_p, "connector index restricting --p");
  dap->add_option("--fq", ap_opts->f_q, "connector index restricting --q");
  dap->add_option("--n-max", ap_opts->n_max, "deepest level to search (default: last)");
  bind(dap, [ap_opts](RunContext& c) { return cmd_diagram_ap(c, *ap_opts); });

  // semigroup -----------------------------------------------------------
  auto* semigroup = app.add_subcommand("semigroup", "finite semigroup fact checking");
  semigroup->require_subcommand(1);
  semigroup->fallthrough();

  auto sg_verify_opts = std::make_shared<SemigroupVerifyOpts>();
  auto* sgverify = semigroup->add_subcommand(
      "verify", "check the fact sheet on enumerated or sampled tables");
  sgverify->add_option("--size", sg_verify_opts->size, "table size (1..4)")->required();
  sgverify->add_flag("--exhaustive", sg_verify_opts->exhaustive, "all associative tables");
  sgverify->add_option("--samples", sg_verify_opts->samples, "seeded uniform draws instead");
  bind(sgverify, [sg_verify_opts](RunContext& c) { return cmd_semigroup_verify(c, *sg_verify_opts); });

  auto inspect_in = std::make_shared<std::string>();
  auto* sginspect = semigroup->add_subcommand(
      "inspect", "idempotents, minimal ideals, and the fact sheet of one table");
  sginspect->add_option("--in", *inspect_in, "table JSON (n x n matrix)")->required();
  bind(sginspect, [inspect_in](RunContext& c) { return cmd_semigroup_inspect(c, *inspect_in); });

  // types -----------------------------------------------------------------
  auto types_opts = std::make_shared<TypesOpts>();
  auto* types = app.add_subcommand("types", "2-type counts and Roelcke witnesses");
  types->add_option("--a", types_opts->a_file, "structure JSON whose pairs are typed")
      ->required();
  types->add_option("--ambient", types_opts->ambient_file, "ambient structure JSON");
  types->add_option("--compare", types_opts->compare_file,
                    "second ambient; exit 2 when the type count moves");
  types->add_option("--exhaustion", types_opts->exhaustion_files,
                    "inclusion chain of structure JSONs for a Roelcke witness");
  bind(types, [types_opts](RunContext& c) { return cmd_types(c, *types_opts); });

  // verify-all --------------------------------------------------------------
  auto only = std::make_shared<std::vector<int>>();
  auto* verify_all = app.add_subcommand("verify-all", "run the acceptance suite");
  verify_all->add_option("--only", *only, "criterion ids to run (default: all)")
      ->delimiter(',');
  bind(verify_all, [only](RunContext& c) { return cmd_verify_all(c, *only); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (!run) {
    std::cerr << app.help();
    return 1;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  ctx.subcommand = chosen->get_name();
  for (const CLI::App* sub : chosen->get_subcommands())
    ctx.subcommand += " " + sub->get_name();

  int code = 0;
  try {
    code = run(ctx);
  } catch (const UsageError& e) {
    std::cerr << "brw: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "brw: " << e.what() << "\n";
    emit_manifest(ctx);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "brw: " << e.what() << "\n";
    return 2;
  }
  emit_manifest(ctx);
  return code;
}
