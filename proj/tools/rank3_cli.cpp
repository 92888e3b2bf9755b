// Command-line front end: rank3 <group> <command> [options]. Results go to
// stdout as JSON (search results as JSON lines); failures print an error
// object to stderr and exit nonzero.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "rank3/io.hpp"

using namespace rank3;

namespace {

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

std::filesystem::path cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag == "none" ? std::filesystem::path() : std::filesystem::path(flag);
  return env_or("RANK3_CACHE_DIR", ".rank3_cache");
}

SchemeParams parse_params(unsigned q, const std::string& e) {
  static const std::map<std::string, int> names = {{"0", 0},   {"1/2", 1}, {"0.5", 1}, {"1", 2},
                                                   {"3/2", 3}, {"1.5", 3}, {"2", 4}};
  auto it = names.find(e);
  if (it == names.end()) throw std::invalid_argument("e must be one of 0, 1/2, 1, 3/2, 2");
  SchemeParams p{q, it->second};
  p.validate();
  return p;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct Common {
  std::string space = "o6plus_q2";
  std::string cache;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;
  std::size_t max_results = 0;

  PolarSpace load() const { return cached_space(parse_space_name(space), cache_dir(cache)); }

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = max_nodes ? max_nodes : std::stoull(env_or("RANK3_MAX_NODES", "1000000000"));
    b.max_seconds = max_seconds > 0 ? max_seconds : std::stod(env_or("RANK3_MAX_SECONDS", "3600"));
    if (max_results) b.max_results = max_results;
    return b;
  }
};

void add_space(CLI::App* cmd, Common& c) {
  cmd->add_option("--space", c.space, "space name such as sp6_q2, o6plus_q3, u6_q4")->capture_default_str();
  cmd->add_option("--cache", c.cache, "cache directory, or \"none\" (default $RANK3_CACHE_DIR or .rank3_cache)");
  cmd->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
}

void add_budget(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-nodes", c.max_nodes, "node budget (default $RANK3_MAX_NODES or 1e9)");
  cmd->add_option("--max-seconds", c.max_seconds, "time budget (default $RANK3_MAX_SECONDS or 3600)");
  cmd->add_option("--max-results", c.max_results, "stop after this many sets");
}

Json space_info(const PolarSpace& s) {
  SchemeParams p = s.params();
  return {{"name", s.name()},
          {"fingerprint", s.fingerprint()},
          {"q", s.q()},
          {"e", p.e_string()},
          {"points", s.num_points()},
          {"lines", s.num_lines()},
          {"planes", s.num_planes()},
          {"expected_lines", p.num_lines().get_str()}};
}

LineSet construct(const PolarSpace& s, const std::string& name, int index) {
  if (name == "plane") return plane_lines(s, index);
  if (name == "pencil") return point_pencil(s, index, PencilMode::Through);
  if (name == "perp_avoiding") return point_pencil(s, index, PencilMode::PerpAvoiding);
  if (name == "gq") return hyperplane_section_lines(s, find_section(s, SectionType::Quadrangle));
  if (name == "rank3_section") return hyperplane_section_lines(s, find_section(s, SectionType::Rank3));
  if (name == "ovoid_pencils") return pencil_union(s, elliptic_ovoid(s)).lines;
  if (name == "m_ovoid_lift") return m_ovoid_lift(s, ovoid_host_section(s), elliptic_ovoid(s).points).lines;
  if (name == "spread") return symplectic_spread_lines(s).lines;
  if (name == "hexagon") return hexagon_lines(s);
  if (name == "one_system") {
    SpreadSearchResult r = line_spread_search(s, find_section(s, SectionType::Quadrangle));
    if (!r.spread) throw ValidationFailure("no line spread of the quadrangle section was found");
    LineSet y = *r.spread;
    y.name = "one_system";
    return y;
  }
  throw std::invalid_argument("unknown construction: " + name);
}

std::vector<int> parse_support(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(parse_eigenspace(tok));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Regular line sets in rank 3 polar spaces"};
  app.require_subcommand(1);
  Common c;

  // space
  auto* space = app.add_subcommand("space", "build or describe a polar space")->require_subcommand(1);
  auto* space_build = space->add_subcommand("build", "enumerate and cache a space");
  auto* space_info_cmd = space->add_subcommand("info", "counts of a cached space");
  add_space(space_build, c);
  add_space(space_info_cmd, c);

  // scheme
  auto* scheme = app.add_subcommand("scheme", "eigenvalue tables")->require_subcommand(1);
  auto* tables = scheme->add_subcommand("tables", "P and Q at (q, e)");
  unsigned q = 2;
  std::string e = "0";
  bool csv = false;
  tables->add_option("--q", q)->required();
  tables->add_option("--e", e)->required();
  tables->add_flag("--csv", csv, "CSV instead of JSON");
  auto* verify = scheme->add_subcommand("verify", "check the enumerated relations against P");
  add_space(verify, c);
  int vectors = 5;
  verify->add_option("--vectors", vectors, "random test vectors")->capture_default_str();

  // set
  auto* set = app.add_subcommand("set", "line set reports")->require_subcommand(1);
  auto* eval = set->add_subcommand("eval", "report on a line set file");
  add_space(eval, c);
  std::string file;
  eval->add_option("file", file, "line set JSON")->required();

  // construct
  auto* cons = app.add_subcommand("construct", "write a known line set as JSON");
  add_space(cons, c);
  std::string cname, out;
  int index = 0;
  cons->add_option("name", cname,
                   "plane | pencil | perp_avoiding | gq | rank3_section | ovoid_pencils | m_ovoid_lift | spread | "
                   "hexagon | one_system")
      ->required();
  cons->add_option("--index", index, "plane or point index")->capture_default_str();
  cons->add_option("--out", out, "write to this file instead of stdout");

  // lp
  auto* lp = app.add_subcommand("lp", "Delsarte LP")->require_subcommand(1);
  auto* bound = lp->add_subcommand("bound", "exact LP bound for a forbidden relation set");
  std::string forbid;
  bound->add_option("--q", q)->required();
  bound->add_option("--e", e)->required();
  bound->add_option("--forbid", forbid, "e.g. R11,R21")->required();

  // search
  auto* search = app.add_subcommand("search", "exhaustive searches")->require_subcommand(1);
  auto* regular = search->add_subcommand("regular", "all regular sets of a size in <j> + V_j");
  auto* probe = search->add_subcommand("probe", "one set with dual support inside S");
  auto* spread = search->add_subcommand("spread", "line spread of the space or of a section");
  auto* packing = search->add_subcommand("packing", "largest family of line-disjoint O(5,q) sections");
  std::string j_name, support, section;
  long size = 0;
  for (auto* cmd : {regular, probe, spread, packing}) {
    add_space(cmd, c);
    add_budget(cmd, c);
  }
  regular->add_option("--j", j_name, "V10, V11, V20 or V21")->required();
  regular->add_option("--size", size)->required();
  probe->add_option("--support", support, "e.g. V10,V20")->required();
  probe->add_option("--size", size)->required();
  spread->add_option("--section", section, "quadrangle | rank3 (default: the whole space)");

  CLI11_PARSE(app, argc, argv);

  if (space_build->parsed() || space_info_cmd->parsed()) {
    emit(space_info(c.load()));
  } else if (tables->parsed()) {
    SchemeTables t = make_tables(parse_params(q, e));
    if (csv) std::cout << tables_csv(t);
    else emit(tables_json(t));
  } else if (verify->parsed()) {
    PolarSpace s = c.load();
    RelationTable table(s, c.threads, std::size_t(1) << 20);
    SchemeReport r = verify_scheme(table, make_tables(s.params()), vectors, c.seed, c.threads);
    Json j = scheme_report_json(r);
    j["space"] = space_info(s);
    emit(j);
    if (!r.pass()) throw ValidationFailure("scheme verification failed");
  } else if (eval->parsed()) {
    PolarSpace s = c.load();
    LineScheme ls(s);
    emit(eval_report(ls, parse_lineset_file(file, s)));
  } else if (cons->parsed()) {
    PolarSpace s = c.load();
    LineSet y = construct(s, cname, index);
    if (y.name.empty()) y.name = cname;
    Json j = lineset_to_json(s, y);
    if (out.empty()) emit(j);
    else write_json_file(out, j);
  } else if (bound->parsed()) {
    emit(lp_json(delsarte_lp_bound({parse_params(q, e), parse_forbidden(forbid)})));
  } else if (regular->parsed() || probe->parsed()) {
    PolarSpace s = c.load();
    std::optional<RelationTable> table;
    if (s.num_lines() <= static_cast<int>(RelationTable::kDefaultMaxLines)) table.emplace(s, c.threads);
    LineScheme ls(s, table ? &*table : nullptr);
    Json summary;
    if (regular->parsed()) {
      int j = parse_eigenspace(j_name);
      SearchResult r = enumerate_regular_sets(ls, j, size, c.budget(), c.threads);
      for (const LineSet& y : r.sets) std::cout << Json{{"lines", y.lines}}.dump() << "\n";
      summary = {{"j", eigenspace_name(j)}, {"size", size}, {"found", r.sets.size()}};
      summary.update(stats_json(r.stats));
    } else {
      ProbeResult r = feasibility_probe(ls, parse_support(support), size, c.budget(), c.threads);
      if (r.witness) std::cout << Json{{"lines", r.witness->lines}}.dump() << "\n";
      summary = {{"support", support}, {"size", size}, {"verdict", to_string(r.verdict)}};
      summary.update(stats_json(r.stats));
    }
    std::cout << Json{{"summary", summary}}.dump() << "\n";
  } else if (spread->parsed()) {
    PolarSpace s = c.load();
    std::optional<Section> sec;
    if (section == "quadrangle") sec = find_section(s, SectionType::Quadrangle);
    else if (section == "rank3") sec = find_section(s, SectionType::Rank3);
    else if (!section.empty()) throw std::invalid_argument("unknown section type: " + section);
    SpreadSearchResult r = line_spread_search(s, sec, c.budget());
    if (r.spread) std::cout << Json{{"lines", r.spread->lines}}.dump() << "\n";
    Json summary = {{"found", r.spread.has_value()}};
    summary.update(stats_json(r.stats));
    std::cout << Json{{"summary", summary}}.dump() << "\n";
  } else if (packing->parsed()) {
    PolarSpace s = c.load();
    PackingResult r = disjoint_section_packing(s, c.budget());
    std::cout << Json{{"sections", r.chosen}, {"lines", r.lines.lines}}.dump() << "\n";
    Json summary = {{"candidates", r.candidates.size()}, {"size", r.size()}, {"lines", r.lines.size()}};
    summary.update(stats_json(r.stats));
    std::cout << Json{{"summary", summary}}.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& ex) {
    const char* kind = dynamic_cast<const ValidationFailure*>(&ex) ? "validation"
                       : dynamic_cast<const IoError*>(&ex)          ? "io"
                       : dynamic_cast<const std::invalid_argument*>(&ex) ? "invalid_argument"
                                                                         : "error";
    std::cerr << Json{{"error", {{"kind", kind}, {"message", ex.what()}}}}.dump() << "\n";
    return 1;
  }
}
