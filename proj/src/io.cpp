#include "rank3/io.hpp"

#include <fstream>
#include <sstream>

namespace rank3 {

namespace fs = std::filesystem;

SpaceId parse_space_name(const std::string& s) {
  auto pos = s.rfind("_q");
  if (pos == std::string::npos) throw std::invalid_argument("space name must look like sp6_q2: " + s);
  SpaceId id;
  id.family = parse_family(s.substr(0, pos));
  try {
    id.q = static_cast<unsigned>(std::stoul(s.substr(pos + 2)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad field order in " + s);
  }
  return id;
}

std::string space_name(const SpaceId& id) { return to_string(id.family) + "_q" + std::to_string(id.q); }

// ---------------------------------------------------------------- space cache

namespace {

Json vec_json(const Vec& v, int dim) {
  Json row = Json::array();
  for (int i = 0; i < dim; ++i) row.push_back(v[i]);
  return row;
}

Vec json_vec(const Json& row, int dim, unsigned q) {
  if (!row.is_array() || static_cast<int>(row.size()) != dim) throw IoError("vector of wrong length");
  Vec v{};
  for (int i = 0; i < dim; ++i) {
    unsigned x = row[i].get<unsigned>();
    if (x >= q) throw IoError("field element out of range");
    v[i] = static_cast<Elem>(x);
  }
  return v;
}

template <std::size_t K>
std::array<Vec, K> json_basis(const Json& rows, int dim, unsigned q) {
  if (!rows.is_array() || rows.size() != K) throw IoError("basis of wrong size");
  std::array<Vec, K> b;
  for (std::size_t i = 0; i < K; ++i) b[i] = json_vec(rows[i], dim, q);
  return b;
}

unsigned field_order(unsigned p, unsigned h) {
  unsigned q = 1;
  for (unsigned i = 0; i < h; ++i) q *= p;
  return q;
}

}  // namespace

Json space_to_json(const PolarSpace& space) {
  const int d = space.dim();
  Json j;
  j["format_version"] = kSpaceFormatVersion;
  j["family"] = to_string(space.family());
  j["p"] = space.field().p();
  j["h"] = space.field().h();
  j["two_e"] = space.two_e();
  j["counts"] = {{"points", space.num_points()}, {"lines", space.num_lines()}, {"planes", space.num_planes()}};
  Json pts = Json::array(), lines = Json::array(), planes = Json::array();
  for (int i = 0; i < space.num_points(); ++i) pts.push_back(vec_json(space.point(i), d));
  for (int i = 0; i < space.num_lines(); ++i) {
    Json b = Json::array();
    for (const Vec& v : space.line_basis(i)) b.push_back(vec_json(v, d));
    lines.push_back(std::move(b));
  }
  for (int i = 0; i < space.num_planes(); ++i) {
    Json b = Json::array();
    for (const Vec& v : space.plane_basis(i)) b.push_back(vec_json(v, d));
    planes.push_back(std::move(b));
  }
  j["points"] = std::move(pts);
  j["lines"] = std::move(lines);
  j["planes"] = std::move(planes);
  return j;
}

PolarSpace space_from_json(const Json& j) {
  try {
    if (j.at("format_version").get<int>() != kSpaceFormatVersion) throw IoError("unsupported space format version");
    Family family = parse_family(j.at("family").get<std::string>());
    const unsigned q = field_order(j.at("p").get<unsigned>(), j.at("h").get<unsigned>());
    const int d = family_dim(family);
    if (j.at("two_e").get<int>() != family_two_e(family)) throw IoError("stored 2e does not match the family");
    std::vector<Vec> pts;
    std::vector<LineBasis> lines;
    std::vector<PlaneBasis> planes;
    for (const Json& v : j.at("points")) pts.push_back(json_vec(v, d, q));
    for (const Json& b : j.at("lines")) lines.push_back(json_basis<2>(b, d, q));
    for (const Json& b : j.at("planes")) planes.push_back(json_basis<3>(b, d, q));
    const Json& counts = j.at("counts");
    if (counts.at("points").get<std::size_t>() != pts.size() || counts.at("lines").get<std::size_t>() != lines.size() ||
        counts.at("planes").get<std::size_t>() != planes.size())
      throw IoError("stored counts do not match the stored bases");
    return PolarSpace::from_bases(family, q, std::move(pts), std::move(lines), std::move(planes));
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed space file: ") + e.what());
  }
}

void write_json_file(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(1) << "\n";
  }
  fs::rename(tmp, path);
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void save_space(const PolarSpace& space, const fs::path& path) { write_json_file(path, space_to_json(space)); }

PolarSpace load_space(const fs::path& path) { return space_from_json(read_json_file(path)); }

PolarSpace cached_space(const SpaceId& id, const fs::path& dir) {
  if (dir.empty()) return PolarSpace::build(id.family, id.q);
  fs::path file = dir / (space_name(id) + ".v" + std::to_string(kSpaceFormatVersion) + ".json");
  if (fs::exists(file)) {
    try {
      return load_space(file);
    } catch (const std::exception&) {
      // A stale or damaged cache entry is rebuilt below.
    }
  }
  PolarSpace s = PolarSpace::build(id.family, id.q);
  save_space(s, file);
  return s;
}

// ---------------------------------------------------------------- line set files

Json lineset_to_json(const PolarSpace& space, const LineSet& y) {
  Json j;
  j["version"] = kLineSetVersion;
  j["space"] = {{"family", to_string(space.family())}, {"p", space.field().p()}, {"h", space.field().h()}};
  if (!y.name.empty()) j["name"] = y.name;
  j["lines"] = y.lines;
  return j;
}

LineSet lineset_from_json(const Json& j, const PolarSpace& space) {
  try {
    if (j.at("version").get<int>() != kLineSetVersion) throw IoError("unsupported line set version");
    const Json& s = j.at("space");
    std::string fp = s.at("family").get<std::string>() + ":" + std::to_string(s.at("p").get<unsigned>()) + ":" +
                     std::to_string(s.at("h").get<unsigned>());
    if (fp != space.fingerprint())
      throw IoError("line set belongs to " + fp + ", not to " + space.fingerprint());
    std::string name = j.value("name", std::string());
    std::vector<int> lines;
    if (j.contains("lines")) {
      lines = j.at("lines").get<std::vector<int>>();
    } else if (j.contains("bases")) {
      const int d = space.dim();
      for (const Json& rows : j.at("bases")) {
        if (!rows.is_array() || rows.empty()) throw IoError("empty basis");
        std::vector<Vec> vs;
        for (const Json& r : rows) vs.push_back(json_vec(r, d, space.q()));
        Subspace sub = span_of(space.field(), vs, d);
        int idx = sub.dim() == 2 ? space.line_index(sub) : -1;
        if (idx < 0) throw IoError("basis does not span a line of the space");
        lines.push_back(idx);
      }
    } else {
      throw IoError("line set needs \"lines\" or \"bases\"");
    }
    try {
      return make_line_set(space, std::move(lines), std::move(name));
    } catch (const std::invalid_argument& e) {
      throw IoError(e.what());
    }
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed line set: ") + e.what());
  }
}

LineSet parse_lineset_file(const fs::path& path, const PolarSpace& space) {
  return lineset_from_json(read_json_file(path), space);
}

// ---------------------------------------------------------------- reports

Json rational_json(const Rational& r) { return to_string(r); }

Json distribution_json(const Distribution& a) {
  Json out = Json::array();
  for (const Rational& x : a) out.push_back(rational_json(x));
  return out;
}

namespace {

Json matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.size(); ++c) row.push_back(rational_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json names_json(const std::vector<int>& idx, bool eigen) {
  Json out = Json::array();
  for (int i : idx) out.push_back(eigen ? eigenspace_name(i) : to_string(kRelations[i]));
  return out;
}

}  // namespace

Json tables_json(const SchemeTables& t) {
  Json j;
  j["version"] = kReportVersion;
  j["q"] = t.params.q;
  j["e"] = t.params.e_string();
  j["n"] = t.n.get_str();
  Json rel = Json::array(), eig = Json::array(), mult = Json::array();
  for (int i = 0; i < kNumClasses; ++i) {
    rel.push_back(to_string(kRelations[i]));
    eig.push_back(eigenspace_name(i));
    mult.push_back(t.multiplicities[i].get_str());
  }
  j["relations"] = rel;
  j["eigenspaces"] = eig;
  j["multiplicities"] = mult;
  j["P"] = matrix_json(t.P);
  j["Q"] = matrix_json(t.Q);
  return j;
}

std::string tables_csv(const SchemeTables& t) {
  std::ostringstream out;
  out << "matrix,row";
  for (int i = 0; i < kNumClasses; ++i) out << "," << to_string(kRelations[i]) << "/" << eigenspace_name(i);
  out << "\n";
  for (int r = 0; r < kNumClasses; ++r) {
    out << "P," << eigenspace_name(r);
    for (int c = 0; c < kNumClasses; ++c) out << "," << to_string(t.P(r, c));
    out << "\n";
  }
  for (int r = 0; r < kNumClasses; ++r) {
    out << "Q," << to_string(kRelations[r]);
    for (int c = 0; c < kNumClasses; ++c) out << "," << to_string(t.Q(r, c));
    out << "\n";
  }
  out << "multiplicity,";
  for (int c = 0; c < kNumClasses; ++c) out << "," << t.multiplicities[c].get_str();
  out << "\n";
  return out.str();
}

Json scheme_report_json(const SchemeReport& r) {
  Json j;
  j["version"] = kReportVersion;
  j["pass"] = r.pass();
  j["valencies_match"] = r.valencies_match;
  j["census"] = r.census;
  j["projectors_sum_to_identity"] = r.projectors_sum_to_identity;
  j["projectors_idempotent"] = r.projectors_idempotent;
  j["vectors"] = r.vectors;
  Json checks = Json::array();
  for (const ProjectorCheck& c : r.checks)
    checks.push_back({{"relation", to_string(kRelations[c.relation])},
                      {"eigenspace", eigenspace_name(c.eigenspace)},
                      {"pass", c.pass}});
  j["checks"] = std::move(checks);
  return j;
}

Json eval_report(const LineScheme& ls, const LineSet& y) {
  const PolarSpace& space = ls.space();
  Json j;
  j["version"] = kReportVersion;
  j["space"] = space.fingerprint();
  if (!y.name.empty()) j["name"] = y.name;
  j["size"] = y.size();
  Distribution a = inner_distribution(ls, y);
  Distribution aq = dual_distribution(ls.tables(), a);
  j["a"] = distribution_json(a);
  j["aQ"] = distribution_json(aq);
  std::vector<int> support = eigenspace_support(aq);
  j["support"] = names_json(support, true);

  Json reg;
  if (y.empty() || y.size() == ls.n()) {
    reg["verdict"] = "trivial";
  } else {
    RegularVerdict v = regular_set_check(ls, y);
    reg["verdict"] = v.regular ? "regular" : "not_regular";
    if (v.regular) {
      reg["j"] = eigenspace_name(v.eigenspace);
      Json in = Json::array(), out = Json::array();
      for (int i = 0; i < kNumClasses; ++i) {
        in.push_back(rational_json(v.degrees->inside[i]));
        out.push_back(rational_json(v.degrees->outside[i]));
      }
      reg["degrees"] = {{"inside", in}, {"outside", out}};
    }
  }
  j["regular"] = std::move(reg);

  PlaneProfile pp = plane_profile(space, y);
  Json hist = Json::object();
  for (auto [k, c] : pp.histogram) hist[std::to_string(k)] = c;
  j["plane_histogram"] = std::move(hist);
  j["plane_pencils"] = pp.pencils;

  Json div = Json::array();
  for (int jj = 1; jj < kNumClasses; ++jj) {
    DivisibilityReport d = divisibility_report(y.size(), jj, space.params(), &ls.tables());
    div.push_back({{"j", eigenspace_name(jj)},
                   {"consistent", d.consistent},
                   {"clause", d.clause},
                   {"modulus", rational_json(d.modulus)},
                   {"degree_feasible", d.degree_feasible}});
  }
  j["divisibility"] = std::move(div);

  Json design;
  for (auto [name, level] : {std::pair{"points", DesignLevel::Points}, std::pair{"planes", DesignLevel::Planes}}) {
    DesignResult d = design_check(ls, y, level);
    Json e = {{"design", d.design}};
    if (d.design) e["m"] = d.m.get_str();
    design[name] = std::move(e);
  }
  j["design"] = std::move(design);
  return j;
}

Json lp_json(const LPResult& r) {
  Json j;
  j["version"] = kReportVersion;
  j["q"] = r.instance.params.q;
  j["e"] = r.instance.params.e_string();
  j["forbid"] = forbidden_string(r.instance.forbidden);
  j["optimum"] = rational_json(r.optimum);
  j["a"] = distribution_json(r.a);
  j["aQ"] = distribution_json(r.aq);
  j["tight"] = names_json(r.tight, true);
  Json y = Json::array();
  for (const Rational& x : r.dual) y.push_back(rational_json(x));
  j["certificate"] = {{"dual", y}, {"bound", rational_json(r.dual_bound)}, {"optimal_vertices", r.optimal_vertices}};
  if (auto cf = closed_form_bound(r.instance.params, r.instance.forbidden)) j["closed_form"] = rational_json(*cf);
  return j;
}

Json stats_json(const SearchStats& s) {
  return {{"status", to_string(s.status)}, {"complete", s.complete()}, {"nodes", s.nodes}};
}

}  // namespace rank3
