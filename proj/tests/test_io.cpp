#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rank3/io.hpp"

using namespace rank3;
namespace fs = std::filesystem;

namespace {

const PolarSpace& oplus2() {
  static const PolarSpace s = PolarSpace::build(Family::O6plus, 2);
  return s;
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / "rank3_test_io";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("space names") {
  SpaceId id = parse_space_name("o6plus_q3");
  CHECK(id.family == Family::O6plus);
  CHECK(id.q == 3);
  CHECK(space_name(id) == "o6plus_q3");
  CHECK_THROWS(parse_space_name("o6plus"));
  CHECK_THROWS(parse_space_name("foo_q2"));
}

TEST_CASE("line set file with indices") {
  Json j = {{"version", 1}, {"space", {{"family", "o6plus"}, {"p", 2}, {"h", 1}}}, {"lines", {0, 1, 2}}};
  LineSet y = lineset_from_json(j, oplus2());
  CHECK(y.size() == 3);
  CHECK(lineset_from_json(lineset_to_json(oplus2(), y), oplus2()).lines == y.lines);
}

TEST_CASE("line set file with bases resolves to the same lines") {
  const PolarSpace& s = oplus2();
  LineSet plane = plane_lines(s, 4);
  Json bases = Json::array();
  for (int l : plane.lines) {
    // A non-canonical basis: the two canonical rows swapped and summed.
    const LineBasis& b = s.line_basis(l);
    Vec sum{};
    for (int i = 0; i < s.dim(); ++i) sum[i] = s.field().add(b[0][i], b[1][i]);
    Json rows = Json::array();
    for (const Vec& v : {b[1], sum}) {
      Json row = Json::array();
      for (int i = 0; i < s.dim(); ++i) row.push_back(v[i]);
      rows.push_back(row);
    }
    bases.push_back(rows);
  }
  Json j = {{"version", 1}, {"space", {{"family", "o6plus"}, {"p", 2}, {"h", 1}}}, {"bases", bases}};
  CHECK(lineset_from_json(j, s).lines == plane.lines);

  bases[0][1] = bases[0][0];  // degenerate
  j["bases"] = bases;
  CHECK_THROWS_AS(lineset_from_json(j, s), IoError);
}

TEST_CASE("line set file errors") {
  Json wrong = {{"version", 1}, {"space", {{"family", "o7"}, {"p", 3}, {"h", 1}}}, {"lines", {0}}};
  CHECK_THROWS_AS(lineset_from_json(wrong, oplus2()), IoError);
  Json bad_version = {{"version", 9}, {"space", {{"family", "o6plus"}, {"p", 2}, {"h", 1}}}, {"lines", {0}}};
  CHECK_THROWS_AS(lineset_from_json(bad_version, oplus2()), IoError);
  Json out_of_range = {{"version", 1}, {"space", {{"family", "o6plus"}, {"p", 2}, {"h", 1}}}, {"lines", {105}}};
  CHECK_THROWS_AS(lineset_from_json(out_of_range, oplus2()), IoError);
  Json neither = {{"version", 1}, {"space", {{"family", "o6plus"}, {"p", 2}, {"h", 1}}}};
  CHECK_THROWS_AS(lineset_from_json(neither, oplus2()), IoError);

  fs::path f = scratch_dir() / "malformed.json";
  std::ofstream(f) << "{\"version\": 1, ";
  CHECK_THROWS_AS(parse_lineset_file(f, oplus2()), IoError);
  CHECK_THROWS_AS(parse_lineset_file(scratch_dir() / "missing.json", oplus2()), IoError);
}

TEST_CASE("space cache round trip keeps every index") {
  for (auto [fam, q] : {std::pair{Family::O6plus, 2u}, std::pair{Family::U6, 4u}}) {
    PolarSpace s = PolarSpace::build(fam, q);
    fs::path dir = scratch_dir() / "cache";
    fs::remove_all(dir);
    PolarSpace built = cached_space({fam, q}, dir);
    PolarSpace loaded = cached_space({fam, q}, dir);
    REQUIRE(loaded.num_lines() == s.num_lines());
    REQUIRE(loaded.num_planes() == s.num_planes());
    for (int i = 0; i < s.num_points(); ++i) CHECK(loaded.point(i) == s.point(i));
    for (int i = 0; i < s.num_lines(); ++i) CHECK(loaded.line_basis(i) == s.line_basis(i));
    for (int i = 0; i < s.num_planes(); ++i) CHECK(loaded.plane_basis(i) == s.plane_basis(i));
    CHECK(loaded.fingerprint() == s.fingerprint());
  }
}

TEST_CASE("damaged cache entries are rebuilt") {
  fs::path dir = scratch_dir() / "damaged";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "o6plus_q2.v1.json") << "[]";
  PolarSpace s = cached_space({Family::O6plus, 2}, dir);
  CHECK(s.num_lines() == 105);
  CHECK_NOTHROW(load_space(dir / "o6plus_q2.v1.json"));

  Json j = space_to_json(s);
  j["format_version"] = 99;
  CHECK_THROWS_AS(space_from_json(j), IoError);
  j = space_to_json(s);
  j["lines"][0][0][5] = 1 - j["lines"][0][0][5].get<int>();
  CHECK_THROWS(space_from_json(j));
}

TEST_CASE("reports are exact and deterministic") {
  const PolarSpace& s = oplus2();
  LineScheme ls(s);
  LineSet gq = hyperplane_section_lines(s, find_section(s, SectionType::Quadrangle));
  Json r1 = eval_report(ls, gq), r2 = eval_report(ls, gq);
  CHECK(r1.dump() == r2.dump());
  CHECK(r1["size"] == 15);
  CHECK(r1["a"] == Json({"1", "0", "6", "0", "8"}));
  CHECK(r1["aQ"] == Json({"15", "0", "90", "0", "0"}));
  CHECK(r1["regular"]["verdict"] == "regular");
  CHECK(r1["regular"]["j"] == "V11");
  CHECK(r1["design"]["planes"]["design"] == true);

  SchemeTables t = make_tables({2, 0});
  Json tj = tables_json(t);
  CHECK(tj["multiplicities"] == Json({"1", "14", "20", "14", "56"}));
  CHECK(tj["P"][0] == Json({"1", "12", "12", "48", "32"}));
  std::string csv = tables_csv(t);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);

  Json lp = lp_json(delsarte_lp_bound({{2, 0}, parse_forbidden("R11,R21")}));
  CHECK(lp["optimum"] == "7");
  CHECK(lp["closed_form"] == "7");
}
