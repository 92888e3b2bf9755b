#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rank3/constructions.hpp"
#include "rank3/lp.hpp"
#include "rank3/search.hpp"

namespace rank3 {

using Json = nlohmann::ordered_json;

constexpr int kSpaceFormatVersion = 1;
constexpr int kLineSetVersion = 1;
constexpr int kReportVersion = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpaceId {
  Family family = Family::Sp6;
  unsigned q = 2;
};
/// "sp6_q2", "o6plus_q3", ...
SpaceId parse_space_name(const std::string& s);
std::string space_name(const SpaceId& id);

// ---------------------------------------------------------------- space cache

Json space_to_json(const PolarSpace& space);
/// Rebuilds through PolarSpace::from_bases; throws IoError on a version or
/// header mismatch.
PolarSpace space_from_json(const Json& j);
void save_space(const PolarSpace& space, const std::filesystem::path& path);
PolarSpace load_space(const std::filesystem::path& path);

/// Loads <dir>/<name>.v<version>.json, or builds and stores it. An empty dir
/// disables the cache.
PolarSpace cached_space(const SpaceId& id, const std::filesystem::path& dir);

// ---------------------------------------------------------------- line set files

Json lineset_to_json(const PolarSpace& space, const LineSet& y);
/// Accepts "lines" (indices) or "bases" (rows of field element codes, any
/// basis of the line). Throws IoError on a fingerprint mismatch, an unknown
/// line or a bad version.
LineSet lineset_from_json(const Json& j, const PolarSpace& space);
LineSet parse_lineset_file(const std::filesystem::path& path, const PolarSpace& space);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

// ---------------------------------------------------------------- reports

Json rational_json(const Rational& r);
Json distribution_json(const Distribution& a);
Json tables_json(const SchemeTables& t);
std::string tables_csv(const SchemeTables& t);
Json scheme_report_json(const SchemeReport& r);
/// The set evaluation report: size, a, aQ, support, regular verdict,
/// plane histogram, divisibility and design checks.
Json eval_report(const LineScheme& ls, const LineSet& y);
Json lp_json(const LPResult& r);
Json stats_json(const SearchStats& s);

}  // namespace rank3
