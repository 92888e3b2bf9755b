#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rank3/constructions.hpp"

namespace rank3 {

struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000'000;
  double max_seconds = 3600;
  std::size_t max_results = 100000;
};

enum class SearchStatus { Complete, NodeLimit, TimeLimit, ResultCap };
std::string to_string(SearchStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0;
  SearchStatus status = SearchStatus::Complete;
  bool complete() const { return status == SearchStatus::Complete; }
};

struct SearchResult {
  std::vector<LineSet> sets;  // sorted
  SearchStats stats;
};

/// All Y of the given size with chi_Y in <j> + V_j (j = 1..4), by depth-first
/// search with per-vertex degree propagation. Sizes above n/2 are searched
/// through complements. Throws std::invalid_argument if the predicted
/// degrees are not nonnegative integers.
SearchResult enumerate_regular_sets(const LineScheme& ls, int j, const Integer& size, const SearchBudget& budget = {},
                                    unsigned threads = 1);

enum class ProbeVerdict { Witness, None, Unknown };
std::string to_string(ProbeVerdict v);

struct ProbeResult {
  ProbeVerdict verdict = ProbeVerdict::Unknown;
  std::optional<LineSet> witness;
  SearchStats stats;
};

/// Looks for one Y of the given size whose dual distribution vanishes
/// outside `support` (indices 1..4). "None" only after an exhausted search.
ProbeResult feasibility_probe(const LineScheme& ls, std::vector<int> support, const Integer& size,
                              const SearchBudget& budget = {}, unsigned threads = 1);

struct SpreadSearchResult {
  std::optional<LineSet> spread;
  SearchStats stats;
};

/// Exact cover of the points (of the section, if given) by lines (inside the
/// section). Throws std::invalid_argument unless q+1 divides the point count.
SpreadSearchResult line_spread_search(const PolarSpace& space, const std::optional<Section>& section = std::nullopt,
                                      const SearchBudget& budget = {});

struct PackingResult {
  std::vector<Section> candidates;  // every quadrangle section
  std::vector<int> chosen;          // indices into candidates
  LineSet lines;                    // union of the chosen sections' lines
  SearchStats stats;
  int size() const { return static_cast<int>(chosen.size()); }
};

/// O6plus only: a largest family of pairwise line-disjoint O(5,q) sections
/// (maximum clique with a greedy colouring bound).
PackingResult disjoint_section_packing(const PolarSpace& space, const SearchBudget& budget = {});

}  // namespace rank3
