#pragma once

#include <string>
#include <vector>

#include "epgmatch/matching.hpp"
#include "epgmatch/pareto_grid.hpp"
#include "epgmatch/special_set.hpp"

namespace epgmatch {

// All serializers are deterministic: fixed key order, shortest round-trip
// number formatting, death printed as "inf" for essential classes.

std::string diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams);
std::string diagrams_to_csv(const std::vector<PersistenceDiagram>& diagrams);

std::string matching_result_to_json(const MatchingResult& result, bool include_log = true);

std::string special_values_to_csv(const std::vector<SpecialValue>& values,
                                  const std::vector<Contour>& contours);

// Contour file: {"owner": ..., "contours":[{id, kind, points|anchor}...]}
// kind: "proper" | "vertical-improper" | "horizontal-improper".
std::string contours_to_json(const ExtendedParetoGrid& grid);
ExtendedParetoGrid contours_from_json(const std::string& text);
ExtendedParetoGrid load_contours(const std::string& path);
void save_contours(const ExtendedParetoGrid& grid, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace epgmatch
