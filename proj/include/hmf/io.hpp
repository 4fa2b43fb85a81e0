#pragma once

// JSON and CSV forms of library objects.  Multivectors are written as text
// ("1 + 2*e1 - e12") plus a blade -> coefficient map.

#include "hmf/congruence.hpp"
#include "hmf/series.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hmf {

using ojson = nlohmann::ordered_json;

ojson to_json(const MultivectorF& a);
ojson to_json(const VahlenZ& m);
ojson to_json(const CosetRep& rep);
ojson to_json(const SeriesResult& r);

struct EvaluatedPoint {
  std::vector<double> x;
  std::vector<double> y;  // biregular only
  SeriesResult result;
};

ojson to_json(const EvaluatedPoint& e);

// One row per point: x_1..x_n[, y_1..y_n], then one column per blade that is
// nonzero in any row.
std::string series_csv(const std::vector<EvaluatedPoint>& rows, int n);

std::string cosets_csv(const std::vector<CosetRep>& reps);

// Reads points, one per line, components separated by commas or blanks;
// '#' starts a comment.
std::vector<std::vector<double>> parse_points(const std::string& text);

}  // namespace hmf
