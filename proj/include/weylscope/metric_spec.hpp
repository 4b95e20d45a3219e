#pragma once

#include <string>
#include <vector>

#include "weylscope/chart.hpp"

namespace weylscope {

// Metric ingestion: a JSON document naming either a catalog entry or an
// expression matrix, plus the sampling box and sample points.
//
//   { "name": "...", "dim": 4,
//     "catalog": "s2xs2" }                       -- or --
//   { "dim": 4,
//     "g": [["1+x2^2","0",...], ...],
//     "box": [[-0.5,0.5], ...],
//     "sample_points": {"grid": 2} | [[...],...] }
struct MetricSpec {
  std::string name;
  int dim = 4;
  ChartMetric metric;
  std::vector<Vec> points;
};

MetricSpec parse_metric_spec(const std::string& json_text);
MetricSpec metric_spec_from_catalog(const std::string& key, int dim = 4);

// Grid of k points per axis over the inner 60% of the box (list of points
// in row-major order); k = 1 gives the center.
std::vector<Vec> sample_grid(const Box& box, int per_axis);

}  // namespace weylscope
