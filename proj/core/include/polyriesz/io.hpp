#ifndef POLYRIESZ_IO_HPP
#define POLYRIESZ_IO_HPP

#include <string>

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/stationarity.hpp"
#include "polyriesz/variation.hpp"

namespace polyriesz {

// 17 significant digits; round-trips any double.
std::string format_scalar(double x);

struct ParsedPolygon {
  Polygon polygon;
  bool reversed_input;  // vertices arrived clockwise and were reversed
};

// {"vertices": [[x, y], ...]}
ParsedPolygon polygon_from_json(const std::string& text);
std::string polygon_to_json(const Polygon& p);

// {"type": "riesz", "alpha": a} or
// {"type": "regularized_riesz", "alpha": a, "delta": d}
Kernel kernel_from_json(const std::string& text);
std::string kernel_to_json(const Kernel& k);

// {"family": "sliding"|"tilting", "side": i} with 1-based i,
// {"family": "diagonal", "vertex": i}, or
// {"family": "two_sided", "diagonal": i, "beta_plus": b, "beta_minus": b}.
// Optional "constraint": "none"|"area"|"perimeter" (default none).
FlowSpec flow_from_json(const std::string& text);
std::string flow_to_json(const FlowSpec& spec);

std::string report_to_json(const StationarityReport& r);

}  // namespace polyriesz

#endif
