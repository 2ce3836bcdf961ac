#include "polyriesz/io.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "polyriesz/errors.hpp"

namespace polyriesz {

using nlohmann::json;

std::string format_scalar(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UnsupportedInput(std::string(what) + ": " + e.what());
  }
}

double number_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw UnsupportedInput(std::string(what) + " needs a numeric \"" + key + "\"");
  }
  return j[key].get<double>();
}

int index_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw UnsupportedInput(std::string(what) + " needs an integer \"" + key + "\"");
  }
  int i = j[key].get<int>();
  if (i < 1) throw UnsupportedInput(std::string("\"") + key + "\" is 1-based; got " +
                                    std::to_string(i));
  return i - 1;
}

json estimate_json(const Estimate& e) {
  return json{{"value", e.value}, {"err", e.error}};
}

}  // namespace

ParsedPolygon polygon_from_json(const std::string& text) {
  json j = parse(text, "polygon");
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw UnsupportedInput("polygon needs a \"vertices\" array");
  }
  std::vector<Vec2> v;
  for (const auto& item : j["vertices"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw UnsupportedInput("each vertex must be a [x, y] pair of numbers");
    }
    v.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  if (v.size() < 3) throw UnsupportedInput("polygon needs at least 3 vertices");
  double twice_area = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    twice_area += cross(v[i], v[(i + 1) % v.size()]);
  }
  bool reversed = twice_area < 0.0;
  if (reversed) std::reverse(v.begin(), v.end());
  return {Polygon(std::move(v)), reversed};
}

std::string polygon_to_json(const Polygon& p) {
  json verts = json::array();
  for (const Vec2& v : p.vertices()) verts.push_back(json::array({v.x, v.y}));
  return json{{"vertices", verts}}.dump();
}

Kernel kernel_from_json(const std::string& text) {
  json j = parse(text, "kernel");
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw UnsupportedInput("kernel needs a \"type\" string");
  }
  std::string type = j["type"].get<std::string>();
  if (type == "riesz") return Kernel::riesz(number_field(j, "alpha", "riesz kernel"));
  if (type == "regularized_riesz") {
    return Kernel::regularized_riesz(number_field(j, "alpha", "regularized kernel"),
                                     number_field(j, "delta", "regularized kernel"));
  }
  throw UnsupportedInput("unknown kernel type \"" + type + "\"");
}

std::string kernel_to_json(const Kernel& k) {
  switch (k.kind()) {
    case Kernel::Kind::Riesz:
      return json{{"type", "riesz"}, {"alpha", k.alpha()}}.dump();
    case Kernel::Kind::RegularizedRiesz:
      return json{{"type", "regularized_riesz"}, {"alpha", k.alpha()}, {"delta", k.delta()}}
          .dump();
    case Kernel::Kind::Custom:
      break;
  }
  throw UnsupportedInput("custom kernels have no wire format");
}

FlowSpec flow_from_json(const std::string& text) {
  json j = parse(text, "flow");
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw UnsupportedInput("flow needs a \"family\" string");
  }
  std::string family = j["family"].get<std::string>();
  FlowSpec spec;
  if (family == "sliding" || family == "tilting") {
    spec.family =
        family == "sliding" ? FlowSpec::Family::Sliding : FlowSpec::Family::Tilting;
    spec.index = index_field(j, "side", "flow");
  } else if (family == "diagonal") {
    spec.family = FlowSpec::Family::DiagonalVertex;
    spec.index = index_field(j, "vertex", "flow");
  } else if (family == "two_sided") {
    spec.family = FlowSpec::Family::QuadTwoSided;
    spec.diagonal = index_field(j, "diagonal", "flow");
    spec.beta_plus = number_field(j, "beta_plus", "two-sided flow");
    spec.beta_minus = number_field(j, "beta_minus", "two-sided flow");
  } else {
    throw UnsupportedInput("unknown flow family \"" + family + "\"");
  }
  if (j.contains("constraint")) {
    if (!j["constraint"].is_string()) throw UnsupportedInput("\"constraint\" must be a string");
    std::string c = j["constraint"].get<std::string>();
    if (c == "none") spec.constraint = Constraint::None;
    else if (c == "area") spec.constraint = Constraint::Area;
    else if (c == "perimeter") spec.constraint = Constraint::Perimeter;
    else throw UnsupportedInput("unknown constraint \"" + c + "\"");
  }
  return spec;
}

std::string flow_to_json(const FlowSpec& spec) {
  json j;
  switch (spec.family) {
    case FlowSpec::Family::Sliding:
      j["family"] = "sliding";
      j["side"] = spec.index + 1;
      break;
    case FlowSpec::Family::Tilting:
      j["family"] = "tilting";
      j["side"] = spec.index + 1;
      break;
    case FlowSpec::Family::DiagonalVertex:
      j["family"] = "diagonal";
      j["vertex"] = spec.index + 1;
      break;
    case FlowSpec::Family::QuadTwoSided:
      j["family"] = "two_sided";
      j["diagonal"] = spec.diagonal + 1;
      j["beta_plus"] = spec.beta_plus;
      j["beta_minus"] = spec.beta_minus;
      break;
  }
  switch (spec.constraint) {
    case Constraint::None: j["constraint"] = "none"; break;
    case Constraint::Area: j["constraint"] = "area"; break;
    case Constraint::Perimeter: j["constraint"] = "perimeter"; break;
  }
  return j.dump();
}

std::string report_to_json(const StationarityReport& r) {
  json j;
  switch (r.constraint) {
    case Constraint::None: j["constraint"] = "none"; break;
    case Constraint::Area: j["constraint"] = "area"; break;
    case Constraint::Perimeter: j["constraint"] = "perimeter"; break;
  }
  j["tolerance"] = r.tolerance;
  j["sigma"] = estimate_json(r.sigma);
  json sides = json::array();
  for (size_t i = 0; i < r.sides.size(); ++i) {
    const SideResult& s = r.sides[i];
    json row{{"i", s.side + 1},
             {"mean", estimate_json(s.mean)},
             {"sliding_area", estimate_json(s.sliding_area)},
             {"sliding_perimeter", estimate_json(s.sliding_perimeter)},
             {"tilting_area", estimate_json(s.tilting_area)},
             {"tilting_perimeter", estimate_json(s.tilting_perimeter)},
             {"sliding_ok", static_cast<bool>(r.sliding_ok[i])},
             {"tilting_ok", static_cast<bool>(r.tilting_ok[i])}};
    sides.push_back(std::move(row));
  }
  j["sides"] = std::move(sides);
  json vertices = json::array();
  for (const VertexResult& v : r.vertices) {
    json row{{"i", v.vertex + 1}, {"convex", v.convex}};
    if (v.convex) {
      row["diagonal_variation"] = estimate_json(v.diagonal_variation);
    } else {
      row["diagonal_variation"] = nullptr;
    }
    vertices.push_back(std::move(row));
  }
  j["vertices"] = std::move(vertices);
  j["verdict"] = json{{"stationary", r.stationary}};
  return j.dump();
}

}  // namespace polyriesz
