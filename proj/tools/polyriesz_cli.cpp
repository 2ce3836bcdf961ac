#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyriesz/errors.hpp"
#include "polyriesz/io.hpp"
#include "polyriesz/optimize.hpp"
#include "polyriesz/polyriesz.hpp"

namespace {

using nlohmann::json;
using namespace polyriesz;

struct GlobalOpts {
  std::string kernel = "riesz";
  double alpha = 1.0;
  double delta = 0.1;
  double quad_tol = 1e-8;
  std::string out;  // "json" or "csv"; empty means the subcommand default
  int threads = 1;
};

Kernel make_kernel(const GlobalOpts& g) {
  if (g.kernel == "riesz") return Kernel::riesz(g.alpha);
  if (g.kernel == "regularized_riesz") return Kernel::regularized_riesz(g.alpha, g.delta);
  throw UnsupportedInput("unknown kernel \"" + g.kernel +
                         "\" (expected riesz or regularized_riesz)");
}

QuadratureSpec make_quadrature(const GlobalOpts& g) {
  QuadratureSpec q;
  q.tolerance = g.quad_tol;
  q.validate();
  return q;
}

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw UnsupportedInput("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Polygon load_polygon(const std::string& path) {
  ParsedPolygon parsed = polygon_from_json(read_stream_or_file(path));
  if (parsed.reversed_input) {
    std::cerr << "warning: input vertices were clockwise; reversed to counterclockwise\n";
  }
  return parsed.polygon;
}

std::string pick_format(const GlobalOpts& g, const std::string& default_format) {
  std::string f = g.out.empty() ? default_format : g.out;
  if (f != "json" && f != "csv") throw UnsupportedInput("--out must be json or csv");
  return f;
}

void emit_estimate(const GlobalOpts& g, const std::string& key, const Estimate& e,
                   const json& extra = json::object()) {
  if (pick_format(g, "json") == "json") {
    json j = extra;
    j[key] = {{"value", e.value}, {"err", e.error}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << key << ",err\n"
              << format_scalar(e.value) << "," << format_scalar(e.error) << "\n";
  }
}

Constraint parse_constraint(const std::string& c) {
  if (c == "area") return Constraint::Area;
  if (c == "perimeter") return Constraint::Perimeter;
  if (c == "none") return Constraint::None;
  throw UnsupportedInput("unknown constraint \"" + c + "\"");
}

json polygon_json(const Polygon& p) { return json::parse(polygon_to_json(p)); }

int run(int argc, char** argv) {
  CLI::App app{"Nonlocal interaction energies of polygons"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--kernel", g.kernel, "Kernel type: riesz or regularized_riesz")
      ->capture_default_str();
  app.add_option("--alpha", g.alpha, "Kernel exponent in (0,2)")->capture_default_str();
  app.add_option("--delta", g.delta, "Regularization offset (regularized_riesz only)")
      ->capture_default_str();
  app.add_option("--quad-tol", g.quad_tol, "Relative quadrature tolerance")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output format: json or csv");
  app.add_option("--threads", g.threads, "Worker threads (results are identical for any count)")
      ->capture_default_str();

  std::string polygon_path;
  std::vector<double> at;
  std::string constraint = "area";
  double tol = 1e-6;
  std::string flow_json;
  double fd_step = 1e-3;
  int steps = 10;
  std::string shape = "triangle";
  double a0 = 1.0;
  int opt_n = 3;
  double opt_area = 1.0;
  unsigned long long opt_seed = 0;
  int opt_iters = 200;
  double opt_tol = 1e-10;
  std::string init_path;
  std::string trace_path;

  auto* c_energy = app.add_subcommand("energy", "E(P), the double integral of K over P x P");
  c_energy->add_option("polygon", polygon_path, "Polygon JSON file, or - for stdin")->required();

  auto* c_potential = app.add_subcommand("potential", "v_P(x) at a point");
  c_potential->add_option("polygon", polygon_path, "Polygon JSON file, or - for stdin")
      ->required();
  c_potential->add_option("--at", at, "Evaluation point x,y")
      ->required()
      ->delimiter(',')
      ->expected(2);

  auto* c_stat = app.add_subcommand("stationarity", "Side and vertex residual report");
  c_stat->add_option("polygon", polygon_path, "Polygon JSON file, or - for stdin")->required();
  c_stat->add_option("--constraint", constraint, "area or perimeter")->capture_default_str();
  c_stat->add_option("--tol", tol, "Residual tolerance")->capture_default_str();

  auto* c_var = app.add_subcommand("variation", "First variation along a flow, analytic and FD");
  c_var->add_option("polygon", polygon_path, "Polygon JSON file, or - for stdin")->required();
  c_var->add_option("--flow", flow_json, "Flow JSON, e.g. {\"family\":\"tilting\",\"side\":2}")
      ->required();
  c_var->add_option("--fd-step", fd_step, "Finite difference step")->capture_default_str();

  auto* c_symm = app.add_subcommand("symmetrize", "Repeated Steiner symmetrization run");
  c_symm->add_option("polygon", polygon_path, "Polygon JSON file, or - for stdin")->required();
  c_symm->add_option("--steps", steps, "Number of symmetrization steps")->capture_default_str();

  auto* c_ps = app.add_subcommand("polya-szego", "Scalar side-length recursions");
  c_ps->add_option("--shape", shape, "triangle or quadrilateral")->capture_default_str();
  c_ps->add_option("--a0", a0, "Starting value")->capture_default_str();
  c_ps->add_option("--steps", steps, "Number of steps")->capture_default_str();

  auto* c_opt = app.add_subcommand("optimize", "Maximize E over n-gons of fixed area");
  c_opt->add_option("--n", opt_n, "Number of vertices")->capture_default_str();
  c_opt->add_option("--area", opt_area, "Target area")->capture_default_str();
  c_opt->add_option("--seed", opt_seed, "Random start seed")->capture_default_str();
  c_opt->add_option("--iters", opt_iters, "Iteration budget")->capture_default_str();
  c_opt->add_option("--tol", opt_tol, "Relative gain convergence threshold")
      ->capture_default_str();
  c_opt->add_option("--init", init_path, "Starting polygon JSON file");
  c_opt->add_option("--trace", trace_path, "Write the iteration trace CSV here");

  // Global options may appear after the subcommand too.
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    throw;
  }

  ExecPolicy exec{g.threads};
  QuadratureSpec q = make_quadrature(g);

  if (c_energy->parsed()) {
    Polygon p = load_polygon(polygon_path);
    emit_estimate(g, "energy", energy(p, make_kernel(g), q, exec));
    return 0;
  }

  if (c_potential->parsed()) {
    Polygon p = load_polygon(polygon_path);
    Vec2 x{at[0], at[1]};
    emit_estimate(g, "potential", potential_at(p, make_kernel(g), x, q),
                  json{{"at", {x.x, x.y}}});
    return 0;
  }

  if (c_stat->parsed()) {
    Polygon p = load_polygon(polygon_path);
    StationarityReport r =
        check_stationarity(p, make_kernel(g), parse_constraint(constraint), tol, q, exec);
    if (pick_format(g, "json") == "json") {
      std::cout << report_to_json(r) << "\n";
    } else {
      std::cout << "i,mean,mean_err,sliding_area,sliding_area_err,sliding_perimeter,"
                   "sliding_perimeter_err,tilting_area,tilting_area_err,tilting_perimeter,"
                   "tilting_perimeter_err,sliding_ok,tilting_ok\n";
      for (size_t i = 0; i < r.sides.size(); ++i) {
        const SideResult& s = r.sides[i];
        std::cout << s.side + 1 << "," << format_scalar(s.mean.value) << ","
                  << format_scalar(s.mean.error) << "," << format_scalar(s.sliding_area.value)
                  << "," << format_scalar(s.sliding_area.error) << ","
                  << format_scalar(s.sliding_perimeter.value) << ","
                  << format_scalar(s.sliding_perimeter.error) << ","
                  << format_scalar(s.tilting_area.value) << ","
                  << format_scalar(s.tilting_area.error) << ","
                  << format_scalar(s.tilting_perimeter.value) << ","
                  << format_scalar(s.tilting_perimeter.error) << "," << (r.sliding_ok[i] ? 1 : 0)
                  << "," << (r.tilting_ok[i] ? 1 : 0) << "\n";
      }
      std::cout << "stationary," << (r.stationary ? 1 : 0) << "\n";
    }
    return 0;
  }

  if (c_var->parsed()) {
    Polygon p = load_polygon(polygon_path);
    Kernel k = make_kernel(g);
    FlowSpec spec = flow_from_json(flow_json);
    Estimate analytic = analytic_first_variation(p, k, spec, q);
    Estimate fd = fd_first_variation(p, k, spec, fd_step, q, exec);
    GeometryDerivatives ga = analytic_geometry_derivatives(p, spec);
    GeometryDerivatives gf = fd_geometry_derivatives(p, spec, fd_step);
    double tmax = max_flow_parameter(p, spec);
    if (pick_format(g, "json") == "json") {
      json j{{"flow", json::parse(flow_to_json(spec))},
             {"analytic", {{"value", analytic.value}, {"err", analytic.error}}},
             {"fd", {{"value", fd.value}, {"err", fd.error}}},
             {"d_area", {{"analytic", ga.d_area}, {"fd", gf.d_area}}},
             {"d_perimeter", {{"analytic", ga.d_perimeter}, {"fd", gf.d_perimeter}}},
             {"max_parameter", tmax}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "quantity,analytic,fd,err\n";
      std::cout << "dE," << format_scalar(analytic.value) << "," << format_scalar(fd.value)
                << "," << format_scalar(analytic.error + fd.error) << "\n";
      std::cout << "d_area," << format_scalar(ga.d_area) << "," << format_scalar(gf.d_area)
                << ",0\n";
      std::cout << "d_perimeter," << format_scalar(ga.d_perimeter) << ","
                << format_scalar(gf.d_perimeter) << ",0\n";
    }
    return 0;
  }

  if (c_symm->parsed()) {
    Polygon p = load_polygon(polygon_path);
    SymmetrizationResult r = symmetrization_run(p, make_kernel(g), steps, q, exec);
    if (pick_format(g, "csv") == "json") {
      json jsteps = json::array();
      for (const auto& s : r.steps) {
        jsteps.push_back({{"step", s.step},
                          {"direction", {s.direction.x, s.direction.y}},
                          {"polygon", polygon_json(s.shape)},
                          {"energy", {{"value", s.energy.value}, {"err", s.energy.error}}}});
      }
      json j{{"initial",
              {{"polygon", polygon_json(r.initial)},
               {"energy", {{"value", r.initial_energy.value}, {"err", r.initial_energy.error}}}}},
             {"steps", std::move(jsteps)}};
      std::cout << j.dump() << "\n";
    } else {
      int n = r.initial.size();
      std::cout << "step,direction_x,direction_y,energy,err";
      for (int i = 0; i < n; ++i) std::cout << ",v" << i << "_x,v" << i << "_y";
      std::cout << "\n";
      auto row = [&](int step, Vec2 dir, const Polygon& shape, const Estimate& e) {
        std::cout << step << "," << format_scalar(dir.x) << "," << format_scalar(dir.y) << ","
                  << format_scalar(e.value) << "," << format_scalar(e.error);
        for (const Vec2& v : shape.vertices()) {
          std::cout << "," << format_scalar(v.x) << "," << format_scalar(v.y);
        }
        std::cout << "\n";
      };
      row(0, {0.0, 0.0}, r.initial, r.initial_energy);
      for (const auto& s : r.steps) row(s.step, s.direction, s.shape, s.energy);
    }
    return 0;
  }

  if (c_ps->parsed()) {
    std::vector<double> seq;
    if (shape == "triangle") {
      seq = triangle_recursion(a0, steps);
    } else if (shape == "quadrilateral") {
      seq = quadrilateral_recursion(a0, steps);
    } else {
      throw UnsupportedInput("--shape must be triangle or quadrilateral");
    }
    if (pick_format(g, "csv") == "json") {
      std::cout << json{{"shape", shape}, {"sequence", seq}}.dump() << "\n";
    } else {
      std::cout << "step,a\n";
      for (size_t i = 0; i < seq.size(); ++i) {
        std::cout << i << "," << format_scalar(seq[i]) << "\n";
      }
    }
    return 0;
  }

  if (c_opt->parsed()) {
    Kernel k = make_kernel(g);
    OptimizeOptions opts;
    opts.max_iterations = opt_iters;
    opts.seed = opt_seed;
    opts.tolerance = opt_tol;
    if (!init_path.empty()) opts.init = load_polygon(init_path);
    OptimizeResult r = maximize_energy(opt_n, opt_area, k, opts, q, exec);
    auto trace_csv = [&](std::ostream& os) {
      os << "iteration,energy,error_bound,grad_norm,max_side_dev,max_angle_dev\n";
      for (const TraceRow& t : r.trace) {
        os << t.iteration << "," << format_scalar(t.energy) << ","
           << format_scalar(t.error_bound) << "," << format_scalar(t.grad_norm) << ","
           << format_scalar(t.max_side_dev) << "," << format_scalar(t.max_angle_dev) << "\n";
      }
    };
    if (!trace_path.empty()) {
      std::ofstream f(trace_path);
      if (!f) throw UnsupportedInput("cannot open \"" + trace_path + "\" for writing");
      trace_csv(f);
    }
    if (pick_format(g, "json") == "json") {
      json j{{"shape", polygon_json(r.shape)},
             {"energy", {{"value", r.energy.value}, {"err", r.energy.error}}},
             {"iterations", r.iterations},
             {"converged", r.converged}};
      std::cout << j.dump() << "\n";
    } else {
      trace_csv(std::cout);
    }
    return 0;
  }

  return 0;
}

std::string one_line(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

int fail(int code, const char* kind, const std::string& message) {
  json j{{"error", {{"kind", kind}, {"message", one_line(message)}, {"code", code}}}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  } catch (const UnsupportedInput& e) {
    return fail(2, "unsupported_input", e.what());
  } catch (const std::range_error& e) {
    return fail(2, "out_of_range", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(2, "unsupported_input", e.what());
  } catch (const AccuracyError& e) {
    return fail(3, "accuracy", std::string(e.what()) + " (estimate " +
                                   polyriesz::format_scalar(e.estimate()) + ", bound " +
                                   polyriesz::format_scalar(e.error_bound()) + ")");
  } catch (const OptimizationError& e) {
    return fail(4, "optimization", e.what());
  } catch (const std::exception& e) {
    return fail(5, "internal", e.what());
  }
}
