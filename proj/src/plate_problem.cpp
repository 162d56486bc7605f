/*
  This file is part of trimiga, an analysis kernel for trimmed NURBS surfaces.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "trimiga/plate_problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trimiga/error.hpp"
#include "trimiga/iges.hpp"
#include "trimiga/native_format.hpp"

namespace trimiga {
namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

double max_span(const KnotVectord& kv) {
  double h = 0.0;
  const auto k = kv.knots();
  for (std::size_t i = 1; i < k.size(); ++i) h = std::max(h, k[i] - k[i - 1]);
  return h;
}

}  // namespace

PlateLoading parse_loading(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "paper") return PlateLoading::Paper;
  if (n == "exact") return PlateLoading::Exact;
  throw InvalidArgument("boundary condition mode must be 'paper' or 'exact', got '" + std::string(name) + "'");
}

PlateConfig parse_plate_config(std::string_view text, PlateConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = strip(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, 'C', "expected key = value");
    const std::string key = lower(strip(std::string_view(line).substr(0, eq)));
    const std::string value = strip(std::string_view(line).substr(eq + 1));
    auto number = [&]() {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty() || !std::isfinite(v))
        throw ParseError(line_no, 'C', "'" + key + "' needs a number, got '" + value + "'");
      return v;
    };
    auto integer = [&](int lo, int hi) {
      const double v = number();
      if (v != std::floor(v) || v < lo || v > hi)
        throw ParseError(line_no, 'C', "'" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
      return static_cast<int>(v);
    };
    if (key == "stage") {
      cfg.stage = integer(0, 8);
    } else if (key == "base_refinements") {
      cfg.base_refinements = integer(0, 8);
    } else if (key == "degree") {
      cfg.degree = integer(1, 6);
    } else if (key == "quadrature_order") {
      cfg.quadrature_order = integer(0, 64);
    } else if (key == "bc") {
      try {
        cfg.loading = parse_loading(value);
      } catch (const InvalidArgument& e) {
        throw ParseError(line_no, 'C', e.what());
      }
    } else if (key == "arc_weight") {
      const std::string v = lower(value);
      cfg.arc_weight = v == "printed" ? kPrintedArcWeight : v == "exact" ? kExactArcWeight : number();
    } else if (key == "scale") {
      cfg.scale = number();
    } else if (key == "hole_radius") {
      cfg.hole_radius = number();
    } else if (key == "far_stress") {
      cfg.far_stress = number();
    } else if (key == "youngs_modulus") {
      cfg.material.youngs_modulus = number();
    } else if (key == "poisson_ratio") {
      cfg.material.poisson_ratio = number();
    } else if (key == "geometry") {
      cfg.geometry = value;
    } else if (key == "trimmed_index") {
      cfg.trimmed_index = static_cast<std::size_t>(integer(0, 1 << 20));
    } else {
      throw ParseError(line_no, 'C', "unknown key '" + key + "'");
    }
  }
  return cfg;
}

PlateConfig load_plate_config(const std::string& path, PlateConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  PlateConfig cfg = parse_plate_config(ss.str(), std::move(base));
  // relative geometry paths are taken relative to the config file
  if (!cfg.geometry.empty() && cfg.geometry.front() != '/') {
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) cfg.geometry = path.substr(0, slash + 1) + cfg.geometry;
  }
  return cfg;
}

Region plate_region(const PlateConfig& config) {
  if (!(config.scale > 0.0)) throw InvalidArgument("scale must be positive");
  Region region;
  if (config.geometry.empty()) {
    region = make_plate_region(config.arc_weight, 1.0);
  } else {
    const std::string g = lower(config.geometry);
    if (ends_with(g, ".igs") || ends_with(g, ".iges"))
      region = extract_region(load_iges(config.geometry), config.trimmed_index);
    else
      region = load_native_region(config.geometry);
  }
  return scale_region(region, config.scale);
}

FieldSpace plate_field(const Region& region, const PlateConfig& config) {
  FieldSpace field = FieldSpace::conforming(region, config.degree, config.degree);
  for (int k = 0; k < config.base_refinements + config.stage; ++k) field = refine_field(field, RefinementKind::H);
  return field;
}

ElasticityProblem plate_problem(const Region& region, const FieldSpace& field, const PlateConfig& config) {
  ElasticityProblem problem;
  problem.geometry = std::make_shared<TrimmedGeometry>(region);
  problem.field = field;
  problem.material = config.material;
  problem.quadrature_order = config.quadrature_order;

  const double T = config.far_stress, a = config.hole_radius;
  const Material m = config.material;
  const PlateLoading loading = config.loading;
  const auto outer = [=](const Eigen::Vector2d& x, const Eigen::Vector2d& n) -> Eigen::Vector2d {
    const bool right_edge = n.x() > n.y();
    if (loading == PlateLoading::Paper && right_edge) return {T, 0.0};
    const Eigen::Vector3d s = kirsch_reference(x.x(), x.y(), T, a, m).stress;
    return {s(0) * n.x() + s(2) * n.y(), s(2) * n.x() + s(1) * n.y()};
  };
  problem.edges[static_cast<std::size_t>(Edge::S0)] = EdgeCondition::fix_x();
  problem.edges[static_cast<std::size_t>(Edge::S1)] = EdgeCondition::fix_y();
  problem.edges[static_cast<std::size_t>(Edge::T0)] = EdgeCondition::free();
  problem.edges[static_cast<std::size_t>(Edge::T1)] = EdgeCondition::load(outer);
  return problem;
}

PlateResult solve_plate(const PlateConfig& config) {
  const Region region = plate_region(config);
  const FieldSpace field = plate_field(region, config);
  const auto problem = plate_problem(region, field, config);
  const SolveResult sol = solve(problem);

  const double T = config.far_stress, a = config.hole_radius;
  const Material m = config.material;
  const StressFunction exact = [=](const Eigen::Vector2d& x) { return kirsch_reference(x.x(), x.y(), T, a, m).stress; };

  PlateResult r;
  r.stage = config.stage;
  r.dofs = sol.dofs();
  r.mesh_size = std::max(max_span(field.knots_s()), max_span(field.knots_t()));
  r.l2_stress_error = relative_stress_error(sol, exact, quadrature_order(problem) + 2);
  r.rim_stress = sol.stress(0.0, 0.0)(0);
  r.residual = sol.residual();
  return r;
}

std::vector<PlateResult> convergence_study(const PlateConfig& config, int last_stage) {
  std::vector<PlateResult> rows;
  for (int k = 0; k <= last_stage; ++k) {
    PlateConfig c = config;
    c.stage = k;
    rows.push_back(solve_plate(c));
  }
  return rows;
}

double convergence_rate(const PlateResult& coarse, const PlateResult& fine) {
  return std::log(coarse.l2_stress_error / fine.l2_stress_error) / std::log(coarse.mesh_size / fine.mesh_size);
}

std::string convergence_csv(const std::vector<PlateResult>& rows) {
  std::string out = "stage,dofs,L2_stress_error,rim_stress\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", r.stage, r.dofs, r.l2_stress_error, r.rim_stress);
    out += buf;
  }
  return out;
}

}  // namespace trimiga
