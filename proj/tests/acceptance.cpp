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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "iges_fuzz.hpp"
#include "support.hpp"
#include "trimiga/cli.hpp"
#include "trimiga/error.hpp"
#include "trimiga/iges.hpp"
#include "trimiga/plate_geometry.hpp"
#include "trimiga/plate_problem.hpp"
#include "trimiga/plate_solver.hpp"
#include "trimiga/quadrature.hpp"

using namespace trimiga;
using namespace trimiga::test;

namespace {

using V2 = Eigen::Vector2d;
using V3 = Eigen::Vector3d;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("%s %d %s: %s; %.3f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              budget_s, in_time ? "" : " over time");
  std::fflush(stdout);
}

V3 x_of(const Region& r, double s, double t) { return composite_eval(r, s, t, 0).x; }

Verdict map_fidelity() {
  const Region r = make_plate_region();
  const struct {
    double s, t;
    V2 uv;
  } corners[] = {{0, 0, {0, 0.2}}, {1, 0, {0.2, 0}}, {0, 1, {0, 1}}, {1, 1, {1, 0}}};
  double worst = 0.0;
  for (const auto& c : corners) worst = std::max(worst, (map_point(r, c.s, c.t).uv - c.uv).norm());
  return {worst <= 1e-12, fmt("max corner deviation %.3g (tol 1e-12)", worst)};
}

Verdict derivative_oracle() {
  const Region r = make_plate_region();
  double first = 0.0, second = 0.0;
  for (int k = 0; k < 200; ++k) {
    double s = 0.5;
    while (std::abs(s - 0.5) < 1e-3) s = uniform(1e-3, 1 - 1e-3);
    const double t = uniform(1e-3, 1 - 1e-3);
    const auto c = composite_eval(r, s, t, 2);

    const double h1 = 1e-6;
    Eigen::Matrix<double, 6, 1> d1, d1_fd;
    d1 << c.dx_ds, c.dx_dt;
    d1_fd << (x_of(r, s + h1, t) - x_of(r, s - h1, t)) / (2 * h1), (x_of(r, s, t + h1) - x_of(r, s, t - h1)) / (2 * h1);
    first = std::max(first, (d1 - d1_fd).norm() / d1.norm());

    const double h = 1e-4;
    const V3 x0 = x_of(r, s, t);
    Eigen::Matrix<double, 9, 1> d2, d2_fd;
    d2 << c.d2x_ds2, c.d2x_dsdt, c.d2x_dt2;
    d2_fd << (x_of(r, s + h, t) - 2 * x0 + x_of(r, s - h, t)) / (h * h),
        (x_of(r, s + h, t + h) - x_of(r, s + h, t - h) - x_of(r, s - h, t + h) + x_of(r, s - h, t - h)) / (4 * h * h),
        (x_of(r, s, t + h) - 2 * x0 + x_of(r, s, t - h)) / (h * h);
    second = std::max(second, (d2 - d2_fd).norm() / d2.norm());
  }
  return {first < 1e-7 && second < 1e-5,
          fmt("200 points, first %.3g (tol 1e-7), second %.3g (tol 1e-5)", first, second)};
}

Verdict area_integral() {
  const Region r = make_plate_region(kExactArcWeight);
  const auto one = [](const CompositeDerivatives<double>&) { return 1.0; };
  const double exact = 1.0 - 0.01 * std::numbers::pi;
  const double split = std::abs(integrate(r, one, 16) - exact);
  const std::vector<IntegrationRegion> whole{IntegrationRegion{}};
  const double unsplit = std::abs(integrate(r, one, 16, whole) - exact);
  // "measurably worse": two orders of magnitude
  return {split < 1e-8 && unsplit > 100 * split,
          fmt("error with split %.3g (tol 1e-8), without %.3g", split, unsplit)};
}

Verdict patch_test() {
  // plate topology with a polynomial lower curve, so that x(s,t) is in the
  // degree-2 field space
  const Region r = make_plate_region(1.0, 5.0);
  const FieldSpace f = FieldSpace::conforming(r, 2, 2);
  const double a = 2e-5, d = -7e-6;
  ElasticityProblem p{std::make_shared<TrimmedGeometry>(r), f, Material{}, {}, 0};
  const V3 sigma = plane_stress_matrix(p.material) * V3(a, d, 0);
  const auto load = EdgeCondition::load([sigma](const V2&, const V2& n) {
    return V2(sigma(0) * n.x() + sigma(2) * n.y(), sigma(2) * n.x() + sigma(1) * n.y());
  });
  p.edges[int(Edge::S0)] = EdgeCondition::fix_x();
  p.edges[int(Edge::S1)] = EdgeCondition::fix_y();
  p.edges[int(Edge::T0)] = load;
  p.edges[int(Edge::T1)] = load;
  const auto lin = solve(p);
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double s = uniform(), t = uniform();
    const V3 x = x_of(r, s, t);
    const V2 exact(a * x.x(), d * x.y());
    worst = std::max(worst, (lin.displacement(s, t) - exact).norm());
    scale = std::max(scale, exact.norm());
  }
  const double lin_err = worst / scale;

  const Region sq = make_identity_region(make_square_surface());
  ElasticityProblem q{std::make_shared<TrimmedGeometry>(sq), refine_field(FieldSpace::conforming(sq, 2, 2), RefinementKind::H),
                      Material{}, {}, 0};
  q.edges[int(Edge::S0)] = EdgeCondition::fix_x();
  q.edges[int(Edge::T0)] = EdgeCondition::fix_y();
  q.edges[int(Edge::S1)] = EdgeCondition::load([](const V2&, const V2& n) { return V2(n.x(), 0.0); });
  const auto cst = solve(q);
  double stress_err = 0.0;
  for (int k = 0; k < 400; ++k) {
    const V3 s = cst.stress(uniform(), uniform());
    stress_err = std::max({stress_err, std::abs(s(0) - 1), std::abs(s(1)), std::abs(s(2))});
  }
  return {lin_err < 1e-10 && stress_err < 1e-10,
          fmt("linear field rel. error %.3g, constant stress error %.3g (tol 1e-10)", lin_err, stress_err)};
}

Verdict equivalence() {
  const Surface3d srf = make_square_surface(5.0);
  const Region r = make_identity_region(srf);
  const FieldSpace f = refine_field(refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H), RefinementKind::H);
  const Material m;
  auto problem = [&](std::shared_ptr<const Geometry> g) {
    ElasticityProblem p{std::move(g), f, m, {}, 0};
    p.edges[int(Edge::S0)] = EdgeCondition::fix_x();
    p.edges[int(Edge::T0)] = EdgeCondition::fix_y();
    // Kirsch tractions on the outer edges of a 5 x 5 quarter, no hole
    const auto kirsch = EdgeCondition::load([m](const V2& x, const V2& n) {
      const V3 s = kirsch_reference(x.x(), x.y(), 1.0, 1.0, m).stress;
      return V2(s(0) * n.x() + s(2) * n.y(), s(2) * n.x() + s(1) * n.y());
    });
    p.edges[int(Edge::S1)] = kirsch;
    p.edges[int(Edge::T1)] = kirsch;
    return p;
  };
  const auto a = solve(problem(std::make_shared<TrimmedGeometry>(r)));
  const auto b = solve(problem(std::make_shared<SurfaceGeometry>(srf)));
  const double diff = (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff();
  const double ref = b.coefficients().cwiseAbs().maxCoeff();
  return {diff <= 1e-10 * ref, fmt("%d coefficients, max difference %.3g, relative %.3g (tol 1e-10)", a.dofs(), diff,
                                   diff / ref)};
}

Verdict convergence() {
  std::ostringstream out, err;
  const int code = cli::run({"plate", "--config", TRIMIGA_DATA_DIR "/plate.cfg", "--bc", "exact", "--stage", "0..2"},
                            out, err);
  if (code != 0) return {false, "plate command failed: " + err.str()};
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  if (line != "stage,dofs,L2_stress_error,rim_stress") return {false, "unexpected header " + line};
  std::vector<double> e, rim;
  std::vector<int> dofs;
  while (std::getline(in, line)) {
    int stage = 0, n = 0;
    double err_l2 = 0.0, sxx = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &stage, &n, &err_l2, &sxx) != 4) return {false, "bad row " + line};
    dofs.push_back(n);
    e.push_back(err_l2);
    rim.push_back(sxx);
  }
  if (e.size() != 3) return {false, "expected 3 stages"};
  const bool decreasing = e[1] < e[0] && e[2] < e[1];
  // each stage halves every knot span
  const double rate = std::log(e[1] / e[2]) / std::log(2.0);
  const double rim_dev = std::abs(rim[2] - 3.0) / 3.0;
  return {decreasing && rate >= 1.5 && rim_dev <= 0.02,
          fmt("dofs %d/%d/%d, errors %.4g/%.4g/%.4g, last rate %.3f (min 1.5), rim %.4f (%.2f%% off 3, max 2%%)",
              dofs[0], dofs[1], dofs[2], e[0], e[1], e[2], rate, rim[2], 100 * rim_dev)};
}

Verdict iges_round_trip() {
  const Region r = make_plate_region();
  const std::string text = export_iges(r);
  const Region back = extract_region(parse_iges(text), 0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = uniform(), v = uniform(), s = uniform();
    worst = std::max(worst, (back.surface().evaluate(u, v, 0).value - r.surface().evaluate(u, v, 0).value).norm());
    worst = std::max(worst, (back.curve_bottom()(s) - r.curve_bottom()(s)).norm());
    worst = std::max(worst, (back.curve_top()(s) - r.curve_top()(s)).norm());
  }
  const auto corpus = fuzz_corpus(text);
  int structured = 0, other = 0;
  for (const auto& t : corpus) {
    const auto o = run_pipeline(t);
    structured += o == Outcome::Structured;
    other += o == Outcome::Other;
  }
  return {worst <= 1e-9 && structured >= 50 && other == 0,
          fmt("max evaluation difference %.3g (tol 1e-9); fuzz %zu cases, %d structured errors, %d other failures",
              worst, corpus.size(), structured, other)};
}

Verdict region_validation() {
  const Region good = make_plate_region();
  const Region folded(good.surface(), good.curve_bottom(), good.curve_top().reversed());
  const auto ok = validate_region(good, 32);
  const auto bad = validate_region(folded, 32);
  bool reported = false;
  for (const auto& m : bad.messages) reported |= m.find("sign") != std::string::npos;
  return {ok.valid() && !bad.valid() && bad.sign_change && reported,
          fmt("plate valid %s, folded region sign change %s (%d positive, %d negative nodes)", ok.valid() ? "yes" : "no",
              bad.sign_change ? "reported" : "missed", bad.positive, bad.negative)};
}

}  // namespace

int main() {
  criterion(1, "map fidelity", 1, map_fidelity);
  criterion(2, "derivative oracle", 5, derivative_oracle);
  criterion(3, "area integral", 1, area_integral);
  criterion(4, "patch test", 10, patch_test);
  criterion(5, "trimmed/untrimmed equivalence", 10, equivalence);
  criterion(6, "convergence study", 120, convergence);
  criterion(7, "IGES round trip", 30, iges_round_trip);
  criterion(8, "region validation", 5, region_validation);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
