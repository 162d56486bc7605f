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

#include "trimiga/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trimiga/error.hpp"
#include "trimiga/parallel.hpp"

namespace trimiga {
namespace {

std::vector<double> merged_lines(std::vector<double> lines) {
  lines.push_back(0.0);
  lines.push_back(1.0);
  std::sort(lines.begin(), lines.end());
  std::vector<double> out;
  for (double v : lines) {
    if (v < 0.0 || v > 1.0) continue;
    if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
  }
  // keep the exact end points
  out.front() = 0.0;
  if (out.back() < 1.0 - 1e-12)
    out.push_back(1.0);
  else
    out.back() = 1.0;
  return out;
}

std::vector<double> breakpoint_lines(const Region& region) {
  std::vector<double> lines;
  for (const auto& bp : breakpoints(region)) lines.push_back(bp.s);
  return lines;
}

}  // namespace

GaussRule gauss_points_1d(int n) {
  if (n < 1 || n > 64) throw InvalidArgument("Gauss rule size must be in [1, 64], got " + std::to_string(n));
  GaussRule rule;
  rule.points.assign(static_cast<std::size_t>(n), 0.5);
  rule.weights.assign(static_cast<std::size_t>(n), 1.0);
  if (n == 1) return rule;

  // Legendre P_n and P_n' at x by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };

  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // half the [-1,1] weight
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = 0.5 * (1.0 - x);
    rule.points[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

std::vector<QuadraturePoint> tensor_rule(const IntegrationRegion& cell, int n_s, int n_t) {
  const auto gs = gauss_points_1d(n_s);
  const auto gt = gauss_points_1d(n_t);
  const double ls = cell.s1 - cell.s0, lt = cell.t1 - cell.t0;
  std::vector<QuadraturePoint> out;
  out.reserve(gs.points.size() * gt.points.size());
  for (std::size_t j = 0; j < gt.points.size(); ++j)
    for (std::size_t i = 0; i < gs.points.size(); ++i)
      out.push_back({cell.s0 + ls * gs.points[i], cell.t0 + lt * gt.points[j], ls * lt * gs.weights[i] * gt.weights[j]});
  return out;
}

std::vector<IntegrationRegion> grid_regions(std::vector<double> s_lines, std::vector<double> t_lines) {
  const auto s = merged_lines(std::move(s_lines));
  const auto t = merged_lines(std::move(t_lines));
  std::vector<IntegrationRegion> out;
  for (std::size_t j = 0; j + 1 < t.size(); ++j)
    for (std::size_t i = 0; i + 1 < s.size(); ++i) out.push_back({s[i], s[i + 1], t[j], t[j + 1]});
  return out;
}

std::vector<IntegrationRegion> partition_regions(const Region& region) {
  return grid_regions(breakpoint_lines(region), {});
}

std::vector<IntegrationRegion> partition_regions(const Region& region, const FieldSpace& field) {
  auto s_lines = breakpoint_lines(region);
  for (const auto& [k, m] : field.knots_s().interior_knots()) s_lines.push_back(k);
  std::vector<double> t_lines;
  for (const auto& [k, m] : field.knots_t().interior_knots()) t_lines.push_back(k);
  return grid_regions(std::move(s_lines), std::move(t_lines));
}

int default_quadrature_order(const Region& region, const FieldSpace& field) {
  return std::max({region.max_degree(), field.degree_s(), field.degree_t()}) + 1;
}

double integrate(const Region& region, const Integrand& f, int n_per_dir, std::span<const IntegrationRegion> cells) {
  if (n_per_dir < 1) throw InvalidArgument("quadrature order must be at least 1");
  std::vector<double> partial(cells.size(), 0.0);
  parallel_for(cells.size(), [&](std::size_t c) {
    const auto rule = tensor_rule(cells[c], n_per_dir, n_per_dir);
    std::vector<double> terms;
    terms.reserve(rule.size());
    for (const auto& q : rule) {
      const auto cd = composite_eval(region, q.s, q.t, 1);
      terms.push_back(q.weight * f(cd) * cd.jacobian_scale);
    }
    partial[c] = pairwise_sum(terms);
  });
  return pairwise_sum(partial);
}

double integrate(const Region& region, const Integrand& f, int n_per_dir) {
  const auto cells = partition_regions(region);
  return integrate(region, f, n_per_dir, cells);
}

}  // namespace trimiga
