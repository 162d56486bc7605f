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

#ifndef TRIMIGA_QUADRATURE_HPP
#define TRIMIGA_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "trimiga/field_space.hpp"
#include "trimiga/trim_map.hpp"

namespace trimiga {

/// Gauss-Legendre abscissae and weights on [0,1].
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n in [1, 64]; exact for polynomials of degree 2n - 1.
GaussRule gauss_points_1d(int n);

/// Axis-aligned cell [s0,s1] x [t0,t1] of the (s,t) square.
struct IntegrationRegion {
  double s0 = 0.0, s1 = 1.0;
  double t0 = 0.0, t1 = 1.0;

  double area() const { return (s1 - s0) * (t1 - t0); }
};

struct QuadraturePoint {
  double s, t, weight;
};

/// Tensor Gauss rule with n_s x n_t points over one cell.
std::vector<QuadraturePoint> tensor_rule(const IntegrationRegion& cell, int n_s, int n_t);

/// Cells bounded by the given lines (0 and 1 are added; values closer than
/// 1e-12 are merged).
std::vector<IntegrationRegion> grid_regions(std::vector<double> s_lines, std::vector<double> t_lines);

/// Split at the trimming-curve breakpoints only (lines in s).
std::vector<IntegrationRegion> partition_regions(const Region& region);

/// Split at the breakpoints and every interior knot line of the field space.
std::vector<IntegrationRegion> partition_regions(const Region& region, const FieldSpace& field);

/// (p_max + 1) points per direction, p_max the highest degree among the
/// surface, the trimming curves and the field space.
int default_quadrature_order(const Region& region, const FieldSpace& field);

using Integrand = std::function<double(const CompositeDerivatives<double>&)>;

/// Sum over cells of the Gauss-weighted f * jacobian_scale, with
/// n_per_dir points per direction in each cell. Cells are evaluated in
/// parallel and reduced pairwise in cell order.
double integrate(const Region& region, const Integrand& f, int n_per_dir,
                 std::span<const IntegrationRegion> cells);

/// Same, over partition_regions(region).
double integrate(const Region& region, const Integrand& f, int n_per_dir);

}  // namespace trimiga

#endif  // TRIMIGA_QUADRATURE_HPP
