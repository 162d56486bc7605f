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

#ifndef TRIMIGA_PLATE_PROBLEM_HPP
#define TRIMIGA_PLATE_PROBLEM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "trimiga/plate_geometry.hpp"
#include "trimiga/plate_solver.hpp"

// Quarter of an infinite plate with a circular hole under uniaxial tension,
// compared against the closed-form solution.
//
// Edges by physical role: left (x = 0, s = 0) and bottom (y = 0, s = 1) are
// symmetry planes, hole is t = 0 and the outer boundary t = 1 consists of the
// top edge (s < 0.5) and the right edge (s > 0.5).

namespace trimiga {

enum class PlateLoading {
  Paper,  // uniform traction far_stress on the right edge, exact traction on top
  Exact,  // exact traction on both outer edges
};

struct PlateConfig {
  int stage = 0;             // uniform h-bisections on top of the base field
  /// Bisections of the coarsest conforming field that give the stage 0 field.
  /// The coarsest field has a single span per direction besides the C^0 split
  /// and lies outside the asymptotic range.
  int base_refinements = 2;
  int degree = 2;
  int quadrature_order = 0;  // 0: max degree + 1
  PlateLoading loading = PlateLoading::Paper;
  double arc_weight = kPrintedArcWeight;
  double scale = 5.0;        // applied to the surface control points
  double hole_radius = 1.0;
  double far_stress = 1.0;
  Material material;
  /// Native (.trim) or IGES (.igs/.iges) file; empty for the built-in plate.
  std::string geometry;
  std::size_t trimmed_index = 0;  // IGES only
};

/// key = value lines, '#' comments. Keys: stage, base_refinements, degree,
/// quadrature_order, bc (paper|exact), arc_weight (number, "printed" or
/// "exact"), scale, hole_radius, far_stress, youngs_modulus, poisson_ratio,
/// geometry, trimmed_index. Throws ParseError (section 'C') on unknown keys or bad
/// values.
PlateConfig parse_plate_config(std::string_view text, PlateConfig base = {});
PlateConfig load_plate_config(const std::string& path, PlateConfig base = {});

PlateLoading parse_loading(std::string_view name);

/// Region from the config (file or built-in), surface scaled.
Region plate_region(const PlateConfig& config);

/// Coarsest conforming field of the configured degree, bisected
/// base_refinements + stage times.
FieldSpace plate_field(const Region& region, const PlateConfig& config);

ElasticityProblem plate_problem(const Region& region, const FieldSpace& field, const PlateConfig& config);

struct PlateResult {
  int stage = 0;
  int dofs = 0;
  double mesh_size = 0.0;  // largest field knot span in s or t
  double l2_stress_error = 0.0;
  double rim_stress = 0.0;  // sxx at (s,t) = (0,0)
  double residual = 0.0;
};

PlateResult solve_plate(const PlateConfig& config);

/// Stages 0..last with every other setting from `config`.
std::vector<PlateResult> convergence_study(const PlateConfig& config, int last_stage);

/// log(e_prev / e) / log(h_prev / h).
double convergence_rate(const PlateResult& coarse, const PlateResult& fine);

/// Header "stage,dofs,L2_stress_error,rim_stress", reals with 17 digits.
std::string convergence_csv(const std::vector<PlateResult>& rows);

}  // namespace trimiga

#endif  // TRIMIGA_PLATE_PROBLEM_HPP
