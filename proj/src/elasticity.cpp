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

#include "trimiga/elasticity.hpp"

#include <cmath>
#include <string>

#include "trimiga/error.hpp"

namespace trimiga {

void Material::validate() const {
  if (!(youngs_modulus > 0.0) || !std::isfinite(youngs_modulus))
    throw InvalidArgument("Young's modulus must be positive");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw InvalidArgument("Poisson's ratio must lie in [0, 0.5)");
}

Eigen::Matrix3d plane_stress_matrix(const Material& m) {
  m.validate();
  const double nu = m.poisson_ratio;
  const double c = m.youngs_modulus / (1.0 - nu * nu);
  Eigen::Matrix3d d;
  d << c, c * nu, 0.0, c * nu, c, 0.0, 0.0, 0.0, c * (1.0 - nu) / 2.0;
  return d;
}

ElasticState kirsch_reference(double x, double y, double far_stress, double hole_radius, const Material& m) {
  m.validate();
  if (!(far_stress > 0.0) || !(hole_radius > 0.0))
    throw InvalidArgument("far-field stress and hole radius must be positive");
  const double r = std::hypot(x, y);
  if (!(r >= hole_radius * (1.0 - 1e-12)))
    throw DomainError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") lies inside the hole");

  const double th = std::atan2(y, x);
  const double a2 = (hole_radius * hole_radius) / (r * r);
  const double a4 = a2 * a2;
  const double c2 = std::cos(2 * th), c4 = std::cos(4 * th);
  const double s2 = std::sin(2 * th), s4 = std::sin(4 * th);
  const double T = far_stress;

  ElasticState out;
  out.stress(0) = T * (1.0 - a2 * (1.5 * c2 + c4) + 1.5 * a4 * c4);
  out.stress(1) = T * (-a2 * (0.5 * c2 - c4) - 1.5 * a4 * c4);
  out.stress(2) = T * (-a2 * (0.5 * s2 + s4) + 1.5 * a4 * s4);

  // plane stress: kappa = (3 - nu) / (1 + nu)
  const double mu = m.shear_modulus();
  const double kappa = (3.0 - m.poisson_ratio) / (1.0 + m.poisson_ratio);
  const double a = hole_radius;
  const double f = T * a / (8.0 * mu);
  const double ct = std::cos(th), st = std::sin(th);
  const double c3 = std::cos(3 * th), s3 = std::sin(3 * th);
  const double ra = r / a, ar = a / r, ar3 = ar * ar * ar;
  out.displacement(0) = f * (ra * (kappa + 1.0) * ct + 2.0 * ar * ((1.0 + kappa) * ct + c3) - 2.0 * ar3 * c3);
  out.displacement(1) = f * (ra * (kappa - 3.0) * st + 2.0 * ar * ((1.0 - kappa) * st + s3) - 2.0 * ar3 * s3);
  return out;
}

}  // namespace trimiga
