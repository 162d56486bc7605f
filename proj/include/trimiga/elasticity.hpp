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

#ifndef TRIMIGA_ELASTICITY_HPP
#define TRIMIGA_ELASTICITY_HPP

#include <Eigen/Dense>

namespace trimiga {

/// Isotropic linear elastic material.
struct Material {
  double youngs_modulus = 1e5;
  double poisson_ratio = 0.3;

  /// Throws InvalidArgument unless E > 0 and 0 <= nu < 0.5.
  void validate() const;
  double shear_modulus() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
};

/// Plane-stress constitutive matrix mapping (exx, eyy, gxy) to (sxx, syy, sxy).
Eigen::Matrix3d plane_stress_matrix(const Material& m);

/// Stress (xx, yy, xy) and displacement of the closed-form solution.
struct ElasticState {
  Eigen::Vector3d stress = Eigen::Vector3d::Zero();
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();
};

/// Infinite plane-stress plate with a traction-free circular hole of radius
/// `hole_radius` centred at the origin, under uniaxial tension `far_stress`
/// along x. Throws DomainError for points inside the hole.
ElasticState kirsch_reference(double x, double y, double far_stress, double hole_radius, const Material& m);

/// Frobenius norm squared of the symmetric 2x2 tensor stored as (xx, yy, xy).
inline double stress_norm_squared(const Eigen::Vector3d& s) { return s(0) * s(0) + s(1) * s(1) + 2.0 * s(2) * s(2); }

}  // namespace trimiga

#endif  // TRIMIGA_ELASTICITY_HPP
