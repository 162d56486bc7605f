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

#ifndef TRIMIGA_PLATE_GEOMETRY_HPP
#define TRIMIGA_PLATE_GEOMETRY_HPP

#include <cmath>

#include "trimiga/trim_map.hpp"

// Quarter plate with a circular hole at the origin corner:
//  - bilinear surface over [0,size]^2
//  - bottom curve: rational quadratic quarter arc (0,0.2) -> (0.2,0) in (u,v)
//  - top curve: degree-1 polyline (0,1) -> (1,1) -> (1,0), C^0 at s = 0.5
// s = 0 is the x = 0 symmetry edge, s = 1 the y = 0 symmetry edge, t = 0 the
// hole, and t = 1 the top edge (s < 0.5) followed by the right edge.

namespace trimiga {

/// Middle weight of the arc as published with the benchmark geometry.
inline constexpr double kPrintedArcWeight = 0.707;
/// Middle weight of an exact quarter circle.
inline const double kExactArcWeight = 1.0 / std::sqrt(2.0);

/// Bilinear square [0,size]^2, the identity map scaled by `size`.
Surface3d make_square_surface(double size = 1.0);

Region make_plate_region(double arc_weight = kPrintedArcWeight, double size = 1.0);

/// Straight bottom and top edges, so (u,v) = (s,t).
Region make_identity_region(const Surface3d& surface);

/// Same region with the surface control points multiplied by `factor`.
Region scale_region(const Region& region, double factor);

}  // namespace trimiga

#endif  // TRIMIGA_PLATE_GEOMETRY_HPP
