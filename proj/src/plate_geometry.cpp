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

#include "trimiga/plate_geometry.hpp"

namespace trimiga {

Surface3d make_square_surface(double size) { return make_rectangle(0.0, 0.0, size, size); }

Region make_plate_region(double arc_weight, double size) {
  const Curve2d arc = make_conic_arc<double, 2>({0.0, 0.2}, {0.2, 0.2}, {0.2, 0.0}, arc_weight);
  Curve2d::ControlPoints pts(3, 2);
  pts << 0, 1, 1, 1, 1, 0;
  const Curve2d polyline(KnotVectord(1, {0, 0, 0.5, 1, 1}), pts);
  return Region(make_square_surface(size), arc, polyline);
}

Region make_identity_region(const Surface3d& surface) {
  return Region(surface, make_segment<double, 2>({0, 0}, {1, 0}), make_segment<double, 2>({0, 1}, {1, 1}));
}

Region scale_region(const Region& region, double factor) {
  const Surface3d& srf = region.surface();
  const Surface3d scaled(srf.knot_vector_u(), srf.knot_vector_v(), srf.control_net() * factor, srf.weights());
  return Region(scaled, region.curve_bottom(), region.curve_top());
}

}  // namespace trimiga
