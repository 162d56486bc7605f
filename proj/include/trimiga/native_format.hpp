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

#ifndef TRIMIGA_NATIVE_FORMAT_HPP
#define TRIMIGA_NATIVE_FORMAT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "trimiga/nurbs_curve.hpp"
#include "trimiga/nurbs_surface.hpp"
#include "trimiga/trim_map.hpp"

// Plain-text geometry blocks, one entity per block:
//
//   # plate without the hole
//   surface
//   degree 1 1            (or "Order: 1"; one value applies to both directions)
//   knots_u 0 0 1 1       (or "Knot vector: ..." for both directions)
//   knots_v 0 0 1 1
//   0 0 0 1               x y z w, v index running fastest
//   0 1 0 1
//   1 0 0 1
//   1 1 0 1
//
//   curve bottom
//   degree 2
//   knots 0 0 0 1 1 1
//   0 0.2 0 1             x y [z] w
//   ...
//
// Keywords are case-insensitive and may end in ':'; a "Coefficients" line is
// ignored, so listings in the common textbook layout paste in unchanged.

namespace trimiga {

struct NativeGeometry {
  std::vector<Surface3d> surfaces;
  std::vector<Curve3d> curves;
  /// Label following the block keyword, e.g. "bottom" for "curve bottom".
  std::vector<std::string> curve_labels;
};

/// Throws ParseError (section 'N') on malformed text, InvalidArgument on
/// inconsistent NURBS data.
NativeGeometry parse_native(std::string_view text);

/// One surface and two curves. Curves labelled "top"/"bottom" (or "II"/"I")
/// are assigned accordingly, otherwise the first curve is the bottom one.
Region parse_native_region(std::string_view text);

Region load_native_region(const std::string& path);

std::string write_native(const Region& region);

/// Projection of a curve with z == 0 onto the plane.
Curve2d to_planar(const Curve3d& c);
Curve3d to_spatial(const Curve2d& c);

}  // namespace trimiga

#endif  // TRIMIGA_NATIVE_FORMAT_HPP
