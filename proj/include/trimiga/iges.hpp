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

#ifndef TRIMIGA_IGES_HPP
#define TRIMIGA_IGES_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trimiga/nurbs_curve.hpp"
#include "trimiga/nurbs_surface.hpp"
#include "trimiga/trim_map.hpp"

// Subset of IGES 5.3 card-image files: rational B-spline curves (126) and
// surfaces (128), lines (110), composite curves (102), curves on a parametric
// surface (142) and trimmed surfaces (144). Everything else is skipped.

namespace trimiga {

/// One directory entry with its raw parameter tokens (entity type first).
struct IgesEntity {
  int de = 0;     // sequence number of the first D line
  int type = 0;
  int form = 0;
  std::size_t line = 0;  // file line of the first P line
  std::vector<std::string> params;
};

struct IgesTrimmedSurface {
  int de = 0;
  int surface_de = 0;
  /// Parameter-space curves of the outer boundary in loop order (DE
  /// pointers into IgesModel::curves). Empty when the outer boundary is the
  /// boundary of the surface itself.
  std::vector<int> boundary;
  int inner_loops = 0;
};

struct IgesModel {
  std::vector<IgesEntity> entities;
  std::map<int, std::size_t> by_de;
  /// 128 entities, knots renormalized to [0,1].
  std::map<int, Surface3d> surfaces;
  /// 126 and 110 entities in their own coordinates.
  std::map<int, Curve3d> curves;
  std::vector<IgesTrimmedSurface> trimmed;
  /// (DE, type) of entities outside the supported subset.
  std::vector<std::pair<int, int>> skipped;

  const IgesEntity& entity(int de) const;
};

/// Throws ParseError with the offending line and section letter.
IgesModel parse_iges(std::string_view text);
IgesModel load_iges(const std::string& path);

/// Region of trimmed surface `index`. Boundary curves are mapped into the
/// unit parameter square of the surface, straight closing edges removed,
/// the two remaining chains joined into single curves, bottom/top assigned by
/// mean v (then mean u) and both curves oriented so that det d(u,v)/d(s,t) > 0.
/// Endpoint gaps above 1e-6 are reported in `diagnostics` and left as is.
/// Throws TopologyError when the boundary does not reduce to two curves or
/// the resulting region fails validation.
Region extract_region(const IgesModel& model, std::size_t index, std::vector<std::string>* diagnostics = nullptr);

/// True when every control point lies within `tol` of the chord.
bool is_straight(const Curve2d& c, double tol = 1e-9);

/// Deterministic IGES writer. Reals use 17 significant digits.
class IgesWriter {
 public:
  explicit IgesWriter(std::string description = "trimiga");

  /// Appends an entity and returns its DE pointer. `params` excludes the
  /// leading entity type.
  int add(int type, const std::vector<std::string>& params, int form = 0, const std::string& status = "00000000");
  int add_curve(const Curve3d& c, int form = 0, const std::string& status = "00000000");
  int add_surface(const Surface3d& s);

  std::string str() const;

  static std::string real(double v);
  static std::string integer(long v);

 private:
  struct Entry {
    int type;
    int form;
    std::string status;
    std::vector<std::string> lines;  // P lines, data columns only
  };
  std::string description_;
  std::vector<Entry> entries_;
};

/// Surface, four parameter-space boundary curves (curve I, the s = 1
/// closing edge, curve II reversed, the s = 0 closing edge) joined in a 102,
/// one 142 and one 144.
std::string export_iges(const Region& region);

}  // namespace trimiga

#endif  // TRIMIGA_IGES_HPP
