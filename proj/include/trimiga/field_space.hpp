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

#ifndef TRIMIGA_FIELD_SPACE_HPP
#define TRIMIGA_FIELD_SPACE_HPP

#include <Eigen/Dense>

#include <vector>

#include "trimiga/knot_vector.hpp"
#include "trimiga/trim_map.hpp"

namespace trimiga {

/// Tensor-product B-spline space over (s,t) for the unknowns. It is refined
/// independently of the geometry map, which is never re-approximated.
class FieldSpace {
 public:
  FieldSpace() = default;
  FieldSpace(KnotVectord knots_s, KnotVectord knots_t);

  /// Coarsest space of the given degrees whose s-knots sit on every trimming
  /// curve breakpoint, with multiplicity lowering the continuity there to
  /// that of the map (C^0 kinks of the trim curves give C^0 field functions).
  static FieldSpace conforming(const Region& region, int degree_s, int degree_t);

  const KnotVectord& knots_s() const noexcept { return s_; }
  const KnotVectord& knots_t() const noexcept { return t_; }
  int degree_s() const noexcept { return s_.degree(); }
  int degree_t() const noexcept { return t_.degree(); }
  int count_s() const noexcept { return s_.num_basis(); }
  int count_t() const noexcept { return t_.num_basis(); }
  int size() const noexcept { return count_s() * count_t(); }
  int index(int i, int j) const noexcept { return i + count_s() * j; }

  bool operator==(const FieldSpace&) const = default;

 private:
  KnotVectord s_;
  KnotVectord t_;
};

/// Nonzero field functions at one (s,t): global indices, values and the two
/// parametric derivatives.
struct FieldBasis {
  std::vector<int> indices;
  Eigen::VectorXd values;
  Eigen::VectorXd d_ds;
  Eigen::VectorXd d_dt;
};

FieldBasis field_basis(const FieldSpace& field, double s, double t);

enum class RefinementKind { H, P };

/// h: bisect every non-empty span in both directions.
/// p: raise both degrees by one keeping the continuity at every knot.
FieldSpace refine_field(const FieldSpace& field, RefinementKind kind);

}  // namespace trimiga

#endif  // TRIMIGA_FIELD_SPACE_HPP
