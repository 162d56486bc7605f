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

#include "trimiga/field_space.hpp"

#include <algorithm>

#include "trimiga/refinement.hpp"

namespace trimiga {
namespace {

KnotVectord bisect(const KnotVectord& kv) {
  std::vector<double> knots(kv.knots().begin(), kv.knots().end());
  const auto br = kv.breaks();
  for (std::size_t i = 0; i + 1 < br.size(); ++i) knots.push_back(0.5 * (br[i] + br[i + 1]));
  std::sort(knots.begin(), knots.end());
  return KnotVectord(kv.degree(), std::move(knots));
}

KnotVectord open_knots(int degree) {
  std::vector<double> knots(static_cast<std::size_t>(degree + 1), 0.0);
  knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
  return KnotVectord(degree, std::move(knots));
}

}  // namespace

FieldSpace::FieldSpace(KnotVectord knots_s, KnotVectord knots_t) : s_(std::move(knots_s)), t_(std::move(knots_t)) {}

FieldSpace FieldSpace::conforming(const Region& region, int degree_s, int degree_t) {
  if (degree_s < 1 || degree_t < 1) throw InvalidArgument("field degrees must be at least 1");
  KnotVectord s = open_knots(degree_s);
  for (const auto& bp : breakpoints(region)) {
    const int continuity = std::min(bp.continuity, degree_s - 1);
    s = knot_insert(s, bp.s, degree_s - continuity);
  }
  return FieldSpace(std::move(s), open_knots(degree_t));
}

FieldBasis field_basis(const FieldSpace& field, double s, double t) {
  const auto bs = basis_functions(field.knots_s(), s, 1);
  const auto bt = basis_functions(field.knots_t(), t, 1);
  const int ps = field.degree_s(), pt = field.degree_t();
  const int n = (ps + 1) * (pt + 1);
  FieldBasis out;
  out.indices.resize(static_cast<std::size_t>(n));
  out.values.resize(n);
  out.d_ds.resize(n);
  out.d_dt.resize(n);
  int k = 0;
  for (int j = 0; j <= pt; ++j)
    for (int i = 0; i <= ps; ++i, ++k) {
      out.indices[static_cast<std::size_t>(k)] = field.index(bs.first() + i, bt.first() + j);
      out.values(k) = bs.ders(0, i) * bt.ders(0, j);
      out.d_ds(k) = bs.ders(1, i) * bt.ders(0, j);
      out.d_dt(k) = bs.ders(0, i) * bt.ders(1, j);
    }
  return out;
}

FieldSpace refine_field(const FieldSpace& field, RefinementKind kind) {
  if (kind == RefinementKind::H) return FieldSpace(bisect(field.knots_s()), bisect(field.knots_t()));
  return FieldSpace(degree_elevate(field.knots_s()), degree_elevate(field.knots_t()));
}

}  // namespace trimiga
