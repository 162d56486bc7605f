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

#ifndef TRIMIGA_TRIM_MAP_HPP
#define TRIMIGA_TRIM_MAP_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "trimiga/error.hpp"
#include "trimiga/nurbs_curve.hpp"
#include "trimiga/nurbs_surface.hpp"

// Double mapping of a trimmed patch:
//
//   (s,t) in [0,1]^2  --blend of two trimming curves-->  (u,v)  --surface-->  x
//
//   (u,v)(s,t) = (1 - t) C_bottom(s) + t C_top(s)
//
// The two straight sides s = 0 and s = 1 connect the curve end points and are
// implied by the blend.

namespace trimiga {

/// Surface plus the two parameter-space curves bounding the trimmed area.
/// curve_bottom is mapped to t = 0, curve_top to t = 1.
template <typename Scalar>
class TrimmedRegion {
 public:
  using Surface = NurbsSurface<Scalar, 3>;
  using Curve = NurbsCurve<Scalar, 2>;

  static constexpr double kContainmentTolerance = 1e-9;

  TrimmedRegion() = default;

  TrimmedRegion(Surface surface, Curve bottom, Curve top)
      : surface_(std::move(surface)), bottom_(std::move(bottom)), top_(std::move(top)) {
    check_inside(bottom_, "bottom");
    check_inside(top_, "top");
  }

  const Surface& surface() const noexcept { return surface_; }
  const Curve& curve_bottom() const noexcept { return bottom_; }
  const Curve& curve_top() const noexcept { return top_; }

  /// Highest polynomial degree among the surface and both trimming curves.
  int max_degree() const noexcept {
    return std::max({surface_.degree_u(), surface_.degree_v(), bottom_.degree(), top_.degree()});
  }

 private:
  static void check_inside(const Curve& c, const char* which) {
    const auto& p = c.control_points();
    const Scalar tol(kContainmentTolerance);
    if ((p.array() < -tol).any() || (p.array() > Scalar(1) + tol).any())
      throw InvalidArgument(std::string(which) + " trimming curve has control points outside the unit square");
  }

  Surface surface_;
  Curve bottom_;
  Curve top_;
};

/// (u,v) and its derivatives with respect to (s,t).
template <typename Scalar>
struct MapDerivatives {
  using Vec = Point<Scalar, 2>;
  Vec uv = Vec::Zero();
  Vec duv_ds = Vec::Zero();
  Vec duv_dt = Vec::Zero();
  Vec d2uv_ds2 = Vec::Zero();
  Vec d2uv_dt2 = Vec::Zero();  // identically zero: the blend is linear in t
  Vec d2uv_dsdt = Vec::Zero();
  /// s sits on an interior knot where a trimming curve is at most C^1, so the
  /// second derivatives are the right-sided limits.
  bool at_breakpoint = false;

  Scalar jacobian_det() const { return duv_ds.x() * duv_dt.y() - duv_ds.y() * duv_dt.x(); }
};

/// Physical point and its derivatives with respect to (s,t).
template <typename Scalar>
struct CompositeDerivatives {
  using Vec = Point<Scalar, 3>;
  Vec x = Vec::Zero();
  Vec dx_ds = Vec::Zero();
  Vec dx_dt = Vec::Zero();
  Vec d2x_ds2 = Vec::Zero();
  Vec d2x_dt2 = Vec::Zero();
  Vec d2x_dsdt = Vec::Zero();
  /// |dx_ds x dx_dt|, the surface measure factor.
  Scalar jacobian_scale = Scalar(0);
  MapDerivatives<Scalar> map;
  SurfaceDerivatives<Scalar, 3> surface;

  /// Signed area factor of the projection onto the xy-plane.
  Scalar planar_det() const { return dx_ds.x() * dx_dt.y() - dx_ds.y() * dx_dt.x(); }
};

namespace detail {

template <typename Scalar>
void check_unit_square(Scalar s, Scalar t) {
  if (!(s >= Scalar(0) && s <= Scalar(1) && t >= Scalar(0) && t <= Scalar(1)))
    throw DomainError("(s,t) = (" + std::to_string(static_cast<double>(s)) + ", " +
                      std::to_string(static_cast<double>(t)) + ") outside the unit square");
}

template <typename Scalar>
bool on_low_continuity_knot(const NurbsCurve<Scalar, 2>& c, Scalar s) {
  const int m = c.knot_vector().multiplicity(s);
  return m > 0 && s > Scalar(0) && s < Scalar(1) && c.degree() - m < 2;
}

template <typename Scalar>
MapDerivatives<Scalar> blend(const TrimmedRegion<Scalar>& region, Scalar s, Scalar t, int order) {
  check_unit_square(s, t);
  const auto lo = region.curve_bottom().evaluate(s, order);
  const auto hi = region.curve_top().evaluate(s, order);
  const Scalar n1 = Scalar(1) - t;
  const Scalar n2 = t;

  MapDerivatives<Scalar> m;
  m.uv = n1 * lo.value + n2 * hi.value;
  if (order >= 1) {
    m.duv_ds = n1 * lo.d1 + n2 * hi.d1;
    m.duv_dt = hi.value - lo.value;
  }
  if (order >= 2) {
    m.d2uv_ds2 = n1 * lo.d2 + n2 * hi.d2;
    m.d2uv_dsdt = hi.d1 - lo.d1;
    m.at_breakpoint = on_low_continuity_knot(region.curve_bottom(), s) || on_low_continuity_knot(region.curve_top(), s);
  }
  return m;
}

}  // namespace detail

/// (u,v) with first derivatives. Second-derivative fields are left zero.
template <typename Scalar>
MapDerivatives<Scalar> map_point(const TrimmedRegion<Scalar>& region, Scalar s, Scalar t) {
  return detail::blend(region, s, t, 1);
}

/// (u,v) with first and second derivatives.
template <typename Scalar>
MapDerivatives<Scalar> map_second_derivatives(const TrimmedRegion<Scalar>& region, Scalar s, Scalar t) {
  return detail::blend(region, s, t, 2);
}

/// Chain the surface derivatives through the blend.
///
/// Second derivatives use the full two-variable chain rule,
///   x_ab = x_uu u_a u_b + x_uv (u_a v_b + v_a u_b) + x_vv v_a v_b + x_u u_ab + x_v v_ab,
/// which is symmetric in (a,b).
template <typename Scalar>
CompositeDerivatives<Scalar> composite_eval(const TrimmedRegion<Scalar>& region, Scalar s, Scalar t, int order) {
  if (order < 0 || order > 2) throw InvalidArgument("derivative order must be 0, 1 or 2");
  CompositeDerivatives<Scalar> out;
  out.map = detail::blend(region, s, t, order);

  // rounding in the blend may step a hair outside the unit square
  Point<Scalar, 2> uv = out.map.uv;
  const Scalar tol(TrimmedRegion<Scalar>::kContainmentTolerance);
  for (int i = 0; i < 2; ++i) {
    if (uv(i) < -tol || uv(i) > Scalar(1) + tol)
      throw DomainError("blended (u,v) leaves the unit square at (s,t) = (" + std::to_string(static_cast<double>(s)) +
                        ", " + std::to_string(static_cast<double>(t)) + ")");
    uv(i) = std::clamp(uv(i), Scalar(0), Scalar(1));
  }
  out.surface = region.surface().evaluate(uv.x(), uv.y(), order);
  const auto& S = out.surface;
  const auto& M = out.map;
  out.x = S.value;
  if (order == 0) return out;

  const Scalar us = M.duv_ds.x(), vs = M.duv_ds.y();
  const Scalar ut = M.duv_dt.x(), vt = M.duv_dt.y();
  out.dx_ds = S.du * us + S.dv * vs;
  out.dx_dt = S.du * ut + S.dv * vt;
  out.jacobian_scale = out.dx_ds.cross(out.dx_dt).norm();
  if (!(out.jacobian_scale >= Scalar(1e-14)))
    throw SingularMapError(static_cast<double>(s), static_cast<double>(t),
                           "degenerate Jacobian of the trimmed map at (s,t) = (" +
                               std::to_string(static_cast<double>(s)) + ", " +
                               std::to_string(static_cast<double>(t)) + ")");
  if (order == 1) return out;

  out.d2x_ds2 = S.duu * (us * us) + S.duv * (Scalar(2) * us * vs) + S.dvv * (vs * vs) + S.du * M.d2uv_ds2.x() +
                S.dv * M.d2uv_ds2.y();
  out.d2x_dt2 = S.duu * (ut * ut) + S.duv * (Scalar(2) * ut * vt) + S.dvv * (vt * vt) + S.du * M.d2uv_dt2.x() +
                S.dv * M.d2uv_dt2.y();
  out.d2x_dsdt = S.duu * (us * ut) + S.duv * (us * vt + vs * ut) + S.dvv * (vs * vt) + S.du * M.d2uv_dsdt.x() +
                 S.dv * M.d2uv_dsdt.y();
  return out;
}

/// Interior knot of a trimming curve, with the lowest continuity order the
/// two curves have there (0 for a kink).
template <typename Scalar>
struct Breakpoint {
  Scalar s;
  int continuity;
};

template <typename Scalar>
std::vector<Breakpoint<Scalar>> breakpoints(const TrimmedRegion<Scalar>& region) {
  std::vector<Breakpoint<Scalar>> all;
  for (const auto* c : {&region.curve_bottom(), &region.curve_top()})
    for (const auto& [k, m] : c->knot_vector().interior_knots()) all.push_back({k, c->degree() - m});
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.s < b.s; });
  std::vector<Breakpoint<Scalar>> out;
  for (const auto& b : all) {
    using std::abs;
    if (!out.empty() && abs(out.back().s - b.s) <= Scalar(1e-12))
      out.back().continuity = std::min(out.back().continuity, b.continuity);
    else
      out.push_back(b);
  }
  return out;
}

/// Outcome of sweeping the parameter-space map over a grid.
struct ValidationReport {
  int grid_n = 0;
  int containment_violations = 0;
  int positive = 0;
  int negative = 0;
  int degenerate = 0;  // |det| below 1e-14: the curves touch
  double min_abs_det = std::numeric_limits<double>::infinity();
  double max_abs_det = 0.0;
  bool sign_change = false;
  std::vector<std::string> messages;

  bool valid() const { return containment_violations == 0 && !sign_change && degenerate == 0; }
  /// +1 or -1 when the map keeps one orientation, 0 otherwise.
  int orientation() const {
    if (sign_change || degenerate > 0) return 0;
    return positive > 0 ? 1 : (negative > 0 ? -1 : 0);
  }
};

/// Sweep the grid_n x grid_n nodes of [0,1]^2 checking that (u,v) stays in
/// the unit square and det d(u,v)/d(s,t) keeps one sign.
template <typename Scalar>
ValidationReport validate_region(const TrimmedRegion<Scalar>& region, int grid_n) {
  if (grid_n < 4) throw InvalidArgument("validation grid needs at least 4 nodes per direction");
  ValidationReport report;
  report.grid_n = grid_n;
  const double tol = TrimmedRegion<Scalar>::kContainmentTolerance;
  for (int j = 0; j < grid_n; ++j) {
    const Scalar t = Scalar(j) / Scalar(grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
      const Scalar s = Scalar(i) / Scalar(grid_n - 1);
      const auto m = map_point(region, s, t);
      const double u = static_cast<double>(m.uv.x()), v = static_cast<double>(m.uv.y());
      if (u < -tol || u > 1 + tol || v < -tol || v > 1 + tol) {
        if (report.containment_violations == 0)
          report.messages.push_back("(u,v) leaves the unit square at (s,t) = (" + std::to_string(double(s)) + ", " +
                                    std::to_string(double(t)) + ")");
        ++report.containment_violations;
      }
      const double det = static_cast<double>(m.jacobian_det());
      const double a = std::abs(det);
      report.min_abs_det = std::min(report.min_abs_det, a);
      report.max_abs_det = std::max(report.max_abs_det, a);
      if (a < 1e-14) {
        if (report.degenerate == 0)
          report.messages.push_back("trimming curves touch (zero Jacobian) at (s,t) = (" + std::to_string(double(s)) +
                                    ", " + std::to_string(double(t)) + ")");
        ++report.degenerate;
      } else if (det > 0) {
        ++report.positive;
      } else {
        ++report.negative;
      }
    }
  }
  if (report.positive > 0 && report.negative > 0) {
    report.sign_change = true;
    report.messages.push_back("Jacobian changes sign: " + std::to_string(report.positive) + " positive and " +
                              std::to_string(report.negative) + " negative grid nodes (fold-over)");
  }
  return report;
}

using Region = TrimmedRegion<double>;

}  // namespace trimiga

#endif  // TRIMIGA_TRIM_MAP_HPP
