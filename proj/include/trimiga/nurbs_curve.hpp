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

#ifndef TRIMIGA_NURBS_CURVE_HPP
#define TRIMIGA_NURBS_CURVE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "trimiga/error.hpp"
#include "trimiga/knot_vector.hpp"

namespace trimiga {

template <typename Scalar, int Dim>
using Point = Eigen::Matrix<Scalar, Dim, 1>;

/// Point and first two derivatives of a curve at one parameter. Entries above
/// the requested order are zero.
template <typename Scalar, int Dim>
struct CurveDerivatives {
  Point<Scalar, Dim> value = Point<Scalar, Dim>::Zero();
  Point<Scalar, Dim> d1 = Point<Scalar, Dim>::Zero();
  Point<Scalar, Dim> d2 = Point<Scalar, Dim>::Zero();
};

/// Rational B-spline curve in Dim-dimensional space. Dim = 2 for trimming
/// curves living in a surface's (u,v) parameter space.
template <typename Scalar, int Dim>
class NurbsCurve {
 public:
  using PointType = Point<Scalar, Dim>;
  using ControlPoints = Eigen::Matrix<Scalar, Eigen::Dynamic, Dim, Eigen::RowMajor>;
  using Weights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  NurbsCurve() = default;

  NurbsCurve(KnotVector<Scalar> kv, ControlPoints points, Weights weights)
      : kv_(std::move(kv)), points_(std::move(points)), weights_(std::move(weights)) {
    validate();
  }

  /// Polynomial B-spline: all weights 1.
  NurbsCurve(KnotVector<Scalar> kv, ControlPoints points)
      : kv_(std::move(kv)), points_(std::move(points)), weights_(Weights::Ones(points_.rows())) {
    validate();
  }

  const KnotVector<Scalar>& knot_vector() const noexcept { return kv_; }
  int degree() const noexcept { return kv_.degree(); }
  const ControlPoints& control_points() const noexcept { return points_; }
  const Weights& weights() const noexcept { return weights_; }
  int num_control_points() const noexcept { return static_cast<int>(points_.rows()); }
  PointType control_point(int i) const { return points_.row(i).transpose(); }

  bool is_rational() const { return (weights_.array() != weights_(0)).any(); }

  /// Homogeneous quotient rule: with A = sum N w P and W = sum N w,
  ///   C = A/W, C' = (A' - W'C)/W, C'' = (A'' - 2W'C' - W''C)/W.
  CurveDerivatives<Scalar, Dim> evaluate(Scalar s, int order = 0) const {
    const auto basis = basis_functions(kv_, s, order);
    const int p = kv_.degree();
    Point<Scalar, Dim> a[3] = {PointType::Zero(), PointType::Zero(), PointType::Zero()};
    Scalar w[3] = {Scalar(0), Scalar(0), Scalar(0)};
    for (int j = 0; j <= p; ++j) {
      const int i = basis.first() + j;
      const PointType wp = weights_(i) * control_point(i);
      for (int k = 0; k <= order; ++k) {
        a[k] += basis.ders(k, j) * wp;
        w[k] += basis.ders(k, j) * weights_(i);
      }
    }
    CurveDerivatives<Scalar, Dim> out;
    out.value = a[0] / w[0];
    if (order >= 1) out.d1 = (a[1] - w[1] * out.value) / w[0];
    if (order >= 2) out.d2 = (a[2] - Scalar(2) * w[1] * out.d1 - w[2] * out.value) / w[0];
    return out;
  }

  PointType operator()(Scalar s) const { return evaluate(s, 0).value; }

  /// Same geometry traversed from s = 1 to s = 0.
  NurbsCurve reversed() const {
    const auto U = kv_.knots();
    std::vector<Scalar> knots(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) knots[i] = Scalar(1) - U[U.size() - 1 - i];
    return NurbsCurve(KnotVector<Scalar>(kv_.degree(), std::move(knots)), points_.colwise().reverse(),
                      weights_.reverse());
  }

 private:
  void validate() const {
    if (points_.rows() != kv_.num_basis())
      throw InvalidArgument("curve has " + std::to_string(points_.rows()) + " control points, knot vector needs " +
                            std::to_string(kv_.num_basis()));
    if (weights_.size() != points_.rows()) throw InvalidArgument("weight count differs from control point count");
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
      using std::isfinite;
      if (!(weights_(i) > Scalar(0)) || !isfinite(weights_(i)))
        throw InvalidArgument("curve weights must be positive and finite");
    }
    if (!points_.allFinite()) throw InvalidArgument("curve control points must be finite");
  }

  KnotVector<Scalar> kv_;
  ControlPoints points_;
  Weights weights_;
};

using Curve2d = NurbsCurve<double, 2>;
using Curve3d = NurbsCurve<double, 3>;

/// Rational quadratic Bezier arc through p0, p2 with tangent-intersection p1
/// and middle weight w. Use w = 1/sqrt(2) for an exact quarter circle.
template <typename Scalar, int Dim>
NurbsCurve<Scalar, Dim> make_conic_arc(const Point<Scalar, Dim>& p0, const Point<Scalar, Dim>& p1,
                                       const Point<Scalar, Dim>& p2, Scalar w) {
  typename NurbsCurve<Scalar, Dim>::ControlPoints pts(3, Dim);
  pts.row(0) = p0.transpose();
  pts.row(1) = p1.transpose();
  pts.row(2) = p2.transpose();
  typename NurbsCurve<Scalar, Dim>::Weights weights(3);
  weights << Scalar(1), w, Scalar(1);
  return NurbsCurve<Scalar, Dim>(KnotVector<Scalar>(2, {0, 0, 0, 1, 1, 1}), pts, weights);
}

/// Degree-1 segment from a to b.
template <typename Scalar, int Dim>
NurbsCurve<Scalar, Dim> make_segment(const Point<Scalar, Dim>& a, const Point<Scalar, Dim>& b) {
  typename NurbsCurve<Scalar, Dim>::ControlPoints pts(2, Dim);
  pts.row(0) = a.transpose();
  pts.row(1) = b.transpose();
  return NurbsCurve<Scalar, Dim>(KnotVector<Scalar>(1, {0, 0, 1, 1}), pts);
}

}  // namespace trimiga

#endif  // TRIMIGA_NURBS_CURVE_HPP
