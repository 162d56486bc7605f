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

#ifndef TRIMIGA_NURBS_SURFACE_HPP
#define TRIMIGA_NURBS_SURFACE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "trimiga/knot_vector.hpp"
#include "trimiga/nurbs_curve.hpp"

namespace trimiga {

/// Value and partial derivatives up to second order of a two-parameter map.
template <typename Scalar, int Dim>
struct SurfaceDerivatives {
  using PointType = Point<Scalar, Dim>;
  PointType value = PointType::Zero();
  PointType du = PointType::Zero();
  PointType dv = PointType::Zero();
  PointType duu = PointType::Zero();
  PointType duv = PointType::Zero();
  PointType dvv = PointType::Zero();
};

/// Tensor-product rational B-spline surface. Control point (a,b) is stored at
/// row a + A*b, i.e. the u index runs fastest.
template <typename Scalar, int Dim = 3>
class NurbsSurface {
 public:
  using PointType = Point<Scalar, Dim>;
  using ControlNet = Eigen::Matrix<Scalar, Eigen::Dynamic, Dim, Eigen::RowMajor>;
  using Weights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  NurbsSurface() = default;

  NurbsSurface(KnotVector<Scalar> kv_u, KnotVector<Scalar> kv_v, ControlNet net, Weights weights)
      : kv_u_(std::move(kv_u)), kv_v_(std::move(kv_v)), net_(std::move(net)), weights_(std::move(weights)) {
    const auto expected = static_cast<Eigen::Index>(kv_u_.num_basis()) * kv_v_.num_basis();
    if (net_.rows() != expected)
      throw InvalidArgument("surface control net has " + std::to_string(net_.rows()) + " points, knot vectors need " +
                            std::to_string(expected));
    if (weights_.size() != net_.rows()) throw InvalidArgument("weight count differs from control net size");
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
      using std::isfinite;
      if (!(weights_(i) > Scalar(0)) || !isfinite(weights_(i)))
        throw InvalidArgument("surface weights must be positive and finite");
    }
    if (!net_.allFinite()) throw InvalidArgument("surface control points must be finite");
  }

  NurbsSurface(KnotVector<Scalar> kv_u, KnotVector<Scalar> kv_v, ControlNet net)
      : NurbsSurface(kv_u, kv_v, net, Weights::Ones(net.rows())) {}

  const KnotVector<Scalar>& knot_vector_u() const noexcept { return kv_u_; }
  const KnotVector<Scalar>& knot_vector_v() const noexcept { return kv_v_; }
  int degree_u() const noexcept { return kv_u_.degree(); }
  int degree_v() const noexcept { return kv_v_.degree(); }
  int count_u() const noexcept { return kv_u_.num_basis(); }
  int count_v() const noexcept { return kv_v_.num_basis(); }
  const ControlNet& control_net() const noexcept { return net_; }
  const Weights& weights() const noexcept { return weights_; }

  Eigen::Index index(int a, int b) const noexcept { return a + static_cast<Eigen::Index>(count_u()) * b; }
  PointType control_point(int a, int b) const { return net_.row(index(a, b)).transpose(); }
  Scalar weight(int a, int b) const { return weights_(index(a, b)); }

  SurfaceDerivatives<Scalar, Dim> evaluate(Scalar u, Scalar v, int order = 0) const {
    const auto bu = basis_functions(kv_u_, u, order);
    const auto bv = basis_functions(kv_v_, v, order);
    const int p = kv_u_.degree();
    const int q = kv_v_.degree();

    // homogeneous sums indexed [k][l] = d^k/du^k d^l/dv^l, k + l <= order
    PointType a[3][3];
    Scalar w[3][3];
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        a[k][l].setZero();
        w[k][l] = Scalar(0);
      }
    for (int jb = 0; jb <= q; ++jb) {
      const int b = bv.first() + jb;
      for (int ja = 0; ja <= p; ++ja) {
        const int ia = bu.first() + ja;
        const Scalar wt = weight(ia, b);
        const PointType wp = wt * control_point(ia, b);
        for (int k = 0; k <= order; ++k)
          for (int l = 0; l + k <= order; ++l) {
            const Scalar nm = bu.ders(k, ja) * bv.ders(l, jb);
            a[k][l] += nm * wp;
            w[k][l] += nm * wt;
          }
      }
    }

    SurfaceDerivatives<Scalar, Dim> out;
    const Scalar w0 = w[0][0];
    out.value = a[0][0] / w0;
    if (order >= 1) {
      out.du = (a[1][0] - w[1][0] * out.value) / w0;
      out.dv = (a[0][1] - w[0][1] * out.value) / w0;
    }
    if (order >= 2) {
      out.duu = (a[2][0] - Scalar(2) * w[1][0] * out.du - w[2][0] * out.value) / w0;
      out.dvv = (a[0][2] - Scalar(2) * w[0][1] * out.dv - w[0][2] * out.value) / w0;
      out.duv = (a[1][1] - w[1][0] * out.dv - w[0][1] * out.du - w[1][1] * out.value) / w0;
    }
    return out;
  }

  PointType operator()(Scalar u, Scalar v) const { return evaluate(u, v, 0).value; }

 private:
  KnotVector<Scalar> kv_u_;
  KnotVector<Scalar> kv_v_;
  ControlNet net_;
  Weights weights_;
};

using Surface3d = NurbsSurface<double, 3>;

/// Bilinear patch over the axis-aligned rectangle [x0,x1] x [y0,y1] in the
/// z = 0 plane with x = x0 + u (x1 - x0), y = y0 + v (y1 - y0).
template <typename Scalar>
NurbsSurface<Scalar, 3> make_rectangle(Scalar x0, Scalar y0, Scalar x1, Scalar y1) {
  typename NurbsSurface<Scalar, 3>::ControlNet net(4, 3);
  net << x0, y0, 0, x1, y0, 0, x0, y1, 0, x1, y1, 0;
  return NurbsSurface<Scalar, 3>(KnotVector<Scalar>(1, {0, 0, 1, 1}), KnotVector<Scalar>(1, {0, 0, 1, 1}), net);
}

}  // namespace trimiga

#endif  // TRIMIGA_NURBS_SURFACE_HPP
