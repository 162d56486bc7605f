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

#ifndef TRIMIGA_REFINEMENT_HPP
#define TRIMIGA_REFINEMENT_HPP

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "trimiga/error.hpp"
#include "trimiga/knot_vector.hpp"
#include "trimiga/nurbs_curve.hpp"
#include "trimiga/nurbs_surface.hpp"

// Refinement operates on polynomial coefficient matrices (one row per basis
// function). Rational objects are refined in homogeneous coordinates
// (w*P, w) and projected back.

namespace trimiga {

enum class Direction { U, V };

namespace detail {

template <typename Scalar>
using CoeffMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
void check_insertion(const KnotVector<Scalar>& kv, Scalar knot, int times) {
  if (times < 1) throw InvalidRefinement("knot insertion count must be at least 1");
  if (!(knot > Scalar(0) && knot < Scalar(1)))
    throw InvalidRefinement("inserted knot " + std::to_string(static_cast<double>(knot)) + " must lie in (0,1)");
  const int existing = kv.multiplicity(knot);
  if (existing + times > kv.degree())
    throw InvalidRefinement("inserting knot " + std::to_string(static_cast<double>(knot)) + " " +
                            std::to_string(times) + " time(s) would give multiplicity " +
                            std::to_string(existing + times) + " > degree " + std::to_string(kv.degree()));
}

/// Boehm's algorithm, inserting `knot` `times` times.
template <typename Scalar>
std::pair<KnotVector<Scalar>, CoeffMatrix<Scalar>> insert_knot(const KnotVector<Scalar>& kv,
                                                               const CoeffMatrix<Scalar>& coeffs, Scalar knot,
                                                               int times) {
  check_insertion(kv, knot, times);
  const int p = kv.degree();
  const int n = kv.num_basis();
  const int k = kv.find_span(knot);
  const int s = kv.multiplicity(knot);
  const auto U = kv.knots();

  std::vector<Scalar> knots(U.begin(), U.end());
  knots.insert(knots.begin() + k + 1, static_cast<std::size_t>(times), knot);

  CoeffMatrix<Scalar> out(n + times, coeffs.cols());
  for (int i = 0; i <= k - p; ++i) out.row(i) = coeffs.row(i);
  for (int i = k - s; i < n; ++i) out.row(i + times) = coeffs.row(i);

  CoeffMatrix<Scalar> work(p + 1, coeffs.cols());
  for (int i = 0; i <= p - s; ++i) work.row(i) = coeffs.row(k - p + i);
  int last = 0;
  for (int j = 1; j <= times; ++j) {
    last = k - p + j;
    for (int i = 0; i <= p - j - s; ++i) {
      const Scalar alpha = (knot - U[last + i]) / (U[i + k + 1] - U[last + i]);
      work.row(i) = alpha * work.row(i + 1) + (Scalar(1) - alpha) * work.row(i);
    }
    out.row(last) = work.row(0);
    out.row(k + times - j - s) = work.row(p - j - s);
  }
  for (int i = last + 1; i < k - s; ++i) out.row(i) = work.row(i - last);
  return {KnotVector<Scalar>(p, std::move(knots)), std::move(out)};
}

/// Degree + 1 with every distinct interior knot repeated once more, so the
/// continuity at each knot is unchanged.
template <typename Scalar>
KnotVector<Scalar> elevated_knots(const KnotVector<Scalar>& kv) {
  const int p = kv.degree() + 1;
  std::vector<Scalar> knots(static_cast<std::size_t>(p + 1), Scalar(0));
  for (const auto& [value, mult] : kv.interior_knots()) knots.insert(knots.end(), static_cast<std::size_t>(mult + 1), value);
  knots.insert(knots.end(), static_cast<std::size_t>(p + 1), Scalar(1));
  return KnotVector<Scalar>(p, std::move(knots));
}

/// Degree elevation by collocation at the Greville abscissae of the elevated
/// space. The original spline lies in that space, so the interpolant
/// reproduces it up to rounding.
template <typename Scalar>
std::pair<KnotVector<Scalar>, CoeffMatrix<Scalar>> elevate(const KnotVector<Scalar>& kv,
                                                           const CoeffMatrix<Scalar>& coeffs) {
  const KnotVector<Scalar> target = elevated_knots(kv);
  const int n = target.num_basis();
  const int p = target.degree();
  const auto T = target.knots();

  CoeffMatrix<Scalar> collocation = CoeffMatrix<Scalar>::Zero(n, n);
  CoeffMatrix<Scalar> rhs = CoeffMatrix<Scalar>::Zero(n, coeffs.cols());
  for (int i = 0; i < n; ++i) {
    Scalar xi(0);
    for (int j = 1; j <= p; ++j) xi += T[i + j];
    xi /= Scalar(p);
    const auto bt = basis_functions(target, xi, 0);
    for (int j = 0; j <= p; ++j) collocation(i, bt.first() + j) = bt.ders(0, j);
    const auto bo = basis_functions(kv, xi, 0);
    for (int j = 0; j <= kv.degree(); ++j) rhs.row(i) += bo.ders(0, j) * coeffs.row(bo.first() + j);
  }
  CoeffMatrix<Scalar> out = collocation.fullPivLu().solve(rhs);
  return {target, std::move(out)};
}

template <typename Scalar, int Dim>
CoeffMatrix<Scalar> homogeneous(const NurbsCurve<Scalar, Dim>& c) {
  CoeffMatrix<Scalar> h(c.num_control_points(), Dim + 1);
  for (int i = 0; i < c.num_control_points(); ++i) {
    h.row(i).head(Dim) = c.weights()(i) * c.control_points().row(i);
    h(i, Dim) = c.weights()(i);
  }
  return h;
}

template <typename Scalar, int Dim>
NurbsCurve<Scalar, Dim> from_homogeneous(KnotVector<Scalar> kv, const CoeffMatrix<Scalar>& h) {
  typename NurbsCurve<Scalar, Dim>::ControlPoints pts(h.rows(), Dim);
  typename NurbsCurve<Scalar, Dim>::Weights w(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    w(i) = h(i, Dim);
    pts.row(i) = h.row(i).head(Dim) / w(i);
  }
  return NurbsCurve<Scalar, Dim>(std::move(kv), std::move(pts), std::move(w));
}

/// Rows of the control net along `dir` stacked as one wide coefficient matrix:
/// row i holds the homogeneous points of every line with that index.
template <typename Scalar, int Dim>
CoeffMatrix<Scalar> stack_lines(const NurbsSurface<Scalar, Dim>& srf, Direction dir) {
  const int A = srf.count_u(), B = srf.count_v();
  const int len = dir == Direction::U ? A : B;
  const int lines = dir == Direction::U ? B : A;
  CoeffMatrix<Scalar> m(len, lines * (Dim + 1));
  for (int line = 0; line < lines; ++line)
    for (int i = 0; i < len; ++i) {
      const int a = dir == Direction::U ? i : line;
      const int b = dir == Direction::U ? line : i;
      const Scalar w = srf.weight(a, b);
      m.block(i, line * (Dim + 1), 1, Dim) = w * srf.control_point(a, b).transpose();
      m(i, line * (Dim + 1) + Dim) = w;
    }
  return m;
}

template <typename Scalar, int Dim>
NurbsSurface<Scalar, Dim> unstack_lines(const NurbsSurface<Scalar, Dim>& srf, Direction dir, KnotVector<Scalar> kv,
                                        const CoeffMatrix<Scalar>& m) {
  KnotVector<Scalar> ku = dir == Direction::U ? kv : srf.knot_vector_u();
  KnotVector<Scalar> kw = dir == Direction::U ? srf.knot_vector_v() : kv;
  const int A = ku.num_basis(), B = kw.num_basis();
  typename NurbsSurface<Scalar, Dim>::ControlNet net(static_cast<Eigen::Index>(A) * B, Dim);
  typename NurbsSurface<Scalar, Dim>::Weights w(static_cast<Eigen::Index>(A) * B);
  const int len = static_cast<int>(m.rows());
  const int lines = dir == Direction::U ? B : A;
  for (int line = 0; line < lines; ++line)
    for (int i = 0; i < len; ++i) {
      const int a = dir == Direction::U ? i : line;
      const int b = dir == Direction::U ? line : i;
      const Eigen::Index idx = a + static_cast<Eigen::Index>(A) * b;
      w(idx) = m(i, line * (Dim + 1) + Dim);
      net.row(idx) = m.block(i, line * (Dim + 1), 1, Dim) / w(idx);
    }
  return NurbsSurface<Scalar, Dim>(std::move(ku), std::move(kw), std::move(net), std::move(w));
}

}  // namespace detail

/// Knot vector with `knot` inserted `times` times.
template <typename Scalar>
KnotVector<Scalar> knot_insert(const KnotVector<Scalar>& kv, Scalar knot, int times = 1) {
  detail::check_insertion(kv, knot, times);
  std::vector<Scalar> knots(kv.knots().begin(), kv.knots().end());
  knots.insert(std::upper_bound(knots.begin(), knots.end(), knot), static_cast<std::size_t>(times), knot);
  return KnotVector<Scalar>(kv.degree(), std::move(knots));
}

template <typename Scalar, int Dim>
NurbsCurve<Scalar, Dim> knot_insert(const NurbsCurve<Scalar, Dim>& c, Scalar knot, int times = 1) {
  auto [kv, h] = detail::insert_knot(c.knot_vector(), detail::homogeneous(c), knot, times);
  return detail::from_homogeneous<Scalar, Dim>(std::move(kv), h);
}

template <typename Scalar, int Dim>
NurbsSurface<Scalar, Dim> knot_insert(const NurbsSurface<Scalar, Dim>& srf, Direction dir, Scalar knot,
                                      int times = 1) {
  const auto& kv = dir == Direction::U ? srf.knot_vector_u() : srf.knot_vector_v();
  auto [refined, m] = detail::insert_knot(kv, detail::stack_lines(srf, dir), knot, times);
  return detail::unstack_lines(srf, dir, std::move(refined), m);
}

template <typename Scalar>
KnotVector<Scalar> degree_elevate(const KnotVector<Scalar>& kv) {
  return detail::elevated_knots(kv);
}

template <typename Scalar, int Dim>
NurbsCurve<Scalar, Dim> degree_elevate(const NurbsCurve<Scalar, Dim>& c) {
  auto [kv, h] = detail::elevate(c.knot_vector(), detail::homogeneous(c));
  return detail::from_homogeneous<Scalar, Dim>(std::move(kv), h);
}

template <typename Scalar, int Dim>
NurbsSurface<Scalar, Dim> degree_elevate(const NurbsSurface<Scalar, Dim>& srf, Direction dir) {
  const auto& kv = dir == Direction::U ? srf.knot_vector_u() : srf.knot_vector_v();
  auto [elevated, m] = detail::elevate(kv, detail::stack_lines(srf, dir));
  return detail::unstack_lines(srf, dir, std::move(elevated), m);
}

}  // namespace trimiga

#endif  // TRIMIGA_REFINEMENT_HPP
