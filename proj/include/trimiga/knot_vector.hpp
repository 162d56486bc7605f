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

#ifndef TRIMIGA_KNOT_VECTOR_HPP
#define TRIMIGA_KNOT_VECTOR_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trimiga/error.hpp"

namespace trimiga {

/// Clamped (open) knot vector normalized to [0,1].
///
/// The original parameter range is kept so that callers reading CAD data with
/// arbitrary ranges can map parameters and rescale derivatives.
template <typename Scalar>
class KnotVector {
 public:
  KnotVector() = default;

  KnotVector(int degree, std::vector<Scalar> knots) : degree_(degree), knots_(std::move(knots)) {
    using std::isfinite;
    if (degree_ < 0) throw InvalidArgument("knot vector degree must be non-negative");
    const auto n = static_cast<int>(knots_.size());
    if (n < 2 * (degree_ + 1))
      throw InvalidArgument("knot vector with degree " + std::to_string(degree_) + " needs at least " +
                            std::to_string(2 * (degree_ + 1)) + " knots, got " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
      if (!isfinite(knots_[i])) throw InvalidArgument("knot vector contains a non-finite value");
      if (i > 0 && knots_[i] < knots_[i - 1]) throw InvalidArgument("knots must be non-decreasing");
    }
    lo_ = knots_.front();
    hi_ = knots_.back();
    if (!(hi_ > lo_)) throw InvalidArgument("knot vector has zero length");
    for (int i = 1; i <= degree_; ++i) {
      if (knots_[i] != lo_ || knots_[n - 1 - i] != hi_)
        throw InvalidArgument("knot vector is not clamped: end multiplicity must be degree+1");
    }
    if (knots_[degree_ + 1] == lo_ || knots_[n - 2 - degree_] == hi_)
      throw InvalidArgument("end knot multiplicity exceeds degree+1");
    for (int i = degree_ + 1; i < n - degree_ - 1;) {
      int j = i;
      while (j < n - degree_ - 1 && knots_[j] == knots_[i]) ++j;
      if (j - i > std::max(degree_, 1))
        throw InvalidArgument("interior knot multiplicity " + std::to_string(j - i) + " exceeds degree " +
                              std::to_string(degree_));
      i = j;
    }
    const Scalar len = hi_ - lo_;
    for (auto& k : knots_) k = (k - lo_) / len;
    for (int i = 0; i <= degree_; ++i) {
      knots_[i] = Scalar(0);
      knots_[n - 1 - i] = Scalar(1);
    }
  }

  int degree() const noexcept { return degree_; }
  std::span<const Scalar> knots() const noexcept { return knots_; }
  Scalar operator[](std::size_t i) const { return knots_[i]; }
  int size() const noexcept { return static_cast<int>(knots_.size()); }
  int num_basis() const noexcept { return size() - degree_ - 1; }

  /// Parameter range of the data the vector was built from.
  Scalar original_lo() const noexcept { return lo_; }
  Scalar original_hi() const noexcept { return hi_; }

  /// Index i with knots[i] <= u < knots[i+1]; u == 1 resolves to the last
  /// non-empty span. A u equal to an interior knot therefore lands in the
  /// span to its right.
  int find_span(Scalar u) const {
    check_domain(u);
    const int n = num_basis();
    if (u >= knots_[n]) return n - 1;
    const auto first = knots_.begin() + degree_;
    const auto last = knots_.begin() + n + 1;
    const auto it = std::upper_bound(first, last, u);
    return static_cast<int>(it - knots_.begin()) - 1;
  }

  int multiplicity(Scalar u) const {
    return static_cast<int>(std::count(knots_.begin(), knots_.end(), u));
  }

  /// Distinct interior knots with their multiplicities, ascending.
  std::vector<std::pair<Scalar, int>> interior_knots() const {
    std::vector<std::pair<Scalar, int>> out;
    const int n = size();
    for (int i = degree_ + 1; i < n - degree_ - 1; ++i) {
      if (!out.empty() && out.back().first == knots_[i])
        ++out.back().second;
      else
        out.emplace_back(knots_[i], 1);
    }
    return out;
  }

  /// Distinct knot values including 0 and 1, i.e. the element boundaries.
  std::vector<Scalar> breaks() const {
    std::vector<Scalar> out{Scalar(0)};
    for (const auto& [k, m] : interior_knots()) out.push_back(k);
    out.push_back(Scalar(1));
    return out;
  }

  static void check_domain(Scalar u) {
    if (!(u >= Scalar(0) && u <= Scalar(1)))
      throw DomainError("parameter " + std::to_string(static_cast<double>(u)) + " outside [0,1]");
  }

  bool operator==(const KnotVector&) const = default;

 private:
  int degree_ = 0;
  std::vector<Scalar> knots_;
  Scalar lo_ = Scalar(0);
  Scalar hi_ = Scalar(1);
};

/// Nonzero basis functions on one span. Row k of `ders` holds the k-th
/// derivative of N_{first+j}, j = 0..degree.
template <typename Scalar>
struct BasisValues {
  int span = 0;
  int degree = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ders;

  int first() const noexcept { return span - degree; }
};

/// Cox-de Boor recursion with derivatives up to `order` (0, 1 or 2).
template <typename Scalar>
BasisValues<Scalar> basis_functions(const KnotVector<Scalar>& kv, Scalar u, int order) {
  if (order < 0 || order > 2) throw InvalidArgument("derivative order must be 0, 1 or 2");
  const int p = kv.degree();
  const int span = kv.find_span(u);
  const auto U = kv.knots();

  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat ndu(p + 1, p + 1);
  std::vector<Scalar> left(p + 1), right(p + 1);
  ndu(0, 0) = Scalar(1);
  for (int j = 1; j <= p; ++j) {
    left[j] = u - U[span + 1 - j];
    right[j] = U[span + j] - u;
    Scalar saved(0);
    for (int r = 0; r < j; ++r) {
      // lower triangle stores knot differences, upper the basis values
      ndu(j, r) = right[r + 1] + left[j - r];
      const Scalar temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  BasisValues<Scalar> out;
  out.span = span;
  out.degree = p;
  out.ders = Mat::Zero(order + 1, p + 1);
  for (int j = 0; j <= p; ++j) out.ders(0, j) = ndu(j, p);

  Mat a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a.setZero();
    a(0, 0) = Scalar(1);
    for (int k = 1; k <= std::min(order, p); ++k) {
      Scalar d(0);
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      out.ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  Scalar factor(p);
  for (int k = 1; k <= std::min(order, p); ++k) {
    out.ders.row(k) *= factor;
    factor *= Scalar(p - k);
  }
  return out;
}

using KnotVectord = KnotVector<double>;

}  // namespace trimiga

#endif  // TRIMIGA_KNOT_VECTOR_HPP
