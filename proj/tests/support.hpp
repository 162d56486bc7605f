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

// Shared helpers for the unit and acceptance suites: deterministic random
// sampling, finite differences and independent reference evaluators.

#ifndef TRIMIGA_TESTS_SUPPORT_HPP
#define TRIMIGA_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "trimiga/knot_vector.hpp"
#include "trimiga/nurbs_curve.hpp"
#include "trimiga/nurbs_surface.hpp"

namespace trimiga::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20141015);
  return gen;
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// ||a - b|| / max(||a||, floor). The floor keeps components that vanish
/// analytically from turning finite-difference noise into huge ratios.
template <typename A, typename B>
double rel_err(const A& a, const B& b, double floor = 1.0) {
  return (a - b).norm() / std::max(a.norm(), floor);
}

/// Random clamped knot vector: interior knots on a coarse grid so that
/// repeated values (multiplicity up to degree) actually occur.
inline KnotVectord random_knot_vector(int degree, int interior) {
  std::vector<double> knots(static_cast<std::size_t>(degree + 1), 0.0);
  std::vector<double> inner;
  while (static_cast<int>(inner.size()) < interior) {
    const double k = uniform_int(1, 15) / 16.0;
    if (std::count(inner.begin(), inner.end(), k) < std::max(degree, 1)) inner.push_back(k);
  }
  std::sort(inner.begin(), inner.end());
  knots.insert(knots.end(), inner.begin(), inner.end());
  knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
  return KnotVectord(degree, knots);
}

/// Textbook recursive definition, independent of the table-based evaluator.
inline double cox_de_boor(const KnotVectord& kv, int i, int p, double u) {
  const auto U = kv.knots();
  if (p == 0) {
    if (u == 1.0) return i == kv.find_span(1.0) ? 1.0 : 0.0;  // last span is closed
    return (U[i] <= u && u < U[i + 1]) ? 1.0 : 0.0;
  }
  double out = 0.0;
  if (U[i + p] > U[i]) out += (u - U[i]) / (U[i + p] - U[i]) * cox_de_boor(kv, i, p - 1, u);
  if (U[i + p + 1] > U[i + 1]) out += (U[i + p + 1] - u) / (U[i + p + 1] - U[i + 1]) * cox_de_boor(kv, i + 1, p - 1, u);
  return out;
}

/// k-th derivative of N_{i,p} from the recursive derivative formula.
inline double cox_de_boor_derivative(const KnotVectord& kv, int i, int p, double u, int k) {
  if (k == 0) return cox_de_boor(kv, i, p, u);
  const auto U = kv.knots();
  double out = 0.0;
  if (U[i + p] > U[i]) out += p / (U[i + p] - U[i]) * cox_de_boor_derivative(kv, i, p - 1, u, k - 1);
  if (U[i + p + 1] > U[i + 1])
    out -= p / (U[i + p + 1] - U[i + 1]) * cox_de_boor_derivative(kv, i + 1, p - 1, u, k - 1);
  return out;
}

/// Central difference of a vector-valued function of one variable.
template <typename F>
auto central_difference(const F& f, double x, double h) {
  return ((f(x + h) - f(x - h)) / (2 * h)).eval();
}

template <typename F>
auto second_difference(const F& f, double x, double h) {
  return ((f(x + h) - 2 * f(x) + f(x - h)) / (h * h)).eval();
}

}  // namespace trimiga::test

#endif  // TRIMIGA_TESTS_SUPPORT_HPP
