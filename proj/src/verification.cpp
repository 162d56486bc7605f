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

#include "trimiga/verification.hpp"

#include <algorithm>
#include <cmath>

#include "trimiga/error.hpp"

namespace trimiga {

DerivativeCheck check_derivatives(const Region& region, int grid_n, double h1, double h2) {
  if (grid_n < 1) throw InvalidArgument("derivative check grid needs at least one cell");
  using V = Eigen::Matrix<double, 12, 1>;
  const auto bps = breakpoints(region);
  DerivativeCheck out;
  for (int j = 0; j < grid_n; ++j) {
    for (int i = 0; i < grid_n; ++i) {
      const double s = (i + 0.5) / grid_n, t = (j + 0.5) / grid_n;
      if (std::any_of(bps.begin(), bps.end(), [&](const auto& b) { return std::abs(b.s - s) < 2 * h2; })) continue;
      const auto c = composite_eval(region, s, t, 2);

      auto x = [&](double a, double b) { return composite_eval(region, a, b, 0).x; };
      Eigen::Matrix<double, 6, 1> first, first_fd;
      first << c.dx_ds, c.dx_dt;
      first_fd << (x(s + h1, t) - x(s - h1, t)) / (2 * h1), (x(s, t + h1) - x(s, t - h1)) / (2 * h1);
      out.first = std::max(out.first, (first - first_fd).norm() / first.norm());

      const auto sp = composite_eval(region, s + h2, t, 1), sm = composite_eval(region, s - h2, t, 1);
      const auto tp = composite_eval(region, s, t + h2, 1), tm = composite_eval(region, s, t - h2, 1);
      V second, second_fd;
      second << c.d2x_ds2, c.d2x_dsdt, c.d2x_dsdt, c.d2x_dt2;
      second_fd << (sp.dx_ds - sm.dx_ds) / (2 * h2), (tp.dx_ds - tm.dx_ds) / (2 * h2),
          (sp.dx_dt - sm.dx_dt) / (2 * h2), (tp.dx_dt - tm.dx_dt) / (2 * h2);
      out.second = std::max(out.second, (second - second_fd).norm() / std::max(second.norm(), first.norm()));
      ++out.points;
    }
  }
  return out;
}

}  // namespace trimiga
