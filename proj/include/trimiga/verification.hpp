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

#ifndef TRIMIGA_VERIFICATION_HPP
#define TRIMIGA_VERIFICATION_HPP

#include "trimiga/trim_map.hpp"

namespace trimiga {

struct DerivativeCheck {
  double first = 0.0;   // max relative error of (dx_ds, dx_dt)
  double second = 0.0;  // max relative error of the second derivatives
  int points = 0;
};

/// Compares composite_eval against central differences at the cell centres
/// of an n x n grid, skipping centres within 2*h2 of a breakpoint. First
/// derivatives are differenced from positions with step h1, second
/// derivatives from first derivatives with step h2 (the mixed term both
/// ways). Errors are relative to the norm of the stacked analytic vector;
/// second derivatives use the larger of that and the first-derivative norm.
DerivativeCheck check_derivatives(const Region& region, int grid_n, double h1 = 1e-6, double h2 = 1e-4);

}  // namespace trimiga

#endif  // TRIMIGA_VERIFICATION_HPP
