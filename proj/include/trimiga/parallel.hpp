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

#ifndef TRIMIGA_PARALLEL_HPP
#define TRIMIGA_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace trimiga {

/// Worker count from TRIMIGA_THREADS (0 or unset: hardware concurrency).
int thread_count();

/// Override for the current process; 0 restores the environment default.
void set_thread_count(int n);

/// Calls task(i) for i in [0, n). Tasks must write to disjoint outputs; the
/// caller reduces in index order so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

/// Pairwise (cascade) summation in fixed order.
double pairwise_sum(std::span<const double> values);

}  // namespace trimiga

#endif  // TRIMIGA_PARALLEL_HPP
