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

#ifndef TRIMIGA_CLI_HPP
#define TRIMIGA_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace trimiga::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one subcommand. `args` excludes the program name. Machine-readable
/// output goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.15g", with ".0" appended when the result would read as an integer.
std::string format_real(double v);

}  // namespace trimiga::cli

#endif  // TRIMIGA_CLI_HPP
