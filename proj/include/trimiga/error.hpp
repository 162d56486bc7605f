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

#ifndef TRIMIGA_ERROR_HPP
#define TRIMIGA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace trimiga {

/// Root of every error thrown by the library. Callers that only need to know
/// "the input was bad" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside its admissible domain, e.g. u outside [0,1].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed construction data: unsorted knots, wrong control point count,
/// non-positive weights.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Knot insertion that would exceed the admissible multiplicity.
class InvalidRefinement : public Error {
 public:
  using Error::Error;
};

/// Composite map with vanishing Jacobian.
class SingularMapError : public Error {
 public:
  SingularMapError(double s, double t, const std::string& what)
      : Error(what), s_(s), t_(t) {}
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }

 private:
  double s_;
  double t_;
};

/// IGES or native-format parse failure. `line` is 1-based in the input text,
/// `section` is the IGES section letter (or 'N' for the native format).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, char section, const std::string& message)
      : Error(format(line, section, message)), line_(line), section_(section) {}
  std::size_t line() const noexcept { return line_; }
  char section() const noexcept { return section_; }

 private:
  static std::string format(std::size_t line, char section, const std::string& message) {
    return "line " + std::to_string(line) + " (section " + std::string(1, section) + "): " + message;
  }
  std::size_t line_;
  char section_;
};

/// Trimmed-surface boundary that cannot be reduced to two trimming curves.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Linear solver breakdown or inconsistent finite element data.
class SolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace trimiga

#endif  // TRIMIGA_ERROR_HPP
