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

#include "trimiga/native_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "trimiga/error.hpp"

namespace trimiga {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) words.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::optional<double> to_number(const std::string& word) {
  double value = 0.0;
  const char* first = word.data();
  const char* last = word.data() + word.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

struct Block {
  enum class Kind { Curve, Surface } kind = Kind::Curve;
  std::string label;
  std::size_t line = 0;
  std::vector<int> degrees;
  std::vector<double> knots_u;
  std::vector<double> knots_v;
  bool have_knots_u = false;
  bool have_knots_v = false;
  std::vector<std::vector<double>> rows;
};

std::vector<double> numbers_after(const std::vector<std::string>& words, std::size_t from, std::size_t line) {
  std::vector<double> out;
  for (std::size_t i = from; i < words.size(); ++i) {
    const auto v = to_number(words[i]);
    if (!v) throw ParseError(line, 'N', "expected a number, got '" + words[i] + "'");
    out.push_back(*v);
  }
  return out;
}

Surface3d build_surface(const Block& b) {
  if (b.degrees.empty()) throw ParseError(b.line, 'N', "surface block without degree");
  if (!b.have_knots_u) throw ParseError(b.line, 'N', "surface block without knot vector");
  const int p = b.degrees[0];
  const int q = b.degrees.size() > 1 ? b.degrees[1] : p;
  const auto& ku = b.knots_u;
  const auto& kv = b.have_knots_v ? b.knots_v : b.knots_u;
  KnotVectord kvu(p, ku), kvv(q, kv);
  const int A = kvu.num_basis(), B = kvv.num_basis();
  if (static_cast<int>(b.rows.size()) != A * B)
    throw ParseError(b.line, 'N',
                     "surface needs " + std::to_string(A * B) + " control points, got " + std::to_string(b.rows.size()));
  Surface3d::ControlNet net(A * B, 3);
  Surface3d::Weights w(A * B);
  for (int a = 0; a < A; ++a)
    for (int bb = 0; bb < B; ++bb) {
      const auto& r = b.rows[static_cast<std::size_t>(a * B + bb)];
      const Eigen::Index idx = a + static_cast<Eigen::Index>(A) * bb;
      if (r.size() == 4) {
        net.row(idx) << r[0], r[1], r[2];
        w(idx) = r[3];
      } else {
        net.row(idx) << r[0], r[1], 0.0;
        w(idx) = r[2];
      }
    }
  return Surface3d(std::move(kvu), std::move(kvv), std::move(net), std::move(w));
}

Curve3d build_curve(const Block& b) {
  if (b.degrees.empty()) throw ParseError(b.line, 'N', "curve block without degree");
  if (!b.have_knots_u) throw ParseError(b.line, 'N', "curve block without knot vector");
  KnotVectord kv(b.degrees[0], b.knots_u);
  if (static_cast<int>(b.rows.size()) != kv.num_basis())
    throw ParseError(b.line, 'N',
                     "curve needs " + std::to_string(kv.num_basis()) + " control points, got " +
                         std::to_string(b.rows.size()));
  Curve3d::ControlPoints pts(kv.num_basis(), 3);
  Curve3d::Weights w(kv.num_basis());
  for (int i = 0; i < kv.num_basis(); ++i) {
    const auto& r = b.rows[static_cast<std::size_t>(i)];
    if (r.size() == 4) {
      pts.row(i) << r[0], r[1], r[2];
      w(i) = r[3];
    } else {
      pts.row(i) << r[0], r[1], 0.0;
      w(i) = r[2];
    }
  }
  return Curve3d(std::move(kv), std::move(pts), std::move(w));
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_knots(std::ostringstream& os, const char* key, const KnotVectord& kv) {
  os << key;
  for (double k : kv.knots()) os << ' ' << format_real(k);
  os << '\n';
}

void write_curve(std::ostringstream& os, const char* label, const Curve2d& c) {
  os << "curve " << label << '\n' << "degree " << c.degree() << '\n';
  write_knots(os, "knots", c.knot_vector());
  for (int i = 0; i < c.num_control_points(); ++i)
    os << format_real(c.control_points()(i, 0)) << ' ' << format_real(c.control_points()(i, 1)) << " 0 "
       << format_real(c.weights()(i)) << '\n';
}

}  // namespace

NativeGeometry parse_native(std::string_view text) {
  NativeGeometry geo;
  std::optional<Block> current;

  auto flush = [&]() {
    if (!current) return;
    if (current->kind == Block::Kind::Surface) {
      geo.surfaces.push_back(build_surface(*current));
    } else {
      geo.curves.push_back(build_curve(*current));
      geo.curve_labels.push_back(current->label);
    }
    current.reset();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const std::string head = lower(words[0]);
    std::string key = head;
    if (!key.empty() && key.back() == ':') key.pop_back();

    if (key == "curve" || key == "surface") {
      flush();
      current = Block{};
      current->kind = key == "curve" ? Block::Kind::Curve : Block::Kind::Surface;
      current->line = line_no;
      for (std::size_t i = 1; i < words.size(); ++i) current->label += (i > 1 ? " " : "") + words[i];
    } else if (to_number(words[0])) {
      if (!current) throw ParseError(line_no, 'N', "control point outside a curve or surface block");
      auto row = numbers_after(words, 0, line_no);
      if (row.size() != 3 && row.size() != 4)
        throw ParseError(line_no, 'N', "control point line needs 3 (x y w) or 4 (x y z w) values");
      current->rows.push_back(std::move(row));
    } else {
      if (!current) throw ParseError(line_no, 'N', "keyword '" + words[0] + "' outside a block");
      if (key == "degree" || key == "order") {
        for (double d : numbers_after(words, 1, line_no)) {
          if (d < 0 || d > 64 || d != static_cast<int>(d)) throw ParseError(line_no, 'N', "invalid degree");
          current->degrees.push_back(static_cast<int>(d));
        }
        if (current->degrees.empty()) throw ParseError(line_no, 'N', "degree line without value");
      } else if (key == "knots" || key == "knots_u" || key == "knot") {
        // "Knot vector: ..." splits into "knot" "vector:" ...
        std::size_t from = 1;
        if (key == "knot" && words.size() > 1 && lower(words[1]).rfind("vector", 0) == 0) from = 2;
        current->knots_u = numbers_after(words, from, line_no);
        current->have_knots_u = true;
      } else if (key == "knots_v") {
        current->knots_v = numbers_after(words, 1, line_no);
        current->have_knots_v = true;
      } else if (key.rfind("coef", 0) == 0 || key == "points") {
        // header of the control point list
      } else {
        throw ParseError(line_no, 'N', "unknown keyword '" + words[0] + "'");
      }
    }
    if (end == text.size()) break;
  }
  flush();
  return geo;
}

Curve2d to_planar(const Curve3d& c) {
  if ((c.control_points().col(2).array().abs() > 1e-12).any())
    throw InvalidArgument("parameter-space curve has non-zero z coordinates");
  Curve2d::ControlPoints pts = c.control_points().leftCols(2);
  return Curve2d(c.knot_vector(), std::move(pts), c.weights());
}

Curve3d to_spatial(const Curve2d& c) {
  Curve3d::ControlPoints pts = Curve3d::ControlPoints::Zero(c.num_control_points(), 3);
  pts.leftCols(2) = c.control_points();
  return Curve3d(c.knot_vector(), std::move(pts), c.weights());
}

Region parse_native_region(std::string_view text) {
  const auto geo = parse_native(text);
  if (geo.surfaces.size() != 1 || geo.curves.size() != 2)
    throw ParseError(1, 'N',
                     "a trimmed region needs one surface and two curves, got " + std::to_string(geo.surfaces.size()) +
                         " and " + std::to_string(geo.curves.size()));
  auto is_top = [](std::string label) {
    label = lower(label);
    return label == "top" || label == "ii";
  };
  auto is_bottom = [](std::string label) {
    label = lower(label);
    return label == "bottom" || label == "i";
  };
  std::size_t bottom = 0, top = 1;
  if (is_top(geo.curve_labels[0]) || is_bottom(geo.curve_labels[1])) std::swap(bottom, top);
  return Region(geo.surfaces[0], to_planar(geo.curves[bottom]), to_planar(geo.curves[top]));
}

Region load_native_region(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open region file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_native_region(ss.str());
}

std::string write_native(const Region& region) {
  std::ostringstream os;
  const auto& srf = region.surface();
  os << "surface\n"
     << "degree " << srf.degree_u() << ' ' << srf.degree_v() << '\n';
  write_knots(os, "knots_u", srf.knot_vector_u());
  write_knots(os, "knots_v", srf.knot_vector_v());
  for (int a = 0; a < srf.count_u(); ++a)
    for (int b = 0; b < srf.count_v(); ++b) {
      const auto p = srf.control_point(a, b);
      os << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << ' '
         << format_real(srf.weight(a, b)) << '\n';
    }
  os << '\n';
  write_curve(os, "bottom", region.curve_bottom());
  os << '\n';
  write_curve(os, "top", region.curve_top());
  return os.str();
}

}  // namespace trimiga
