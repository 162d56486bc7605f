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

#include "trimiga/iges.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "trimiga/error.hpp"
#include "trimiga/native_format.hpp"
#include "trimiga/plate_geometry.hpp"
#include "trimiga/refinement.hpp"

namespace trimiga {
namespace {

constexpr long kMaxCount = 1000000;  // control points per direction
constexpr int kMaxDegree = 16;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<long> to_long(const std::string& s) {
  long v = 0;
  const char* first = s.data();
  const char* last = first + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string s) {
  if (s.empty()) return 0.0;
  for (char& c : s)
    if (c == 'D' || c == 'd') c = 'E';
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Card {
  std::string text;  // padded to 80 columns
  char section;
  std::size_t line;
};

int section_rank(char c) {
  switch (c) {
    case 'S': return 0;
    case 'G': return 1;
    case 'D': return 2;
    case 'P': return 3;
    case 'T': return 4;
    default: return -1;
  }
}

std::vector<Card> split_cards(std::string_view text) {
  std::vector<Card> cards;
  std::array<int, 5> counts{};
  int rank = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.size() < 73) throw ParseError(line_no, '?', "card shorter than 73 columns");
    if (line.size() > 80) throw ParseError(line_no, line[72], "card longer than 80 columns");
    const char sec = line[72];
    const int r = section_rank(sec);
    if (r < 0) {
      if (sec == 'C' || sec == 'B') throw ParseError(line_no, sec, "compressed and binary IGES are not supported");
      throw ParseError(line_no, sec, std::string("unknown section letter '") + sec + "' in column 73");
    }
    if (r < rank) throw ParseError(line_no, sec, "section out of order");
    if (rank == 4) throw ParseError(line_no, sec, "data after the terminate section");
    rank = r;
    const auto seq = to_long(trim(std::string_view(line).substr(73)));
    if (!seq) throw ParseError(line_no, sec, "missing or malformed sequence number");
    if (*seq != ++counts[static_cast<std::size_t>(r)])
      throw ParseError(line_no, sec, "sequence number " + std::to_string(*seq) + ", expected " +
                                         std::to_string(counts[static_cast<std::size_t>(r)]));
    line.resize(80, ' ');
    cards.push_back({std::move(line), sec, line_no});
  }
  if (cards.empty()) throw ParseError(line_no, '?', "empty file");
  if (counts[1] == 0) throw ParseError(line_no, 'G', "missing global section");
  if (counts[4] != 1) throw ParseError(line_no, 'T', "missing terminate section");
  return cards;
}

struct Delimiters {
  char param = ',';
  char record = ';';
};

Delimiters parse_delimiters(const std::vector<Card>& g) {
  std::string text;
  for (const auto& c : g) text += c.text.substr(0, 72);
  Delimiters d;
  std::size_t pos = 0;
  auto field = [&](char def) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (text.compare(pos, 2, "1H") == 0 && pos + 2 < text.size()) {
      const char c = text[pos + 2];
      pos += 3;
      return c;
    }
    return def;
  };
  d.param = field(',');
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || (text[pos] != d.param && text[pos] != ';'))
    throw ParseError(g.front().line, 'G', "malformed parameter delimiter field");
  ++pos;
  d.record = field(';');
  if (d.param == d.record || d.param == ' ' || d.record == ' ' || std::isdigit(static_cast<unsigned char>(d.param)) ||
      std::isdigit(static_cast<unsigned char>(d.record)))
    throw ParseError(g.front().line, 'G', "invalid delimiter characters");
  return d;
}

std::vector<std::string> tokenize(const std::string& data, Delimiters d, std::size_t line) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < data.size()) {
    const char c = data[pos];
    if (c == d.param) {
      tokens.push_back(trim(current));
      current.clear();
      ++pos;
      continue;
    }
    if (c == d.record) {
      tokens.push_back(trim(current));
      return tokens;
    }
    const std::string head = trim(current);
    if (c == 'H' && !head.empty() && std::all_of(head.begin(), head.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const auto n = to_long(head);
      if (!n || *n < 0 || static_cast<std::size_t>(*n) > data.size() - pos - 1)
        throw ParseError(line, 'P', "truncated Hollerith string");
      current = head + "H" + data.substr(pos + 1, static_cast<std::size_t>(*n));
      pos += 1 + static_cast<std::size_t>(*n);
      continue;
    }
    current += c;
    ++pos;
  }
  throw ParseError(line, 'P', "truncated parameter data: no record delimiter");
}

class Params {
 public:
  explicit Params(const IgesEntity& e) : e_(e) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(e_.line, 'P', "entity DE " + std::to_string(e_.de) + " (type " + std::to_string(e_.type) + "): " + msg);
  }
  std::size_t remaining() const { return e_.params.size() - i_; }
  void need(long long n, const char* what) const {
    if (n < 0 || static_cast<unsigned long long>(n) > remaining())
      fail(std::string("truncated parameter data reading ") + what);
  }
  long integer(const char* what) {
    need(1, what);
    const std::string& tok = e_.params[i_++];
    if (tok.empty()) return 0;
    if (auto v = to_long(tok)) return *v;
    const auto r = to_double(tok);
    if (r && std::abs(*r) < 1e15 && *r == std::floor(*r)) return static_cast<long>(*r);
    fail(std::string("expected an integer for ") + what + ", got '" + tok + "'");
  }
  double real(const char* what) {
    need(1, what);
    const std::string& tok = e_.params[i_++];
    if (auto v = to_double(tok)) return *v;
    fail(std::string("expected a real for ") + what + ", got '" + tok + "'");
  }
  long count(const char* what, long lo, long hi) {
    const long v = integer(what);
    if (v < lo || v > hi) fail(std::string(what) + " = " + std::to_string(v) + " out of range");
    return v;
  }

 private:
  const IgesEntity& e_;
  std::size_t i_ = 1;
};

std::vector<double> reals(Params& p, long n, const char* what) {
  p.need(n, what);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = p.real(what);
  return out;
}

Curve3d build_126(const IgesEntity& e) {
  Params p(e);
  const long k = p.count("K", 0, kMaxCount);
  const long m = p.count("degree", 0, kMaxDegree);
  if (k < m) p.fail("fewer control points than degree + 1");
  for (int i = 0; i < 4; ++i) p.integer("PROP");
  const long n = k + 1;
  p.need((k + m + 2) + 4 * n, "knots, weights and control points");
  const auto knots = reals(p, k + m + 2, "knots");
  const auto w = reals(p, n, "weights");
  Curve3d::ControlPoints pts(n, 3);
  for (long i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) pts(i, d) = p.real("control point");
  try {
    return Curve3d(KnotVectord(static_cast<int>(m), knots), pts, Eigen::Map<const Eigen::VectorXd>(w.data(), n));
  } catch (const Error& err) {
    p.fail(err.what());
  }
}

Curve3d build_110(const IgesEntity& e) {
  Params p(e);
  Point<double, 3> a, b;
  for (int d = 0; d < 3; ++d) a(d) = p.real("start point");
  for (int d = 0; d < 3; ++d) b(d) = p.real("end point");
  return make_segment<double, 3>(a, b);
}

Surface3d build_128(const IgesEntity& e) {
  Params p(e);
  const long k1 = p.count("K1", 0, kMaxCount);
  const long k2 = p.count("K2", 0, kMaxCount);
  const long m1 = p.count("degree u", 0, kMaxDegree);
  const long m2 = p.count("degree v", 0, kMaxDegree);
  if (k1 < m1 || k2 < m2) p.fail("fewer control points than degree + 1");
  for (int i = 0; i < 5; ++i) p.integer("PROP");
  const long long n = static_cast<long long>(k1 + 1) * (k2 + 1);
  p.need((k1 + m1 + 2) + (k2 + m2 + 2) + 4 * n, "knots, weights and control points");
  const auto ku = reals(p, k1 + m1 + 2, "u knots");
  const auto kv = reals(p, k2 + m2 + 2, "v knots");
  const auto w = reals(p, static_cast<long>(n), "weights");
  Surface3d::ControlNet net(n, 3);
  for (long long i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) net(i, d) = p.real("control point");
  try {
    return Surface3d(KnotVectord(static_cast<int>(m1), ku), KnotVectord(static_cast<int>(m2), kv), net,
                     Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(n)));
  } catch (const Error& err) {
    p.fail(err.what());
  }
}

}  // namespace

const IgesEntity& IgesModel::entity(int de) const {
  const auto it = by_de.find(de);
  if (it == by_de.end()) throw InvalidArgument("no directory entry " + std::to_string(de));
  return entities[it->second];
}

IgesModel parse_iges(std::string_view text) {
  const auto cards = split_cards(text);
  std::vector<Card> g, d, p;
  for (const auto& c : cards) {
    if (c.section == 'G') g.push_back(c);
    if (c.section == 'D') d.push_back(c);
    if (c.section == 'P') p.push_back(c);
  }
  const Delimiters delim = parse_delimiters(g);

  // terminate section counts
  const auto& t = cards.back();
  const std::array<std::pair<char, std::size_t>, 4> expect{{{'S', 0}, {'G', g.size()}, {'D', d.size()}, {'P', p.size()}}};
  std::size_t n_s = 0;
  for (const auto& c : cards) n_s += c.section == 'S';
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string field = t.text.substr(8 * i, 8);
    if (trim(field).empty()) continue;
    if (field[0] != expect[i].first) throw ParseError(t.line, 'T', "malformed terminate record");
    const auto v = to_long(trim(field.substr(1)));
    const std::size_t want = i == 0 ? n_s : expect[i].second;
    if (!v || static_cast<std::size_t>(*v) != want)
      throw ParseError(t.line, 'T', std::string("line count for section ") + field[0] + " does not match the file");
  }

  if (d.size() % 2 != 0) throw ParseError(d.back().line, 'D', "odd number of directory lines");

  IgesModel model;
  auto field = [](const Card& c, int k, const char* what) {
    const std::string f = trim(c.text.substr(static_cast<std::size_t>(8 * k), 8));
    if (f.empty()) return 0L;
    const auto v = to_long(f);
    if (!v) throw ParseError(c.line, 'D', std::string("malformed ") + what + " field '" + f + "'");
    return *v;
  };
  for (std::size_t i = 0; i < d.size(); i += 2) {
    IgesEntity e;
    e.de = static_cast<int>(i + 1);
    e.type = static_cast<int>(field(d[i], 0, "entity type"));
    if (field(d[i + 1], 0, "entity type") != e.type)
      throw ParseError(d[i + 1].line, 'D', "entity type differs between the two directory lines");
    const long pptr = field(d[i], 1, "parameter pointer");
    const long count = field(d[i + 1], 3, "parameter line count");
    e.form = static_cast<int>(field(d[i + 1], 4, "form"));
    if (e.type == 0) continue;  // null entity
    if (pptr < 1 || count < 1 || pptr + count - 1 > static_cast<long>(p.size()))
      throw ParseError(d[i].line, 'D', "parameter pointer " + std::to_string(pptr) + " with " + std::to_string(count) +
                                           " lines lies outside the parameter section");
    std::string data;
    for (long k = pptr - 1; k < pptr - 1 + count; ++k) {
      const Card& c = p[static_cast<std::size_t>(k)];
      const auto back = to_long(trim(c.text.substr(65, 7)));
      if (!back || *back != e.de)
        throw ParseError(c.line, 'P', "back pointer does not match directory entry " + std::to_string(e.de));
      data += c.text.substr(0, 64);
    }
    e.line = p[static_cast<std::size_t>(pptr - 1)].line;
    e.params = tokenize(data, delim, e.line);
    const auto head = to_long(e.params.front());
    if (!head || *head != e.type)
      throw ParseError(e.line, 'P', "parameter record type does not match directory entry " + std::to_string(e.de));
    model.by_de[e.de] = model.entities.size();
    model.entities.push_back(std::move(e));
  }

  std::map<int, std::vector<int>> composites;
  struct Pending {
    const IgesEntity* e;
    int surface;
    int n1, n2, outer;
  };
  std::vector<Pending> pending;
  std::map<int, std::array<long, 3>> on_surface;  // 142: SPTR, BPTR, line

  for (const auto& e : model.entities) {
    Params pr(e);
    switch (e.type) {
      case 126: model.curves.emplace(e.de, build_126(e)); break;
      case 110: model.curves.emplace(e.de, build_110(e)); break;
      case 128: model.surfaces.emplace(e.de, build_128(e)); break;
      case 102: {
        const long n = pr.count("curve count", 0, kMaxCount);
        pr.need(n, "curve pointers");
        std::vector<int> members;
        for (long k = 0; k < n; ++k) members.push_back(static_cast<int>(pr.integer("curve pointer")));
        composites[e.de] = std::move(members);
        break;
      }
      case 142: {
        pr.integer("CRTN");
        const long sptr = pr.integer("surface pointer");
        const long bptr = pr.integer("parameter curve pointer");
        on_surface[e.de] = {sptr, bptr, static_cast<long>(e.line)};
        break;
      }
      case 144: {
        const int pts = static_cast<int>(pr.integer("surface pointer"));
        const int n1 = static_cast<int>(pr.count("N1", 0, 1));
        const int n2 = static_cast<int>(pr.count("N2", 0, kMaxCount));
        const int pto = static_cast<int>(pr.integer("outer boundary pointer"));
        pending.push_back({&e, pts, n1, n2, pto});
        break;
      }
      default: model.skipped.emplace_back(e.de, e.type);
    }
  }

  auto dangling = [&](const IgesEntity& e, long ptr, const char* what) {
    throw ParseError(e.line, 'P', "entity DE " + std::to_string(e.de) + " (type " + std::to_string(e.type) + "): " +
                                      what + " is a dangling pointer to DE " + std::to_string(ptr));
  };
  std::function<void(const IgesEntity&, long, int, std::vector<int>&)> resolve_curve =
      [&](const IgesEntity& owner, long ptr, int depth, std::vector<int>& out) {
        if (depth > 8) throw ParseError(owner.line, 'P', "composite curves nested too deeply");
        if (model.curves.count(static_cast<int>(ptr))) {
          out.push_back(static_cast<int>(ptr));
          return;
        }
        const auto it = composites.find(static_cast<int>(ptr));
        if (it == composites.end()) {
          if (!model.by_de.count(static_cast<int>(ptr))) dangling(owner, ptr, "boundary curve");
          throw ParseError(owner.line, 'P', "boundary curve DE " + std::to_string(ptr) + " has unsupported type " +
                                                std::to_string(model.entity(static_cast<int>(ptr)).type));
        }
        for (int m : it->second) resolve_curve(model.entity(static_cast<int>(ptr)), m, depth + 1, out);
      };

  for (const auto& pd : pending) {
    const IgesEntity& e = *pd.e;
    if (!model.surfaces.count(pd.surface)) {
      if (!model.by_de.count(pd.surface)) dangling(e, pd.surface, "surface");
      throw ParseError(e.line, 'P', "trimmed surface DE " + std::to_string(e.de) + " refers to a non-B-spline surface");
    }
    IgesTrimmedSurface ts;
    ts.de = e.de;
    ts.surface_de = pd.surface;
    ts.inner_loops = pd.n2;
    if (pd.n1 == 1 || pd.outer != 0) {
      const auto it = on_surface.find(pd.outer);
      if (it == on_surface.end()) {
        if (!model.by_de.count(pd.outer)) dangling(e, pd.outer, "outer boundary");
        throw ParseError(e.line, 'P', "outer boundary DE " + std::to_string(pd.outer) + " is not a type 142 entity");
      }
      const auto& [sptr, bptr, line] = it->second;
      const IgesEntity& cos = model.entity(pd.outer);
      if (sptr != pd.surface)
        throw ParseError(static_cast<std::size_t>(line), 'P', "curve on surface DE " + std::to_string(pd.outer) +
                                                                  " names a different surface");
      resolve_curve(cos, bptr, 0, ts.boundary);
    }
    model.trimmed.push_back(std::move(ts));
  }
  return model;
}

IgesModel load_iges(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_iges(ss.str());
}

bool is_straight(const Curve2d& c, double tol) {
  const auto& pts = c.control_points();
  const Eigen::Vector2d a = pts.row(0).transpose();
  const Eigen::Vector2d b = pts.row(pts.rows() - 1).transpose();
  const double len = (b - a).norm();
  if (len < tol) return false;
  const Eigen::Vector2d dir = (b - a) / len;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const Eigen::Vector2d r = pts.row(i).transpose() - a;
    if (std::abs(dir.x() * r.y() - dir.y() * r.x()) > tol) return false;
  }
  return true;
}

namespace {

Curve2d to_unit_square(const Curve3d& c, const Surface3d& srf) {
  const auto& ku = srf.knot_vector_u();
  const auto& kv = srf.knot_vector_v();
  Curve2d::ControlPoints pts(c.control_points().rows(), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    pts(i, 0) = (c.control_points()(i, 0) - ku.original_lo()) / (ku.original_hi() - ku.original_lo());
    pts(i, 1) = (c.control_points()(i, 1) - kv.original_lo()) / (kv.original_hi() - kv.original_lo());
  }
  return Curve2d(c.knot_vector(), pts, c.weights());
}

Eigen::Vector2d start_of(const Curve2d& c) { return c.control_points().row(0).transpose(); }
Eigen::Vector2d end_of(const Curve2d& c) { return c.control_points().row(c.control_points().rows() - 1).transpose(); }

/// C^0 concatenation with equal parameter share per piece.
Curve2d join(std::vector<Curve2d> pieces) {
  if (pieces.size() == 1) return pieces.front();
  int p = 0;
  for (const auto& c : pieces) p = std::max(p, c.degree());
  for (auto& c : pieces)
    while (c.degree() < p) c = degree_elevate(c);

  const double n = static_cast<double>(pieces.size());
  std::vector<double> knots(static_cast<std::size_t>(p + 1), 0.0);
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> w;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& c = pieces[k];
    const auto u = c.knot_vector().knots();
    const auto m = static_cast<Eigen::Index>(c.control_points().rows());
    double scale = 1.0;
    Eigen::Index first = 0;
    if (k > 0) {
      scale = w.back() / c.weights()(0);
      pts.back() = 0.5 * (pts.back() + start_of(c));
      first = 1;
      knots.insert(knots.end(), static_cast<std::size_t>(p), static_cast<double>(k) / n);
    }
    for (std::size_t i = static_cast<std::size_t>(p) + 1; i + static_cast<std::size_t>(p) + 1 < u.size(); ++i)
      knots.push_back((static_cast<double>(k) + u[i]) / n);
    for (Eigen::Index i = first; i < m; ++i) {
      pts.push_back(c.control_points().row(i).transpose());
      w.push_back(c.weights()(i) * scale);
    }
  }
  knots.insert(knots.end(), static_cast<std::size_t>(p + 1), 1.0);
  Curve2d::ControlPoints cp(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) cp.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
  return Curve2d(KnotVectord(p, knots), cp, Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())));
}

Eigen::Vector2d mean_point(const Curve2d& c) {
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  constexpr int n = 65;
  for (int i = 0; i < n; ++i) sum += c.evaluate(static_cast<double>(i) / (n - 1), 0).value;
  return sum / n;
}

bool collinear(const std::vector<Curve2d>& run) {
  std::vector<Eigen::Vector2d> pts;
  for (const auto& c : run)
    for (Eigen::Index i = 0; i < c.control_points().rows(); ++i) pts.push_back(c.control_points().row(i).transpose());
  Curve2d::ControlPoints cp(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) cp.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
  std::vector<double> knots(2, 0.0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) knots.push_back(static_cast<double>(i) / static_cast<double>(pts.size() - 1));
  knots.insert(knots.end(), 2, 1.0);
  return is_straight(Curve2d(KnotVectord(1, knots), cp));
}

Region make_region(const Surface3d& srf, std::vector<Curve2d> chain_a, std::vector<Curve2d> chain_b) {
  // chain_b is listed in loop order, i.e. against chain_a
  std::reverse(chain_b.begin(), chain_b.end());
  for (auto& c : chain_b) c = c.reversed();
  Curve2d a = join(std::move(chain_a));
  Curve2d b = join(std::move(chain_b));
  const Eigen::Vector2d ma = mean_point(a), mb = mean_point(b);
  const bool a_bottom = std::abs(ma.y() - mb.y()) > 1e-12 ? ma.y() < mb.y() : ma.x() <= mb.x();
  Curve2d bottom = a_bottom ? a : b;
  Curve2d top = a_bottom ? b : a;
  Region r;
  try {
    r = Region(srf, bottom, top);
  } catch (const Error& e) {
    throw TopologyError(std::string("trimming curves leave the surface parameter square: ") + e.what());
  }
  const auto m = map_point(r, 0.5, 0.5);
  if (m.jacobian_det() < 0.0) r = Region(srf, bottom.reversed(), top.reversed());
  return r;
}

/// `pinched_ends`: the two curves share their end points, so the Jacobian
/// vanishes on the s = 0 and s = 1 lines and only there.
void require_valid(const Region& r, bool pinched_ends = false) {
  constexpr int n = 32;
  const auto report = validate_region(r, n);
  if (report.valid()) return;
  if (pinched_ends && report.containment_violations == 0 && !report.sign_change && report.degenerate == 2 * n) {
    int at_ends = 0;
    for (int j = 0; j < n; ++j)
      for (double s : {0.0, 1.0}) at_ends += std::abs(map_point(r, s, double(j) / (n - 1)).jacobian_det()) < 1e-14;
    if (at_ends == 2 * n) return;
  }
  std::string msg = "extracted region fails validation";
  for (const auto& m : report.messages) msg += "; " + m;
  throw TopologyError(msg);
}

}  // namespace

Region extract_region(const IgesModel& model, std::size_t index, std::vector<std::string>* diagnostics) {
  if (index >= model.trimmed.size())
    throw InvalidArgument("trimmed surface index " + std::to_string(index) + " out of range (" +
                          std::to_string(model.trimmed.size()) + " available)");
  const auto& ts = model.trimmed[index];
  const Surface3d& srf = model.surfaces.at(ts.surface_de);
  if (ts.inner_loops > 0 && diagnostics)
    diagnostics->push_back(std::to_string(ts.inner_loops) + " inner boundary loop(s) ignored");
  if (ts.boundary.empty()) return make_identity_region(srf);

  std::vector<Curve2d> loop;
  for (int de : ts.boundary) {
    const Curve3d& c = model.curves.at(de);
    loop.push_back(to_unit_square(c, srf));
  }
  const std::size_t n = loop.size();
  // head-to-tail orientation
  if (n >= 2) {
    const auto& nx = loop[1];
    const double d_end = std::min((end_of(loop[0]) - start_of(nx)).norm(), (end_of(loop[0]) - end_of(nx)).norm());
    const double d_start = std::min((start_of(loop[0]) - start_of(nx)).norm(), (start_of(loop[0]) - end_of(nx)).norm());
    if (d_start < d_end) loop[0] = loop[0].reversed();
    for (std::size_t i = 1; i < n; ++i)
      if ((end_of(loop[i - 1]) - start_of(loop[i])).norm() > (end_of(loop[i - 1]) - end_of(loop[i])).norm())
        loop[i] = loop[i].reversed();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = (end_of(loop[i]) - start_of(loop[(i + 1) % n])).norm();
    if (gap > 1e-6 && diagnostics) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "gap of %.3g between boundary curves %zu and %zu", gap, i, (i + 1) % n);
      diagnostics->push_back(buf);
    }
  }

  if (n == 1) throw TopologyError("boundary is a single curve; two trimming curves are required");
  if (n == 2) {
    Region r = make_region(srf, {loop[0]}, {loop[1]});
    require_valid(r, true);
    return r;
  }

  std::vector<bool> straight(n);
  for (std::size_t i = 0; i < n; ++i) straight[i] = is_straight(loop[i]);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!straight[i] && straight[(i + n - 1) % n]) ++runs;
  if (runs == 0 && std::none_of(straight.begin(), straight.end(), [](bool b) { return b; }))
    throw TopologyError("no straight closing edges on a boundary of " + std::to_string(n) + " curves");
  if (runs > 2)
    throw TopologyError("boundary has " + std::to_string(runs) +
                        " separate non-straight curve chains; exactly two trimming curves are supported");

  if (runs == 2) {
    // rotate so that the loop starts with a non-straight run
    std::size_t start = 0;
    while (!(!straight[start] && straight[(start + n - 1) % n])) ++start;
    std::vector<std::vector<Curve2d>> groups;
    std::vector<bool> group_straight;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (groups.empty() || group_straight.back() != straight[i]) {
        groups.emplace_back();
        group_straight.push_back(straight[i]);
      }
      groups.back().push_back(loop[i]);
    }
    // groups: chain, straight run, chain, straight run
    for (std::size_t g = 1; g < 4; g += 2)
      if (!collinear(groups[g]))
        throw TopologyError("closing side made of straight segments that are not collinear");
    Region r = make_region(srf, groups[0], groups[2]);
    require_valid(r);
    return r;
  }

  if (n != 4) throw TopologyError("cannot identify two straight closing edges among " + std::to_string(n) + " boundary curves");
  std::vector<std::size_t> firsts;
  if (runs == 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (!straight[i]) firsts.push_back(i % 2);
  } else {
    firsts = {0, 1};
  }
  std::string why;
  for (std::size_t f : firsts) {
    try {
      Region r = make_region(srf, {loop[f]}, {loop[f + 2]});
      require_valid(r);
      return r;
    } catch (const TopologyError& e) {
      why = e.what();
    }
  }
  throw TopologyError(why);
}

// --- writer -----------------------------------------------------------------

namespace {

std::string hollerith(const std::string& s) { return std::to_string(s.size()) + "H" + s; }

std::string pad(std::string s, std::size_t width) {
  s.resize(width, ' ');
  return s;
}

std::string right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string seq(char section, std::size_t n) { return std::string(1, section) + right(std::to_string(n), 7); }

std::vector<std::string> wrap(const std::vector<std::string>& tokens, std::size_t width) {
  std::vector<std::string> lines(1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string piece = tokens[i] + (i + 1 == tokens.size() ? ";" : ",");
    if (!lines.back().empty() && lines.back().size() + piece.size() > width) lines.emplace_back();
    lines.back() += piece;
  }
  return lines;
}

}  // namespace

IgesWriter::IgesWriter(std::string description) : description_(std::move(description)) {}

std::string IgesWriter::real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17G", v);
  std::string s = buf;
  if (s.find('.') == std::string::npos) {
    const auto e = s.find('E');
    if (e == std::string::npos)
      s += ".0";
    else
      s.insert(e, ".");
  }
  return s;
}

std::string IgesWriter::integer(long v) { return std::to_string(v); }

int IgesWriter::add(int type, const std::vector<std::string>& params, int form, const std::string& status) {
  std::vector<std::string> tokens{integer(type)};
  tokens.insert(tokens.end(), params.begin(), params.end());
  entries_.push_back({type, form, status, wrap(tokens, 64)});
  return static_cast<int>(2 * entries_.size() - 1);
}

int IgesWriter::add_curve(const Curve3d& c, int form, const std::string& status) {
  const auto& pts = c.control_points();
  const auto n = pts.rows();
  const bool planar = (pts.col(2).array() == 0.0).all();
  const bool polynomial = (c.weights().array() == c.weights()(0)).all();
  std::vector<std::string> p{integer(static_cast<long>(n - 1)), integer(c.degree()), integer(planar ? 1 : 0), "0",
                             integer(polynomial ? 1 : 0), "0"};
  for (double k : c.knot_vector().knots()) p.push_back(real(k));
  for (Eigen::Index i = 0; i < n; ++i) p.push_back(real(c.weights()(i)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) p.push_back(real(pts(i, d)));
  p.insert(p.end(), {real(0.0), real(1.0), real(0.0), real(0.0), real(planar ? 1.0 : 0.0)});
  return add(126, p, form, status);
}

int IgesWriter::add_surface(const Surface3d& s) {
  const auto& net = s.control_net();
  const int a = s.knot_vector_u().num_basis();
  const int b = s.knot_vector_v().num_basis();
  const bool polynomial = (s.weights().array() == s.weights()(0)).all();
  std::vector<std::string> p{integer(a - 1), integer(b - 1), integer(s.degree_u()), integer(s.degree_v()), "0", "0",
                             integer(polynomial ? 1 : 0), "0", "0"};
  for (double k : s.knot_vector_u().knots()) p.push_back(real(k));
  for (double k : s.knot_vector_v().knots()) p.push_back(real(k));
  for (Eigen::Index i = 0; i < net.rows(); ++i) p.push_back(real(s.weights()(i)));
  for (Eigen::Index i = 0; i < net.rows(); ++i)
    for (int d = 0; d < 3; ++d) p.push_back(real(net(i, d)));
  p.insert(p.end(), {real(0.0), real(1.0), real(0.0), real(1.0)});
  return add(128, p, 0, "00000000");
}

std::string IgesWriter::str() const {
  std::string out;
  std::size_t n_s = 0, n_g = 0, n_d = 0, n_p = 0;
  out += pad(description_.substr(0, 72), 72) + seq('S', ++n_s) + "\n";

  const std::vector<std::string> global{
      "1H,", "1H;", hollerith("trimiga"), hollerith("trimiga.igs"), hollerith("trimiga"), hollerith("1.0"),
      "32", "38", "6", "308", "15", hollerith("trimiga"), "1.0", "2", "2HMM", "1", "1.0",
      hollerith("20000101.000000"), "1.0E-9", "1.0", hollerith(""), hollerith(""), "11", "0",
      hollerith("20000101.000000")};
  for (const auto& line : wrap(global, 72)) out += pad(line, 72) + seq('G', ++n_g) + "\n";

  std::size_t pptr = 1;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    const std::string type = right(integer(e.type), 8);
    out += type + right(std::to_string(pptr), 8) + right("0", 8) + right("0", 8) + right("0", 8) + right("0", 8) +
           right("0", 8) + right("0", 8) + pad(e.status, 8) + seq('D', ++n_d) + "\n";
    out += type + right("0", 8) + right("0", 8) + right(std::to_string(e.lines.size()), 8) +
           right(std::to_string(e.form), 8) + std::string(16, ' ') + std::string(8, ' ') + right("0", 8) +
           seq('D', ++n_d) + "\n";
    pptr += e.lines.size();
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const std::string de = right(std::to_string(2 * i + 1), 7);
    for (const auto& line : entries_[i].lines) out += pad(line, 64) + " " + de + seq('P', ++n_p) + "\n";
  }
  out += pad(seq('S', n_s) + seq('G', n_g) + seq('D', n_d) + seq('P', n_p), 72) + seq('T', 1) + "\n";
  return out;
}

std::string export_iges(const Region& region) {
  IgesWriter w("trimiga trimmed surface export");
  const Curve2d& bottom = region.curve_bottom();
  const Curve2d& top = region.curve_top();
  const int srf = w.add_surface(region.surface());
  const std::string sub = "00010500";
  const int c1 = w.add_curve(to_spatial(bottom), 0, sub);
  const int c2 = w.add_curve(to_spatial(make_segment<double, 2>(end_of(bottom), end_of(top))), 0, sub);
  const int c3 = w.add_curve(to_spatial(top.reversed()), 0, sub);
  const int c4 = w.add_curve(to_spatial(make_segment<double, 2>(start_of(top), start_of(bottom))), 0, sub);
  const int loop = w.add(102, {"4", IgesWriter::integer(c1), IgesWriter::integer(c2), IgesWriter::integer(c3),
                               IgesWriter::integer(c4)},
                         0, sub);
  const int cos = w.add(142, {"0", IgesWriter::integer(srf), IgesWriter::integer(loop), "0", "1"}, 0, "00010402");
  w.add(144, {IgesWriter::integer(srf), "1", "0", IgesWriter::integer(cos)});
  return w.str();
}

}  // namespace trimiga
