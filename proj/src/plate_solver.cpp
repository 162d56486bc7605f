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

#include "trimiga/plate_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trimiga/error.hpp"
#include "trimiga/parallel.hpp"

namespace trimiga {
namespace {

struct CellMatrix {
  std::vector<int> dofs;
  Eigen::MatrixXd k;
};

std::vector<int> local_dofs(const std::vector<int>& functions) {
  std::vector<int> dofs;
  dofs.reserve(2 * functions.size());
  for (int f : functions) {
    dofs.push_back(2 * f);
    dofs.push_back(2 * f + 1);
  }
  return dofs;
}

/// Strain-displacement matrix rows (exx, eyy, gxy).
Eigen::MatrixXd strain_matrix(const PhysicalBasis& pb) {
  const auto n = pb.values.size();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    b(0, 2 * k) = pb.d_dx(k);
    b(1, 2 * k + 1) = pb.d_dy(k);
    b(2, 2 * k) = pb.d_dy(k);
    b(2, 2 * k + 1) = pb.d_dx(k);
  }
  return b;
}

std::vector<double> with_ends(std::vector<double> lines) {
  lines.push_back(0.0);
  lines.push_back(1.0);
  std::sort(lines.begin(), lines.end());
  std::vector<double> out;
  for (double v : lines)
    if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
  out.back() = 1.0;
  return out;
}

std::vector<double> s_lines(const Geometry& geometry, const FieldSpace& field) {
  std::vector<double> lines;
  for (const auto& bp : geometry.breaklines()) lines.push_back(bp.s);
  for (const auto& [k, m] : field.knots_s().interior_knots()) lines.push_back(k);
  return with_ends(std::move(lines));
}

std::vector<double> t_lines(const FieldSpace& field) {
  std::vector<double> lines;
  for (const auto& [k, m] : field.knots_t().interior_knots()) lines.push_back(k);
  return with_ends(std::move(lines));
}

}  // namespace

CompositeDerivatives<double> SurfaceGeometry::evaluate(double s, double t, int order) const {
  detail::check_unit_square(s, t);
  CompositeDerivatives<double> out;
  out.surface = surface_.evaluate(s, t, order);
  out.map.uv = {s, t};
  out.map.duv_ds = {1.0, 0.0};
  out.map.duv_dt = {0.0, 1.0};
  out.x = out.surface.value;
  if (order >= 1) {
    out.dx_ds = out.surface.du;
    out.dx_dt = out.surface.dv;
    out.jacobian_scale = out.dx_ds.cross(out.dx_dt).norm();
    if (!(out.jacobian_scale >= 1e-14)) throw SingularMapError(s, t, "degenerate surface Jacobian");
  }
  if (order >= 2) {
    out.d2x_ds2 = out.surface.duu;
    out.d2x_dt2 = out.surface.dvv;
    out.d2x_dsdt = out.surface.duv;
  }
  return out;
}

PhysicalBasis physical_gradients(const Geometry& geometry, const FieldSpace& field, double s, double t) {
  const auto cd = geometry.evaluate(s, t, 1);
  const auto fb = field_basis(field, s, t);
  Eigen::Matrix2d jac;  // rows: d/ds, d/dt of (x, y)
  jac << cd.dx_ds.x(), cd.dx_ds.y(), cd.dx_dt.x(), cd.dx_dt.y();
  const double det = jac.determinant();
  if (!(std::abs(det) >= 1e-14)) throw SingularMapError(s, t, "singular planar Jacobian");
  const Eigen::Matrix2d inv = jac.inverse();

  PhysicalBasis pb;
  pb.indices = fb.indices;
  pb.values = fb.values;
  pb.d_dx = inv(0, 0) * fb.d_ds + inv(0, 1) * fb.d_dt;
  pb.d_dy = inv(1, 0) * fb.d_ds + inv(1, 1) * fb.d_dt;
  pb.x = cd.x.head<2>();
  pb.det = det;
  return pb;
}

PhysicalBasis physical_gradients(const Region& region, const FieldSpace& field, double s, double t) {
  return physical_gradients(TrimmedGeometry(region), field, s, t);
}

std::vector<IntegrationRegion> integration_cells(const Geometry& geometry, const FieldSpace& field) {
  const auto s = s_lines(geometry, field);
  const auto t = t_lines(field);
  std::vector<IntegrationRegion> cells;
  for (std::size_t j = 0; j + 1 < t.size(); ++j)
    for (std::size_t i = 0; i + 1 < s.size(); ++i) cells.push_back({s[i], s[i + 1], t[j], t[j + 1]});
  return cells;
}

int quadrature_order(const ElasticityProblem& problem) {
  if (problem.quadrature_order > 0) return problem.quadrature_order;
  return std::max({problem.geometry->max_degree(), problem.field.degree_s(), problem.field.degree_t()}) + 1;
}

LinearSystem assemble(const ElasticityProblem& problem) {
  if (!problem.geometry) throw SolveError("elasticity problem without geometry");
  const Geometry& geo = *problem.geometry;
  const FieldSpace& field = problem.field;
  const Eigen::Matrix3d d = plane_stress_matrix(problem.material);
  const int n = quadrature_order(problem);
  const int ndof = 2 * field.size();

  const auto cells = integration_cells(geo, field);
  std::vector<CellMatrix> local(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    CellMatrix& cm = local[c];
    for (const auto& q : tensor_rule(cells[c], n, n)) {
      const auto pb = physical_gradients(geo, field, q.s, q.t);
      if (cm.dofs.empty()) {
        cm.dofs = local_dofs(pb.indices);
        cm.k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cm.dofs.size()),
                                     static_cast<Eigen::Index>(cm.dofs.size()));
      } else if (local_dofs(pb.indices) != cm.dofs) {
        throw SolveError("integration cell straddles a field knot span");
      }
      const Eigen::MatrixXd b = strain_matrix(pb);
      cm.k.noalias() += (q.weight * std::abs(pb.det)) * (b.transpose() * d * b);
    }
  });

  LinearSystem sys;
  sys.stiffness = Eigen::MatrixXd::Zero(ndof, ndof);
  sys.load = Eigen::VectorXd::Zero(ndof);
  for (const auto& cm : local)
    for (std::size_t a = 0; a < cm.dofs.size(); ++a)
      for (std::size_t b = 0; b < cm.dofs.size(); ++b)
        sys.stiffness(cm.dofs[a], cm.dofs[b]) += cm.k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));

  // tractions: integrate N * t along each loaded edge
  const auto gauss = gauss_points_1d(n);
  const auto sl = s_lines(geo, field);
  const auto tl = t_lines(field);
  for (int e = 0; e < 4; ++e) {
    const auto& bc = problem.edges[static_cast<std::size_t>(e)];
    if (bc.kind != EdgeCondition::Kind::Traction || !bc.traction) continue;
    const auto edge = static_cast<Edge>(e);
    const bool along_s = edge == Edge::T0 || edge == Edge::T1;
    const auto& lines = along_s ? sl : tl;
    const double fixed = (edge == Edge::S1 || edge == Edge::T1) ? 1.0 : 0.0;
    for (std::size_t seg = 0; seg + 1 < lines.size(); ++seg) {
      const double a = lines[seg], len = lines[seg + 1] - lines[seg];
      for (std::size_t g = 0; g < gauss.points.size(); ++g) {
        const double r = a + len * gauss.points[g];
        const double s = along_s ? r : fixed;
        const double t = along_s ? fixed : r;
        const auto cd = geo.evaluate(s, t, 1);
        const Eigen::Vector2d tangent = (along_s ? cd.dx_ds : cd.dx_dt).head<2>();
        const Eigen::Vector2d inward = (along_s ? cd.dx_dt : cd.dx_ds).head<2>();
        Eigen::Vector2d normal(tangent.y(), -tangent.x());
        normal.normalize();
        // outward on the "1" edges means along increasing t (or s)
        const double sign = fixed == 1.0 ? 1.0 : -1.0;
        if (sign * normal.dot(inward) < 0.0) normal = -normal;
        const Eigen::Vector2d tr = bc.traction(cd.x.head<2>(), normal);
        const double wl = len * gauss.weights[g] * tangent.norm();
        const auto fb = field_basis(field, s, t);
        for (std::size_t k = 0; k < fb.indices.size(); ++k) {
          const double nv = fb.values(static_cast<Eigen::Index>(k)) * wl;
          sys.load(2 * fb.indices[k]) += nv * tr.x();
          sys.load(2 * fb.indices[k] + 1) += nv * tr.y();
        }
      }
    }
  }
  return sys;
}

std::vector<int> constrained_dofs(const ElasticityProblem& problem) {
  const FieldSpace& field = problem.field;
  std::vector<int> out;
  for (int e = 0; e < 4; ++e) {
    const auto& bc = problem.edges[static_cast<std::size_t>(e)];
    if (bc.kind == EdgeCondition::Kind::Traction) continue;
    const int comp = bc.kind == EdgeCondition::Kind::FixX ? 0 : 1;
    const auto edge = static_cast<Edge>(e);
    if (edge == Edge::S0 || edge == Edge::S1) {
      const int i = edge == Edge::S0 ? 0 : field.count_s() - 1;
      for (int j = 0; j < field.count_t(); ++j) out.push_back(2 * field.index(i, j) + comp);
    } else {
      const int j = edge == Edge::T0 ? 0 : field.count_t() - 1;
      for (int i = 0; i < field.count_s(); ++i) out.push_back(2 * field.index(i, j) + comp);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SolveResult::SolveResult(std::shared_ptr<const Geometry> geometry, FieldSpace field, Material material,
                         Eigen::VectorXd coefficients, int free_dofs, double residual)
    : geometry_(std::move(geometry)),
      field_(std::move(field)),
      material_(material),
      constitutive_(plane_stress_matrix(material)),
      coefficients_(std::move(coefficients)),
      free_dofs_(free_dofs),
      residual_(residual) {}

Eigen::Vector2d SolveResult::displacement(double s, double t) const {
  const auto fb = field_basis(field_, s, t);
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  for (std::size_t k = 0; k < fb.indices.size(); ++k) {
    const double nv = fb.values(static_cast<Eigen::Index>(k));
    u.x() += nv * coefficients_(2 * fb.indices[k]);
    u.y() += nv * coefficients_(2 * fb.indices[k] + 1);
  }
  return u;
}

Eigen::Vector3d SolveResult::stress(double s, double t) const {
  const auto pb = physical_gradients(*geometry_, field_, s, t);
  Eigen::Vector3d strain = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < pb.indices.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double ux = coefficients_(2 * pb.indices[k]);
    const double uy = coefficients_(2 * pb.indices[k] + 1);
    strain(0) += pb.d_dx(kk) * ux;
    strain(1) += pb.d_dy(kk) * uy;
    strain(2) += pb.d_dy(kk) * ux + pb.d_dx(kk) * uy;
  }
  return constitutive_ * strain;
}

SolveResult solve(const ElasticityProblem& problem) {
  const auto sys = assemble(problem);
  const int ndof = static_cast<int>(sys.load.size());
  const auto fixed = constrained_dofs(problem);
  std::vector<int> free;
  free.reserve(static_cast<std::size_t>(ndof));
  for (int i = 0, f = 0; i < ndof; ++i) {
    if (f < static_cast<int>(fixed.size()) && fixed[static_cast<std::size_t>(f)] == i)
      ++f;
    else
      free.push_back(i);
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd kff(nf, nf);
  Eigen::VectorXd ff(nf);
  for (Eigen::Index a = 0; a < nf; ++a) {
    ff(a) = sys.load(free[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < nf; ++b)
      kff(a, b) = sys.stiffness(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(kff);
  if (llt.info() != Eigen::Success)
    throw SolveError("reduced stiffness (" + std::to_string(nf) +
                     " dofs) is not positive definite; check that the constraints remove all rigid-body modes");
  const Eigen::VectorXd uf = llt.solve(ff);
  const double fnorm = ff.norm();
  const double residual = (kff * uf - ff).norm() / (fnorm > 0.0 ? fnorm : 1.0);
  if (!std::isfinite(residual) || residual > 1e-10)
    throw SolveError("linear solve residual " + std::to_string(residual) + " above 1e-10");

  Eigen::VectorXd u = Eigen::VectorXd::Zero(ndof);
  for (Eigen::Index a = 0; a < nf; ++a) u(free[static_cast<std::size_t>(a)]) = uf(a);
  return SolveResult(problem.geometry, problem.field, problem.material, std::move(u), static_cast<int>(nf), residual);
}

double relative_stress_error(const SolveResult& result, const StressFunction& exact, int order) {
  const auto cells = integration_cells(result.geometry(), result.field());
  std::vector<double> num(cells.size()), den(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    std::vector<double> en, ed;
    for (const auto& q : tensor_rule(cells[c], order, order)) {
      const auto cd = result.geometry().evaluate(q.s, q.t, 1);
      const Eigen::Vector3d ref = exact(cd.x.head<2>());
      const Eigen::Vector3d diff = result.stress(q.s, q.t) - ref;
      const double w = q.weight * std::abs(cd.planar_det());
      en.push_back(w * stress_norm_squared(diff));
      ed.push_back(w * stress_norm_squared(ref));
    }
    num[c] = pairwise_sum(en);
    den[c] = pairwise_sum(ed);
  });
  return std::sqrt(pairwise_sum(num) / pairwise_sum(den));
}

}  // namespace trimiga
