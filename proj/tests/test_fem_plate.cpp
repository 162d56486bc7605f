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

#include <cmath>
#include <memory>

#include "doctest.h"
#include "support.hpp"
#include "trimiga/elasticity.hpp"
#include "trimiga/error.hpp"
#include "trimiga/field_space.hpp"
#include "trimiga/plate_geometry.hpp"
#include "trimiga/plate_problem.hpp"
#include "trimiga/plate_solver.hpp"

using namespace trimiga;
using trimiga::test::rel_err;
using trimiga::test::uniform;

namespace {

using V2 = Eigen::Vector2d;

std::pair<double, double> sample_away_from_half(double margin) {
  double s = 0.5;
  while (std::abs(s - 0.5) < margin) s = uniform(margin, 1 - margin);
  return {s, uniform(margin, 1 - margin)};
}

/// Full field vector of one basis function at (s,t), zero where it vanishes.
Eigen::VectorXd dense_values(const FieldSpace& f, double s, double t) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  const auto b = field_basis(f, s, t);
  for (std::size_t k = 0; k < b.indices.size(); ++k) out(b.indices[k]) = b.values(static_cast<Eigen::Index>(k));
  return out;
}

/// Plate topology with weight 1 on the arc: the map is then piecewise
/// polynomial and lies in the degree-2 conforming field space.
Region polynomial_plate(double size = 5.0) { return make_plate_region(1.0, size); }

Eigen::Vector2d traction_of(const Eigen::Vector3d& s, const V2& n) {
  return {s(0) * n.x() + s(2) * n.y(), s(2) * n.x() + s(1) * n.y()};
}

/// ux = a x, uy = d y under symmetry supports on the plate edges and the
/// matching uniform tractions on the hole and the outer edges.
ElasticityProblem linear_patch_problem(const Region& region, const FieldSpace& field, double a, double d) {
  ElasticityProblem p{std::make_shared<TrimmedGeometry>(region), field, Material{}, {}, 0};
  const Eigen::Vector3d sigma = plane_stress_matrix(p.material) * Eigen::Vector3d(a, d, 0);
  auto load = EdgeCondition::load([sigma](const V2&, const V2& n) { return traction_of(sigma, n); });
  p.edges[int(Edge::S0)] = EdgeCondition::fix_x();
  p.edges[int(Edge::S1)] = EdgeCondition::fix_y();
  p.edges[int(Edge::T0)] = load;
  p.edges[int(Edge::T1)] = load;
  return p;
}

ElasticityProblem square_tension(std::shared_ptr<const Geometry> g, const FieldSpace& field) {
  ElasticityProblem p{std::move(g), field, Material{}, {}, 0};
  p.edges[int(Edge::S0)] = EdgeCondition::fix_x();
  p.edges[int(Edge::T0)] = EdgeCondition::fix_y();
  p.edges[int(Edge::S1)] = EdgeCondition::load([](const V2&, const V2& n) { return V2(n.x(), 0.0); });
  return p;
}

Surface3d wavy_square() {
  KnotVectord ku(2, {0, 0, 0, 0.5, 1, 1, 1}), kv(2, {0, 0, 0, 1, 1, 1});
  const int A = ku.num_basis(), B = kv.num_basis();
  Surface3d::ControlNet net(A * B, 3);
  Surface3d::Weights w(A * B);
  for (int b = 0; b < B; ++b)
    for (int a = 0; a < A; ++a) {
      const double x = a / double(A - 1), y = b / double(B - 1);
      net.row(a + A * b) << 2 * x + 0.2 * y * (1 - y), 1.5 * y + 0.1 * x * x, 0.0;
      w(a + A * b) = 1.0 + 0.3 * ((a + b) % 2);
    }
  return Surface3d(ku, kv, net, w);
}

}  // namespace

TEST_SUITE("field_basis") {
  TEST_CASE("bilinear centre") {
    const FieldSpace f(KnotVectord(1, {0, 0, 1, 1}), KnotVectord(1, {0, 0, 1, 1}));
    const auto b = field_basis(f, 0.5, 0.5);
    REQUIRE(b.values.size() == 4);
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::abs(b.values(k) - 0.25) < 1e-16);
  }

  TEST_CASE("partition of unity and count") {
    const FieldSpace f = refine_field(FieldSpace::conforming(make_plate_region(), 2, 3), RefinementKind::H);
    for (int i = 0; i < 200; ++i) {
      const auto b = field_basis(f, uniform(), uniform());
      CHECK(b.values.size() == 12);
      CHECK(std::abs(b.values.sum() - 1.0) < 1e-13);
      CHECK(std::abs(b.d_ds.sum()) < 1e-11);
      CHECK(std::abs(b.d_dt.sum()) < 1e-11);
    }
  }

  TEST_CASE("derivatives against finite differences") {
    const FieldSpace f = refine_field(FieldSpace::conforming(make_plate_region(), 2, 2), RefinementKind::H);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
      // stay away from knot lines so the difference stencil is in one span
      double s, t;
      do {
        s = uniform(0.01, 0.99), t = uniform(0.01, 0.99);
      } while (std::abs(std::fmod(s, 0.25)) < 2e-5 || std::abs(std::fmod(s, 0.25) - 0.25) < 2e-5 ||
               std::abs(std::fmod(t, 0.5)) < 2e-5 || std::abs(std::fmod(t, 0.5) - 0.5) < 2e-5);
      const auto b = field_basis(f, s, t);
      const Eigen::VectorXd ds = (dense_values(f, s + h, t) - dense_values(f, s - h, t)) / (2 * h);
      const Eigen::VectorXd dt = (dense_values(f, s, t + h) - dense_values(f, s, t - h)) / (2 * h);
      Eigen::VectorXd as = Eigen::VectorXd::Zero(f.size()), at = Eigen::VectorXd::Zero(f.size());
      for (std::size_t k = 0; k < b.indices.size(); ++k) {
        as(b.indices[k]) = b.d_ds(Eigen::Index(k));
        at(b.indices[k]) = b.d_dt(Eigen::Index(k));
      }
      CHECK((as - ds).norm() / as.norm() < 1e-7);
      CHECK((at - dt).norm() / at.norm() < 1e-7);
    }
  }

  TEST_CASE("outside the square") {
    const FieldSpace f(KnotVectord(1, {0, 0, 1, 1}), KnotVectord(1, {0, 0, 1, 1}));
    CHECK_THROWS_AS(field_basis(f, 1.5, 0.5), DomainError);
    CHECK_THROWS_AS(field_basis(f, 0.5, -0.1), DomainError);
  }
}

TEST_SUITE("conforming field") {
  TEST_CASE("C0 line of the map is inherited") {
    const FieldSpace f = FieldSpace::conforming(make_plate_region(), 2, 2);
    CHECK(f.knots_s().multiplicity(0.5) == 2);
    CHECK(f.knots_t().knots().size() == 6);
    CHECK(f.size() == 5 * 3);
    const FieldSpace cubic = FieldSpace::conforming(make_plate_region(), 3, 2);
    CHECK(cubic.knots_s().multiplicity(0.5) == 3);
  }
}

TEST_SUITE("physical_gradients") {
  TEST_CASE("identity trim on the unit square") {
    const Region r = make_identity_region(make_square_surface());
    const FieldSpace f = refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H);
    for (int i = 0; i < 30; ++i) {
      const double s = uniform(), t = uniform();
      const auto g = physical_gradients(r, f, s, t);
      const auto b = field_basis(f, s, t);
      CHECK(g.indices == b.indices);
      CHECK((g.d_dx - b.d_ds).norm() < 1e-13);
      CHECK((g.d_dy - b.d_dt).norm() < 1e-13);
    }
  }

  TEST_CASE("interpolated x has unit gradient") {
    const Region r = polynomial_plate();
    const FieldSpace f = FieldSpace::conforming(r, 2, 2);
    // the field coefficients reproducing x and y come from a collocation fit
    const int n = f.size();
    Eigen::MatrixXd A(4 * n, n);
    Eigen::MatrixXd rhs(4 * n, 2);
    for (int i = 0; i < 4 * n; ++i) {
      const double s = uniform(), t = uniform();
      A.row(i) = dense_values(f, s, t).transpose();
      rhs.row(i) = composite_eval(r, s, t, 0).x.head<2>().transpose();
    }
    const Eigen::MatrixXd c = A.colPivHouseholderQr().solve(rhs);
    CHECK((A * c - rhs).norm() / rhs.norm() < 1e-12);
    for (int i = 0; i < 50; ++i) {
      const auto [s, t] = sample_away_from_half(1e-3);
      const auto g = physical_gradients(r, f, s, t);
      double xx = 0, xy = 0, yx = 0, yy = 0;
      for (std::size_t k = 0; k < g.indices.size(); ++k) {
        const auto e = Eigen::Index(k);
        xx += c(g.indices[k], 0) * g.d_dx(e);
        xy += c(g.indices[k], 0) * g.d_dy(e);
        yx += c(g.indices[k], 1) * g.d_dx(e);
        yy += c(g.indices[k], 1) * g.d_dy(e);
      }
      CHECK(std::abs(xx - 1) < 1e-12);
      CHECK(std::abs(xy) < 1e-12);
      CHECK(std::abs(yx) < 1e-12);
      CHECK(std::abs(yy - 1) < 1e-12);
    }
  }

  TEST_CASE("plate gradients against finite differences") {
    const Region r = scale_region(make_plate_region(), 5.0);
    const FieldSpace f = refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H);
    const double h = 1e-6;
    auto x = [&](double s, double t) { return V2(composite_eval(r, s, t, 0).x.head<2>()); };
    for (int i = 0; i < 50; ++i) {
      double s, t;
      do {
        std::tie(s, t) = sample_away_from_half(1e-3);
      } while (std::abs(std::fmod(s, 0.25)) < 1e-4 || std::abs(std::fmod(s, 0.25) - 0.25) < 1e-4 ||
               std::abs(t - 0.5) < 1e-4);
      Eigen::Matrix2d J;  // rows: d/ds, d/dt of (x, y)
      J.row(0) = ((x(s + h, t) - x(s - h, t)) / (2 * h)).transpose();
      J.row(1) = ((x(s, t + h) - x(s, t - h)) / (2 * h)).transpose();
      const Eigen::VectorXd Ns = (dense_values(f, s + h, t) - dense_values(f, s - h, t)) / (2 * h);
      const Eigen::VectorXd Nt = (dense_values(f, s, t + h) - dense_values(f, s, t - h)) / (2 * h);
      const auto g = physical_gradients(r, f, s, t);
      for (std::size_t k = 0; k < g.indices.size(); ++k) {
        const V2 fd = J.partialPivLu().solve(V2(Ns(g.indices[k]), Nt(g.indices[k])));
        const V2 an(g.d_dx(Eigen::Index(k)), g.d_dy(Eigen::Index(k)));
        CHECK(rel_err(an, fd, 1e-3) < 1e-6);
      }
    }
  }

  TEST_CASE("singular map") {
    Curve2d::ControlPoints pts(2, 2);
    pts << 0, 0.5, 1, 0.5;
    const Curve2d line(KnotVectord(1, {0, 0, 1, 1}), pts);
    const Region flat(make_square_surface(), line, line);
    const FieldSpace f(KnotVectord(1, {0, 0, 1, 1}), KnotVectord(1, {0, 0, 1, 1}));
    CHECK_THROWS_AS(physical_gradients(flat, f, 0.5, 0.5), SingularMapError);
  }
}

TEST_SUITE("assemble") {
  TEST_CASE("symmetric with a rigid translation kernel") {
    PlateConfig cfg;
    cfg.base_refinements = 1;
    cfg.loading = PlateLoading::Exact;
    const Region r = plate_region(cfg);
    const auto sys = assemble(plate_problem(r, plate_field(r, cfg), cfg));
    const Eigen::MatrixXd& K = sys.stiffness;
    const double kmax = K.cwiseAbs().maxCoeff();
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-10 * kmax);
    for (int dir = 0; dir < 2; ++dir) {
      Eigen::VectorXd rb = Eigen::VectorXd::Zero(K.rows());
      for (Eigen::Index k = dir; k < K.rows(); k += 2) rb(k) = 1.0;
      CHECK((K * rb).cwiseAbs().maxCoeff() < 1e-9 * kmax);
    }
    // a rotation is rational on the arc side, so only check positive semi-definiteness
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    CHECK(eig.eigenvalues().minCoeff() > -1e-9 * kmax);
    CHECK(sys.load.size() == K.rows());
  }

  TEST_CASE("constant stress on the identity trim") {
    const Region r = make_identity_region(make_square_surface());
    FieldSpace f = refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H);
    const auto res = solve(square_tension(std::make_shared<TrimmedGeometry>(r), f));
    CHECK(res.residual() < 1e-10);
    for (int i = 0; i < 100; ++i) {
      const auto sig = res.stress(uniform(), uniform());
      CHECK(std::abs(sig(0) - 1) < 1e-10);
      CHECK(std::abs(sig(1)) < 1e-10);
      CHECK(std::abs(sig(2)) < 1e-10);
    }
    const auto c = res.stress(1, 1);
    CHECK(std::abs(c(0) - 1) < 1e-10);
  }

  TEST_CASE("constrained dofs") {
    const Region r = make_identity_region(make_square_surface());
    const FieldSpace f(KnotVectord(1, {0, 0, 1, 1}), KnotVectord(1, {0, 0, 0.5, 1, 1}));
    const auto p = square_tension(std::make_shared<TrimmedGeometry>(r), f);
    // functions 0 and 2 and 4 on s = 0 (x), 0 and 1 on t = 0 (y)
    CHECK(constrained_dofs(p) == std::vector<int>{0, 1, 3, 4, 8});
  }
}

TEST_SUITE("patch tests") {
  TEST_CASE("linear displacement on the trimmed plate topology") {
    const Region r = polynomial_plate();
    const FieldSpace f = FieldSpace::conforming(r, 2, 2);
    const double a = 2e-5, d = -7e-6;
    const auto res = solve(linear_patch_problem(r, f, a, d));
    CHECK(res.residual() < 1e-10);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double s = uniform(), t = uniform();
      const V2 x = composite_eval(r, s, t, 0).x.head<2>();
      const V2 exact(a * x.x(), d * x.y());
      worst = std::max(worst, (res.displacement(s, t) - exact).norm());
      scale = std::max(scale, exact.norm());
    }
    CHECK(worst / scale < 1e-10);
  }

  TEST_CASE("linear displacement survives h-refinement") {
    const Region r = polynomial_plate();
    const FieldSpace f = refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H);
    const auto res = solve(linear_patch_problem(r, f, 1e-5, 3e-6));
    const V2 x = composite_eval(r, 0.3, 0.6, 0).x.head<2>();
    CHECK(rel_err(res.displacement(0.3, 0.6), V2(1e-5 * x.x(), 3e-6 * x.y()), 0.0) < 1e-10);
  }

  TEST_CASE("rational arc is close but not exact") {
    // the rational map is not in the polynomial field space; the error is
    // small and shrinks with refinement
    const Region r = scale_region(make_plate_region(kExactArcWeight), 5.0);
    double errs[2];
    FieldSpace f = FieldSpace::conforming(r, 2, 2);
    for (double& e : errs) {
      const auto res = solve(linear_patch_problem(r, f, 1e-5, 1e-5));
      const V2 x = composite_eval(r, 0.1, 0.05, 0).x.head<2>();
      e = rel_err(res.displacement(0.1, 0.05), V2(1e-5 * x.x(), 1e-5 * x.y()), 0.0);
      f = refine_field(f, RefinementKind::H);
    }
    CHECK(errs[0] < 1e-2);
    CHECK(errs[1] < errs[0]);
  }
}

TEST_SUITE("equivalence") {
  TEST_CASE("identity trim equals the bare surface") {
    for (const Surface3d& srf : {make_square_surface(5.0), wavy_square()}) {
      const Region r = make_identity_region(srf);
      const FieldSpace f = refine_field(FieldSpace::conforming(r, 2, 2), RefinementKind::H);
      auto pt = square_tension(std::make_shared<TrimmedGeometry>(r), f);
      auto pb = square_tension(std::make_shared<SurfaceGeometry>(srf), f);
      const auto top = EdgeCondition::load([](const V2& x, const V2& n) { return V2(0.1 * x.x() * n.y(), 0.3 * n.y()); });
      pt.edges[int(Edge::T1)] = top;
      pb.edges[int(Edge::T1)] = top;
      const auto a = solve(pt), b = solve(pb);
      CHECK((a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff() <
            1e-10 * b.coefficients().cwiseAbs().maxCoeff());
    }
  }
}

TEST_SUITE("kirsch_reference") {
  const Material m;

  TEST_CASE("rim concentration") {
    CHECK(std::abs(kirsch_reference(0, 1, 1, 1, m).stress(0) - 3) < 1e-14);
    CHECK(std::abs(kirsch_reference(0, 2, 2.5, 2, m).stress(0) - 7.5) < 1e-13);
    CHECK(std::abs(kirsch_reference(1, 0, 1, 1, m).stress(1) + 1) < 1e-14);
  }

  TEST_CASE("traction-free hole") {
    for (int i = 0; i < 20; ++i) {
      const double th = uniform(0, 2 * M_PI);
      const V2 n(std::cos(th), std::sin(th));
      const auto s = kirsch_reference(n.x(), n.y(), 1, 1, m).stress;
      CHECK(traction_of(s, n).norm() < 1e-13);
    }
  }

  TEST_CASE("far field") {
    const auto s = kirsch_reference(1e5, 0, 1, 1, m).stress;
    CHECK(std::abs(s(0) - 1) < 1e-9);
    CHECK(std::abs(s(1)) < 1e-9);
    CHECK(std::abs(s(2)) < 1e-9);
    const auto y = kirsch_reference(3e4, 4e4, 1, 1, m).stress;
    CHECK(std::abs(y(0) - 1) < 1e-8);
  }

  TEST_CASE("equilibrium") {
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
      const double r = uniform(1.05, 6), th = uniform(0, 2 * M_PI);
      const double x = r * std::cos(th), y = r * std::sin(th);
      auto s = [&](double a, double b) { return kirsch_reference(a, b, 1, 1, m).stress; };
      const Eigen::Vector3d dx = (s(x + h, y) - s(x - h, y)) / (2 * h);
      const Eigen::Vector3d dy = (s(x, y + h) - s(x, y - h)) / (2 * h);
      CHECK(std::abs(dx(0) + dy(2)) < 1e-6);
      CHECK(std::abs(dx(2) + dy(1)) < 1e-6);
    }
  }

  TEST_CASE("displacement is compatible with the stress") {
    const double h = 1e-6;
    const Eigen::Matrix3d D = plane_stress_matrix(m);
    for (int i = 0; i < 30; ++i) {
      const double r = uniform(1.05, 6), th = uniform(0, 2 * M_PI);
      const double x = r * std::cos(th), y = r * std::sin(th);
      auto u = [&](double a, double b) { return kirsch_reference(a, b, 1, 1, m).displacement; };
      const V2 ux = (u(x + h, y) - u(x - h, y)) / (2 * h), uy = (u(x, y + h) - u(x, y - h)) / (2 * h);
      const Eigen::Vector3d eps(ux.x(), uy.y(), ux.y() + uy.x());
      CHECK(rel_err(D * eps, kirsch_reference(x, y, 1, 1, m).stress) < 1e-6);
    }
  }

  TEST_CASE("inside the hole") { CHECK_THROWS_AS(kirsch_reference(0.3, 0.3, 1, 1, m), DomainError); }
}

TEST_SUITE("material") {
  TEST_CASE("validation") {
    CHECK_NOTHROW(Material{}.validate());
    CHECK_THROWS_AS((Material{-1, 0.3}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Material{1, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Material{1, -0.1}.validate()), InvalidArgument);
  }

  TEST_CASE("plane stress matrix") {
    const Eigen::Matrix3d D = plane_stress_matrix({1e5, 0.3});
    const double c = 1e5 / (1 - 0.09);
    CHECK(std::abs(D(0, 0) - c) < 1e-9);
    CHECK(std::abs(D(0, 1) - 0.3 * c) < 1e-9);
    CHECK(std::abs(D(2, 2) - 0.35 * c) < 1e-9);
  }
}

TEST_SUITE("refine_field") {
  TEST_CASE("h-refinement is nested") {
    const Region r = make_plate_region();
    const FieldSpace coarse = FieldSpace::conforming(r, 2, 2);
    const FieldSpace fine = refine_field(coarse, RefinementKind::H);
    CHECK(fine.knots_s().multiplicity(0.5) == 2);
    const int n = fine.size();
    Eigen::MatrixXd A(5 * n, n), B(5 * n, coarse.size());
    for (int i = 0; i < 5 * n; ++i) {
      const double s = uniform(), t = uniform();
      A.row(i) = dense_values(fine, s, t).transpose();
      B.row(i) = dense_values(coarse, s, t).transpose();
    }
    const Eigen::MatrixXd c = A.colPivHouseholderQr().solve(B);
    CHECK((A * c - B).norm() / B.norm() < 1e-12);
  }

  TEST_CASE("p-refinement dimension") {
    const FieldSpace f = FieldSpace::conforming(make_plate_region(), 2, 2);
    const FieldSpace e = refine_field(f, RefinementKind::P);
    CHECK(e.degree_s() == 3);
    CHECK(e.degree_t() == 3);
    // one new function per non-empty span in each direction
    CHECK(e.count_s() == 5 + 2);
    CHECK(e.count_t() == 3 + 1);
    CHECK(e.knots_s().multiplicity(0.5) == 3);
  }

  TEST_CASE("geometry is untouched") {
    PlateConfig cfg;
    const Region r = plate_region(cfg);
    const auto p0 = plate_problem(r, plate_field(r, cfg), cfg);
    cfg.stage = 2;
    const auto p2 = plate_problem(r, plate_field(r, cfg), cfg);
    for (int i = 0; i < 20; ++i) {
      const double s = uniform(), t = uniform();
      const auto a = p0.geometry->evaluate(s, t, 2), b = p2.geometry->evaluate(s, t, 2);
      CHECK(a.x == b.x);
      CHECK(a.dx_ds == b.dx_ds);
      CHECK(a.d2x_dsdt == b.d2x_dsdt);
    }
    CHECK(p2.field.size() > p0.field.size());
  }
}

TEST_SUITE("plate config") {
  TEST_CASE("keys") {
    const auto c = parse_plate_config("# comment\nstage = 1\nbc = exact\narc_weight = exact\n degree=3 \n"
                                      "youngs_modulus = 2e5\npoisson_ratio=0.25\ngeometry = x.trim\n");
    CHECK(c.stage == 1);
    CHECK(c.loading == PlateLoading::Exact);
    CHECK(c.arc_weight == kExactArcWeight);
    CHECK(c.degree == 3);
    CHECK(c.material.youngs_modulus == 2e5);
    CHECK(c.material.poisson_ratio == 0.25);
    CHECK(c.geometry == "x.trim");
    CHECK(parse_plate_config("").scale == 5.0);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_plate_config("colour = red"), ParseError);
    CHECK_THROWS_AS(parse_plate_config("stage = 1.5"), ParseError);
    CHECK_THROWS_AS(parse_plate_config("bc = fixed"), ParseError);
    CHECK_THROWS_AS(parse_plate_config("scale = 5x"), ParseError);
    CHECK_THROWS_AS(parse_plate_config("stage"), ParseError);
    CHECK_THROWS_AS(parse_loading("both"), InvalidArgument);
  }
}

TEST_SUITE("plate") {
  TEST_CASE("two stages converge") {
    PlateConfig cfg;
    cfg.loading = PlateLoading::Exact;
    cfg.base_refinements = 1;
    const auto rows = convergence_study(cfg, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].l2_stress_error < rows[0].l2_stress_error);
    CHECK(rows[1].dofs > rows[0].dofs);
    CHECK(rows[1].mesh_size == doctest::Approx(rows[0].mesh_size / 2));
    for (const auto& row : rows) CHECK(row.residual < 1e-10);
    const std::string csv = convergence_csv(rows);
    CHECK(csv.rfind("stage,dofs,L2_stress_error,rim_stress\n0,", 0) == 0);
  }

  TEST_CASE("uniform right-edge loading solves") {
    PlateConfig cfg;
    cfg.base_refinements = 1;
    const auto row = solve_plate(cfg);
    CHECK(row.l2_stress_error > 0.0);
    CHECK(row.l2_stress_error < 0.2);
    CHECK(row.rim_stress > 2.5);
  }
}
