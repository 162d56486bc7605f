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

#ifndef TRIMIGA_PLATE_SOLVER_HPP
#define TRIMIGA_PLATE_SOLVER_HPP

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "trimiga/elasticity.hpp"
#include "trimiga/field_space.hpp"
#include "trimiga/quadrature.hpp"
#include "trimiga/trim_map.hpp"

// Plane-stress Galerkin analysis on a parametric domain (s,t) in [0,1]^2 with
// the displacement field approximated in a FieldSpace over (s,t).

namespace trimiga {

/// (s,t) -> x map of the analysis domain.
class Geometry {
 public:
  virtual ~Geometry() = default;
  /// Only x, dx_ds, dx_dt and jacobian_scale are required for order 1.
  virtual CompositeDerivatives<double> evaluate(double s, double t, int order) const = 0;
  /// Lines s = const where the map loses smoothness.
  virtual std::vector<Breakpoint<double>> breaklines() const = 0;
  virtual int max_degree() const = 0;
};

/// The double map of a trimmed region.
class TrimmedGeometry final : public Geometry {
 public:
  explicit TrimmedGeometry(Region region) : region_(std::move(region)) {}
  CompositeDerivatives<double> evaluate(double s, double t, int order) const override {
    return composite_eval(region_, s, t, order);
  }
  std::vector<Breakpoint<double>> breaklines() const override { return breakpoints(region_); }
  int max_degree() const override { return region_.max_degree(); }
  const Region& region() const noexcept { return region_; }

 private:
  Region region_;
};

/// An untrimmed surface used directly, (u,v) = (s,t) with no blend.
class SurfaceGeometry final : public Geometry {
 public:
  explicit SurfaceGeometry(Surface3d surface) : surface_(std::move(surface)) {}
  CompositeDerivatives<double> evaluate(double s, double t, int order) const override;
  std::vector<Breakpoint<double>> breaklines() const override { return {}; }
  int max_degree() const override { return std::max(surface_.degree_u(), surface_.degree_v()); }

 private:
  Surface3d surface_;
};

/// Field functions with derivatives with respect to physical (x,y).
struct PhysicalBasis {
  std::vector<int> indices;
  Eigen::VectorXd values;
  Eigen::VectorXd d_dx;
  Eigen::VectorXd d_dy;
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  double det = 0.0;  // signed d(x,y)/d(s,t)
};

/// Solves [dx_ds dx_dt]^T grad_x N = grad_st N at one point. Throws
/// SingularMapError when the planar Jacobian vanishes.
PhysicalBasis physical_gradients(const Geometry& geometry, const FieldSpace& field, double s, double t);
PhysicalBasis physical_gradients(const Region& region, const FieldSpace& field, double s, double t);

enum class Edge { S0 = 0, S1 = 1, T0 = 2, T1 = 3 };

/// Traction as a function of physical position and outward unit normal.
using TractionFunction = std::function<Eigen::Vector2d(const Eigen::Vector2d& x, const Eigen::Vector2d& normal)>;

/// One condition per edge: either a zero displacement component (symmetry
/// plane) or a traction. A default-constructed condition is traction free.
struct EdgeCondition {
  enum class Kind { Traction, FixX, FixY } kind = Kind::Traction;
  TractionFunction traction;

  static EdgeCondition free() { return {}; }
  static EdgeCondition fix_x() { return {Kind::FixX, {}}; }
  static EdgeCondition fix_y() { return {Kind::FixY, {}}; }
  static EdgeCondition load(TractionFunction f) { return {Kind::Traction, std::move(f)}; }
};

struct ElasticityProblem {
  std::shared_ptr<const Geometry> geometry;
  FieldSpace field;
  Material material;
  std::array<EdgeCondition, 4> edges;  // indexed by Edge
  int quadrature_order = 0;            // 0: max degree + 1
};

/// Cells of the (s,t) square aligned with map breaklines and field knots.
std::vector<IntegrationRegion> integration_cells(const Geometry& geometry, const FieldSpace& field);

int quadrature_order(const ElasticityProblem& problem);

struct LinearSystem {
  Eigen::MatrixXd stiffness;
  Eigen::VectorXd load;
};

/// Unconstrained stiffness and traction load. Unknowns are interleaved:
/// 2k is the x-component and 2k+1 the y-component of field function k.
LinearSystem assemble(const ElasticityProblem& problem);

/// Dof indices removed by FixX / FixY edges, ascending.
std::vector<int> constrained_dofs(const ElasticityProblem& problem);

class SolveResult {
 public:
  SolveResult(std::shared_ptr<const Geometry> geometry, FieldSpace field, Material material,
              Eigen::VectorXd coefficients, int free_dofs, double residual);

  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  int dofs() const noexcept { return static_cast<int>(coefficients_.size()); }
  int free_dofs() const noexcept { return free_dofs_; }
  /// ||K u - f|| / ||f|| on the free dofs.
  double residual() const noexcept { return residual_; }
  const FieldSpace& field() const noexcept { return field_; }
  const Geometry& geometry() const noexcept { return *geometry_; }

  Eigen::Vector2d displacement(double s, double t) const;
  /// (sxx, syy, sxy) at (s,t).
  Eigen::Vector3d stress(double s, double t) const;

 private:
  std::shared_ptr<const Geometry> geometry_;
  FieldSpace field_;
  Material material_;
  Eigen::Matrix3d constitutive_;
  Eigen::VectorXd coefficients_;
  int free_dofs_;
  double residual_;
};

/// Assemble, eliminate constrained rows and columns, Cholesky solve. Throws
/// SolveError if the reduced stiffness is not positive definite.
SolveResult solve(const ElasticityProblem& problem);

using StressFunction = std::function<Eigen::Vector3d(const Eigen::Vector2d& x)>;

/// sqrt(int |s_h - s|^2) / sqrt(int |s|^2) with the Frobenius norm, using
/// `order` Gauss points per direction on the assembly cells.
double relative_stress_error(const SolveResult& result, const StressFunction& exact, int order);

}  // namespace trimiga

#endif  // TRIMIGA_PLATE_SOLVER_HPP
