#pragma once

// Pluriclosed flow on left-invariant metrics:
//   d/dt g = -(rho^B)^{1,1}(., J.),   d/dt beta = (rho^B)^{2,0},   beta(0) = 0,
// integrated with classical RK4. With these signs del omega_t = del omega_0 + delbar beta(t).

#include "samelson/geometry.hpp"
#include "samelson/samelson.hpp"

#include <random>
#include <string>
#include <vector>

namespace samelson {

struct FlowConfig {
  double dt = 0.01;
  double t_max = 100.0;
  double eps_conv = 1e-8;   // on |flow_rhs|_inf
  double eps_pc = 1e-8;     // pluriclosed residual, relative to |g|_inf
  int sustain = 10;         // consecutive steps below eps_conv
  int record_every = 10;    // trajectory sampling in steps

  void validate() const;
};

/// Exact frame for invariant Aeppli classes of real (1,1)-forms:
/// K = pluriclosed real (1,1)-forms, E = {(d eta)^{1,1}}, reps = complement of E in K.
/// The first reps are the bi-invariant metric forms of the irreducible components.
struct AeppliFrame {
  MatR K, E, reps;        // columns in 2-form component coordinates
  MatD coord_map;         // h x dim(Lambda^2): Aeppli coordinates of a form in K
  int dimension = 0;
  int metric_reps = 0;    // how many reps are component metric forms
};

AeppliFrame aeppli_frame(const LieAlgebra& L, const SamelsonStructure& S);

/// 2-form components of omega = g(J., .) in Form rank order.
Eigen::VectorXd omega_components(const MatD& J, const MatD& g);
Eigen::VectorXd aeppli_coordinates(const AeppliFrame& F, const MatD& J, const MatD& g);

/// Throws std::domain_error when g is not pluriclosed (relative tolerance eps_pc).
MatD flow_rhs(const LieAlgebra& L, const MatD& J, const MatD& g, double eps_pc = 1e-8);

struct FlowSample {
  double t = 0;
  MatD g;
  MatC beta;                // (2,0)-form
  double ricci11_norm = 0;  // |rho^{1,1}|_inf
  double flat_norm = 0;     // max |R^B|
  double pluriclosed_residual = 0;
  double rhs_norm = 0;
  Eigen::VectorXd aeppli;
};

struct FlowResult {
  std::vector<FlowSample> trajectory;  // sampled, always including start and end
  std::string status;                  // converged | t_max | lost_positivity | integrator_drift
  bool converged = false;
  int steps = 0;
  const FlowSample& start() const { return trajectory.front(); }
  const FlowSample& end() const { return trajectory.back(); }
};

/// frame may be null (no Aeppli coordinates recorded).
FlowResult integrate_flow(const LieAlgebra& L, const MatD& J, const MatD& g0, const FlowConfig& cfg,
                          const AeppliFrame* frame = nullptr);

/// max over samples of |del omega_t - del omega_0 - delbar beta(t)|_inf on the complexified basis.
double torsion_residual(const LieAlgebra& L, const MatD& J, const FlowResult& run);

/// g0 + a random pluriclosed J-invariant perturbation with |dg|_inf = amplitude |g0|_inf,
/// drawn from the span of K; resampled until positive-definite.
MatD pluriclosed_perturbation(const AeppliFrame& F, const MatD& J, const MatD& g0, double amplitude,
                              std::mt19937_64& rng);

std::string trajectory_csv(const FlowResult& run);
nlohmann::json endpoint_json(const FlowResult& run);

}  // namespace samelson
