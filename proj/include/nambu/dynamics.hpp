#pragma once

#include "nambu/errors.hpp"
#include "nambu/exterior.hpp"
#include "nambu/nambu.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nambu {

struct IntegratorConfig {
  double dt = 1e-3;
  /// t_end == 0 gives a single-sample trajectory.
  double t_end = 10.0;
  bool with_jacobian = false;

  /// round(t_end / dt); validates the configuration.
  std::size_t step_count() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<Eigen::MatrixXd> jacobians;  // empty unless with_jacobian
  std::map<std::string, std::vector<double>> channels;

  std::size_t size() const { return times.size(); }
  bool has_jacobians() const { return !jacobians.empty(); }
};

/// Thrown by `integrate` on a non-finite state; carries the trajectory up to
/// the last finite sample.
class IntegrationFailure : public NumericFailure {
 public:
  IntegrationFailure(const std::string& what, std::size_t step, Trajectory partial)
      : NumericFailure(what), step_(step), partial_(std::move(partial)) {}

  std::size_t step() const { return step_; }
  const Trajectory& partial() const { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

/// Polynomial vector field and its symbolic Jacobian flattened for RK4 stages.
class CompiledField {
 public:
  explicit CompiledField(const VectorField& X);

  std::size_t dim() const { return comps_.size(); }
  void eval(std::span<const double> x, std::span<double> out) const;
  void eval_jacobian(std::span<const double> x, Eigen::MatrixXd& out) const;

 private:
  std::vector<CompiledPolynomial> comps_;
  std::vector<CompiledPolynomial> jac_;  // row-major
  std::vector<bool> jac_nonzero_;
};

/// Fixed-step classical RK4 on x' = X(x); with_jacobian co-integrates
/// J' = DX(x) J, J(0) = I, through the same stages.
Trajectory integrate(const VectorField& X, std::span<const double> x0, const IntegratorConfig& cfg);
Trajectory integrate(const NambuSystem& sys, std::span<const double> x0, const IntegratorConfig& cfg);

/// Independent initial conditions; OpenMP, results in input order. A failed
/// run is returned as its partial trajectory.
std::vector<Trajectory> integrate_batch(const VectorField& X, const std::vector<std::vector<double>>& x0s,
                                        const IntegratorConfig& cfg);
std::vector<Trajectory> integrate_batch_serial(const VectorField& X,
                                               const std::vector<std::vector<double>>& x0s,
                                               const IntegratorConfig& cfg);

/// f(x(t)) - f(x0).
std::vector<double> monitor_invariant(const Trajectory& traj, const Polynomial& f);
/// det J(t) - 1.
std::vector<double> monitor_volume(const Trajectory& traj);
/// max componentwise |(g^t)^* beta at x0 - beta(x0)|.
std::vector<double> monitor_two_form(const Trajectory& traj, const DifferentialForm& beta);

double max_abs(std::span<const double> v);

}  // namespace nambu
