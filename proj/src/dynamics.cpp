#include "nambu/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nambu {

std::size_t IntegratorConfig::step_count() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be nonnegative");
  if (t_end > 0.0 && dt > t_end) throw std::invalid_argument("dt must not exceed t_end");
  const double steps = std::round(t_end / dt);
  if (steps >= static_cast<double>(std::numeric_limits<std::ptrdiff_t>::max() / 2))
    throw std::invalid_argument("step count overflows");
  return static_cast<std::size_t>(steps);
}

CompiledField::CompiledField(const VectorField& X) {
  for (const auto& c : X.components()) comps_.emplace_back(c);
  for (const auto& row : jacobian(X)) {
    for (const auto& p : row) {
      jac_.emplace_back(p);
      jac_nonzero_.push_back(!p.is_zero());
    }
  }
}

void CompiledField::eval(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i](x);
}

void CompiledField::eval_jacobian(std::span<const double> x, Eigen::MatrixXd& out) const {
  const std::size_t n = comps_.size();
  out.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (jac_nonzero_[j * n + i]) out(j, i) = jac_[j * n + i](x);
}

namespace {

bool finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

Trajectory integrate(const VectorField& X, std::span<const double> x0, const IntegratorConfig& cfg) {
  const std::size_t n = X.dim();
  if (x0.size() != n) throw std::invalid_argument("initial state length != dim");
  const std::size_t steps = cfg.step_count();
  const double h = cfg.dt;
  const CompiledField field(X);
  const auto N = static_cast<Eigen::Index>(n);

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  std::vector<double> x(x0.begin(), x0.end());
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(N, N);
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  if (cfg.with_jacobian) traj.jacobians.push_back(J);
  if (!finite(x)) throw IntegrationFailure("non-finite initial state", 0, std::move(traj));

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  Eigen::MatrixXd A, K1, K2, K3, K4, Jtmp;
  auto stage = [&](const std::vector<double>& xs, const Eigen::MatrixXd& Js, std::vector<double>& k,
                   Eigen::MatrixXd& K) {
    field.eval(xs, k);
    if (cfg.with_jacobian) {
      field.eval_jacobian(xs, A);
      K.noalias() = A * Js;
    }
  };

  for (std::size_t s = 0; s < steps; ++s) {
    stage(x, J, k1, K1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    if (cfg.with_jacobian) Jtmp = J + 0.5 * h * K1;
    stage(tmp, Jtmp, k2, K2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    if (cfg.with_jacobian) Jtmp = J + 0.5 * h * K2;
    stage(tmp, Jtmp, k3, K3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    if (cfg.with_jacobian) Jtmp = J + h * K3;
    stage(tmp, Jtmp, k4, K4);
    for (std::size_t i = 0; i < n; ++i) x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (cfg.with_jacobian) J += (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);

    if (!finite(x) || (cfg.with_jacobian && !J.allFinite()))
      throw IntegrationFailure("non-finite state at step " + std::to_string(s + 1), s + 1, std::move(traj));
    traj.times.push_back(static_cast<double>(s + 1) * h);
    traj.states.push_back(x);
    if (cfg.with_jacobian) traj.jacobians.push_back(J);
  }
  return traj;
}

Trajectory integrate(const NambuSystem& sys, std::span<const double> x0, const IntegratorConfig& cfg) {
  return integrate(nambu_vector_field(sys), x0, cfg);
}

namespace {

Trajectory run_one(const VectorField& X, const std::vector<double>& x0, const IntegratorConfig& cfg) {
  try {
    return integrate(X, x0, cfg);
  } catch (const IntegrationFailure& e) {
    return e.partial();
  }
}

}  // namespace

std::vector<Trajectory> integrate_batch(const VectorField& X, const std::vector<std::vector<double>>& x0s,
                                        const IntegratorConfig& cfg) {
  cfg.step_count();
  for (const auto& x0 : x0s)
    if (x0.size() != X.dim()) throw std::invalid_argument("initial state length != dim");
  std::vector<Trajectory> out(x0s.size());
  const auto count = static_cast<std::ptrdiff_t>(x0s.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = run_one(X, x0s[i], cfg);
  return out;
}

std::vector<Trajectory> integrate_batch_serial(const VectorField& X,
                                               const std::vector<std::vector<double>>& x0s,
                                               const IntegratorConfig& cfg) {
  std::vector<Trajectory> out;
  out.reserve(x0s.size());
  for (const auto& x0 : x0s) {
    if (x0.size() != X.dim()) throw std::invalid_argument("initial state length != dim");
    out.push_back(run_one(X, x0, cfg));
  }
  return out;
}

std::vector<double> monitor_invariant(const Trajectory& traj, const Polynomial& f) {
  std::vector<double> out;
  if (traj.states.empty()) return out;
  const CompiledPolynomial cf(f);
  const double f0 = cf(traj.states.front());
  out.reserve(traj.size());
  for (const auto& x : traj.states) out.push_back(cf(x) - f0);
  return out;
}

std::vector<double> monitor_volume(const Trajectory& traj) {
  if (!traj.has_jacobians()) throw std::invalid_argument("volume monitor needs the Jacobian");
  std::vector<double> out;
  out.reserve(traj.jacobians.size());
  for (const auto& J : traj.jacobians) out.push_back(J.determinant() - 1.0);
  return out;
}

std::vector<double> monitor_two_form(const Trajectory& traj, const DifferentialForm& beta) {
  if (!traj.has_jacobians()) throw std::invalid_argument("2-form monitor needs the Jacobian");
  if (beta.degree() != 2) throw std::invalid_argument("2-form monitor expects a 2-form");
  std::vector<double> out;
  if (traj.states.empty()) return out;
  const PointForm at_start = eval_form(beta, traj.states.front());
  out.reserve(traj.size());
  for (std::size_t s = 0; s < traj.size(); ++s)
    out.push_back(max_abs_difference(pullback_at_point(beta, traj.jacobians[s], traj.states[s]), at_start));
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace nambu
