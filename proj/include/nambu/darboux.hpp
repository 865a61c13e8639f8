#pragma once

#include "nambu/errors.hpp"
#include "nambu/exterior.hpp"
#include "nambu/poly.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace nambu {

/// Closed 3-form sum_i f_i dx_{3i+1}^dx_{3i+2}^dx_{3i+3} on R^{3n}, each f_i a
/// function of its own block's coordinates only, with f_i(0) != 0.
struct BlockThreeForm {
  std::size_t n = 0;
  std::vector<Polynomial> coeffs;

  std::size_t dim() const { return 3 * n; }
  DifferentialForm form() const;
};

/// Validates `omega` as a BlockThreeForm. Throws UnsupportedForm for
/// cross-block or non-separable coefficients and DegenerateForm when some
/// f_i(0) == 0.
BlockThreeForm check_block_form(const DifferentialForm& omega);

/// Homotopy operator of the radial contraction to the origin:
/// (H w)_{I}(x) = sum_j x_j int_0^1 t^{k-1} w_{j,I}(t x) dt.
/// Requires dw == 0 (throws std::invalid_argument otherwise); then
/// d(H w) == w and H w vanishes at the origin.
DifferentialForm poincare_antiderivative(const DifferentialForm& closed_form);

/// Homotopy operator without the closedness check (dH + Hd = id holds for any w).
DifferentialForm homotopy_operator(const DifferentialForm& w);

struct DarbouxOptions {
  double dt = 1e-3;
  double eps_min = 1e-8;
  /// Sample points must satisfy |x| <= radius.
  double radius = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 100'000'000;
};

/// Moser path from a BlockThreeForm w to its constant value w1 at the origin.
class MoserPath {
 public:
  explicit MoserPath(BlockThreeForm omega);

  std::size_t n() const { return omega_.n; }
  std::size_t dim() const { return omega_.dim(); }
  const BlockThreeForm& omega() const { return omega_; }
  /// Constant form with per-block coefficient f_i(0).
  const DifferentialForm& omega_const() const { return omega1_; }
  /// w1 - w.
  const DifferentialForm& difference() const { return tilde_; }
  /// H(w1 - w); d(alpha) = w1 - w and alpha(0) = 0.
  const DifferentialForm& alpha() const { return alpha_; }

  /// X_t(x) solving i_X w_t = -alpha, w_t = (1-t) w + t w1. Throws
  /// MoserDegenerate if some |f_{i,t}(x)| < eps_min or f_{i,t}(x) has the
  /// opposite sign to f_i(0).
  std::vector<double> vector_field(double t, std::span<const double> x, double eps_min = 1e-8) const;

  /// Vector field value and its spatial Jacobian (row j = grad of X^j).
  void vector_field_with_jacobian(double t, std::span<const double> x, double eps_min,
                                  std::vector<double>& value, Eigen::MatrixXd& jac) const;

 private:
  struct Block {
    CompiledPolynomial f;
    double f0 = 0.0;
    // Local components alpha_{23}, alpha_{13}, alpha_{12} and their gradients.
    CompiledPolynomial a[3];
    CompiledPolynomial df[3];
    CompiledPolynomial da[3][3];
  };

  BlockThreeForm omega_;
  DifferentialForm omega1_;
  DifferentialForm tilde_;
  DifferentialForm alpha_;
  std::vector<Block> blocks_;
};

std::vector<double> moser_vector_field(const MoserPath& path, double t, std::span<const double> x,
                                       double eps_min = 1e-8);

struct MoserMap {
  std::vector<double> image;
  Eigen::MatrixXd jacobian;
};

/// Integrates dF/dt = X_t(F) on [0, 1] from x0 with fixed-step RK4 together with
/// the variational equation, returning F_1(x0) and DF_1(x0).
MoserMap moser_normalize(const MoserPath& path, std::span<const double> x0,
                         const DarbouxOptions& opts = {});

struct DarbouxPoint {
  std::vector<double> x;
  double error = 0.0;
  std::string status = "ok";  // "ok" or "degenerate"
};

struct DarbouxReport {
  double max_error = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<DarbouxPoint> points;

  bool any_degenerate() const;
};

/// Max componentwise |(F_1^* w1)(x) - w(x)| for one point.
double darboux_residual(const MoserPath& path, std::span<const double> x, const DarbouxOptions& opts);

/// OpenMP over samples; results assembled in input order.
DarbouxReport verify_darboux(const MoserPath& path, const std::vector<std::vector<double>>& samples,
                             const DarbouxOptions& opts, double tol);

/// Single-threaded reference of verify_darboux.
DarbouxReport verify_darboux_serial(const MoserPath& path,
                                    const std::vector<std::vector<double>>& samples,
                                    const DarbouxOptions& opts, double tol);

/// `count` points uniform in the ball |x| <= radius in R^dim, from a
/// std::mt19937_64 seeded with `seed` (rejection sampling from the cube).
std::vector<std::vector<double>> sample_ball(std::size_t dim, std::size_t count, double radius,
                                             std::uint64_t seed);

}  // namespace nambu
