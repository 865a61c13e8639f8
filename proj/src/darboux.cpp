#include "nambu/darboux.hpp"

#include "nambu/nambu.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nambu {

DifferentialForm BlockThreeForm::form() const {
  DifferentialForm w(dim(), 3);
  for (int i = 0; i < static_cast<int>(n); ++i) w.add({3 * i + 1, 3 * i + 2, 3 * i + 3}, coeffs[i]);
  return w;
}

BlockThreeForm check_block_form(const DifferentialForm& omega) {
  if (omega.degree() != 3) throw UnsupportedForm("unsupported form: expected a 3-form");
  if (omega.dim() % 3 != 0) throw UnsupportedForm("unsupported form: dimension is not a multiple of 3");
  BlockThreeForm out{omega.dim() / 3, {}};
  out.coeffs.assign(out.n, Polynomial(omega.dim()));

  for (const auto& [idx, p] : omega.components()) {
    const int block = (idx[0] - 1) / 3;
    if (idx[0] != 3 * block + 1 || idx[1] != 3 * block + 2 || idx[2] != 3 * block + 3)
      throw UnsupportedForm("unsupported form: cross-block component");
    for (std::size_t v = 1; v <= omega.dim(); ++v) {
      if ((static_cast<int>(v) - 1) / 3 != block && p.depends_on(v))
        throw UnsupportedForm("not closed/block-separable: block " + std::to_string(block + 1) +
                              " coefficient depends on x" + std::to_string(v));
    }
    out.coeffs[block] = p;
  }
  for (std::size_t i = 0; i < out.n; ++i)
    if (out.coeffs[i].constant_term() == 0)
      throw DegenerateForm("degenerate at base point: block " + std::to_string(i + 1) +
                           " coefficient vanishes at the origin");
  return out;
}

DifferentialForm homotopy_operator(const DifferentialForm& w) {
  if (w.degree() < 1) throw std::invalid_argument("homotopy operator needs degree >= 1");
  const auto k = static_cast<unsigned>(w.degree());
  DifferentialForm out(w.dim(), w.degree() - 1);
  for (const auto& [idx, p] : w.components()) {
    const Polynomial r = radial_integral(p, k);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      IndexTuple rest;
      for (std::size_t q = 0; q < idx.size(); ++q)
        if (q != s) rest.push_back(idx[q]);
      Polynomial term = Polynomial::variable(w.dim(), idx[s]) * r;
      out.add(std::move(rest), (s % 2 == 0) ? term : -term);
    }
  }
  return out;
}

DifferentialForm poincare_antiderivative(const DifferentialForm& closed_form) {
  if (!exterior_derivative(closed_form).is_zero())
    throw std::invalid_argument("Poincare antiderivative needs a closed form");
  return homotopy_operator(closed_form);
}

MoserPath::MoserPath(BlockThreeForm omega)
    : omega_(std::move(omega)), omega1_(omega_.dim(), 3), tilde_(omega_.dim(), 3), alpha_(omega_.dim(), 2) {
  const std::size_t d = omega_.dim();
  for (int i = 0; i < static_cast<int>(omega_.n); ++i)
    omega1_.add({3 * i + 1, 3 * i + 2, 3 * i + 3}, Polynomial::constant(d, omega_.coeffs[i].constant_term()));
  tilde_ = omega1_ - omega_.form();
  alpha_ = poincare_antiderivative(tilde_);

  for (int i = 0; i < static_cast<int>(omega_.n); ++i) {
    const int a = 3 * i + 1, b = 3 * i + 2, c = 3 * i + 3;
    Block blk;
    blk.f = CompiledPolynomial(omega_.coeffs[i]);
    blk.f0 = omega_.coeffs[i].constant_term().get_d();
    const Polynomial comps[3] = {alpha_.component({b, c}), alpha_.component({a, c}), alpha_.component({a, b})};
    for (int r = 0; r < 3; ++r) {
      blk.a[r] = CompiledPolynomial(comps[r]);
      blk.df[r] = CompiledPolynomial(diff(omega_.coeffs[i], 3 * i + r + 1));
      for (int col = 0; col < 3; ++col) blk.da[r][col] = CompiledPolynomial(diff(comps[r], 3 * i + col + 1));
    }
    blocks_.push_back(std::move(blk));
  }
}

namespace {

// X^{a} = -alpha_{bc}/f_t, X^{b} = +alpha_{ac}/f_t, X^{c} = -alpha_{ab}/f_t.
constexpr double kSign[3] = {-1.0, 1.0, -1.0};

// f_t must keep the sign of f0: a flip means the path crossed f_t = 0 between samples.
double block_coefficient(double f, double f0, double t, double eps_min, std::size_t block) {
  const double ft = f + t * (f0 - f);
  if (!(std::abs(ft) >= eps_min) || (ft > 0) != (f0 > 0))
    throw MoserDegenerate("Moser path degenerates in block " + std::to_string(block + 1));
  return ft;
}

}  // namespace

std::vector<double> MoserPath::vector_field(double t, std::span<const double> x, double eps_min) const {
  if (x.size() != dim()) throw std::invalid_argument("point length != dim");
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& blk = blocks_[i];
    const double ft = block_coefficient(blk.f(x), blk.f0, t, eps_min, i);
    for (int r = 0; r < 3; ++r) out[3 * i + r] = kSign[r] * blk.a[r](x) / ft;
  }
  return out;
}

void MoserPath::vector_field_with_jacobian(double t, std::span<const double> x, double eps_min,
                                           std::vector<double>& value, Eigen::MatrixXd& jac) const {
  if (x.size() != dim()) throw std::invalid_argument("point length != dim");
  const auto d = static_cast<Eigen::Index>(dim());
  value.assign(dim(), 0.0);
  jac.setZero(d, d);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& blk = blocks_[i];
    const double ft = block_coefficient(blk.f(x), blk.f0, t, eps_min, i);
    double dft[3];
    for (int c = 0; c < 3; ++c) dft[c] = (1.0 - t) * blk.df[c](x);
    for (int r = 0; r < 3; ++r) {
      const double ar = blk.a[r](x);
      value[3 * i + r] = kSign[r] * ar / ft;
      for (int c = 0; c < 3; ++c)
        jac(3 * i + r, 3 * i + c) = kSign[r] * (blk.da[r][c](x) * ft - ar * dft[c]) / (ft * ft);
    }
  }
}

std::vector<double> moser_vector_field(const MoserPath& path, double t, std::span<const double> x,
                                       double eps_min) {
  return path.vector_field(t, x, eps_min);
}

MoserMap moser_normalize(const MoserPath& path, std::span<const double> x0, const DarbouxOptions& opts) {
  const std::size_t d = path.dim();
  if (x0.size() != d) throw std::invalid_argument("point length != dim");
  if (!(opts.dt > 0.0) || opts.dt > 1.0) throw std::invalid_argument("dt must lie in (0, 1]");
  double norm2 = 0.0;
  for (double v : x0) norm2 += v * v;
  if (std::sqrt(norm2) > opts.radius) throw std::invalid_argument("sample lies outside the configured radius");
  const double steps_real = std::round(1.0 / opts.dt);
  if (steps_real > static_cast<double>(opts.max_steps))
    throw NumericFailure("Moser integration step count overflow");
  const auto steps = static_cast<std::size_t>(steps_real);
  const double h = 1.0 / static_cast<double>(steps);

  using Vec = Eigen::VectorXd;
  using Mat = Eigen::MatrixXd;
  const auto n = static_cast<Eigen::Index>(d);
  Vec x = Eigen::Map<const Vec>(x0.data(), n);
  Mat J = Mat::Identity(n, n);

  std::vector<double> val;
  Mat A;
  auto stage = [&](double t, const Vec& xs, const Mat& Js, Vec& kx, Mat& kJ) {
    path.vector_field_with_jacobian(t, std::span<const double>(xs.data(), d), opts.eps_min, val, A);
    kx = Eigen::Map<const Vec>(val.data(), n);
    kJ.noalias() = A * Js;
  };

  Vec k1, k2, k3, k4;
  Mat K1, K2, K3, K4;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * h;
    stage(t, x, J, k1, K1);
    stage(t + 0.5 * h, x + 0.5 * h * k1, J + 0.5 * h * K1, k2, K2);
    stage(t + 0.5 * h, x + 0.5 * h * k2, J + 0.5 * h * K2, k3, K3);
    stage(t + h, x + h * k3, J + h * K3, k4, K4);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    J += (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
    if (!x.allFinite() || !J.allFinite())
      throw NumericFailure("non-finite state in Moser integration at step " + std::to_string(s + 1));
  }
  return {std::vector<double>(x.data(), x.data() + n), J};
}

bool DarbouxReport::any_degenerate() const {
  for (const auto& p : points)
    if (p.status != "ok") return true;
  return false;
}

double darboux_residual(const MoserPath& path, std::span<const double> x, const DarbouxOptions& opts) {
  const MoserMap m = moser_normalize(path, x, opts);
  const PointForm pulled = pullback_at_point(path.omega_const(), m.jacobian, m.image);
  return max_abs_difference(pulled, eval_form(path.omega().form(), x));
}

namespace {

DarbouxPoint evaluate_sample(const MoserPath& path, const std::vector<double>& x, const DarbouxOptions& opts) {
  DarbouxPoint pt{x, 0.0, "ok"};
  try {
    pt.error = darboux_residual(path, x, opts);
  } catch (const NumericFailure&) {
    pt.error = std::numeric_limits<double>::quiet_NaN();
    pt.status = "degenerate";
  }
  return pt;
}

void finish(DarbouxReport& rep) {
  rep.max_error = 0.0;
  for (const auto& p : rep.points)
    if (p.status == "ok") rep.max_error = std::max(rep.max_error, p.error);
  rep.pass = rep.max_error <= rep.tol && !rep.any_degenerate();
}

}  // namespace

DarbouxReport verify_darboux(const MoserPath& path, const std::vector<std::vector<double>>& samples,
                             const DarbouxOptions& opts, double tol) {
  for (const auto& x : samples)
    if (x.size() != path.dim()) throw std::invalid_argument("sample length != dim");
  DarbouxReport rep;
  rep.tol = tol;
  rep.points.resize(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  // Invalid samples (outside the radius) are rethrown after the loop.
  std::vector<std::string> errors(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    try {
      rep.points[s] = evaluate_sample(path, samples[s], opts);
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::invalid_argument(e);
  finish(rep);
  return rep;
}

DarbouxReport verify_darboux_serial(const MoserPath& path, const std::vector<std::vector<double>>& samples,
                                    const DarbouxOptions& opts, double tol) {
  DarbouxReport rep;
  rep.tol = tol;
  for (const auto& x : samples) {
    if (x.size() != path.dim()) throw std::invalid_argument("sample length != dim");
    rep.points.push_back(evaluate_sample(path, x, opts));
  }
  finish(rep);
  return rep;
}

std::vector<std::vector<double>> sample_ball(std::size_t dim, std::size_t count, double radius,
                                             std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("sample dimension must be positive");
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  std::mt19937_64 gen(seed);
  // 53 high bits -> [0, 1); spelled out so the sequence does not depend on
  // the standard library's distribution implementation.
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<std::vector<double>> out;
  out.reserve(count);
  std::vector<double> p(dim);
  while (out.size() < count) {
    double r2 = 0.0;
    for (auto& v : p) {
      v = 2.0 * unit() - 1.0;
      r2 += v * v;
    }
    if (r2 > 1.0) continue;
    std::vector<double> q(dim);
    for (std::size_t i = 0; i < dim; ++i) q[i] = radius * p[i];
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace nambu
