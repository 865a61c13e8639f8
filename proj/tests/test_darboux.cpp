#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/darboux.hpp"
#include "nambu/nambu.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace nambu;
using namespace nambu::testing;

namespace {

DifferentialForm dx(std::size_t dim, IndexTuple idx) { return DifferentialForm::basis(dim, std::move(idx)); }

// (1 + x/4) dx^dy^dz
DifferentialForm omega_quarter() {
  return (cst(3, 1) + make_rational(1, 4) * var(3, 1)) * dx(3, {1, 2, 3});
}

// (1 + x1/4) dx1^dx2^dx3 + (1 - x5/5) dx4^dx5^dx6
DifferentialForm omega_two_blocks() {
  return (cst(6, 1) + make_rational(1, 4) * var(6, 1)) * dx(6, {1, 2, 3}) +
         (cst(6, 1) - make_rational(1, 5) * var(6, 5)) * dx(6, {4, 5, 6});
}

// Random block coefficient with f(0) != 0.
Polynomial random_block_coeff(Rng& rng, std::size_t n, int block) {
  const std::vector<std::size_t> vars{3u * block + 1, 3u * block + 2, 3u * block + 3};
  Polynomial f = random_poly(rng, 3 * n, 3, 4, vars);
  f += Polynomial::constant(3 * n, make_rational(uniform_int(rng, 1, 4)) - f.constant_term());
  return f;
}

bool vanishes_at_origin(const DifferentialForm& a) {
  for (const auto& [idx, p] : a.components())
    if (p.constant_term() != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("block form validation") {
  const BlockThreeForm b = check_block_form(omega_quarter());
  CHECK(b.n == 1);
  CHECK(b.coeffs[0].constant_term() == 1);
  CHECK(b.form() == omega_quarter());

  CHECK_THROWS_AS(check_block_form(var(3, 1) * dx(3, {1, 2, 3})), DegenerateForm);
  CHECK_THROWS_AS(check_block_form(dx(6, {1, 2, 4})), UnsupportedForm);
  CHECK_THROWS_AS(check_block_form(dx(6, {1, 2, 3}) + var(6, 4) * dx(6, {4, 5, 6})), DegenerateForm);
  CHECK_THROWS_AS(check_block_form((cst(6, 1) + var(6, 4)) * dx(6, {1, 2, 3}) + dx(6, {4, 5, 6})),
                  UnsupportedForm);
  CHECK_THROWS_AS(check_block_form(dx(6, {1, 2, 3})), DegenerateForm);  // second block missing
  CHECK_THROWS_AS(check_block_form(dx(3, {1, 2})), UnsupportedForm);
  CHECK(check_block_form(omega_two_blocks()).n == 2);
}

TEST_CASE("Poincare antiderivative") {
  const auto x = var(3, 1), y = var(3, 2), z = var(3, 3);
  SUBCASE("-x dx^dy^dz") {
    const DifferentialForm w = -x * dx(3, {1, 2, 3});
    const DifferentialForm a = poincare_antiderivative(w);
    const DifferentialForm expected = make_rational(-1, 4) * ((x * z) * dx(3, {1, 2})) +
                                      make_rational(1, 4) * ((x * y) * dx(3, {1, 3})) -
                                      make_rational(1, 4) * ((x * x) * dx(3, {2, 3}));
    CHECK(a == expected);
    CHECK(exterior_derivative(a) == w);
  }
  SUBCASE("zero") { CHECK(poincare_antiderivative(DifferentialForm(3, 3)).is_zero()); }
  SUBCASE("constant") {
    const Rational c = make_rational(5, 7);
    const DifferentialForm a = poincare_antiderivative(c * dx(3, {1, 2, 3}));
    CHECK(a == (c / 3) * (z * dx(3, {1, 2}) - y * dx(3, {1, 3}) + x * dx(3, {2, 3})));
    CHECK(exterior_derivative(a) == c * dx(3, {1, 2, 3}));
  }
  CHECK_THROWS_AS(poincare_antiderivative(x * dx(3, {2})), std::invalid_argument);
}

TEST_CASE("homotopy formula dH + Hd = id") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform_int(rng, 2, 5));
    const int k = uniform_int(rng, 1, static_cast<int>(d) - 1);
    const auto w = random_form(rng, d, k, 3, 3);
    CHECK(exterior_derivative(homotopy_operator(w)) + homotopy_operator(exterior_derivative(w)) == w);
  }
}

TEST_CASE("antiderivative of random closed block forms") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    BlockThreeForm b{n, {}};
    for (int i = 0; i < static_cast<int>(n); ++i) b.coeffs.push_back(random_block_coeff(rng, n, i));
    const MoserPath path(check_block_form(b.form()));
    CHECK(exterior_derivative(path.difference()).is_zero());
    CHECK(exterior_derivative(path.alpha()) == path.difference());
    CHECK(vanishes_at_origin(path.alpha()));
  }
}

TEST_CASE("Moser vector field") {
  const MoserPath path(check_block_form(omega_quarter()));
  const std::vector<double> origin{0, 0, 0}, e1{1, 0, 0};
  CHECK(path.alpha() == make_rational(1, 4) * poincare_antiderivative(-var(3, 1) * dx(3, {1, 2, 3})));
  for (double v : moser_vector_field(path, 0.0, origin)) CHECK(v == 0.0);
  const auto X = moser_vector_field(path, 0.0, e1);
  CHECK(X[0] == doctest::Approx(1.0 / 20).epsilon(1e-15));
  CHECK(X[1] == 0.0);
  CHECK(X[2] == 0.0);

  const MoserPath flat_path(check_block_form(make_rational(3) * dx(3, {1, 2, 3})));
  for (double v : moser_vector_field(flat_path, 0.5, std::vector<double>{0.3, -0.2, 0.1})) CHECK(v == 0.0);

  SUBCASE("Jacobian matches finite differences") {
    std::vector<double> val;
    Eigen::MatrixXd J;
    const std::vector<double> p{0.3, -0.2, 0.4};
    path.vector_field_with_jacobian(0.4, p, 1e-8, val, J);
    const double h = 1e-6;
    for (int c = 0; c < 3; ++c) {
      auto plus = p, minus = p;
      plus[c] += h;
      minus[c] -= h;
      const auto fp = path.vector_field(0.4, plus), fm = path.vector_field(0.4, minus);
      for (int r = 0; r < 3; ++r) CHECK(J(r, c) == doctest::Approx((fp[r] - fm[r]) / (2 * h)).epsilon(1e-6));
    }
  }
  SUBCASE("degeneracy is detected") {
    const MoserPath p(check_block_form((cst(3, 1) + var(3, 1)) * dx(3, {1, 2, 3})));
    // f_t = (1 + x)(1 - t) + t vanishes at t = 1/2 for x = -2.
    CHECK_THROWS_AS(p.vector_field(0.5, std::vector<double>{-2, 0, 0}), MoserDegenerate);
    // f(x) < 0 < f(0): the path must cross f_t = 0, so the start point is already rejected.
    CHECK_THROWS_AS(p.vector_field(0.0, std::vector<double>{-1.5, 0, 0}), MoserDegenerate);
    CHECK_NOTHROW(p.vector_field(0.0, std::vector<double>{-0.5, 0, 0}));
  }
}

TEST_CASE("Moser normalization") {
  DarbouxOptions opts;
  SUBCASE("constant form gives the identity map") {
    const MoserPath path(check_block_form(make_rational(2) * dx(3, {1, 2, 3})));
    const std::vector<double> x0{0.1, 0.2, -0.3};
    const MoserMap m = moser_normalize(path, x0, opts);
    CHECK(m.image == x0);
    CHECK(m.jacobian == Eigen::MatrixXd::Identity(3, 3));
  }
  SUBCASE("origin is a fixed point") {
    const MoserPath path(check_block_form(omega_quarter()));
    const MoserMap m = moser_normalize(path, std::vector<double>{0, 0, 0}, opts);
    for (double v : m.image) CHECK(v == 0.0);
  }
  SUBCASE("input validation") {
    const MoserPath path(check_block_form(omega_quarter()));
    DarbouxOptions small = opts;
    small.radius = 0.5;
    CHECK_THROWS_AS(moser_normalize(path, std::vector<double>{1, 0, 0}, small), std::invalid_argument);
    CHECK_THROWS_AS(moser_normalize(path, std::vector<double>{0, 0}, opts), std::invalid_argument);
    DarbouxOptions tiny = opts;
    tiny.dt = 1e-12;
    CHECK_THROWS_AS(moser_normalize(path, std::vector<double>{0, 0, 0}, tiny), NumericFailure);
  }
  SUBCASE("blocks decouple") {
    const MoserPath joint(check_block_form(omega_two_blocks()));
    const MoserPath first(check_block_form(omega_quarter()));
    const MoserPath second(check_block_form((cst(3, 1) - make_rational(1, 5) * var(3, 2)) * dx(3, {1, 2, 3})));
    for (const auto& x : sample_ball(6, 5, 0.5, 9)) {
      const MoserMap m = moser_normalize(joint, x, opts);
      const MoserMap a = moser_normalize(first, std::vector<double>(x.begin(), x.begin() + 3), opts);
      const MoserMap b = moser_normalize(second, std::vector<double>(x.begin() + 3, x.end()), opts);
      double diff = 0.0;
      for (int i = 0; i < 3; ++i) {
        diff = std::max({diff, std::abs(m.image[i] - a.image[i]), std::abs(m.image[3 + i] - b.image[i])});
        for (int j = 0; j < 3; ++j) {
          diff = std::max({diff, std::abs(m.jacobian(i, j) - a.jacobian(i, j)),
                           std::abs(m.jacobian(3 + i, 3 + j) - b.jacobian(i, j)), std::abs(m.jacobian(i, 3 + j)),
                           std::abs(m.jacobian(3 + i, j))});
        }
      }
      CHECK(diff <= 1e-12);
    }
  }
}

TEST_CASE("Darboux verification") {
  DarbouxOptions opts;
  opts.radius = 0.5;
  SUBCASE("constant form is exact") {
    const MoserPath path(check_block_form(make_rational(3, 2) * dx(3, {1, 2, 3})));
    const auto rep = verify_darboux(path, sample_ball(3, 10, 0.5, 0), opts, 1e-6);
    CHECK(rep.max_error == 0.0);
    CHECK(rep.pass);
  }
  SUBCASE("(1 + x/4) dx^dy^dz") {
    const MoserPath path(check_block_form(omega_quarter()));
    const auto samples = sample_ball(3, 20, 0.5, 0);
    const auto rep = verify_darboux(path, samples, opts, 1e-6);
    CHECK(rep.max_error <= 1e-6);
    CHECK(rep.pass);
    CHECK(rep.points.size() == 20);
    for (std::size_t i = 0; i < samples.size(); ++i) CHECK(rep.points[i].x == samples[i]);

    const auto serial = verify_darboux_serial(path, samples, opts, 1e-6);
    CHECK(serial.max_error == rep.max_error);
    for (std::size_t i = 0; i < samples.size(); ++i) CHECK(serial.points[i].error == rep.points[i].error);
  }
  SUBCASE("two blocks") {
    const MoserPath path(check_block_form(omega_two_blocks()));
    const auto rep = verify_darboux(path, sample_ball(6, 20, 0.5, 0), opts, 1e-6);
    CHECK(rep.max_error <= 1e-6);
    CHECK(rep.pass);
  }
  SUBCASE("degenerate samples are flagged and excluded") {
    const MoserPath path(check_block_form((cst(3, 1) + var(3, 1)) * dx(3, {1, 2, 3})));
    DarbouxOptions strict = opts;
    strict.eps_min = 0.6;
    const auto rep = verify_darboux(path, {{0, 0, 0}, {-0.5, 0, 0}}, strict, 1e-6);
    CHECK(rep.points[0].status == "ok");
    CHECK(rep.points[1].status == "degenerate");
    CHECK(std::isnan(rep.points[1].error));
    CHECK(rep.any_degenerate());
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_error == 0.0);
  }
}

TEST_CASE("Darboux error converges at fourth order") {
  const MoserPath path(check_block_form(omega_quarter()));
  const auto samples = sample_ball(3, 20, 0.5, 0);
  DarbouxOptions coarse, fine;
  coarse.dt = 0.1;
  fine.dt = 0.05;
  const double e1 = verify_darboux(path, samples, coarse, 1).max_error;
  const double e2 = verify_darboux(path, samples, fine, 1).max_error;
  MESSAGE("error ratio " << e1 / e2);
  CHECK(e1 / e2 >= 10.0);
  CHECK(e1 / e2 <= 24.0);
}

TEST_CASE("ball sampling") {
  const auto a = sample_ball(3, 50, 0.5, 7), b = sample_ball(3, 50, 0.5, 7), c = sample_ball(3, 50, 0.5, 8);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) {
    double r2 = 0;
    for (double v : p) r2 += v * v;
    CHECK(std::sqrt(r2) <= 0.5);
  }
}
