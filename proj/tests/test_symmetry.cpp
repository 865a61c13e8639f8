#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/symmetry.hpp"
#include "test_support.hpp"

using namespace nambu;
using namespace nambu::testing;

namespace {

DifferentialForm dx(IndexTuple idx) { return DifferentialForm::basis(3, std::move(idx)); }

const Polynomial X = var(3, 1), Y = var(3, 2), Z = var(3, 3), O = Polynomial(3);

}  // namespace

TEST_CASE("Lie algebra validation") {
  const LieAlgebra so3 = builtin::so3().algebra;
  CHECK(so3.constant(1, 2, 3) == 1);
  CHECK(so3.constant(2, 1, 3) == -1);
  CHECK(so3.constant(3, 1, 2) == 1);
  CHECK(so3.constant(1, 3, 2) == -1);
  const LieAlgebra sp2 = builtin::sp2().algebra;
  CHECK(sp2.constant(1, 2, 3) == -2);
  CHECK(sp2.constant(2, 3, 1) == -2);
  CHECK(sp2.constant(3, 1, 2) == 2);

  CHECK_THROWS_AS(LieAlgebra(2, {{{1, 1, 2}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra(2, {{{1, 2, 1}, 1}, {{2, 1, 1}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra(2, {{{1, 3, 1}, 1}}), std::invalid_argument);
  // [e1,e2]=e3, [e1,e3]=e3, [e2,e3]=e1 fails Jacobi.
  CHECK_THROWS_AS(LieAlgebra(3, {{{1, 2, 3}, 1}, {{1, 3, 3}, 1}, {{2, 3, 1}, 1}}), std::invalid_argument);
  CHECK(LieAlgebra(2, {}).is_abelian());
}

TEST_CASE("momentum two-forms of the builtins") {
  CHECK(momentum_two_form(builtin::so3(), 1) == Y * dx({1, 2}) + Z * dx({1, 3}));
  CHECK(momentum_two_form(builtin::so3(), 2) == -X * dx({1, 2}) + Z * dx({2, 3}));
  CHECK(momentum_two_form(builtin::so3(), 3) == -X * dx({1, 3}) - Y * dx({2, 3}));
  const Polynomial two = cst(3, 2);
  CHECK(momentum_two_form(builtin::sp2(), 1) == -(two * X) * dx({1, 3}) + (two * Y) * dx({2, 3}));
  CHECK(momentum_two_form(builtin::sp2(), 2) == -(two * X) * dx({1, 2}) + (two * Z) * dx({2, 3}));
  CHECK(momentum_two_form(builtin::sp2(), 3) == (two * Y) * dx({1, 2}) - (two * Z) * dx({1, 3}));
  CHECK(momentum_two_form(builtin::so2(), 1) == Y * dx({1, 2}) + Z * dx({1, 3}));
  CHECK_THROWS_AS(momentum_two_form(builtin::so2(), 2), std::invalid_argument);
  CHECK_THROWS_AS(momentum_two_form(builtin::so3(), 0), std::invalid_argument);
}

TEST_CASE("generators") {
  CHECK(generator(builtin::so3(), 1) == VectorField({O, -Z, Y}));
  CHECK(generator(builtin::sp2(), 1) == VectorField({cst(3, 2) * Y, cst(3, 2) * X, O}));
  const MomentumMapPair zero(LieAlgebra(1, {}), {{Polynomial(3), Polynomial(3)}});
  CHECK(generator(zero, 1).is_zero());
  // Linear extension.
  const auto mm = builtin::so3();
  CHECK(generator(mm, {1, 0, 2}) == generator(mm, 1) + make_rational(2) * generator(mm, 3));
}

TEST_CASE("SO(3) generators form an anti-homomorphism") {
  const auto mm = builtin::so3();
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      VectorField rhs(3);
      for (int k = 1; k <= 3; ++k) rhs -= mm.algebra.constant(i, j, k) * generator(mm, k);
      CHECK(lie_bracket(generator(mm, i), generator(mm, j)) == rhs);
    }
}

TEST_CASE("momentum consistency") {
  SUBCASE("so3") {
    const auto rep = check_momentum_consistency(builtin::so3());
    CHECK(rep.entries.size() == 3);
    CHECK(rep.anti_mismatches == 0);
    CHECK(rep.hom_mismatches == 3);
    CHECK(rep.convention() == BracketConvention::anti_homomorphism);
  }
  SUBCASE("sp2 as printed realizes the opposite convention") {
    const auto rep = check_momentum_consistency(builtin::sp2());
    CHECK(rep.hom_mismatches == 0);
    CHECK(rep.anti_mismatches == 3);
    CHECK(rep.convention() == BracketConvention::homomorphism);
    // {A1, A2} = -2 A3 and friends.
    const auto mm = builtin::sp2();
    const auto A = [&](int i) { return momentum_two_form(mm, i); };
    CHECK(bracket_2forms(A(1), A(2)) == make_rational(-2) * A(3));
    CHECK(bracket_2forms(A(2), A(3)) == make_rational(-2) * A(1));
    CHECK(bracket_2forms(A(3), A(1)) == make_rational(2) * A(2));
  }
  SUBCASE("abelian algebra with commuting generators") {
    // Translations along x and rotations about x commute.
    const MomentumMapPair mm(LieAlgebra(2, {}), {{Y, Z}, {X, make_rational(1, 2) * (Y * Y + Z * Z)}});
    const auto rep = check_momentum_consistency(mm);
    CHECK(rep.convention() == BracketConvention::both);
  }
  SUBCASE("one-dimensional algebra has nothing to check") {
    CHECK(check_momentum_consistency(builtin::so2()).entries.empty());
  }
}

TEST_CASE("Lie symmetry") {
  const NambuSystem top = builtin::symmetric_top(make_rational(2), make_rational(1));
  CHECK(check_lie_symmetry(top, builtin::so2(), 1));
  const NambuSystem xy(1, X, Y);
  const MomentumMapPair rot = builtin::so2();
  CHECK_FALSE(check_lie_symmetry(xy, rot, 1));
  CHECK(lie_derivative(generator(rot, 1), wedge(differential(X), differential(Y))) == -dx({1, 3}));
  const MomentumMapPair zero(LieAlgebra(1, {}), {{cst(3, 1), X}});
  CHECK(check_lie_symmetry(xy, zero, 1));
}

TEST_CASE("Noether check") {
  for (auto [ix, iy] : {std::pair{2, 1}, {3, 2}, {5, 1}}) {
    const NambuSystem top = builtin::symmetric_top(make_rational(ix), make_rational(iy));
    const auto rep = noether_check(top, builtin::so2(), 1);
    CHECK(rep.lie_derivative.is_zero());
    CHECK(rep.conserved);
    CHECK(rep.sys_gauge_fixed);
    CHECK(rep.mm_gauge_fixed);
    CHECK(rep.symmetry);
  }
  const NambuSystem frozen(1, cst(3, 7), X * Y);
  for (int i = 1; i <= 3; ++i) CHECK(noether_check(frozen, builtin::so3(), i).conserved);

  const NambuSystem top = builtin::symmetric_top(make_rational(2), make_rational(1));
  const MomentumMapPair area(LieAlgebra(1, {}), {{X, Y}});
  const auto rep = noether_check(top, area, 1);
  CHECK_FALSE(rep.conserved);
  // L_N(dx^dy) = -dN^2 ^ dx with N^2 = (3/2) x z.
  CHECK(rep.lie_derivative == (make_rational(3, 2) * X) * dx({1, 3}));

  SUBCASE("one flipped term in J2 breaks conservation") {
    const MomentumMapPair broken(LieAlgebra(1, {}), {{X, make_rational(1, 2) * (Y * Y - Z * Z)}});
    CHECK_FALSE(noether_check(top, broken, 1).conserved);
    CHECK_FALSE(check_lie_symmetry(top, broken, 1));
  }
}

TEST_CASE("quadratic dependence on basis scaling") {
  const auto base = builtin::so3();
  const Rational c = make_rational(3, 2);
  std::vector<std::pair<Polynomial, Polynomial>> scaled;
  for (const auto& [j1, j2] : base.pairs) scaled.emplace_back(c * j1, c * j2);
  const MomentumMapPair mm(base.algebra, scaled);
  for (int i = 1; i <= 3; ++i) {
    CHECK(momentum_two_form(mm, i) == (c * c) * momentum_two_form(base, i));
    CHECK(generator(mm, i) == (c * c) * generator(base, i));
  }
}

TEST_CASE("symmetric top builtin") {
  const NambuSystem top = builtin::symmetric_top(make_rational(2), make_rational(1));
  CHECK(nambu_vector_field(top) == VectorField({O, make_rational(3, 2) * X * Z, make_rational(-3, 2) * X * Y}));
  CHECK_THROWS_AS(builtin::symmetric_top(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(builtin::symmetric_top(1, 0), std::invalid_argument);
}
