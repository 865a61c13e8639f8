#include "nambu/symmetry.hpp"

#include <stdexcept>

namespace nambu {

LieAlgebra::LieAlgebra(std::size_t dim, const Constants& given, std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)) {
  if (dim == 0) throw std::invalid_argument("Lie algebra dimension must be positive");
  if (labels_.empty())
    for (std::size_t i = 1; i <= dim; ++i) labels_.push_back("e" + std::to_string(i));
  if (labels_.size() != dim) throw std::invalid_argument("wrong number of basis labels");

  const int d = static_cast<int>(dim);
  for (const auto& [key, v] : given) {
    const auto [i, j, k] = key;
    if (i < 1 || i > d || j < 1 || j > d || k < 1 || k > d)
      throw std::invalid_argument("structure constant index out of range");
    if (v == 0) continue;
    if (i == j) throw std::invalid_argument("structure constants must satisfy c^k_ii = 0");
    auto check = [&](std::array<int, 3> at, const Rational& val) {
      auto [it, inserted] = c_.try_emplace(at, val);
      if (!inserted && it->second != val)
        throw std::invalid_argument("structure constants are not antisymmetric");
    };
    check({i, j, k}, v);
    check({j, i, k}, -v);
  }

  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k)
        for (int l = 1; l <= d; ++l) {
          Rational s = 0;
          for (int m = 1; m <= d; ++m)
            s += constant(i, j, m) * constant(m, k, l) + constant(j, k, m) * constant(m, i, l) +
                 constant(k, i, m) * constant(m, j, l);
          if (s != 0) throw std::invalid_argument("structure constants violate the Jacobi identity");
        }
}

Rational LieAlgebra::constant(int i, int j, int k) const {
  auto it = c_.find({i, j, k});
  return it == c_.end() ? Rational(0) : it->second;
}

LieAlgebra::Constants LieAlgebra::upper_constants() const {
  Constants out;
  for (const auto& [key, v] : c_)
    if (key[0] < key[1]) out.emplace(key, v);
  return out;
}

MomentumMapPair::MomentumMapPair(LieAlgebra alg, std::vector<std::pair<Polynomial, Polynomial>> ps)
    : algebra(std::move(alg)), pairs(std::move(ps)) {
  if (pairs.size() != algebra.dim())
    throw std::invalid_argument("need one momentum pair per basis element");
  const std::size_t d = pairs.front().first.dim();
  blocks_for_dim(d);
  for (const auto& [j1, j2] : pairs)
    if (j1.dim() != d || j2.dim() != d)
      throw std::invalid_argument("momentum map pairs must share one dimension");
}

namespace {

void require_index(const MomentumMapPair& mm, int i) {
  if (i < 1 || i > static_cast<int>(mm.pairs.size()))
    throw std::invalid_argument("basis index out of range");
}

}  // namespace

DifferentialForm momentum_two_form(const MomentumMapPair& mm, int i) {
  require_index(mm, i);
  const auto& [j1, j2] = mm.pairs[i - 1];
  return wedge(differential(j1), differential(j2));
}

VectorField generator(const MomentumMapPair& mm, int i) { return sharp(momentum_two_form(mm, i)); }

VectorField generator(const MomentumMapPair& mm, const std::vector<Rational>& coeffs) {
  if (coeffs.size() != mm.pairs.size()) throw std::invalid_argument("coefficient count != algebra dim");
  VectorField out(mm.dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) out += coeffs[i] * generator(mm, static_cast<int>(i) + 1);
  return out;
}

std::string to_string(BracketConvention c) {
  switch (c) {
    case BracketConvention::anti_homomorphism: return "anti-homomorphism";
    case BracketConvention::homomorphism: return "homomorphism";
    case BracketConvention::both: return "both";
    case BracketConvention::neither: return "neither";
  }
  return "neither";
}

BracketConvention ConsistencyReport::convention() const {
  if (anti_mismatches == 0 && hom_mismatches == 0) return BracketConvention::both;
  if (anti_mismatches == 0) return BracketConvention::anti_homomorphism;
  if (hom_mismatches == 0) return BracketConvention::homomorphism;
  return BracketConvention::neither;
}

ConsistencyReport check_momentum_consistency(const MomentumMapPair& mm) {
  const int d = static_cast<int>(mm.algebra.dim());
  std::vector<DifferentialForm> B;
  std::vector<VectorField> X;
  for (int k = 1; k <= d; ++k) {
    B.push_back(momentum_two_form(mm, k));
    X.push_back(sharp(B.back()));
  }

  ConsistencyReport rep;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      DifferentialForm expected(mm.dim(), 2);
      VectorField expected_vf(mm.dim());
      for (int k = 1; k <= d; ++k) {
        const Rational c = mm.algebra.constant(i, j, k);
        if (c == 0) continue;
        expected += c * B[k - 1];
        expected_vf += c * X[k - 1];
      }
      DifferentialForm br = bracket_2forms(B[j - 1], B[i - 1]);
      const VectorField br_vf = sharp(br);
      ConsistencyEntry e{i, j, std::move(br), std::move(expected), br_vf == expected_vf,
                         br_vf == -expected_vf};
      if (!e.anti_homomorphism) ++rep.anti_mismatches;
      if (!e.homomorphism) ++rep.hom_mismatches;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

bool check_lie_symmetry(const NambuSystem& sys, const MomentumMapPair& mm, int i) {
  if (mm.dim() != sys.dim()) throw std::invalid_argument("system and symmetry dimensions differ");
  const DifferentialForm hh = wedge(differential(sys.H1), differential(sys.H2));
  return lie_derivative(generator(mm, i), hh).is_zero();
}

NoetherReport noether_check(const NambuSystem& sys, const MomentumMapPair& mm, int i) {
  if (mm.dim() != sys.dim()) throw std::invalid_argument("system and symmetry dimensions differ");
  const DifferentialForm hh = wedge(differential(sys.H1), differential(sys.H2));
  const DifferentialForm b = momentum_two_form(mm, i);
  NoetherReport rep{lie_derivative(sharp(hh), b), false, is_gauge_fixed(hh), is_gauge_fixed(b),
                    check_lie_symmetry(sys, mm, i)};
  rep.conserved = rep.lie_derivative.is_zero();
  return rep;
}

namespace builtin {

namespace {

Polynomial var(int v) { return Polynomial::variable(3, v); }
Polynomial sq(int v) { return var(v) * var(v); }

}  // namespace

MomentumMapPair so3() {
  const Rational half(1, 2);
  LieAlgebra g(3, {{{1, 2, 3}, 1}, {{2, 3, 1}, 1}, {{3, 1, 2}, 1}}, {"e1", "e2", "e3"});
  return MomentumMapPair(std::move(g), {{var(1), half * (sq(2) + sq(3))},
                                        {var(2), half * (sq(1) + sq(3))},
                                        {var(3), half * (sq(2) + sq(1))}});
}

MomentumMapPair sp2() {
  LieAlgebra g(3, {{{1, 2, 3}, -2}, {{2, 3, 1}, -2}, {{3, 1, 2}, 2}}, {"e1", "e2", "e3"});
  return MomentumMapPair(std::move(g), {{var(3), sq(1) - sq(2)},
                                        {var(2), sq(1) + sq(3)},
                                        {var(1), sq(2) - sq(3)}});
}

MomentumMapPair so2() {
  LieAlgebra g(1, {}, {"e1"});
  return MomentumMapPair(std::move(g), {{var(1), Rational(1, 2) * (sq(2) + sq(3))}});
}

NambuSystem symmetric_top(const Rational& Ix, const Rational& Iy) {
  if (Ix == 0 || Iy == 0) throw std::invalid_argument("moments of inertia must be nonzero");
  const Rational ax = 1 / (Ix * Ix), ay = 1 / (Iy * Iy);
  Polynomial h1 = Rational(1, 2) * (ax * sq(1) + ay * sq(2) + ay * sq(3));
  return NambuSystem(1, std::move(h1), sq(1) + sq(2) + sq(3));
}

}  // namespace builtin

}  // namespace nambu
