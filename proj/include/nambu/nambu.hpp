#pragma once

#include "nambu/exterior.hpp"
#include "nambu/poly.hpp"

#include <cstddef>

namespace nambu {

/// Nambu system on R^{3n} with the canonical 3-form and Nambu functions H1, H2.
struct NambuSystem {
  NambuSystem(std::size_t n, Polynomial h1, Polynomial h2);

  std::size_t dim() const { return 3 * n; }

  std::size_t n;
  Polynomial H1;
  Polynomial H2;
};

/// n from a coordinate count; throws unless dim is a positive multiple of 3.
std::size_t blocks_for_dim(std::size_t dim);

/// sum_i dx_{3i+1} ^ dx_{3i+2} ^ dx_{3i+3}.
DifferentialForm canonical_three_form(std::size_t n);

/// 2-form -> vector field by per-block Levi-Civita contraction:
/// X^{3i+1} = a_{3i+2,3i+3}, X^{3i+2} = -a_{3i+1,3i+3}, X^{3i+3} = a_{3i+1,3i+2}.
/// Cross-block components are ignored.
VectorField sharp(const DifferentialForm& alpha);

/// X -> i_X of the canonical 3-form. Always block-diagonal.
DifferentialForm flat(const VectorField& X);

/// Canonical representative flat(sharp(alpha)) of alpha's sharp-class.
DifferentialForm gauge_project(const DifferentialForm& alpha);
bool is_gauge_fixed(const DifferentialForm& alpha);

/// (dH1 ^ dH2)^sharp; for n = 1 this is grad H1 x grad H2.
VectorField nambu_vector_field(const NambuSystem& sys);

/// {alpha, beta} = [alpha^sharp, beta^sharp]^flat.
DifferentialForm bracket_2forms(const DifferentialForm& alpha, const DifferentialForm& beta);

/// {f, g, h}: sum over blocks of the 3x3 Jacobian determinant of (f, g, h).
Polynomial triple_bracket(const Polynomial& f, const Polynomial& g, const Polynomial& h);

/// True iff d(gauge_project(beta)) vanishes, i.e. the flow of beta^sharp keeps the
/// canonical 3-form invariant.
bool preserves_structure(const DifferentialForm& beta);

struct BracketRelationReport {
  bool hypothesis_ok = false;  // df^dg and dh1^dh2 both gauge-fixed
  DifferentialForm lhs;        // {dh1^dh2, df^dg}
  DifferentialForm rhs;        // d{f,h1,h2} ^ dg + df ^ d{g,h1,h2}
  bool equal = false;
};

/// Compares {dh1^dh2, df^dg} with d{f,h1,h2}^dg + df^d{g,h1,h2}.
BracketRelationReport check_prop_bracket_relation(const Polynomial& f, const Polynomial& g,
                                                  const Polynomial& h1, const Polynomial& h2);

}  // namespace nambu
