#include "nambu/nambu.hpp"

#include <stdexcept>

namespace nambu {

std::size_t blocks_for_dim(std::size_t dim) {
  if (dim == 0 || dim % 3 != 0)
    throw std::invalid_argument("Nambu structures need dimension 3n, got " + std::to_string(dim));
  return dim / 3;
}

NambuSystem::NambuSystem(std::size_t n_blocks, Polynomial h1, Polynomial h2)
    : n(n_blocks), H1(std::move(h1)), H2(std::move(h2)) {
  if (n == 0) throw std::invalid_argument("Nambu system needs n >= 1");
  if (H1.dim() != 3 * n || H2.dim() != 3 * n)
    throw std::invalid_argument("Nambu functions must live on R^{3n}");
}

DifferentialForm canonical_three_form(std::size_t n) {
  if (n == 0) throw std::invalid_argument("canonical form needs n >= 1");
  DifferentialForm w(3 * n, 3);
  const Polynomial one = Polynomial::constant(3 * n, 1);
  for (int i = 0; i < static_cast<int>(n); ++i) w.add({3 * i + 1, 3 * i + 2, 3 * i + 3}, one);
  return w;
}

VectorField sharp(const DifferentialForm& alpha) {
  if (alpha.degree() != 2) throw std::invalid_argument("sharp expects a 2-form");
  const std::size_t n = blocks_for_dim(alpha.dim());
  VectorField X(alpha.dim());
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const int a = 3 * i + 1, b = 3 * i + 2, c = 3 * i + 3;
    X[a - 1] = alpha.component({b, c});
    X[b - 1] = -alpha.component({a, c});
    X[c - 1] = alpha.component({a, b});
  }
  return X;
}

DifferentialForm flat(const VectorField& X) {
  const std::size_t n = blocks_for_dim(X.dim());
  DifferentialForm out(X.dim(), 2);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const int a = 3 * i + 1, b = 3 * i + 2, c = 3 * i + 3;
    out.add({a, b}, X[c - 1]);
    out.add({a, c}, -X[b - 1]);
    out.add({b, c}, X[a - 1]);
  }
  return out;
}

DifferentialForm gauge_project(const DifferentialForm& alpha) { return flat(sharp(alpha)); }

bool is_gauge_fixed(const DifferentialForm& alpha) { return gauge_project(alpha) == alpha; }

VectorField nambu_vector_field(const NambuSystem& sys) {
  return sharp(wedge(differential(sys.H1), differential(sys.H2)));
}

DifferentialForm bracket_2forms(const DifferentialForm& alpha, const DifferentialForm& beta) {
  if (alpha.dim() != beta.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  return flat(lie_bracket(sharp(alpha), sharp(beta)));
}

Polynomial triple_bracket(const Polynomial& f, const Polynomial& g, const Polynomial& h) {
  if (g.dim() != f.dim() || h.dim() != f.dim())
    throw std::invalid_argument("triple bracket: dimension mismatch");
  const std::size_t n = blocks_for_dim(f.dim());
  Polynomial out(f.dim());
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial m[3][3] = {{f, f, f}, {g, g, g}, {h, h, h}};
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m[r][c] = diff(m[r][c], 3 * i + c + 1);
    out += m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    out -= m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    out += m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
  return out;
}

bool preserves_structure(const DifferentialForm& beta) {
  return exterior_derivative(gauge_project(beta)).is_zero();
}

BracketRelationReport check_prop_bracket_relation(const Polynomial& f, const Polynomial& g,
                                                  const Polynomial& h1, const Polynomial& h2) {
  const DifferentialForm df = differential(f), dg = differential(g);
  const DifferentialForm fg = wedge(df, dg);
  const DifferentialForm hh = wedge(differential(h1), differential(h2));

  BracketRelationReport rep{is_gauge_fixed(fg) && is_gauge_fixed(hh),
                            bracket_2forms(hh, fg),
                            wedge(differential(triple_bracket(f, h1, h2)), dg) +
                                wedge(df, differential(triple_bracket(g, h1, h2))),
                            false};
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace nambu
