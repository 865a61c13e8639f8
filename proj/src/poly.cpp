#include "nambu/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nambu {

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  return make_rational(mpz_class(num), mpz_class(den));
}

Polynomial::Polynomial(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Exponents(dim, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t var) {
  if (var < 1 || var > dim) throw std::invalid_argument("variable index out of range");
  Exponents e(dim, 0);
  e[var - 1] = 1;
  return monomial(dim, std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(std::size_t dim, Exponents exps, const Rational& c) {
  Polynomial p(dim);
  if (exps.size() != dim) throw std::invalid_argument("exponent vector length != dim");
  p.add_term(exps, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

Rational Polynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Exponents(dim_, 0)); }

bool Polynomial::depends_on(std::size_t var) const {
  if (var < 1 || var > dim_) throw std::invalid_argument("variable index out of range");
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var - 1] != 0; });
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != dim_) throw std::invalid_argument("exponent vector length != dim");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_dim(const Polynomial& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dim(b);
  Polynomial out(a.dim_);
  Exponents e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < a.dim_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool is_const = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    if (mag != 1 || is_const) os << mag.get_str() << (is_const ? "" : "*");
    bool first_var = true;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!first_var) os << "*";
      os << "x" << (v + 1);
      if (e[v] > 1) os << "^" << e[v];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

Polynomial poly_algebra(PolyOp op, const Polynomial& a, const Polynomial& b) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::mul: return a * b;
    case PolyOp::neg: return -a;
    case PolyOp::scale: break;
  }
  throw std::invalid_argument("scale takes a rational operand");
}

Polynomial poly_algebra(PolyOp op, const Polynomial& a, const Rational& c) {
  switch (op) {
    case PolyOp::scale: return a * c;
    case PolyOp::neg: return -a;
    case PolyOp::add: return a + Polynomial::constant(a.dim(), c);
    case PolyOp::mul: return a * c;
  }
  throw std::invalid_argument("unknown polynomial op");
}

Polynomial diff(const Polynomial& p, std::size_t var) {
  if (var < 1 || var > p.dim()) throw std::invalid_argument("derivative index out of range");
  Polynomial out(p.dim());
  const std::size_t v = var - 1;
  for (const auto& [e, c] : p.terms()) {
    if (e[v] == 0) continue;
    Exponents d = e;
    d[v] -= 1;
    out.add_term(d, c * e[v]);
  }
  return out;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  return CompiledPolynomial(p)(point);
}

Polynomial radial_integral(const Polynomial& p, unsigned k) {
  if (k < 1) throw std::invalid_argument("radial integral needs k >= 1");
  Polynomial out(p.dim());
  for (const auto& [e, c] : p.terms()) {
    unsigned total = k;
    for (auto x : e) total += x;
    out.add_term(e, c / Rational(total));
  }
  return out;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : dim_(p.dim()) {
  coefs_.reserve(p.size());
  offsets_.reserve(p.size() + 1);
  offsets_.push_back(0);
  for (const auto& [e, c] : p.terms()) {
    coefs_.push_back(c.get_d());
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      vars_.push_back(static_cast<std::uint32_t>(v));
      pows_.push_back(e[v]);
    }
    offsets_.push_back(static_cast<std::uint32_t>(vars_.size()));
  }
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
  if (point.size() != dim_) throw std::invalid_argument("evaluation point length != dim");
  double acc = 0.0;
  for (std::size_t t = 0; t < coefs_.size(); ++t) {
    double m = coefs_[t];
    for (std::uint32_t f = offsets_[t]; f < offsets_[t + 1]; ++f) {
      const double x = point[vars_[f]];
      for (std::uint32_t r = 0; r < pows_[f]; ++r) m *= x;
    }
    acc += m;
  }
  return acc;
}

}  // namespace nambu
