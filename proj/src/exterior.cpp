#include "nambu/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nambu {

int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  // Insertion sort; counts transpositions.
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

std::vector<IndexTuple> increasing_tuples(std::size_t dim, int degree) {
  std::vector<IndexTuple> out;
  if (degree < 0 || static_cast<std::size_t>(degree) > dim) return out;
  IndexTuple cur(degree);
  for (int i = 0; i < degree; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int pos = degree - 1;
    while (pos >= 0 && cur[pos] == static_cast<int>(dim) - (degree - 1 - pos)) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < degree; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

// --- VectorField ---------------------------------------------------------

VectorField::VectorField(std::size_t dim) : comps_(dim, Polynomial(dim)) {
  if (dim == 0) throw std::invalid_argument("vector field dimension must be positive");
}

VectorField::VectorField(std::vector<Polynomial> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw std::invalid_argument("vector field dimension must be positive");
  for (const auto& c : comps_)
    if (c.dim() != comps_.size())
      throw std::invalid_argument("vector field component dimension mismatch");
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const auto& p) { return p.is_zero(); });
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.dim() != dim()) throw std::invalid_argument("vector field dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.dim() != dim()) throw std::invalid_argument("vector field dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
  for (auto& p : comps_) p *= c;
  return *this;
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& p : out.comps_) p = -p;
  return out;
}

std::vector<double> VectorField::evaluate(std::span<const double> point) const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = nambu::evaluate(comps_[i], point);
  return out;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dim(); ++i) os << (i ? ", " : "") << comps_[i].to_string();
  os << ")";
  return os.str();
}

// --- DifferentialForm ----------------------------------------------------

DifferentialForm::DifferentialForm(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
  if (dim == 0) throw std::invalid_argument("form dimension must be positive");
  if (degree < 0) throw std::invalid_argument("form degree must be nonnegative");
}

DifferentialForm DifferentialForm::function(const Polynomial& p) {
  DifferentialForm f(p.dim(), 0);
  f.add({}, p);
  return f;
}

DifferentialForm DifferentialForm::basis(std::size_t dim, IndexTuple idx, const Rational& c) {
  DifferentialForm f(dim, static_cast<int>(idx.size()));
  f.add(std::move(idx), Polynomial::constant(dim, c));
  return f;
}

Polynomial DifferentialForm::component(IndexTuple idx) const {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("index tuple length != form degree");
  const int sign = sort_with_sign(idx);
  if (sign == 0) return Polynomial(dim_);
  auto it = comps_.find(idx);
  if (it == comps_.end()) return Polynomial(dim_);
  return sign > 0 ? it->second : -it->second;
}

void DifferentialForm::add(IndexTuple idx, const Polynomial& p) {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("index tuple length != form degree");
  if (p.dim() != dim_) throw std::invalid_argument("coefficient dimension mismatch");
  for (int i : idx)
    if (i < 1 || i > static_cast<int>(dim_)) throw std::invalid_argument("form index out of range");
  const int sign = sort_with_sign(idx);
  if (sign == 0 || p.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(idx, dim_);
  if (sign > 0)
    it->second += p;
  else
    it->second -= p;
  if (it->second.is_zero()) comps_.erase(it);
}

Polynomial DifferentialForm::as_function() const {
  if (degree_ != 0) throw std::invalid_argument("not a 0-form");
  return component({});
}

void DifferentialForm::require_compatible(const DifferentialForm& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("form dimension mismatch");
  if (o.degree_ != degree_) throw std::invalid_argument("form degree mismatch");
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
  require_compatible(o);
  for (const auto& [idx, p] : o.comps_) add(idx, p);
  return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
  require_compatible(o);
  for (const auto& [idx, p] : o.comps_) add(idx, -p);
  return *this;
}

DifferentialForm& DifferentialForm::operator*=(const Rational& c) {
  if (c == 0) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, p] : comps_) p *= c;
  return *this;
}

DifferentialForm& DifferentialForm::operator*=(const Polynomial& q) {
  if (q.dim() != dim_) throw std::invalid_argument("coefficient dimension mismatch");
  ComponentMap out;
  for (auto& [idx, p] : comps_) {
    Polynomial r = p * q;
    if (!r.is_zero()) out.emplace(idx, std::move(r));
  }
  comps_ = std::move(out);
  return *this;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm out = *this;
  for (auto& [idx, p] : out.comps_) p = -p;
  return out;
}

std::string DifferentialForm::to_string() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, p] : comps_) {
    os << (first ? "" : " + ") << "(" << p.to_string() << ")";
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "^" : " ") << "dx" << idx[k];
    first = false;
  }
  return os.str();
}

double PointForm::operator[](IndexTuple idx) const {
  const int sign = sort_with_sign(idx);
  if (sign == 0) return 0.0;
  auto it = components.find(idx);
  return it == components.end() ? 0.0 : sign * it->second;
}

// --- Operations ----------------------------------------------------------

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  DifferentialForm out(a.dim(), a.degree() + b.degree());
  if (static_cast<std::size_t>(out.degree()) > a.dim()) return out;
  IndexTuple merged;
  for (const auto& [ia, pa] : a.components()) {
    for (const auto& [ib, pb] : b.components()) {
      merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      IndexTuple probe = merged;
      if (sort_with_sign(probe) == 0) continue;
      out.add(merged, pa * pb);
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.dim(), a.degree() + 1);
  if (static_cast<std::size_t>(out.degree()) > a.dim()) return out;
  for (const auto& [idx, p] : a.components()) {
    for (std::size_t v = 1; v <= a.dim(); ++v) {
      if (std::find(idx.begin(), idx.end(), static_cast<int>(v)) != idx.end()) continue;
      Polynomial dp = diff(p, v);
      if (dp.is_zero()) continue;
      IndexTuple t;
      t.reserve(idx.size() + 1);
      t.push_back(static_cast<int>(v));
      t.insert(t.end(), idx.begin(), idx.end());
      out.add(std::move(t), dp);
    }
  }
  return out;
}

DifferentialForm differential(const Polynomial& f) {
  return exterior_derivative(DifferentialForm::function(f));
}

DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a) {
  if (X.dim() != a.dim()) throw std::invalid_argument("interior product: dimension mismatch");
  if (a.degree() < 1) throw std::invalid_argument("interior product of a 0-form");
  DifferentialForm out(a.dim(), a.degree() - 1);
  for (const auto& [idx, p] : a.components()) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const Polynomial& xs = X[idx[s] - 1];
      if (xs.is_zero()) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t r = 0; r < idx.size(); ++r)
        if (r != s) rest.push_back(idx[r]);
      Polynomial term = xs * p;
      out.add(std::move(rest), (s % 2 == 0) ? term : -term);
    }
  }
  return out;
}

DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a) {
  if (X.dim() != a.dim()) throw std::invalid_argument("Lie derivative: dimension mismatch");
  DifferentialForm out = interior_product(X, exterior_derivative(a));
  if (a.degree() >= 1) out += exterior_derivative(interior_product(X, a));
  return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("Lie bracket: dimension mismatch");
  const std::size_t n = X.dim();
  VectorField out(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!X[k].is_zero()) out[j] += X[k] * diff(Y[j], k + 1);
      if (!Y[k].is_zero()) out[j] -= Y[k] * diff(X[j], k + 1);
    }
  }
  return out;
}

Polynomial divergence(const VectorField& X) {
  Polynomial out(X.dim());
  for (std::size_t k = 0; k < X.dim(); ++k) out += diff(X[k], k + 1);
  return out;
}

std::vector<std::vector<Polynomial>> jacobian(const VectorField& X) {
  const std::size_t n = X.dim();
  std::vector<std::vector<Polynomial>> J(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) J[j][i] = diff(X[j], i + 1);
  return J;
}

PointForm eval_form(const DifferentialForm& a, std::span<const double> point) {
  if (point.size() != a.dim()) throw std::invalid_argument("evaluation point length != dim");
  PointForm out{a.dim(), a.degree(), {}};
  for (auto& idx : increasing_tuples(a.dim(), a.degree())) out.components.emplace(idx, 0.0);
  for (const auto& [idx, p] : a.components()) out.components[idx] = evaluate(p, point);
  return out;
}

namespace {

// det of J restricted to rows `rows` and columns `cols` (both 1-based).
double minor_det(const Eigen::MatrixXd& J, const IndexTuple& rows, const IndexTuple& cols) {
  const std::size_t k = rows.size();
  auto at = [&](std::size_t r, std::size_t c) { return J(rows[r] - 1, cols[c] - 1); };
  switch (k) {
    case 0: return 1.0;
    case 1: return at(0, 0);
    case 2: return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default: {
      Eigen::MatrixXd sub(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = at(r, c);
      return sub.determinant();
    }
  }
}

}  // namespace

PointForm pullback_at_point(const PointForm& at_image, const Eigen::MatrixXd& J) {
  const auto n = static_cast<Eigen::Index>(at_image.dim);
  if (J.rows() != n || J.cols() != n) throw std::invalid_argument("pullback: Jacobian shape mismatch");
  PointForm out{at_image.dim, at_image.degree, {}};
  const auto tuples = increasing_tuples(at_image.dim, at_image.degree);
  for (const auto& cols : tuples) {
    double acc = 0.0;
    for (const auto& [rows, value] : at_image.components) {
      if (value == 0.0) continue;
      acc += value * minor_det(J, rows, cols);
    }
    out.components.emplace(cols, acc);
  }
  return out;
}

PointForm pullback_at_point(const DifferentialForm& a, const Eigen::MatrixXd& J,
                            std::span<const double> image_point) {
  return pullback_at_point(eval_form(a, image_point), J);
}

double max_abs_difference(const PointForm& a, const PointForm& b) {
  if (a.dim != b.dim || a.degree != b.degree)
    throw std::invalid_argument("point form shape mismatch");
  double m = 0.0;
  for (auto& idx : increasing_tuples(a.dim, a.degree)) m = std::max(m, std::abs(a[idx] - b[idx]));
  return m;
}

}  // namespace nambu
