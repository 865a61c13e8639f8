#pragma once

#include "nambu/poly.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nambu {

/// 1-based coordinate indices of a form component, e.g. {1,3} for dx1^dx3.
using IndexTuple = std::vector<int>;

/// Sorts `idx` in place and returns the permutation sign, or 0 if an index repeats.
int sort_with_sign(IndexTuple& idx);

/// All strictly increasing index tuples of length `degree` in 1..dim, in lex order.
std::vector<IndexTuple> increasing_tuples(std::size_t dim, int degree);

/// Polynomial vector field on R^dim.
class VectorField {
 public:
  explicit VectorField(std::size_t dim);
  explicit VectorField(std::vector<Polynomial> components);

  std::size_t dim() const { return comps_.size(); }
  const Polynomial& operator[](std::size_t i) const { return comps_.at(i); }
  Polynomial& operator[](std::size_t i) { return comps_.at(i); }
  const std::vector<Polynomial>& components() const { return comps_; }
  bool is_zero() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const Rational& c);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }
  VectorField operator-() const;
  friend bool operator==(const VectorField&, const VectorField&) = default;

  std::vector<double> evaluate(std::span<const double> point) const;
  std::string to_string() const;

 private:
  std::vector<Polynomial> comps_;
};

/// Differential k-form with polynomial coefficients on R^dim.
///
/// Only strictly increasing index tuples are stored and zero coefficients are
/// dropped; `component()` and `add()` accept any ordering and resolve it by
/// the permutation sign.
class DifferentialForm {
 public:
  using ComponentMap = std::map<IndexTuple, Polynomial>;

  DifferentialForm(std::size_t dim, int degree);

  static DifferentialForm function(const Polynomial& p);
  /// c * dx_{i1} ^ ... ^ dx_{ik}.
  static DifferentialForm basis(std::size_t dim, IndexTuple idx, const Rational& c = 1);

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const ComponentMap& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Polynomial component(IndexTuple idx) const;
  /// Adds `p` to the component at `idx` (any order).
  void add(IndexTuple idx, const Polynomial& p);
  /// The 0-form's function value.
  Polynomial as_function() const;

  DifferentialForm& operator+=(const DifferentialForm& o);
  DifferentialForm& operator-=(const DifferentialForm& o);
  DifferentialForm& operator*=(const Rational& c);
  DifferentialForm& operator*=(const Polynomial& p);
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
  friend DifferentialForm operator*(const Rational& c, DifferentialForm a) { return a *= c; }
  friend DifferentialForm operator*(const Polynomial& p, DifferentialForm a) { return a *= p; }
  DifferentialForm operator-() const;
  friend bool operator==(const DifferentialForm&, const DifferentialForm&) = default;

  std::string to_string() const;

 private:
  void require_compatible(const DifferentialForm& o) const;

  std::size_t dim_;
  int degree_;
  ComponentMap comps_;
};

/// Numeric form at a point. Stores every increasing tuple (zeros included).
struct PointForm {
  std::size_t dim = 0;
  int degree = 0;
  std::map<IndexTuple, double> components;

  double operator[](IndexTuple idx) const;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
/// d of a function, as a 1-form.
DifferentialForm differential(const Polynomial& f);
DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a);
/// Cartan formula L_X a = i_X da + d i_X a.
DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a);
VectorField lie_bracket(const VectorField& X, const VectorField& Y);
/// Symbolic divergence sum_k d_k X^k.
Polynomial divergence(const VectorField& X);
/// Symbolic Jacobian, entry (j, i) = d X^j / d x_i.
std::vector<std::vector<Polynomial>> jacobian(const VectorField& X);

PointForm eval_form(const DifferentialForm& a, std::span<const double> point);

/// Pullback at a point of a map F with Jacobian `J` (J(j,i) = dF^j/dx_i),
/// where `at_image` is the form evaluated at F(x).
PointForm pullback_at_point(const PointForm& at_image, const Eigen::MatrixXd& J);
PointForm pullback_at_point(const DifferentialForm& a, const Eigen::MatrixXd& J,
                            std::span<const double> image_point);

/// Largest absolute componentwise difference.
double max_abs_difference(const PointForm& a, const PointForm& b);

}  // namespace nambu
