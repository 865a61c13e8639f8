#pragma once

#include "nambu/exterior.hpp"
#include "nambu/nambu.hpp"
#include "nambu/poly.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nambu {

/// Finite-dimensional Lie algebra given by structure constants on a basis
/// e_1..e_d: [e_i, e_j] = sum_k c^k_{ij} e_k. Indices are 1-based.
class LieAlgebra {
 public:
  /// (i, j, k) -> c^k_{ij}
  using Constants = std::map<std::array<int, 3>, Rational>;

  /// Takes any subset of the constants; the (j, i) entries are filled in by
  /// antisymmetry. Throws if given entries contradict antisymmetry or the
  /// Jacobi identity fails.
  LieAlgebra(std::size_t dim, const Constants& given, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Rational constant(int i, int j, int k) const;
  /// Entries with i < j, as stored for serialization.
  Constants upper_constants() const;
  bool is_abelian() const { return c_.empty(); }

 private:
  std::size_t dim_;
  std::vector<std::string> labels_;
  Constants c_;
};

/// Per basis element e_i, the pair (J1(e_i), J2(e_i)) of functions on R^{3n}.
struct MomentumMapPair {
  MomentumMapPair(LieAlgebra algebra, std::vector<std::pair<Polynomial, Polynomial>> pairs);

  std::size_t dim() const { return pairs.front().first.dim(); }

  LieAlgebra algebra;
  std::vector<std::pair<Polynomial, Polynomial>> pairs;
};

/// dJ1(e_i) ^ dJ2(e_i), i 1-based.
DifferentialForm momentum_two_form(const MomentumMapPair& mm, int i);

/// Infinitesimal generator of e_i: sharp of the momentum 2-form.
VectorField generator(const MomentumMapPair& mm, int i);

/// Generator of sum_i coeffs[i] e_i by linear extension.
VectorField generator(const MomentumMapPair& mm, const std::vector<Rational>& coeffs);

enum class BracketConvention { anti_homomorphism, homomorphism, both, neither };

std::string to_string(BracketConvention c);

struct ConsistencyEntry {
  int i = 0;
  int j = 0;
  DifferentialForm bracket;   // {B_j, B_i}
  DifferentialForm expected;  // sum_k c^k_{ij} B_k
  bool anti_homomorphism = false;  // {B_j, B_i}^sharp == +sum_k c^k_{ij} B_k^sharp
  bool homomorphism = false;       // {B_j, B_i}^sharp == -sum_k c^k_{ij} B_k^sharp
};

struct ConsistencyReport {
  std::vector<ConsistencyEntry> entries;  // all i < j
  std::size_t anti_mismatches = 0;
  std::size_t hom_mismatches = 0;

  BracketConvention convention() const;
};

/// Compares generator brackets with the structure constants under both sign
/// conventions. Anti-homomorphism means [X_i, X_j] = -sum_k c^k_{ij} X_k.
ConsistencyReport check_momentum_consistency(const MomentumMapPair& mm);

/// L_{X_i}(dH1 ^ dH2) == 0 exactly.
bool check_lie_symmetry(const NambuSystem& sys, const MomentumMapPair& mm, int i);

struct NoetherReport {
  DifferentialForm lie_derivative;  // L_N B_i
  bool conserved = false;
  bool sys_gauge_fixed = false;
  bool mm_gauge_fixed = false;
  bool symmetry = false;
};

NoetherReport noether_check(const NambuSystem& sys, const MomentumMapPair& mm, int i);

namespace builtin {

MomentumMapPair so3();
MomentumMapPair sp2();
MomentumMapPair so2();
/// Symmetric top with Nambu functions
/// H1 = (x^2/Ix^2 + y^2/Iy^2 + z^2/Iy^2)/2, H2 = x^2 + y^2 + z^2.
NambuSystem symmetric_top(const Rational& Ix, const Rational& Iy);

}  // namespace builtin

}  // namespace nambu
