#include "nambu/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace nambu::io {

namespace {

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("invalid integer string");
    return z;
  }
  throw ParseError("expected an integer");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t positive_size(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0)
    throw ParseError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(j.get<std::int64_t>());
}

// Dimension implied by the first term of a serialized polynomial, if any.
std::optional<std::size_t> implied_dim(const json& poly) {
  if (poly.is_array() && !poly.empty() && poly[0].is_object() && poly[0].contains("e") &&
      poly[0]["e"].is_array())
    return poly[0]["e"].size();
  return std::nullopt;
}

}  // namespace

json to_json(const Rational& r) {
  return json::array({integer_to_json(r.get_num()), integer_to_json(r.get_den())});
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (!j.is_array() || j.size() != 2) throw ParseError("rational must be [num, den]");
  const mpz_class den = integer_from_json(j[1]);
  if (den == 0) throw ParseError("rational with zero denominator");
  return make_rational(integer_from_json(j[0]), den);
}

json to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"c", to_json(c)}, {"e", e}});
  return out;
}

Polynomial polynomial_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("polynomial must be a list of terms");
  Polynomial p(dim);
  for (const auto& term : j) {
    const json& e = field(term, "e");
    if (!e.is_array() || e.size() != dim)
      throw ParseError("exponent vector length " + std::to_string(e.size()) + " != dim " + std::to_string(dim));
    Exponents exps;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw ParseError("exponents must be nonnegative integers");
      exps.push_back(static_cast<std::uint32_t>(x.get<std::int64_t>()));
    }
    p.add_term(exps, rational_from_json(field(term, "c")));
  }
  return p;
}

json to_json(const DifferentialForm& a) {
  json comps = json::array();
  for (const auto& [idx, p] : a.components()) comps.push_back({{"i", idx}, {"poly", to_json(p)}});
  return {{"dim", a.dim()}, {"degree", a.degree()}, {"components", comps}};
}

DifferentialForm form_from_json(const json& j) {
  const std::size_t dim = positive_size(field(j, "dim"), "dim");
  const json& deg = field(j, "degree");
  if (!deg.is_number_integer() || deg.get<std::int64_t>() < 0 ||
      deg.get<std::int64_t>() > static_cast<std::int64_t>(dim))
    throw ParseError("degree must lie in 0..dim");
  DifferentialForm out(dim, static_cast<int>(deg.get<std::int64_t>()));
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw ParseError("components must be a list");
  for (const auto& c : comps) {
    const json& i = field(c, "i");
    if (!i.is_array() || i.size() != static_cast<std::size_t>(out.degree()))
      throw ParseError("component index length != degree");
    IndexTuple idx;
    for (const auto& v : i) {
      if (!v.is_number_integer()) throw ParseError("component indices must be integers");
      const auto k = v.get<std::int64_t>();
      if (k < 1 || k > static_cast<std::int64_t>(dim)) throw ParseError("component index out of range");
      idx.push_back(static_cast<int>(k));
    }
    for (std::size_t q = 1; q < idx.size(); ++q)
      if (idx[q] <= idx[q - 1]) throw ParseError("component indices must be strictly increasing");
    out.add(idx, polynomial_from_json(field(c, "poly"), dim));
  }
  return out;
}

json to_json(const NambuSystem& sys) {
  return {{"n", sys.n}, {"H1", to_json(sys.H1)}, {"H2", to_json(sys.H2)}};
}

NambuSystem system_from_json(const json& j) {
  const std::size_t n = positive_size(field(j, "n"), "n");
  return NambuSystem(n, polynomial_from_json(field(j, "H1"), 3 * n),
                     polynomial_from_json(field(j, "H2"), 3 * n));
}

json to_json(const MomentumMapPair& mm) {
  json c = json::array();
  for (const auto& [key, v] : mm.algebra.upper_constants())
    c.push_back({{"i", key[0]}, {"j", key[1]}, {"k", key[2]}, {"v", to_json(v)}});
  json pairs = json::array();
  for (const auto& [j1, j2] : mm.pairs) pairs.push_back({{"J1", to_json(j1)}, {"J2", to_json(j2)}});
  return {{"n", mm.dim() / 3},
          {"algebra", {{"dim", mm.algebra.dim()}, {"labels", mm.algebra.labels()}, {"c", c}}},
          {"pairs", pairs}};
}

MomentumMapPair symmetry_from_json(const json& j) {
  const json& alg = field(j, "algebra");
  const std::size_t d = positive_size(field(alg, "dim"), "algebra dim");
  LieAlgebra::Constants consts;
  if (alg.contains("c")) {
    if (!alg["c"].is_array()) throw ParseError("structure constants must be a list");
    for (const auto& e : alg["c"]) {
      std::array<int, 3> key{};
      const char* names[3] = {"i", "j", "k"};
      for (int q = 0; q < 3; ++q) {
        const json& v = field(e, names[q]);
        if (!v.is_number_integer()) throw ParseError("structure constant indices must be integers");
        key[q] = static_cast<int>(v.get<std::int64_t>());
      }
      consts[key] += rational_from_json(field(e, "v"));
    }
  }
  std::vector<std::string> labels;
  if (alg.contains("labels")) labels = alg["labels"].get<std::vector<std::string>>();

  const json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw ParseError("pairs must be a list");
  std::optional<std::size_t> dim;
  if (j.contains("n")) dim = 3 * positive_size(j["n"], "n");
  for (const auto& p : pairs) {
    if (dim) break;
    if (p.is_object())
      for (const char* key : {"J1", "J2"})
        if (!dim && p.contains(key)) dim = implied_dim(p[key]);
  }
  if (!dim) throw ParseError("cannot infer dimension: give \"n\"");

  std::vector<std::pair<Polynomial, Polynomial>> polys;
  for (const auto& p : pairs)
    polys.emplace_back(polynomial_from_json(field(p, "J1"), *dim), polynomial_from_json(field(p, "J2"), *dim));
  try {
    return MomentumMapPair(LieAlgebra(d, consts, std::move(labels)), std::move(polys));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const DarbouxReport& rep) {
  json points = json::array();
  for (const auto& p : rep.points) {
    json x = json::array();
    for (double v : p.x) x.push_back(v);
    json err = p.status == "ok" ? json(p.error) : json(nullptr);
    points.push_back({{"x", x}, {"err", err}, {"status", p.status}});
  }
  return {{"max_error", rep.max_error}, {"tol", rep.tol}, {"pass", rep.pass}, {"points", points}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace nambu::io
