#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/io.hpp"
#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace nambu;
using namespace nambu::testing;
using nambu::io::json;

TEST_CASE("rationals") {
  CHECK(io::to_json(make_rational(-3, 6)) == json::parse("[-1, 2]"));
  CHECK(io::rational_from_json(json::parse("[4, -6]")) == make_rational(-2, 3));
  const Rational big = make_rational(mpz_class("123456789012345678901234567891"), mpz_class(7));
  const json jb = io::to_json(big);
  CHECK(jb[0].is_string());
  CHECK(io::rational_from_json(jb) == big);
  CHECK(io::rational_from_json(json::parse(R"(["-5", "10"])")) == make_rational(-1, 2));
  CHECK_THROWS_AS(io::rational_from_json(json::parse("[1, 0]")), io::ParseError);
  CHECK_THROWS_AS(io::rational_from_json(json::parse("[1]")), io::ParseError);
  CHECK_THROWS_AS(io::rational_from_json(json::parse("[1.5, 2]")), io::ParseError);
  CHECK_THROWS_AS(io::rational_from_json(json::parse(R"(["1x", 2])")), io::ParseError);
}

TEST_CASE("polynomials") {
  const Polynomial p = make_rational(1, 8) * var(3, 1) * var(3, 1) - make_rational(2) * var(3, 3);
  const json j = io::to_json(p);
  CHECK(j.size() == 2);
  CHECK(io::polynomial_from_json(j, 3) == p);
  CHECK(io::to_json(Polynomial(3)) == json::array());
  CHECK(io::polynomial_from_json(json::array(), 4) == Polynomial(4));
  // Repeated monomials accumulate.
  CHECK(io::polynomial_from_json(json::parse(R"([{"c":[1,1],"e":[1,0]},{"c":[-1,1],"e":[1,0]}])"), 2).is_zero());
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"([{"c":[1,1],"e":[1,0]}])"), 3), io::ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"([{"c":[1,1],"e":[-1,0]}])"), 2), io::ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"([{"e":[1,0]}])"), 2), io::ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"({"c":[1,1]})"), 2), io::ParseError);
}

TEST_CASE("round trips of random objects") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = static_cast<std::size_t>(3 * uniform_int(rng, 1, 2));
    const auto p = random_poly(rng, d, 3, 5);
    CHECK(io::polynomial_from_json(json::parse(io::to_json(p).dump()), d) == p);
    const auto a = random_form(rng, d, uniform_int(rng, 0, 3), 2, 3);
    CHECK(io::form_from_json(json::parse(io::to_json(a).dump())) == a);
    const NambuSystem sys(d / 3, random_poly(rng, d, 2, 3), random_poly(rng, d, 2, 3));
    const NambuSystem back = io::system_from_json(json::parse(io::to_json(sys).dump()));
    CHECK(back.n == sys.n);
    CHECK(back.H1 == sys.H1);
    CHECK(back.H2 == sys.H2);
    // Serialization is deterministic.
    CHECK(io::to_json(a).dump() == io::to_json(io::form_from_json(io::to_json(a))).dump());
  }
}

TEST_CASE("forms") {
  const json good = json::parse(R"({"dim":3,"degree":2,"components":[{"i":[1,3],"poly":[{"c":[1,1],"e":[0,1,0]}]}]})");
  const DifferentialForm f = io::form_from_json(good);
  CHECK(f == var(3, 2) * DifferentialForm::basis(3, {1, 3}));
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"dim":3,"degree":2,"components":[{"i":[3,1],"poly":[]}]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"dim":3,"degree":2,"components":[{"i":[1,4],"poly":[]}]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"dim":3,"degree":2,"components":[{"i":[1],"poly":[]}]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"dim":3,"degree":4,"components":[]})")), io::ParseError);
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"dim":0,"degree":0,"components":[]})")), io::ParseError);
  CHECK_THROWS_AS(io::form_from_json(json::parse(R"({"degree":0,"components":[]})")), io::ParseError);
}

TEST_CASE("systems and symmetries") {
  CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"n":1,"H1":[{"c":[1,1],"e":[1,0,0,0,0,0]}],"H2":[]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"n":0,"H1":[],"H2":[]})")), io::ParseError);

  for (const auto& mm : {builtin::so3(), builtin::sp2(), builtin::so2()}) {
    const MomentumMapPair back = io::symmetry_from_json(json::parse(io::to_json(mm).dump()));
    CHECK(back.algebra.dim() == mm.algebra.dim());
    CHECK(back.algebra.upper_constants() == mm.algebra.upper_constants());
    CHECK(back.algebra.labels() == mm.algebra.labels());
    CHECK(back.pairs == mm.pairs);
  }
  // "n" may be inferred from the first exponent vector.
  const json inferred = json::parse(
      R"({"algebra":{"dim":1,"c":[]},"pairs":[{"J1":[{"c":[1,1],"e":[1,0,0]}],"J2":[{"c":[1,1],"e":[0,1,0]}]}]})");
  CHECK(io::symmetry_from_json(inferred).dim() == 3);
  const json empty = json::parse(R"({"algebra":{"dim":1,"c":[]},"pairs":[{"J1":[],"J2":[]}]})");
  CHECK_THROWS_AS(io::symmetry_from_json(empty), io::ParseError);
  // Jacobi violation surfaces as invalid input.
  const json bad = json::parse(
      R"({"n":1,"algebra":{"dim":3,"c":[{"i":1,"j":2,"k":3,"v":[1,1]},{"i":1,"j":3,"k":3,"v":[1,1]},{"i":2,"j":3,"k":1,"v":[1,1]}]},
          "pairs":[{"J1":[],"J2":[]},{"J1":[],"J2":[]},{"J1":[],"J2":[]}]})");
  CHECK_THROWS_AS(io::symmetry_from_json(bad), std::invalid_argument);
}

TEST_CASE("Darboux report") {
  DarbouxReport rep;
  rep.tol = 1e-6;
  rep.max_error = 1e-9;
  rep.pass = true;
  rep.points.push_back({{0.1, 0.2, 0.3}, 1e-9, "ok"});
  rep.points.push_back({{0.0, 0.0, 0.0}, std::nan(""), "degenerate"});
  const json j = io::to_json(rep);
  CHECK(j["points"][0]["err"] == 1e-9);
  CHECK(j["points"][1]["err"].is_null());
  CHECK(j["points"][1]["status"] == "degenerate");
}

TEST_CASE("files and number formatting") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), io::ParseError);
  const auto path = std::filesystem::temp_directory_path() / "nambu_io_bad.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(io::read_json_file(path.string()), io::ParseError);
  std::filesystem::remove(path);

  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(1.0) == "1");
  CHECK(std::stod(io::format_double(0.1)) == 0.1);
  CHECK(std::stod(io::format_double(1.0 / 3)) == 1.0 / 3);
}
