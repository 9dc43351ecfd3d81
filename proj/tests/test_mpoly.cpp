#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "kvar/mpoly.hpp"
#include "testutil.hpp"

using namespace kvar;
using namespace kvar::testutil;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a kvar::Error");
  return Errc::BadInput;
}

// direct oracle: evaluate f and all partials at the coordinate point e_j
bool oracle_singular_at(const MPoly& f, int j) {
  int nv = f.num_vars();
  std::vector<Int> pt(nv, Int(0));
  pt[j] = 1;
  if (f.eval_int(pt) != 0) return false;
  for (int i = 0; i < nv; ++i)
    if (f.partial(i).eval_int(pt) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing to canonical sparse form") {
  MPoly f = poly_parse("x0^2 + x1^2", 2);
  REQUIRE(f.terms().size() == 2);
  CHECK(*f.coeff_of({2, 0}) == 1);
  CHECK(*f.coeff_of({0, 2}) == 1);

  MPoly g = poly_parse("x0*(x1 + 2)", 2);
  REQUIRE(g.terms().size() == 2);
  CHECK(*g.coeff_of({1, 1}) == 1);
  CHECK(*g.coeff_of({1, 0}) == 2);

  CHECK(poly_parse("(x0+x1)^2", 2) == poly_parse("x0^2 + 2*x0*x1 + x1^2", 2));
  CHECK(poly_parse("-x0^2", 1) == -poly_parse("x0^2", 1));
  CHECK(poly_parse("3 - - 2", 0) == MPoly::constant(0, 5));
  CHECK(poly_parse("x0 - x0", 1).is_zero());
}

TEST_CASE("parse errors carry codes and positions") {
  CHECK(code_of([] { poly_parse("x0 + y", 2); }) == Errc::UnknownVariable);
  CHECK(code_of([] { poly_parse("x5 + 1", 2); }) == Errc::UnknownVariable);
  CHECK(code_of([] { poly_parse("x0^-2", 2); }) == Errc::ExponentNegative);
  CHECK(code_of([] { poly_parse("x0 + ", 2); }) == Errc::SyntaxError);
  CHECK(code_of([] { poly_parse("2x0", 2); }) == Errc::SyntaxError);
  CHECK(code_of([] { poly_parse("(x0 + 1", 2); }) == Errc::SyntaxError);
  try {
    poly_parse("x0 + y", 2);
  } catch (const Error& e) {
    CHECK(e.position() == 5);
  }
  try {
    poly_parse("x0 @ x1", 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(e.position() == 3);
  }
}

TEST_CASE("parse-serialize-parse is the identity") {
  Rng rng(20240801);
  for (int i = 0; i < 100; ++i) {
    int nvars = rand_int(rng, 1, 4);
    MPoly f = random_poly(rng, nvars, 4);
    MPoly reparsed = poly_parse(f.str(), nvars);
    CHECK(reparsed == f);
  }
  CHECK(MPoly::zero(3).str() == "0");
  CHECK(poly_parse("0", 3).is_zero());
}

TEST_CASE("evaluation over finite fields") {
  FieldCtx f5 = FieldCtx::create(5, 1);
  MPoly f = poly_parse("x0^2 + x1^2", 2);
  std::vector<FFElem> pt{f5.element(1), f5.element(2)};
  CHECK(f.eval(pt, f5) == f5.zero());

  MPoly c7 = poly_parse("7", 2);
  CHECK(c7.eval(pt, f5) == f5.element(2));

  FieldCtx f3 = FieldCtx::create(3, 1);
  MPoly g = poly_parse("x0*x1*x2", 3);
  std::vector<FFElem> pt3{f3.element(1), f3.element(1), f3.element(0)};
  CHECK(g.eval(pt3, f3) == f3.zero());

  CHECK(code_of([&] { f.eval(pt3, f3); }) == Errc::DimensionMismatch);
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(7);
  for (const auto& [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {2, 3}}) {
    FieldCtx ctx = FieldCtx::create(p, k);
    for (int trial = 0; trial < 25; ++trial) {
      MPoly f = random_poly(rng, 3, 2);
      MPoly g = random_poly(rng, 3, 2);
      MPoly h = random_poly(rng, 3, 2);
      std::vector<FFElem> pt;
      for (int i = 0; i < 3; ++i)
        pt.push_back(ctx.element(static_cast<uint32_t>(rand_int(rng, 0, ctx.q() - 1))));
      FFElem lhs = (f * g + h).eval(pt, ctx);
      FFElem rhs = ctx.add(ctx.mul(f.eval(pt, ctx), g.eval(pt, ctx)), h.eval(pt, ctx));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("degrees and homogeneity") {
  MPoly f = poly_parse("x0*x1 + x2^2", 3);
  CHECK(*f.total_degree() == 2);
  CHECK(f.is_homogeneous());
  CHECK_FALSE(poly_parse("x0^2 + x1", 2).is_homogeneous());
  CHECK(*poly_parse("x0*x1^3", 2).degree_in(1) == 3);
  CHECK_FALSE(MPoly::zero(2).total_degree().has_value());
  CHECK_FALSE(MPoly::zero(2).degree_in(0).has_value());
  CHECK(MPoly::zero(2).is_homogeneous());
}

TEST_CASE("homogenization") {
  MPoly f = poly_parse("x1*x2 + x1 + 3", 3);
  CHECK(f.homogenized(0) == poly_parse("x1*x2 + x0*x1 + 3*x0^2", 3));

  MPoly already = poly_parse("x1^2 + x1*x2", 3);
  CHECK(already.homogenized(0) == already);

  MPoly one = poly_parse("1", 2);
  CHECK(one.homogenized(0) == one);

  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    MPoly g = random_poly(rng, 3, 3);
    if (g.is_zero()) continue;
    MPoly lifted = g.inserted_var(0);
    MPoly h = lifted.homogenized(0);
    CHECK(h.is_homogeneous());
    CHECK(*h.total_degree() == *g.total_degree());
    CHECK(h.dehomogenized(0) == lifted);
  }
}

TEST_CASE("linear decomposition") {
  MPoly f = poly_parse("x3*(x0^2+x1^2) + x0^3", 4);
  auto [low, high] = f.decompose_linear(3);
  CHECK(low == poly_parse("x0^2+x1^2", 4));
  CHECK(high == poly_parse("x0^3", 4));

  MPoly g = poly_parse("x0^2 + x1^2", 3);
  auto [glow, ghigh] = g.decompose_linear(2);
  CHECK(glow.is_zero());
  CHECK(ghigh == g);

  CHECK(code_of([] {
          poly_parse("x3^2*x0", 4).decompose_linear(3);
        }) == Errc::DegreeInVariableExceedsOne);
  CHECK(code_of([] {
          poly_parse("x1^2 + x0", 2).decompose_linear(1);
        }) == Errc::NotHomogeneous);

  Rng rng(4242);
  for (int i = 0; i < 40; ++i) {
    int nvars = rand_int(rng, 2, 4);
    int var = rand_int(rng, 0, nvars - 1);
    int d = rand_int(rng, 1, 3);
    MPoly fl = random_homogeneous(rng, nvars, d);
    MPoly fh = random_homogeneous(rng, nvars, d + 1);
    // scrub the chosen variable out of both parts
    auto scrub = [&](const MPoly& p) {
      std::vector<Term> kept;
      for (const Term& t : p.terms())
        if (t.exps[var] == 0) kept.push_back(t);
      return MPoly::from_terms(nvars, kept);
    };
    fl = scrub(fl);
    fh = scrub(fh);
    if (fl.is_zero()) continue;
    MPoly built = MPoly::variable(nvars, var) * fl + fh;
    auto [rl, rh] = built.decompose_linear(var);
    CHECK(rl == fl);
    CHECK(rh == fh);
    CHECK(MPoly::variable(nvars, var) * rl + rh == built);
  }
}

TEST_CASE("partial derivatives and coordinate singularities") {
  CHECK(poly_parse("x0^2*x1", 2).partial(0) == poly_parse("2*x0*x1", 2));
  CHECK(poly_parse("x0^2*x1", 2).partial(1) == poly_parse("x0^2", 2));
  CHECK(poly_parse("5", 2).partial(0).is_zero());

  CHECK(poly_parse("x2*x0*x1", 3).coordinate_singularities() == std::vector<int>{0, 1, 2});
  CHECK(poly_parse("x0^2+x1^2+x2^2", 3).coordinate_singularities().empty());
  // the scan agrees with direct evaluation of all partials at each e_j
  MPoly f = poly_parse("x3*(x0^2+x1^2) + x0^3", 4);
  std::vector<int> scan = f.coordinate_singularities();
  for (int j = 0; j < 4; ++j) {
    bool in_scan = std::find(scan.begin(), scan.end(), j) != scan.end();
    CHECK(in_scan == oracle_singular_at(f, j));
  }

  Rng rng(31337);
  for (int i = 0; i < 30; ++i) {
    int nvars = rand_int(rng, 2, 4);
    MPoly g = random_homogeneous(rng, nvars, rand_int(rng, 2, 4));
    std::vector<int> s = g.coordinate_singularities();
    for (int j = 0; j < nvars; ++j) {
      bool in_scan = std::find(s.begin(), s.end(), j) != s.end();
      CAPTURE(g.str());
      CHECK(in_scan == oracle_singular_at(g, j));
    }
  }
}

TEST_CASE("variable permutation and linear substitution") {
  MPoly f = poly_parse("x0^2 + 3*x1*x2", 3);
  MPoly swapped = f.permuted({1, 0, 2});
  CHECK(swapped == poly_parse("x1^2 + 3*x0*x2", 3));

  std::vector<std::vector<Int>> id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(f.substituted_linear(id) == f);

  std::vector<std::vector<Int>> singular{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  CHECK(code_of([&] { f.substituted_linear(singular); }) == Errc::SingularMatrix);

  // x0 -> x0 + x1 on x0^2
  std::vector<std::vector<Int>> shear{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(poly_parse("x0^2", 3).substituted_linear(shear) == poly_parse("(x0+x1)^2", 3));

  Rng rng(555);
  for (int i = 0; i < 20; ++i) {
    MPoly g = random_homogeneous(rng, 3, rand_int(rng, 1, 3));
    MPoly h = g.substituted_linear(shear);
    CHECK(h.is_homogeneous());
    CHECK(*h.total_degree() == *g.total_degree());
  }
}

TEST_CASE("determinants") {
  CHECK(matrix_determinant({{2, 0}, {0, 3}}) == 6);
  CHECK(matrix_determinant({{1, 2}, {2, 4}}) == 0);
  CHECK(matrix_determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
  CHECK(matrix_determinant({{2, 3, 1}, {4, 1, 5}, {7, 0, 2}}) == Int(2 * (1 * 2 - 5 * 0)) -
                                                                     Int(3 * (4 * 2 - 5 * 7)) +
                                                                     Int(1 * (4 * 0 - 1 * 7)));
}

TEST_CASE("dropping and inserting variables") {
  MPoly f = poly_parse("x0^2 + x2^2", 3);
  CHECK(f.dropped_var(1) == poly_parse("x0^2 + x1^2", 2));
  CHECK(code_of([&] { f.dropped_var(0); }) == Errc::BadInput);
  CHECK(poly_parse("x0^2 + x1^2", 2).inserted_var(1) == f);
}
