#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kvar/counting.hpp"
#include "testutil.hpp"

using namespace kvar;
using namespace kvar::testutil;

namespace {

std::vector<MPoly> sys(std::initializer_list<const char*> texts, int nvars) {
  std::vector<MPoly> out;
  for (const char* t : texts) out.push_back(poly_parse(t, nvars));
  return out;
}

FieldCtx fp(uint32_t p) { return FieldCtx::create(p, 1); }

}  // namespace

TEST_CASE("affine counts by hand") {
  CHECK(count_affine(sys({"x0^2 + x1^2 - 1"}, 2), 2, fp(5)) == 4);
  CHECK(count_affine(std::vector<MPoly>{}, 3, fp(3)) == 27);
  CHECK(count_affine(sys({"1"}, 2), 2, fp(5)) == 0);
  CHECK(count_affine(sys({"0"}, 2), 2, fp(3)) == 9);
}

TEST_CASE("projective counts by hand") {
  CHECK(count_projective(std::vector<MPoly>{}, 2, fp(3)) == 13);
  CHECK(count_projective(sys({"x0"}, 3), 2, fp(3)) == 4);
  CHECK(count_projective(sys({"x0"}, 3), 2, fp(5)) == 6);
  CHECK(count_projective(sys({"x0^2+x1^2+x2^2"}, 3), 2, fp(5)) == 6);
  // over F_4 the sum of three squares is the square of a linear form
  FieldCtx f4 = FieldCtx::create(2, 2);
  CHECK(count_projective(sys({"x0^2+x1^2+x2^2"}, 3), 2, f4) == 5);
  FieldCtx f9 = FieldCtx::create(3, 2);
  CHECK(count_projective(sys({"x0^2+x1^2+x2^2"}, 3), 2, f9) == 10);
}

TEST_CASE("projective counting rejects bad input") {
  FieldCtx f3 = fp(3);
  CHECK_THROWS_AS(count_projective(sys({"x0^2 + x1"}, 2), 2, f3), Error);
  CHECK_THROWS_AS(count_affine(sys({"x0"}, 1), 1, f3, 2), Error);  // budget of 2 points
  try {
    count_affine(sys({"x0"}, 3), 3, fp(5), 100);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}

TEST_CASE("chevalley-warning checks") {
  CountReport r = cw_check_affine(sys({"x0*x1 + x2^2"}, 4), 4, fp(3));
  CHECK(r.applicable);
  CHECK_FALSE(r.violation);
  CHECK(r.count % 3 == 0);
  CHECK(r.residue == 0);

  CountReport circle = cw_check_affine(sys({"x0^2 + x1^2 - 1"}, 2), 2, fp(5));
  CHECK_FALSE(circle.applicable);
  CHECK_FALSE(circle.violation);

  CountReport empty = cw_check_affine(std::vector<MPoly>{}, 2, fp(3));
  CHECK(empty.count == 9);
  CHECK(empty.applicable);
  CHECK_FALSE(empty.violation);

  CountReport conic = cw_check_projective(sys({"x0^2+x1^2+x2^2"}, 3), 2, fp(5));
  CHECK(conic.count == 6);
  CHECK(conic.applicable);
  CHECK_FALSE(conic.violation);
  CHECK(conic.residue == 1);

  CountReport plane = cw_check_projective(sys({"x0"}, 4), 3, fp(3));
  CHECK(plane.count == 13);
  CHECK(plane.residue == 1);

  CountReport fermat = cw_check_projective(sys({"x0^3+x1^3+x2^3+x3^3"}, 4), 3, fp(7));
  CHECK(fermat.applicable);
  CHECK_FALSE(fermat.violation);
  CHECK(fermat.count % 7 == 1);
}

TEST_CASE("classical chevalley-warning on random systems") {
  Rng rng(1234);
  int done = 0;
  while (done < 40) {
    int n = rand_int(rng, 1, 4);
    int l = rand_int(rng, 1, 2);
    std::vector<int> degs;
    int total = 0;
    for (int i = 0; i < l; ++i) {
      int d = rand_int(rng, 1, 2);
      if (total + d > n) break;
      total += d;
      degs.push_back(d);
    }
    if (degs.empty()) continue;
    std::vector<MPoly> system;
    for (int d : degs) system.push_back(random_homogeneous(rng, n + 1, d));
    for (uint32_t p : {2u, 3u, 5u}) {
      FieldCtx ctx = fp(p);
      CountReport r = cw_check_projective(system, n, ctx);
      CAPTURE(p);
      CAPTURE(system[0].str());
      CHECK(r.applicable);
      CHECK_FALSE(r.violation);
      // the same system, viewed in the affine cone, is 0 mod p
      CountReport a = cw_check_affine(system, n + 1, ctx);
      CHECK(a.applicable);
      CHECK_FALSE(a.violation);
    }
    ++done;
  }
}

TEST_CASE("cone counting identity") {
  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    int n = rand_int(rng, 1, 3);
    int drop = rand_int(rng, 0, n);
    MPoly base = random_homogeneous(rng, n, rand_int(rng, 1, 3));
    MPoly lifted = base.inserted_var(drop);
    for (uint32_t p : {3u, 5u}) {
      FieldCtx ctx = fp(p);
      std::vector<MPoly> top{lifted}, bot{base};
      CHECK(count_projective(top, n, ctx) == p * count_projective(bot, n - 1, ctx) + 1);
    }
  }
}

TEST_CASE("special-form counting identity") {
  Rng rng(78);
  for (int i = 0; i < 10; ++i) {
    int n = rand_int(rng, 2, 3);
    int k = rand_int(rng, 1, 2);
    MPoly fk = random_homogeneous(rng, n, k);
    MPoly fk1 = rand_int(rng, 0, 4) == 0 ? MPoly::zero(n) : random_homogeneous(rng, n, k + 1);
    MPoly F = MPoly::variable(n + 1, n) * fk.inserted_var(n) + fk1.inserted_var(n);
    for (uint32_t p : {3u, 5u}) {
      FieldCtx ctx = fp(p);
      std::vector<MPoly> top{F}, pair{fk, fk1}, lowonly{fk};
      uint64_t lhs = count_projective(top, n, ctx);
      uint64_t rhs = p * count_projective(pair, n - 1, ctx) + 1 +
                     projective_space_size(n - 1, p) - count_projective(lowonly, n - 1, ctx);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("join counting identity in complementary subspaces") {
  Rng rng(79);
  for (int i = 0; i < 6; ++i) {
    int a = rand_int(rng, 2, 3);
    int b = rand_int(rng, 2, 3);
    MPoly f = random_homogeneous(rng, a, rand_int(rng, 1, 2));
    MPoly g = random_homogeneous(rng, b, rand_int(rng, 1, 2));
    // embed f in the first a coordinates and g in the last b
    MPoly fe = f, ge = g;
    for (int j = 0; j < b; ++j) fe = fe.inserted_var(fe.num_vars());
    for (int j = 0; j < a; ++j) ge = ge.inserted_var(0);
    int n = a + b - 1;
    for (uint32_t p : {3u, 5u}) {
      FieldCtx ctx = fp(p);
      std::vector<MPoly> joint{fe, ge}, fs{f}, gs{g};
      uint64_t nx = count_projective(fs, a - 1, ctx);
      uint64_t ny = count_projective(gs, b - 1, ctx);
      CHECK(count_projective(joint, n, ctx) == nx * ny * (p - 1) + nx + ny);
    }
  }
}

TEST_CASE("union-split counting identity") {
  Rng rng(80);
  for (int i = 0; i < 10; ++i) {
    int n = rand_int(rng, 1, 3);
    MPoly f = random_homogeneous(rng, n + 1, rand_int(rng, 1, 2));
    MPoly g = random_homogeneous(rng, n + 1, rand_int(rng, 1, 2));
    for (uint32_t p : {3u, 5u}) {
      FieldCtx ctx = fp(p);
      std::vector<MPoly> prod{f * g}, fs{f}, gs{g}, both{f, g};
      CHECK(count_projective(prod, n, ctx) ==
            count_projective(fs, n, ctx) + count_projective(gs, n, ctx) -
                count_projective(both, n, ctx));
    }
  }
}

TEST_CASE("projective dual-method agreement on random systems") {
  Rng rng(81);
  for (int i = 0; i < 30; ++i) {
    int n = rand_int(rng, 1, 4);
    int l = rand_int(rng, 1, 2);
    std::vector<MPoly> system;
    for (int j = 0; j < l; ++j)
      system.push_back(random_homogeneous(rng, n + 1, rand_int(rng, 1, 3)));
    for (uint32_t p : {2u, 3u, 7u}) {
      FieldCtx ctx = fp(p);
      // count_projective throws InternalDisagreement if the methods differ
      CHECK_NOTHROW(count_projective(system, n, ctx));
    }
  }
}

TEST_CASE("count report metadata") {
  CountReport r = cw_check_projective(sys({"x0^2+x1^2+x2^2"}, 3), 2, fp(5));
  CHECK(r.q == 5);
  CHECK(r.space.kind == SpaceRef::Projective);
  CHECK(r.space.n == 2);
  CHECK(r.elapsed_seconds >= 0.0);
  // balanced residue representative lands in (-q/2, q/2]
  CountReport twolines = cw_check_projective(sys({"x0*x1"}, 3), 2, fp(5));
  CHECK(twolines.count == 11);  // two lines sharing a point
  CHECK(twolines.residue == 1);
}
