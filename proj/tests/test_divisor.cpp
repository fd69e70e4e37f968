#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "toricdiff/divisor.hpp"

using namespace toricdiff;

namespace {

IntVector iv(std::initializer_list<long long> xs) { return to_int_vector(std::vector<long long>(xs)); }

WeilDivisor wd(std::initializer_list<long long> xs) { return {iv(xs)}; }

Integer pairing(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// The witness mu must reproduce d1 - d2 coefficient by coefficient.
bool witness_checks(const Fan& f, const WeilDivisor& d1, const WeilDivisor& d2, const Equivalence& e) {
  if (!e.equivalent || !e.witness) return false;
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (pairing(*e.witness, f.generators[i]) != d1.coefficients[i] - d2.coefficients[i]) return false;
  return true;
}

struct Pair {
  Fan x, xp;
  ReflectionWitness w;
};

Pair family_pair(std::size_t n, std::size_t r) {
  Pair p;
  p.xp = r == n ? blowup_fan(n) : r == 1 ? resolution_fan(n, 1, Side::Minus) : resolution_fan(n, r, Side::Plus);
  p.w.reflected.resize(r);
  std::iota(p.w.reflected.begin(), p.w.reflected.end(), 0);
  p.w.numbering.resize(n + 1);
  std::iota(p.w.numbering.begin(), p.w.numbering.end(), 0);
  p.x = projective_fan_on(reflected_generators(p.xp, p.w.reflected));
  return p;
}

}  // namespace

TEST_CASE("character divisors") {
  CHECK(character_divisor(projective_fan(2), iv({1, 0})) == wd({1, 0, -1}));
  CHECK(character_divisor(projective_fan(2), iv({0, 0})) == WeilDivisor::zero(3));
  CHECK(character_divisor(blowup_fan(2), iv({1, 1})) == wd({1, 1, 2}));
}

TEST_CASE("class groups of the catalog are Z") {
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<Fan> fans{projective_fan(n), blowup_fan(n)};
    for (std::size_t r = 2; r + 1 <= n; ++r) {
      fans.push_back(zr_fan(n, r));
      fans.push_back(zr_resolution_fan(n, r, Side::Plus));
    }
    for (const auto& f : fans) {
      const ClassGroup g = class_group(f);
      CHECK(g.invariants().is_free_rank_one());
      CHECK(g.generator_index() == n);
      CHECK(g.degree(WeilDivisor::prime(n + 1, n)) == 1);
    }
  }

  // On the blow-up every D_i (i <= n) is -E.
  const ClassGroup b = class_group(blowup_fan(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(b.degree(WeilDivisor::prime(4, i)) == -1);

  Fan doubled;
  doubled.rank = 1;
  doubled.generators = {iv({2}), iv({-1})};
  doubled.cones = {{0}, {1}};
  CHECK_THROWS_AS(class_group(doubled), Error);
}

TEST_CASE("relations on Z_r") {
  const Fan f = zr_fan(3, 2);
  // I = {1, 2}: equal inside a side, opposite across it.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      const bool same_side = (i < 2) == (j < 2);
      const WeilDivisor di = WeilDivisor::prime(4, i);
      const WeilDivisor dj = WeilDivisor::prime(4, j, same_side ? 1 : -1);
      const auto e = linearly_equivalent(f, di, dj);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(witness_checks(f, di, dj, e));
    }
}

TEST_CASE("linear equivalence") {
  const Fan p2 = projective_fan(2);
  const auto d1 = WeilDivisor::prime(3, 0), d2 = WeilDivisor::prime(3, 1);
  CHECK(witness_checks(p2, d1, d2, linearly_equivalent(p2, d1, d2)));
  const auto same = linearly_equivalent(p2, d1, d1);
  CHECK(same.equivalent);
  CHECK(*same.witness == iv({0, 0}));

  // E = D_3 against D_1 on the blow-up: <mu, k_i> = (-1, 0, 1) has no solution.
  const Fan b2 = blowup_fan(2);
  CHECK_FALSE(linearly_equivalent(b2, WeilDivisor::prime(3, 2), d1).equivalent);
  bool found = false;
  const WeilDivisor diff = WeilDivisor::prime(3, 2) - d1;
  for (long long a = -5; a <= 5; ++a)
    for (long long b = -5; b <= 5; ++b) {
      const IntVector mu = iv({a, b});
      bool all = true;
      for (std::size_t i = 0; i < 3; ++i) all = all && pairing(mu, b2.generators[i]) == diff.coefficients[i];
      found = found || all;
    }
  CHECK_FALSE(found);
}

TEST_CASE("class and representative") {
  const Fan f = zr_resolution_fan(4, 2, Side::Minus);
  const ClassGroup g = class_group(f);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    WeilDivisor a = WeilDivisor::zero(5);
    for (auto& c : a.coefficients) c = d(rng);
    const WeilDivisor rep = g.representative(g.class_of(a));
    CHECK(linearly_equivalent(f, a, rep).equivalent);
  }
}

TEST_CASE("class group ignores the ray order") {
  const Fan f = zr_resolution_fan(4, 2, Side::Plus);
  std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  Fan g;
  g.rank = f.rank;
  for (std::size_t i : perm) g.generators.push_back(f.generators[i]);
  std::vector<std::size_t> where(5);
  for (std::size_t i = 0; i < 5; ++i) where[perm[i]] = i;
  for (const auto& c : f.cones) {
    Cone m;
    for (std::size_t i : c) m.push_back(where[i]);
    std::sort(m.begin(), m.end());
    g.cones.push_back(m);
  }
  CHECK(class_group(f).invariants().torsion == class_group(g).invariants().torsion);
  CHECK(class_group(f).invariants().free_rank == class_group(g).invariants().free_rank);
}

TEST_CASE("phi_I on prime divisors") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t r = 1; r <= n; ++r) {
      const Pair p = family_pair(n, r);
      REQUIRE(witness_relates(p.x, p.xp, p.w));
      for (long long ell = -3; ell <= 3; ++ell) {
        // l D_1 with 1 in I lands in the class of -(l + |I|) D_1.
        const WeilDivisor image = phi_I(p.x, p.xp, p.w, WeilDivisor::prime(n + 1, 0, ell));
        CHECK(linearly_equivalent(p.xp, image, WeilDivisor::prime(n + 1, 0, -(ell + static_cast<long long>(r))))
                  .equivalent);
      }
    }
}

TEST_CASE("phi_I between projective space and the blow-up") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const Pair p = family_pair(n, n);
    const ClassGroup g = class_group(p.xp);
    for (long m = -3; m <= 3; ++m) {
      const WeilDivisor image = phi_I(p.x, p.xp, p.w, WeilDivisor::prime(n + 1, n, m - static_cast<long>(n)));
      WeilDivisor expected = WeilDivisor::zero(n + 1);
      for (std::size_t i = 0; i < n; ++i) expected.coefficients[i] = -1;
      expected.coefficients[n] = m - static_cast<long>(n);
      CHECK(image == expected);
      CHECK(g.degree(image) == m);
    }
  }
}

TEST_CASE("phi_I with empty I is the identity") {
  const Fan f = projective_fan(3);
  ReflectionWitness w{{}, {0, 1, 2, 3}, false};
  const WeilDivisor d = wd({2, -1, 0, 5});
  CHECK(phi_I(f, f, w, d) == d);
}

TEST_CASE("phi_I is well defined on classes") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> d(-5, 5);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t r = 1; r <= n; ++r) {
      const Pair p = family_pair(n, r);
      const ClassGroup gx(p.x), gxp(p.xp);
      for (int trial = 0; trial < 10; ++trial) {
        WeilDivisor a = WeilDivisor::zero(n + 1);
        for (auto& c : a.coefficients) c = d(rng);
        IntVector mu(n);
        for (auto& c : mu) c = d(rng);
        const WeilDivisor shifted = a + character_divisor(p.x, mu);
        CHECK(gxp.class_of(phi_I(p.x, p.xp, p.w, a)) == gxp.class_of(phi_I(p.x, p.xp, p.w, shifted)));
        CHECK(phi_I_class(p.x, p.xp, p.w, gx.class_of(a)) == gxp.class_of(phi_I(p.x, p.xp, p.w, a)));
        // Reflecting back along the same I returns the divisor itself.
        CHECK(phi_I(p.xp, p.x, p.w, phi_I(p.x, p.xp, p.w, a)) == a);
      }
    }
}

TEST_CASE("phi_I rejects unrelated fans") {
  const Fan p2 = projective_fan(2);
  ReflectionWitness w{{0}, {0, 1, 2}, false};
  CHECK_FALSE(witness_relates(p2, p2, w));
  CHECK_THROWS_AS(phi_I(p2, p2, w, WeilDivisor::zero(3)), Error);
}
