#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "toricdiff/fan.hpp"

using namespace toricdiff;

namespace {

IntVector iv(std::initializer_list<long long> xs) { return to_int_vector(std::vector<long long>(xs)); }

bool has_issue(const std::vector<std::string>& issues, const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::set<Cone> cone_set(const Fan& f) { return {f.cones.begin(), f.cones.end()}; }

// Plane membership by Cramer's rule: p = s a + t b with s, t >= 0.
bool in_plane_cone(const IntVector& a, const IntVector& b, const IntVector& p) {
  const Integer det = a[0] * b[1] - a[1] * b[0];
  const Integer s = p[0] * b[1] - p[1] * b[0];
  const Integer t = a[0] * p[1] - a[1] * p[0];
  if (det > 0) return s >= 0 && t >= 0;
  return s <= 0 && t <= 0;
}

bool in_plane_support(const Fan& f, const IntVector& p) {
  return std::any_of(f.cones.begin(), f.cones.end(), [&](const Cone& c) {
    return c.size() == 2 && in_plane_cone(f.generators[c[0]], f.generators[c[1]], p);
  });
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate_fan(projective_fan(2)).empty());

  Fan line;
  line.rank = 1;
  line.generators = {iv({1})};
  line.cones = {{0}};
  CHECK(validate_fan(line).empty());

  Fan bad;
  bad.rank = 2;
  bad.generators = {iv({1, 0}), iv({0, 1}), iv({-1, -1})};
  bad.cones = {{0, 1, 2}};
  CHECK(has_issue(validate_fan(bad), "linearly dependent"));

  Fan overlap;
  overlap.rank = 2;
  overlap.generators = {iv({1, 0}), iv({0, 1}), iv({1, 1})};
  overlap.cones = {{0, 1}, {0, 2}};
  CHECK(has_issue(validate_fan(overlap), "{1,2} and {1,3}"));

  Fan zero;
  zero.rank = 2;
  zero.generators = {iv({0, 0})};
  CHECK(has_issue(validate_fan(zero), "zero"));
}

TEST_CASE("regularity") {
  CHECK(is_regular(blowup_fan(2)).regular);
  CHECK(is_regular(zr_resolution_fan(3, 2, Side::Plus)).regular);

  Fan doubled;
  doubled.rank = 1;
  doubled.generators = {iv({2})};
  doubled.cones = {{0}};
  const auto cert = is_regular(doubled);
  CHECK_FALSE(cert.regular);
  REQUIRE(cert.cone_factors.size() == 1);
  CHECK(cert.cone_factors[0] == std::vector<Integer>{2});

  Fan singular;
  singular.rank = 2;
  singular.generators = {iv({1, 0}), iv({1, 2})};
  singular.cones = {{0, 1}};
  CHECK_FALSE(is_regular(singular).regular);
}

TEST_CASE("catalog fans are regular and satisfy their relation") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<Fan> fans{projective_fan(n), blowup_fan(n), resolution_fan(n, 1, Side::Minus)};
    for (std::size_t r = 2; r + 1 <= n; ++r) {
      fans.push_back(zr_resolution_fan(n, r, Side::Plus));
      fans.push_back(zr_resolution_fan(n, r, Side::Minus));
      fans.push_back(zr_fan(n, r));
    }
    for (const auto& f : fans) {
      CAPTURE(write_fan(f));
      CHECK(validate_fan(f).empty());
      CHECK(is_regular(f).regular);
    }
    for (std::size_t r = 1; r <= n; ++r) {
      const auto g = relation_generators(n, r);
      IntVector lhs(n, Integer(0)), rhs(n, Integer(0));
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < n; ++k) (i < r ? lhs : rhs)[k] += g[i][k];
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("catalog generators and cones") {
  const Fan p2 = projective_fan(2);
  CHECK(p2.generators == std::vector<IntVector>{iv({1, 0}), iv({0, 1}), iv({-1, -1})});

  const Fan b2 = blowup_fan(2);
  CHECK(b2.generators[2] == iv({1, 1}));
  CHECK(cone_set(b2) == std::set<Cone>{{0, 2}, {1, 2}});

  // C_i is spanned by every generator but k_i; Plus keeps i in I = {1..r}.
  for (std::size_t n = 3; n <= 5; ++n)
    for (std::size_t r = 2; r + 1 <= n; ++r) {
      std::set<Cone> plus, minus, zr;
      for (std::size_t i = 0; i <= n; ++i) {
        Cone c;
        for (std::size_t j = 0; j <= n; ++j)
          if (j != i) c.push_back(j);
        (i < r ? plus : minus).insert(c);
      }
      // Z_r: cones k_J whose complement meets both I and its complement.
      for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
        Cone c;
        bool misses_in = false, misses_out = false;
        for (std::size_t j = 0; j <= n; ++j) {
          if (mask & (1u << j)) c.push_back(j);
          else (j < r ? misses_in : misses_out) = true;
        }
        if (misses_in && misses_out && c.size() == n - 1) zr.insert(c);
      }
      CHECK(cone_set(zr_resolution_fan(n, r, Side::Plus)) == plus);
      CHECK(cone_set(zr_resolution_fan(n, r, Side::Minus)) == minus);
      CHECK(cone_set(zr_fan(n, r)) == zr);
    }

  CHECK_THROWS_AS(zr_fan(3, 1), Error);
  CHECK_THROWS_AS(zr_resolution_fan(3, 3, Side::Plus), Error);
  CHECK_THROWS_AS(blowup_fan(1), Error);
}

TEST_CASE("minimal fan") {
  const Fan f = minimal_fan(relation_generators(3, 2));
  CHECK(f.cones.size() == 4);
  CHECK(is_regular(f).regular);
  CHECK_THROWS_AS(minimal_fan({iv({1, 0}), iv({2, 0})}), Error);
}

TEST_CASE("reflected generators") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const Fan p = projective_fan(n);
    IndexSet first_n(n);
    for (std::size_t i = 0; i < n; ++i) first_n[i] = i;
    // Reflecting k_1..k_n gives the blow-up generators after the lattice map -1.
    auto refl = reflected_generators(p, first_n);
    std::vector<IntVector> negated_blowup = blowup_fan(n).generators;
    for (auto& v : negated_blowup)
      for (auto& x : v) x = -x;
    CHECK(refl == negated_blowup);
    CHECK(reflected_generators(p, {}) == p.generators);
    Fan once = p;
    once.generators = refl;
    CHECK(reflected_generators(once, first_n) == p.generators);
  }
}

TEST_CASE("reflection pairs") {
  const Fan p2 = projective_fan(2), b2 = blowup_fan(2);
  const auto all = reflection_witnesses(p2, b2);
  CHECK(std::any_of(all.begin(), all.end(), [](const ReflectionWitness& w) { return w.reflected.size() == 2; }));
  // |I| = 2 only appears with the lattice negated; the least witness flips k_3.
  for (const auto& w : all)
    if (w.reflected.size() == 2) CHECK(w.lattice_negated);
  const auto least = is_I_reflection_pair(p2, b2);
  REQUIRE(least);
  CHECK(least->reflected == IndexSet{2});
  CHECK_FALSE(least->lattice_negated);

  const auto self = is_I_reflection_pair(p2, p2);
  REQUIRE(self);
  CHECK(self->reflected.empty());
  CHECK(self->numbering == std::vector<std::size_t>{0, 1, 2});

  CHECK_FALSE(is_I_reflection_pair(p2, projective_fan(3)));

  // Each catalog fan X' is paired with the projective fan on its generators
  // reflected along I = {1..r}.
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t r = 1; r <= n; ++r) {
      const Fan xp = r == n ? blowup_fan(n) : r == 1 ? resolution_fan(n, 1, Side::Minus)
                                                     : resolution_fan(n, r, Side::Plus);
      IndexSet I(r);
      std::vector<std::size_t> identity(n + 1);
      std::iota(I.begin(), I.end(), 0);
      std::iota(identity.begin(), identity.end(), 0);
      const Fan x = projective_fan_on(reflected_generators(xp, I));
      CHECK(validate_fan(x).empty());
      CHECK(is_regular(x).regular);
      const auto forward = reflection_witnesses(x, xp);
      CHECK(std::any_of(forward.begin(), forward.end(), [&](const ReflectionWitness& w) {
        return w.reflected == I && !w.lattice_negated && w.numbering == identity;
      }));
      CHECK(is_I_reflection_pair(xp, x).has_value());
    }
}

TEST_CASE("refinement") {
  CHECK(refines(zr_resolution_fan(3, 2, Side::Plus), zr_closure_fan(3, 2)));
  CHECK(refines(zr_resolution_fan(3, 2, Side::Minus), zr_closure_fan(3, 2)));
  CHECK(refines(zr_resolution_fan(4, 2, Side::Plus), zr_closure_fan(4, 2)));
  CHECK(refines(projective_fan(2), projective_fan(2)));
  CHECK_FALSE(refines(zr_closure_fan(3, 2), zr_resolution_fan(3, 2, Side::Plus)));

  const Fan p2 = projective_fan(2), b2 = blowup_fan(2);
  CHECK_FALSE(refines(p2, b2));
  bool differs = false;
  for (long long x = -3; x <= 3; ++x)
    for (long long y = -3; y <= 3; ++y)
      if (in_plane_support(p2, iv({x, y})) != in_plane_support(b2, iv({x, y}))) differs = true;
  CHECK(differs);
  CHECK_THROWS_AS(refines(p2, projective_fan(3)), Error);
}

TEST_CASE("fan text round trip") {
  const Fan f = zr_resolution_fan(4, 2, Side::Minus);
  const std::string text = write_fan(f, iv({-1, -1, 0, 0, 3}));
  const FanDocument doc = read_fan(text);
  CHECK(doc.fan.rank == f.rank);
  CHECK(doc.fan.generators == f.generators);
  CHECK(doc.fan.cones == f.cones);
  REQUIRE(doc.divisor);
  CHECK(*doc.divisor == iv({-1, -1, 0, 0, 3}));
  CHECK(write_fan(doc.fan, doc.divisor) == text);
  CHECK(write_fan(projective_fan(1)) == "{\n  \"rank\": 1,\n  \"generators\": [[1], [-1]],\n  \"cones\": [[1], [2]]\n}\n");
}

TEST_CASE("fan text errors name the field") {
  auto message = [](const std::string& text) {
    try {
      read_fan(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\"generators\": [[1]], \"cones\": [[1]]}").find("rank") != std::string::npos);
  CHECK(message("{\"rank\": 1, \"cones\": [[1]]}").find("generators") != std::string::npos);
  CHECK(message("{\"rank\": 2, \"generators\": [[1]], \"cones\": []}").find("generators") != std::string::npos);
  CHECK(message("{\"rank\": 1, \"generators\": [[1]], \"cones\": [[2]]}").find("cones") != std::string::npos);
  CHECK(message("{\"rank\": 1, \"generators\": [[1]], \"cones\": [], \"divisor\": [1, 2]}").find("divisor") !=
        std::string::npos);
  CHECK(message("{\"rank\": 1, \"generators\": [[1]], \"cones\": [], \"colour\": 1}").find("colour") !=
        std::string::npos);
  CHECK(message("{\"rank\": 1,").find("well-formed") != std::string::npos);
}
