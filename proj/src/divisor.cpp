#include "toricdiff/divisor.hpp"

namespace toricdiff {

WeilDivisor WeilDivisor::zero(std::size_t rays) { return {IntVector(rays, Integer(0))}; }

WeilDivisor WeilDivisor::prime(std::size_t rays, std::size_t index, long multiple) {
  if (index >= rays) throw Error("WeilDivisor::prime: index out of range");
  WeilDivisor d = zero(rays);
  d.coefficients[index] = multiple;
  return d;
}

WeilDivisor operator+(const WeilDivisor& a, const WeilDivisor& b) {
  if (a.coefficients.size() != b.coefficients.size()) throw Error("divisor sum: ray count mismatch");
  WeilDivisor out = a;
  for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] += b.coefficients[i];
  return out;
}

WeilDivisor operator-(const WeilDivisor& a, const WeilDivisor& b) {
  if (a.coefficients.size() != b.coefficients.size()) throw Error("divisor difference: ray count mismatch");
  WeilDivisor out = a;
  for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] -= b.coefficients[i];
  return out;
}

WeilDivisor character_divisor(const Fan& f, const IntVector& mu) {
  if (mu.size() != f.rank) throw Error("character_divisor: mu has the wrong length");
  WeilDivisor d;
  for (const auto& k : f.generators) d.coefficients.push_back(dot(mu, k));
  return d;
}

ClassGroup::ClassGroup(const Fan& f) : rays_(f.ray_count()) {
  const IntMatrix characters = f.generator_matrix().transposed();  // d x n
  snf_ = smith_normal_form(characters);
  invariants_ = cokernel_invariants(characters);
  if (invariants_.is_free_rank_one()) {
    bool found = false;
    for (std::size_t j = rays_; j-- > 0;) {
      const Integer y = class_of(WeilDivisor::prime(rays_, j)).coordinates.back();
      if (abs(y) == 1) {
        generator_ = j;
        generator_free_ = y;
        found = true;
        break;
      }
    }
    if (!found) throw Error("class group: no prime divisor generates");
  }
}

DivisorClass ClassGroup::class_of(const WeilDivisor& d) const {
  if (d.coefficients.size() != rays_) throw Error("class_of: divisor has the wrong length");
  const IntVector y = snf_.U.apply(d.coefficients);
  const std::size_t r = snf_.rank();
  DivisorClass c;
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& s = snf_.S(i, i);
    if (s == 1) continue;
    Integer res;
    mpz_fdiv_r(res.get_mpz_t(), y[i].get_mpz_t(), s.get_mpz_t());
    c.coordinates.push_back(res);
  }
  for (std::size_t i = r; i < rays_; ++i) c.coordinates.push_back(y[i]);
  return c;
}

WeilDivisor ClassGroup::representative(const DivisorClass& c) const {
  const std::size_t r = snf_.rank();
  IntVector y(rays_, Integer(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (snf_.S(i, i) == 1) continue;
    if (k >= c.coordinates.size()) throw Error("representative: class has too few coordinates");
    y[i] = c.coordinates[k++];
  }
  for (std::size_t i = r; i < rays_; ++i) {
    if (k >= c.coordinates.size()) throw Error("representative: class has too few coordinates");
    y[i] = c.coordinates[k++];
  }
  auto a = solve_integer(snf_.U, y);
  if (!a) throw Error("representative: U is not unimodular");
  return {*a};
}

Integer ClassGroup::degree(const WeilDivisor& d) const {
  if (!invariants_.is_free_rank_one()) throw Error("degree: class group is not Z");
  return class_of(d).coordinates.back() * generator_free_;
}

ClassGroup class_group(const Fan& f) {
  auto cert = is_regular(f);
  if (!cert.regular) throw Error("class_group: fan is not regular (" + cert.reason + ")");
  return ClassGroup(f);
}

Equivalence linearly_equivalent(const Fan& f, const WeilDivisor& d1, const WeilDivisor& d2) {
  const WeilDivisor diff = d1 - d2;
  if (diff.coefficients.size() != f.ray_count()) throw Error("linearly_equivalent: wrong divisor length");
  auto mu = solve_integer(f.generator_matrix().transposed(), diff.coefficients);
  if (!mu) return {};
  return {true, std::move(mu)};
}

bool witness_relates(const Fan& x, const Fan& x_prime, const ReflectionWitness& w) {
  const std::size_t d = x.ray_count();
  if (x.rank != x_prime.rank || d != x_prime.ray_count() || w.numbering.size() != d) return false;
  std::vector<bool> reflected(d, false), seen(d, false);
  for (std::size_t i : w.reflected) {
    if (i >= d) return false;
    reflected[i] = true;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t j = w.numbering[i];
    if (j >= d || seen[j]) return false;
    seen[j] = true;
    const bool flip = reflected[i] != w.lattice_negated;
    for (std::size_t c = 0; c < x.rank; ++c) {
      const Integer expected = flip ? Integer(-x.generators[i][c]) : x.generators[i][c];
      if (x_prime.generators[j][c] != expected) return false;
    }
  }
  return true;
}

WeilDivisor phi_I(const Fan& x, const Fan& x_prime, const ReflectionWitness& w, const WeilDivisor& d) {
  if (!witness_relates(x, x_prime, w)) throw Error("phi_I: fans are not related by the given I-reflection");
  if (d.coefficients.size() != x.ray_count()) throw Error("phi_I: divisor has the wrong length");
  std::vector<bool> reflected(x.ray_count(), false);
  for (std::size_t i : w.reflected) reflected[i] = true;
  WeilDivisor out = WeilDivisor::zero(x.ray_count());
  for (std::size_t i = 0; i < x.ray_count(); ++i) {
    const Integer& a = d.coefficients[i];
    out.coefficients[w.numbering[i]] = reflected[i] ? Integer(-(a + 1)) : a;
  }
  return out;
}

DivisorClass phi_I_class(const Fan& x, const Fan& x_prime, const ReflectionWitness& w, const DivisorClass& c) {
  const WeilDivisor rep = class_group(x).representative(c);
  return class_group(x_prime).class_of(phi_I(x, x_prime, w, rep));
}

}  // namespace toricdiff
