#pragma once

// Torus-invariant Weil divisors on a fan, their classes modulo divisors of
// characters, and the affine map phi_I between class groups of fans related
// by an I-reflection.

#include <optional>
#include <vector>

#include "toricdiff/fan.hpp"
#include "toricdiff/intlat.hpp"

namespace toricdiff {

/// sum_i a_i D_i, one coefficient per ray of the fan it lives on.
struct WeilDivisor {
  IntVector coefficients;

  static WeilDivisor zero(std::size_t rays);
  /// multiple * D_index
  static WeilDivisor prime(std::size_t rays, std::size_t index, long multiple = 1);

  friend WeilDivisor operator+(const WeilDivisor& a, const WeilDivisor& b);
  friend WeilDivisor operator-(const WeilDivisor& a, const WeilDivisor& b);
  friend bool operator==(const WeilDivisor&, const WeilDivisor&) = default;
};

/// Coordinates of a class: residues mod each torsion factor, then free part.
struct DivisorClass {
  std::vector<Integer> coordinates;
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

/// Cokernel of the character map M -> (+) Z D_i.
class ClassGroup {
 public:
  explicit ClassGroup(const Fan& f);

  const CokernelInvariants& invariants() const { return invariants_; }
  std::size_t ray_count() const { return rays_; }

  DivisorClass class_of(const WeilDivisor& d) const;
  WeilDivisor representative(const DivisorClass& c) const;

  /// For torsion-free groups of rank one: the integer k with [D] = k [D_0].
  Integer degree(const WeilDivisor& d) const;
  /// Index of the prime divisor used as the generator D_0 (the last ray
  /// whose class generates, so D_{n+1} for the projective-space family).
  std::size_t generator_index() const { return generator_; }

 private:
  std::size_t rays_ = 0;
  SmithDecomposition snf_;
  CokernelInvariants invariants_;
  std::size_t generator_ = 0;
  Integer generator_free_ = 0;
};

WeilDivisor character_divisor(const Fan& f, const IntVector& mu);

/// Throws for non-regular fans.
ClassGroup class_group(const Fan& f);

struct Equivalence {
  bool equivalent = false;
  std::optional<IntVector> witness;  // mu with D1 - D2 = div(chi_mu)
};

Equivalence linearly_equivalent(const Fan& f, const WeilDivisor& d1, const WeilDivisor& d2);

/// a_i for i outside I and -(a_i + 1) for i in I, carried to the second fan's
/// numbering. Throws if the witness does not relate the two fans.
WeilDivisor phi_I(const Fan& x, const Fan& x_prime, const ReflectionWitness& w, const WeilDivisor& d);
DivisorClass phi_I_class(const Fan& x, const Fan& x_prime, const ReflectionWitness& w, const DivisorClass& c);

/// Checks gen'_{numbering[i]} = +-k_i as prescribed by the witness.
bool witness_relates(const Fan& x, const Fan& x_prime, const ReflectionWitness& w);

}  // namespace toricdiff
