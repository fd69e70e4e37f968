#pragma once

// The Weyl algebra in d variables over Q, with coordinates Q_i and
// derivations P_i = d/dQ_i, stored in the normal-ordered basis Q^lambda P^mu.
//
// multiply() is the OpenMP kernel; multiply_serial() is the reference it is
// tested against. Both produce identical maps (exact arithmetic).

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "toricdiff/intlat.hpp"

namespace toricdiff {

using Exponents = std::vector<int>;
using TorusWeight = std::vector<int>;

/// Q^q P^p
struct WeylMonomial {
  Exponents q;
  Exponents p;

  int degree() const;
  TorusWeight torus_weight() const;  // q - p
  friend auto operator<=>(const WeylMonomial&, const WeylMonomial&) = default;
};

class WeylElement {
 public:
  using Terms = std::map<WeylMonomial, Rational>;

  explicit WeylElement(std::size_t vars = 0) : vars_(vars) {}

  static WeylElement constant(std::size_t vars, const Rational& c);
  static WeylElement q(std::size_t vars, std::size_t i);
  static WeylElement p(std::size_t vars, std::size_t i);
  static WeylElement monomial(const Exponents& q, const Exponents& p, const Rational& c = 1);

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int degree() const;

  /// Adds c * m, erasing the entry if it cancels.
  void add_term(const WeylMonomial& m, const Rational& c);

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const Rational& c);

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const Rational& c) { return a *= c; }
  friend WeylElement operator*(const Rational& c, WeylElement a) { return a *= c; }
  friend WeylElement operator-(WeylElement a) { return a *= Rational(-1); }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement&, const WeylElement&) = default;

 private:
  std::size_t vars_;
  Terms terms_;
};

/// Normal-ordered product of two basis monomials, accumulated into `out`.
void accumulate_monomial_product(const WeylMonomial& a, const WeylMonomial& b, const Rational& c,
                                 WeylElement::Terms& out);

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement multiply_serial(const WeylElement& a, const WeylElement& b);
WeylElement multiply_parallel(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);
WeylElement power(const WeylElement& a, unsigned k);

/// Finite Laurent polynomial sum c_nu Q^nu, nu in Z^d.
class LaurentPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit LaurentPoly(std::size_t vars = 0) : vars_(vars) {}
  static LaurentPoly monomial(const Exponents& nu, const Rational& c = 1);

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& nu, const Rational& c);
  /// Keeps only the monomials satisfying `keep`.
  template <class Pred>
  LaurentPoly filtered(Pred keep) const {
    LaurentPoly out(vars_);
    for (const auto& [nu, c] : terms_)
      if (keep(nu)) out.terms_.emplace(nu, c);
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::size_t vars_;
  Terms terms_;
};

/// P_i acts as the formal derivative (also on negative exponents), Q_i by
/// multiplication.
LaurentPoly apply(const WeylElement& a, const LaurentPoly& f);

/// Index-set automorphism Q_i -> P_i, P_i -> -Q_i for i in I.
WeylElement fourier(const std::vector<std::size_t>& I, const WeylElement& a);
/// Inverse automorphism Q_i -> -P_i, P_i -> Q_i for i in I.
WeylElement fourier_inverse(const std::vector<std::size_t>& I, const WeylElement& a);

std::map<TorusWeight, WeylElement> torus_weight_decompose(const WeylElement& a);

/// Commutative polynomial in theta_1..theta_d.
using ThetaPoly = std::map<Exponents, Rational>;

void add_to(ThetaPoly& p, const Exponents& e, const Rational& c);
ThetaPoly theta_product(const ThetaPoly& a, const ThetaPoly& b);

/// sum_tau Q^{tau+} p_tau(theta) P^{tau-}, theta_i = Q_i P_i.
struct ThetaForm {
  std::size_t vars = 0;
  std::map<TorusWeight, ThetaPoly> components;
  friend bool operator==(const ThetaForm&, const ThetaForm&) = default;
};

ThetaForm to_theta_form(const WeylElement& a);
WeylElement from_theta_form(const ThetaForm& t);

/// sum_{i in S} Q_i P_i
WeylElement euler_operator(std::size_t vars, const std::vector<std::size_t>& subset);

std::string to_string(const Rational& c);
std::string to_string(const WeylElement& a);
std::string to_string(const LaurentPoly& f);
std::string to_string(const ThetaPoly& p);
std::string to_string(const ThetaForm& t);

/// Signed Stirling numbers of the first kind s(n, k) (falling factorial
/// coefficients) and Stirling numbers of the second kind S(n, k).
Integer stirling_first(unsigned n, unsigned k);
Integer stirling_second(unsigned n, unsigned k);
Integer falling_factorial(const Integer& x, unsigned k);

}  // namespace toricdiff
