#pragma once

// Twisted differential operators on a regular toric variety as a quotient of
// the torus-invariant part of the Weyl algebra of its Cox ring, with a
// canonical form that decides equality in the quotient.

#include <string>
#include <vector>

#include <json.hpp>

#include "toricdiff/divisor.hpp"
#include "toricdiff/fan.hpp"
#include "toricdiff/weyl.hpp"

namespace toricdiff {

struct MussonData {
  Fan fan;
  Sublattice K;      // relations among the generators
  Sublattice Kperp;  // allowed torus weights
  WeilDivisor divisor;

  // Row-reduced K basis: row j reads theta_{pivots[j]} + sum rows[j][q] theta_q
  // over non-pivot q, with constants transform * (chi(m) - <m, tau+>).
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> rows;
  std::vector<std::vector<Rational>> transform;

  std::size_t vars() const { return fan.ray_count(); }
  /// sum_i a_i m_i
  Integer chi(const IntVector& m) const;
};

/// Throws for non-regular fans or a divisor of the wrong length.
MussonData musson_data(const Fan& f, const WeilDivisor& d);

bool is_invariant(const MussonData& md, const WeylElement& a);

/// sum m_i Q_i P_i - chi(m). Throws unless m lies in K.
WeylElement xi(const MussonData& md, const IntVector& m);

/// Canonical representative of the class of an invariant element.
struct TwistedOperator {
  ThetaForm reduced;
  friend bool operator==(const TwistedOperator&, const TwistedOperator&) = default;
};

/// Throws for non-invariant input.
TwistedOperator reduce(const MussonData& md, const WeylElement& a);
bool equal_in_quotient(const MussonData& md, const WeylElement& a, const WeylElement& b);

/// Monomials Q^l P^u with l - u in K^perp and |l| + |u| <= bound, ordered by
/// degree and then lexicographically.
std::vector<WeylMonomial> invariant_monomials(const MussonData& md, int degree_bound);

/// md with its rays renumbered: ray numbering[i] becomes ray i.
MussonData renumbered(const MussonData& md, const std::vector<std::size_t>& numbering);

/// Whether fourier(I, g) is invariant for md_target, for each monomial g.
std::vector<char> fourier_invariance_sweep(const MussonData& md_target, const IndexSet& I,
                                           const std::vector<WeylMonomial>& monomials, bool parallel);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
  std::string counterexample;  // rendered operator, empty on success
};

struct DescentReport {
  int degree_bound = 0;
  IndexSet reflected;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Checks that fourier(I) carries the invariant algebra of x onto that of
/// x_prime, maps each xi_m to xi'_{sigma_I m}, and respects products and the
/// ideal modulo the character ideals.
DescentReport verify_fourier_descent(const MussonData& x, const MussonData& x_prime, const ReflectionWitness& w,
                                     int degree_bound);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const DescentReport& r);

}  // namespace toricdiff
