#pragma once

// sl_{n+1} acting on sections and top cohomology of line bundles over the
// fans obtained from projective space by reflecting the first r generators.
// Indices i in the public API are 1-based where they name Chevalley
// generators or coordinates epsilon_i, and exponent vectors are 0-based.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricdiff/musson.hpp"

namespace toricdiff {

/// Element of Z^{n+1} / Z(1, ..., 1).
struct Weight {
  std::vector<long long> coords;

  /// Representative with last coordinate 0.
  Weight canonical() const;
  std::size_t size() const { return coords.size(); }

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  friend Weight operator*(long long k, const Weight& a);
  /// Equality modulo the all-ones vector.
  friend bool operator==(const Weight& a, const Weight& b);
};

Weight epsilon(std::size_t n, std::size_t i);
/// epsilon_1 + ... + epsilon_i
Weight fundamental_weight(std::size_t n, std::size_t i);
/// (n, n-1, ..., 0)
Weight rho(std::size_t n);
/// Swaps coordinates i and i+1.
Weight simple_reflection(const Weight& w, std::size_t i);
/// Coordinates weakly decreasing.
bool is_dominant(const Weight& w);
std::string to_string(const Weight& w);

/// Projective space (r = 0), the blow-up (r = 1 with the one-cone side,
/// r = n), the resolution with the C_i, i <= r, cones (2 <= r <= n-1), and the
/// negated projective space (r = n + 1).
Fan family_fan(std::size_t n, std::size_t r);
/// phi_I(l D_{n+1}) for r <= n and its r = n + 1 counterpart.
WeilDivisor family_divisor(std::size_t n, std::size_t r, long long ell);
/// m = l + r, the degree of the family divisor.
long long family_degree(std::size_t r, long long ell);
MussonData family_data(std::size_t n, std::size_t r, long long ell);

struct ChevalleyImages {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<WeylElement> e, f, h;  // index i - 1 holds e_i, f_i, h_i
};

ChevalleyImages chevalley_images(std::size_t n, std::size_t r);

struct RelationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Chevalley-Serre relations of type A_n modulo the character ideal.
RelationReport check_sl_relations(const ChevalleyImages& ci, const MussonData& md);

struct SectionSpace {
  std::size_t n = 0, r = 0;
  long long m = 0;
  int degree_bound = 0;
  std::vector<Exponents> basis;
  std::vector<Weight> weights;
};

/// True when the section space is zero (m < 0 and r = 0, or m > 0 and r = n+1).
bool sections_empty(std::size_t n, std::size_t r, long long m);
SectionSpace section_basis(std::size_t n, std::size_t r, long long m, int degree_bound);

/// sigma_I(nu) - sum_{i in I} epsilon_i with I = {1..r}.
Weight weight_of(const Exponents& nu, std::size_t r);

int default_primitive_bound(std::size_t n, long long m);
/// Basis monomials killed by every e_i.
std::vector<Exponents> primitive_sections(std::size_t n, std::size_t r, long long m, int degree_bound);
/// The monomial predicted for the primitive section, if the space is nonzero.
std::optional<Exponents> expected_primitive(std::size_t n, std::size_t r, long long m);

struct HighestWeight {
  Weight explicit_form;
  Weight reflection_form;
};

/// Throws in the empty cases.
HighestWeight highest_weight(std::size_t n, std::size_t r, long long ell);

/// Operator taking the primitive section to Q^nu.
WeylElement section_witness(std::size_t n, std::size_t r, long long m, const Exponents& nu);
/// The top-cohomology operator normalized to send the primitive class to Q^nu.
WeylElement cohomology_witness(std::size_t n, std::size_t r, long long ell, const Exponents& nu);
/// The same operator with the normalization (-1)^{sum nu_i + r} / prod (-(nu_i+1))!
/// over i <= r, which sends the primitive class to C(l + k_1, l) Q^nu with
/// k_1 = -(nu_1 + 1).
WeylElement printed_cohomology_witness(std::size_t n, std::size_t r, long long ell, const Exponents& nu);

/// Checks that the witness is invariant for the family data and maps the
/// primitive vector to Q^nu. For cohomology the image is projected.
bool verify_generation(std::size_t n, std::size_t r, long long m, const Exponents& nu, const Exponents& primitive,
                       bool cohomology);

struct CohomologyClassSpace {
  std::size_t n = 0, r = 0;
  long long m = 0;
  std::vector<Exponents> basis;
};

/// Requires 2 <= r <= n.
CohomologyClassSpace cohomology_space(std::size_t n, std::size_t r, long long m);

/// Deletes monomials with some exponent nu_i >= 0, i <= r.
LaurentPoly project_cohomology(const LaurentPoly& f, std::size_t r);

enum class Generator { E, F, H };
/// Applies e_i, f_i or h_i and projects.
LaurentPoly act_on_cohomology(const ChevalleyImages& ci, Generator which, std::size_t i, const LaurentPoly& cls);
/// diag(x) acting as -sum_{i<=r} x_i Q_i P_i + sum_{i>r} x_i Q_i P_i - sum_{i<=r} x_i.
WeylElement cartan_operator(std::size_t n, std::size_t r, const std::vector<long long>& x);

/// Weyl dimension formula; throws for non-dominant weights.
Integer weyl_dim(std::size_t n, const Weight& lambda);

Integer binomial(long long n, long long k);

struct GradedPiece {
  int degree = 0;
  Integer direct;
  Integer decomposition;
};

struct CechProfile {
  std::size_t n = 0, r = 0;
  long long m = 0;
  int degree_bound = 0;
  std::vector<GradedPiece> h0;  // graded by total degree of nu
  Integer top_direct;
  Integer top_decomposition;
  bool agrees() const;
};

CechProfile cech_dimension_profile(std::size_t n, std::size_t r, long long m, int degree_bound);

struct TransportReport {
  std::size_t n = 0, r = 0, target_r = 0;
  bool found = false;
  std::vector<std::size_t> numbering;  // ray i -> ray numbering[i]
  std::vector<IntVector> matrix;       // rows of the lattice automorphism
  bool relations_match = false;        // K maps to +-K'
  std::string detail;
};

/// Searches for a fan isomorphism from the C_i, i > r, resolution to the
/// C_i, i <= target, resolution. The target defaults to n + 1 - r.
TransportReport chevalley_transport_check(std::size_t n, std::size_t r, std::optional<std::size_t> target = {});
/// Same search between two arbitrary fans of equal rank and ray count.
TransportReport fan_isomorphism(const Fan& a, const Fan& b);

/// Fourier images of the projective-space generators against the blow-up
/// operators, and the dictionaries against affine operators on sections.
RelationReport blowup_generator_correspondence(std::size_t n, long long m);

nlohmann::json to_json(const RelationReport& r);
nlohmann::json to_json(const CechProfile& p);
nlohmann::json to_json(const TransportReport& t);

}  // namespace toricdiff
