#pragma once

// Regular fans given by generating vectors and maximal cones (index sets),
// the I-reflection relation between fans, and the catalog of fans related
// to projective space.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toricdiff/intlat.hpp"

namespace toricdiff {

/// Sorted, duplicate-free 0-based indices into a fan's generator list.
using Cone = std::vector<std::size_t>;
/// Sorted 0-based index subset of the rays {0, ..., d-1}.
using IndexSet = std::vector<std::size_t>;

struct Fan {
  std::size_t rank = 0;
  std::vector<IntVector> generators;
  /// Maximal cones. Rays that appear in no listed cone are still cones.
  std::vector<Cone> cones;

  std::size_t ray_count() const { return generators.size(); }
  /// rank x d matrix whose columns are the generators.
  IntMatrix generator_matrix() const;
  /// Generators sorted lexicographically, cones remapped and sorted.
  Fan canonical() const;
  /// All cones of the fan of the given size (faces of maximal cones and rays).
  std::vector<Cone> cones_of_size(std::size_t size) const;
};

/// Equality after sorting generators and cones.
bool operator==(const Fan& a, const Fan& b);

/// Empty when the fan is valid; otherwise one message per violation.
std::vector<std::string> validate_fan(const Fan& f);

struct RegularityCertificate {
  bool regular = false;
  /// Invariant factors of each maximal cone's generator matrix.
  std::vector<std::vector<Integer>> cone_factors;
  /// Invariant factors of the full generator matrix.
  std::vector<Integer> lattice_factors;
  std::string reason;
};

RegularityCertificate is_regular(const Fan& f);

bool cone_contains(const std::vector<IntVector>& cone_generators, const IntVector& v);

enum class Side { Plus, Minus };

/// k_i = e_i (i <= n) and k_{n+1} chosen so that the first r generators sum
/// to the remaining ones; r == 0 and r == n+1 both give projective space.
std::vector<IntVector> relation_generators(std::size_t n, std::size_t r);

Fan projective_fan(std::size_t n);
Fan blowup_fan(std::size_t n);
Fan minimal_fan(const std::vector<IntVector>& generators);
Fan zr_fan(std::size_t n, std::size_t r);
/// zr_fan with the (non-simplicial) cone spanned by all generators added.
Fan zr_closure_fan(std::size_t n, std::size_t r);
Fan zr_resolution_fan(std::size_t n, std::size_t r, Side side);
/// Cones C_i (spanned by all k_j, j != i) for i <= r (Plus) or i > r (Minus);
/// 1 <= r <= n. (n, n, Plus) is the blow-up; (n, 1, Minus) its r = 1 form.
Fan resolution_fan(std::size_t n, std::size_t r, Side side);
/// Projective-space fan (all n-subsets) on the given n+1 generators.
Fan projective_fan_on(const std::vector<IntVector>& generators);

/// Negates the generators indexed by I.
std::vector<IntVector> reflected_generators(const Fan& f, const IndexSet& reflected);

struct ReflectionWitness {
  IndexSet reflected;                 // I, in the numbering of the first fan
  std::vector<std::size_t> numbering; // ray i of the first fan <-> ray numbering[i] of the second
  bool lattice_negated = false;       // second fan compared after the automorphism -1 of N

  friend bool operator==(const ReflectionWitness&, const ReflectionWitness&) = default;
};

/// Every witness relating the generator sets, sorted (non-negated first,
/// then by I, then by numbering).
std::vector<ReflectionWitness> reflection_witnesses(const Fan& f1, const Fan& f2);
/// The least witness, if any.
std::optional<ReflectionWitness> is_I_reflection_pair(const Fan& f1, const Fan& f2);

/// True iff every cone of f1 lies in a cone of f2 and the supports agree.
bool refines(const Fan& f1, const Fan& f2);

/// Stable text form: rank, generators, 1-based cones, optional divisor.
std::string write_fan(const Fan& f, const std::optional<IntVector>& divisor = std::nullopt);

struct FanDocument {
  Fan fan;
  std::optional<IntVector> divisor;
};

FanDocument read_fan(const std::string& text);

}  // namespace toricdiff
