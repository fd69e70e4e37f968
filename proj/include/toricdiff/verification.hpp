#pragma once

// Grid runners for the end-to-end checks. Cells run in parallel when
// requested; results are gathered in cell order, so output does not depend
// on scheduling.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricdiff/slrep.hpp"

namespace toricdiff::verify {

struct GridOptions {
  std::vector<std::size_t> ns{2, 3, 4};
  long long ell_min = -4;
  long long ell_max = 4;
  int degree_bound = 4;
  int cech_degree_bound = 8;
  long long top_ell_max = 4;
  std::size_t random_instances = 200;
  std::uint64_t seed = 20240611;
  bool parallel = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;
  std::vector<std::string> notes;  // first few failures
};

/// One projective-space pair of the descent grid.
struct DescentCase {
  std::size_t n = 0, r = 0;
  std::string label;
  long long ell = 0;
  Fan x, x_prime;
  WeilDivisor a, a_prime;
  ReflectionWitness witness;
};

std::vector<DescentCase> descent_cases(const GridOptions& opts);
/// Human-readable name of a descent case, e.g. "n=3 zr-plus r=2 l=-1".
std::string case_name(const DescentCase& c);

CriterionResult fourier_descent(const GridOptions& opts);
CriterionResult generator_correspondence(const GridOptions& opts);
CriterionResult sl_relations(const GridOptions& opts);
CriterionResult highest_weights(const GridOptions& opts);
CriterionResult cech_profiles(const GridOptions& opts);
CriterionResult top_cohomology(const GridOptions& opts);
CriterionResult property_suites(const GridOptions& opts);

std::vector<CriterionResult> run_all(const GridOptions& opts);

nlohmann::json to_json(const CriterionResult& c);
std::string summary_line(const CriterionResult& c);

/// Random element with up to `terms` monomials of degree <= max_degree and
/// coefficients p/q with |p| <= 5, 1 <= q <= 3.
WeylElement random_element(std::mt19937_64& rng, std::size_t vars, int max_degree, int terms);
LaurentPoly random_laurent(std::mt19937_64& rng, std::size_t vars, int spread, int terms);

}  // namespace toricdiff::verify
