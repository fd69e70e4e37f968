#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <random>

#include "toricdiff/verification.hpp"

using namespace toricdiff;

namespace {

struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("parallel and serial products agree") {
  Threads threads(4);
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = verify::random_element(rng, 4, 6, 80);
    const auto b = verify::random_element(rng, 4, 6, 80);
    const auto serial = multiply_serial(a, b);
    CHECK(multiply_parallel(a, b) == serial);
    CHECK(multiply(a, b) == serial);
  }
  const WeylElement empty(3);
  CHECK(multiply_parallel(empty, WeylElement::q(3, 0)).is_zero());
}

TEST_CASE("parallel and serial invariance sweeps agree") {
  Threads threads(4);
  verify::GridOptions opts;
  opts.ns = {3, 4};
  opts.ell_min = opts.ell_max = 1;
  for (const auto& c : verify::descent_cases(opts)) {
    CAPTURE(verify::case_name(c));
    const MussonData x = musson_data(c.x, c.a), xp = musson_data(c.x_prime, c.a_prime);
    const auto monos = invariant_monomials(x, 4);
    const auto serial = fourier_invariance_sweep(xp, c.witness.reflected, monos, false);
    CHECK(serial == fourier_invariance_sweep(xp, c.witness.reflected, monos, true));
    CHECK(std::all_of(serial.begin(), serial.end(), [](char ok) { return ok != 0; }));
  }
}

TEST_CASE("grid results do not depend on scheduling") {
  Threads threads(4);
  verify::GridOptions opts;
  opts.ns = {2, 3};
  opts.ell_min = -2;
  opts.ell_max = 2;
  opts.degree_bound = 3;
  opts.random_instances = 40;
  opts.parallel = false;
  const auto serial = verify::run_all(opts);
  opts.parallel = true;
  const auto parallel = verify::run_all(opts);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(verify::to_json(serial[i]) == verify::to_json(parallel[i]));
}
