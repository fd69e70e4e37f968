#include "toricdiff/verification.hpp"

#include <algorithm>
#include <numeric>

namespace toricdiff::verify {

namespace {

constexpr std::size_t kMaxNotes = 5;

struct CellOutcome {
  bool passed = true;
  std::string note;
};

template <class Cell>
CriterionResult run_cells(int id, std::string name, std::size_t count, bool parallel, Cell cell) {
  std::vector<CellOutcome> outcomes(count);
  const long total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < total; ++i) {
    CellOutcome& o = outcomes[static_cast<std::size_t>(i)];
    try {
      o = cell(static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
  }
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.cases = count;
  for (const auto& o : outcomes) {
    if (o.passed) continue;
    ++r.failures;
    if (r.notes.size() < kMaxNotes) r.notes.push_back(o.note);
  }
  r.passed = r.failures == 0 && count > 0;
  return r;
}

IndexSet first_indices(std::size_t r) {
  IndexSet I(r);
  std::iota(I.begin(), I.end(), 0);
  return I;
}

std::vector<long long> ells(const GridOptions& opts) {
  std::vector<long long> out;
  for (long long l = opts.ell_min; l <= opts.ell_max; ++l) out.push_back(l);
  return out;
}

std::string exponents_text(const Exponents& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<DescentCase> descent_cases(const GridOptions& opts) {
  std::vector<DescentCase> out;
  for (std::size_t n : opts.ns) {
    struct Partner {
      std::size_t r;
      std::string label;
      Fan fan;
    };
    std::vector<Partner> partners;
    partners.push_back({0, "projective", projective_fan(n)});
    partners.push_back({1, "blowup-r1", resolution_fan(n, 1, Side::Minus)});
    for (std::size_t r = 2; r + 1 <= n; ++r) {
      partners.push_back({r, "zr-plus", resolution_fan(n, r, Side::Plus)});
      partners.push_back({r, "zr-minus", resolution_fan(n, r, Side::Minus)});
    }
    partners.push_back({n, "blowup", blowup_fan(n)});
    partners.push_back({n + 1, "negated-projective", family_fan(n, n + 1)});
    for (const auto& p : partners)
      for (long long ell : ells(opts)) {
        DescentCase c;
        c.n = n;
        c.r = p.r;
        c.label = p.label;
        c.ell = ell;
        c.x_prime = p.fan;
        c.witness = {first_indices(p.r), first_indices(n + 1), false};
        c.x = p.r == 0 ? p.fan : projective_fan_on(reflected_generators(p.fan, c.witness.reflected));
        c.a = WeilDivisor::prime(n + 1, n, static_cast<long>(ell));
        const long long m = ell + static_cast<long long>(p.r);
        c.a_prime = WeilDivisor::prime(n + 1, n, static_cast<long>(p.r == n + 1 ? -m : m));
        out.push_back(std::move(c));
      }
  }
  return out;
}

std::string case_name(const DescentCase& c) {
  return "n=" + std::to_string(c.n) + " " + c.label + " r=" + std::to_string(c.r) + " l=" + std::to_string(c.ell);
}

CriterionResult fourier_descent(const GridOptions& opts) {
  const auto cases = descent_cases(opts);
  auto r = run_cells(1, "Fourier descent", cases.size(), opts.parallel, [&](std::size_t i) -> CellOutcome {
    const DescentCase& c = cases[i];
    const auto witnesses = reflection_witnesses(c.x, c.x_prime);
    if (std::find(witnesses.begin(), witnesses.end(), c.witness) == witnesses.end())
      return {false, case_name(c) + ": reflection witness not found by search"};
    const DescentReport rep =
        verify_fourier_descent(musson_data(c.x, c.a), musson_data(c.x_prime, c.a_prime), c.witness, opts.degree_bound);
    if (rep.passed()) return {};
    for (const auto& chk : rep.checks)
      if (!chk.passed) return {false, case_name(c) + ": " + chk.name + " " + chk.detail + " " + chk.counterexample};
    return {false, case_name(c)};
  });
  r.detail = std::to_string(cases.size()) + " pairs, degree bound " + std::to_string(opts.degree_bound);
  return r;
}

CriterionResult generator_correspondence(const GridOptions& opts) {
  std::vector<std::pair<std::size_t, long long>> cells;
  for (std::size_t n : opts.ns)
    for (long long ell : ells(opts)) cells.push_back({n, ell + static_cast<long long>(n)});
  auto r = run_cells(2, "Blow-up generator correspondence", cells.size(), opts.parallel,
                     [&](std::size_t i) -> CellOutcome {
                       const auto [n, m] = cells[i];
                       const RelationReport rep = blowup_generator_correspondence(n, m);
                       for (const auto& chk : rep.checks)
                         if (!chk.passed)
                           return {false, "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + chk.name +
                                              " " + chk.detail};
                       return {};
                     });
  r.detail = std::to_string(cells.size()) + " (n, m) cells";
  return r;
}

CriterionResult sl_relations(const GridOptions& opts) {
  const auto cases = descent_cases(opts);
  auto r = run_cells(3, "sl(n+1) relations", cases.size(), opts.parallel, [&](std::size_t i) -> CellOutcome {
    const DescentCase& c = cases[i];
    const RelationReport rep = check_sl_relations(chevalley_images(c.n, c.r), musson_data(c.x_prime, c.a_prime));
    for (const auto& chk : rep.checks)
      if (!chk.passed) return {false, case_name(c) + ": " + chk.name + " " + chk.detail};
    return {};
  });
  r.detail = std::to_string(cases.size()) + " cells";
  return r;
}

CriterionResult highest_weights(const GridOptions& opts) {
  struct Cell {
    std::size_t n, r;
    long long ell;
  };
  std::vector<Cell> cells;
  for (std::size_t n : opts.ns)
    for (std::size_t r = 0; r <= n + 1; ++r)
      for (long long ell : ells(opts)) cells.push_back({n, r, ell});
  auto res = run_cells(4, "Primitive sections and highest weights", cells.size(), opts.parallel,
                       [&](std::size_t i) -> CellOutcome {
                         const auto [n, r, ell] = cells[i];
                         const long long m = family_degree(r, ell);
                         const std::string where = "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                                   " l=" + std::to_string(ell);
                         const int bound = default_primitive_bound(n, m);
                         const auto found = primitive_sections(n, r, m, bound);
                         const auto expected = expected_primitive(n, r, m);
                         if (!expected) {
                           if (!found.empty() || !section_basis(n, r, m, bound).basis.empty())
                             return {false, where + ": expected an empty section space"};
                           return {};
                         }
                         if (found.size() != 1 || found[0] != *expected)
                           return {false, where + ": primitive search found " + std::to_string(found.size()) +
                                              " monomials"};
                         const HighestWeight hw = highest_weight(n, r, ell);
                         const Weight w = weight_of(found[0], r);
                         if (!(w == hw.explicit_form) || !(w == hw.reflection_form))
                           return {false, where + ": weight " + to_string(w) + " vs " + to_string(hw.explicit_form) +
                                              " / " + to_string(hw.reflection_form)};
                         if (r == n) {
                           const Weight t2 = m >= 0 ? -(m + 1) * fundamental_weight(n, n)
                                                    : (m - 1) * fundamental_weight(n, n) -
                                                          m * fundamental_weight(n, n - 1);
                           if (!(w == t2)) return {false, where + ": blow-up weight " + to_string(w)};
                         }
                         const SectionSpace s = section_basis(n, r, m, static_cast<int>(std::llabs(m)) + 3);
                         for (const auto& nu : s.basis)
                           if (!verify_generation(n, r, m, nu, found[0], false))
                             return {false, where + ": generation fails at " + exponents_text(nu)};
                         return {};
                       });
  res.detail = std::to_string(cells.size()) + " (n, r, l) cells";
  return res;
}

CriterionResult cech_profiles(const GridOptions& opts) {
  struct Cell {
    std::size_t n, r;
    long long m;
  };
  std::vector<Cell> cells;
  for (std::size_t n : opts.ns)
    for (std::size_t r = 2; r <= n; ++r)
      for (long long m = 0; m <= static_cast<long long>(r) + 5; ++m) cells.push_back({n, r, m});
  auto res = run_cells(5, "Cech dimension profile", cells.size(), opts.parallel, [&](std::size_t i) -> CellOutcome {
    const auto [n, r, m] = cells[i];
    const std::string where = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " m=" + std::to_string(m);
    const CechProfile p = cech_dimension_profile(n, r, m, opts.cech_degree_bound);
    if (!p.agrees()) return {false, where + ": direct and binomial counts differ"};
    if ((p.top_direct > 0) != (m >= static_cast<long long>(r)))
      return {false, where + ": top cohomology nonzero exactly when m >= r fails"};
    return {};
  });
  res.detail = std::to_string(cells.size()) + " cells, H^0 graded by total degree up to " +
               std::to_string(opts.cech_degree_bound);
  return res;
}

CriterionResult top_cohomology(const GridOptions& opts) {
  struct Cell {
    std::size_t n, r;
    long long ell;
  };
  std::vector<Cell> cells;
  for (std::size_t n : opts.ns)
    for (std::size_t r = 2; r <= n; ++r)
      for (long long ell = 0; ell <= opts.top_ell_max; ++ell) cells.push_back({n, r, ell});
  auto res = run_cells(6, "Top cohomology module", cells.size(), opts.parallel, [&](std::size_t i) -> CellOutcome {
    const auto [n, r, ell] = cells[i];
    const long long m = ell + static_cast<long long>(r);
    const std::string where = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " l=" + std::to_string(ell);
    const CohomologyClassSpace space = cohomology_space(n, r, m);
    const ChevalleyImages ci = chevalley_images(n, r);
    Exponents top(n + 1, 0);
    top[0] = static_cast<int>(-ell - 1);
    for (std::size_t k = 1; k < r; ++k) top[k] = -1;

    std::vector<Exponents> primitives;
    for (const auto& nu : space.basis) {
      const LaurentPoly v = LaurentPoly::monomial(nu);
      bool killed = true;
      for (std::size_t k = 1; k <= n && killed; ++k) killed = act_on_cohomology(ci, Generator::E, k, v).is_zero();
      if (killed) primitives.push_back(nu);
    }
    if (primitives.size() != 1 || primitives[0] != top)
      return {false, where + ": " + std::to_string(primitives.size()) + " primitive classes"};

    const LaurentPoly v = LaurentPoly::monomial(top);
    for (std::size_t k = 1; k <= n; ++k) {
      const LaurentPoly expect = LaurentPoly::monomial(top, Rational(k == 1 ? static_cast<long>(ell) : 0L));
      if (act_on_cohomology(ci, Generator::H, k, v) != expect)
        return {false, where + ": h" + std::to_string(k) + " eigenvalue"};
      std::vector<long long> x(n + 1, 0);
      x[k - 1] = 1;
      x[k] = -1;
      const LaurentPoly diag = project_cohomology(apply(cartan_operator(n, r, x), v), r);
      if (diag != LaurentPoly::monomial(top, Rational(static_cast<long>(ell * x[0]))))
        return {false, where + ": diagonal action eigenvalue"};
    }
    if (!(weight_of(top, r) == static_cast<long long>(ell) * fundamental_weight(n, 1)))
      return {false, where + ": primitive weight"};

    const Integer expected_dim = binomial(static_cast<long long>(n) + ell, static_cast<long long>(n));
    const Integer wd = weyl_dim(n, static_cast<long long>(ell) * fundamental_weight(n, 1));
    if (Integer(static_cast<long>(space.basis.size())) != expected_dim || wd != expected_dim)
      return {false, where + ": dimension " + std::to_string(space.basis.size()) + " vs " + expected_dim.get_str()};
    for (const auto& nu : space.basis)
      if (!verify_generation(n, r, m, nu, top, true))
        return {false, where + ": generation fails at " + exponents_text(nu)};
    return {};
  });
  res.detail = std::to_string(cells.size()) + " (n, r, l) cells";
  return res;
}

// ---------------------------------------------------------------------------
// Randomized property suites

WeylElement random_element(std::mt19937_64& rng, std::size_t vars, int max_degree, int terms) {
  std::uniform_int_distribution<int> numerator(-5, 5), denominator(1, 3), coin(0, 1);
  std::uniform_int_distribution<std::size_t> slot(0, 2 * vars - 1);
  std::uniform_int_distribution<int> degree(0, max_degree);
  WeylElement out(vars);
  for (int t = 0; t < terms; ++t) {
    Exponents q(vars, 0), p(vars, 0);
    const int deg = degree(rng);
    for (int k = 0; k < deg; ++k) {
      const std::size_t s = slot(rng);
      if (s < vars) ++q[s];
      else ++p[s - vars];
    }
    Rational c(numerator(rng), denominator(rng));
    c.canonicalize();
    out.add_term({q, p}, c);
  }
  return out;
}

LaurentPoly random_laurent(std::mt19937_64& rng, std::size_t vars, int spread, int terms) {
  std::uniform_int_distribution<int> exponent(-spread, spread), numerator(-5, 5), denominator(1, 3);
  LaurentPoly out(vars);
  for (int t = 0; t < terms; ++t) {
    Exponents nu(vars);
    for (auto& x : nu) x = exponent(rng);
    Rational c(numerator(rng), denominator(rng));
    c.canonicalize();
    out.add_term(nu, c);
  }
  return out;
}

CriterionResult property_suites(const GridOptions& opts) {
  const std::vector<std::string> names{"associativity", "fourier", "apply", "theta", "phi", "centrality"};
  const std::size_t per = opts.random_instances;
  const auto catalog = descent_cases(GridOptions{{2, 3}, -2, 2});
  auto res = run_cells(7, "Property suites", names.size() * per, opts.parallel, [&](std::size_t cell) -> CellOutcome {
    const std::size_t prop = cell / per, inst = cell % per;
    std::mt19937_64 rng(opts.seed + 1000003ULL * prop + inst);
    const std::string where = names[prop] + " #" + std::to_string(inst);
    std::uniform_int_distribution<std::size_t> vars_dist(1, 3);
    switch (prop) {
      case 0: {
        const std::size_t d = vars_dist(rng);
        const auto a = random_element(rng, d, 3, 3), b = random_element(rng, d, 3, 3), c = random_element(rng, d, 3, 3);
        if ((a * b) * c != a * (b * c)) return {false, where};
        if (a * (b + c) != a * b + a * c) return {false, where + " (distributivity)"};
        return {};
      }
      case 1: {
        const std::size_t d = vars_dist(rng);
        IndexSet I;
        std::bernoulli_distribution pick(0.5);
        for (std::size_t i = 0; i < d; ++i)
          if (pick(rng)) I.push_back(i);
        const auto a = random_element(rng, d, 3, 3), b = random_element(rng, d, 3, 3);
        if (fourier(I, a * b) != fourier(I, a) * fourier(I, b)) return {false, where + " (product)"};
        if (fourier_inverse(I, fourier(I, a)) != a || fourier(I, fourier_inverse(I, a)) != a)
          return {false, where + " (inverse)"};
        WeylElement f4 = a;
        for (int k = 0; k < 4; ++k) f4 = fourier(I, f4);
        if (f4 != a) return {false, where + " (fourth power)"};
        WeylElement f2 = fourier(I, fourier(I, a));
        WeylElement sign(d);
        for (const auto& [m, c] : a.terms()) {
          int deg = 0;
          for (std::size_t i : I) deg += m.q[i] + m.p[i];
          sign.add_term(m, deg % 2 ? Rational(-c) : c);
        }
        if (f2 != sign) return {false, where + " (square is the sign involution)"};
        return {};
      }
      case 2: {
        const std::size_t d = vars_dist(rng);
        const auto a = random_element(rng, d, 3, 3), b = random_element(rng, d, 3, 3);
        const auto f = random_laurent(rng, d, 3, 3);
        if (apply(a * b, f) != apply(a, apply(b, f))) return {false, where};
        return {};
      }
      case 3: {
        const std::size_t d = vars_dist(rng);
        const auto a = random_element(rng, d, 4, 4);
        if (from_theta_form(to_theta_form(a)) != a) return {false, where};
        return {};
      }
      case 4: {
        std::uniform_int_distribution<std::size_t> which(0, catalog.size() - 1);
        std::uniform_int_distribution<int> coeff(-3, 3);
        const DescentCase& c = catalog[which(rng)];
        WeilDivisor a = WeilDivisor::zero(c.x.ray_count());
        for (auto& x : a.coefficients) x = coeff(rng);
        IntVector mu(c.x.rank);
        for (auto& x : mu) x = coeff(rng);
        const WeilDivisor b = a + character_divisor(c.x, mu);
        const ClassGroup g = class_group(c.x_prime);
        if (g.class_of(phi_I(c.x, c.x_prime, c.witness, a)) != g.class_of(phi_I(c.x, c.x_prime, c.witness, b)))
          return {false, where + " on " + case_name(c)};
        return {};
      }
      default: {
        std::uniform_int_distribution<std::size_t> nd(2, 3);
        const std::size_t n = nd(rng);
        std::uniform_int_distribution<std::size_t> rd(0, n + 1);
        std::uniform_int_distribution<long long> ld(-4, 4);
        std::uniform_int_distribution<int> coeff(-2, 2);
        const std::size_t r = rd(rng);
        const MussonData md = family_data(n, r, ld(rng));
        IntVector m(md.vars(), Integer(0));
        for (const auto& k : md.K.basis) {
          const int s = coeff(rng);
          for (std::size_t i = 0; i < m.size(); ++i) m[i] += s * k[i];
        }
        const auto monos = invariant_monomials(md, 3);
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        const WeylMonomial& g = monos[pick(rng)];
        const WeylElement ge = WeylElement::monomial(g.q, g.p);
        const WeylElement x = xi(md, m);
        if (x * ge != ge * x) return {false, where + " " + to_string(ge)};
        return {};
      }
    }
  });
  res.detail = std::to_string(names.size()) + " properties x " + std::to_string(per) + " instances, seed " +
               std::to_string(opts.seed);
  return res;
}

std::vector<CriterionResult> run_all(const GridOptions& opts) {
  return {fourier_descent(opts), generator_correspondence(opts), sl_relations(opts), highest_weights(opts),
          cech_profiles(opts),   top_cohomology(opts),           property_suites(opts)};
}

nlohmann::json to_json(const CriterionResult& c) {
  return {{"id", c.id},           {"name", c.name},     {"passed", c.passed}, {"cases", c.cases},
          {"failures", c.failures}, {"detail", c.detail}, {"notes", c.notes}};
}

std::string summary_line(const CriterionResult& c) {
  std::string s = std::string(c.passed ? "PASS" : "FAIL") + "  [" + std::to_string(c.id) + "] " + c.name + ": " +
                  std::to_string(c.cases - c.failures) + "/" + std::to_string(c.cases) + " (" + c.detail + ")";
  for (const auto& n : c.notes) s += "\n      " + n;
  return s;
}

}  // namespace toricdiff::verify
