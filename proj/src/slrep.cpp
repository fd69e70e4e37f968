#include "toricdiff/slrep.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toricdiff {

// ---------------------------------------------------------------------------
// Weights

Weight Weight::canonical() const {
  Weight w = *this;
  if (w.coords.empty()) return w;
  const long long last = w.coords.back();
  for (auto& c : w.coords) c -= last;
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw Error("weight sum: length mismatch");
  Weight w = a;
  for (std::size_t i = 0; i < w.size(); ++i) w.coords[i] += b.coords[i];
  return w;
}

Weight operator-(const Weight& a, const Weight& b) { return a + (-1) * b; }

Weight operator*(long long k, const Weight& a) {
  Weight w = a;
  for (auto& c : w.coords) c *= k;
  return w;
}

bool operator==(const Weight& a, const Weight& b) { return a.canonical().coords == b.canonical().coords; }

Weight epsilon(std::size_t n, std::size_t i) {
  if (i < 1 || i > n + 1) throw Error("epsilon: index out of range");
  Weight w{std::vector<long long>(n + 1, 0)};
  w.coords[i - 1] = 1;
  return w;
}

Weight fundamental_weight(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw Error("fundamental_weight: index out of range");
  Weight w{std::vector<long long>(n + 1, 0)};
  for (std::size_t j = 0; j < i; ++j) w.coords[j] = 1;
  return w;
}

Weight rho(std::size_t n) {
  Weight w{std::vector<long long>(n + 1, 0)};
  for (std::size_t j = 0; j <= n; ++j) w.coords[j] = static_cast<long long>(n - j);
  return w;
}

Weight simple_reflection(const Weight& w, std::size_t i) {
  if (i < 1 || i >= w.size()) throw Error("simple_reflection: index out of range");
  Weight out = w;
  std::swap(out.coords[i - 1], out.coords[i]);
  return out;
}

bool is_dominant(const Weight& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w.coords[i] < w.coords[i + 1]) return false;
  return true;
}

std::string to_string(const Weight& w) {
  const Weight c = w.canonical();
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + std::to_string(c.coords[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// The family of fans and divisors

namespace {

void check_family(std::size_t n, std::size_t r) {
  if (n < 2) throw Error("family: n must be at least 2");
  if (r > n + 1) throw Error("family: r must lie in 0..n+1");
}

WeylElement mono(std::size_t d, const std::vector<std::pair<std::size_t, int>>& q,
                 const std::vector<std::pair<std::size_t, int>>& p, const Rational& c = 1) {
  Exponents qe(d, 0), pe(d, 0);
  for (auto [i, e] : q) qe[i] += e;
  for (auto [i, e] : p) pe[i] += e;
  return WeylElement::monomial(qe, pe, c);
}

IndexSet first_indices(std::size_t r) {
  IndexSet I(r);
  std::iota(I.begin(), I.end(), 0);
  return I;
}

Integer factorial(long long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace

Fan family_fan(std::size_t n, std::size_t r) {
  check_family(n, r);
  if (r == 0) return projective_fan(n);
  if (r == 1) return resolution_fan(n, 1, Side::Minus);
  if (r <= n) return resolution_fan(n, r, Side::Plus);
  const Fan p = projective_fan(n);
  return projective_fan_on(reflected_generators(p, first_indices(n + 1)));
}

WeilDivisor family_divisor(std::size_t n, std::size_t r, long long ell) {
  check_family(n, r);
  WeilDivisor a = WeilDivisor::zero(n + 1);
  for (std::size_t i = 0; i < std::min(r, n); ++i) a.coefficients[i] = -1;
  a.coefficients[n] = static_cast<long>(r == n + 1 ? -(ell + 1) : ell);
  return a;
}

long long family_degree(std::size_t r, long long ell) { return ell + static_cast<long long>(r); }

MussonData family_data(std::size_t n, std::size_t r, long long ell) {
  return musson_data(family_fan(n, r), family_divisor(n, r, ell));
}

// ---------------------------------------------------------------------------
// Chevalley generators

ChevalleyImages chevalley_images(std::size_t n, std::size_t r) {
  check_family(n, r);
  const std::size_t d = n + 1;
  const IndexSet I = first_indices(r);
  ChevalleyImages ci;
  ci.n = n;
  ci.r = r;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t a = i - 1, b = i;
    if (i < r) ci.e.push_back(mono(d, {{b, 1}}, {{a, 1}}, -1));
    else if (i == r) ci.e.push_back(mono(d, {}, {{a, 1}, {b, 1}}));
    else ci.e.push_back(mono(d, {{a, 1}}, {{b, 1}}));
    ci.f.push_back(fourier(I, mono(d, {{b, 1}}, {{a, 1}})));
    ci.h.push_back(fourier(I, mono(d, {{a, 1}}, {{a, 1}}) - mono(d, {{b, 1}}, {{b, 1}})));
  }
  return ci;
}

bool RelationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RelationReport check_sl_relations(const ChevalleyImages& ci, const MussonData& md) {
  RelationReport report;
  const std::size_t n = ci.n;
  auto cartan = [](std::size_t i, std::size_t j) -> long long {
    if (i == j) return 2;
    return (i + 1 == j || j + 1 == i) ? -1 : 0;
  };
  auto name = [](const char* x, std::size_t i) { return std::string(x) + std::to_string(i + 1); };

  CheckResult inv{"invariance", true, "", ""};
  for (std::size_t i = 0; i < n && inv.passed; ++i)
    for (const auto* g : {&ci.e[i], &ci.f[i], &ci.h[i]})
      if (!is_invariant(md, *g)) {
        inv.passed = false;
        inv.counterexample = to_string(*g);
        break;
      }
  inv.detail = std::to_string(3 * n) + " generators";
  report.checks.push_back(inv);
  if (!inv.passed) return report;

  auto run = [&](const std::string& label, auto&& relations) {
    CheckResult c{label, true, "", ""};
    std::size_t count = 0;
    relations([&](const std::string& relation, const WeylElement& lhs, const WeylElement& rhs) {
      ++count;
      if (c.passed && !equal_in_quotient(md, lhs, rhs)) {
        c.passed = false;
        c.detail = "first failure: " + relation;
        c.counterexample = to_string(lhs - rhs);
      }
    });
    if (c.passed) c.detail = std::to_string(count) + " relations";
    report.checks.push_back(c);
  };
  const WeylElement zero(md.vars());

  run("[h,h]", [&](auto check) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        check("[" + name("h", i) + "," + name("h", j) + "] = 0", commutator(ci.h[i], ci.h[j]), zero);
  });
  run("[h,e]", [&](auto check) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        check("[" + name("h", i) + "," + name("e", j) + "] = A e", commutator(ci.h[i], ci.e[j]),
              Rational(static_cast<long>(cartan(i, j))) * ci.e[j]);
  });
  run("[h,f]", [&](auto check) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        check("[" + name("h", i) + "," + name("f", j) + "] = -A f", commutator(ci.h[i], ci.f[j]),
              Rational(static_cast<long>(-cartan(i, j))) * ci.f[j]);
  });
  run("[e,f]", [&](auto check) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        check("[" + name("e", i) + "," + name("f", j) + "] = delta h", commutator(ci.e[i], ci.f[j]),
              i == j ? ci.h[i] : zero);
  });
  run("serre", [&](auto check) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cartan(i, j) == -1) {
          check("ad(" + name("e", i) + ")^2 " + name("e", j) + " = 0",
                commutator(ci.e[i], commutator(ci.e[i], ci.e[j])), zero);
          check("ad(" + name("f", i) + ")^2 " + name("f", j) + " = 0",
                commutator(ci.f[i], commutator(ci.f[i], ci.f[j])), zero);
        } else {
          check("[" + name("e", i) + "," + name("e", j) + "] = 0", commutator(ci.e[i], ci.e[j]), zero);
          check("[" + name("f", i) + "," + name("f", j) + "] = 0", commutator(ci.f[i], ci.f[j]), zero);
        }
      }
  });
  return report;
}

// ---------------------------------------------------------------------------
// Sections

namespace {

// Exponent vectors in N^length of total degree t, lexicographic.
void exponents_of_degree(std::size_t length, int t, std::vector<Exponents>& out) {
  Exponents e(length, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == length) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (length == 0) {
    if (t == 0) out.push_back(e);
    return;
  }
  rec(rec, 0, t);
}

long long twisted_degree(const Exponents& nu, std::size_t r) {
  long long s = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) s += i < r ? -nu[i] : nu[i];
  return s;
}

}  // namespace

bool sections_empty(std::size_t n, std::size_t r, long long m) { return (m < 0 && r == 0) || (m > 0 && r == n + 1); }

Weight weight_of(const Exponents& nu, std::size_t r) {
  Weight w{std::vector<long long>(nu.size())};
  for (std::size_t i = 0; i < nu.size(); ++i) w.coords[i] = i < r ? -nu[i] - 1 : nu[i];
  return w;
}

SectionSpace section_basis(std::size_t n, std::size_t r, long long m, int degree_bound) {
  check_family(n, r);
  if (degree_bound < 0) throw Error("section_basis: negative degree bound");
  SectionSpace s;
  s.n = n;
  s.r = r;
  s.m = m;
  s.degree_bound = degree_bound;
  for (int t = 0; t <= degree_bound; ++t) {
    std::vector<Exponents> level;
    exponents_of_degree(n + 1, t, level);
    for (auto& nu : level)
      if (twisted_degree(nu, r) == m) {
        s.weights.push_back(weight_of(nu, r));
        s.basis.push_back(std::move(nu));
      }
  }
  return s;
}

int default_primitive_bound(std::size_t n, long long m) {
  return static_cast<int>(std::llabs(m) + 2 * static_cast<long long>(n + 1));
}

std::vector<Exponents> primitive_sections(std::size_t n, std::size_t r, long long m, int degree_bound) {
  const SectionSpace s = section_basis(n, r, m, degree_bound);
  const ChevalleyImages ci = chevalley_images(n, r);
  std::vector<Exponents> out;
  for (const auto& nu : s.basis) {
    const LaurentPoly v = LaurentPoly::monomial(nu);
    if (std::all_of(ci.e.begin(), ci.e.end(), [&](const WeylElement& e) { return apply(e, v).is_zero(); }))
      out.push_back(nu);
  }
  return out;
}

std::optional<Exponents> expected_primitive(std::size_t n, std::size_t r, long long m) {
  if (sections_empty(n, r, m)) return std::nullopt;
  Exponents nu(n + 1, 0);
  if (m > 0) nu[r] = static_cast<int>(m);
  if (m < 0) nu[r - 1] = static_cast<int>(-m);
  return nu;
}

HighestWeight highest_weight(std::size_t n, std::size_t r, long long ell) {
  check_family(n, r);
  const long long m = family_degree(r, ell);
  if (sections_empty(n, r, m)) throw Error("highest_weight: the section space is zero");
  HighestWeight hw;
  hw.explicit_form.coords.assign(n + 1, 0);
  Weight w = static_cast<long long>(ell) * fundamental_weight(n, 1) + rho(n);
  if (m >= 0) {
    for (std::size_t i = 0; i < std::min(r, n + 1); ++i) hw.explicit_form.coords[i] = -1;
    if (r <= n) hw.explicit_form.coords[r] = m;
    for (std::size_t i = 1; i <= std::min(r, n); ++i) w = simple_reflection(w, i);
  } else {
    for (std::size_t i = 0; i + 1 < r; ++i) hw.explicit_form.coords[i] = -1;
    hw.explicit_form.coords[r - 1] = m - 1;
    for (std::size_t i = 1; i < r; ++i) w = simple_reflection(w, i);
  }
  hw.reflection_form = w - rho(n);
  return hw;
}

// ---------------------------------------------------------------------------
// Generation

WeylElement section_witness(std::size_t n, std::size_t r, long long m, const Exponents& nu) {
  if (nu.size() != n + 1) throw Error("section_witness: exponent has the wrong length");
  Exponents p(n + 1, 0);
  Rational c = 1;
  if (m > 0) {
    p[r] = static_cast<int>(m);
    c = Rational(1) / Rational(factorial(m));
  } else if (m < 0) {
    p[r - 1] = static_cast<int>(-m);
    c = Rational(1) / Rational(factorial(-m));
  }
  return WeylElement::monomial(nu, p, c);
}

namespace {

WeylElement cohomology_operator(std::size_t n, std::size_t r, long long ell, const Exponents& nu, const Rational& c) {
  if (nu.size() != n + 1 || ell < 0) throw Error("cohomology witness: bad arguments");
  Exponents q(n + 1, 0), p(n + 1, 0);
  q[0] = static_cast<int>(ell);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < r) {
      if (nu[i] >= 0) throw Error("cohomology witness: exponent is not negative");
      p[i] = -(nu[i] + 1);
    } else {
      q[i] = nu[i];
    }
  }
  return WeylElement::monomial(q, p, c);
}

}  // namespace

WeylElement cohomology_witness(std::size_t n, std::size_t r, long long ell, const Exponents& nu) {
  long long total = 0;
  Integer denominator = factorial(ell + (-(nu[0] + 1)));
  for (std::size_t i = 0; i < r; ++i) {
    const long long k = -(nu[i] + 1);
    total += k;
    if (i > 0) denominator *= factorial(k);
  }
  Rational c = Rational(factorial(ell)) / Rational(denominator);
  if (total % 2) c = -c;
  return cohomology_operator(n, r, ell, nu, c);
}

WeylElement printed_cohomology_witness(std::size_t n, std::size_t r, long long ell, const Exponents& nu) {
  long long exponent = static_cast<long long>(r);
  Integer denominator = 1;
  for (std::size_t i = 0; i < r; ++i) {
    exponent += nu[i];
    denominator *= factorial(-(nu[i] + 1));
  }
  Rational c = Rational(1) / Rational(denominator);
  if (exponent % 2) c = -c;
  return cohomology_operator(n, r, ell, nu, c);
}

LaurentPoly project_cohomology(const LaurentPoly& f, std::size_t r) {
  return f.filtered([r](const Exponents& nu) {
    for (std::size_t i = 0; i < r; ++i)
      if (nu[i] >= 0) return false;
    return true;
  });
}

bool verify_generation(std::size_t n, std::size_t r, long long m, const Exponents& nu, const Exponents& primitive,
                       bool cohomology) {
  const long long ell = m - static_cast<long long>(r);
  const MussonData md = family_data(n, r, ell);
  const WeylElement w = cohomology ? cohomology_witness(n, r, ell, nu) : section_witness(n, r, m, nu);
  if (!is_invariant(md, w)) throw Error("verify_generation: witness is not invariant: " + to_string(w));
  LaurentPoly image = apply(w, LaurentPoly::monomial(primitive));
  if (cohomology) image = project_cohomology(image, r);
  return image == LaurentPoly::monomial(nu);
}

// ---------------------------------------------------------------------------
// Cohomology

CohomologyClassSpace cohomology_space(std::size_t n, std::size_t r, long long m) {
  if (n < 2 || r < 2 || r > n) throw Error("cohomology_space: need 2 <= r <= n");
  CohomologyClassSpace c;
  c.n = n;
  c.r = r;
  c.m = m;
  // a_i = -nu_i >= 1 for i < r with sum A in [r, m]; the rest sums to m - A.
  for (long long A = static_cast<long long>(r); A <= m; ++A) {
    std::vector<Exponents> negative, positive;
    exponents_of_degree(r, static_cast<int>(A) - static_cast<int>(r), negative);
    exponents_of_degree(n + 1 - r, static_cast<int>(m - A), positive);
    for (const auto& a : negative)
      for (const auto& b : positive) {
        Exponents nu;
        for (int x : a) nu.push_back(-(x + 1));
        nu.insert(nu.end(), b.begin(), b.end());
        c.basis.push_back(nu);
      }
  }
  std::sort(c.basis.begin(), c.basis.end());
  return c;
}

LaurentPoly act_on_cohomology(const ChevalleyImages& ci, Generator which, std::size_t i, const LaurentPoly& cls) {
  if (i < 1 || i > ci.n) throw Error("act_on_cohomology: generator index out of range");
  const auto& g = which == Generator::E ? ci.e : which == Generator::F ? ci.f : ci.h;
  return project_cohomology(apply(g[i - 1], cls), ci.r);
}

WeylElement cartan_operator(std::size_t n, std::size_t r, const std::vector<long long>& x) {
  if (x.size() != n + 1) throw Error("cartan_operator: x has the wrong length");
  const std::size_t d = n + 1;
  WeylElement out(d);
  for (std::size_t i = 0; i < d; ++i) {
    const WeylElement theta = mono(d, {{i, 1}}, {{i, 1}});
    if (i < r) {
      out -= Rational(static_cast<long>(x[i])) * theta;
      out -= WeylElement::constant(d, Rational(static_cast<long>(x[i])));
    } else {
      out += Rational(static_cast<long>(x[i])) * theta;
    }
  }
  return out;
}

Integer binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer weyl_dim(std::size_t n, const Weight& lambda) {
  if (lambda.size() != n + 1) throw Error("weyl_dim: weight has the wrong length");
  if (!is_dominant(lambda)) throw Error("weyl_dim: weight " + to_string(lambda) + " is not dominant");
  Rational d = 1;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      d *= Rational(static_cast<long>(lambda.coords[i] - lambda.coords[j] + static_cast<long long>(j - i)),
                    static_cast<long>(j - i));
  d.canonicalize();
  if (d.get_den() != 1) throw Error("weyl_dim: non-integral result");
  return d.get_num();
}

bool CechProfile::agrees() const {
  return top_direct == top_decomposition &&
         std::all_of(h0.begin(), h0.end(), [](const GradedPiece& g) { return g.direct == g.decomposition; });
}

CechProfile cech_dimension_profile(std::size_t n, std::size_t r, long long m, int degree_bound) {
  if (n < 2 || r < 2 || r > n) throw Error("cech_dimension_profile: need 2 <= r <= n");
  CechProfile p;
  p.n = n;
  p.r = r;
  p.m = m;
  p.degree_bound = degree_bound;
  const SectionSpace s = section_basis(n, r, m, degree_bound);
  const long long rr = static_cast<long long>(r), nn = static_cast<long long>(n);
  for (int t = 0; t <= degree_bound; ++t) {
    GradedPiece g;
    g.degree = t;
    g.direct = static_cast<long>(std::count_if(s.basis.begin(), s.basis.end(), [t](const Exponents& nu) {
      return std::accumulate(nu.begin(), nu.end(), 0) == t;
    }));
    // |lambda| = j, |mu| = j - m, total degree 2j - m.
    g.decomposition = 0;
    if ((t + m) % 2 == 0 && t + m >= 0) {
      const long long j = (t + m) / 2;
      if (j - m >= 0) g.decomposition = binomial(j + nn - rr, nn - rr) * binomial(j - m + rr - 1, rr - 1);
    }
    p.h0.push_back(g);
  }
  p.top_direct = static_cast<long>(cohomology_space(n, r, m).basis.size());
  p.top_decomposition = 0;
  for (long long j = 0; j <= m - rr; ++j)
    p.top_decomposition += binomial(j + nn - rr, nn - rr) * binomial(m - j - 1, rr - 1);
  return p;
}

// ---------------------------------------------------------------------------
// Fan isomorphisms

TransportReport fan_isomorphism(const Fan& a, const Fan& b) {
  TransportReport t;
  const std::size_t n = a.rank, d = a.ray_count();
  if (b.rank != n || b.ray_count() != d || a.cones.size() != b.cones.size()) {
    t.detail = "fans differ in rank, ray count or cone count";
    return t;
  }
  // The first n generators of a must form a lattice basis.
  std::vector<IntVector> basis(a.generators.begin(), a.generators.begin() + static_cast<long>(n));
  const IntMatrix A = IntMatrix::from_columns(basis, n);
  if (abs(determinant(A)) != 1) {
    t.detail = "the first generators of the source do not form a lattice basis";
    return t;
  }
  std::set<Cone> target_cones;
  for (Cone c : b.cones) {
    std::sort(c.begin(), c.end());
    target_cones.insert(c);
  }
  const IntMatrix At = A.transposed();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<IntVector> rows;
    bool ok = true;
    for (std::size_t row = 0; row < n && ok; ++row) {
      IntVector target(n);
      for (std::size_t i = 0; i < n; ++i) target[i] = b.generators[perm[i]][row];
      auto x = solve_integer(At, target);
      if (!x) ok = false;
      else rows.push_back(*x);
    }
    if (!ok) continue;
    const IntMatrix g = IntMatrix::from_rows(rows, n);
    if (abs(determinant(g)) != 1) continue;
    for (std::size_t i = 0; i < d && ok; ++i)
      if (g.apply(a.generators[i]) != b.generators[perm[i]]) ok = false;
    for (const Cone& c : a.cones) {
      if (!ok) break;
      Cone mapped;
      for (std::size_t j : c) mapped.push_back(perm[j]);
      std::sort(mapped.begin(), mapped.end());
      if (!target_cones.count(mapped)) ok = false;
    }
    if (!ok) continue;
    t.found = true;
    t.numbering = perm;
    t.matrix = rows;
    const Sublattice ka = kernel_basis(a.generator_matrix());
    std::vector<IntVector> moved;
    for (const auto& k : ka.basis) {
      IntVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[perm[i]] = k[i];
      moved.push_back(v);
    }
    t.relations_match = make_sublattice(moved, d) == kernel_basis(b.generator_matrix());
    t.detail = "fan isomorphism found";
    return t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  t.detail = "none found among ray bijections";
  return t;
}

TransportReport chevalley_transport_check(std::size_t n, std::size_t r, std::optional<std::size_t> target) {
  if (n < 3 || r < 2 || r + 1 > n) throw Error("chevalley_transport_check: need 2 <= r <= n-1");
  const std::size_t t = target.value_or(n + 1 - r);
  TransportReport report;
  if (t < 1 || t > n) {
    report.n = n;
    report.r = r;
    report.target_r = t;
    report.detail = "none found: target index outside 1..n";
    return report;
  }
  report = fan_isomorphism(resolution_fan(n, r, Side::Minus), resolution_fan(n, t, Side::Plus));
  report.n = n;
  report.r = r;
  report.target_r = t;
  return report;
}

// ---------------------------------------------------------------------------
// Blow-up generators

RelationReport blowup_generator_correspondence(std::size_t n, long long m) {
  if (n < 2) throw Error("blowup_generator_correspondence: n must be at least 2");
  const std::size_t d = n + 1, last = n;
  const long long ell = m - static_cast<long long>(n);
  const Fan bl = blowup_fan(n);
  const IndexSet I = first_indices(n);
  const Fan pn = projective_fan_on(reflected_generators(bl, I));
  const MussonData md_bl = musson_data(bl, WeilDivisor::prime(d, last, m));
  const MussonData md_pn = musson_data(pn, WeilDivisor::prime(d, last, ell));
  RelationReport report;

  CheckResult pre{"witness", true, "", ""};
  ReflectionWitness w{I, first_indices(d), false};
  if (!witness_relates(pn, bl, w)) {
    pre.passed = false;
    pre.detail = "reflection does not relate the fans";
  } else {
    const ClassGroup g = class_group(bl);
    pre.passed = g.class_of(phi_I(pn, bl, w, md_pn.divisor)) == g.class_of(md_bl.divisor);
    pre.detail = pre.passed ? "phi_I(l D) ~ m E" : "divisor classes do not match";
  }
  report.checks.push_back(pre);

  // Homogeneous forms on projective space and on the blow-up.
  const WeylElement e_bl = euler_operator(d, I);
  auto q = [&](std::size_t i) { return WeylElement::q(d, i); };
  auto p = [&](std::size_t i) { return WeylElement::p(d, i); };
  auto c = [&](long long x) { return WeylElement::constant(d, Rational(static_cast<long>(x))); };

  struct Identity {
    std::string name;
    WeylElement source, expected;
  };
  std::vector<Identity> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string si = std::to_string(i + 1);
    ids.push_back({"d" + si, q(last) * p(i), -(q(i) * q(last))});
    ids.push_back({"z" + si + "(e-l)", -(q(i) * p(last)), -(p(i) * p(last))});
    for (std::size_t j = 0; j < n; ++j) {
      const std::string sj = std::to_string(j + 1);
      WeylElement src = q(i) * p(j);
      WeylElement expected = -(q(j) * p(i));
      if (i == j) {
        src -= q(last) * p(last);
        expected -= e_bl + c(m + 1);
      }
      ids.push_back({"z" + si + "d" + sj, src, expected});
    }
  }
  CheckResult images{"fourier images", true, "", ""};
  for (const auto& id : ids) {
    if (!is_invariant(md_pn, id.source) || !is_invariant(md_bl, id.expected) ||
        !equal_in_quotient(md_bl, fourier(I, id.source), id.expected)) {
      images.passed = false;
      images.detail = "first failure: " + id.name;
      images.counterexample = to_string(fourier(I, id.source)) + " vs " + to_string(id.expected);
      break;
    }
  }
  if (images.passed) images.detail = std::to_string(ids.size()) + " identities";
  report.checks.push_back(images);

  // Affine operators in n variables against their homogeneous forms, on the
  // lifts z^a -> Q^a Q_{n+1}^{l-|a|} (projective space) and
  // z^a -> Q^a Q_{n+1}^{|a|+m} (blow-up).
  auto aq = [&](std::size_t i) { return WeylElement::q(n, i); };
  auto ap = [&](std::size_t i) { return WeylElement::p(n, i); };
  const WeylElement euler = euler_operator(n, first_indices(n));
  auto lift = [&](const LaurentPoly& f, bool projective) {
    LaurentPoly out(d);
    for (const auto& [a, coeff] : f.terms()) {
      Exponents nu = a;
      const int deg = std::accumulate(a.begin(), a.end(), 0);
      nu.push_back(projective ? static_cast<int>(ell) - deg : deg + static_cast<int>(m));
      out.add_term(nu, coeff);
    }
    return out;
  };
  struct Dictionary {
    std::string name;
    WeylElement affine, homogeneous;
    bool projective;
  };
  std::vector<Dictionary> dict;
  const WeylElement shift_pn = euler - WeylElement::constant(n, Rational(static_cast<long>(ell)));
  const WeylElement shift_bl = euler + WeylElement::constant(n, Rational(static_cast<long>(m)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string si = std::to_string(i + 1);
    dict.push_back({"d" + si, ap(i), q(last) * p(i), true});
    dict.push_back({"z" + si + "(e-l)", aq(i) * shift_pn, -(q(i) * p(last)), true});
    dict.push_back({"z" + si, aq(i), q(i) * q(last), false});
    dict.push_back({"d" + si + "(e+m)", ap(i) * shift_bl, p(i) * p(last), false});
    for (std::size_t j = 0; j < n; ++j) {
      const std::string sj = std::to_string(j + 1);
      WeylElement affine = aq(i) * ap(j);
      WeylElement homog = q(i) * p(j);
      if (i == j) {
        affine += shift_pn;
        homog -= q(last) * p(last);
      }
      dict.push_back({"z" + si + "d" + sj + " (projective)", affine, homog, true});
      dict.push_back({"z" + si + "d" + sj + " (blow-up)", aq(i) * ap(j), q(i) * p(j), false});
    }
  }
  dict.push_back({"e", euler, e_bl, false});
  CheckResult dictionary{"dictionary", true, "", ""};
  std::vector<Exponents> box;
  for (int t = 0; t <= 3; ++t) exponents_of_degree(n, t, box);
  std::size_t count = 0;
  for (const auto& entry : dict) {
    for (const auto& a : box) {
      const LaurentPoly za = LaurentPoly::monomial(a);
      ++count;
      if (lift(apply(entry.affine, za), entry.projective) != apply(entry.homogeneous, lift(za, entry.projective))) {
        dictionary.passed = false;
        dictionary.detail = "first failure: " + entry.name + " on " + to_string(za);
        break;
      }
    }
    if (!dictionary.passed) break;
  }
  if (dictionary.passed) dictionary.detail = std::to_string(count) + " evaluations";
  report.checks.push_back(dictionary);
  return report;
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::json to_json(const RelationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"passed", r.passed()}, {"checks", checks}};
}

nlohmann::json to_json(const CechProfile& p) {
  nlohmann::json h0 = nlohmann::json::array();
  for (const auto& g : p.h0)
    h0.push_back({{"degree", g.degree}, {"direct", g.direct.get_str()}, {"decomposition", g.decomposition.get_str()}});
  return {{"n", p.n},
          {"r", p.r},
          {"m", p.m},
          {"grading", "total degree of nu"},
          {"degree_bound", p.degree_bound},
          {"h0", h0},
          {"top_degree", p.r - 1},
          {"top_direct", p.top_direct.get_str()},
          {"top_decomposition", p.top_decomposition.get_str()},
          {"agrees", p.agrees()}};
}

nlohmann::json to_json(const TransportReport& t) {
  nlohmann::json j = {{"n", t.n},         {"r", t.r},
                      {"target_r", t.target_r}, {"found", t.found},
                      {"relations_match", t.relations_match}, {"detail", t.detail}};
  if (t.found) {
    std::vector<std::size_t> numbering = t.numbering;
    for (auto& x : numbering) ++x;
    j["numbering"] = numbering;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.matrix) rows.push_back(to_small_vector(row));
    j["matrix"] = rows;
  }
  return j;
}

}  // namespace toricdiff
