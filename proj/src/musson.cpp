#include "toricdiff/musson.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toricdiff {

Integer MussonData::chi(const IntVector& m) const { return dot(divisor.coefficients, m); }

MussonData musson_data(const Fan& f, const WeilDivisor& d) {
  auto cert = is_regular(f);
  if (!cert.regular) throw Error("musson_data: fan is not regular (" + cert.reason + ")");
  if (d.coefficients.size() != f.ray_count()) throw Error("musson_data: divisor has the wrong length");
  MussonData md;
  md.fan = f;
  md.divisor = d;
  md.K = kernel_basis(f.generator_matrix());
  md.Kperp = orthogonal_complement(md.K);

  // Reduced row echelon form with pivots taken from the last column backwards.
  const std::size_t k = md.K.rank(), n = f.ray_count();
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> t(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = md.K.basis[i][j];
    t[i][i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = n; col-- > 0 && row < k;) {
    std::size_t piv = row;
    while (piv < k && a[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(a[row], a[piv]);
    std::swap(t[row], t[piv]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (auto& x : t[row]) x *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      for (std::size_t j = 0; j < k; ++j) t[i][j] -= f * t[row][j];
    }
    md.pivots.push_back(col);
    ++row;
  }
  if (row != k) throw Error("musson_data: kernel basis is not independent");
  md.rows = std::move(a);
  md.transform = std::move(t);
  return md;
}

namespace {

bool weight_allowed(const MussonData& md, const TorusWeight& w) {
  for (const auto& m : md.K.basis) {
    Integer s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += m[i] * w[i];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

bool is_invariant(const MussonData& md, const WeylElement& a) {
  if (a.vars() != md.vars()) return false;
  for (const auto& [m, c] : a.terms())
    if (!weight_allowed(md, m.torus_weight())) return false;
  return true;
}

WeylElement xi(const MussonData& md, const IntVector& m) {
  if (m.size() != md.vars() || !md.K.contains(m)) throw Error("xi: " + to_string(m) + " is not a relation");
  WeylElement out = WeylElement::constant(md.vars(), Rational(-md.chi(m)));
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) out += Rational(m[i]) * (WeylElement::q(md.vars(), i) * WeylElement::p(md.vars(), i));
  return out;
}

namespace {

// Reduces one weight component by substituting the pivot variables.
ThetaPoly reduce_component(const MussonData& md, const TorusWeight& tau, const ThetaPoly& poly) {
  const std::size_t n = md.vars(), k = md.pivots.size();
  if (k == 0) return poly;
  std::vector<Rational> c(k);
  for (std::size_t j = 0; j < k; ++j) {
    Integer shift = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (tau[i] > 0) shift += md.K.basis[j][i] * tau[i];
    c[j] = Rational(md.chi(md.K.basis[j]) - shift);
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : md.pivots) is_pivot[p] = true;

  // theta_{pivot j} = const_j - sum_q rows[j][q] theta_q
  std::vector<ThetaPoly> substitute(k);
  for (std::size_t j = 0; j < k; ++j) {
    Rational constant = 0;
    for (std::size_t l = 0; l < k; ++l) constant += md.transform[j][l] * c[l];
    add_to(substitute[j], Exponents(n, 0), constant);
    for (std::size_t q = 0; q < n; ++q) {
      if (is_pivot[q] || md.rows[j][q] == 0) continue;
      Exponents e(n, 0);
      e[q] = 1;
      add_to(substitute[j], e, -md.rows[j][q]);
    }
  }
  std::vector<std::vector<ThetaPoly>> powers(k);
  auto power_of = [&](std::size_t j, int e) -> const ThetaPoly& {
    auto& cache = powers[j];
    if (cache.empty()) {
      ThetaPoly one;
      add_to(one, Exponents(n, 0), 1);
      cache.push_back(one);
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(theta_product(cache.back(), substitute[j]));
    return cache[static_cast<std::size_t>(e)];
  };

  ThetaPoly out;
  for (const auto& [alpha, coeff] : poly) {
    ThetaPoly term;
    Exponents rest = alpha;
    for (std::size_t p : md.pivots) rest[p] = 0;
    add_to(term, rest, coeff);
    for (std::size_t j = 0; j < k; ++j)
      if (alpha[md.pivots[j]] > 0) term = theta_product(term, power_of(j, alpha[md.pivots[j]]));
    for (const auto& [e, x] : term) add_to(out, e, x);
  }
  return out;
}

}  // namespace

TwistedOperator reduce(const MussonData& md, const WeylElement& a) {
  if (!is_invariant(md, a)) throw Error("reduce: operator is not invariant: " + to_string(a));
  ThetaForm form = to_theta_form(a);
  TwistedOperator out;
  out.reduced.vars = md.vars();
  for (const auto& [tau, poly] : form.components) {
    ThetaPoly r = reduce_component(md, tau, poly);
    if (!r.empty()) out.reduced.components.emplace(tau, std::move(r));
  }
  return out;
}

bool equal_in_quotient(const MussonData& md, const WeylElement& a, const WeylElement& b) {
  return reduce(md, a - b).reduced.components.empty();
}

namespace {

// All exponent vectors of the given length and sum.
void compositions(std::size_t length, int total, std::vector<Exponents>& out) {
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
    if (total == 0) out.push_back(e);
    return;
  }
  rec(rec, 0, total);
}

}  // namespace

std::vector<WeylMonomial> invariant_monomials(const MussonData& md, int degree_bound) {
  if (degree_bound < 0) throw Error("invariant_monomials: negative degree bound");
  const std::size_t d = md.vars();
  std::vector<WeylMonomial> out;
  for (int t = 0; t <= degree_bound; ++t) {
    std::vector<Exponents> all;
    compositions(2 * d, t, all);
    std::vector<WeylMonomial> level;
    for (const auto& e : all) {
      WeylMonomial m{Exponents(e.begin(), e.begin() + static_cast<long>(d)),
                     Exponents(e.begin() + static_cast<long>(d), e.end())};
      if (weight_allowed(md, m.torus_weight())) level.push_back(m);
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

MussonData renumbered(const MussonData& md, const std::vector<std::size_t>& numbering) {
  const std::size_t d = md.vars();
  if (numbering.size() != d) throw Error("renumbered: numbering has the wrong length");
  std::vector<std::size_t> inverse(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (numbering[i] >= d || inverse[numbering[i]] != d) throw Error("renumbered: numbering is not a bijection");
    inverse[numbering[i]] = i;
  }
  Fan f;
  f.rank = md.fan.rank;
  WeilDivisor a = WeilDivisor::zero(d);
  for (std::size_t i = 0; i < d; ++i) {
    f.generators.push_back(md.fan.generators[numbering[i]]);
    a.coefficients[i] = md.divisor.coefficients[numbering[i]];
  }
  for (const Cone& c : md.fan.cones) {
    Cone mapped;
    for (std::size_t j : c) mapped.push_back(inverse[j]);
    std::sort(mapped.begin(), mapped.end());
    f.cones.push_back(mapped);
  }
  return musson_data(f, a);
}

std::vector<char> fourier_invariance_sweep(const MussonData& md_target, const IndexSet& I,
                                           const std::vector<WeylMonomial>& monomials, bool parallel) {
  const long count = static_cast<long>(monomials.size());
  std::vector<char> ok(monomials.size(), 0);
  auto body = [&](long i) {
    const WeylMonomial& g = monomials[static_cast<std::size_t>(i)];
    ok[static_cast<std::size_t>(i)] =
        is_invariant(md_target, fourier(I, WeylElement::monomial(g.q, g.p))) ? 1 : 0;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) body(i);
  } else {
    for (long i = 0; i < count; ++i) body(i);
  }
  return ok;
}

bool DescentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string class_text(const DivisorClass& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.coordinates.size(); ++i) s += (i ? ", " : "") + c.coordinates[i].get_str();
  return s + "]";
}

IntVector sigma(const IndexSet& I, IntVector m) {
  for (std::size_t i : I) m[i] = -m[i];
  return m;
}

}  // namespace

DescentReport verify_fourier_descent(const MussonData& x, const MussonData& x_prime, const ReflectionWitness& w,
                                     int degree_bound) {
  DescentReport report;
  report.degree_bound = degree_bound;
  report.reflected = w.reflected;

  CheckResult pre{"preconditions", true, "", ""};
  if (!witness_relates(x.fan, x_prime.fan, w)) {
    pre.passed = false;
    pre.detail = "the generators are not related by the given reflection";
    report.checks.push_back(pre);
    return report;
  }
  const ClassGroup target_group = class_group(x_prime.fan);
  const DivisorClass expected = target_group.class_of(phi_I(x.fan, x_prime.fan, w, x.divisor));
  const DivisorClass actual = target_group.class_of(x_prime.divisor);
  if (expected != actual) {
    pre.passed = false;
    pre.detail = "divisor class " + class_text(actual) + " differs from phi_I class " + class_text(expected);
    report.checks.push_back(pre);
    return report;
  }
  pre.detail = "divisor class " + class_text(actual);
  report.checks.push_back(pre);

  const MussonData y = renumbered(x_prime, w.numbering);
  const IndexSet& I = w.reflected;

  CheckResult lattice{"relations", true, "", ""};
  std::vector<IntVector> mapped;
  for (const auto& m : x.K.basis) mapped.push_back(sigma(I, m));
  if (make_sublattice(mapped, x.vars()) != y.K) {
    lattice.passed = false;
    lattice.detail = "sigma_I(K) differs from K'";
  } else {
    lattice.detail = "rank " + std::to_string(y.K.rank());
  }
  report.checks.push_back(lattice);

  const std::vector<WeylMonomial> monos = invariant_monomials(x, degree_bound);
  CheckResult inv{"invariance", true, "", ""};
  const std::vector<char> ok = fourier_invariance_sweep(y, I, monos, true);
  const auto bad = std::find(ok.begin(), ok.end(), 0);
  inv.detail = std::to_string(monos.size()) + " monomials";
  if (bad != ok.end()) {
    const WeylMonomial& g = monos[static_cast<std::size_t>(bad - ok.begin())];
    inv.passed = false;
    inv.counterexample = to_string(WeylElement::monomial(g.q, g.p));
  }
  report.checks.push_back(inv);

  CheckResult gens{"xi", true, std::to_string(x.K.rank()) + " relations", ""};
  for (const auto& m : x.K.basis) {
    const WeylElement image = fourier(I, xi(x, m));
    if (!y.K.contains(sigma(I, m)) || image != xi(y, sigma(I, m))) {
      gens.passed = false;
      gens.counterexample = to_string(xi(x, m)) + " -> " + to_string(image);
      break;
    }
  }
  report.checks.push_back(gens);

  // Deterministic sample of pairs for the product and ideal checks.
  std::vector<WeylMonomial> sample;
  const std::size_t stride = std::max<std::size_t>(1, monos.size() / 12);
  for (std::size_t i = 0; i < monos.size(); i += stride) sample.push_back(monos[i]);

  CheckResult prod{"products", true, "", ""};
  std::size_t pairs = 0;
  if (inv.passed) {
    for (std::size_t i = 0; i < sample.size() && prod.passed; ++i)
      for (std::size_t j = 0; j < sample.size() && prod.passed; ++j) {
        const WeylElement a = WeylElement::monomial(sample[i].q, sample[i].p);
        const WeylElement b = WeylElement::monomial(sample[j].q, sample[j].p);
        ++pairs;
        if (!equal_in_quotient(y, fourier(I, a * b), fourier(I, a) * fourier(I, b))) {
          prod.passed = false;
          prod.counterexample = to_string(a) + " * " + to_string(b);
        }
      }
  } else {
    prod.passed = false;
    prod.detail = "skipped: invariance failed";
  }
  if (prod.detail.empty()) prod.detail = std::to_string(pairs) + " pairs";
  report.checks.push_back(prod);

  CheckResult ideal{"ideal", true, "", ""};
  std::size_t tried = 0;
  if (inv.passed) {
    for (const auto& m : x.K.basis)
      for (const auto& g : sample) {
        const WeylElement gen = xi(x, m) * WeylElement::monomial(g.q, g.p);
        ++tried;
        if (!reduce(y, fourier(I, gen)).reduced.components.empty()) {
          ideal.passed = false;
          ideal.counterexample = to_string(gen);
          break;
        }
      }
  } else {
    ideal.passed = false;
    ideal.detail = "skipped: invariance failed";
  }
  if (ideal.detail.empty()) ideal.detail = std::to_string(tried) + " ideal elements";
  report.checks.push_back(ideal);
  return report;
}

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
  if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
  return j;
}

nlohmann::json to_json(const DescentReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  std::vector<long long> I(r.reflected.begin(), r.reflected.end());
  for (auto& i : I) ++i;
  return {{"degree_bound", r.degree_bound}, {"reflected", I}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace toricdiff
