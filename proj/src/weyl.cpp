#include "toricdiff/weyl.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toricdiff {

namespace {

constexpr unsigned kStirlingTable = 96;

struct StirlingTables {
  std::vector<std::vector<Integer>> first;
  std::vector<std::vector<Integer>> second;

  StirlingTables() : first(kStirlingTable), second(kStirlingTable) {
    for (unsigned n = 0; n < kStirlingTable; ++n) {
      first[n].assign(n + 1, Integer(0));
      second[n].assign(n + 1, Integer(0));
    }
    first[0][0] = 1;
    second[0][0] = 1;
    for (unsigned n = 1; n < kStirlingTable; ++n)
      for (unsigned k = 1; k <= n; ++k) {
        // x^(n falling) = x^(n-1 falling) * (x - (n-1))
        first[n][k] = (k <= n - 1 ? first[n - 1][k] * -Integer(n - 1) : Integer(0)) + first[n - 1][k - 1];
        second[n][k] = (k <= n - 1 ? Integer(k) * second[n - 1][k] : Integer(0)) + second[n - 1][k - 1];
      }
  }
};

const StirlingTables& stirling() {
  static const StirlingTables tables;
  return tables;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

void check_same_vars(const WeylElement& a, const WeylElement& b) {
  if (a.vars() != b.vars()) throw Error("Weyl algebra: variable count mismatch");
}

// Per-variable factor of a tensor product: Q^q P^p with an integer weight.
struct Factor {
  int q;
  int p;
  Integer c;
};

// Accumulates c * prod_i (sum over factors[i]) into out.
void accumulate_tensor(const std::vector<std::vector<Factor>>& factors, const Rational& c,
                       WeylElement::Terms& out) {
  const std::size_t d = factors.size();
  for (const auto& f : factors)
    if (f.empty()) return;
  std::vector<std::size_t> idx(d, 0);
  WeylMonomial m{Exponents(d), Exponents(d)};
  for (;;) {
    Rational coeff = c;
    for (std::size_t i = 0; i < d; ++i) {
      const Factor& f = factors[i][idx[i]];
      m.q[i] = f.q;
      m.p[i] = f.p;
      coeff *= f.c;
    }
    if (coeff != 0) {
      auto [it, inserted] = out.try_emplace(m, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second == 0) out.erase(it);
      }
    }
    std::size_t k = 0;
    while (k < d && ++idx[k] == factors[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
}

// P^b Q^c = sum_k C(b,k) C(c,k) k! Q^{c-k} P^{b-k}, with an outer Q^a, P^e.
std::vector<Factor> reorder(int a, int b, int c, int e, const Integer& sign = Integer(1)) {
  std::vector<Factor> out;
  const int top = std::min(b, c);
  for (int k = 0; k <= top; ++k) {
    Integer w = binomial(static_cast<unsigned>(b), static_cast<unsigned>(k)) *
                binomial(static_cast<unsigned>(c), static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k));
    out.push_back({a + c - k, b + e - k, sign * w});
  }
  return out;
}

}  // namespace

Integer stirling_first(unsigned n, unsigned k) {
  if (n >= kStirlingTable) throw Error("stirling_first: order too large");
  return k > n ? Integer(0) : stirling().first[n][k];
}

Integer stirling_second(unsigned n, unsigned k) {
  if (n >= kStirlingTable) throw Error("stirling_second: order too large");
  return k > n ? Integer(0) : stirling().second[n][k];
}

Integer falling_factorial(const Integer& x, unsigned k) {
  Integer out = 1;
  for (unsigned j = 0; j < k; ++j) out *= x - j;
  return out;
}

int WeylMonomial::degree() const {
  return std::accumulate(q.begin(), q.end(), 0) + std::accumulate(p.begin(), p.end(), 0);
}

TorusWeight WeylMonomial::torus_weight() const {
  TorusWeight w(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) w[i] = q[i] - p[i];
  return w;
}

WeylElement WeylElement::constant(std::size_t vars, const Rational& c) {
  WeylElement e(vars);
  e.add_term({Exponents(vars, 0), Exponents(vars, 0)}, c);
  return e;
}

WeylElement WeylElement::q(std::size_t vars, std::size_t i) {
  if (i >= vars) throw Error("WeylElement::q: index out of range");
  Exponents q(vars, 0);
  q[i] = 1;
  return monomial(q, Exponents(vars, 0));
}

WeylElement WeylElement::p(std::size_t vars, std::size_t i) {
  if (i >= vars) throw Error("WeylElement::p: index out of range");
  Exponents p(vars, 0);
  p[i] = 1;
  return monomial(Exponents(vars, 0), p);
}

WeylElement WeylElement::monomial(const Exponents& q, const Exponents& p, const Rational& c) {
  if (q.size() != p.size()) throw Error("WeylElement::monomial: exponent length mismatch");
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] < 0 || p[i] < 0) throw Error("WeylElement::monomial: negative exponent");
  WeylElement e(q.size());
  e.add_term({q, p}, c);
  return e;
}

int WeylElement::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void WeylElement::add_term(const WeylMonomial& m, const Rational& c) {
  if (m.q.size() != vars_ || m.p.size() != vars_) throw Error("add_term: monomial has the wrong variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  check_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylElement& WeylElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return multiply(a, b); }

void accumulate_monomial_product(const WeylMonomial& a, const WeylMonomial& b, const Rational& c,
                                 WeylElement::Terms& out) {
  const std::size_t d = a.q.size();
  std::vector<std::vector<Factor>> factors(d);
  for (std::size_t i = 0; i < d; ++i) factors[i] = reorder(a.q[i], a.p[i], b.q[i], b.p[i]);
  accumulate_tensor(factors, c, out);
}

WeylElement multiply_serial(const WeylElement& a, const WeylElement& b) {
  check_same_vars(a, b);
  WeylElement out(a.vars());
  WeylElement::Terms acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) accumulate_monomial_product(ma, mb, ca * cb, acc);
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

WeylElement multiply_parallel(const WeylElement& a, const WeylElement& b) {
  check_same_vars(a, b);
#ifdef _OPENMP
  std::vector<const WeylElement::Terms::value_type*> lhs;
  lhs.reserve(a.size());
  for (const auto& t : a.terms()) lhs.push_back(&t);
  const int threads = omp_get_max_threads();
  std::vector<WeylElement::Terms> partial(static_cast<std::size_t>(threads));
  const long count = static_cast<long>(lhs.size());
#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i)
      for (const auto& [mb, cb] : b.terms())
        accumulate_monomial_product(lhs[static_cast<std::size_t>(i)]->first, mb,
                                    lhs[static_cast<std::size_t>(i)]->second * cb, local);
  }
  WeylElement out(a.vars());
  for (const auto& part : partial)
    for (const auto& [m, c] : part) out.add_term(m, c);
  return out;
#else
  return multiply_serial(a, b);
#endif
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  constexpr std::size_t kParallelThreshold = 4096;
#ifdef _OPENMP
  if (a.size() * b.size() >= kParallelThreshold && !omp_in_parallel() && omp_get_max_threads() > 1)
    return multiply_parallel(a, b);
#endif
  return multiply_serial(a, b);
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return multiply(a, b) - multiply(b, a); }

WeylElement power(const WeylElement& a, unsigned k) {
  WeylElement out = WeylElement::constant(a.vars(), 1);
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

// ---------------------------------------------------------------------------

LaurentPoly LaurentPoly::monomial(const Exponents& nu, const Rational& c) {
  LaurentPoly f(nu.size());
  f.add_term(nu, c);
  return f;
}

void LaurentPoly::add_term(const Exponents& nu, const Rational& c) {
  if (nu.size() != vars_) throw Error("LaurentPoly: exponent has the wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(nu, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly apply(const WeylElement& a, const LaurentPoly& f) {
  if (a.vars() != f.vars()) throw Error("apply: variable count mismatch");
  LaurentPoly out(f.vars());
  Exponents target(f.vars());
  for (const auto& [m, c] : a.terms())
    for (const auto& [nu, fc] : f.terms()) {
      Rational coeff = c * fc;
      for (std::size_t i = 0; i < nu.size() && coeff != 0; ++i) {
        coeff *= falling_factorial(Integer(nu[i]), static_cast<unsigned>(m.p[i]));
        target[i] = nu[i] - m.p[i] + m.q[i];
      }
      if (coeff != 0) out.add_term(target, coeff);
    }
  return out;
}

namespace {

WeylElement transform(const std::vector<std::size_t>& I, const WeylElement& a, bool inverse) {
  const std::size_t d = a.vars();
  std::vector<bool> in_set(d, false);
  for (std::size_t i : I) {
    if (i >= d) throw Error("fourier: index out of range");
    in_set[i] = true;
  }
  WeylElement::Terms acc;
  std::vector<std::vector<Factor>> factors(d);
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t i = 0; i < d; ++i) {
      const int lam = m.q[i], mu = m.p[i];
      if (!in_set[i]) {
        factors[i] = {{lam, mu, Integer(1)}};
      } else {
        // forward: P^lam (-Q)^mu ; inverse: (-P)^lam Q^mu
        const int odd = inverse ? lam : mu;
        factors[i] = reorder(0, lam, mu, 0, odd % 2 ? Integer(-1) : Integer(1));
      }
    }
    accumulate_tensor(factors, c, acc);
  }
  WeylElement out(d);
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

}  // namespace

WeylElement fourier(const std::vector<std::size_t>& I, const WeylElement& a) { return transform(I, a, false); }

WeylElement fourier_inverse(const std::vector<std::size_t>& I, const WeylElement& a) {
  return transform(I, a, true);
}

std::map<TorusWeight, WeylElement> torus_weight_decompose(const WeylElement& a) {
  std::map<TorusWeight, WeylElement> out;
  for (const auto& [m, c] : a.terms()) {
    auto [it, inserted] = out.try_emplace(m.torus_weight(), a.vars());
    it->second.add_term(m, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theta forms

void add_to(ThetaPoly& p, const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

ThetaPoly theta_product(const ThetaPoly& a, const ThetaPoly& b) {
  ThetaPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_to(out, e, ca * cb);
    }
  return out;
}

ThetaForm to_theta_form(const WeylElement& a) {
  const std::size_t d = a.vars();
  ThetaForm t;
  t.vars = d;
  for (const auto& [m, c] : a.terms()) {
    ThetaPoly& target = t.components[m.torus_weight()];
    // prod_i theta_i (theta_i - 1) ... (theta_i - c_i + 1), c_i = min(q_i, p_i)
    std::vector<std::vector<std::pair<int, Integer>>> factors(d);
    for (std::size_t i = 0; i < d; ++i) {
      const unsigned k = static_cast<unsigned>(std::min(m.q[i], m.p[i]));
      for (unsigned j = 0; j <= k; ++j) {
        Integer s = stirling_first(k, j);
        if (s != 0) factors[i].push_back({static_cast<int>(j), s});
      }
    }
    std::vector<std::size_t> idx(d, 0);
    Exponents e(d);
    for (;;) {
      Rational coeff = c;
      for (std::size_t i = 0; i < d; ++i) {
        e[i] = factors[i][idx[i]].first;
        coeff *= factors[i][idx[i]].second;
      }
      add_to(target, e, coeff);
      std::size_t k = 0;
      while (k < d && ++idx[k] == factors[k].size()) idx[k++] = 0;
      if (k == d) break;
    }
  }
  for (auto it = t.components.begin(); it != t.components.end();)
    it = it->second.empty() ? t.components.erase(it) : std::next(it);
  return t;
}

WeylElement from_theta_form(const ThetaForm& t) {
  const std::size_t d = t.vars;
  WeylElement::Terms acc;
  std::vector<std::vector<Factor>> factors(d);
  for (const auto& [tau, poly] : t.components) {
    if (tau.size() != d) throw Error("from_theta_form: weight has the wrong length");
    for (const auto& [alpha, c] : poly) {
      for (std::size_t i = 0; i < d; ++i) {
        const int plus = std::max(tau[i], 0);
        const int minus = std::max(-tau[i], 0);
        factors[i].clear();
        // theta^a = sum_j S(a, j) Q^j P^j
        for (int j = 0; j <= alpha[i]; ++j) {
          Integer s = stirling_second(static_cast<unsigned>(alpha[i]), static_cast<unsigned>(j));
          if (s != 0) factors[i].push_back({plus + j, minus + j, s});
        }
      }
      accumulate_tensor(factors, c, acc);
    }
  }
  WeylElement out(d);
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

WeylElement euler_operator(std::size_t vars, const std::vector<std::size_t>& subset) {
  WeylElement e(vars);
  for (std::size_t i : subset) e += WeylElement::q(vars, i) * WeylElement::p(vars, i);
  return e;
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(const Rational& c) { return c.get_str(); }

namespace {

std::string power_text(const char* symbol, std::size_t index, int exponent) {
  std::string s = symbol + std::to_string(index + 1);
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

template <class Terms, class Render>
std::string render_sum(const Terms& terms, Render render_monomial) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const std::string mono = render_monomial(m);
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (mono.empty()) out += mag.get_str();
    else if (mag == 1) out += mono;
    else out += mag.get_str() + "*" + mono;
  }
  return out;
}

}  // namespace

std::string to_string(const WeylElement& a) {
  return render_sum(a.terms(), [](const WeylMonomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.q.size(); ++i)
      if (m.q[i]) s += (s.empty() ? "" : "*") + power_text("Q", i, m.q[i]);
    for (std::size_t i = 0; i < m.p.size(); ++i)
      if (m.p[i]) s += (s.empty() ? "" : "*") + power_text("P", i, m.p[i]);
    return s;
  });
}

std::string to_string(const LaurentPoly& f) {
  return render_sum(f.terms(), [](const Exponents& nu) {
    std::string s;
    for (std::size_t i = 0; i < nu.size(); ++i)
      if (nu[i]) s += (s.empty() ? "" : "*") + power_text("Q", i, nu[i]);
    return s;
  });
}

std::string to_string(const ThetaPoly& p) {
  return render_sum(p, [](const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) s += (s.empty() ? "" : "*") + power_text("t", i, e[i]);
    return s;
  });
}

std::string to_string(const ThetaForm& t) {
  if (t.components.empty()) return "0";
  std::string out;
  for (const auto& [tau, poly] : t.components) {
    if (!out.empty()) out += " ; ";
    out += "[";
    for (std::size_t i = 0; i < tau.size(); ++i) out += (i ? "," : "") + std::to_string(tau[i]);
    out += "] " + to_string(poly);
  }
  return out;
}

}  // namespace toricdiff
