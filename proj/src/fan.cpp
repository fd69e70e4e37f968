#include "toricdiff/fan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cone_lp.hpp"

namespace toricdiff {

namespace {

std::string cone_label(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i] + 1);
  }
  return s + "}";
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector negated(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

std::vector<IntVector> cone_vectors(const Fan& f, const Cone& c) {
  std::vector<IntVector> out;
  for (std::size_t i : c) out.push_back(f.generators[i]);
  return out;
}

void subsets_of_size(const Cone& c, std::size_t size, std::set<Cone>& out) {
  if (size > c.size()) return;
  std::vector<bool> pick(c.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
  do {
    Cone s;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (pick[i]) s.push_back(c[i]);
    out.insert(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::vector<Cone> cones_with_rays(const Fan& f) {
  std::vector<Cone> out = f.cones;
  std::vector<bool> covered(f.ray_count(), false);
  for (const auto& c : f.cones)
    for (std::size_t i : c) covered[i] = true;
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (!covered[i]) out.push_back({i});
  return out;
}

// cone(A) and cone(B) (both simplicial) meet in more than cone(A n B).
bool improper_intersection(const Fan& f, const Cone& a, const Cone& b) {
  Cone common, only_a, only_b;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.empty() && only_b.empty()) return false;

  // Unknowns: alpha (only_a), beta (only_b), gamma+ and gamma- (common).
  const std::size_t cols = only_a.size() + only_b.size() + 2 * common.size();
  std::vector<detail::RationalRow> rows(f.rank + 1, detail::RationalRow(cols, mpq_class(0)));
  detail::RationalRow rhs(f.rank + 1, mpq_class(0));
  std::size_t col = 0;
  for (std::size_t i : only_a) {
    for (std::size_t r = 0; r < f.rank; ++r) rows[r][col] = f.generators[i][r];
    rows[f.rank][col] = 1;
    ++col;
  }
  for (std::size_t i : only_b) {
    for (std::size_t r = 0; r < f.rank; ++r) rows[r][col] = -f.generators[i][r];
    rows[f.rank][col] = 1;
    ++col;
  }
  for (std::size_t i : common) {
    for (std::size_t r = 0; r < f.rank; ++r) {
      rows[r][col] = f.generators[i][r];
      rows[r][col + 1] = -f.generators[i][r];
    }
    col += 2;
  }
  rhs[f.rank] = 1;
  return detail::nonnegative_solution_exists(rows, rhs);
}

}  // namespace

IntMatrix Fan::generator_matrix() const { return IntMatrix::from_columns(generators, rank); }

Fan Fan::canonical() const {
  std::vector<std::size_t> order(generators.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return generators[a] < generators[b]; });
  std::vector<std::size_t> new_index(generators.size());
  Fan out;
  out.rank = rank;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = k;
    out.generators.push_back(generators[order[k]]);
  }
  std::set<Cone> cones_set;
  for (const auto& c : cones) {
    Cone m;
    for (std::size_t i : c) m.push_back(new_index.at(i));
    std::sort(m.begin(), m.end());
    cones_set.insert(m);
  }
  out.cones.assign(cones_set.begin(), cones_set.end());
  return out;
}

std::vector<Cone> Fan::cones_of_size(std::size_t size) const {
  std::set<Cone> out;
  for (const auto& c : cones_with_rays(*this)) subsets_of_size(c, size, out);
  return {out.begin(), out.end()};
}

bool operator==(const Fan& a, const Fan& b) {
  const Fan ca = a.canonical();
  const Fan cb = b.canonical();
  return ca.rank == cb.rank && ca.generators == cb.generators && ca.cones == cb.cones;
}

std::vector<std::string> validate_fan(const Fan& f) {
  std::vector<std::string> issues;
  if (f.rank == 0) issues.push_back("rank must be positive");
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    const auto& g = f.generators[i];
    if (g.size() != f.rank)
      issues.push_back("generator " + std::to_string(i + 1) + " has length " + std::to_string(g.size()));
    else if (is_zero(g))
      issues.push_back("generator " + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (f.generators[j] == g)
        issues.push_back("generators " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " repeat");
  }
  if (!issues.empty()) return issues;

  std::vector<bool> simplicial(f.cones.size(), false);
  for (std::size_t c = 0; c < f.cones.size(); ++c) {
    const Cone& cone = f.cones[c];
    bool ok = !cone.empty();
    if (!ok) issues.push_back("cone " + std::to_string(c + 1) + " is empty");
    for (std::size_t k = 0; k < cone.size(); ++k) {
      if (cone[k] >= f.ray_count()) {
        issues.push_back("cone " + cone_label(cone) + " references a missing ray");
        ok = false;
      } else if (k > 0 && cone[k - 1] >= cone[k]) {
        issues.push_back("cone " + cone_label(cone) + " is not sorted and duplicate-free");
        ok = false;
      }
    }
    if (!ok) continue;
    IntMatrix m = IntMatrix::from_columns(cone_vectors(f, cone), f.rank);
    if (rank(m) != cone.size()) {
      issues.push_back("cone " + cone_label(cone) + " has linearly dependent generators");
      continue;
    }
    simplicial[c] = true;
  }
  for (std::size_t a = 0; a < f.cones.size(); ++a)
    for (std::size_t b = a + 1; b < f.cones.size(); ++b) {
      if (!simplicial[a] || !simplicial[b]) continue;
      if (improper_intersection(f, f.cones[a], f.cones[b]))
        issues.push_back("cones " + cone_label(f.cones[a]) + " and " + cone_label(f.cones[b]) +
                         " do not meet in a common face");
    }
  return issues;
}

RegularityCertificate is_regular(const Fan& f) {
  RegularityCertificate cert;
  if (auto issues = validate_fan(f); !issues.empty()) {
    cert.reason = "invalid fan: " + issues.front();
    return cert;
  }
  cert.regular = true;
  for (const auto& c : cones_with_rays(f)) {
    IntMatrix m = IntMatrix::from_columns(cone_vectors(f, c), f.rank);
    auto factors = smith_normal_form(m).invariant_factors();
    const bool unimodular =
        factors.size() == c.size() && std::all_of(factors.begin(), factors.end(), [](const Integer& x) { return x == 1; });
    if (!unimodular && cert.regular) {
      cert.regular = false;
      cert.reason = "cone " + cone_label(c) + " is not part of a lattice basis";
    }
    cert.cone_factors.push_back(std::move(factors));
  }
  cert.lattice_factors = smith_normal_form(f.generator_matrix()).invariant_factors();
  const bool spans = cert.lattice_factors.size() == f.rank &&
                     std::all_of(cert.lattice_factors.begin(), cert.lattice_factors.end(),
                                 [](const Integer& x) { return x == 1; });
  if (!spans && cert.regular) {
    cert.regular = false;
    cert.reason = "generators do not span the lattice over Z";
  }
  return cert;
}

bool cone_contains(const std::vector<IntVector>& cone_generators, const IntVector& v) {
  const std::size_t n = v.size();
  if (cone_generators.empty()) return is_zero(v);
  std::vector<detail::RationalRow> rows(n, detail::RationalRow(cone_generators.size()));
  detail::RationalRow rhs(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cone_generators.size(); ++c) rows[r][c] = cone_generators[c][r];
    rhs[r] = v[r];
  }
  return detail::nonnegative_solution_exists(rows, rhs);
}

// ---------------------------------------------------------------------------
// Catalog

std::vector<IntVector> relation_generators(std::size_t n, std::size_t r) {
  if (n < 1) throw Error("relation_generators: n must be positive");
  if (r > n + 1) throw Error("relation_generators: r must lie in 0..n+1");
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(e);
  }
  IntVector last(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) last[i] = (i < r && r <= n) ? 1 : -1;
  gens.push_back(last);
  return gens;
}

Fan projective_fan_on(const std::vector<IntVector>& generators) {
  if (generators.empty()) throw Error("projective_fan_on: no generators");
  Fan f;
  f.rank = generators.front().size();
  if (generators.size() != f.rank + 1) throw Error("projective_fan_on: need rank+1 generators");
  f.generators = generators;
  for (std::size_t skip = f.rank + 1; skip-- > 0;) {
    Cone c;
    for (std::size_t i = 0; i <= f.rank; ++i)
      if (i != skip) c.push_back(i);
    f.cones.push_back(c);
  }
  return f;
}

Fan projective_fan(std::size_t n) {
  if (n < 1) throw Error("projective_fan: n must be at least 1");
  return projective_fan_on(relation_generators(n, 0));
}

Fan resolution_fan(std::size_t n, std::size_t r, Side side) {
  if (n < 2) throw Error("resolution_fan: n must be at least 2");
  if (r < 1 || r > n) throw Error("resolution_fan: r must lie in 1..n");
  Fan f;
  f.rank = n;
  f.generators = relation_generators(n, r);
  for (std::size_t i = 0; i <= n; ++i) {
    const bool in_i = i < r;
    if (in_i != (side == Side::Plus)) continue;
    Cone c;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != i) c.push_back(j);
    f.cones.push_back(c);
  }
  return f;
}

Fan blowup_fan(std::size_t n) {
  if (n < 2) throw Error("blowup_fan: n must be at least 2");
  return resolution_fan(n, n, Side::Plus);
}

Fan minimal_fan(const std::vector<IntVector>& generators) {
  if (generators.empty()) throw Error("minimal_fan: no generators");
  Fan f;
  f.rank = generators.front().size();
  f.generators = generators;
  for (std::size_t i = 0; i < generators.size(); ++i) f.cones.push_back({i});
  if (rank(f.generator_matrix()) != f.rank) throw Error("minimal_fan: generators do not span");
  return f;
}

Fan zr_fan(std::size_t n, std::size_t r) {
  if (n < 3 || r < 2 || r + 1 > n) throw Error("zr_fan: need 2 <= r <= n-1");
  Fan f;
  f.rank = n;
  f.generators = relation_generators(n, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = r; j <= n; ++j) {
      Cone c;
      for (std::size_t k = 0; k <= n; ++k)
        if (k != i && k != j) c.push_back(k);
      f.cones.push_back(c);
    }
  return f;
}

Fan zr_closure_fan(std::size_t n, std::size_t r) {
  Fan f = zr_fan(n, r);
  Cone all(n + 1);
  std::iota(all.begin(), all.end(), 0);
  f.cones.push_back(all);
  return f;
}

Fan zr_resolution_fan(std::size_t n, std::size_t r, Side side) {
  if (n < 3 || r < 2 || r + 1 > n) throw Error("zr_resolution_fan: need 2 <= r <= n-1");
  return resolution_fan(n, r, side);
}

std::vector<IntVector> reflected_generators(const Fan& f, const IndexSet& reflected) {
  std::vector<IntVector> out = f.generators;
  for (std::size_t i : reflected) {
    if (i >= out.size()) throw Error("reflected_generators: index out of range");
    out[i] = negated(out[i]);
  }
  return out;
}

std::vector<ReflectionWitness> reflection_witnesses(const Fan& f1, const Fan& f2) {
  std::vector<ReflectionWitness> out;
  if (f1.rank != f2.rank || f1.ray_count() != f2.ray_count()) return out;
  const std::size_t d = f1.ray_count();
  for (bool negate : {false, true}) {
    std::vector<IntVector> targets = f2.generators;
    if (negate)
      for (auto& t : targets) t = negated(t);
    // candidates[i] = (j, flipped)
    std::vector<std::vector<std::pair<std::size_t, bool>>> candidates(d);
    for (std::size_t i = 0; i < d; ++i) {
      const IntVector minus = negated(f1.generators[i]);
      for (std::size_t j = 0; j < d; ++j) {
        if (targets[j] == f1.generators[i]) candidates[i].push_back({j, false});
        else if (targets[j] == minus) candidates[i].push_back({j, true});
      }
    }
    std::vector<std::size_t> numbering(d);
    std::vector<bool> flipped(d), used(d, false);
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i == d) {
        ReflectionWitness w;
        for (std::size_t k = 0; k < d; ++k)
          if (flipped[k]) w.reflected.push_back(k);
        w.numbering = numbering;
        w.lattice_negated = negate;
        out.push_back(std::move(w));
        return;
      }
      for (auto [j, flip] : candidates[i]) {
        if (used[j]) continue;
        used[j] = true;
        numbering[i] = j;
        flipped[i] = flip;
        assign(i + 1);
        used[j] = false;
      }
    };
    assign(0);
  }
  std::sort(out.begin(), out.end(), [](const ReflectionWitness& a, const ReflectionWitness& b) {
    return std::tie(a.lattice_negated, a.reflected, a.numbering) <
           std::tie(b.lattice_negated, b.reflected, b.numbering);
  });
  return out;
}

std::optional<ReflectionWitness> is_I_reflection_pair(const Fan& f1, const Fan& f2) {
  auto all = reflection_witnesses(f1, f2);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// ---------------------------------------------------------------------------
// Refinement

namespace {

// A functional vanishing on `face` and not identically zero on span(outer);
// the facet spanned by `face` is on the boundary of cone(outer) iff the
// functional has constant sign on outer.
bool on_boundary(const std::vector<IntVector>& face, const std::vector<IntVector>& outer, std::size_t n) {
  std::vector<IntVector> normals;
  if (face.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, Integer(0));
      e[i] = 1;
      normals.push_back(e);
    }
  } else {
    normals = kernel_basis(IntMatrix::from_rows(face, n)).basis;
  }
  for (const auto& u : normals) {
    bool nonzero = false, pos = false, neg = false;
    for (const auto& g : outer) {
      const Integer s = dot(u, g);
      if (s != 0) nonzero = true;
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (nonzero) return !(pos && neg);
  }
  return true;
}

}  // namespace

bool refines(const Fan& f1, const Fan& f2) {
  if (f1.rank != f2.rank) throw Error("refines: ambient ranks differ");
  const auto f1_cones = cones_with_rays(f1);
  const auto f2_cones = cones_with_rays(f2);

  auto inside = [&](const Cone& c, const Cone& t) {
    const auto outer = cone_vectors(f2, t);
    return std::all_of(c.begin(), c.end(),
                       [&](std::size_t i) { return cone_contains(outer, f1.generators[i]); });
  };

  for (const auto& c : f1_cones)
    if (std::none_of(f2_cones.begin(), f2_cones.end(), [&](const Cone& t) { return inside(c, t); }))
      return false;

  for (const auto& t : f2_cones) {
    const auto outer = cone_vectors(f2, t);
    const std::size_t dim = rank(IntMatrix::from_columns(outer, f2.rank));
    std::vector<Cone> pieces;
    for (const auto& c : f1.cones_of_size(dim)) {
      if (rank(IntMatrix::from_columns(cone_vectors(f1, c), f1.rank)) != dim) continue;
      if (inside(c, t)) pieces.push_back(c);
    }
    if (pieces.empty()) return false;
    for (const auto& c : pieces)
      for (std::size_t drop = 0; drop < c.size(); ++drop) {
        Cone facet = c;
        facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
        if (on_boundary(cone_vectors(f1, facet), outer, f1.rank)) continue;
        const auto shared = std::count_if(pieces.begin(), pieces.end(), [&](const Cone& other) {
          return std::includes(other.begin(), other.end(), facet.begin(), facet.end());
        });
        if (shared < 2) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string vector_text(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + "]";
}

IntVector parse_int_vector(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw Error("field '" + field + "' must be a list of integers");
  IntVector out;
  for (const auto& x : j) {
    if (x.is_number_integer()) out.emplace_back(x.get<long>());
    else if (x.is_string()) out.emplace_back(x.get<std::string>());
    else throw Error("field '" + field + "' must contain integers");
  }
  return out;
}

}  // namespace

std::string write_fan(const Fan& f, const std::optional<IntVector>& divisor) {
  std::ostringstream os;
  os << "{\n  \"rank\": " << f.rank << ",\n  \"generators\": [";
  for (std::size_t i = 0; i < f.generators.size(); ++i) os << (i ? ", " : "") << vector_text(f.generators[i]);
  os << "],\n  \"cones\": [";
  for (std::size_t c = 0; c < f.cones.size(); ++c) {
    os << (c ? ", " : "") << "[";
    for (std::size_t k = 0; k < f.cones[c].size(); ++k) os << (k ? ", " : "") << f.cones[c][k] + 1;
    os << "]";
  }
  os << "]";
  if (divisor) os << ",\n  \"divisor\": " << vector_text(*divisor);
  os << "\n}\n";
  return os.str();
}

FanDocument read_fan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("fan document is not well-formed: ") + e.what());
  }
  if (!j.is_object()) throw Error("fan document must be an object");
  for (const auto& [key, value] : j.items())
    if (key != "rank" && key != "generators" && key != "cones" && key != "divisor")
      throw Error("unknown field '" + key + "'");
  FanDocument doc;
  if (!j.contains("rank") || !j["rank"].is_number_integer() || j["rank"].get<long>() <= 0)
    throw Error("field 'rank' must be a positive integer");
  doc.fan.rank = j["rank"].get<std::size_t>();
  if (!j.contains("generators") || !j["generators"].is_array())
    throw Error("field 'generators' must be a list of integer vectors");
  for (const auto& g : j["generators"]) {
    IntVector v = parse_int_vector(g, "generators");
    if (v.size() != doc.fan.rank) throw Error("field 'generators' has a vector of the wrong length");
    doc.fan.generators.push_back(std::move(v));
  }
  if (!j.contains("cones") || !j["cones"].is_array()) throw Error("field 'cones' must be a list of index lists");
  for (const auto& c : j["cones"]) {
    if (!c.is_array()) throw Error("field 'cones' must be a list of index lists");
    Cone cone;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<long>() < 1 ||
          static_cast<std::size_t>(x.get<long>()) > doc.fan.generators.size())
        throw Error("field 'cones' has an index outside 1..d");
      cone.push_back(x.get<std::size_t>() - 1);
    }
    doc.fan.cones.push_back(std::move(cone));
  }
  if (j.contains("divisor")) {
    IntVector a = parse_int_vector(j["divisor"], "divisor");
    if (a.size() != doc.fan.generators.size()) throw Error("field 'divisor' must have one coefficient per ray");
    doc.divisor = std::move(a);
  }
  return doc;
}

}  // namespace toricdiff
