#include "plucker/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "plucker/error.hpp"

namespace plucker {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

void witness(Assertion& a, const std::string& w) {
  if (a.witnesses.size() < kMaxWitnesses) a.witnesses.push_back(w);
}

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t u64(const mpz_class& v) {
  if (v < 0 || !v.fits_ulong_p()) throw ResourceError("value " + v.get_str() + " exceeds 64 bits", UINT64_MAX, 0);
  return v.get_ui();
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Calls fn(coeffs) for every scalar-class representative of F_q^k, or for a
// seeded sample when total x cost_each exceeds the exhaustive limit. Returns
// whether the run was exhaustive.
template <class Fn>
bool for_classes(int q, int k, std::uint64_t cost_each, const VerifyOptions& o, Fn&& fn) {
  const std::uint64_t total = class_count(q, k);
  std::vector<gf::Code> c(k);
  if (checked_mul(total, std::max<std::uint64_t>(cost_each, 1)) <= o.exhaustive_limit || total <= o.sample_cap) {
    for (std::uint64_t r = 0; r < total; ++r) {
      decode_class(q, r, c);
      fn(std::span<const gf::Code>(c));
    }
    return true;
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  std::set<std::uint64_t> ranks;
  while (ranks.size() < o.sample_cap) ranks.insert(pick(rng));
  for (auto r : ranks) {
    decode_class(q, r, c);
    fn(std::span<const gf::Code>(c));
  }
  return false;
}

std::string coverage(bool exhaustive, std::uint64_t count) {
  return (exhaustive ? "exhaustive over " : "seeded sample of ") + std::to_string(count);
}

// G(l, V_m) with normalized coordinates, shared by the suites.
struct Grass {
  GrassmannParams params;
  PointTable table;

  explicit Grass(const GrassmannParams& p) : params(p), table(grassmannian_table(p)) {}
  std::size_t n() const { return table.size(); }
  bool zero(const DualFunctional& F, std::size_t j) const { return F.evaluate(table.point(j)) == 0; }
  bool zero(std::span<const gf::Code> c, std::size_t j) const {
    const auto& f = params.f();
    const auto p = table.point(j);
    gf::Code acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i]) acc = f.add(acc, f.mul(c[i], p[i]));
    }
    return acc == 0;
  }
  std::uint64_t zeros(std::span<const gf::Code> c) const {
    std::uint64_t z = 0;
    for (std::size_t j = 0; j < n(); ++j) z += zero(c, j);
    return z;
  }
};

// Hyperplanes V_{m-1} = ker u for u up to scalar, with the points of
// G(l, V_m) inside each.
struct Kernels {
  std::vector<std::vector<gf::Code>> covectors;
  std::vector<std::vector<std::uint32_t>> inside;

  explicit Kernels(const Grass& g) {
    const auto& f = g.params.f();
    const int m = g.params.m;
    const std::uint64_t count = class_count(f.q(), m);
    std::vector<gf::Code> u(m);
    for (std::uint64_t r = 0; r < count; ++r) {
      decode_class(f.q(), r, u);
      covectors.push_back(u);
      std::vector<std::uint32_t> pts;
      for (std::size_t j = 0; j < g.n(); ++j) {
        const auto& M = g.table.points[j];
        bool in = true;
        for (int row = 0; row < M.rows() && in; ++row) {
          gf::Code acc = 0;
          for (int col = 0; col < m; ++col) acc = f.add(acc, f.mul(u[col], M.at(row, col)));
          in = acc == 0;
        }
        if (in) pts.push_back(static_cast<std::uint32_t>(j));
      }
      inside.push_back(std::move(pts));
    }
  }
};

std::string vec_string(std::span<const gf::Code> v, const gf::Field& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += f.format(v[i]);
  }
  return s + ")";
}

void require_grassmann(const CodeSpec& spec, const char* what) {
  if (spec.variant != CodeVariant::grassmann) throw UsageError(std::string(what) + " needs the Grassmann variant");
}

void append(VerifyReport& into, const VerifyReport& from, const std::string& prefix) {
  for (auto a : from.assertions) {
    a.name = prefix + a.name;
    into.assertions.push_back(std::move(a));
  }
}

}  // namespace

// --- report ------------------------------------------------------------------

bool VerifyReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

Assertion& VerifyReport::add(std::string name, bool pass, std::string detail) {
  assertions.push_back({std::move(name), pass, std::move(detail), {}});
  return assertions.back();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["params"] = params;
  j["pass"] = passed();
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    nlohmann::ordered_json x;
    x["name"] = a.name;
    x["pass"] = a.pass;
    x["detail"] = a.detail;
    x["witnesses"] = a.witnesses;
    j["assertions"].push_back(std::move(x));
  }
  return j.dump(2);
}

std::string params_label(const GrassmannParams& params) {
  return "q=" + params.f().spec_string() + " l=" + std::to_string(params.ell) + " m=" + std::to_string(params.m);
}

// --- distribution ------------------------------------------------------------

VerifyReport verify_distribution(const WeightDistribution& dist) {
  const auto& spec = dist.spec;
  const int q = spec.params.q();
  VerifyReport r{"distribution", params_label(spec.params), {}};
  const mpz_class expected_total = ipow(q, static_cast<unsigned long>(spec.k));
  r.add("counts sum to q^k", dist.complete && dist.total() == expected_total,
        "sum " + str(dist.total()) + ", q^k " + str(expected_total));
  const auto zero = dist.counts.find(0);
  r.add("one zero codeword", zero != dist.counts.end() && zero->second == 1);
  auto& div = r.add("nonzero counts divisible by q-1", true);
  const mpz_class d = spec.variant == CodeVariant::grassmann ? min_distance(spec).value
                                                             : schubert_min_distance(spec.alpha, spec.params).value;
  auto& range = r.add("nonzero weights within [d, n]", true, "d " + str(d) + ", n " + str(spec.n));
  for (const auto& [w, c] : dist.counts) {
    if (w == 0) continue;
    if (c % (q - 1) != 0) {
      div.pass = false;
      witness(div, "weight " + str(w));
    }
    if (c != 0 && (mpz_class(str(w)) < d || w > spec.n)) {
      range.pass = false;
      witness(range, "weight " + str(w));
    }
  }
  const auto mw = macwilliams_transform(dist);
  r.add("dual distribution integral", mw.integral);
  r.add("dual distribution nonnegative", mw.nonnegative);
  r.add("dual distribution has one zero word", !mw.dual.empty() && mw.dual[0] == 1);
  return r;
}

// --- minimum distance ----------------------------------------------------------

VerifyReport verify_nogin(const CodeSpec& spec, const VerifyOptions& options) {
  require_grassmann(spec, "verify_nogin");
  check_budget(spec, options.sweep);
  const auto& params = spec.params;
  VerifyReport r{"nogin", params_label(params), {}};
  const auto G = build_generator(spec);
  const auto weights = class_weights(G, options.sweep);
  const std::uint64_t d = u64(min_distance(spec).value);
  const mpz_class expected = gaussian_binomial(params.m, params.ell, params.q());

  auto& lower = r.add("every class has weight >= q^{l(m-l)}", true, "d = " + str(d));
  auto& iff = r.add("minimum weight <=> decomposable", true);
  std::uint64_t dec = 0;
  std::uint64_t at_min = 0;
  std::vector<gf::Code> c(spec.k);
  for (std::uint64_t rank = 0; rank < weights.size(); ++rank) {
    decode_class(params.q(), rank, c);
    const DualFunctional F(params, c);
    const bool is_dec = check_functional(F);
    dec += is_dec;
    at_min += weights[rank] == d;
    if (weights[rank] < d) {
      lower.pass = false;
      witness(lower, F.to_string() + " weight " + str(std::uint64_t{weights[rank]}));
    }
    if ((weights[rank] == d) != is_dec) {
      iff.pass = false;
      witness(iff, F.to_string() + " weight " + str(std::uint64_t{weights[rank]}) +
                       (is_dec ? " decomposable" : " nondecomposable"));
    }
  }
  iff.detail = str(dec) + " decomposable classes, " + str(at_min) + " minimum-weight classes";
  r.add("decomposable classes = [m l]_q", mpz_class(str(dec)) == expected, str(dec) + " vs " + str(expected));
  r.add("minimum-weight classes = [m l]_q", mpz_class(str(at_min)) == expected, str(at_min) + " vs " + str(expected));
  append(r, verify_distribution(distribution_from_class_weights(spec, weights)), "distribution: ");
  return r;
}

VerifyReport verify_second_weight(const CodeSpec& spec, const VerifyOptions& options) {
  require_grassmann(spec, "verify_second_weight");
  const auto claim2 = second_min_weight(spec);  // DomainError outside 2 <= l <= m-2
  check_budget(spec, options.sweep);
  VerifyReport r{"second", params_label(spec.params), {}};
  const auto dist = weight_distribution(build_generator(spec), options.sweep);
  const std::uint64_t d = u64(min_distance(spec).value);
  const std::uint64_t d2 = u64(claim2.value);
  auto& gap = r.add("no weight strictly between d and d2", true, "d " + str(d) + ", d2 " + str(d2));
  for (const auto& [w, c] : dist.counts) {
    if (w > d && w < d2 && c != 0) {
      gap.pass = false;
      witness(gap, "weight " + str(w) + " count " + str(c));
    }
  }
  const auto at = dist.counts.find(d2);
  r.add("d2 attained", at != dist.counts.end() && at->second > 0,
        "count " + (at == dist.counts.end() ? std::string("0") : str(at->second)));
  r.add("minimum distance confirmed", min_distance(spec, &dist).verified);
  r.add("second minimum weight confirmed", second_min_weight(spec, &dist).verified,
        "observed " + (dist.second_min_weight() ? str(*dist.second_min_weight()) : std::string("none")));
  append(r, verify_distribution(dist), "distribution: ");
  return r;
}

// --- attained family ---------------------------------------------------------

IndexTuple attained_theta(int ell, int m) {
  std::vector<int> e{m - ell - 1};
  for (int i = 2; i <= ell; ++i) e.push_back(m - ell + i);
  return IndexTuple(e, m);
}

IndexTuple attained_gamma(int ell, int m) {
  std::vector<int> e;
  for (int i = 1; i <= ell; ++i) e.push_back(m - ell - 1 + i);
  return IndexTuple(e, m);
}

namespace {

// Coefficient vectors of the family at (l, m): c_theta != 0, free c_a on
// Delta(theta) \ {gamma}, 1 at gamma.
template <class Fn>
bool for_family(const GrassmannParams& params, const VerifyOptions& o, std::uint64_t& members, Fn&& fn) {
  const int q = params.q();
  const auto& space = index_space(params.ell, params.m);
  const auto theta = attained_theta(params.ell, params.m);
  const auto gamma = attained_gamma(params.ell, params.m);
  std::vector<int> free_slots;
  for (const auto& a : delta_set(theta)) {
    if (!(a == gamma)) free_slots.push_back(space.rank(a));
  }
  const int t = space.rank(theta);
  const int g = space.rank(gamma);
  const mpz_class total = (q - 1) * ipow(q, free_slots.size());
  std::vector<gf::Code> c(space.size(), 0);
  c[g] = 1;
  if (total <= mpz_class(str(o.sample_cap))) {
    members = total.get_ui();
    for (std::uint64_t idx = 0; idx < members; ++idx) {
      std::uint64_t x = idx;
      for (int s : free_slots) {
        c[s] = static_cast<gf::Code>(x % q);
        x /= q;
      }
      c[t] = static_cast<gf::Code>(1 + x);
      fn(std::span<const gf::Code>(c));
    }
    return true;
  }
  members = o.sample_cap;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> any(0, q - 1);
  std::uniform_int_distribution<int> nonzero(1, q - 1);
  for (std::uint64_t i = 0; i < members; ++i) {
    for (int s : free_slots) c[s] = static_cast<gf::Code>(any(rng));
    c[t] = static_cast<gf::Code>(nonzero(rng));
    fn(std::span<const gf::Code>(c));
  }
  return false;
}

}  // namespace

VerifyReport verify_attained_family(const GrassmannParams& params, const VerifyOptions& options) {
  const int l = params.ell;
  const int m = params.m;
  if (l < 2 || l > m - 2) throw DomainError("attained family needs 2 <= l <= m-2");
  VerifyReport r{"attained", params_label(params), {}};
  const int q = params.q();
  const auto spec = CodeSpec::grassmann(params);
  const std::uint64_t d2 = u64(second_min_weight(spec).value);
  const auto theta = attained_theta(l, m);
  const auto cspec = CodeSpec::schubert(params, theta);
  const std::uint64_t drop = u64(ipow(q, static_cast<unsigned long>(l * (m - l) - 2)));
  const Grass g(params);

  std::vector<std::size_t> in_theta;
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (bruhat_leq(g.table.points[j].pivots(), theta)) in_theta.push_back(j);
  }
  r.add("Omega_theta has n_theta points", in_theta.size() == cspec.n,
        "theta " + theta.to_string() + ", n_theta " + str(cspec.n));
  r.add("delta(theta) = l(m-l) - 2", delta(theta) == l * (m - l) - 2);

  auto& weight = r.add("family weight = q^{l(m-l)} + q^{l(m-l)-2}", true);
  auto& omega = r.add("family meets Omega_theta in n_theta - q^{l(m-l)-2} points", true);
  auto& direct = r.add("direct minor count agrees with table", true);
  std::uint64_t members = 0;
  std::uint64_t seen = 0;
  const bool exhaustive = for_family(params, options, members, [&](std::span<const gf::Code> c) {
    const std::uint64_t w = g.n() - g.zeros(c);
    std::uint64_t hits = 0;
    for (auto j : in_theta) hits += g.zero(c, j);
    const DualFunctional F(params, std::vector<gf::Code>(c.begin(), c.end()));
    if (w != d2) {
      weight.pass = false;
      witness(weight, F.to_string() + " weight " + str(w));
    }
    if (hits != cspec.n - drop) {
      omega.pass = false;
      witness(omega, F.to_string() + " meets Omega_theta in " + str(hits));
    }
    if (seen++ < 16 && codeword_weight(F, spec) != w) {
      direct.pass = false;
      witness(direct, F.to_string());
    }
  });
  weight.detail = coverage(exhaustive, members) + " members, expected " + str(d2);
  omega.detail = "expected " + str(cspec.n - drop);

  if (l - 1 >= 2 && l - 1 <= m - 3) {
    // second-weight hyperplanes one size down, lifted through the strings
    const GrassmannParams sub(l - 1, m - 1, params.f());
    const Grass gs(sub);
    const auto& small = index_space(l - 1, m - 1);
    const auto& big = index_space(l, m);
    std::vector<int> lift(small.size());
    for (int i = 0; i < small.size(); ++i) {
      auto e = small[i].entries();
      e.push_back(m);
      lift[i] = big.rank(IndexTuple(e, m));
    }
    const std::uint64_t e2_small = u64(e_prime_bound(l - 1, m - 1, q));
    auto& sub_sec = r.add("lift: small functional meets G(l-1, V_{m-1}) in e'(l-1, m-1) points", true,
                          "e' = " + str(e2_small));
    auto& lifted = r.add("lift: lifted functional has weight q^{l(m-l)} + q^{l(m-l)-2}", true);
    std::uint64_t lm = 0;
    const bool lex = for_family(sub, options, lm, [&](std::span<const gf::Code> c) {
      std::vector<gf::Code> big_c(big.size(), 0);
      for (std::size_t i = 0; i < c.size(); ++i) big_c[lift[i]] = c[i];
      if (gs.zeros(c) != e2_small) {
        sub_sec.pass = false;
        witness(sub_sec, DualFunctional(sub, std::vector<gf::Code>(c.begin(), c.end())).to_string());
      }
      const std::uint64_t w = g.n() - g.zeros(big_c);
      if (w != d2) {
        lifted.pass = false;
        witness(lifted, DualFunctional(params, big_c).to_string() + " weight " + str(w));
      }
    });
    lifted.detail = coverage(lex, lm) + " members";
  }
  return r;
}

// --- strings -----------------------------------------------------------------

VerifyReport verify_string_partition(const GrassmannParams& params) {
  const int l = params.ell;
  const int m = params.m;
  const int q = params.q();
  VerifyReport r{"strings", params_label(params), {}};
  if (l == m) throw DomainError("string partition needs l < m");
  const Grass g(params);
  std::map<std::vector<gf::Code>, std::vector<std::vector<gf::Code>>> fibers;
  std::uint64_t lower = 0;
  for (const auto& M : g.table.points) {
    if (M.in_top_stratum()) fibers[string_label(M).nu].push_back(M.entries());
    else ++lower;
  }
  const mpz_class fiber_size = gaussian_binomial(m - 1, l - 1, q);
  const mpz_class lower_size = gaussian_binomial(m - 1, l, q);
  r.add("q^{m-l} nonempty fibers", mpz_class(str(fibers.size())) == ipow(q, m - l),
        str(fibers.size()) + " fibers");
  auto& sizes = r.add("each fiber has [m-1 l-1]_q points", true, "expected " + str(fiber_size));
  auto& match = r.add("fibers equal the lifts of G(l-1, V_{m-1})", true);
  auto& tau = r.add("tau is a bijection on each fiber and lifting inverts it", l >= 2);
  if (l < 2) tau.detail = "not applicable for l = 1";
  for (const auto& label : enumerate_string_labels(params)) {
    auto found = fibers.find(label.nu);
    std::vector<std::vector<gf::Code>> have = found == fibers.end() ? decltype(have){} : found->second;
    if (mpz_class(str(have.size())) != fiber_size) {
      sizes.pass = false;
      witness(sizes, vec_string(label.nu, params.f()));
    }
    std::vector<std::vector<gf::Code>> want;
    std::set<std::vector<gf::Code>> images;
    for (const auto& M : string_fiber(label)) {
      want.push_back(M.entries());
      if (l >= 2) {
        const auto T = project_tau(M);
        images.insert(T.entries());
        if (!(lift_to_string(T, label) == M)) {
          tau.pass = false;
          witness(tau, M.to_string());
        }
      }
    }
    if (l >= 2 && mpz_class(str(images.size())) != fiber_size) {
      tau.pass = false;
      witness(tau, "label " + vec_string(label.nu, params.f()));
    }
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());
    if (have != want) {
      match.pass = false;
      witness(match, vec_string(label.nu, params.f()));
    }
  }
  r.add("G(l, V_{m-1}) has [m-1 l]_q points", mpz_class(str(lower)) == lower_size, str(lower));
  r.add("fibers and G(l, V_{m-1}) cover G(l, V_m)",
        mpz_class(str(lower)) + ipow(q, m - l) * fiber_size == gaussian_binomial(m, l, q) &&
            lower + fibers.size() * static_cast<std::uint64_t>(fiber_size.get_ui()) == g.n());
  return r;
}

namespace {

std::vector<int> top_slots(const GrassmannParams& params) {
  std::vector<int> out;
  const auto& space = index_space(params.ell, params.m);
  for (int i = 0; i < space.size(); ++i) {
    if (space[i].back() == params.m) out.push_back(i);
  }
  return out;
}

}  // namespace

VerifyReport verify_string_section(const DualFunctional& F) {
  const auto& params = F.params();
  const int l = params.ell;
  const int m = params.m;
  if (l < 2 || l == m) throw DomainError("string section needs 2 <= l < m");
  const auto& space = index_space(l, m);
  for (int i = 0; i < space.size(); ++i) {
    if (F.coeffs()[i] != 0 && space[i].back() != m) {
      throw DomainError("functional " + F.to_string() + " is not supported on tuples ending in m");
    }
  }
  const GrassmannParams sub(l - 1, m - 1, params.f());
  const auto& small = index_space(l - 1, m - 1);
  std::vector<gf::Code> cc(small.size(), 0);
  for (int i = 0; i < space.size(); ++i) {
    if (F.coeffs()[i] == 0) continue;
    auto e = space[i].entries();
    e.pop_back();
    cc[small.rank(IndexTuple(e, m - 1))] = F.coeffs()[i];
  }
  const DualFunctional Fc(sub, cc);
  std::uint64_t small_hits = 0;
  for (const auto& N : enumerate_grassmannian(sub)) small_hits += Fc.evaluate(plucker(N)) == 0;

  VerifyReport r{"string-section", params_label(params) + " F=" + F.to_string(), {}};
  auto& equal = r.add("every fiber meets Pi in the same number of points", true);
  auto& match = r.add("fiber count = |G(l-1, V_{m-1}) ∩ Pi-check|", true, "Pi-check " + Fc.to_string() + ": " +
                                                                            str(small_hits));
  auto& pointwise = r.add("tau carries fiber ∩ Pi onto G(l-1, V_{m-1}) ∩ Pi-check", true);
  std::optional<std::uint64_t> first;
  for (const auto& label : enumerate_string_labels(params)) {
    std::uint64_t hits = 0;
    for (const auto& M : string_fiber(label)) {
      const bool in = F.evaluate(plucker(M)) == 0;
      hits += in;
      if (in != (Fc.evaluate(plucker(project_tau(M))) == 0)) {
        pointwise.pass = false;
        witness(pointwise, M.to_string());
      }
    }
    if (!first) first = hits;
    if (hits != *first) {
      equal.pass = false;
      witness(equal, vec_string(label.nu, params.f()) + ": " + str(hits));
    }
    if (hits != small_hits) {
      match.pass = false;
      witness(match, vec_string(label.nu, params.f()) + ": " + str(hits));
    }
  }
  equal.detail = "count " + str(first.value_or(0));
  const bool dec = check_functional(F);
  r.add("Pi decomposable <=> Pi-check decomposable", dec == check_functional(Fc),
        dec ? "decomposable" : "nondecomposable");
  return r;
}

VerifyReport verify_strings(const GrassmannParams& params, const VerifyOptions& options) {
  VerifyReport r = verify_string_partition(params);
  r.suite = "strings";
  const int l = params.ell;
  const int m = params.m;
  const int q = params.q();
  if (l < 2) {
    r.add("section law", true, "not applicable for l = 1");
    return r;
  }
  // every nonzero functional on the tuples ending in m
  const auto slots = top_slots(params);
  const auto& space = index_space(l, m);
  auto& section = r.add("section law for every functional supported on a_l = m", true);
  const std::uint64_t fiber_cost = u64(gaussian_binomial(m, l, q));
  std::uint64_t tested = 0;
  const bool exhaustive = for_classes(q, static_cast<int>(slots.size()), fiber_cost, options,
                                      [&](std::span<const gf::Code> c) {
    std::vector<gf::Code> full(space.size(), 0);
    for (std::size_t i = 0; i < slots.size(); ++i) full[slots[i]] = c[i];
    // all nonzero multiples, not just the representative
    for (int s = 1; s < q; ++s) {
      const DualFunctional F = DualFunctional(params, full).scaled(static_cast<gf::Code>(s));
      ++tested;
      const auto sub = verify_string_section(F);
      if (!sub.passed()) {
        section.pass = false;
        witness(section, F.to_string());
      }
    }
  });
  section.detail = coverage(exhaustive, tested) + " functionals";

  // no nonzero functional on a_l = m vanishes on a whole fiber
  const Grass g(params);
  std::map<std::vector<gf::Code>, int> label_index;
  std::vector<int> label_of(g.n(), -1);
  for (std::size_t j = 0; j < g.n(); ++j) {
    const auto& M = g.table.points[j];
    if (!M.in_top_stratum()) continue;
    auto [it, fresh] = label_index.emplace(string_label(M).nu, static_cast<int>(label_index.size()));
    label_of[j] = it->second;
  }
  std::vector<std::uint64_t> fiber_total(label_index.size(), 0);
  for (int x : label_of) {
    if (x >= 0) ++fiber_total[x];
  }
  auto& probe = r.add("no nonzero functional supported on a_l = m vanishes on a whole fiber", true);
  std::uint64_t probed = 0;
  std::vector<std::uint64_t> zeros(label_index.size());
  const bool pex = for_classes(q, static_cast<int>(slots.size()), g.n(), options, [&](std::span<const gf::Code> c) {
    ++probed;
    std::vector<gf::Code> full(space.size(), 0);
    for (std::size_t i = 0; i < slots.size(); ++i) full[slots[i]] = c[i];
    std::fill(zeros.begin(), zeros.end(), 0);
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (label_of[j] >= 0 && g.zero(full, j)) ++zeros[label_of[j]];
    }
    for (std::size_t x = 0; x < zeros.size(); ++x) {
      if (zeros[x] == fiber_total[x]) {
        probe.pass = false;
        witness(probe, DualFunctional(params, full).to_string());
        break;
      }
    }
  });
  probe.detail = coverage(pex, probed) + " classes";
  return r;
}

// --- incidence bound ---------------------------------------------------------

namespace {

struct ZanellaOutcome {
  std::uint64_t total = 0;  // |Pi ∩ G(l, V_m)|
  std::uint64_t a = 0;
  bool uniform = true;
  mpz_class double_count;
};

ZanellaOutcome zanella_counts(const Grass& g, const Kernels& K, std::span<const gf::Code> c) {
  std::vector<char> zero(g.n());
  ZanellaOutcome out;
  for (std::size_t j = 0; j < g.n(); ++j) {
    zero[j] = g.zero(c, j);
    out.total += zero[j];
  }
  std::optional<std::uint64_t> first;
  std::uint64_t sum = 0;
  for (const auto& pts : K.inside) {
    std::uint64_t s = 0;
    for (auto j : pts) s += zero[j];
    sum += s;
    out.a = std::max(out.a, s);
    if (!first) first = s;
    if (s != *first) out.uniform = false;
  }
  out.double_count = mpz_class(str(sum));
  return out;
}

void zanella_assert(VerifyReport& r, Assertion& bound, Assertion& eq, Assertion& dc, const Grass& g,
                    const ZanellaOutcome& z, const std::string& label) {
  const int q = g.params.q();
  const int m = g.params.m;
  const int l = g.params.ell;
  const mpz_class lhs = mpz_class(str(z.total)) * (ipow(q, m - l) - 1);
  const mpz_class rhs = mpz_class(str(z.a)) * (ipow(q, m) - 1);
  if (lhs > rhs) {
    bound.pass = false;
    witness(bound, label + " |Pi∩G| " + str(z.total) + ", a " + str(z.a));
  }
  if (z.uniform && lhs != rhs) {
    eq.pass = false;
    witness(eq, label);
  }
  const mpz_class per_space = (ipow(q, m - l) - 1) / (q - 1);
  if (z.double_count != mpz_class(str(z.total)) * per_space) {
    dc.pass = false;
    witness(dc, label);
  }
  (void)r;
}

}  // namespace

VerifyReport verify_zanella_incidence(const DualFunctional& F) {
  const auto& params = F.params();
  if (params.ell == params.m) throw DomainError("incidence bound needs l < m");
  const Grass g(params);
  const Kernels K(g);
  VerifyReport r{"zanella", params_label(params) + " F=" + F.to_string(), {}};
  const auto z = zanella_counts(g, K, F.coeffs());
  const int q = params.q();
  const int m = params.m;
  const int l = params.ell;
  r.add("hyperplanes V_{m-1} counted", mpz_class(str(K.covectors.size())) == (ipow(q, m) - 1) / (q - 1),
        str(K.covectors.size()));
  auto& sub = r.add("each G(l, V_{m-1}) has [m-1 l]_q points", true);
  for (const auto& pts : K.inside) {
    if (mpz_class(str(pts.size())) != gaussian_binomial(m - 1, l, q)) sub.pass = false;
  }
  auto& bound = r.add("|Pi ∩ G| <= a (q^m-1)/(q^{m-l}-1)", true,
                      "|Pi ∩ G| " + str(z.total) + ", a " + str(z.a) + ", bound " +
                          str(mpz_class(str(z.a)) * (ipow(q, m) - 1)) + "/" + str(ipow(q, m - l) - 1));
  auto& eq = r.add("equality when every V_{m-1} gives a", true, z.uniform ? "uniform" : "not uniform");
  auto& dc = r.add("double count of incidences", true);
  zanella_assert(r, bound, eq, dc, g, z, F.to_string());
  return r;
}

VerifyReport verify_zanella(const GrassmannParams& params, const VerifyOptions& options) {
  if (params.ell == params.m) throw DomainError("incidence bound needs l < m");
  const Grass g(params);
  const Kernels K(g);
  const int q = params.q();
  const int m = params.m;
  const int l = params.ell;
  VerifyReport r{"zanella", params_label(params), {}};
  r.add("hyperplanes V_{m-1} counted", mpz_class(str(K.covectors.size())) == (ipow(q, m) - 1) / (q - 1),
        str(K.covectors.size()));
  auto& sub = r.add("each G(l, V_{m-1}) has [m-1 l]_q points", true);
  for (std::size_t u = 0; u < K.inside.size(); ++u) {
    if (mpz_class(str(K.inside[u].size())) != gaussian_binomial(m - 1, l, q)) {
      sub.pass = false;
      witness(sub, "ker " + vec_string(K.covectors[u], params.f()));
    }
  }
  auto& bound = r.add("|Pi ∩ G| <= a (q^m-1)/(q^{m-l}-1) for every functional", true);
  auto& eq = r.add("equality when every V_{m-1} gives a", true);
  auto& dc = r.add("double count of incidences", true);
  std::uint64_t tested = 0;
  std::uint64_t uniform = 0;
  const std::uint64_t cost = checked_mul(g.n(), K.covectors.size());
  const bool ex = for_classes(q, params.coordinate_count(), cost, options, [&](std::span<const gf::Code> c) {
    ++tested;
    const auto z = zanella_counts(g, K, c);
    uniform += z.uniform;
    zanella_assert(r, bound, eq, dc, g, z, DualFunctional(params, std::vector<gf::Code>(c.begin(), c.end())).to_string());
  });
  bound.detail = coverage(ex, tested) + " classes";
  eq.detail = str(uniform) + " classes with uniform sub-counts";
  return r;
}

// --- small dichotomies -------------------------------------------------------

VerifyReport verify_l2_dichotomy(const GrassmannParams& params, const VerifyOptions& options) {
  if (params.ell != 2 || params.m != 4) throw DomainError("two-weight check is for l = 2, m = 4");
  const auto spec = CodeSpec::grassmann(params);
  check_budget(spec, options.sweep);
  const int q = params.q();
  VerifyReport r{"l2", params_label(params), {}};
  const auto G = build_generator(spec);
  const auto weights = class_weights(G, options.sweep);
  const std::uint64_t expect = static_cast<std::uint64_t>(q) * q * q + q * q + q + 1;
  auto& meet = r.add("nondecomposable classes meet G(2, V_4) in q^3+q^2+q+1 points", true, "expected " + str(expect));
  std::set<std::uint64_t> distinct;
  std::uint64_t nondec = 0;
  std::vector<gf::Code> c(spec.k);
  for (std::uint64_t rank = 0; rank < weights.size(); ++rank) {
    decode_class(q, rank, c);
    const DualFunctional F(params, c);
    distinct.insert(weights[rank]);
    if (check_functional(F)) continue;
    ++nondec;
    if (spec.n - weights[rank] != expect) {
      meet.pass = false;
      witness(meet, F.to_string() + " meets " + str(spec.n - weights[rank]));
    }
  }
  const mpz_class classes = mpz_class(str(weights.size()));
  r.add("nondecomposable class count", mpz_class(str(nondec)) == classes - gaussian_binomial(4, 2, q),
        str(nondec));
  const std::uint64_t q4 = u64(ipow(q, 4));
  r.add("two nonzero weights q^4 and q^4+q^2", distinct == std::set<std::uint64_t>{q4, q4 + q * q});
  return r;
}

VerifyReport verify_codim2_corollary(const GrassmannParams& params, const VerifyOptions& options) {
  if (params.ell != params.m - 2 || params.ell < 1) throw DomainError("corollary check needs l = m-2");
  const int q = params.q();
  const int m = params.m;
  const Grass g(params);
  const Kernels K(g);
  VerifyReport r{"corollary", params_label(params), {}};
  const std::uint64_t expect = u64((ipow(q, m - 2) - 1) / (q - 1));
  const std::uint64_t whole = u64(gaussian_binomial(m - 1, m - 2, q));
  const std::uint64_t e2 = u64(e_prime_bound(m - 2, m, q));
  r.add("e(m-2, m-1) = (q^{m-2}-1)/(q-1)", e_bound(m - 2, m - 1, q) == mpz_class(str(expect)));
  // the literal claim; it needs every functional on a_l = m to be decomposable,
  // which fails once Lambda^2 V_{m-1} has nondecomposable elements (m >= 5)
  auto& meet = r.add("nondecomposable classes meet every G(m-2, V_{m-1}) in e(m-2, m-1) points", true);
  auto& split = r.add("nondecomposable classes contain G(m-2, V_{m-1}) or meet it in e(m-2, m-1) points", true);
  auto& bound = r.add("nondecomposable classes meet G(m-2, V_m) in at most e'(m-2, m) points", true,
                      "e' = " + str(e2));
  std::uint64_t tested = 0;
  std::uint64_t containing = 0;
  const std::uint64_t cost = checked_mul(g.n(), K.covectors.size());
  const bool ex = for_classes(q, params.coordinate_count(), cost, options, [&](std::span<const gf::Code> c) {
    const DualFunctional F(params, std::vector<gf::Code>(c.begin(), c.end()));
    if (check_functional(F)) return;
    ++tested;
    std::vector<char> zero(g.n());
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      zero[j] = g.zero(c, j);
      total += zero[j];
    }
    if (total > e2) {
      bound.pass = false;
      witness(bound, F.to_string() + ": " + str(total));
    }
    bool contains = false;
    for (std::size_t u = 0; u < K.inside.size(); ++u) {
      std::uint64_t s = 0;
      for (auto j : K.inside[u]) s += zero[j];
      if (s == expect) continue;
      const std::string w = F.to_string() + " on ker " + vec_string(K.covectors[u], params.f()) + ": " + str(s);
      if (!contains) witness(meet, w);  // one per class
      meet.pass = false;
      if (s == whole) {
        contains = true;
      } else {
        split.pass = false;
        witness(split, w);
      }
    }
    containing += contains;
  });
  meet.detail = "expected " + str(expect) + "; " + coverage(ex, tested) + " nondecomposable classes, " +
                str(containing) + " contain some G(m-2, V_{m-1})";
  return r;
}

// --- identities --------------------------------------------------------------

VerifyReport verify_identities(int max_m, const std::vector<long>& qs) {
  VerifyReport r{"identities", "m<=" + std::to_string(max_m), {}};
  for (long q : qs) {
    auto& gauss = r.add("Gaussian identities q=" + std::to_string(q), true);
    auto& ineq = r.add("e and e' relations q=" + std::to_string(q), true);
    std::uint64_t ng = 0;
    std::uint64_t ni = 0;
    for (int m = 1; m <= max_m; ++m) {
      for (int l = 1; l <= m; ++l) {
        for (const auto& c : verify_gaussian_identities(m, l, q).checks) {
          ++ng;
          if (!c.pass) {
            gauss.pass = false;
            witness(gauss, c.identity + " l=" + std::to_string(l) + " m=" + std::to_string(m));
          }
        }
        if (l <= m - 1) {
          for (const auto& c : verify_e_inequalities(l, m, q).checks) {
            ++ni;
            if (!c.pass) {
              ineq.pass = false;
              witness(ineq, c.identity + " l=" + std::to_string(l) + " m=" + std::to_string(m));
            }
          }
        }
      }
    }
    gauss.detail = str(ng) + " checks";
    ineq.detail = str(ni) + " checks";
  }
  return r;
}

// --- Schubert ------------------------------------------------------------------

VerifyReport verify_schubert_min_distance(const IndexTuple& alpha, const GrassmannParams& params,
                                          const VerifyOptions& options) {
  const auto spec = CodeSpec::schubert(params, alpha);
  check_budget(spec, options.sweep);
  VerifyReport r{"schubert", params_label(params) + " alpha=" + alpha.to_string(), {}};
  const auto G = build_generator(spec);
  r.add("k_alpha = |nabla(alpha)|", G.rows() == static_cast<int>(nabla_set(alpha).size()), str(std::uint64_t(G.rows())));
  r.add("n_alpha = sum q^delta over nabla(alpha)", G.cols() == enumerate_schubert_variety(alpha, params).size(),
        str(G.cols()));
  r.add("generator has full row rank", G.rank() == G.rows());
  r.add("no zero column", !G.has_zero_column());
  const auto dist = weight_distribution(G, options.sweep);
  const auto claim = schubert_min_distance(alpha, params, &dist);
  r.add("minimum distance q^delta(alpha)", claim.verified,
        "claimed " + str(claim.value) + ", observed " + (dist.min_weight() ? str(*dist.min_weight()) : "none"));
  append(r, verify_distribution(dist), "distribution: ");
  return r;
}

// --- two evaluation routes -----------------------------------------------------

VerifyReport verify_pairing_consistency(const GrassmannParams& params, const VerifyOptions& options) {
  const auto spec = CodeSpec::grassmann(params);
  const int q = params.q();
  const int k = spec.k;
  const auto table = grassmannian_table(params);
  const auto G = build_generator(spec);
  std::vector<PluckerVector> raw;
  for (const auto& M : table.points) raw.push_back(plucker(M));

  VerifyReport r{"pairing", params_label(params), {}};
  auto& pair = r.add("minor evaluation = wedge pairing", true);
  auto& weights = r.add("weights agree across minors, pairing and generator table", true);
  std::uint64_t functionals = 0;
  std::uint64_t pairs = 0;
  auto check = [&](const std::vector<gf::Code>& c) {
    const DualFunctional F(params, c);
    const auto z = functional_to_wedge(F);
    std::uint64_t w_minor = 0;
    std::uint64_t w_pair = 0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      const gf::Code a = F.evaluate(raw[j]);
      const gf::Code b = wedge_pairing(z, table.points[j]);
      ++pairs;
      w_minor += a != 0;
      w_pair += b != 0;
      if (a != b) {
        pair.pass = false;
        witness(pair, F.to_string() + " at " + table.points[j].to_string());
      }
    }
    ++functionals;
    if (w_minor != w_pair || w_minor != codeword_weight(G, c)) {
      weights.pass = false;
      witness(weights, F.to_string());
    }
  };
  const mpz_class all = ipow(q, static_cast<unsigned long>(k)) - 1;
  const std::uint64_t limit = options.exhaustive_limit / 16;
  std::vector<gf::Code> c(k);
  bool exhaustive = all * mpz_class(str(table.size())) <= mpz_class(str(limit));
  if (exhaustive) {
    const std::uint64_t count = all.get_ui();
    for (std::uint64_t idx = 1; idx <= count; ++idx) {
      std::uint64_t x = idx;
      for (int i = k - 1; i >= 0; --i) {
        c[i] = static_cast<gf::Code>(x % q);
        x /= q;
      }
      check(c);
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> any(0, q - 1);
    for (std::uint64_t i = 0; i < options.sample_cap; ++i) {
      do {
        for (auto& x : c) x = static_cast<gf::Code>(any(rng));
      } while (std::all_of(c.begin(), c.end(), [](gf::Code x) { return x == 0; }));
      check(c);
    }
  }
  pair.detail = coverage(exhaustive, functionals) + " functionals, " + str(pairs) + " pairs";
  return r;
}

// --- dispatch ------------------------------------------------------------------

Suite parse_suite(const std::string& name) {
  static const std::map<std::string, Suite> names{
      {"nogin", Suite::nogin},       {"second", Suite::second}, {"strings", Suite::strings},
      {"zanella", Suite::zanella},   {"identities", Suite::identities}, {"l2", Suite::l2},
      {"attained", Suite::attained}, {"all", Suite::all}};
  const auto it = names.find(name);
  if (it == names.end()) throw UsageError("unknown suite '" + name + "'");
  return it->second;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::nogin: return "nogin";
    case Suite::second: return "second";
    case Suite::strings: return "strings";
    case Suite::zanella: return "zanella";
    case Suite::identities: return "identities";
    case Suite::l2: return "l2";
    case Suite::attained: return "attained";
    case Suite::all: return "all";
  }
  return "?";
}

std::vector<VerifyReport> run_suite(Suite suite, const GrassmannParams& params, const VerifyOptions& options) {
  const int l = params.ell;
  const int m = params.m;
  const auto spec = CodeSpec::grassmann(params);
  std::vector<VerifyReport> out;
  switch (suite) {
    case Suite::nogin: out.push_back(verify_nogin(spec, options)); break;
    case Suite::second: out.push_back(verify_second_weight(spec, options)); break;
    case Suite::strings: out.push_back(verify_strings(params, options)); break;
    case Suite::zanella: out.push_back(verify_zanella(params, options)); break;
    case Suite::identities: out.push_back(verify_identities(m, {params.q()})); break;
    case Suite::l2: out.push_back(verify_l2_dichotomy(params, options)); break;
    case Suite::attained: out.push_back(verify_attained_family(params, options)); break;
    case Suite::all: {
      check_budget(spec, options.sweep);
      out.push_back(verify_identities(m, {params.q()}));
      out.push_back(verify_nogin(spec, options));
      if (l >= 2 && l <= m - 2) {
        out.push_back(verify_second_weight(spec, options));
        out.push_back(verify_attained_family(params, options));
        out.push_back(verify_schubert_min_distance(attained_theta(l, m), params, options));
      }
      if (l < m) out.push_back(verify_strings(params, options));
      if (l < m) out.push_back(verify_zanella(params, options));
      if (l == 2 && m == 4) out.push_back(verify_l2_dichotomy(params, options));
      if (l == m - 2) out.push_back(verify_codim2_corollary(params, options));
      out.push_back(verify_pairing_consistency(params, options));
      break;
    }
  }
  return out;
}

}  // namespace plucker
