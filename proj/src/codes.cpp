#include "plucker/codes.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "json.hpp"
#include "plucker/error.hpp"

namespace plucker {

namespace {

std::uint64_t to_u64(const mpz_class& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw ResourceError(std::string(what) + " does not fit in 64 bits", UINT64_MAX, 0);
  return v.get_ui();
}

unsigned worker_count(const SweepOptions& options, std::uint64_t work) {
  unsigned p = options.parallelism == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.parallelism;
  if (work < p) p = static_cast<unsigned>(std::max<std::uint64_t>(1, work));
  return p;
}

// Runs body(lo, hi, worker) over [0, total) split into contiguous ranges.
template <class Body>
void parallel_ranges(std::uint64_t total, unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(std::uint64_t{0}, total, 0U);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t chunk = total / workers;
  const std::uint64_t extra = total % workers;
  std::uint64_t lo = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
    threads.emplace_back([&body, lo, hi, w] { body(lo, hi, w); });
    lo = hi;
  }
  for (auto& t : threads) t.join();
}

// Sweeps class representatives in [lo, hi) and reports (rank, weight).
template <class Sink>
void sweep_range(const GeneratorMatrix& G, std::uint64_t lo, std::uint64_t hi, Sink&& sink) {
  const auto& spec = G.spec();
  const int k = spec.k;
  const std::uint64_t n = spec.n;
  const auto& F = spec.params.f();
  if (F.q() == 2 && k <= 64) {
    // bit-packed kernel: coordinate i of the class vector is bit k-1-i,
    // so representative rank r is the integer r + 1
    std::vector<std::uint64_t> words(n, 0);
    for (std::uint64_t j = 0; j < n; ++j) {
      const auto col = G.column(j);
      std::uint64_t w = 0;
      for (int i = 0; i < k; ++i) {
        if (col[i]) w |= std::uint64_t{1} << (k - 1 - i);
      }
      words[j] = w;
    }
    const std::uint64_t* wp = words.data();
    for (std::uint64_t r = lo; r < hi; ++r) {
      const std::uint64_t c = r + 1;
      std::uint32_t weight = 0;
      for (std::uint64_t j = 0; j < n; ++j) weight += static_cast<std::uint32_t>(std::popcount(c & wp[j]) & 1);
      sink(r, weight);
    }
    return;
  }
  std::vector<gf::Code> c(k);
  std::vector<int> support;
  std::vector<const gf::Code*> rows;
  const gf::Code* data = G.data().data();
  for (std::uint64_t r = lo; r < hi; ++r) {
    decode_class(F.q(), r, c);
    support.clear();
    rows.clear();
    for (int i = 0; i < k; ++i) {
      if (c[i] != 0) {
        support.push_back(i);
        rows.push_back(F.mul_row(c[i]));
      }
    }
    std::uint32_t weight = 0;
    const std::size_t s = support.size();
    for (std::uint64_t j = 0; j < n; ++j) {
      const gf::Code* col = data + j * static_cast<std::size_t>(k);
      gf::Code acc = 0;
      for (std::size_t t = 0; t < s; ++t) acc = F.add(acc, rows[t][col[support[t]]]);
      weight += acc != 0;
    }
    sink(r, weight);
  }
}

}  // namespace

// --- CodeSpec ----------------------------------------------------------------

CodeSpec CodeSpec::grassmann(const GrassmannParams& params) {
  CodeSpec s;
  s.params = params;
  s.variant = CodeVariant::grassmann;
  s.alpha = IndexTuple::maximal(params.ell, params.m);
  s.n = to_u64(gaussian_binomial(params.m, params.ell, params.q()), "code length");
  s.k = params.coordinate_count();
  return s;
}

CodeSpec CodeSpec::schubert(const GrassmannParams& params, const IndexTuple& alpha) {
  if (alpha.ell() != params.ell || alpha.m() != params.m) {
    throw UsageError("Schubert index " + alpha.to_string() + " is not in I(" + std::to_string(params.ell) + "," +
                     std::to_string(params.m) + ")");
  }
  CodeSpec s;
  s.params = params;
  s.variant = CodeVariant::schubert;
  s.alpha = alpha;
  s.n = schubert_variety_size(alpha, params.q());
  s.k = static_cast<int>(nabla_set(alpha).size());
  return s;
}

std::vector<IndexTuple> CodeSpec::coordinates() const { return nabla_set(alpha); }

std::string CodeSpec::name() const {
  const std::string shape = "(" + std::to_string(params.ell) + "," + std::to_string(params.m) + ")";
  const std::string q = " q=" + params.f().spec_string();
  if (variant == CodeVariant::grassmann) return "C" + shape + q;
  return "C_{" + alpha.to_string() + "}" + shape + q;
}

std::string CodeSpec::to_json() const {
  nlohmann::ordered_json j;
  j["variant"] = variant == CodeVariant::grassmann ? "grassmann" : "schubert";
  j["q"] = params.f().spec_string();
  j["ell"] = std::to_string(params.ell);
  j["m"] = std::to_string(params.m);
  if (variant == CodeVariant::schubert) j["alpha"] = alpha.to_string();
  j["n"] = std::to_string(n);
  j["k"] = std::to_string(k);
  return j.dump();
}

// --- point tables and generator matrices --------------------------------------

PointTable build_point_table(const GrassmannParams& params, PointStream stream) {
  PointTable t{params, {}, {}};
  const std::uint64_t n = stream.size();
  t.points.reserve(n);
  t.coords.reserve(n * static_cast<std::size_t>(params.coordinate_count()));
  EchelonMatrix M;
  while (stream.next(M)) {
    const auto p = plucker(M).normalized();
    t.coords.insert(t.coords.end(), p.coords.begin(), p.coords.end());
    t.points.push_back(M);
  }
  return t;
}

PointTable grassmannian_table(const GrassmannParams& params, std::uint64_t point_limit) {
  return build_point_table(params, enumerate_grassmannian(params, point_limit));
}

GeneratorMatrix::GeneratorMatrix(CodeSpec spec, std::vector<gf::Code> columns)
    : spec_(std::move(spec)), columns_(std::move(columns)) {
  if (columns_.size() != spec_.n * static_cast<std::size_t>(spec_.k)) {
    throw UsageError("generator matrix data does not match n x k");
  }
}

int GeneratorMatrix::rank() const {
  // rank of the k x n matrix = rank of its transpose, stored row-major here
  return matrix_rank(spec_.params.f(), columns_, static_cast<int>(spec_.n), spec_.k);
}

bool GeneratorMatrix::has_zero_column() const {
  for (std::uint64_t j = 0; j < spec_.n; ++j) {
    const auto c = column(j);
    if (std::all_of(c.begin(), c.end(), [](gf::Code x) { return x == 0; })) return true;
  }
  return false;
}

GeneratorMatrix build_generator(const CodeSpec& spec, std::uint64_t point_limit) {
  if (spec.n > point_limit) {
    throw ResourceError(spec.name() + " has " + std::to_string(spec.n) + " points, limit is " +
                            std::to_string(point_limit),
                        spec.n, point_limit);
  }
  const auto& params = spec.params;
  const auto& F = params.f();
  const auto& space = index_space(params.ell, params.m);
  std::vector<int> keep;
  for (const auto& beta : spec.coordinates()) keep.push_back(space.rank(beta));
  std::vector<gf::Code> cols;
  cols.reserve(spec.n * keep.size());
  auto stream = enumerate_schubert_variety(spec.alpha, params);
  EchelonMatrix M;
  std::vector<gf::Code> col(keep.size());
  while (stream.next(M)) {
    const auto p = plucker(M);
    for (std::size_t i = 0; i < keep.size(); ++i) col[i] = p.coords[keep[i]];
    const auto lead = std::find_if(col.begin(), col.end(), [](gf::Code c) { return c != 0; });
    if (lead == col.end()) throw DomainError("point with zero restricted Plücker vector");
    const gf::Code s = F.inv(*lead);
    for (auto& c : col) cols.push_back(F.mul(c, s));
  }
  return GeneratorMatrix(spec, std::move(cols));
}

// --- classes -----------------------------------------------------------------

std::uint64_t class_count(int q, int k) {
  const mpz_class count = (ipow(q, static_cast<unsigned long>(k)) - 1) / (q - 1);
  if (!count.fits_ulong_p()) {
    throw ResourceError("(q^k-1)/(q-1) = " + count.get_str() + " does not fit in 64 bits", UINT64_MAX, 0);
  }
  return count.get_ui();
}

void decode_class(int q, std::uint64_t rank, std::span<gf::Code> out) {
  const int k = static_cast<int>(out.size());
  std::uint64_t offset = 0;
  std::uint64_t size = 1;
  int leading = -1;
  for (int t = 0; t < k; ++t) {
    if (rank - offset < size) {
      leading = k - 1 - t;
      break;
    }
    offset += size;
    size *= static_cast<std::uint64_t>(q);
  }
  if (leading < 0) throw UsageError("class rank out of range");
  std::uint64_t tail = rank - offset;
  for (int i = 0; i < leading; ++i) out[i] = 0;
  out[leading] = 1;
  for (int i = k - 1; i > leading; --i) {
    out[i] = static_cast<gf::Code>(tail % static_cast<std::uint64_t>(q));
    tail /= static_cast<std::uint64_t>(q);
  }
}

std::uint64_t class_rank(int q, std::span<const gf::Code> v) {
  const int k = static_cast<int>(v.size());
  int leading = 0;
  while (leading < k && v[leading] == 0) ++leading;
  if (leading == k || v[leading] != 1) throw UsageError("class_rank needs a normalized nonzero vector");
  std::uint64_t offset = 0;
  std::uint64_t size = 1;
  for (int t = 0; t < k - 1 - leading; ++t) {
    offset += size;
    size *= static_cast<std::uint64_t>(q);
  }
  std::uint64_t tail = 0;
  for (int i = leading + 1; i < k; ++i) tail = tail * static_cast<std::uint64_t>(q) + v[i];
  return offset + tail;
}

// --- weights -----------------------------------------------------------------

mpz_class WeightDistribution::total() const {
  mpz_class t = 0;
  for (const auto& [w, c] : counts) t += c;
  return t;
}

std::optional<std::uint64_t> WeightDistribution::min_weight() const {
  for (const auto& [w, c] : counts) {
    if (w != 0 && c != 0) return w;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> WeightDistribution::second_min_weight() const {
  const auto d = min_weight();
  if (!d) return std::nullopt;
  for (const auto& [w, c] : counts) {
    if (w > *d && c != 0) return w;
  }
  return std::nullopt;
}

std::string WeightDistribution::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = nlohmann::ordered_json::parse(spec.to_json());
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [w, n] : counts) c[std::to_string(w)] = n.get_str();
  j["counts"] = c;
  j["complete"] = complete;
  return j.dump(2) + "\n";
}

std::string WeightDistribution::to_csv() const {
  std::string s = "weight,count\n";
  for (const auto& [w, n] : counts) s += std::to_string(w) + "," + n.get_str() + "\n";
  return s;
}

std::uint64_t codeword_weight(const GeneratorMatrix& G, std::span<const gf::Code> coeffs) {
  const auto& F = G.spec().params.f();
  if (static_cast<int>(coeffs.size()) != G.rows()) throw UsageError("functional length differs from k");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](gf::Code c) { return c == 0; })) {
    throw DomainError("zero functional");
  }
  std::uint64_t weight = 0;
  for (std::uint64_t j = 0; j < G.cols(); ++j) {
    const auto col = G.column(j);
    gf::Code acc = 0;
    for (int i = 0; i < G.rows(); ++i) acc = F.add(acc, F.mul(coeffs[i], col[i]));
    weight += acc != 0;
  }
  return weight;
}

std::uint64_t codeword_weight(const DualFunctional& F, const CodeSpec& spec) {
  if (!(F.params() == spec.params)) throw UsageError("functional and code have different parameters");
  if (spec.variant == CodeVariant::schubert) {
    const auto& space = index_space(spec.params.ell, spec.params.m);
    for (int r = 0; r < space.size(); ++r) {
      if (F.coeffs()[r] != 0 && !bruhat_leq(space[r], spec.alpha)) {
        throw UsageError("functional is not supported on the Schubert coordinates");
      }
    }
  }
  std::uint64_t weight = 0;
  auto stream = enumerate_schubert_variety(spec.alpha, spec.params);
  EchelonMatrix M;
  while (stream.next(M)) weight += F.evaluate(plucker(M)) != 0;
  return weight;
}

void check_budget(const CodeSpec& spec, const SweepOptions& options) {
  const mpz_class classes = (ipow(spec.params.q(), static_cast<unsigned long>(spec.k)) - 1) / (spec.params.q() - 1);
  const mpz_class ops = classes * mpz_class(std::to_string(spec.n));
  if (ops > mpz_class(std::to_string(options.budget))) {
    throw ResourceError(spec.name() + " sweep needs " + ops.get_str() + " point evaluations, budget is " +
                            std::to_string(options.budget) + " (raise with --budget or PLUCKER_BUDGET)",
                        ops.fits_ulong_p() ? ops.get_ui() : UINT64_MAX, options.budget);
  }
}

std::vector<std::uint32_t> class_weights(const GeneratorMatrix& G, const SweepOptions& options) {
  check_budget(G.spec(), options);
  const std::uint64_t classes = class_count(G.spec().params.q(), G.spec().k);
  std::vector<std::uint32_t> out(classes);
  parallel_ranges(classes, worker_count(options, classes), [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
    sweep_range(G, lo, hi, [&](std::uint64_t r, std::uint32_t w) { out[r] = w; });
  });
  return out;
}

WeightDistribution distribution_from_class_weights(const CodeSpec& spec, std::span<const std::uint32_t> weights) {
  std::vector<std::uint64_t> hist(spec.n + 1, 0);
  for (auto w : weights) ++hist[w];
  WeightDistribution d{spec, {}, true};
  d.counts[0] = 1;
  const mpz_class scalars = spec.params.q() - 1;
  for (std::uint64_t w = 0; w <= spec.n; ++w) {
    if (hist[w] != 0) d.counts[w] += mpz_class(std::to_string(hist[w])) * scalars;
  }
  return d;
}

WeightDistribution weight_distribution(const GeneratorMatrix& G, const SweepOptions& options) {
  const auto& spec = G.spec();
  check_budget(spec, options);
  const std::uint64_t classes = class_count(spec.params.q(), spec.k);
  const unsigned workers = worker_count(options, classes);
  std::vector<std::vector<std::uint64_t>> hists(workers, std::vector<std::uint64_t>(spec.n + 1, 0));
  parallel_ranges(classes, workers, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    auto& h = hists[w];
    sweep_range(G, lo, hi, [&h](std::uint64_t, std::uint32_t weight) { ++h[weight]; });
  });
  WeightDistribution d{spec, {}, true};
  d.counts[0] = 1;
  const mpz_class scalars = spec.params.q() - 1;
  for (std::uint64_t w = 0; w <= spec.n; ++w) {
    std::uint64_t total = 0;
    for (const auto& h : hists) total += h[w];
    if (total != 0) d.counts[w] += mpz_class(std::to_string(total)) * scalars;
  }
  return d;
}

WeightDistribution weight_distribution(const CodeSpec& spec, const SweepOptions& options) {
  check_budget(spec, options);
  return weight_distribution(build_generator(spec), options);
}

// --- claims ------------------------------------------------------------------

WeightClaim min_distance(const CodeSpec& spec, const WeightDistribution* observed) {
  if (spec.variant != CodeVariant::grassmann) throw UsageError("min_distance is for the Grassmann variant");
  const int dim = spec.params.ell * (spec.params.m - spec.params.ell);
  WeightClaim c{ipow(spec.params.q(), static_cast<unsigned long>(dim)), false};
  if (observed && observed->complete) {
    const auto d = observed->min_weight();
    c.verified = d && mpz_class(std::to_string(*d)) == c.value;
  }
  return c;
}

WeightClaim second_min_weight(const CodeSpec& spec, const WeightDistribution* observed) {
  if (spec.variant != CodeVariant::grassmann) throw UsageError("second_min_weight is for the Grassmann variant");
  const int l = spec.params.ell;
  const int m = spec.params.m;
  if (l < 2 || l > m - 2) {
    throw DomainError("second minimum weight needs 2 <= l <= m-2; C(1,m) and C(m-1,m) have a single nonzero weight");
  }
  const unsigned long dim = static_cast<unsigned long>(l) * (m - l);
  WeightClaim c{ipow(spec.params.q(), dim) + ipow(spec.params.q(), dim - 2), false};
  if (observed && observed->complete) {
    const auto d2 = observed->second_min_weight();
    c.verified = d2 && mpz_class(std::to_string(*d2)) == c.value;
  }
  return c;
}

WeightClaim schubert_min_distance(const IndexTuple& alpha, const GrassmannParams& params,
                                  const WeightDistribution* observed) {
  if (alpha.ell() != params.ell || alpha.m() != params.m) throw UsageError("Schubert index shape mismatch");
  WeightClaim c{ipow(params.q(), static_cast<unsigned long>(delta(alpha))), false};
  if (observed && observed->complete) {
    const auto d = observed->min_weight();
    c.verified = d && mpz_class(std::to_string(*d)) == c.value;
  }
  return c;
}

// --- MacWilliams -------------------------------------------------------------

mpz_class krawtchouk(int q, std::uint64_t n, std::uint64_t j, std::uint64_t x) {
  mpz_class sum = 0;
  for (std::uint64_t s = 0; s <= j; ++s) {
    if (s > x || j - s > n - x) continue;
    mpz_class a;
    mpz_class b;
    mpz_bin_uiui(a.get_mpz_t(), x, s);
    mpz_bin_uiui(b.get_mpz_t(), n - x, j - s);
    mpz_class term = a * b * ipow(q - 1, j - s);
    if (s % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

MacWilliamsResult macwilliams_transform(const WeightDistribution& dist) {
  const std::uint64_t n = dist.spec.n;
  const int q = dist.spec.params.q();
  std::vector<mpz_class> numer(n + 1, 0);
  for (const auto& [i, a] : dist.counts) {
    if (a == 0) continue;
    // (j+1) K_{j+1} = ((n-j)(q-1) + j - q i) K_j - (q-1)(n-j+1) K_{j-1}
    mpz_class prev = 1;
    mpz_class cur = mpz_class(std::to_string(n)) * (q - 1) - mpz_class(std::to_string(i)) * q;
    numer[0] += a;
    if (n >= 1) numer[1] += a * cur;
    for (std::uint64_t j = 1; j < n; ++j) {
      const mpz_class nj = mpz_class(std::to_string(n - j));
      mpz_class next = (nj * (q - 1) + mpz_class(std::to_string(j)) - mpz_class(std::to_string(i)) * q) * cur -
                       mpz_class(q - 1) * (nj + 1) * prev;
      mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(j + 1));
      prev = std::move(cur);
      cur = std::move(next);
      numer[j + 1] += a * cur;
    }
  }
  MacWilliamsResult r;
  r.integral = true;
  r.nonnegative = true;
  const mpz_class size = dist.total();
  r.dual.resize(n + 1);
  for (std::uint64_t j = 0; j <= n; ++j) {
    if (!mpz_divisible_p(numer[j].get_mpz_t(), size.get_mpz_t())) r.integral = false;
    mpz_fdiv_q(r.dual[j].get_mpz_t(), numer[j].get_mpz_t(), size.get_mpz_t());
    if (numer[j] < 0) r.nonnegative = false;
  }
  return r;
}

}  // namespace plucker
