#include "plucker/qcombin.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <memory>
#include <mutex>

#include "json.hpp"

#include "plucker/error.hpp"

namespace plucker {

IndexTuple::IndexTuple(std::vector<int> entries, int m) : entries_(std::move(entries)), m_(m) {
  if (m < 0 || m > kMaxAmbientDim) throw UsageError("ambient dimension out of range: " + std::to_string(m));
  if (static_cast<int>(entries_.size()) > m) throw UsageError("index tuple longer than m");
  int prev = 0;
  for (int v : entries_) {
    if (v <= prev || v > m) {
      throw UsageError("index tuple must satisfy 1 <= a_1 < ... < a_l <= " + std::to_string(m));
    }
    mask_ |= 1U << (v - 1);
    prev = v;
  }
}

IndexTuple IndexTuple::parse(std::string_view text, int m) {
  std::vector<int> entries;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    auto part = rest.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw UsageError("malformed index tuple '" + std::string(text) + "'");
    }
    entries.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return IndexTuple(std::move(entries), m);
}

IndexTuple IndexTuple::from_mask(std::uint32_t mask, int m) {
  std::vector<int> entries;
  for (int j = 0; j < m; ++j) {
    if (mask & (1U << j)) entries.push_back(j + 1);
  }
  if ((mask >> m) != 0) throw UsageError("mask has bits beyond m");
  return IndexTuple(std::move(entries), m);
}

IndexTuple IndexTuple::minimal(int ell, int m) {
  std::vector<int> e(ell);
  for (int i = 0; i < ell; ++i) e[i] = i + 1;
  return IndexTuple(std::move(e), m);
}

IndexTuple IndexTuple::maximal(int ell, int m) {
  std::vector<int> e(ell);
  for (int i = 0; i < ell; ++i) e[i] = m - ell + 1 + i;
  return IndexTuple(std::move(e), m);
}

std::string IndexTuple::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s;
}

IndexSpace::IndexSpace(int ell, int m) : ell_(ell), m_(m) {
  if (ell < 0 || m > kMaxAmbientDim || ell > m) {
    throw UsageError("need 0 <= l <= m <= " + std::to_string(kMaxAmbientDim));
  }
  rank_by_mask_.assign(std::size_t{1} << m, -1);
  // lexicographic on entries == recursive choose with smallest first
  std::vector<int> cur(ell);
  for (int i = 0; i < ell; ++i) cur[i] = i + 1;
  while (true) {
    tuples_.emplace_back(cur, m);
    rank_by_mask_[tuples_.back().mask()] = static_cast<int>(tuples_.size()) - 1;
    int i = ell - 1;
    while (i >= 0 && cur[i] == m - ell + 1 + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < ell; ++j) cur[j] = cur[j - 1] + 1;
  }
}

int IndexSpace::rank(std::uint32_t mask) const {
  if (mask >= rank_by_mask_.size()) return -1;
  return rank_by_mask_[mask];
}

const IndexSpace& index_space(int ell, int m) {
  if (ell < 0 || m < 0 || m > kMaxAmbientDim || ell > m) {
    throw UsageError("need 0 <= l <= m <= " + std::to_string(kMaxAmbientDim));
  }
  static std::mutex mutex;
  static std::array<std::unique_ptr<IndexSpace>, (kMaxAmbientDim + 1) * (kMaxAmbientDim + 1)> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(m) * (kMaxAmbientDim + 1) + ell];
  if (!slot) slot = std::make_unique<IndexSpace>(ell, m);
  return *slot;
}

std::vector<IndexTuple> enumerate_index_tuples(int ell, int m) {
  if (ell < 1 || ell > m) throw UsageError("enumerate_index_tuples needs 1 <= l <= m");
  return index_space(ell, m).tuples();
}

int delta(const IndexTuple& alpha) {
  int sum = 0;
  for (int v : alpha.entries()) sum += v;
  return sum - alpha.ell() * (alpha.ell() + 1) / 2;
}

bool bruhat_leq(const IndexTuple& alpha, const IndexTuple& beta) {
  if (alpha.ell() != beta.ell() || alpha.m() != beta.m()) {
    throw UsageError("Bruhat comparison of tuples with different shapes");
  }
  for (int i = 0; i < alpha.ell(); ++i) {
    if (alpha[i] > beta[i]) return false;
  }
  return true;
}

std::vector<IndexTuple> nabla_set(const IndexTuple& alpha) {
  std::vector<IndexTuple> out;
  for (const auto& beta : index_space(alpha.ell(), alpha.m()).tuples()) {
    if (bruhat_leq(beta, alpha)) out.push_back(beta);
  }
  return out;
}

std::vector<IndexTuple> delta_set(const IndexTuple& alpha) {
  std::vector<IndexTuple> out;
  for (const auto& beta : index_space(alpha.ell(), alpha.m()).tuples()) {
    if (!bruhat_leq(beta, alpha)) out.push_back(beta);
  }
  return out;
}

IndexTuple complement(const IndexTuple& alpha) {
  const std::uint32_t full = (alpha.m() == 32) ? ~0U : ((1U << alpha.m()) - 1);
  return IndexTuple::from_mask(full & ~alpha.mask(), alpha.m());
}

int shuffle_sign(const IndexTuple& first, const IndexTuple& second) {
  // inversions: pairs (a in first, b in second) with a > b
  int inversions = 0;
  for (int a : first.entries()) {
    for (int b : second.entries()) {
      if (a == b) throw UsageError("shuffle_sign of overlapping tuples");
      if (a > b) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

mpz_class ipow(long q, unsigned long exponent) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), exponent);
  return r;
}

mpz_class gaussian_binomial(int m, int ell, long q) {
  if (ell < 0 || ell > m) return 0;
  mpz_class num = 1;
  mpz_class den = 1;
  for (int i = 0; i < ell; ++i) {
    num *= ipow(q, m) - ipow(q, i);
    den *= ipow(q, ell) - ipow(q, i);
  }
  return num / den;
}

mpz_class e_bound(int ell, int m, long q) {
  if (ell < 0 || ell > m) throw DomainError("e(l, m) needs 0 <= l <= m");
  return gaussian_binomial(m, ell, q) - ipow(q, static_cast<unsigned long>(ell) * (m - ell));
}

mpz_class e_prime_bound(int ell, int m, long q) {
  const long dim = static_cast<long>(ell) * (m - ell);
  if (ell < 0 || ell > m || dim < 2) throw DomainError("e'(l, m) needs l(m-l) >= 2");
  return e_bound(ell, m, q) - ipow(q, static_cast<unsigned long>(dim - 2));
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

std::string IdentityReport::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = std::to_string(m);
  j["ell"] = std::to_string(ell);
  j["q"] = std::to_string(q);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"identity", c.identity},
                           {"relation", c.relation},
                           {"lhs", c.lhs.get_str()},
                           {"rhs", c.rhs.get_str()},
                           {"pass", c.pass}});
  }
  j["pass"] = passed();
  return j.dump();
}

namespace {

IdentityCheck equality(std::string name, mpz_class lhs, mpz_class rhs) {
  const bool ok = lhs == rhs;
  return {std::move(name), "=", std::move(lhs), std::move(rhs), ok};
}

IdentityCheck strict_less(std::string name, mpz_class lhs, mpz_class rhs) {
  const bool ok = lhs < rhs;
  return {std::move(name), "<", std::move(lhs), std::move(rhs), ok};
}

}  // namespace

IdentityReport verify_gaussian_identities(int m, int ell, long q) {
  if (ell < 1 || ell > m) throw UsageError("identities need 1 <= l <= m");
  IdentityReport r{m, ell, q, {}};
  const mpz_class g = gaussian_binomial(m, ell, q);
  r.checks.push_back(equality("symmetry", g, gaussian_binomial(m, m - ell, q)));
  r.checks.push_back(equality(
      "q-pascal", g,
      gaussian_binomial(m - 1, ell, q) + ipow(q, m - ell) * gaussian_binomial(m - 1, ell - 1, q)));
  if (ell < m) {
    // [m l] (q^{m-l} - 1) = (q^m - 1) [m-1 l], plus exact divisibility
    const mpz_class num = (ipow(q, m) - 1) * gaussian_binomial(m - 1, ell, q);
    const mpz_class den = ipow(q, m - ell) - 1;
    auto check = equality("ratio", g * den, num);
    check.pass = check.pass && mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) != 0;
    r.checks.push_back(std::move(check));
  }
  return r;
}

IdentityReport verify_e_inequalities(int ell, int m, long q) {
  IdentityReport r{m, ell, q, {}};
  if (ell < 1 || ell > m - 1) return r;
  const mpz_class qm1 = ipow(q, m) - 1;
  const mpz_class qml1 = ipow(q, m - ell) - 1;
  // (a): e(l, m-1) (q^m-1)/(q^{m-l}-1) < e(l, m), cross-multiplied
  r.checks.push_back(strict_less("e-ratio-strict", e_bound(ell, m - 1, q) * qm1, e_bound(ell, m, q) * qml1));
  // (b)
  r.checks.push_back(equality("e-pascal",
                              gaussian_binomial(m - 1, ell, q) + ipow(q, m - ell) * e_bound(ell - 1, m - 1, q),
                              e_bound(ell, m, q)));
  if (ell >= 2 && ell <= m - 2) {
    r.checks.push_back(strict_less("e-prime-ratio-strict", e_prime_bound(ell, m - 1, q) * qm1,
                                   e_prime_bound(ell, m, q) * qml1));
    r.checks.push_back(equality(
        "e-prime-pascal",
        gaussian_binomial(m - 1, ell, q) + ipow(q, m - ell) * e_prime_bound(ell - 1, m - 1, q),
        e_prime_bound(ell, m, q)));
  }
  return r;
}

}  // namespace plucker
