#include "plucker/gf.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>

#include "plucker/error.hpp"

namespace plucker::gf {

namespace {

// Polynomials over F_p as coefficient vectors, low degree first.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  int lead_inv = 1;
  while ((lead_inv * b.back()) % p != 1) ++lead_inv;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int factor = (a.back() * lead_inv) % p;
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

struct TableEntry {
  int p;
  int e;
  std::vector<int> modulus;
};

const std::map<int, TableEntry>& builtin_table() {
  static const std::map<int, TableEntry> table = {
      {2, {2, 1, {0, 1}}},
      {3, {3, 1, {0, 1}}},
      {4, {2, 2, {1, 1, 1}}},        // x^2 + x + 1
      {5, {5, 1, {0, 1}}},
      {7, {7, 1, {0, 1}}},
      {8, {2, 3, {1, 1, 0, 1}}},     // x^3 + x + 1
      {9, {3, 2, {1, 0, 1}}},        // x^2 + 1
      {11, {11, 1, {0, 1}}},
      {13, {13, 1, {0, 1}}},
      {16, {2, 4, {1, 1, 0, 0, 1}}}, // x^4 + x + 1
  };
  return table;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(int p, std::span<const int> monic_poly) {
  Poly f(monic_poly.begin(), monic_poly.end());
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    // every monic polynomial of degree d: p^d choices of lower coefficients
    const int count = ipow(p, d);
    for (int idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      int t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(int p, int e, std::vector<int> modulus, int max_order)
    : p_(p), e_(e), q_(0), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw UsageError("field extension degree must be >= 1");
  if (max_order > kHardMaxOrder) max_order = kHardMaxOrder;
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > max_order) {
      throw UsageError("field order " + std::to_string(p) + "^" + std::to_string(e) +
                       " exceeds the configured maximum " + std::to_string(max_order));
    }
  }
  q_ = static_cast<int>(q);
  if (static_cast<int>(modulus_.size()) != e + 1 || modulus_.back() != 1) {
    throw UsageError("modulus must be monic of degree e");
  }
  for (int c : modulus_) {
    if (c < 0 || c >= p) throw UsageError("modulus coefficients must lie in [0, p)");
  }
  if (e > 1 && !is_irreducible(p, modulus_)) throw UsageError("modulus is reducible over F_p");

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    const auto ca = coefficients(static_cast<Code>(a));
    std::vector<int> cn(e_);
    for (int i = 0; i < e_; ++i) cn[i] = (p_ - ca[i]) % p_;
    neg_[a] = from_coefficients(cn);
    for (int b = 0; b < q_; ++b) {
      const auto cb = coefficients(static_cast<Code>(b));
      std::vector<int> cs(e_);
      for (int i = 0; i < e_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
      add_[idx(a, b)] = from_coefficients(cs);
      mul_[idx(a, b)] = poly_mul(static_cast<Code>(a), static_cast<Code>(b));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[idx(a, b)] == 1) {
        inv_[a] = static_cast<Code>(b);
        break;
      }
    }
  }
}

Code Field::poly_mul(Code a, Code b) const {
  if (e_ == 1) return static_cast<Code>((static_cast<int>(a) * b) % p_);
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Poly prod(2 * e_ - 1, 0);
  for (int i = 0; i < e_; ++i) {
    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  }
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(e_, 0);
  return from_coefficients(r);
}

const Field& Field::get(int q) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Field>> cache;
  const auto& table = builtin_table();
  const auto it = table.find(q);
  if (it == table.end()) {
    throw UsageError("unsupported field order q=" + std::to_string(q) +
                     " (supported: 2,3,4,5,7,8,9,11,13,16)");
  }
  std::lock_guard lock(mutex);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<Field>(it->second.p, it->second.e, it->second.modulus);
  return *slot;
}

const Field& Field::parse(std::string_view spec) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("malformed field spec '" + std::string(spec) + "', expected p or p^e");
    }
    return v;
  };
  const auto caret = spec.find('^');
  if (caret == std::string_view::npos) return get(parse_int(spec));
  const int p = parse_int(spec.substr(0, caret));
  const int e = parse_int(spec.substr(caret + 1));
  if (!is_prime(p) || e < 1 || e > 8) {
    throw UsageError("malformed field spec '" + std::string(spec) + "'");
  }
  return get(ipow(p, e));
}

std::string Field::spec_string() const {
  return e_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(e_);
}

Code Field::inv(Code a) const {
  if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  return inv_[a];
}

Code Field::pow(Code a, std::uint64_t exponent) const {
  Code result = 1;
  Code base = a;
  while (exponent != 0) {
    if (exponent & 1U) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1U;
  }
  return result;
}

std::vector<int> Field::coefficients(Code a) const {
  std::vector<int> c(e_);
  int t = a;
  for (int i = 0; i < e_; ++i) {
    c[i] = t % p_;
    t /= p_;
  }
  return c;
}

Code Field::from_coefficients(std::span<const int> coeffs) const {
  int code = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    code = code * p_ + ((coeffs[i] % p_) + p_) % p_;
  }
  return static_cast<Code>(code);
}

Code Field::from_integer(long long value) const {
  return static_cast<Code>(((value % p_) + p_) % p_);
}

std::string Field::format(Code a) const {
  if (e_ == 1) return std::to_string(a);
  std::string s = "(";
  const auto c = coefficients(a);
  for (int i = 0; i < e_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Code Field::parse_element(std::string_view text) const {
  auto fail = [&]() -> Code {
    throw UsageError("malformed element '" + std::string(text) + "' for F_" + std::to_string(q_));
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return fail();
  if (text.front() == '(') {
    if (text.back() != ')') return fail();
    text = text.substr(1, text.size() - 2);
    std::vector<int> coeffs;
    while (true) {
      const auto comma = text.find(',');
      const auto part = text.substr(0, comma);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc{} || ptr != part.data() + part.size() || v < 0 || v >= p_) return fail();
      coeffs.push_back(v);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    if (static_cast<int>(coeffs.size()) != e_) return fail();
    return from_coefficients(coeffs);
  }
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return fail();
  if (e_ == 1) return from_integer(v);
  if (v < 0 || v >= q_) return fail();
  return static_cast<Code>(v);
}

FieldElement::FieldElement(const Field& field, Code code) : field_(&field), code_(code) {
  if (!field.is_valid(code)) throw UsageError("element code out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_) {
    throw UsageError("mixed fields: F_" + field_->spec_string() + " and F_" + o.field_->spec_string());
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->sub(code_, o.code_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->mul(code_, o.code_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->div(code_, o.code_)};
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }

std::vector<FieldElement> enumerate_field(const Field& field) {
  std::vector<FieldElement> out;
  out.reserve(field.q());
  for (int c = 0; c < field.q(); ++c) out.emplace_back(field, static_cast<Code>(c));
  return out;
}

namespace gf2 {

bool minor(std::span<const std::uint32_t> rows, std::uint32_t column_mask) {
  // compress every row onto the selected columns, then eliminate
  std::uint32_t packed[32];
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t out = 0;
    int bit = 0;
    for (std::uint32_t m = column_mask; m != 0; m &= m - 1, ++bit) {
      if (rows[i] & (m & -m)) out |= 1U << bit;
    }
    packed[i] = out;
  }
  for (std::size_t col = 0; col < n; ++col) {
    const std::uint32_t b = 1U << col;
    std::size_t piv = col;
    while (piv < n && !(packed[piv] & b)) ++piv;
    if (piv == n) return false;
    std::swap(packed[piv], packed[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (packed[r] & b) packed[r] ^= packed[col];
    }
  }
  return true;
}

int rank(std::vector<std::uint64_t> rows) {
  int r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + r, rows.end(), [b](std::uint64_t x) { return x & b; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + r, it);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) != r && (rows[i] & b)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

}  // namespace gf2

}  // namespace plucker::gf
