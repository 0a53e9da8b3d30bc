#pragma once

// Exact arithmetic in small finite fields F_q, q = p^e.
//
// Elements are carried as a one-byte code c_0 + c_1 p + ... + c_{e-1} p^{e-1}
// where (c_0, ..., c_{e-1}) are the coefficients of the polynomial
// representative modulo the field's irreducible modulus. All arithmetic goes
// through precomputed q x q tables, so the hot loops in the enumeration code
// work on raw codes and a `const Field&`.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plucker::gf {

using Code = std::uint8_t;

inline constexpr int kDefaultMaxOrder = 16;
inline constexpr int kHardMaxOrder = 256;

class Field {
 public:
  // Builds F_{p^e} with the given monic modulus (coefficients low degree
  // first, length e + 1). For e = 1 pass {0, 1}. Throws UsageError if p is
  // not prime, q exceeds max_order, or the modulus is reducible.
  Field(int p, int e, std::vector<int> modulus, int max_order = kDefaultMaxOrder);

  // Shared instance from the built-in modulus table. Instances live for the
  // whole program, so pointers to them are stable.
  static const Field& get(int q);
  // "p" or "p^e", e.g. "3", "2^2".
  static const Field& parse(std::string_view spec);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  std::span<const int> modulus() const { return modulus_; }
  std::string spec_string() const;

  Code add(Code a, Code b) const { return add_[idx(a, b)]; }
  Code sub(Code a, Code b) const { return add_[idx(a, neg_[b])]; }
  Code neg(Code a) const { return neg_[a]; }
  Code mul(Code a, Code b) const { return mul_[idx(a, b)]; }
  Code inv(Code a) const;  // DomainError on zero
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t exponent) const;

  // Row of the multiplication table for a fixed left factor.
  const Code* mul_row(Code a) const { return mul_.data() + static_cast<std::size_t>(a) * q_; }
  const Code* add_row(Code a) const { return add_.data() + static_cast<std::size_t>(a) * q_; }

  bool is_valid(int code) const { return code >= 0 && code < q_; }
  std::vector<int> coefficients(Code a) const;
  Code from_coefficients(std::span<const int> coeffs) const;
  Code from_integer(long long value) const;  // image of an integer under Z -> F_p -> F_q

  // Integer for e = 1, "(c0,c1,...)" for e > 1.
  std::string format(Code a) const;
  // Accepts the format() output, a plain integer code, or for e = 1 any
  // integer (reduced mod p, so "-1" works).
  Code parse_element(std::string_view text) const;

 private:
  std::size_t idx(Code a, Code b) const { return static_cast<std::size_t>(a) * q_ + b; }
  Code poly_mul(Code a, Code b) const;

  int p_;
  int e_;
  int q_;
  std::vector<int> modulus_;
  std::vector<Code> add_;
  std::vector<Code> mul_;
  std::vector<Code> neg_;
  std::vector<Code> inv_;
};

bool is_prime(int n);
// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
bool is_irreducible(int p, std::span<const int> monic_poly);

// Checked scalar: carries its field, mixing fields throws UsageError.
class FieldElement {
 public:
  FieldElement(const Field& field, Code code);

  const Field& field() const { return *field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {*field_, field_->neg(code_)}; }
  FieldElement inv() const { return {*field_, field_->inv(code_)}; }

  bool operator==(const FieldElement& o) const { return field_ == o.field_ && code_ == o.code_; }
  std::string to_string() const { return field_->format(code_); }

 private:
  void check_same(const FieldElement& o) const;

  const Field* field_;
  Code code_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

// All q elements, zero first, ascending code order.
std::vector<FieldElement> enumerate_field(const Field& field);

// Fast path for F_2: rows of a matrix packed into machine words (bit j is
// column j). Returns the determinant of the square matrix formed by the
// selected columns of `rows`, i.e. the rank-deficiency test by elimination.
namespace gf2 {
bool minor(std::span<const std::uint32_t> rows, std::uint32_t column_mask);
int rank(std::vector<std::uint64_t> rows);
}  // namespace gf2

}  // namespace plucker::gf
