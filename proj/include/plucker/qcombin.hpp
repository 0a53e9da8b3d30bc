#pragma once

// Index tuples I(l, m), the Bruhat order with its down-sets, and Gaussian
// binomial arithmetic.
//
// Tuples are 1-based and strictly increasing. Every ordered listing of
// I(l, m) in this library is lexicographic; coordinate vectors, generator
// matrix rows and serialized maps all use that order.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace plucker {

inline constexpr int kMaxAmbientDim = 16;

class IndexTuple {
 public:
  IndexTuple() = default;
  // Throws UsageError unless 1 <= e_1 < ... < e_l <= m.
  IndexTuple(std::vector<int> entries, int m);

  // "1,3,4"
  static IndexTuple parse(std::string_view text, int m);
  static IndexTuple from_mask(std::uint32_t mask, int m);
  static IndexTuple minimal(int ell, int m);  // (1, ..., l)
  static IndexTuple maximal(int ell, int m);  // (m-l+1, ..., m)

  int ell() const { return static_cast<int>(entries_.size()); }
  int m() const { return m_; }
  int operator[](int i) const { return entries_[i]; }  // 0-based slot
  const std::vector<int>& entries() const { return entries_; }
  int back() const { return entries_.back(); }
  // bit (j-1) set for each entry j
  std::uint32_t mask() const { return mask_; }

  std::string to_string() const;

  bool operator==(const IndexTuple& o) const { return m_ == o.m_ && entries_ == o.entries_; }
  std::strong_ordering operator<=>(const IndexTuple& o) const { return entries_ <=> o.entries_; }

 private:
  std::vector<int> entries_;
  int m_ = 0;
  std::uint32_t mask_ = 0;
};

// Lexicographic listing of I(l, m) with O(1) rank lookup by mask. Shared,
// immutable instances; see index_space().
class IndexSpace {
 public:
  IndexSpace(int ell, int m);

  int ell() const { return ell_; }
  int m() const { return m_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  const std::vector<IndexTuple>& tuples() const { return tuples_; }
  const IndexTuple& operator[](int rank) const { return tuples_[rank]; }
  // -1 if the mask is not an l-subset of {1..m}
  int rank(std::uint32_t mask) const;
  int rank(const IndexTuple& t) const { return rank(t.mask()); }

 private:
  int ell_;
  int m_;
  std::vector<IndexTuple> tuples_;
  std::vector<int> rank_by_mask_;
};

// Cached per (l, m); 0 <= l <= m <= kMaxAmbientDim.
const IndexSpace& index_space(int ell, int m);

std::vector<IndexTuple> enumerate_index_tuples(int ell, int m);

// sum(alpha) - l(l+1)/2, the dimension of the Schubert cell.
int delta(const IndexTuple& alpha);

// Componentwise alpha_i <= beta_i.
bool bruhat_leq(const IndexTuple& alpha, const IndexTuple& beta);

// Down-set {beta <= alpha} and its complement, both in lexicographic order.
std::vector<IndexTuple> nabla_set(const IndexTuple& alpha);
std::vector<IndexTuple> delta_set(const IndexTuple& alpha);

// The element of I(m-l, m) partitioning {1..m} together with alpha.
IndexTuple complement(const IndexTuple& alpha);

// Sign of the shuffle permutation listing `first` then `second`, where the
// two tuples are disjoint. +1 or -1.
int shuffle_sign(const IndexTuple& first, const IndexTuple& second);

// --- Gaussian binomials -----------------------------------------------------

mpz_class ipow(long q, unsigned long exponent);

// Product formula; 0 outside 0 <= l <= m.
mpz_class gaussian_binomial(int m, int ell, long q);

// [m l]_q - q^{l(m-l)}
mpz_class e_bound(int ell, int m, long q);
// e(l, m) - q^{l(m-l)-2}; DomainError unless l(m-l) >= 2
mpz_class e_prime_bound(int ell, int m, long q);

struct IdentityCheck {
  std::string identity;
  std::string relation;  // "=" or "<"
  mpz_class lhs;
  mpz_class rhs;
  bool pass = false;
};

struct IdentityReport {
  int m = 0;
  int ell = 0;
  long q = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const;
  std::string to_json() const;
};

// (a) symmetry, (b) q-Pascal, (c) ratio form. (c) is checked cross-multiplied
// and is skipped for l = m where its denominator vanishes.
IdentityReport verify_gaussian_identities(int m, int ell, long q);

// (a),(b) need 1 <= l <= m-1; (c),(d) need 2 <= l <= m-2. Clauses outside
// their range are omitted from the report.
IdentityReport verify_e_inequalities(int ell, int m, long q);

}  // namespace plucker
