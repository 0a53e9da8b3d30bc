#pragma once

// Points of the Grassmannian G(l, V_m) over F_q as right-row-reduced echelon
// matrices, their Plücker coordinates, Schubert cells and varieties, and the
// decomposition of the pivot-in-last-column locus into strings.
//
// Echelon convention: the pivot of a row is its LAST nonzero entry and equals
// 1, pivots move strictly right going down, and every pivot column is zero
// outside its pivot. Entries right of a row's pivot are therefore zero and the
// free entries of row i sit in columns j < alpha_i that are not pivots.

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "plucker/gf.hpp"
#include "plucker/qcombin.hpp"

namespace plucker {

struct GrassmannParams {
  int ell = 0;
  int m = 0;
  const gf::Field* field = nullptr;

  GrassmannParams() = default;
  // Throws UsageError unless 1 <= l <= m <= kMaxAmbientDim.
  GrassmannParams(int ell, int m, const gf::Field& field);

  const gf::Field& f() const { return *field; }
  int q() const { return field->q(); }
  int coordinate_count() const { return index_space(ell, m).size(); }
  bool operator==(const GrassmannParams& o) const {
    return ell == o.ell && m == o.m && field == o.field;
  }
};

class EchelonMatrix {
 public:
  EchelonMatrix() = default;
  // Validates the echelon conditions and computes the pivots; DomainError if
  // the entries are not in right-row-reduced echelon form.
  EchelonMatrix(const GrassmannParams& params, std::vector<gf::Code> entries);

  // Pivot-only matrix with all free entries zero.
  static EchelonMatrix pivot_only(const GrassmannParams& params, const IndexTuple& pivots);

  const GrassmannParams& params() const { return params_; }
  int rows() const { return params_.ell; }
  int cols() const { return params_.m; }
  gf::Code at(int row, int col) const { return entries_[static_cast<std::size_t>(row) * params_.m + col]; }
  const std::vector<gf::Code>& entries() const { return entries_; }
  const IndexTuple& pivots() const { return pivots_; }

  // pivot of the last row sits in column m
  bool in_top_stratum() const { return pivots_.back() == params_.m; }

  // "0 1 0 0;1 0 1 1"
  std::string to_string() const;

  bool operator==(const EchelonMatrix& o) const {
    return params_ == o.params_ && entries_ == o.entries_;
  }

 private:
  friend class PointStream;
  EchelonMatrix(const GrassmannParams& params, std::vector<gf::Code> entries, IndexTuple pivots)
      : params_(params), entries_(std::move(entries)), pivots_(std::move(pivots)) {}

  GrassmannParams params_;
  std::vector<gf::Code> entries_;
  IndexTuple pivots_;
};

// Free positions (row, col) of the cell with pivot tuple alpha, row-major.
std::vector<std::pair<int, int>> free_positions(const IndexTuple& alpha);

// Lazy enumeration of the points in a list of Schubert cells, cell by cell in
// the given order, free entries as an odometer (last free entry fastest)
// running through the field in code order. Independent streams over disjoint
// cell lists can be consumed in parallel.
class PointStream {
 public:
  PointStream(const GrassmannParams& params, std::vector<IndexTuple> cells);

  // Advances to the next point; false once exhausted.
  bool next(EchelonMatrix& out);
  std::uint64_t size() const;  // total number of points, sum of q^delta

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = EchelonMatrix;
    using difference_type = std::ptrdiff_t;
    using pointer = const EchelonMatrix*;
    using reference = const EchelonMatrix&;

    iterator() = default;
    explicit iterator(PointStream* s) : stream_(s) { ++*this; }
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++() {
      if (!stream_->next(current_)) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return stream_ == o.stream_; }

   private:
    PointStream* stream_ = nullptr;
    EchelonMatrix current_;
  };

  iterator begin() { return iterator(this); }
  iterator end() { return iterator(); }

 private:
  bool load_cell();

  GrassmannParams params_;
  std::vector<IndexTuple> cells_;
  std::size_t cell_ = 0;
  bool started_ = false;
  std::vector<std::pair<int, int>> free_;
  std::vector<gf::Code> digits_;
  std::vector<gf::Code> base_;
};

inline constexpr std::uint64_t kDefaultPointLimit = std::uint64_t{1} << 24;

// Whole Grassmannian, cells in lexicographic pivot order. ResourceError when
// [m l]_q exceeds point_limit.
PointStream enumerate_grassmannian(const GrassmannParams& params,
                                   std::uint64_t point_limit = kDefaultPointLimit);
PointStream enumerate_cell(const IndexTuple& alpha, const GrassmannParams& params);
// Union of the cells C_beta for beta in nabla(alpha), lexicographic.
PointStream enumerate_schubert_variety(const IndexTuple& alpha, const GrassmannParams& params);

std::vector<EchelonMatrix> collect(PointStream&& stream);

// Number of points of the Schubert variety: sum over nabla(alpha) of q^delta.
std::uint64_t schubert_variety_size(const IndexTuple& alpha, long q);

// Canonical echelon representative of the row space of an l x m matrix of
// full rank; DomainError if the rows are dependent.
EchelonMatrix canonical_form(const GrassmannParams& params, std::vector<gf::Code> rows);

// --- Plücker coordinates ---------------------------------------------------

struct PluckerVector {
  GrassmannParams params;
  std::vector<gf::Code> coords;  // lexicographic over I(l, m)

  gf::Code operator[](const IndexTuple& alpha) const;
  bool is_zero() const;
  // Scaled so the first nonzero coordinate is 1.
  PluckerVector normalized() const;
  // {"1,2": "1", ...} in lexicographic key order
  std::string to_json() const;
  bool operator==(const PluckerVector& o) const { return params == o.params && coords == o.coords; }
};

// Every l x l minor on columns alpha. Elimination over the field tables for
// general q and bit-packed elimination for q = 2.
PluckerVector plucker(const EchelonMatrix& M);

// Determinant of a square matrix by elimination, exposed for the oracles.
gf::Code determinant(const gf::Field& field, std::vector<gf::Code> square, int n);

// --- strings ---------------------------------------------------------------

struct StringLabel {
  GrassmannParams params;
  std::vector<gf::Code> nu;  // length m - l
  bool operator==(const StringLabel& o) const { return params == o.params && nu == o.nu; }
};

// Last-row entries at the non-pivot columns of the truncated matrix.
// DomainError unless the last pivot is in column m.
StringLabel string_label(const EchelonMatrix& M);

// phi_nu applied to every (l-1) x (m-1) echelon matrix; exactly s^{-1}(nu).
std::vector<EchelonMatrix> string_fiber(const StringLabel& nu);

// Single lift phi_nu(M') for an (l-1) x (m-1) echelon matrix M'.
EchelonMatrix lift_to_string(const EchelonMatrix& truncated, const StringLabel& nu);

// Deletes the last row and column: M -> M-check in G(l-1, V_{m-1}).
// DomainError unless l >= 2 and the last pivot is in column m.
EchelonMatrix project_tau(const EchelonMatrix& M);

// All q^{m-l} labels in odometer order.
std::vector<StringLabel> enumerate_string_labels(const GrassmannParams& params);

}  // namespace plucker
