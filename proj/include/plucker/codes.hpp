#pragma once

// Grassmann and Schubert codes as projective systems and the exact
// weight-distribution engine.
//
// A codeword is indexed by a functional c on the Plücker coordinates; its
// weight is the number of points w of the projective system with
// sum c_a p_a(w) != 0. Weights are constant on scalar classes, so the sweep
// visits one representative per class (first nonzero coefficient 1) and
// multiplies counts by q - 1.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "plucker/exterior.hpp"
#include "plucker/grassmann.hpp"
#include "plucker/qcombin.hpp"

namespace plucker {

enum class CodeVariant { grassmann, schubert };

struct CodeSpec {
  GrassmannParams params;
  CodeVariant variant = CodeVariant::grassmann;
  IndexTuple alpha;  // maximal tuple for the Grassmann variant
  std::uint64_t n = 0;
  int k = 0;

  static CodeSpec grassmann(const GrassmannParams& params);
  static CodeSpec schubert(const GrassmannParams& params, const IndexTuple& alpha);

  // Coordinate tuples carried by the code: nabla(alpha), lexicographic.
  std::vector<IndexTuple> coordinates() const;
  std::string name() const;  // "C(2,4) q=2" or "C_{1,4}(2,4) q=2"
  std::string to_json() const;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000'000ULL;

struct SweepOptions {
  unsigned parallelism = 1;
  std::uint64_t budget = kDefaultBudget;  // max (class count) x n
};

// Points of the projective system with their full Plücker vectors, built
// once and shared read-only by the sweeps.
struct PointTable {
  GrassmannParams params;
  std::vector<EchelonMatrix> points;
  std::vector<gf::Code> coords;  // point-major, k = C(m, l) per point, normalized

  std::size_t size() const { return points.size(); }
  int k() const { return params.coordinate_count(); }
  std::span<const gf::Code> point(std::size_t j) const {
    return {coords.data() + j * static_cast<std::size_t>(k()), static_cast<std::size_t>(k())};
  }
};

PointTable build_point_table(const GrassmannParams& params, PointStream stream);
PointTable grassmannian_table(const GrassmannParams& params, std::uint64_t point_limit = kDefaultPointLimit);

class GeneratorMatrix {
 public:
  GeneratorMatrix(CodeSpec spec, std::vector<gf::Code> columns);

  const CodeSpec& spec() const { return spec_; }
  int rows() const { return spec_.k; }
  std::uint64_t cols() const { return spec_.n; }
  // Column j: the normalized (restricted) Plücker vector of point j.
  std::span<const gf::Code> column(std::uint64_t j) const {
    return {columns_.data() + j * static_cast<std::size_t>(spec_.k), static_cast<std::size_t>(spec_.k)};
  }
  const std::vector<gf::Code>& data() const { return columns_; }
  int rank() const;
  bool has_zero_column() const;

 private:
  CodeSpec spec_;
  std::vector<gf::Code> columns_;  // column-major n x k
};

GeneratorMatrix build_generator(const CodeSpec& spec, std::uint64_t point_limit = kDefaultPointLimit);

// --- scalar-class representatives ------------------------------------------

// (q^k - 1)/(q - 1); ResourceError if it does not fit in 64 bits.
std::uint64_t class_count(int q, int k);
// Representatives in lexicographic order of their coefficient vectors (code
// order per entry, position 0 most significant).
void decode_class(int q, std::uint64_t rank, std::span<gf::Code> out);
std::uint64_t class_rank(int q, std::span<const gf::Code> normalized);

// --- weights ---------------------------------------------------------------

struct WeightDistribution {
  CodeSpec spec;
  std::map<std::uint64_t, mpz_class> counts;
  bool complete = false;

  mpz_class total() const;
  std::optional<std::uint64_t> min_weight() const;         // smallest nonzero weight
  std::optional<std::uint64_t> second_min_weight() const;  // next one up
  std::string to_json() const;
  std::string to_csv() const;
};

// Functional with coefficients over the code's coordinates (k entries).
std::uint64_t codeword_weight(const GeneratorMatrix& G, std::span<const gf::Code> coeffs);
// Direct route: enumerate the projective system and evaluate minors. The
// functional must be supported on nabla(alpha) for the Schubert variant.
std::uint64_t codeword_weight(const DualFunctional& F, const CodeSpec& spec);

// Weight of every class representative, indexed by class rank.
std::vector<std::uint32_t> class_weights(const GeneratorMatrix& G, const SweepOptions& options);

// Exact distribution over all q^k codewords. Result does not depend on
// options.parallelism.
WeightDistribution weight_distribution(const GeneratorMatrix& G, const SweepOptions& options);
WeightDistribution weight_distribution(const CodeSpec& spec, const SweepOptions& options);
WeightDistribution distribution_from_class_weights(const CodeSpec& spec, std::span<const std::uint32_t> weights);

// Throws ResourceError unless classes x n fits the budget.
void check_budget(const CodeSpec& spec, const SweepOptions& options);

struct WeightClaim {
  mpz_class value;
  bool verified = false;  // set only when an observed distribution confirms it
};

WeightClaim min_distance(const CodeSpec& spec, const WeightDistribution* observed = nullptr);
// q^{l(m-l)} + q^{l(m-l)-2}; DomainError unless 2 <= l <= m-2.
WeightClaim second_min_weight(const CodeSpec& spec, const WeightDistribution* observed = nullptr);
WeightClaim schubert_min_distance(const IndexTuple& alpha, const GrassmannParams& params,
                                  const WeightDistribution* observed = nullptr);

struct MacWilliamsResult {
  std::vector<mpz_class> dual;  // B_0..B_n when integral; floor values otherwise
  bool integral = false;
  bool nonnegative = false;
};

// Dual distribution through Krawtchouk polynomials (three-term recurrence).
MacWilliamsResult macwilliams_transform(const WeightDistribution& dist);
// K_j(x) for the given n and q by the defining binomial sum.
mpz_class krawtchouk(int q, std::uint64_t n, std::uint64_t j, std::uint64_t x);

}  // namespace plucker
