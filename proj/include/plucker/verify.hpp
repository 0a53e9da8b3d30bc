#pragma once

// Machine checks of the minimum-distance classification, the second-weight
// gap, the string decomposition, the hyperplane incidence bound and the
// small-case dichotomies. Each suite returns a report of named assertions;
// failing assertions carry witness functionals.

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "plucker/codes.hpp"
#include "plucker/exterior.hpp"
#include "plucker/grassmann.hpp"

namespace plucker {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<std::string> witnesses;
};

struct VerifyReport {
  std::string suite;
  std::string params;  // "q=2 l=2 m=4"
  std::deque<Assertion> assertions;  // add() references stay valid

  bool passed() const;
  Assertion& add(std::string name, bool pass, std::string detail = {});
  std::string to_json() const;
};

struct VerifyOptions {
  SweepOptions sweep;
  // Suites that range over every functional fall back to seeded sampling of
  // this many classes once the exhaustive cost exceeds exhaustive_limit.
  std::uint64_t sample_cap = 4096;
  std::uint64_t exhaustive_limit = 50'000'000;
  std::uint64_t seed = 1;
};

std::string params_label(const GrassmannParams& params);

// Full sweep: every class has weight >= q^{l(m-l)}, minimum-weight classes are
// exactly the decomposable ones and there are [m l]_q of them.
VerifyReport verify_nogin(const CodeSpec& spec, const VerifyOptions& options = {});

// No weight strictly inside (q^{l(m-l)}, q^{l(m-l)} + q^{l(m-l)-2}); the upper
// end is attained. DomainError unless 2 <= l <= m-2.
VerifyReport verify_second_weight(const CodeSpec& spec, const VerifyOptions& options = {});

// theta = (m-l-1, m-l+2, ..., m), gamma = (m-l, ..., m-1). Functionals
// c_theta X_theta + sum_{a in Delta(theta), a != gamma} c_a X_a + X_gamma with
// c_theta != 0 meet Omega_theta in n_theta - q^{l(m-l)-2} points and have
// the second weight. When 2 <= l-1 <= m-3 the same family one size down is
// lifted along the strings and must again reach the second weight.
VerifyReport verify_attained_family(const GrassmannParams& params, const VerifyOptions& options = {});
IndexTuple attained_theta(int ell, int m);
IndexTuple attained_gamma(int ell, int m);

// Fibers of the string map are disjoint, have [m-1 l-1]_q points each, and
// together with G(l, V_{m-1}) exhaust G(l, V_m); tau is a bijection on each
// fiber and lifting inverts it.
VerifyReport verify_string_partition(const GrassmannParams& params);

// F must be supported on {a : a_l = m} (DomainError otherwise; also l >= 2).
// Every fiber meets Pi in |G(l-1, V_{m-1}) ∩ Pi-check| points, point by point
// through tau.
VerifyReport verify_string_section(const DualFunctional& F);

// Partition, the section law for every functional supported on a_l = m, and
// the check that no nonzero functional vanishes on a whole fiber.
VerifyReport verify_strings(const GrassmannParams& params, const VerifyOptions& options = {});

// Incidence bound over all hyperplanes V_{m-1} < V_m. DomainError if l = m.
VerifyReport verify_zanella_incidence(const DualFunctional& F);
VerifyReport verify_zanella(const GrassmannParams& params, const VerifyOptions& options = {});

// l = 2, m = 4: every nondecomposable class meets G(2, V_4) in q^3+q^2+q+1
// points.
VerifyReport verify_l2_dichotomy(const GrassmannParams& params, const VerifyOptions& options = {});

// l = m-2: every nondecomposable class meets every G(m-2, V_{m-1}) in
// (q^{m-2}-1)/(q-1) points.
VerifyReport verify_codim2_corollary(const GrassmannParams& params, const VerifyOptions& options = {});

// Gaussian identities and the e / e' relations for 1 <= l <= m <= max_m.
VerifyReport verify_identities(int max_m, const std::vector<long>& qs);

// Schubert code: n, k, full rank, no zero column, empirical minimum q^delta.
VerifyReport verify_schubert_min_distance(const IndexTuple& alpha, const GrassmannParams& params,
                                          const VerifyOptions& options = {});

// Every nonzero functional against every point: minor evaluation equals the
// wedge pairing; the resulting weights agree with the generator-table route.
VerifyReport verify_pairing_consistency(const GrassmannParams& params, const VerifyOptions& options = {});

// Sum q^k, counts[0] = 1, divisibility by q-1, weights within [d, n] and an
// integral nonnegative MacWilliams dual.
VerifyReport verify_distribution(const WeightDistribution& dist);

enum class Suite { nogin, second, strings, zanella, identities, l2, attained, all };
Suite parse_suite(const std::string& name);  // UsageError on unknown names
std::string suite_name(Suite s);

// Runs the named suite; "all" runs every suite whose preconditions hold for
// the parameters.
std::vector<VerifyReport> run_suite(Suite suite, const GrassmannParams& params, const VerifyOptions& options = {});

}  // namespace plucker
