#pragma once

// Hyperplanes of the Plücker space as linear functionals on the coordinates,
// their images in the complementary exterior power, and the rank test for
// decomposability.
//
// The functional sum c_a X_a is identified with
//     z = sum c_a * eps(a) * v_{a^C},   eps(a) = sign of the shuffle (a^C, a),
// so that z wedge (w_1 ^ ... ^ w_l) = (sum c_a p_a(w)) * v_1 ^ ... ^ v_m.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plucker/gf.hpp"
#include "plucker/grassmann.hpp"
#include "plucker/qcombin.hpp"

namespace plucker {

class DualFunctional {
 public:
  // Coefficients in lexicographic order over I(l, m). UsageError if all zero
  // or the length is wrong.
  DualFunctional(const GrassmannParams& params, std::vector<gf::Code> coeffs);

  // "X:1,4 + 2*X:2,3" (terms may repeat and accumulate; '-' allowed).
  static DualFunctional parse(const GrassmannParams& params, std::string_view text);
  // {"1,4": "1", "2,3": "2"}
  static DualFunctional from_json(const GrassmannParams& params, std::string_view json);
  static DualFunctional coordinate(const GrassmannParams& params, const IndexTuple& alpha);

  const GrassmannParams& params() const { return params_; }
  const std::vector<gf::Code>& coeffs() const { return coeffs_; }
  gf::Code coeff(const IndexTuple& alpha) const;

  gf::Code evaluate(const PluckerVector& p) const;
  gf::Code evaluate(std::span<const gf::Code> coords) const;

  DualFunctional scaled(gf::Code s) const;  // s != 0
  // First nonzero coefficient equal to 1.
  DualFunctional normalized() const;
  bool projectively_equal(const DualFunctional& o) const;
  bool operator==(const DualFunctional& o) const { return params_ == o.params_ && coeffs_ == o.coeffs_; }

  std::string to_json() const;
  std::string to_string() const;  // "X:1,4 + 2*X:2,3"

 private:
  GrassmannParams params_;
  std::vector<gf::Code> coeffs_;
};

// Element of the exterior power of the given degree of V_m, coefficients in
// lexicographic order over I(degree, m). Zero is representable here; the
// operations that need a nonzero element check for it.
class WedgeElement {
 public:
  WedgeElement(const gf::Field& field, int m, int degree, std::vector<gf::Code> coeffs);
  static WedgeElement zero(const gf::Field& field, int m, int degree);
  static WedgeElement basis(const gf::Field& field, const IndexTuple& tuple, gf::Code coeff = 1);
  static WedgeElement vector(const gf::Field& field, std::vector<gf::Code> x);  // degree 1

  const gf::Field& field() const { return *field_; }
  int m() const { return m_; }
  int degree() const { return degree_; }
  const std::vector<gf::Code>& coeffs() const { return coeffs_; }
  gf::Code coeff(const IndexTuple& t) const;
  bool is_zero() const;

  WedgeElement operator+(const WedgeElement& o) const;
  WedgeElement scaled(gf::Code s) const;
  bool operator==(const WedgeElement& o) const {
    return field_ == o.field_ && m_ == o.m_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
  }

  std::string to_string() const;  // "v1^v2 + 2*v3^v4"

 private:
  const gf::Field* field_;
  int m_;
  int degree_;
  std::vector<gf::Code> coeffs_;
};

WedgeElement functional_to_wedge(const DualFunctional& F);
// Sign-free identification c_a X_a <-> c_a v_{a^C}; kept for comparison.
WedgeElement functional_to_wedge_unsigned(const DualFunctional& F);

// z ^ x for x in V_m; DomainError when z already has degree m.
WedgeElement wedge_with_vector(const WedgeElement& z, std::span<const gf::Code> x);

// Top-degree coefficient of z ^ r_1 ^ ... ^ r_l for the rows of M, built by
// successive wedges with vectors. Requires degree(z) + l = m.
gf::Code wedge_pairing(const WedgeElement& z, const EchelonMatrix& M);

// dim {x in V_m : z ^ x = 0}; DomainError if z = 0.
int annihilator_dimension(const WedgeElement& z);
// Basis of that kernel, rows reduced.
std::vector<std::vector<gf::Code>> annihilator_basis(const WedgeElement& z);

// dim V_m(z) == degree(z); DomainError if z = 0.
bool is_decomposable(const WedgeElement& z);

// F restricted to the coordinates in nabla(alpha), or nullopt when every such
// coefficient vanishes (the hyperplane contains the Schubert variety).
std::optional<DualFunctional> restrict_functional(const DualFunctional& F, const IndexTuple& alpha);

struct DecomposabilityVerdict {
  bool decomposable = false;
  int annihilator_dim = 0;
  std::vector<std::vector<gf::Code>> annihilator_basis;
  bool unsigned_convention_decomposable = false;
};

bool check_functional(const DualFunctional& F);
DecomposabilityVerdict analyze_functional(const DualFunctional& F);

// Rank over F_q of a rows x cols matrix.
int matrix_rank(const gf::Field& field, std::vector<gf::Code> a, int rows, int cols);

}  // namespace plucker
