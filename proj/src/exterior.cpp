#include "plucker/exterior.hpp"

#include <algorithm>

#include "json.hpp"
#include "plucker/error.hpp"

namespace plucker {

namespace {

// Reduced row echelon form in place (standard left convention); returns the
// pivot column of each nonzero row.
std::vector<int> rref(const gf::Field& F, std::vector<gf::Code>& a, int rows, int cols) {
  auto at = [&](int i, int j) -> gf::Code& { return a[static_cast<std::size_t>(i) * cols + j]; };
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    const gf::Code s = F.inv(at(r, c));
    for (int j = 0; j < cols; ++j) at(r, j) = F.mul(at(r, j), s);
    for (int i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const gf::Code f = at(i, c);
      for (int j = 0; j < cols; ++j) at(i, j) = F.sub(at(i, j), F.mul(f, at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// m x C(m, d+1) matrix whose row j is z ^ v_j.
std::vector<gf::Code> wedge_map_matrix(const WedgeElement& z, int& cols) {
  const int m = z.m();
  cols = index_space(z.degree() + 1, m).size();
  std::vector<gf::Code> a;
  a.reserve(static_cast<std::size_t>(m) * cols);
  std::vector<gf::Code> e(m, 0);
  for (int j = 0; j < m; ++j) {
    std::fill(e.begin(), e.end(), 0);
    e[j] = 1;
    const auto row = wedge_with_vector(z, e);
    a.insert(a.end(), row.coeffs().begin(), row.coeffs().end());
  }
  return a;
}

}  // namespace

int matrix_rank(const gf::Field& field, std::vector<gf::Code> a, int rows, int cols) {
  return static_cast<int>(rref(field, a, rows, cols).size());
}

// --- DualFunctional ----------------------------------------------------------

DualFunctional::DualFunctional(const GrassmannParams& params, std::vector<gf::Code> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != params.coordinate_count()) {
    throw UsageError("functional has " + std::to_string(coeffs_.size()) + " coefficients, expected " +
                     std::to_string(params.coordinate_count()));
  }
  bool nonzero = false;
  for (auto c : coeffs_) {
    if (!params.f().is_valid(c)) throw UsageError("coefficient out of field range");
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw UsageError("zero functional does not define a hyperplane");
}

DualFunctional DualFunctional::parse(const GrassmannParams& params, std::string_view text) {
  const auto& F = params.f();
  const auto& space = index_space(params.ell, params.m);
  std::vector<gf::Code> coeffs(space.size(), 0);
  auto fail = [&](const std::string& why) {
    throw UsageError("malformed functional '" + std::string(text) + "': " + why);
  };
  // split into signed terms at top-level '+' / '-'
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool negative = false;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      if (cur.find_first_not_of(' ') != std::string::npos) terms.emplace_back(negative, cur);
      else if (!terms.empty() || ch == '+') fail("empty term");
      cur.clear();
      negative = (ch == '-');
      continue;
    }
    cur += ch;
  }
  if (cur.find_first_not_of(' ') == std::string::npos) fail("empty term");
  terms.emplace_back(negative, cur);

  for (auto& [neg, term] : terms) {
    std::string_view t = term;
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    gf::Code c = 1;
    const auto star = t.find('*');
    if (star != std::string_view::npos) {
      c = F.parse_element(t.substr(0, star));
      t.remove_prefix(star + 1);
      while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    }
    if (t.size() < 2 || t.substr(0, 2) != "X:") fail("expected X:<tuple>");
    const auto alpha = IndexTuple::parse(t.substr(2), params.m);
    if (alpha.ell() != params.ell) fail("tuple " + alpha.to_string() + " does not have length l");
    if (neg) c = F.neg(c);
    auto& slot = coeffs[space.rank(alpha)];
    slot = F.add(slot, c);
  }
  return DualFunctional(params, std::move(coeffs));
}

DualFunctional DualFunctional::from_json(const GrassmannParams& params, std::string_view json) {
  const auto& space = index_space(params.ell, params.m);
  std::vector<gf::Code> coeffs(space.size(), 0);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("functional JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("functional JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto alpha = IndexTuple::parse(key, params.m);
    if (alpha.ell() != params.ell) throw UsageError("tuple " + key + " does not have length l");
    const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    coeffs[space.rank(alpha)] = params.f().parse_element(v);
  }
  return DualFunctional(params, std::move(coeffs));
}

DualFunctional DualFunctional::coordinate(const GrassmannParams& params, const IndexTuple& alpha) {
  const auto& space = index_space(params.ell, params.m);
  const int r = space.rank(alpha);
  if (r < 0 || alpha.m() != params.m) throw UsageError("tuple shape mismatch");
  std::vector<gf::Code> coeffs(space.size(), 0);
  coeffs[r] = 1;
  return DualFunctional(params, std::move(coeffs));
}

gf::Code DualFunctional::coeff(const IndexTuple& alpha) const {
  const int r = index_space(params_.ell, params_.m).rank(alpha);
  if (r < 0 || alpha.m() != params_.m) throw UsageError("tuple shape mismatch");
  return coeffs_[r];
}

gf::Code DualFunctional::evaluate(std::span<const gf::Code> coords) const {
  const auto& F = params_.f();
  gf::Code acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) acc = F.add(acc, F.mul(coeffs_[i], coords[i]));
  }
  return acc;
}

gf::Code DualFunctional::evaluate(const PluckerVector& p) const {
  if (!(p.params == params_)) throw UsageError("functional and point have different parameters");
  return evaluate(p.coords);
}

DualFunctional DualFunctional::scaled(gf::Code s) const {
  if (s == 0) throw DomainError("scaling a functional by zero");
  std::vector<gf::Code> c = coeffs_;
  for (auto& x : c) x = params_.f().mul(x, s);
  return DualFunctional(params_, std::move(c));
}

DualFunctional DualFunctional::normalized() const {
  const auto it = std::find_if(coeffs_.begin(), coeffs_.end(), [](gf::Code c) { return c != 0; });
  return scaled(params_.f().inv(*it));
}

bool DualFunctional::projectively_equal(const DualFunctional& o) const {
  return params_ == o.params_ && normalized() == o.normalized();
}

std::string DualFunctional::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  const auto& space = index_space(params_.ell, params_.m);
  for (int r = 0; r < space.size(); ++r) {
    if (coeffs_[r] != 0) j[space[r].to_string()] = params_.f().format(coeffs_[r]);
  }
  return j.dump();
}

std::string DualFunctional::to_string() const {
  std::string s;
  const auto& space = index_space(params_.ell, params_.m);
  for (int r = 0; r < space.size(); ++r) {
    if (coeffs_[r] == 0) continue;
    if (!s.empty()) s += " + ";
    if (coeffs_[r] != 1) s += params_.f().format(coeffs_[r]) + "*";
    s += "X:" + space[r].to_string();
  }
  return s;
}

// --- WedgeElement ------------------------------------------------------------

WedgeElement::WedgeElement(const gf::Field& field, int m, int degree, std::vector<gf::Code> coeffs)
    : field_(&field), m_(m), degree_(degree), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != index_space(degree, m).size()) {
    throw UsageError("wedge element has wrong coefficient count");
  }
}

WedgeElement WedgeElement::zero(const gf::Field& field, int m, int degree) {
  return WedgeElement(field, m, degree, std::vector<gf::Code>(index_space(degree, m).size(), 0));
}

WedgeElement WedgeElement::basis(const gf::Field& field, const IndexTuple& tuple, gf::Code coeff) {
  auto z = zero(field, tuple.m(), tuple.ell());
  z.coeffs_[index_space(tuple.ell(), tuple.m()).rank(tuple)] = coeff;
  return z;
}

WedgeElement WedgeElement::vector(const gf::Field& field, std::vector<gf::Code> x) {
  const int m = static_cast<int>(x.size());
  return WedgeElement(field, m, 1, std::move(x));
}

gf::Code WedgeElement::coeff(const IndexTuple& t) const {
  return coeffs_[index_space(degree_, m_).rank(t)];
}

bool WedgeElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](gf::Code c) { return c == 0; });
}

WedgeElement WedgeElement::operator+(const WedgeElement& o) const {
  if (field_ != o.field_ || m_ != o.m_ || degree_ != o.degree_) throw UsageError("wedge shape mismatch");
  WedgeElement out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  return out;
}

WedgeElement WedgeElement::scaled(gf::Code s) const {
  WedgeElement out = *this;
  for (auto& c : out.coeffs_) c = field_->mul(c, s);
  return out;
}

std::string WedgeElement::to_string() const {
  std::string s;
  const auto& space = index_space(degree_, m_);
  for (int r = 0; r < space.size(); ++r) {
    if (coeffs_[r] == 0) continue;
    if (!s.empty()) s += " + ";
    if (coeffs_[r] != 1) s += field_->format(coeffs_[r]) + "*";
    std::string w;
    for (int v : space[r].entries()) w += (w.empty() ? "v" : "^v") + std::to_string(v);
    s += w.empty() ? "1" : w;
  }
  return s.empty() ? "0" : s;
}

namespace {

WedgeElement to_wedge(const DualFunctional& F, bool signed_convention) {
  const auto& params = F.params();
  const auto& f = params.f();
  const auto& space = index_space(params.ell, params.m);
  const auto& dual_space = index_space(params.m - params.ell, params.m);
  std::vector<gf::Code> z(dual_space.size(), 0);
  for (int r = 0; r < space.size(); ++r) {
    const gf::Code c = F.coeffs()[r];
    if (c == 0) continue;
    const auto& alpha = space[r];
    const auto comp = complement(alpha);
    const bool flip = signed_convention && shuffle_sign(comp, alpha) < 0;
    z[dual_space.rank(comp)] = flip ? f.neg(c) : c;
  }
  return WedgeElement(f, params.m, params.m - params.ell, std::move(z));
}

}  // namespace

WedgeElement functional_to_wedge(const DualFunctional& F) { return to_wedge(F, true); }
WedgeElement functional_to_wedge_unsigned(const DualFunctional& F) { return to_wedge(F, false); }

WedgeElement wedge_with_vector(const WedgeElement& z, std::span<const gf::Code> x) {
  const int m = z.m();
  const int d = z.degree();
  if (d + 1 > m) throw DomainError("wedge degree would exceed m");
  if (static_cast<int>(x.size()) != m) throw UsageError("vector length differs from m");
  const auto& F = z.field();
  const auto& src = index_space(d, m);
  const auto& dst = index_space(d + 1, m);
  std::vector<gf::Code> out(dst.size(), 0);
  for (int r = 0; r < src.size(); ++r) {
    const gf::Code c = z.coeffs()[r];
    if (c == 0) continue;
    const std::uint32_t mask = src[r].mask();
    for (int j = 0; j < m; ++j) {
      const std::uint32_t bit = 1U << j;
      if (x[j] == 0 || (mask & bit)) continue;
      // v_gamma ^ v_j: move v_j left past every gamma entry above j
      const int above = std::popcount(mask & ~((bit << 1) - 1));
      gf::Code term = F.mul(c, x[j]);
      if (above % 2) term = F.neg(term);
      auto& slot = out[dst.rank(mask | bit)];
      slot = F.add(slot, term);
    }
  }
  return WedgeElement(F, m, d + 1, std::move(out));
}

gf::Code wedge_pairing(const WedgeElement& z, const EchelonMatrix& M) {
  if (z.degree() + M.rows() != z.m() || M.cols() != z.m()) throw UsageError("pairing degree mismatch");
  WedgeElement acc = z;
  std::vector<gf::Code> row(M.cols());
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) row[j] = M.at(i, j);
    acc = wedge_with_vector(acc, row);
  }
  return acc.coeffs()[0];
}

int annihilator_dimension(const WedgeElement& z) {
  if (z.is_zero()) throw DomainError("annihilator of the zero wedge");
  if (z.degree() == z.m()) return z.m();
  int cols = 0;
  auto a = wedge_map_matrix(z, cols);
  return z.m() - matrix_rank(z.field(), std::move(a), z.m(), cols);
}

std::vector<std::vector<gf::Code>> annihilator_basis(const WedgeElement& z) {
  if (z.is_zero()) throw DomainError("annihilator of the zero wedge");
  const int m = z.m();
  const auto& F = z.field();
  std::vector<std::vector<gf::Code>> basis;
  if (z.degree() == m) {
    for (int j = 0; j < m; ++j) {
      std::vector<gf::Code> e(m, 0);
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  int cols = 0;
  const auto a = wedge_map_matrix(z, cols);
  // solve x A = 0, i.e. A^T x^T = 0
  std::vector<gf::Code> at(static_cast<std::size_t>(cols) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < cols; ++j) at[static_cast<std::size_t>(j) * m + i] = a[static_cast<std::size_t>(i) * cols + j];
  }
  const auto pivots = rref(F, at, cols, m);
  std::vector<bool> is_pivot(m, false);
  for (int p : pivots) is_pivot[p] = true;
  for (int free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    std::vector<gf::Code> x(m, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = F.neg(at[r * m + free]);
    basis.push_back(std::move(x));
  }
  // reduce the basis so the output is canonical
  std::vector<gf::Code> flat;
  for (const auto& v : basis) flat.insert(flat.end(), v.begin(), v.end());
  const int k = static_cast<int>(basis.size());
  rref(F, flat, k, m);
  for (int i = 0; i < k; ++i) basis[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i) * m, flat.begin() + static_cast<std::ptrdiff_t>(i + 1) * m);
  return basis;
}

bool is_decomposable(const WedgeElement& z) { return annihilator_dimension(z) == z.degree(); }

std::optional<DualFunctional> restrict_functional(const DualFunctional& F, const IndexTuple& alpha) {
  const auto& params = F.params();
  if (alpha.ell() != params.ell || alpha.m() != params.m) throw UsageError("tuple shape mismatch");
  const auto& space = index_space(params.ell, params.m);
  std::vector<gf::Code> c(space.size(), 0);
  bool any = false;
  for (int r = 0; r < space.size(); ++r) {
    if (bruhat_leq(space[r], alpha)) {
      c[r] = F.coeffs()[r];
      any = any || c[r] != 0;
    }
  }
  if (!any) return std::nullopt;
  return DualFunctional(params, std::move(c));
}

bool check_functional(const DualFunctional& F) { return is_decomposable(functional_to_wedge(F)); }

DecomposabilityVerdict analyze_functional(const DualFunctional& F) {
  const auto z = functional_to_wedge(F);
  DecomposabilityVerdict v;
  v.annihilator_dim = annihilator_dimension(z);
  v.decomposable = v.annihilator_dim == z.degree();
  v.annihilator_basis = annihilator_basis(z);
  v.unsigned_convention_decomposable = is_decomposable(functional_to_wedge_unsigned(F));
  return v;
}

}  // namespace plucker
