#include "plucker/grassmann.hpp"

#include <algorithm>

#include "json.hpp"
#include "plucker/error.hpp"

namespace plucker {

GrassmannParams::GrassmannParams(int ell_, int m_, const gf::Field& field_)
    : ell(ell_), m(m_), field(&field_) {
  if (ell < 1 || ell > m || m > kMaxAmbientDim) {
    throw UsageError("need 1 <= l <= m <= " + std::to_string(kMaxAmbientDim) + ", got l=" +
                     std::to_string(ell) + " m=" + std::to_string(m));
  }
}

EchelonMatrix::EchelonMatrix(const GrassmannParams& params, std::vector<gf::Code> entries)
    : params_(params), entries_(std::move(entries)) {
  const int l = params.ell;
  const int m = params.m;
  if (static_cast<int>(entries_.size()) != l * m) throw UsageError("echelon matrix has wrong shape");
  std::vector<int> piv;
  for (int i = 0; i < l; ++i) {
    int last = -1;
    for (int j = 0; j < m; ++j) {
      if (!params.f().is_valid(at(i, j))) throw UsageError("entry out of field range");
      if (at(i, j) != 0) last = j;
    }
    if (last < 0) throw DomainError("zero row in echelon matrix");
    if (at(i, last) != 1) throw DomainError("pivot of row " + std::to_string(i + 1) + " is not 1");
    if (!piv.empty() && last + 1 <= piv.back()) throw DomainError("pivots do not move right");
    piv.push_back(last + 1);
  }
  for (int i = 0; i < l; ++i) {
    for (int r = 0; r < l; ++r) {
      if (r != i && at(r, piv[i] - 1) != 0) throw DomainError("pivot column not cleared");
    }
  }
  pivots_ = IndexTuple(std::move(piv), m);
}

EchelonMatrix EchelonMatrix::pivot_only(const GrassmannParams& params, const IndexTuple& pivots) {
  if (pivots.ell() != params.ell || pivots.m() != params.m) throw UsageError("pivot tuple shape mismatch");
  std::vector<gf::Code> e(static_cast<std::size_t>(params.ell) * params.m, 0);
  for (int i = 0; i < params.ell; ++i) e[static_cast<std::size_t>(i) * params.m + pivots[i] - 1] = 1;
  return EchelonMatrix(params, std::move(e), pivots);
}

std::string EchelonMatrix::to_string() const {
  std::string s;
  for (int i = 0; i < rows(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < cols(); ++j) {
      if (j) s += ' ';
      s += params_.f().format(at(i, j));
    }
  }
  return s;
}

std::vector<std::pair<int, int>> free_positions(const IndexTuple& alpha) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < alpha.ell(); ++i) {
    for (int j = 0; j < alpha[i] - 1; ++j) {
      // earlier pivots are the only pivot columns left of alpha_i
      bool pivot_col = false;
      for (int r = 0; r < i; ++r) pivot_col = pivot_col || (alpha[r] - 1 == j);
      if (!pivot_col) out.emplace_back(i, j);
    }
  }
  return out;
}

PointStream::PointStream(const GrassmannParams& params, std::vector<IndexTuple> cells)
    : params_(params), cells_(std::move(cells)) {
  for (const auto& c : cells_) {
    if (c.ell() != params.ell || c.m() != params.m) throw UsageError("cell tuple shape mismatch");
  }
}

bool PointStream::load_cell() {
  if (cell_ >= cells_.size()) return false;
  const auto& alpha = cells_[cell_];
  free_ = free_positions(alpha);
  digits_.assign(free_.size(), 0);
  base_.assign(static_cast<std::size_t>(params_.ell) * params_.m, 0);
  for (int i = 0; i < params_.ell; ++i) base_[static_cast<std::size_t>(i) * params_.m + alpha[i] - 1] = 1;
  return true;
}

bool PointStream::next(EchelonMatrix& out) {
  if (!started_) {
    started_ = true;
    cell_ = 0;
    if (!load_cell()) return false;
  } else {
    const auto q = static_cast<gf::Code>(params_.q());
    int pos = static_cast<int>(digits_.size()) - 1;
    while (pos >= 0) {
      if (++digits_[pos] < q) break;
      digits_[pos] = 0;
      --pos;
    }
    if (pos < 0) {
      ++cell_;
      if (!load_cell()) return false;
    }
  }
  std::vector<gf::Code> e = base_;
  for (std::size_t k = 0; k < free_.size(); ++k) {
    e[static_cast<std::size_t>(free_[k].first) * params_.m + free_[k].second] = digits_[k];
  }
  out = EchelonMatrix(params_, std::move(e), cells_[cell_]);
  return true;
}

std::uint64_t PointStream::size() const {
  std::uint64_t total = 0;
  for (const auto& c : cells_) {
    std::uint64_t cell = 1;
    for (int i = 0; i < delta(c); ++i) cell *= static_cast<std::uint64_t>(params_.q());
    total += cell;
  }
  return total;
}

PointStream enumerate_grassmannian(const GrassmannParams& params, std::uint64_t point_limit) {
  const mpz_class n = gaussian_binomial(params.m, params.ell, params.q());
  if (n > mpz_class(std::to_string(point_limit))) {
    throw ResourceError("Grassmannian has " + n.get_str() + " points, limit is " + std::to_string(point_limit),
                        n.fits_ulong_p() ? n.get_ui() : UINT64_MAX, point_limit);
  }
  return PointStream(params, index_space(params.ell, params.m).tuples());
}

PointStream enumerate_cell(const IndexTuple& alpha, const GrassmannParams& params) {
  return PointStream(params, {alpha});
}

PointStream enumerate_schubert_variety(const IndexTuple& alpha, const GrassmannParams& params) {
  return PointStream(params, nabla_set(alpha));
}

std::vector<EchelonMatrix> collect(PointStream&& stream) {
  std::vector<EchelonMatrix> out;
  out.reserve(stream.size());
  EchelonMatrix M;
  while (stream.next(M)) out.push_back(M);
  return out;
}

std::uint64_t schubert_variety_size(const IndexTuple& alpha, long q) {
  std::uint64_t total = 0;
  for (const auto& beta : nabla_set(alpha)) {
    std::uint64_t cell = 1;
    for (int i = 0; i < delta(beta); ++i) cell *= static_cast<std::uint64_t>(q);
    total += cell;
  }
  return total;
}

EchelonMatrix canonical_form(const GrassmannParams& params, std::vector<gf::Code> rows) {
  const auto& F = params.f();
  const int l = params.ell;
  const int m = params.m;
  if (static_cast<int>(rows.size()) != l * m) throw UsageError("matrix has wrong shape");
  auto at = [&](int i, int j) -> gf::Code& { return rows[static_cast<std::size_t>(i) * m + j]; };
  std::vector<bool> used(l, false);
  std::vector<int> pivot_of_row(l, -1);
  for (int j = m - 1; j >= 0; --j) {
    int r = -1;
    for (int i = 0; i < l && r < 0; ++i) {
      if (!used[i] && at(i, j) != 0) r = i;
    }
    if (r < 0) continue;
    used[r] = true;
    pivot_of_row[r] = j;
    const gf::Code s = F.inv(at(r, j));
    for (int c = 0; c < m; ++c) at(r, c) = F.mul(at(r, c), s);
    for (int i = 0; i < l; ++i) {
      if (i == r || at(i, j) == 0) continue;
      const gf::Code f = at(i, j);
      for (int c = 0; c < m; ++c) at(i, c) = F.sub(at(i, c), F.mul(f, at(r, c)));
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) throw DomainError("rows are linearly dependent");
  std::vector<int> order(l);
  for (int i = 0; i < l; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return pivot_of_row[a] < pivot_of_row[b]; });
  std::vector<gf::Code> sorted;
  sorted.reserve(rows.size());
  for (int i : order) {
    for (int c = 0; c < m; ++c) sorted.push_back(at(i, c));
  }
  return EchelonMatrix(params, std::move(sorted));
}

gf::Code determinant(const gf::Field& F, std::vector<gf::Code> a, int n) {
  gf::Code det = 1;
  auto at = [&](int i, int j) -> gf::Code& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, at(col, col));
    const gf::Code inv = F.inv(at(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (at(r, col) == 0) continue;
      const gf::Code f = F.mul(at(r, col), inv);
      for (int j = col; j < n; ++j) at(r, j) = F.sub(at(r, j), F.mul(f, at(col, j)));
    }
  }
  return det;
}

gf::Code PluckerVector::operator[](const IndexTuple& alpha) const {
  const int r = index_space(params.ell, params.m).rank(alpha);
  if (r < 0 || alpha.m() != params.m) throw UsageError("coordinate tuple shape mismatch");
  return coords[r];
}

bool PluckerVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](gf::Code c) { return c == 0; });
}

PluckerVector PluckerVector::normalized() const {
  PluckerVector out = *this;
  const auto it = std::find_if(coords.begin(), coords.end(), [](gf::Code c) { return c != 0; });
  if (it == coords.end()) throw DomainError("zero Plücker vector");
  const gf::Code s = params.f().inv(*it);
  for (auto& c : out.coords) c = params.f().mul(c, s);
  return out;
}

std::string PluckerVector::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  const auto& space = index_space(params.ell, params.m);
  for (int r = 0; r < space.size(); ++r) j[space[r].to_string()] = params.f().format(coords[r]);
  return j.dump();
}

PluckerVector plucker(const EchelonMatrix& M) {
  const auto& params = M.params();
  const auto& space = index_space(params.ell, params.m);
  PluckerVector out{params, std::vector<gf::Code>(space.size(), 0)};
  const int l = params.ell;
  if (params.q() == 2) {
    std::uint32_t rows[kMaxAmbientDim];
    for (int i = 0; i < l; ++i) {
      rows[i] = 0;
      for (int j = 0; j < params.m; ++j) {
        if (M.at(i, j)) rows[i] |= 1U << j;
      }
    }
    const std::span<const std::uint32_t> rs(rows, static_cast<std::size_t>(l));
    for (int r = 0; r < space.size(); ++r) out.coords[r] = gf::gf2::minor(rs, space[r].mask()) ? 1 : 0;
    return out;
  }
  std::vector<gf::Code> sub(static_cast<std::size_t>(l) * l);
  for (int r = 0; r < space.size(); ++r) {
    const auto& alpha = space[r];
    for (int i = 0; i < l; ++i) {
      for (int k = 0; k < l; ++k) sub[static_cast<std::size_t>(i) * l + k] = M.at(i, alpha[k] - 1);
    }
    out.coords[r] = determinant(params.f(), sub, l);
  }
  return out;
}

StringLabel string_label(const EchelonMatrix& M) {
  if (!M.in_top_stratum()) throw DomainError("string_label: last pivot is not in the last column");
  const auto& params = M.params();
  const int l = params.ell;
  std::vector<bool> pivot_col(params.m, false);
  for (int i = 0; i + 1 < l; ++i) pivot_col[M.pivots()[i] - 1] = true;
  StringLabel out{params, {}};
  for (int j = 0; j < params.m - 1; ++j) {
    if (!pivot_col[j]) out.nu.push_back(M.at(l - 1, j));
  }
  return out;
}

EchelonMatrix lift_to_string(const EchelonMatrix& truncated, const StringLabel& nu) {
  const auto& params = nu.params;
  const int l = params.ell;
  const int m = params.m;
  if (static_cast<int>(nu.nu.size()) != m - l) throw UsageError("string label has wrong length");
  if (truncated.rows() != l - 1 || truncated.cols() != m - 1) throw UsageError("truncated matrix has wrong shape");
  std::vector<gf::Code> e(static_cast<std::size_t>(l) * m, 0);
  std::vector<bool> pivot_col(m, false);
  for (int i = 0; i < l - 1; ++i) {
    for (int j = 0; j < m - 1; ++j) e[static_cast<std::size_t>(i) * m + j] = truncated.at(i, j);
    pivot_col[truncated.pivots()[i] - 1] = true;
  }
  std::size_t k = 0;
  for (int j = 0; j < m - 1; ++j) {
    if (!pivot_col[j]) e[static_cast<std::size_t>(l - 1) * m + j] = nu.nu[k++];
  }
  e[static_cast<std::size_t>(l) * m - 1] = 1;
  return EchelonMatrix(params, std::move(e));
}

std::vector<EchelonMatrix> string_fiber(const StringLabel& nu) {
  const auto& params = nu.params;
  if (static_cast<int>(nu.nu.size()) != params.m - params.ell) throw UsageError("string label has wrong length");
  if (params.ell == 1) {
    // M(0, m-1) is a single empty matrix
    std::vector<gf::Code> row(nu.nu);
    row.push_back(1);
    return {EchelonMatrix(params, std::move(row))};
  }
  const GrassmannParams sub(params.ell - 1, params.m - 1, params.f());
  std::vector<EchelonMatrix> out;
  auto stream = enumerate_grassmannian(sub);
  EchelonMatrix Mp;
  while (stream.next(Mp)) out.push_back(lift_to_string(Mp, nu));
  return out;
}

EchelonMatrix project_tau(const EchelonMatrix& M) {
  const auto& params = M.params();
  if (params.ell < 2) throw DomainError("project_tau needs l >= 2");
  if (!M.in_top_stratum()) throw DomainError("project_tau: last pivot is not in the last column");
  const GrassmannParams sub(params.ell - 1, params.m - 1, params.f());
  std::vector<gf::Code> e;
  e.reserve(static_cast<std::size_t>(sub.ell) * sub.m);
  for (int i = 0; i < sub.ell; ++i) {
    for (int j = 0; j < sub.m; ++j) e.push_back(M.at(i, j));
  }
  return EchelonMatrix(sub, std::move(e));
}

std::vector<StringLabel> enumerate_string_labels(const GrassmannParams& params) {
  const int len = params.m - params.ell;
  const int q = params.q();
  std::vector<StringLabel> out;
  std::vector<gf::Code> digits(len, 0);
  while (true) {
    out.push_back({params, digits});
    int pos = len - 1;
    while (pos >= 0) {
      if (++digits[pos] < q) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace plucker
