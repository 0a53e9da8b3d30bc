#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "plucker/error.hpp"
#include "plucker/grassmann.hpp"

using namespace plucker;
using gf::Code;
using gf::Field;

namespace {

// Leibniz determinant of the columns `cols` of M.
Code leibniz_minor(const EchelonMatrix& M, const std::vector<int>& cols) {
  const auto& F = M.params().f();
  const int n = static_cast<int>(cols.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Code det = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    Code term = 1;
    for (int i = 0; i < n; ++i) term = F.mul(term, M.at(i, cols[perm[i]] - 1));
    det = inv % 2 ? F.sub(det, term) : F.add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Row space of an F_2 matrix as the sorted list of its vectors.
std::vector<int> span_f2(const EchelonMatrix& M) {
  std::set<int> s{0};
  for (int r = 0; r < M.rows(); ++r) {
    int v = 0;
    for (int c = 0; c < M.cols(); ++c) v |= M.at(r, c) << c;
    std::set<int> next = s;
    for (int x : s) next.insert(x ^ v);
    s = next;
  }
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("point counts match the gaussian binomial") {
  for (int q : {2, 3, 4, 5})
    for (int m = 1; m <= 5; ++m)
      for (int l = 1; l <= m; ++l) {
        const GrassmannParams P(l, m, Field::get(q));
        auto s = enumerate_grassmannian(P);
        CHECK(s.size() == gaussian_binomial(m, l, q).get_ui());
        std::uint64_t n = 0;
        for (const auto& M : s) {
          (void)M;
          ++n;
        }
        CHECK(n == gaussian_binomial(m, l, q).get_ui());
      }
}

TEST_CASE("points over F_2 are exactly the distinct subspaces") {
  const GrassmannParams P(2, 4, Field::get(2));
  std::set<std::vector<int>> spans;
  for (const auto& M : enumerate_grassmannian(P)) spans.insert(span_f2(M));
  CHECK(spans.size() == 35);
  for (const auto& s : spans) CHECK(s.size() == 4);
}

TEST_CASE("echelon validation") {
  const GrassmannParams P(2, 3, Field::get(2));
  const EchelonMatrix M(P, {1, 1, 0, 0, 0, 1});
  CHECK(M.pivots().to_string() == "2,3");
  CHECK(M.in_top_stratum());
  CHECK(M.to_string() == "1 1 0;0 0 1");
  CHECK_THROWS_AS(EchelonMatrix(P, {1, 1, 0, 0, 1, 1}), DomainError);  // pivot column 2 not cleared
  CHECK_THROWS_AS(EchelonMatrix(P, {0, 0, 1, 1, 0, 0}), DomainError);  // pivots not increasing
  CHECK_THROWS_AS(EchelonMatrix(P, {0, 0, 0, 0, 0, 1}), DomainError);  // zero row
  CHECK_THROWS_AS(EchelonMatrix(P, {1, 1}), UsageError);
  CHECK_THROWS_AS(GrassmannParams(3, 2, Field::get(2)), UsageError);
  CHECK_THROWS_AS(GrassmannParams(0, 2, Field::get(2)), UsageError);
}

TEST_CASE("plucker coordinates of a small point") {
  const GrassmannParams P(2, 3, Field::get(2));
  const auto p = plucker::plucker(EchelonMatrix(P, {1, 1, 0, 0, 0, 1}));
  CHECK(p[IndexTuple::parse("1,2", 3)] == 0);
  CHECK(p[IndexTuple::parse("1,3", 3)] == 1);
  CHECK(p[IndexTuple::parse("2,3", 3)] == 1);
  CHECK(p.to_json() == R"({"1,2":"0","1,3":"1","2,3":"1"})");
}

TEST_CASE("plucker coordinates agree with the Leibniz oracle") {
  const std::vector<std::tuple<int, int, int>> cases{{2, 4, 2}, {2, 4, 3}, {2, 4, 4}, {3, 5, 2}, {2, 5, 3}, {3, 6, 2}};
  for (const auto& [l, m, q] : cases) {
    const GrassmannParams P(l, m, Field::get(q));
    const auto& space = index_space(l, m);
    for (const auto& M : enumerate_grassmannian(P)) {
      const auto p = plucker::plucker(M);
      for (int r = 0; r < space.size(); ++r) CHECK(p.coords[r] == leibniz_minor(M, space[r].entries()));
      // the pivot minor is the identity
      CHECK(p[M.pivots()] == 1);
    }
  }
}

TEST_CASE("plucker embedding is injective and satisfies the quadric") {
  for (int q : {2, 3, 4}) {
    const GrassmannParams P(2, 4, Field::get(q));
    const auto& F = P.f();
    std::set<std::vector<Code>> seen;
    for (const auto& M : enumerate_grassmannian(P)) {
      const auto p = plucker::plucker(M);
      CHECK(seen.insert(p.normalized().coords).second);
      // p12 p34 - p13 p24 + p14 p23 = 0
      const Code a = F.mul(p.coords[0], p.coords[5]);
      const Code b = F.mul(p.coords[1], p.coords[4]);
      const Code c = F.mul(p.coords[2], p.coords[3]);
      CHECK(F.add(F.sub(a, b), c) == 0);
    }
  }
}

TEST_CASE("canonical form is the unique echelon representative") {
  std::mt19937 rng(11);
  for (int q : {2, 3, 5}) {
    const GrassmannParams P(3, 5, Field::get(q));
    const auto all = collect(enumerate_grassmannian(P));
    const std::set<std::vector<Code>> known = [&] {
      std::set<std::vector<Code>> s;
      for (const auto& M : all) s.insert(M.entries());
      return s;
    }();
    const auto& F = P.f();
    for (int trial = 0; trial < 100; ++trial) {
      const auto& M = all[rng() % all.size()];
      // random invertible row mix: lower unitriangular times diagonal
      std::vector<Code> g(9, 0);
      for (int i = 0; i < 3; ++i) {
        g[i * 3 + i] = static_cast<Code>(1 + rng() % (q - 1));
        for (int j = 0; j < i; ++j) g[i * 3 + j] = static_cast<Code>(rng() % q);
      }
      std::vector<Code> rows(15, 0);
      for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 5; ++c)
          for (int k = 0; k < 3; ++k) rows[i * 5 + c] = F.add(rows[i * 5 + c], F.mul(g[i * 3 + k], M.at(k, c)));
      const auto C = canonical_form(P, rows);
      CHECK(C == M);
      CHECK(known.count(C.entries()) == 1);
    }
  }
  const GrassmannParams P(2, 3, Field::get(2));
  CHECK_THROWS_AS(canonical_form(P, {1, 1, 0, 1, 1, 0}), DomainError);
}

TEST_CASE("schubert cells and varieties") {
  const GrassmannParams P(2, 4, Field::get(2));
  const auto theta = IndexTuple::parse("1,4", 4);
  CHECK(free_positions(theta).size() == 2);
  CHECK(enumerate_cell(theta, P).size() == 4);
  auto s = enumerate_schubert_variety(theta, P);
  CHECK(s.size() == 7);
  CHECK(schubert_variety_size(theta, 2) == 7);
  for (const auto& M : s) CHECK(bruhat_leq(M.pivots(), theta));
  for (int q : {2, 3})
    for (const auto& a : enumerate_index_tuples(3, 6)) {
      const GrassmannParams Q(3, 6, Field::get(q));
      CHECK(enumerate_cell(a, Q).size() == static_cast<std::uint64_t>(ipow(q, delta(a)).get_ui()));
      CHECK(free_positions(a).size() == static_cast<std::size_t>(delta(a)));
    }
}

TEST_CASE("point limit is enforced") {
  const GrassmannParams P(3, 6, Field::get(2));
  CHECK_THROWS_AS(enumerate_grassmannian(P, 1000), ResourceError);
  CHECK_NOTHROW(enumerate_grassmannian(P, 1395));
}

TEST_CASE("strings partition the top stratum") {
  const std::vector<std::tuple<int, int, int>> cases{{2, 4, 2}, {2, 5, 2}, {3, 5, 2}, {2, 4, 3}, {1, 4, 2}};
  for (const auto& [l, m, q] : cases) {
    const GrassmannParams P(l, m, Field::get(q));
    const auto labels = enumerate_string_labels(P);
    CHECK(labels.size() == ipow(q, m - l).get_ui());
    std::set<std::vector<Code>> covered;
    for (const auto& nu : labels) {
      const auto fiber = string_fiber(nu);
      CHECK(fiber.size() == gaussian_binomial(m - 1, l - 1, q).get_ui());
      for (const auto& M : fiber) {
        CHECK(string_label(M) == nu);
        CHECK(covered.insert(M.entries()).second);
        if (l >= 2) CHECK(lift_to_string(project_tau(M), nu) == M);
      }
    }
    std::uint64_t lower = 0;
    for (const auto& M : enumerate_grassmannian(P)) {
      if (M.in_top_stratum()) CHECK(covered.count(M.entries()) == 1);
      else ++lower;
    }
    CHECK(lower == gaussian_binomial(m - 1, l, q).get_ui());
  }
}

TEST_CASE("coordinates ending in m read through tau") {
  for (const auto& [l, m, q] : std::vector<std::tuple<int, int, int>>{{3, 5, 2}, {2, 4, 3}, {3, 6, 2}}) {
    const GrassmannParams P(l, m, Field::get(q));
    const auto& big = index_space(l, m);
    const auto& small = index_space(l - 1, m - 1);
    for (const auto& M : enumerate_grassmannian(P)) {
      if (!M.in_top_stratum()) continue;
      const auto p = plucker::plucker(M);
      const auto pt = plucker::plucker(project_tau(M));
      for (int r = 0; r < big.size(); ++r) {
        if (big[r].back() != m) continue;
        auto e = big[r].entries();
        e.pop_back();
        CHECK(p.coords[r] == pt.coords[small.rank(IndexTuple(e, m - 1))]);
      }
    }
  }
}

TEST_CASE("string operations reject points off the top stratum") {
  const GrassmannParams P(2, 4, Field::get(2));
  const auto M = EchelonMatrix::pivot_only(P, IndexTuple::parse("1,3", 4));
  CHECK_THROWS_AS(string_label(M), DomainError);
  CHECK_THROWS_AS(project_tau(M), DomainError);
  const GrassmannParams L(1, 3, Field::get(2));
  CHECK_THROWS_AS(project_tau(EchelonMatrix::pivot_only(L, IndexTuple::parse("3", 3))), DomainError);
}
