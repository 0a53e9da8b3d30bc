#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "plucker/codes.hpp"
#include "plucker/error.hpp"

using namespace plucker;
using gf::Code;
using gf::Field;

namespace {

std::map<std::uint64_t, long> as_longs(const WeightDistribution& d) {
  std::map<std::uint64_t, long> out;
  for (const auto& [w, c] : d.counts) out[w] = c.get_si();
  return out;
}

// every codeword, not just class representatives, weights by full evaluation
std::map<std::uint64_t, long> brute_distribution(const GrassmannParams& P) {
  const auto pts = collect(enumerate_grassmannian(P));
  std::vector<std::vector<Code>> cols;
  for (const auto& M : pts) cols.push_back(plucker::plucker(M).coords);
  const auto& F = P.f();
  const int k = P.coordinate_count();
  const int q = F.q();
  std::map<std::uint64_t, long> out;
  std::vector<Code> c(k);
  const std::uint64_t total = ipow(q, k).get_ui();
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t y = x;
    for (auto& e : c) {
      e = static_cast<Code>(y % q);
      y /= q;
    }
    std::uint64_t w = 0;
    for (const auto& col : cols) {
      Code s = 0;
      for (int i = 0; i < k; ++i) s = F.add(s, F.mul(c[i], col[i]));
      w += s != 0;
    }
    ++out[w];
  }
  return out;
}

}  // namespace

TEST_CASE("small distributions") {
  SweepOptions o;
  const auto d24 = weight_distribution(CodeSpec::grassmann(GrassmannParams(2, 4, Field::get(2))), o);
  CHECK(d24.complete);
  CHECK(as_longs(d24) == std::map<std::uint64_t, long>{{0, 1}, {16, 35}, {20, 28}});
  CHECK(d24.total() == 64);
  CHECK(d24.min_weight().value() == 16);
  CHECK(d24.second_min_weight().value() == 20);
  const auto d13 = weight_distribution(CodeSpec::grassmann(GrassmannParams(1, 3, Field::get(2))), o);
  CHECK(as_longs(d13) == std::map<std::uint64_t, long>{{0, 1}, {4, 7}});
  CHECK_FALSE(d13.second_min_weight().has_value());
}

TEST_CASE("sweep agrees with evaluating every codeword") {
  const std::vector<std::tuple<int, int, int>> cases{{2, 4, 2}, {2, 4, 3}, {1, 4, 3}, {2, 5, 2}, {3, 5, 2}};
  for (const auto& [l, m, q] : cases) {
    if (ipow(q, index_space(l, m).size()) > 2'000'000) continue;
    const GrassmannParams P(l, m, Field::get(q));
    CHECK(as_longs(weight_distribution(CodeSpec::grassmann(P), SweepOptions{})) == brute_distribution(P));
  }
}

TEST_CASE("generator matrices") {
  const auto G13 = build_generator(CodeSpec::grassmann(GrassmannParams(1, 3, Field::get(2))));
  CHECK(G13.rows() == 3);
  CHECK(G13.cols() == 7);
  CHECK(G13.rank() == 3);
  const auto G24 = build_generator(CodeSpec::grassmann(GrassmannParams(2, 4, Field::get(2))));
  CHECK(G24.rows() == 6);
  CHECK(G24.cols() == 35);
  CHECK(G24.rank() == 6);
  CHECK_FALSE(G24.has_zero_column());
  for (std::uint64_t j = 0; j < G24.cols(); ++j) {
    const auto c = G24.column(j);
    CHECK(*std::find_if(c.begin(), c.end(), [](Code x) { return x != 0; }) == 1);
  }
  const auto G3 = build_generator(CodeSpec::grassmann(GrassmannParams(2, 4, Field::get(3))));
  CHECK(G3.cols() == 130);
  CHECK(G3.rank() == 6);
}

TEST_CASE("schubert code on theta = (1,4)") {
  const GrassmannParams P(2, 4, Field::get(2));
  const auto theta = IndexTuple::parse("1,4", 4);
  const auto spec = CodeSpec::schubert(P, theta);
  CHECK(spec.n == 7);
  CHECK(spec.k == 3);
  CHECK(spec.name() == "C_{1,4}(2,4) q=2");
  const auto G = build_generator(spec);
  CHECK(G.rank() == 3);
  const auto d = weight_distribution(G, SweepOptions{});
  CHECK(d.min_weight().value() == 4);
  CHECK(schubert_min_distance(theta, P, &d).verified);
  CHECK(schubert_min_distance(theta, P).value == 4);
  // min distance q^delta across every alpha
  for (int q : {2, 3})
    for (const auto& a : enumerate_index_tuples(2, 5)) {
      const GrassmannParams Q(2, 5, Field::get(q));
      const auto s = CodeSpec::schubert(Q, a);
      CHECK(s.n == schubert_variety_size(a, q));
      CHECK(static_cast<std::size_t>(s.k) == nabla_set(a).size());
      const auto dist = weight_distribution(s, SweepOptions{});
      CHECK(dist.min_weight().value() == ipow(q, delta(a)).get_ui());
    }
}

TEST_CASE("single codeword weights") {
  const GrassmannParams P(2, 4, Field::get(2));
  const auto spec = CodeSpec::grassmann(P);
  const auto G = build_generator(spec);
  CHECK(codeword_weight(DualFunctional::parse(P, "X:3,4"), spec) == 16);
  CHECK(codeword_weight(DualFunctional::parse(P, "X:1,2 + X:3,4"), spec) == 20);
  CHECK(codeword_weight(G, std::vector<Code>{1, 0, 0, 0, 0, 1}) == 20);
  CHECK(codeword_weight(G, std::vector<Code>{0, 0, 0, 0, 0, 1}) == 16);
  for (int m = 2; m <= 5; ++m) {
    const GrassmannParams L(1, m, Field::get(2));
    std::vector<Code> c(m);
    for (std::uint64_t r = 0; r < class_count(2, m); ++r) {
      decode_class(2, r, c);
      CHECK(codeword_weight(DualFunctional(L, c), CodeSpec::grassmann(L)) == (1u << (m - 1)));
    }
  }
  const auto theta = IndexTuple::parse("1,4", 4);
  CHECK_THROWS_AS(codeword_weight(DualFunctional::parse(P, "X:3,4"), CodeSpec::schubert(P, theta)), UsageError);
  CHECK(codeword_weight(DualFunctional::parse(P, "X:1,4"), CodeSpec::schubert(P, theta)) == 4);
}

TEST_CASE("both weight routes agree") {
  std::mt19937 rng(17);
  for (const auto& [l, m, q] : std::vector<std::tuple<int, int, int>>{{2, 4, 3}, {2, 5, 2}, {3, 6, 2}, {2, 4, 4}}) {
    const GrassmannParams P(l, m, Field::get(q));
    const auto spec = CodeSpec::grassmann(P);
    const auto G = build_generator(spec);
    const int k = spec.k;
    for (int t = 0; t < 20; ++t) {
      std::vector<Code> c(k);
      decode_class(q, rng() % class_count(q, k), c);
      CHECK(codeword_weight(G, c) == codeword_weight(DualFunctional(P, c), spec));
    }
  }
}

TEST_CASE("class representatives round-trip") {
  for (int q : {2, 3, 4, 5}) {
    const int k = 4;
    const std::uint64_t n = class_count(q, k);
    CHECK(n == (ipow(q, k).get_ui() - 1) / (q - 1));
    std::vector<Code> c(k), prev;
    for (std::uint64_t r = 0; r < n; ++r) {
      decode_class(q, r, c);
      CHECK(*std::find_if(c.begin(), c.end(), [](Code x) { return x != 0; }) == 1);
      CHECK(class_rank(q, c) == r);
      if (r) CHECK(prev < c);
      prev = c;
    }
  }
  CHECK_THROWS_AS(class_count(2, 70), ResourceError);
}

TEST_CASE("class weights land on the right classes") {
  const GrassmannParams P(2, 4, Field::get(3));
  const auto G = build_generator(CodeSpec::grassmann(P));
  const auto w = class_weights(G, SweepOptions{});
  REQUIRE(w.size() == class_count(3, 6));
  std::vector<Code> c(6);
  for (std::uint64_t r = 0; r < w.size(); r += 7) {
    decode_class(3, r, c);
    CHECK(w[r] == codeword_weight(G, c));
  }
}

TEST_CASE("parallel sweeps are deterministic") {
  for (int q : {2, 3}) {
    const auto spec = CodeSpec::grassmann(GrassmannParams(2, q == 2 ? 5 : 4, Field::get(q)));
    std::string ref;
    for (unsigned j : {1u, 2u, 3u, 4u}) {
      SweepOptions o;
      o.parallelism = j;
      const auto s = weight_distribution(spec, o).to_json();
      if (ref.empty()) ref = s;
      CHECK(s == ref);
    }
  }
}

TEST_CASE("budget refuses oversize sweeps") {
  const auto spec = CodeSpec::grassmann(GrassmannParams(2, 4, Field::get(2)));
  SweepOptions o;
  o.budget = 63 * 35 - 1;
  CHECK_THROWS_AS(weight_distribution(spec, o), ResourceError);
  o.budget = 63 * 35;
  CHECK_NOTHROW(weight_distribution(spec, o));
  CHECK_THROWS_AS(check_budget(CodeSpec::grassmann(GrassmannParams(3, 7, Field::get(2))), SweepOptions{}), ResourceError);
}

TEST_CASE("serialization") {
  const auto d = weight_distribution(CodeSpec::grassmann(GrassmannParams(2, 4, Field::get(2))), SweepOptions{});
  const auto j = nlohmann::json::parse(d.to_json());
  CHECK(j["counts"]["16"] == "35");
  CHECK(j["complete"] == true);
  CHECK(d.to_csv() == "weight,count\n0,1\n16,35\n20,28\n");
}

TEST_CASE("weight claims") {
  const auto s25 = CodeSpec::grassmann(GrassmannParams(2, 5, Field::get(2)));
  CHECK(min_distance(s25).value == 64);
  CHECK(second_min_weight(s25).value == 80);
  const auto s36 = CodeSpec::grassmann(GrassmannParams(3, 6, Field::get(2)));
  CHECK(min_distance(s36).value == 512);
  CHECK(second_min_weight(s36).value == 640);
  CHECK_FALSE(min_distance(s36).verified);
  for (int m : {3, 4, 5}) {
    CHECK_THROWS_AS(second_min_weight(CodeSpec::grassmann(GrassmannParams(1, m, Field::get(2)))), DomainError);
    CHECK_THROWS_AS(second_min_weight(CodeSpec::grassmann(GrassmannParams(m - 1, m, Field::get(2)))), DomainError);
  }
  const auto d = weight_distribution(s25, SweepOptions{});
  CHECK(min_distance(s25, &d).verified);
  CHECK(second_min_weight(s25, &d).verified);
}

TEST_CASE("macwilliams: simplex dual is the Hamming code") {
  const auto d = weight_distribution(CodeSpec::grassmann(GrassmannParams(1, 3, Field::get(2))), SweepOptions{});
  const auto r = macwilliams_transform(d);
  CHECK(r.integral);
  CHECK(r.nonnegative);
  CHECK(r.dual == std::vector<mpz_class>{1, 0, 0, 7, 7, 0, 0, 1});
}

TEST_CASE("macwilliams: recurrence matches the binomial sum") {
  for (int q : {2, 3, 4})
    for (std::uint64_t n : {1u, 5u, 13u})
      for (std::uint64_t j = 0; j <= n; ++j)
        for (std::uint64_t x = 0; x <= n; ++x) {
          // K_j(x) = sum_i (-1)^i (q-1)^{j-i} C(x,i) C(n-x,j-i)
          mpz_class want = 0;
          for (std::uint64_t i = 0; i <= j; ++i) {
            mpz_class a, b, p;
            mpz_bin_uiui(a.get_mpz_t(), x, i);
            mpz_bin_uiui(b.get_mpz_t(), n - x, j - i);
            mpz_ui_pow_ui(p.get_mpz_t(), q - 1, j - i);
            want += (i % 2 ? -1 : 1) * a * b * p;
          }
          CHECK(krawtchouk(q, n, j, x) == want);
        }
  for (const auto& [l, m, q] : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {2, 4, 3}, {2, 5, 2}}) {
    const auto spec = CodeSpec::grassmann(GrassmannParams(l, m, Field::get(q)));
    const auto d = weight_distribution(spec, SweepOptions{});
    const auto r = macwilliams_transform(d);
    CHECK(r.integral);
    CHECK(r.nonnegative);
    mpz_class sum = 0;
    for (const auto& b : r.dual) sum += b;
    CHECK(sum == ipow(q, spec.n - spec.k));
    CHECK(r.dual[0] == 1);
    // points are distinct and no two are proportional: no dual words of weight 1 or 2
    CHECK(r.dual[1] == 0);
    CHECK(r.dual[2] == 0);
  }
}
