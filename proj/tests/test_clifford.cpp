#include "hmf/multivector.hpp"
#include "hmf/text.hpp"

#include <doctest.h>

#include <random>

using namespace hmf;

namespace {

// Blade product by rewriting the index word: concatenate, bubble-sort with a
// sign flip per adjacent swap, then cancel e_i e_i = -1.
std::pair<int, std::vector<int>> naive_blade_product(std::vector<int> word) {
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        sign = -sign;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < word.size();) {
    if (i + 1 < word.size() && word[i] == word[i + 1]) {
      sign = -sign;
      i += 2;
    } else {
      out.push_back(word[i++]);
    }
  }
  return {sign, out};
}

std::vector<int> indices(Blade b) {
  std::vector<int> out;
  for (int i = 0; b; ++i, b >>= 1) {
    if (b & 1) out.push_back(i + 1);
  }
  return out;
}

Blade mask(const std::vector<int>& idx) {
  Blade b = 0;
  for (int i : idx) b |= Blade{1} << (i - 1);
  return b;
}

MultivectorZ random_mv(std::mt19937_64& rng, int n, int terms) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<Blade> blade(0, (Blade{1} << n) - 1);
  std::vector<MultivectorZ::Term> t;
  for (int i = 0; i < terms; ++i) t.push_back({blade(rng), BigInt(coeff(rng))});
  return MultivectorZ::from_terms(n, t);
}

MultivectorZ e(int n, std::vector<int> idx) { return MultivectorZ::blade(n, mask(idx)); }

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("basis relations") {
  const int n = 4;
  CHECK(e(n, {1}) * e(n, {1}) == MultivectorZ::scalar(n, -1));
  CHECK(e(n, {1}) * e(n, {2}) == e(n, {1, 2}));
  CHECK(e(n, {2}) * e(n, {1}) == -e(n, {1, 2}));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto s = e(n, {i}) * e(n, {j}) + e(n, {j}) * e(n, {i});
      CHECK(s == MultivectorZ::scalar(n, i == j ? -2 : 0));
    }
  }
}

TEST_CASE("blade products agree with index rewriting") {
  for (int n : {3, 5}) {
    for (Blade a = 0; a < (Blade{1} << n); ++a) {
      for (Blade b = 0; b < (Blade{1} << n); ++b) {
        auto word = indices(a);
        auto rhs = indices(b);
        word.insert(word.end(), rhs.begin(), rhs.end());
        const auto [sign, rest] = naive_blade_product(word);
        const auto prod = MultivectorZ::blade(n, a) * MultivectorZ::blade(n, b);
        REQUIRE(prod == MultivectorZ::blade(n, mask(rest), BigInt(sign)));
      }
    }
  }
}

TEST_CASE("identity element") {
  std::mt19937_64 rng(1);
  const auto a = random_mv(rng, 4, 6);
  CHECK(unit<BigInt>(4) * a == a);
  CHECK(a * unit<BigInt>(4) == a);
}

TEST_CASE("associativity and anti-automorphisms on random elements") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 6;
    const auto a = random_mv(rng, n, 5), b = random_mv(rng, n, 5), c = random_mv(rng, n, 5);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(conjugate(a * b) == conjugate(b) * conjugate(a));
    REQUIRE(reverse(a * b) == reverse(b) * reverse(a));
    REQUIRE(conjugate(conjugate(a)) == a);
    REQUIRE(reverse(reverse(a)) == a);
  }
}

TEST_CASE("conjugation and reversion examples") {
  const int n = 3;
  CHECK(conjugate(e(n, {1})) == -e(n, {1}));
  CHECK(conjugate(e(n, {1, 2})) == -e(n, {1, 2}));
  CHECK(conjugate(unit<BigInt>(n)) == unit<BigInt>(n));
  CHECK(reverse(e(n, {1})) == e(n, {1}));
  CHECK(reverse(e(n, {1, 2})) == -e(n, {1, 2}));
  CHECK(reverse(MultivectorZ::scalar(n, 5)) == MultivectorZ::scalar(n, 5));
  // conjugation = reversion composed with e_j -> -e_j
  CHECK(conjugate(e(n, {1, 2, 3})) == e(n, {1, 2, 3}));
  CHECK(reverse(e(n, {1, 2, 3})) == -e(n, {1, 2, 3}));
}

TEST_CASE("vectors are fixed by reversion and negated by conjugation") {
  const std::vector<BigInt> comps{BigInt(2), BigInt(-3), BigInt(5)};
  const auto x = MultivectorZ::vector(comps);
  CHECK(reverse(x) == x);
  CHECK(conjugate(x) == -x);
  CHECK(grade_project(x, 1) == x);
  CHECK(grade_project(x, 0).is_zero());
  CHECK(grade_project(x, 2).is_zero());
}

TEST_CASE("scalar part, scalar product, norm") {
  const int n = 2;
  CHECK(scalar_product(e(n, {1}), e(n, {1})) == 1);
  CHECK(norm(MultivectorF::scalar(n, 1.0) + MultivectorF::blade(n, 0b11)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(MultivectorF(n)) == 0.0);
  const std::vector<BigInt> comps{BigInt(3), BigInt(4)};
  const auto x = MultivectorZ::vector(comps);
  CHECK(scalar_product(x, x) == 25);
  CHECK(scalar_part(MultivectorZ::scalar(n, 7) + e(n, {1})) == 7);
}

TEST_CASE("grade projection") {
  const int n = 3;
  const auto a = unit<BigInt>(n) + e(n, {1}) + e(n, {1, 2});
  CHECK(grade_project(a, 1) == e(n, {1}));
  CHECK(grade_project(e(n, {1, 2}), 0).is_zero());
  CHECK_THROWS_AS(grade_project(a, 4), std::out_of_range);
  CHECK_THROWS_AS(grade_project(a, -1), std::out_of_range);
}

TEST_CASE("vector inverse") {
  const std::vector<double> comps{3.0, 4.0};
  const VectorF x(comps);
  const auto inv = vector_inverse(x);
  CHECK(inv[1] == doctest::Approx(-3.0 / 25.0));
  CHECK(inv[2] == doctest::Approx(-4.0 / 25.0));
  const auto prod = x.mv() * inv.mv();
  CHECK(norm(prod - unit<double>(2)) < 1e-15);
  CHECK_THROWS_AS(vector_inverse(VectorF::zero(2)), SingularInput);

  const auto xq = VectorN<Rational>(std::vector<Rational>{Rational(1), Rational(2)});
  const auto iq = vector_inverse(xq);
  CHECK(iq[1] == Rational(-1, 5));
  CHECK(xq.mv() * iq.mv() == unit<Rational>(2));
}

TEST_CASE("Clifford group inverse of vector products") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int k = 0; k < 50; ++k) {
    const int n = 4;
    MultivectorQ a = unit<Rational>(n);
    for (int f = 0; f < 3; ++f) {
      std::vector<Rational> v(n);
      do {
        for (auto& x : v) x = Rational(c(rng));
      } while (std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; }));
      a = a * MultivectorQ::vector(v);
    }
    const auto inv = clifford_group_inverse(a);
    REQUIRE(a * inv == unit<Rational>(n));
    REQUIRE(inv * a == unit<Rational>(n));
  }
  CHECK_THROWS_AS(clifford_group_inverse(MultivectorQ(3)), SingularInput);
}

TEST_CASE("exact arithmetic stays exact") {
  static_assert(std::is_same_v<decltype(MultivectorZ(2) * MultivectorZ(2)), MultivectorZ>);
  static_assert(std::is_same_v<decltype(MultivectorQ(2) + MultivectorQ(2)), MultivectorQ>);
  static_assert(ExactScalar<BigInt> && ExactScalar<Rational> && !ExactScalar<double>);
  const BigInt big("123456789012345678901234567890");
  const auto a = MultivectorZ::scalar(3, big);
  CHECK(scalar_part(a * a) == big * big);
}

TEST_CASE("dimension mismatch and limits") {
  CHECK_THROWS_AS(MultivectorZ(2) + MultivectorZ(3), DimensionMismatch);
  CHECK_THROWS_AS(MultivectorZ(2) * MultivectorZ(3), DimensionMismatch);
  CHECK_THROWS(MultivectorZ(0));
  CHECK_THROWS(MultivectorZ(kMaxDim + 1));
  CHECK_THROWS_AS(MultivectorZ::blade(2, 0b100), std::out_of_range);
}

TEST_CASE("text form round-trips") {
  const int n = 4;
  const auto a = MultivectorZ::scalar(n, 1) + MultivectorZ::blade(n, 0b1, BigInt(2)) - MultivectorZ::blade(n, 0b11, BigInt(3));
  CHECK(to_string(a) == "1 + 2*e1 - 3*e12");
  CHECK(parse_multivector<BigInt>("1 + 2*e1 - 3*e12", n) == a);
  CHECK(to_string(MultivectorZ(n)) == "0");
  CHECK(to_string(e(n, {2, 4})) == "e24");
  const auto f = MultivectorF::scalar(n, -1.5e-7) + MultivectorF::blade(n, 0b1000, 0.25);
  CHECK(parse_multivector<double>(to_string(f), n) == f);
  CHECK(blade_name(Blade{1} << 9 | 1) == "e1_10");
  CHECK(parse_blade("e1_10", 10) == (Blade{1} << 9 | 1));
  CHECK_THROWS(parse_blade("e21", 4));
  CHECK_THROWS(parse_multivector<BigInt>("1 + e5", 4));
}

}  // TEST_SUITE
