#include "hmf/vahlen.hpp"

#include <doctest.h>

#include <random>

using namespace hmf;

namespace {

using VahlenQ = VahlenMatrix<Rational>;

VectorN<Rational> qvec(std::vector<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return VectorN<Rational>(out);
}

VahlenQ random_word(std::mt19937_64& rng, int n, int p, int len) {
  std::uniform_int_distribution<int> pick(0, 2 * p);
  auto m = VahlenQ::identity(n);
  for (int k = 0; k < len; ++k) {
    const int r = pick(rng);
    if (r == 2 * p) {
      m = m * make_inversion<Rational>(n);
    } else {
      m = m * make_translation(VectorN<Rational>::basis(n, r / 2 + 1, Rational(r % 2 ? -1 : 1)));
    }
  }
  return m;
}

VectorF to_f(const VectorN<Rational>& x) {
  std::vector<double> out;
  for (int i = 1; i <= x.dim(); ++i) out.push_back(x[i].convert_to<double>());
  return VectorF(out);
}

}  // namespace

TEST_SUITE("vahlen") {

TEST_CASE("generators have pseudo-determinant 1") {
  const int n = 4;
  CHECK(pseudo_det(make_inversion<BigInt>(n)) == unit<BigInt>(n));
  CHECK(pseudo_det(make_translation(VectorN<BigInt>::basis(n, 2, BigInt(5)))) == unit<BigInt>(n));
  const auto r = make_rotation(std::vector<VectorN<Rational>>{qvec({1, 0, 0, 0}), qvec({0, 1, 0, 0})});
  CHECK(pseudo_det(r) == unit<Rational>(n));
  CHECK(pseudo_det(make_dilatation(n, Rational(3))) == unit<Rational>(n));
  CHECK(is_vahlen(make_inversion<BigInt>(n)) == VahlenStatus::Valid);
}

TEST_CASE("translation and inversion act as expected") {
  const int n = 3;
  const auto x = qvec({1, 2, 3});
  const auto b = qvec({4, -1, 0});
  const auto tx = mobius_apply(make_translation(b), x);
  for (int i = 1; i <= n; ++i) CHECK(tx[i] == x[i] + b[i]);

  const auto jx = mobius_apply(make_inversion<Rational>(n), x);
  for (int i = 1; i <= n; ++i) CHECK(jx[i] == x[i] / Rational(14));

  const auto d = mobius_apply(make_dilatation(n, Rational(2)), x);
  for (int i = 1; i <= n; ++i) CHECK(d[i] == Rational(4) * x[i]);
}

TEST_CASE("rotation preserves the norm") {
  const auto r = make_rotation(std::vector<VectorN<Rational>>{qvec({1, 0, 0}), qvec({0, 1, 0})});
  const auto x = qvec({1, 2, 3});
  const auto y = mobius_apply(r, x);
  CHECK(y.norm_squared() == x.norm_squared());
  CHECK_THROWS(make_rotation(std::vector<VectorN<Rational>>{qvec({1, 1, 0})}));
}

TEST_CASE("inverse undoes a word") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    const auto m = random_word(rng, 4, 2, 1 + k % 7);
    const auto inv = mat_inv(m);
    const auto id = VahlenQ::identity(4);
    REQUIRE((m * inv).same_entries(id));
    REQUIRE((inv * m).same_entries(id));
    REQUIRE(inv.word().size() >= m.word().size());
  }
  CHECK_THROWS_AS(mat_inv(VahlenQ(unit<Rational>(2) * Rational(2), MultivectorQ(2), MultivectorQ(2), unit<Rational>(2))),
                  Unsupported);
}

TEST_CASE("J^2 = -1 and J^4 = 1") {
  const auto j = make_inversion<BigInt>(3);
  const auto j2 = j * j;
  CHECK(j2.a() == -unit<BigInt>(3));
  CHECK(j2.d() == -unit<BigInt>(3));
  CHECK((j2 * j2).same_entries(VahlenZ::identity(3)));
  const auto t = make_translation(VectorN<BigInt>::basis(3, 1, BigInt(1)));
  const auto nt = negate(t);
  CHECK(nt.a() == -t.a());
  CHECK(nt.b() == -t.b());
  CHECK(nt.word().size() == 3);
}

TEST_CASE("words satisfy the Vahlen conditions") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const auto m = random_word(rng, 5, 3, 1 + k % 9);
    REQUIRE(is_vahlen(m) == VahlenStatus::Valid);
    REQUIRE(pseudo_det(m) == unit<Rational>(5));
  }
  const VahlenQ loose(unit<Rational>(3), MultivectorQ(3), MultivectorQ(3), unit<Rational>(3));
  CHECK(is_vahlen(loose) == VahlenStatus::Undecided);
  const VahlenQ bad(unit<Rational>(3), MultivectorQ::blade(3, 0b11), MultivectorQ(3), unit<Rational>(3));
  CHECK(is_vahlen(bad) == VahlenStatus::Invalid);
  const VahlenQ zero_det(unit<Rational>(3), unit<Rational>(3), unit<Rational>(3), unit<Rational>(3));
  CHECK(is_vahlen(zero_det) == VahlenStatus::Invalid);
}

TEST_CASE("action composes and preserves the half-space") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0), h(0.3, 2.0);
  for (int k = 0; k < 50; ++k) {
    const int n = 4;
    const auto m = to_float(random_word(rng, n, 2, 1 + k % 6));
    const auto l = to_float(random_word(rng, n, 2, 1 + (k * 3) % 6));
    std::vector<double> xs{u(rng), u(rng), u(rng), h(rng)};
    const VectorF x(xs);
    const auto lhs = mobius_apply(m * l, x);
    const auto rhs = mobius_apply(m, mobius_apply(l, x));
    for (int i = 1; i <= n; ++i) REQUIRE(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-9));
    // x_n maps to x_n / |cx + d|^2
    const auto den = m.c() * x.mv() + m.d();
    REQUIRE(lhs[n] > 0.0);
    REQUIRE(mobius_apply(m, x)[n] == doctest::Approx(x[n] / norm_squared(den)).epsilon(1e-9));
    const auto right = mobius_apply_right(m, x);
    const auto left = mobius_apply(m, x);
    for (int i = 1; i <= n; ++i) REQUIRE(right[i] == doctest::Approx(left[i]).epsilon(1e-9));
  }
}

TEST_CASE("exact and float actions agree") {
  std::mt19937_64 rng(2);
  const auto m = random_word(rng, 3, 2, 6);
  const auto x = qvec({1, -2, 3});
  const auto exact = to_f(mobius_apply(m, x));
  const auto approx = mobius_apply(to_float(m), to_f(x));
  for (int i = 1; i <= 3; ++i) CHECK(approx[i] == doctest::Approx(exact[i]));
}

TEST_CASE("singular denominator") {
  CHECK_THROWS_AS(mobius_apply(make_inversion<Rational>(3), qvec({0, 0, 0})), SingularInput);
  CHECK_THROWS_AS(mobius_apply(make_inversion<double>(3), VectorF::zero(3)), SingularInput);
}

TEST_CASE("half-space points and the strip") {
  CHECK_THROWS(HalfSpacePoint(VectorF(std::vector<double>{0.0, 0.0})));
  CHECK_NOTHROW(HalfSpacePoint(VectorF(std::vector<double>{5.0, 0.1})));
  CHECK(in_strip(VectorF(std::vector<double>{1.0, 1.0, 0.5}), 0.25));
  CHECK_FALSE(in_strip(VectorF(std::vector<double>{1.0, 1.0, 0.2}), 0.25));
  CHECK_FALSE(in_strip(VectorF(std::vector<double>{4.0, 1.0, 1.0}), 0.25));
  CHECK_THROWS(in_strip(VectorF(std::vector<double>{1.0, 1.0}), 0.0));
}

TEST_CASE("word text") {
  const auto t = make_translation(VectorN<BigInt>::basis(3, 1, BigInt(-1)));
  const auto m = t * make_inversion<BigInt>(3);
  CHECK(m.word_string() == "T(-e1) J");
  CHECK(m.word().front().basis_index == -1);
  CHECK(make_translation(qvec({1, 1, 0})).word().front().basis_index == 0);
}

}  // TEST_SUITE
