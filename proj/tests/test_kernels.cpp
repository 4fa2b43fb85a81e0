#include "hmf/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hmf;

namespace {

VectorF vec(std::vector<double> v) { return VectorF(std::move(v)); }

VectorF random_vector(std::mt19937_64& rng, int n, double lo = 0.5, double hi = 2.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> r(lo, hi);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = g(rng);
    s += x * x;
  }
  const double scale = r(rng) / std::sqrt(s);
  for (auto& x : v) x *= scale;
  return VectorF(v);
}

double binomial(int a, int b) {
  double out = 1.0;
  for (int i = 1; i <= b; ++i) out = out * (a - b + i) / i;
  return out;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("multi-indices") {
  const auto m = MultiIndex::parse("3,0,1,0");
  CHECK(m.order() == 4);
  CHECK(m.factorial() == 6.0);
  CHECK(m.str() == "(3,0,1,0)");
  CHECK(MultiIndex::unit(4, 2).str() == "(0,1,0,0)");
  CHECK((m + MultiIndex::unit(4, 2)).order() == 5);
  CHECK_THROWS(MultiIndex::parse("1,-1"));
  CHECK_THROWS(MultiIndex::parse("1,,2"));
  CHECK_THROWS(MultiIndex::unit(3, 4));
  for (int n : {2, 4}) {
    for (int k = 0; k <= 4; ++k) {
      CHECK(multi_indices_of_order(n, k).size() == static_cast<std::size_t>(binomial(n + k - 1, k)));
    }
  }
}

TEST_CASE("polynomial jets are exact") {
  const auto x = vec({1.0, -2.0, 0.5});
  const auto c = jet_lift(x, 4);
  const auto r2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  CHECK(r2.value() == doctest::Approx(5.25));
  CHECK(r2.derivative(MultiIndex({1, 0, 0})) == doctest::Approx(2.0));
  CHECK(r2.derivative(MultiIndex({0, 1, 0})) == doctest::Approx(-4.0));
  CHECK(r2.derivative(MultiIndex({0, 0, 2})) == doctest::Approx(2.0));
  CHECK(r2.derivative(MultiIndex({1, 1, 0})) == 0.0);
  const auto cube = c[0] * c[0] * c[0];
  CHECK(cube.derivative(MultiIndex({3, 0, 0})) == doctest::Approx(6.0));
  CHECK(cube.derivative(MultiIndex({4, 0, 0})) == 0.0);
}

TEST_CASE("norm powers match closed forms") {
  const auto x = vec({0.3, -0.7, 1.1, 0.4});
  const double r2 = 0.09 + 0.49 + 1.21 + 0.16;
  const auto j = norm_power(jet_lift(x, 3), -2.0);
  CHECK(j.value() == doctest::Approx(1.0 / r2));
  // d/dx_i |x|^{-2} = -2 x_i / |x|^4
  CHECK(j.derivative(MultiIndex({0, 1, 0, 0})) == doctest::Approx(-2.0 * -0.7 / (r2 * r2)));
  // d^2/dx_1^2 |x|^{-2} = -2/|x|^4 + 8 x_1^2 / |x|^6
  CHECK(j.derivative(MultiIndex({2, 0, 0, 0})) == doctest::Approx(-2.0 / (r2 * r2) + 8.0 * 0.09 / (r2 * r2 * r2)));
  CHECK_THROWS_AS(norm_power(jet_lift(VectorF::zero(3), 2), -1.0), SingularInput);
  CHECK_THROWS(jet_lift(x, kMaxJetOrder + 1));
}

}  // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("q0 examples") {
  const int n = 4;
  const auto en = VectorF::basis(n, n);
  CHECK(norm(q0(en, 1, n) - en.mv()) < 1e-15);
  CHECK(norm(q0(en, 3, n) - en.mv()) < 1e-15);
  CHECK(q0(vec({2.0, 0, 0, 0}), 2, n).coeff(0) == doctest::Approx(0.25));
  CHECK(q0(vec({2.0, 0, 0, 0}), 1, n).coeff(0b1) == doctest::Approx(2.0 / 16.0));
  CHECK(q_m(en, MultiIndex::unit(n, n), 2, n).coeff(0) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(q0(VectorF::zero(n), 1, n), SingularInput);
  CHECK_THROWS_AS(q0(en, 4, n), Unsupported);
  CHECK_THROWS_AS(q0(en, 0, n), SpecViolation);
  CHECK_THROWS_AS(q0(VectorF::basis(3, 1), 1, n), DimensionMismatch);
}

TEST_CASE("parity") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto x = random_vector(rng, 5);
    const auto mx = VectorF::from_multivector(-x.mv());
    for (int s = 1; s < 5; ++s) {
      const double sign = s % 2 ? -1.0 : 1.0;
      REQUIRE(norm(q0(mx, s, 5) - sign * q0(x, s, 5)) < 1e-13);
    }
  }
}

TEST_CASE("general argument agrees on vectors and is multiplicative") {
  std::mt19937_64 rng(8);
  for (int n : {4, 5}) {
    for (int s = 1; s < n; ++s) {
      for (int k = 0; k < 20; ++k) {
        const auto x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
        REQUIRE(norm(q0_general(x.mv(), s, n) - q0(x, s, n)) < 1e-13);
        const auto a = x.mv() * y.mv();
        const auto b = z.mv();
        const auto lhs = q0_general(a * b, s, n);
        const auto rhs = q0_general(b, s, n) * q0_general(a, s, n);
        REQUIRE(norm(lhs - rhs) < 1e-12 * std::max(1.0, norm(lhs)));
        REQUIRE(kernel_multiplicativity_residual(a, b, s, n) < 1e-10);
        REQUIRE(norm(left_factor(a, s, n) - conjugate(reverse(q0_general(a, s, n)))) == 0.0);
      }
    }
  }
}

TEST_CASE("jet derivatives agree with central differences") {
  std::mt19937_64 rng(12);
  const int n = 4;
  for (int s : {1, 2, 3}) {
    for (int k = 0; k < 5; ++k) {
      const auto x = random_vector(rng, n, 0.8, 1.5);
      const auto jet = q_jet(x, 2, s, n);
      for (int i = 1; i <= n; ++i) {
        const double h = 1e-5;
        auto xp = x.mv() + MultivectorF::blade(n, Blade{1} << (i - 1), h);
        auto xm = x.mv() - MultivectorF::blade(n, Blade{1} << (i - 1), h);
        const auto fd = (q0(VectorF::from_multivector(xp), s, n) - q0(VectorF::from_multivector(xm), s, n)) * (1.0 / (2 * h));
        const auto d = jet.derivative(MultiIndex::unit(n, i));
        REQUIRE(norm(d - fd) < 1e-6 * std::max(1.0, norm(d)));
        REQUIRE(norm(q_m(x, MultiIndex::unit(n, i), s, n) - d) < 1e-12);
      }
      // mixed partials commute
      const auto m12 = q_m(x, MultiIndex({1, 1, 0, 0}), s, n);
      REQUIRE(norm(jet.derivative(MultiIndex({1, 1, 0, 0})) - m12) < 1e-10);
    }
  }
  CHECK_THROWS_AS(q_m(vec({1, 1, 1, 1}), MultiIndex({7, 0, 0, 0}), 1, n), Unsupported);
}

TEST_CASE("Cauchy kernel is monogenic from both sides") {
  std::mt19937_64 rng(21);
  const int n = 4;
  const Field f = [&](const VectorF& y) { return q0(y, 1, n); };
  for (int k = 0; k < 10; ++k) {
    const auto x = random_vector(rng, n, 0.8, 2.0);
    FdOptions opt;
    opt.domain = StencilDomain::Punctured;
    REQUIRE(norm(dirac_fd(f, x, 1e-4, opt)) < 1e-6);
    opt.side = Side::Right;
    REQUIRE(norm(dirac_fd(f, x, 1e-4, opt)) < 1e-6);
  }
}

TEST_CASE("Dirac operator lowers the weight") {
  // D |x|^{2-n} = (2 - n) x / |x|^n
  std::mt19937_64 rng(22);
  const int n = 5;
  const Field f = [&](const VectorF& y) { return q0(y, 2, n); };
  FdOptions opt;
  opt.domain = StencilDomain::Punctured;
  opt.richardson = true;
  for (int k = 0; k < 10; ++k) {
    const auto x = random_vector(rng, n, 0.8, 2.0);
    const auto d = dirac_fd(f, x, 1e-3, opt);
    REQUIRE(norm(d - (2.0 - n) * q0(x, 1, n)) < 1e-8);
  }
}

TEST_CASE("iterated kernel is annihilated by D^2") {
  std::mt19937_64 rng(23);
  const int n = 5;
  const Field f = [&](const VectorF& y) { return q0(y, 2, n); };
  FdOptions opt;
  opt.domain = StencilDomain::Punctured;
  for (int k = 0; k < 10; ++k) {
    const auto x = random_vector(rng, n, 1.0, 2.0);
    REQUIRE(norm(dirac_power_fd(f, x, 1e-3, 2, opt)) < 1e-4);
  }
}

TEST_CASE("constant fields and the point e1 + en") {
  const int n = 4;
  const Field c = [&](const VectorF&) { return MultivectorF::scalar(n, 3.0) + MultivectorF::blade(n, 0b101, 2.0); };
  const auto x = vec({1.0, 0.0, 0.0, 1.0});
  CHECK(norm(dirac_fd(c, x, 1e-4)) == 0.0);
  const Field f = [&](const VectorF& y) { return q0(y, 1, n); };
  CHECK(norm(dirac_fd(f, x, 1e-4)) < 1e-6);
}

TEST_CASE("left factor examples") {
  std::mt19937_64 rng(30);
  const int n = 5;
  for (int s = 1; s < n; ++s) {
    CHECK(norm(left_factor(unit<double>(n), s, n) - unit<double>(n)) < 1e-15);
    const auto d = random_vector(rng, n);
    CHECK(norm(left_factor(d.mv(), s, n)) == doctest::Approx(norm(q0(d, s, n))));
    if (s % 2 == 0) CHECK(norm(left_factor(d.mv(), s, n) - q0(d, s, n)) < 1e-15);
  }
  CHECK_THROWS_AS(left_factor(MultivectorF(n), 1, n), SingularInput);
}

TEST_CASE("stencil domains") {
  const Field f = [](const VectorF& y) { return q0(y, 1, 3); };
  CHECK_THROWS_AS(dirac_fd(f, vec({0, 0, 1e-5}), 1e-4), std::domain_error);
  FdOptions opt;
  opt.domain = StencilDomain::Punctured;
  CHECK_THROWS_AS(dirac_fd(f, vec({1e-5, 0, 0}), 1e-4, opt), std::domain_error);
  CHECK_THROWS(dirac_fd(f, vec({0, 0, 1}), 0.0));
  CHECK_THROWS(dirac_power_fd(f, vec({0, 0, 1}), 1e-3, 0));
}

}  // TEST_SUITE
