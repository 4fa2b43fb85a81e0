#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace hmf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Per-kind behaviour for Multivector coefficients.  Exact kinds never convert
// to floating point implicitly; to_double is the only way out.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static constexpr bool is_field = true;
  static constexpr const char* kind_name = "float";

  static double to_double(double v) { return v; }
  static bool is_zero(double v) { return v == 0.0; }

  static std::string to_string(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, end);
  }

  static double parse(std::string_view text) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      throw std::invalid_argument("malformed float coefficient '" + std::string(text) + "'");
    }
    return v;
  }
};

template <>
struct ScalarTraits<BigInt> {
  static constexpr bool is_exact = true;
  static constexpr bool is_field = false;
  static constexpr const char* kind_name = "integer";

  static double to_double(const BigInt& v) { return v.convert_to<double>(); }
  static bool is_zero(const BigInt& v) { return v.is_zero(); }
  static std::string to_string(const BigInt& v) { return v.str(); }

  static BigInt parse(std::string_view text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed integer coefficient '" + std::string(text) + "'");
    }
    return BigInt(std::string(text));
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr bool is_field = true;
  static constexpr const char* kind_name = "rational";

  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static std::string to_string(const Rational& v) { return v.str(); }

  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    auto num = ScalarTraits<BigInt>::parse(text.substr(0, slash));
    if (slash == std::string_view::npos) return Rational(num);
    auto den = ScalarTraits<BigInt>::parse(text.substr(slash + 1));
    if (den.is_zero()) throw std::invalid_argument("zero denominator in rational coefficient");
    return Rational(num, den);
  }
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::is_exact; };

template <class S>
concept ExactScalar = Scalar<S> && ScalarTraits<S>::is_exact;

template <class S>
concept FieldScalar = Scalar<S> && ScalarTraits<S>::is_field;

}  // namespace hmf
