#pragma once

// Textual multivector form used by the CLI and inside JSON documents:
//
//   "1 + 2*e1 - 3*e12"       (n <= 9: blade indices written as digits)
//   "0.5*e1_10 - e2_11"      (any index >= 10: indices joined by '_')
//
// Exact coefficients are decimal integers or "p/q"; floats use the shortest
// round-trip representation.

#include "hmf/multivector.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

namespace hmf {

inline std::string blade_name(Blade b) {
  if (b == 0) return "1";
  bool wide = (b >> 9) != 0;
  std::string out = "e";
  bool first = true;
  for (int i = 0; b != 0; ++i, b >>= 1) {
    if (!(b & 1)) continue;
    if (wide && !first) out += '_';
    out += std::to_string(i + 1);
    first = false;
  }
  return out;
}

// Parses "e12", "e1_10"; indices strictly increasing, each in [1, dim].
inline Blade parse_blade(std::string_view token, int dim) {
  if (token.size() < 2 || token[0] != 'e') {
    throw std::invalid_argument("malformed blade '" + std::string(token) + "'");
  }
  std::vector<int> idx;
  auto body = token.substr(1);
  if (body.find('_') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= body.size()) {
      auto end = body.find('_', start);
      auto part = body.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos) {
        throw std::invalid_argument("malformed blade '" + std::string(token) + "'");
      }
      idx.push_back(std::stoi(std::string(part)));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  } else {
    for (char ch : body) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw std::invalid_argument("malformed blade '" + std::string(token) + "'");
      }
      idx.push_back(ch - '0');
    }
  }
  Blade mask = 0;
  int prev = 0;
  for (int i : idx) {
    if (i <= prev || i > dim) {
      throw std::invalid_argument("blade '" + std::string(token) + "' is not canonical in dimension " +
                                  std::to_string(dim));
    }
    mask |= Blade{1} << (i - 1);
    prev = i;
  }
  return mask;
}

template <Scalar S>
std::string to_string(const Multivector<S>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    bool negative = t.coeff < S(0);
    S mag = negative ? S(-t.coeff) : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.blade == 0) {
      out += ScalarTraits<S>::to_string(mag);
    } else if (mag == S(1)) {
      out += blade_name(t.blade);
    } else {
      out += ScalarTraits<S>::to_string(mag);
      out += '*';
      out += blade_name(t.blade);
    }
  }
  return out;
}

namespace detail {

// Splits "a + b - c" into signed terms; a sign right after a float exponent
// marker ("1e-5") is not a separator.
inline std::vector<std::pair<bool, std::string>> split_terms(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact.empty()) throw std::invalid_argument("empty multivector text");
  std::vector<std::pair<bool, std::string>> terms;
  bool negative = false;
  std::string cur;
  for (std::size_t i = 0; i < compact.size(); ++i) {
    char ch = compact[i];
    bool is_sign = ch == '+' || ch == '-';
    bool exponent_sign = is_sign && i >= 2 && (compact[i - 1] == 'e' || compact[i - 1] == 'E') &&
                         (std::isdigit(static_cast<unsigned char>(compact[i - 2])) || compact[i - 2] == '.');
    if (is_sign && !exponent_sign) {
      if (!cur.empty()) {
        terms.emplace_back(negative, cur);
        cur.clear();
      } else if (i != 0) {
        throw std::invalid_argument("dangling sign in multivector text '" + std::string(text) + "'");
      }
      negative = ch == '-';
    } else {
      cur += ch;
    }
  }
  if (cur.empty()) throw std::invalid_argument("trailing sign in multivector text '" + std::string(text) + "'");
  terms.emplace_back(negative, cur);
  return terms;
}

}  // namespace detail

template <Scalar S>
Multivector<S> parse_multivector(std::string_view text, int dim) {
  std::vector<typename Multivector<S>::Term> terms;
  for (auto& [negative, body] : detail::split_terms(text)) {
    S coeff(1);
    Blade blade = 0;
    auto star = body.find('*');
    if (star != std::string::npos) {
      coeff = ScalarTraits<S>::parse(std::string_view(body).substr(0, star));
      blade = parse_blade(std::string_view(body).substr(star + 1), dim);
    } else if (body[0] == 'e') {
      blade = parse_blade(body, dim);
    } else {
      coeff = ScalarTraits<S>::parse(body);
    }
    if (negative) coeff = -coeff;
    terms.push_back({blade, std::move(coeff)});
  }
  return Multivector<S>::from_terms(dim, std::move(terms));
}

}  // namespace hmf
