#pragma once

// Real Clifford algebra Cl_n with e_i^2 = -1, sparse blade storage.
//
// A blade e_A, A = {l_1 < ... < l_r}, is encoded as the bit mask with bit
// (l - 1) set for every l in A.  The empty mask is the unit e_0 = 1.

#include "hmf/errors.hpp"
#include "hmf/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hmf {

using Blade = std::uint32_t;

inline constexpr int kMaxDim = 12;

inline int grade_of(Blade b) { return std::popcount(b); }

// Sign of e_A e_B relative to e_{A xor B}: one factor -1 for every transposition
// needed to sort the generators, one more for every generator that squares.
inline int blade_product_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade rest = a >> 1; rest != 0; rest >>= 1) swaps += std::popcount(rest & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

// (-1)^{|A|(|A|-1)/2}
inline int reversion_sign(Blade b) {
  const int k = grade_of(b);
  return ((k * (k - 1) / 2) & 1) ? -1 : 1;
}

// Conjugation: reversion combined with e_j -> -e_j.
inline int conjugation_sign(Blade b) {
  return (grade_of(b) & 1) ? -reversion_sign(b) : reversion_sign(b);
}

inline void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::out_of_range("Clifford dimension must be in [1, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  }
}

template <Scalar S>
class Multivector {
 public:
  struct Term {
    Blade blade;
    S coeff;
    bool operator==(const Term&) const = default;
  };

  explicit Multivector(int dim) : dim_(dim) { check_dim(dim); }

  static Multivector scalar(int dim, S value) { return blade(dim, 0, std::move(value)); }

  static Multivector blade(int dim, Blade mask, S coeff = S(1)) {
    Multivector out(dim);
    if (mask >> dim) throw std::out_of_range("blade index exceeds algebra dimension");
    if (!ScalarTraits<S>::is_zero(coeff)) out.terms_.push_back({mask, std::move(coeff)});
    return out;
  }

  // e_i for 1 <= i <= dim.
  static Multivector basis_vector(int dim, int i, S coeff = S(1)) {
    if (i < 1 || i > dim) throw std::out_of_range("basis vector index out of range");
    return blade(dim, Blade{1} << (i - 1), std::move(coeff));
  }

  static Multivector vector(std::span<const S> components) {
    Multivector out(static_cast<int>(components.size()));
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (!ScalarTraits<S>::is_zero(components[i])) {
        out.terms_.push_back({Blade{1} << i, components[i]});
      }
    }
    return out;
  }

  // Sums duplicate blades and drops zeros.
  static Multivector from_terms(int dim, std::vector<Term> terms) {
    Multivector out(dim);
    for (const auto& t : terms) {
      if (t.blade >> dim) throw std::out_of_range("blade index exceeds algebra dimension");
    }
    out.terms_ = std::move(terms);
    out.normalize();
    return out;
  }

  int dim() const { return dim_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(Blade b) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const Term& t, Blade key) { return t.blade < key; });
    return (it != terms_.end() && it->blade == b) ? it->coeff : S(0);
  }

  // True when every nonzero coefficient sits on a blade of grade k.
  bool is_grade(int k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [k](const Term& t) { return grade_of(t.blade) == k; });
  }

  Multivector operator-() const {
    Multivector out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_dim(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->blade < b->blade)) {
        merged.push_back(*a++);
      } else if (a == terms_.end() || b->blade < a->blade) {
        merged.push_back(*b++);
      } else {
        S sum = a->coeff + b->coeff;
        if (!ScalarTraits<S>::is_zero(sum)) merged.push_back({a->blade, std::move(sum)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  Multivector& operator-=(const Multivector& o) { return *this += -o; }

  Multivector& operator*=(const S& k) {
    if (ScalarTraits<S>::is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= k;
    std::erase_if(terms_, [](const Term& t) { return ScalarTraits<S>::is_zero(t.coeff); });
    return *this;
  }

  Multivector& operator/=(const S& k)
    requires FieldScalar<S>
  {
    if (ScalarTraits<S>::is_zero(k)) throw SingularInput("division of a multivector by zero");
    for (auto& t : terms_) t.coeff /= k;
    std::erase_if(terms_, [](const Term& t) { return ScalarTraits<S>::is_zero(t.coeff); });
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const S& k) { return a *= k; }
  friend Multivector operator*(const S& k, Multivector a) { return a *= k; }
  friend Multivector operator/(Multivector a, const S& k)
    requires FieldScalar<S>
  {
    return a /= k;
  }

  // Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.require_same_dim(b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        S c = x.coeff * y.coeff;
        if (blade_product_sign(x.blade, y.blade) < 0) c = -c;
        out.push_back({x.blade ^ y.blade, std::move(c)});
      }
    }
    Multivector result(a.dim_);
    result.terms_ = std::move(out);
    result.normalize();
    return result;
  }

  bool operator==(const Multivector&) const = default;

  void require_same_dim(const Multivector& o) const {
    if (dim_ != o.dim_) {
      throw DimensionMismatch("multivector dimensions differ: " + std::to_string(dim_) + " vs " +
                              std::to_string(o.dim_));
    }
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.blade < y.blade; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().blade == t.blade) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term& t) { return ScalarTraits<S>::is_zero(t.coeff); });
    terms_ = std::move(merged);
  }

  int dim_;
  std::vector<Term> terms_;  // sorted by blade, no zero coefficients
};

using MultivectorF = Multivector<double>;
using MultivectorZ = Multivector<BigInt>;
using MultivectorQ = Multivector<Rational>;

template <Scalar S>
Multivector<S> unit(int dim) {
  return Multivector<S>::scalar(dim, S(1));
}

template <Scalar S>
Multivector<S> geometric_product(const Multivector<S>& a, const Multivector<S>& b) {
  return a * b;
}

template <Scalar S>
Multivector<S> reverse(const Multivector<S>& a) {
  std::vector<typename Multivector<S>::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) {
    if (reversion_sign(t.blade) < 0) t.coeff = -t.coeff;
  }
  return Multivector<S>::from_terms(a.dim(), std::move(terms));
}

template <Scalar S>
Multivector<S> conjugate(const Multivector<S>& a) {
  std::vector<typename Multivector<S>::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) {
    if (conjugation_sign(t.blade) < 0) t.coeff = -t.coeff;
  }
  return Multivector<S>::from_terms(a.dim(), std::move(terms));
}

template <Scalar S>
S scalar_part(const Multivector<S>& a) {
  return a.coeff(0);
}

// <a, b> = Sc(a conj(b))
template <Scalar S>
S scalar_product(const Multivector<S>& a, const Multivector<S>& b) {
  return scalar_part(a * conjugate(b));
}

template <Scalar S>
double norm(const Multivector<S>& a) {
  double sum = 0.0;
  for (const auto& t : a.terms()) {
    const double c = ScalarTraits<S>::to_double(t.coeff);
    sum += c * c;
  }
  return std::sqrt(sum);
}

template <Scalar S>
S norm_squared(const Multivector<S>& a) {
  S sum(0);
  for (const auto& t : a.terms()) sum += t.coeff * t.coeff;
  return sum;
}

template <Scalar S>
Multivector<S> grade_project(const Multivector<S>& a, int k) {
  if (k < 0 || k > a.dim()) {
    throw std::out_of_range("grade " + std::to_string(k) + " outside [0, " +
                            std::to_string(a.dim()) + "]");
  }
  std::vector<typename Multivector<S>::Term> terms;
  for (const auto& t : a.terms()) {
    if (grade_of(t.blade) == k) terms.push_back(t);
  }
  return Multivector<S>::from_terms(a.dim(), std::move(terms));
}

// conj(a) / Sc(conj(a) a).  Only an inverse when a is a product of vectors,
// which the caller guarantees.
template <FieldScalar S>
Multivector<S> clifford_group_inverse(const Multivector<S>& a) {
  const auto abar = conjugate(a);
  const S n2 = scalar_part(abar * a);
  if (ScalarTraits<S>::is_zero(n2)) throw SingularInput("Clifford number has zero norm");
  return abar / n2;
}

template <Scalar S>
Multivector<double> to_float(const Multivector<S>& a) {
  std::vector<Multivector<double>::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.blade, ScalarTraits<S>::to_double(t.coeff)});
  return Multivector<double>::from_terms(a.dim(), std::move(terms));
}

inline Multivector<Rational> to_rational(const Multivector<BigInt>& a) {
  std::vector<Multivector<Rational>::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.blade, Rational(t.coeff)});
  return Multivector<Rational>::from_terms(a.dim(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Grade-1 elements x = x_1 e_1 + ... + x_n e_n.

template <Scalar S>
class VectorN {
 public:
  explicit VectorN(std::vector<S> components) : x_(std::move(components)) {
    check_dim(static_cast<int>(x_.size()));
  }

  static VectorN zero(int dim) { return VectorN(std::vector<S>(static_cast<std::size_t>(dim), S(0))); }

  // e_i, 1-based.
  static VectorN basis(int dim, int i, S scale = S(1)) {
    if (i < 1 || i > dim) throw std::out_of_range("basis vector index out of range");
    auto v = zero(dim);
    v.x_[static_cast<std::size_t>(i - 1)] = std::move(scale);
    return v;
  }

  static VectorN from_multivector(const Multivector<S>& a) {
    if (!a.is_grade(1) && !a.is_zero()) {
      throw std::invalid_argument("multivector is not a vector (grade-1 element)");
    }
    auto v = zero(a.dim());
    for (const auto& t : a.terms()) v.x_[static_cast<std::size_t>(std::countr_zero(t.blade))] = t.coeff;
    return v;
  }

  int dim() const { return static_cast<int>(x_.size()); }
  std::span<const S> components() const { return x_; }

  // 1-based component access, matching x = x_1 e_1 + ... + x_n e_n.
  const S& operator[](int i) const { return x_.at(static_cast<std::size_t>(i - 1)); }
  S& operator[](int i) { return x_.at(static_cast<std::size_t>(i - 1)); }

  const S& last() const { return x_.back(); }

  Multivector<S> mv() const { return Multivector<S>::vector(x_); }

  bool is_zero() const {
    return std::all_of(x_.begin(), x_.end(), [](const S& c) { return ScalarTraits<S>::is_zero(c); });
  }

  S norm_squared() const {
    S sum(0);
    for (const auto& c : x_) sum += c * c;
    return sum;
  }

  double norm() const { return std::sqrt(ScalarTraits<S>::to_double(norm_squared())); }

  VectorN& operator+=(const VectorN& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
    return *this;
  }
  VectorN& operator-=(const VectorN& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
    return *this;
  }
  VectorN& operator*=(const S& k) {
    for (auto& c : x_) c *= k;
    return *this;
  }

  friend VectorN operator+(VectorN a, const VectorN& b) { return a += b; }
  friend VectorN operator-(VectorN a, const VectorN& b) { return a -= b; }
  friend VectorN operator*(VectorN a, const S& k) { return a *= k; }
  friend VectorN operator*(const S& k, VectorN a) { return a *= k; }
  VectorN operator-() const {
    VectorN out = *this;
    for (auto& c : out.x_) c = -c;
    return out;
  }

  bool operator==(const VectorN&) const = default;

 private:
  void require_same_dim(const VectorN& o) const {
    if (x_.size() != o.x_.size()) throw DimensionMismatch("vector dimensions differ");
  }

  std::vector<S> x_;
};

using VectorF = VectorN<double>;

// x^{-1} = -x / |x|^2
template <FieldScalar S>
VectorN<S> vector_inverse(const VectorN<S>& x) {
  const S n2 = x.norm_squared();
  if (ScalarTraits<S>::is_zero(n2)) throw SingularInput("zero vector has no inverse");
  auto out = x;
  for (int i = 1; i <= out.dim(); ++i) out[i] = -out[i] / n2;
  return out;
}

}  // namespace hmf
