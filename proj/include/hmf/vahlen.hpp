#pragma once

// 2x2 Clifford matrices (a b; c d) acting by x -> (ax + b)(cx + d)^{-1}.
//
// Whether the entries are products of vectors is not decided numerically.
// Matrices produced by the generator constructors and closed under
// multiplication/inversion carry a word of generator tokens; such matrices
// are Vahlen by construction.  Matrices assembled from raw entries have no
// provenance and can only be partially checked (see is_vahlen).

#include "hmf/multivector.hpp"
#include "hmf/text.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmf {

struct WordToken {
  enum class Kind { Translation, Inversion, Rotation, Dilatation };

  Kind kind;
  std::string arg;     // textual argument; empty for J
  int basis_index = 0; // +j / -j when a translation is by +e_j / -e_j, else 0

  std::string str() const {
    switch (kind) {
      case Kind::Translation: return "T(" + arg + ")";
      case Kind::Inversion: return "J";
      case Kind::Rotation: return "R(" + arg + ")";
      case Kind::Dilatation: return "D(" + arg + ")";
    }
    return "?";
  }

  bool operator==(const WordToken&) const = default;
};

template <Scalar S>
class VahlenMatrix {
 public:
  // Ad-hoc matrix without generator provenance.
  VahlenMatrix(Multivector<S> a, Multivector<S> b, Multivector<S> c, Multivector<S> d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    a_.require_same_dim(b_);
    a_.require_same_dim(c_);
    a_.require_same_dim(d_);
  }

  static VahlenMatrix identity(int dim) {
    Multivector<S> one = unit<S>(dim), zero(dim);
    VahlenMatrix m(one, zero, zero, one);
    m.generated_ = true;
    return m;
  }

  // Attaches generator provenance.  Only the generator constructors and the
  // group operations in this header call this.
  static VahlenMatrix generated(Multivector<S> a, Multivector<S> b, Multivector<S> c,
                                Multivector<S> d, std::vector<WordToken> word) {
    VahlenMatrix m(std::move(a), std::move(b), std::move(c), std::move(d));
    m.word_ = std::move(word);
    m.generated_ = true;
    return m;
  }

  int dim() const { return a_.dim(); }
  const Multivector<S>& a() const { return a_; }
  const Multivector<S>& b() const { return b_; }
  const Multivector<S>& c() const { return c_; }
  const Multivector<S>& d() const { return d_; }
  const std::vector<WordToken>& word() const { return word_; }
  bool from_generators() const { return generated_; }

  std::string word_string() const {
    std::string out;
    for (const auto& t : word_) {
      if (!out.empty()) out += ' ';
      out += t.str();
    }
    return out;
  }

  // Same entries; provenance is not part of equality.
  bool same_entries(const VahlenMatrix& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }

 private:
  Multivector<S> a_, b_, c_, d_;
  std::vector<WordToken> word_;
  bool generated_ = false;
};

using VahlenF = VahlenMatrix<double>;
using VahlenZ = VahlenMatrix<BigInt>;

// ---------------------------------------------------------------------------
// Generators

template <Scalar S>
VahlenMatrix<S> make_translation(const VectorN<S>& b) {
  const int n = b.dim();
  WordToken tok{WordToken::Kind::Translation, to_string(b.mv())};
  int nonzero = 0;
  for (int j = 1; j <= n; ++j) {
    if (ScalarTraits<S>::is_zero(b[j])) continue;
    ++nonzero;
    if (b[j] == S(1)) tok.basis_index = j;
    else if (b[j] == S(-1)) tok.basis_index = -j;
  }
  if (nonzero != 1) tok.basis_index = 0;
  return VahlenMatrix<S>::generated(unit<S>(n), b.mv(), Multivector<S>(n), unit<S>(n), {tok});
}

template <Scalar S>
VahlenMatrix<S> make_inversion(int dim) {
  return VahlenMatrix<S>::generated(Multivector<S>(dim), -unit<S>(dim), unit<S>(dim),
                                    Multivector<S>(dim), {WordToken{WordToken::Kind::Inversion, ""}});
}

// R = (u* 0; 0 u^{-1}) for u = u_1 ... u_t with unit vectors u_i.
template <Scalar S>
VahlenMatrix<S> make_rotation(const std::vector<VectorN<S>>& factors) {
  if (factors.empty()) throw std::invalid_argument("rotation needs at least one unit vector");
  const int n = factors.front().dim();
  Multivector<S> u = unit<S>(n);
  Multivector<S> u_inv = unit<S>(n);
  std::string arg;
  for (const auto& f : factors) {
    if (f.dim() != n) throw DimensionMismatch("rotation factors differ in dimension");
    if constexpr (ScalarTraits<S>::is_exact) {
      if (f.norm_squared() != S(1)) throw std::invalid_argument("rotation factor is not a unit vector");
    } else {
      if (std::abs(f.norm() - 1.0) > 1e-12) throw std::invalid_argument("rotation factor is not a unit vector");
    }
    u = u * f.mv();
    // unit vector: f^{-1} = -f
    u_inv = (-f.mv()) * u_inv;
    if (!arg.empty()) arg += ',';
    arg += to_string(f.mv());
  }
  Multivector<S> zero(n);
  return VahlenMatrix<S>::generated(reverse(u), zero, zero, u_inv,
                                    {WordToken{WordToken::Kind::Rotation, arg}});
}

// Special-group dilatation (alpha 0; 0 1/alpha).
template <FieldScalar S>
VahlenMatrix<S> make_dilatation(int dim, const S& alpha) {
  if (ScalarTraits<S>::is_zero(alpha)) throw std::invalid_argument("dilatation factor must be nonzero");
  Multivector<S> zero(dim);
  return VahlenMatrix<S>::generated(Multivector<S>::scalar(dim, alpha), zero, zero,
                                    Multivector<S>::scalar(dim, S(1) / alpha),
                                    {WordToken{WordToken::Kind::Dilatation, ScalarTraits<S>::to_string(alpha)}});
}

// ---------------------------------------------------------------------------
// Group operations

template <Scalar S>
VahlenMatrix<S> mat_mul(const VahlenMatrix<S>& m, const VahlenMatrix<S>& l) {
  if (m.dim() != l.dim()) throw DimensionMismatch("Vahlen matrices differ in dimension");
  auto a = m.a() * l.a() + m.b() * l.c();
  auto b = m.a() * l.b() + m.b() * l.d();
  auto c = m.c() * l.a() + m.d() * l.c();
  auto d = m.c() * l.b() + m.d() * l.d();
  if (m.from_generators() && l.from_generators()) {
    auto word = m.word();
    word.insert(word.end(), l.word().begin(), l.word().end());
    return VahlenMatrix<S>::generated(std::move(a), std::move(b), std::move(c), std::move(d), std::move(word));
  }
  return VahlenMatrix<S>(std::move(a), std::move(b), std::move(c), std::move(d));
}

template <Scalar S>
VahlenMatrix<S> operator*(const VahlenMatrix<S>& m, const VahlenMatrix<S>& l) {
  return mat_mul(m, l);
}

// a d* - b c*
template <Scalar S>
Multivector<S> pseudo_det(const VahlenMatrix<S>& m) {
  return m.a() * reverse(m.d()) - m.b() * reverse(m.c());
}

namespace detail {

template <Scalar S>
bool is_unit_scalar(const Multivector<S>& x) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return x == unit<S>(x.dim());
  } else {
    return norm(x - unit<S>(x.dim())) <= 1e-12;
  }
}

template <Scalar S>
WordToken inverse_token(const WordToken& t, int dim) {
  WordToken out = t;
  switch (t.kind) {
    case WordToken::Kind::Translation: {
      auto b = parse_multivector<S>(t.arg, dim);
      out.arg = to_string(-b);
      out.basis_index = -t.basis_index;
      break;
    }
    case WordToken::Kind::Rotation: {
      // (u_1 ... u_t)^{-1} = (-u_t) ... (-u_1)
      std::vector<std::string> parts;
      std::size_t start = 0;
      while (true) {
        auto end = t.arg.find(',', start);
        parts.push_back(t.arg.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (end == std::string::npos) break;
        start = end + 1;
      }
      out.arg.clear();
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.arg.empty()) out.arg += ',';
        out.arg += to_string(-parse_multivector<S>(*it, dim));
      }
      break;
    }
    case WordToken::Kind::Dilatation:
      if constexpr (FieldScalar<S>) {
        out.arg = ScalarTraits<S>::to_string(S(1) / ScalarTraits<S>::parse(t.arg));
      } else {
        out.arg = "1/" + t.arg;
      }
      break;
    case WordToken::Kind::Inversion:
      break;
  }
  return out;
}

}  // namespace detail

// (a b; c d)^{-1} = (d* -b*; -c* a*) for pseudo-determinant 1.
template <Scalar S>
VahlenMatrix<S> mat_inv(const VahlenMatrix<S>& m) {
  if (!detail::is_unit_scalar(pseudo_det(m))) {
    throw Unsupported("mat_inv requires pseudo-determinant 1");
  }
  auto a = reverse(m.d());
  auto b = -reverse(m.b());
  auto c = -reverse(m.c());
  auto d = reverse(m.a());
  if (!m.from_generators()) return VahlenMatrix<S>(std::move(a), std::move(b), std::move(c), std::move(d));
  std::vector<WordToken> word;
  for (auto it = m.word().rbegin(); it != m.word().rend(); ++it) {
    if (it->kind == WordToken::Kind::Inversion) {
      // J^{-1} = J^3
      word.insert(word.end(), 3, *it);
    } else {
      word.push_back(detail::inverse_token<S>(*it, m.dim()));
    }
  }
  return VahlenMatrix<S>::generated(std::move(a), std::move(b), std::move(c), std::move(d), std::move(word));
}

// -M, realised as M J J so generator provenance is kept.
template <Scalar S>
VahlenMatrix<S> negate(const VahlenMatrix<S>& m) {
  const auto j = make_inversion<S>(m.dim());
  auto out = mat_mul(mat_mul(m, j), j);
  return out;
}

enum class VahlenStatus { Valid, Invalid, Undecided };

inline const char* to_string(VahlenStatus s) {
  switch (s) {
    case VahlenStatus::Valid: return "valid";
    case VahlenStatus::Invalid: return "invalid";
    case VahlenStatus::Undecided: return "undecided";
  }
  return "?";
}

namespace detail {

template <Scalar S>
bool near_grade(const Multivector<S>& x, int k) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return x.is_grade(k) || x.is_zero();
  } else {
    const double total = norm(x);
    const double off = norm(x - grade_project(x, k));
    return off <= 1e-10 * std::max(1.0, total);
  }
}

template <Scalar S>
bool near_zero(const S& v) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return ScalarTraits<S>::is_zero(v);
  } else {
    return std::abs(v) <= 1e-14;
  }
}

// x^{-1} y is a vector, tested as conj(x) y without dividing.  Also requires
// conj(x) x to be a nonzero real, which every product of vectors satisfies.
template <Scalar S>
bool quotient_is_vector(const Multivector<S>& x, const Multivector<S>& y) {
  const auto xbar = conjugate(x);
  const auto n2 = xbar * x;
  if (!near_grade(n2, 0) || near_zero(scalar_part(n2))) return false;
  return near_grade(xbar * y, 1);
}

}  // namespace detail

// Checks the decidable Vahlen conditions.  The products-of-vectors condition
// is taken from provenance; a matrix without provenance that passes the
// other checks is Undecided.
template <Scalar S>
VahlenStatus is_vahlen(const VahlenMatrix<S>& m) {
  const auto det = pseudo_det(m);
  if (!detail::near_grade(det, 0) || detail::near_zero(scalar_part(det))) return VahlenStatus::Invalid;
  if (!m.a().is_zero() && !detail::quotient_is_vector(m.a(), m.b())) return VahlenStatus::Invalid;
  if (!m.c().is_zero() && !detail::quotient_is_vector(m.c(), m.d())) return VahlenStatus::Invalid;
  return m.from_generators() ? VahlenStatus::Valid : VahlenStatus::Undecided;
}

template <Scalar S>
VahlenMatrix<double> to_float(const VahlenMatrix<S>& m) {
  if (m.from_generators()) {
    return VahlenMatrix<double>::generated(to_float(m.a()), to_float(m.b()), to_float(m.c()),
                                           to_float(m.d()), m.word());
  }
  return VahlenMatrix<double>(to_float(m.a()), to_float(m.b()), to_float(m.c()), to_float(m.d()));
}

// ---------------------------------------------------------------------------
// Action on upper half-space

class HalfSpacePoint {
 public:
  explicit HalfSpacePoint(VectorF x) : x_(std::move(x)) {
    if (!(x_.last() > 0.0)) throw std::invalid_argument("half-space point needs x_n > 0");
  }
  const VectorF& vec() const { return x_; }
  int dim() const { return x_.dim(); }

 private:
  VectorF x_;
};

inline constexpr double kDenominatorGuard = 1e-14;
inline constexpr double kMobiusResidue = 1e-10;

// (ax + b)(cx + d)^{-1}, projected to grade 1.
template <FieldScalar S>
VectorN<S> mobius_apply(const VahlenMatrix<S>& m, const VectorN<S>& x) {
  if (x.dim() != m.dim()) throw DimensionMismatch("point and matrix differ in dimension");
  const auto xv = x.mv();
  const auto num = m.a() * xv + m.b();
  const auto den = m.c() * xv + m.d();
  const S den2 = scalar_part(conjugate(den) * den);
  if constexpr (ScalarTraits<S>::is_exact) {
    if (ScalarTraits<S>::is_zero(den2)) throw SingularInput("Moebius denominator cx+d is not invertible");
  } else {
    if (den2 < kDenominatorGuard) throw SingularInput("Moebius denominator cx+d is not invertible");
  }
  const auto image = num * clifford_group_inverse(den);
  const auto vec = grade_project(image, 1);
  if constexpr (ScalarTraits<S>::is_exact) {
    if (!(image == vec)) throw InternalConsistency("Moebius image is not a vector");
  } else {
    const double residue = norm(image - vec);
    if (residue > kMobiusResidue * std::max(1.0, norm(vec))) {
      throw InternalConsistency("Moebius image is not a vector (residue " + std::to_string(residue) + ")");
    }
  }
  auto out = VectorN<S>::from_multivector(vec);
  return out;
}

inline VectorF mobius_apply(const VahlenF& m, const HalfSpacePoint& x) { return mobius_apply(m, x.vec()); }

// (x c* + d*)^{-1} (x a* + b*): the same transformation written from the right.
template <FieldScalar S>
VectorN<S> mobius_apply_right(const VahlenMatrix<S>& m, const VectorN<S>& x) {
  const auto xv = x.mv();
  const auto num = xv * reverse(m.a()) + reverse(m.b());
  const auto den = xv * reverse(m.c()) + reverse(m.d());
  const auto image = clifford_group_inverse(den) * num;
  return VectorN<S>::from_multivector(grade_project(image, 1));
}

// |(x_1..x_{n-1})| <= 1/eps and x_n > eps
inline bool in_strip(const VectorF& x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("strip parameter must be positive");
  double lateral = 0.0;
  for (int i = 1; i < x.dim(); ++i) lateral += x[i] * x[i];
  return std::sqrt(lateral) <= 1.0 / eps && x.last() > eps;
}

}  // namespace hmf
