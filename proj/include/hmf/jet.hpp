#pragma once

// Truncated multivariate Taylor expansions ("jets").  A jet of order K in n
// variables stores the Taylor coefficients f^{(m)}(x0) / m! for all
// multi-indices with |m| <= K; products are truncated at total order K.

#include "hmf/multivector.hpp"

#include <compare>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace hmf {

class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> m);

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  // tau(j): m_i = delta_ij, 1-based j.
  static MultiIndex unit(int n, int j);
  // Parses "2,0,1".
  static MultiIndex parse(const std::string& text);

  int dim() const { return static_cast<int>(m_.size()); }
  int order() const;
  // 1-based, matching m = (m_1, ..., m_n).
  int operator[](int i) const { return m_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const int> components() const { return m_; }

  // m! = m_1! ... m_n!
  double factorial() const;
  std::string str() const;

  MultiIndex operator+(const MultiIndex& o) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> m_;
};

// All multi-indices in n variables with |m| = k, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int n, int k);

// Shared indexing and product table for jets of a given (n, K).
class JetLayout {
 public:
  JetLayout(int n, int order);

  int dim() const { return n_; }
  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& index(std::size_t pos) const { return indices_[pos]; }
  // Position of m, or -1 when |m| > K.
  std::ptrdiff_t position(const MultiIndex& m) const;

  struct ProductEntry {
    std::uint32_t lhs, rhs, out;
  };
  const std::vector<ProductEntry>& product_table() const { return products_; }

 private:
  std::uint64_t code(std::span<const int> m) const;

  int n_;
  int order_;
  std::vector<MultiIndex> indices_;  // sorted by total order
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
  std::vector<ProductEntry> products_;
};

// Thread-safe cache of layouts.
std::shared_ptr<const JetLayout> jet_layout(int n, int order);

inline constexpr int kMaxJetOrder = 12;

template <class T>
class Jet {
 public:
  Jet(std::shared_ptr<const JetLayout> layout, const T& zero)
      : layout_(std::move(layout)), coeffs_(layout_->size(), zero), zero_(zero) {}

  static Jet constant(std::shared_ptr<const JetLayout> layout, const T& value, const T& zero) {
    Jet j(std::move(layout), zero);
    j.coeffs_[0] = value;
    return j;
  }

  const JetLayout& layout() const { return *layout_; }
  const std::shared_ptr<const JetLayout>& layout_ptr() const { return layout_; }
  int order() const { return layout_->order(); }

  // Taylor coefficient at m (derivative / m!).
  const T& coefficient(const MultiIndex& m) const {
    auto pos = layout_->position(m);
    if (pos < 0) throw std::out_of_range("multi-index " + m.str() + " exceeds jet order");
    return coeffs_[static_cast<std::size_t>(pos)];
  }
  T& coefficient(const MultiIndex& m) {
    auto pos = layout_->position(m);
    if (pos < 0) throw std::out_of_range("multi-index " + m.str() + " exceeds jet order");
    return coeffs_[static_cast<std::size_t>(pos)];
  }

  // Partial derivative d^{|m|} / dx^m at the expansion point.
  T derivative(const MultiIndex& m) const { return coefficient(m) * m.factorial(); }

  const T& value() const { return coeffs_[0]; }
  const T& operator[](std::size_t pos) const { return coeffs_[pos]; }
  T& operator[](std::size_t pos) { return coeffs_[pos]; }

  Jet& operator+=(const Jet& o) {
    require_same_layout(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    require_same_layout(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Jet& operator*=(double k) {
    for (auto& c : coeffs_) c = c * k;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double k) { return a *= k; }
  friend Jet operator*(double k, Jet a) { return a *= k; }

  // Truncated product; coefficient products keep operand order (a_i * b_j).
  template <class U>
  friend Jet operator*(const Jet& a, const Jet<U>& b) {
    if (a.layout_.get() != &b.layout()) throw std::invalid_argument("jets with different layouts");
    Jet out(a.layout_, a.zero_);
    for (const auto& e : a.layout_->product_table()) {
      out.coeffs_[e.out] += a.coeffs_[e.lhs] * b[e.rhs];
    }
    return out;
  }

  const T& zero() const { return zero_; }

 private:
  void require_same_layout(const Jet& o) const {
    if (layout_ != o.layout_) throw std::invalid_argument("jets with different layouts");
  }

  std::shared_ptr<const JetLayout> layout_;
  std::vector<T> coeffs_;
  T zero_;
};

// Coordinate functions x_1..x_n lifted to jets of order K at x.
std::vector<Jet<double>> jet_lift(const VectorF& x, int order);

// |x|^exponent as a jet, from the binomial series of (|x0|^2 + delta)^{exponent/2}
// where delta is the jet of |x|^2 - |x0|^2.
Jet<double> norm_power(const std::vector<Jet<double>>& coords, double exponent);

}  // namespace hmf
