#include "hmf/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hmf {

MultiIndex::MultiIndex(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty()) throw std::invalid_argument("multi-index needs at least one component");
  for (int v : m_) {
    if (v < 0) throw std::invalid_argument("multi-index components must be non-negative");
  }
}

MultiIndex MultiIndex::unit(int n, int j) {
  if (j < 1 || j > n) throw std::out_of_range("tau(j) index out of range");
  auto m = zero(n);
  m.m_[static_cast<std::size_t>(j - 1)] = 1;
  return m;
}

MultiIndex MultiIndex::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of(" 0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed multi-index '" + text + "'");
    }
    parts.push_back(std::stoi(item));
  }
  return MultiIndex(std::move(parts));
}

int MultiIndex::order() const { return std::accumulate(m_.begin(), m_.end(), 0); }

double MultiIndex::factorial() const {
  double out = 1.0;
  for (int v : m_) {
    for (int k = 2; k <= v; ++k) out *= k;
  }
  return out;
}

std::string MultiIndex::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m_[i]);
  }
  return out + ")";
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.dim() != dim()) throw DimensionMismatch("multi-index dimensions differ");
  auto out = *this;
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] += o.m_[i];
  return out;
}

namespace {

void fill_order(int n, int k, std::size_t pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    cur[pos] = k;
    out.emplace_back(cur);
    return;
  }
  for (int v = k; v >= 0; --v) {
    cur[pos] = v;
    fill_order(n, k - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("multi_indices_of_order needs n >= 1, k >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  fill_order(n, k, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

JetLayout::JetLayout(int n, int order) : n_(n), order_(order) {
  check_dim(n);
  if (order < 0 || order > kMaxJetOrder) {
    throw std::out_of_range("jet order must be in [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  for (int k = 0; k <= order; ++k) {
    for (auto& m : multi_indices_of_order(n, k)) indices_.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(code(indices_[i].components()), i);

  std::vector<int> sum(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const int oi = indices_[i].order();
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      if (oi + indices_[j].order() > order) break;  // indices_ sorted by order
      for (std::size_t c = 0; c < sum.size(); ++c) {
        sum[c] = indices_[i].components()[c] + indices_[j].components()[c];
      }
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(lookup_.at(code(sum)))});
    }
  }
}

std::uint64_t JetLayout::code(std::span<const int> m) const {
  std::uint64_t out = 0;
  for (int v : m) out = out * static_cast<std::uint64_t>(order_ + 1) + static_cast<std::uint64_t>(v);
  return out;
}

std::ptrdiff_t JetLayout::position(const MultiIndex& m) const {
  if (m.dim() != n_) throw DimensionMismatch("multi-index dimension differs from jet dimension");
  if (m.order() > order_) return -1;
  return static_cast<std::ptrdiff_t>(lookup_.at(code(m.components())));
}

std::shared_ptr<const JetLayout> jet_layout(int n, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(n, order);
  return slot;
}

std::vector<Jet<double>> jet_lift(const VectorF& x, int order) {
  auto layout = jet_layout(x.dim(), order);
  std::vector<Jet<double>> coords;
  coords.reserve(static_cast<std::size_t>(x.dim()));
  for (int i = 1; i <= x.dim(); ++i) {
    auto j = Jet<double>::constant(layout, x[i], 0.0);
    if (order >= 1) j.coefficient(MultiIndex::unit(x.dim(), i)) = 1.0;
    coords.push_back(std::move(j));
  }
  return coords;
}

Jet<double> norm_power(const std::vector<Jet<double>>& coords, double exponent) {
  if (coords.empty()) throw std::invalid_argument("norm_power needs coordinates");
  const auto& layout = coords.front().layout_ptr();
  Jet<double> r2(layout, 0.0);
  for (const auto& c : coords) r2 += c * c;
  const double r0sq = r2.value();
  if (!(r0sq > 0.0)) throw SingularInput("norm power expanded at the origin");

  // (r0^2 + delta)^beta = r0^{2 beta} * sum_k binom(beta, k) (delta / r0^2)^k
  const double beta = exponent / 2.0;
  Jet<double> u = r2;
  u[0] = 0.0;
  u *= 1.0 / r0sq;

  auto result = Jet<double>::constant(layout, 1.0, 0.0);
  auto power = Jet<double>::constant(layout, 1.0, 0.0);
  double binom = 1.0;
  for (int k = 1; k <= layout->order(); ++k) {
    binom *= (beta - (k - 1)) / k;
    power = power * u;
    result += power * binom;
  }
  result *= std::pow(r0sq, beta);
  return result;
}

}  // namespace hmf
