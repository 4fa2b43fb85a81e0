#include "hmf/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace hmf {

const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::Scalar: return "scalar";
    case SeriesKind::Vector: return "vector";
    case SeriesKind::OddWeight: return "oddweight";
    case SeriesKind::Biregular: return "biregular";
    case SeriesKind::LatticeG: return "Gm";
    case SeriesKind::Zeta: return "zeta";
  }
  return "?";
}

SeriesKind parse_series_kind(const std::string& name) {
  for (auto k : {SeriesKind::Scalar, SeriesKind::Vector, SeriesKind::OddWeight, SeriesKind::Biregular,
                 SeriesKind::LatticeG, SeriesKind::Zeta}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown series kind '" + name + "'");
}

namespace {

std::string num(int v) { return std::to_string(v); }

void require(bool ok, const std::string& what) {
  if (!ok) throw SpecViolation(what);
}

void require_truncation(const SeriesSpec& spec) {
  require(spec.word_limit >= 0, "word limit L must be >= 0");
  require(spec.box_radius >= 1, "lattice box radius R must be >= 1");
}

}  // namespace

void validate_poincare(const SeriesSpec& spec) {
  const int n = spec.group.n;
  const int p = spec.group.p;
  const int s = spec.s;
  require(s >= 1, "weight s must be >= 1");
  require(s < n, "weight s=" + num(s) + " must be < n=" + num(n));
  require(p < n - s - 1, "p=" + num(p) + " must be < n - s - 1=" + num(n - s - 1));
  require_truncation(spec);
}

void validate_scalar(const SeriesSpec& spec) {
  require(spec.s % 2 == 0, "scalar series needs even s (s=" + num(spec.s) + ")");
  validate_poincare(spec);
}

void validate_lattice_index(const MultiIndex& m, int n) {
  if (m.dim() != n) throw DimensionMismatch("multi-index dimension " + num(m.dim()) + " != n=" + num(n));
  require(m.order() >= 3, "lattice series needs |m| >= 3 (|m|=" + num(m.order()) + ")");
  require(m.order() % 2 == 1, "lattice series needs odd |m| (|m|=" + num(m.order()) + ")");
}

void validate_vector(const SeriesSpec& spec) {
  validate_scalar(spec);
  require(spec.m.has_value(), "vector series needs a multi-index m");
  validate_lattice_index(*spec.m, spec.group.n);
}

void validate_odd_weight(const SeriesSpec& spec) {
  require(spec.group.n >= 4, "odd-weight series needs n >= 4");
  validate_poincare(spec);
}

void validate_biregular(const SeriesSpec& spec) {
  const int n = spec.group.n;
  const int p = spec.group.p;
  require(spec.s >= 1 && spec.t >= 1, "weights s, t must be >= 1");
  require(spec.s < n && spec.t < n, "weights s, t must be < n");
  require((spec.s + spec.t) % 2 == 0, "biregular series needs s + t even");
  const int bound = std::min(n, 2 * n - (spec.s + spec.t) - 1);
  require(p < bound, "p=" + num(p) + " must be < min(n, 2n - s - t - 1)=" + num(bound));
  require_truncation(spec);
}

// ---------------------------------------------------------------------------
// Lattice series

namespace {

// Calls f(omega) for every omega in Z^{n-1} with |omega|_inf <= R, lexicographic order.
template <class F>
void for_each_box_point(int n, int radius, F&& f) {
  const std::size_t k = static_cast<std::size_t>(n - 1);
  std::vector<int> w(k, -radius);
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) v[i] = w[i];
    f(VectorF(v));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (w[i] < radius) {
        ++w[i];
        break;
      }
      w[i] = -radius;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

void require_radius(int radius) {
  if (radius < 1) throw SpecViolation("lattice box radius R must be >= 1");
}

}  // namespace

MultivectorF zeta_m(const MultiIndex& m, int n, int radius) {
  validate_lattice_index(m, n);
  require_radius(radius);
  MultivectorF acc(n);
  for_each_box_point(n, radius, [&](const VectorF& w) {
    if (w.is_zero()) return;
    acc += q_m(w, m, 1, n);
  });
  return acc;
}

MultivectorF epsilon_m(const VectorF& z, const MultiIndex& m, int n, int radius) {
  if (z.dim() != n) throw DimensionMismatch("epsilon_m point dimension differs from n");
  if (m.dim() != n) throw DimensionMismatch("multi-index dimension differs from n");
  require(m.order() >= 3, "epsilon_m needs |m| >= 3");
  require_radius(radius);
  MultivectorF acc(n);
  for_each_box_point(n, radius, [&](const VectorF& w) {
    const auto shifted = z + w;
    if (shifted.is_zero()) throw SingularInput("epsilon_m evaluated at a lattice pole");
    acc += q_m(shifted, m, 1, n);
  });
  return acc;
}

LatticeSplit lattice_G_m_split(const HalfSpacePoint& x, const MultiIndex& m, int n, int radius) {
  if (x.dim() != n) throw DimensionMismatch("G_m point dimension differs from n");
  validate_lattice_index(m, n);
  require_radius(radius);
  LatticeSplit out{MultivectorF(n), MultivectorF(n)};
  for (int alpha = -radius; alpha <= radius; ++alpha) {
    const auto ax = x.vec() * static_cast<double>(alpha);
    auto& slot = alpha == 0 ? out.alpha_zero : out.alpha_nonzero;
    for_each_box_point(n, radius, [&](const VectorF& w) {
      if (alpha == 0 && w.is_zero()) return;
      slot += q_m(ax + w, m, 1, n);
    });
  }
  return out;
}

MultivectorF lattice_G_m(const HalfSpacePoint& x, const MultiIndex& m, int n, int radius) {
  auto split = lattice_G_m_split(x, m, n, radius);
  return split.alpha_zero + split.alpha_nonzero;
}

// ---------------------------------------------------------------------------
// Coset systems

std::shared_ptr<const CosetSystem> coset_system(const GroupDescriptor& g, int word_limit) {
  using Key = std::tuple<int, int, int, int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const CosetSystem>> cache;
  const Key key{g.n, g.p, static_cast<int>(g.variant), g.level, word_limit};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto sys = std::make_shared<CosetSystem>();
  sys->group = g;
  sys->word_limit = word_limit;
  sys->reps = enumerate_cosets(g, word_limit);
  sys->matrices.reserve(sys->reps.size());
  for (const auto& r : sys->reps) sys->matrices.push_back(to_float(r.matrix));
  sys->c_zero = count_c_zero(sys->reps);
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::move(sys);
  return slot;
}

namespace {

// Sums term(M) over the coset system in its sorted order, recording partial
// sums by word-length level.
template <class Term>
SeriesResult sum_over_cosets(const CosetSystem& sys, int n, Term&& term) {
  const int levels = sys.word_limit + 1;
  std::vector<MultivectorF> bucket(static_cast<std::size_t>(levels), MultivectorF(n));
  for (std::size_t i = 0; i < sys.reps.size(); ++i) {
    bucket[static_cast<std::size_t>(sys.reps[i].word_length)] += term(sys.matrices[i]);
  }
  SeriesResult out;
  out.value = MultivectorF(n);
  for (int l = 0; l < levels; ++l) {
    out.value += bucket[static_cast<std::size_t>(l)];
    out.partial_sums.emplace_back(l, out.value);
  }
  out.coset_count_c0 = sys.c_zero;
  return out;
}

MultivectorF affine_denominator(const VahlenF& m, const VectorF& x) { return m.c() * x.mv() + m.d(); }

void require_point(const VectorF& x, int n) {
  if (x.dim() != n) throw DimensionMismatch("evaluation point dimension differs from n");
  if (!(x.last() > 0.0)) throw std::invalid_argument("evaluation point must lie in the upper half-space");
}

}  // namespace

SeriesFunction poincare_general(HalfSpaceFunction ftilde, const SeriesSpec& spec) {
  validate_poincare(spec);
  auto sys = coset_system(spec.group, spec.word_limit);
  const int n = spec.group.n;
  const int s = spec.s;
  return [ftilde = std::move(ftilde), sys, n, s](const VectorF& x) {
    require_point(x, n);
    return sum_over_cosets(*sys, n, [&](const VahlenF& m) {
      return q0_general(affine_denominator(m, x), s, n) * ftilde(mobius_apply(m, x));
    });
  };
}

SeriesResult scalar_eisenstein(const VectorF& x, const SeriesSpec& spec) {
  validate_scalar(spec);
  const int n = spec.group.n;
  require_point(x, n);
  auto sys = coset_system(spec.group, spec.word_limit);
  return sum_over_cosets(*sys, n, [&](const VahlenF& m) {
    const double r2 = norm_squared(affine_denominator(m, x));
    if (r2 < kDenominatorGuard) throw SingularInput("cx+d vanishes");
    return MultivectorF::scalar(n, std::pow(r2, 0.5 * (spec.s - n)));
  });
}

SeriesResult vector_eisenstein(const VectorF& x, const SeriesSpec& spec) {
  validate_vector(spec);
  const int n = spec.group.n;
  const MultiIndex m = *spec.m;
  const int radius = spec.box_radius;
  const auto en = VectorF::basis(n, n);
  auto f = poincare_general(
      [m, n, radius, en](const VectorF& y) { return lattice_G_m(HalfSpacePoint(y + en), m, n, radius); }, spec);
  return f(x);
}

SeriesResult odd_weight_eisenstein(const VectorF& x, const SeriesSpec& spec) {
  validate_odd_weight(spec);
  const int n = spec.group.n;
  require_point(x, n);
  auto sys = coset_system(spec.group, spec.word_limit);
  auto out = sum_over_cosets(*sys, n, [&](const VahlenF& m) {
    return q0_general(affine_denominator(m, x), spec.s, n);
  });
  const auto& g = spec.group;
  if (!(g.variant == GroupVariant::Principal && g.level >= 3)) {
    if (spec.s % 2 == 1 && contains_neg_identity(g)) {
      out.warnings.push_back("odd weight over " + g.name() +
                             ", which contains -1: the full series is identically zero");
    } else {
      out.warnings.push_back("non-vanishing is established only for principal congruence subgroups of level >= 3");
    }
  }
  return out;
}

SeriesResult biregular_eisenstein(const VectorF& x, const VectorF& y, const SeriesSpec& spec) {
  validate_biregular(spec);
  const int n = spec.group.n;
  require_point(x, n);
  require_point(y, n);
  auto sys = coset_system(spec.group, spec.word_limit);
  return sum_over_cosets(*sys, n, [&](const VahlenF& m) {
    const auto right_arg = y.mv() * reverse(m.c()) + reverse(m.d());
    return left_factor(affine_denominator(m, x), spec.s, n) * q0_general(right_arg, spec.t, n);
  });
}

PairedSum paired_odd_weight_sum(const VectorF& x, const GroupDescriptor& g, int s, int word_limit) {
  const int n = g.n;
  validate_weight(s, n);
  require_point(x, n);
  auto pairing = pair_by_negation(enumerate_cosets(g, word_limit), g, true);
  auto term = [&](std::size_t i) {
    return q0_general(affine_denominator(to_float(pairing.reps[i].matrix), x), s, n);
  };
  PairedSum out;
  out.value = MultivectorF(n);
  for (const auto& [i, j] : pairing.pairs) out.value += term(i) + term(j);
  for (auto i : pairing.unpaired) out.value += term(i);
  out.pairs = pairing.pairs.size();
  out.unpaired = pairing.unpaired.size();
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

TailReport tail_report(const SeriesResult& result, int window) {
  if (result.partial_sums.size() < 2) throw std::invalid_argument("tail report needs at least two truncation levels");
  if (window < 2) throw std::invalid_argument("tail window must be >= 2");
  TailReport out;
  out.window = window;
  for (std::size_t i = 1; i < result.partial_sums.size(); ++i) {
    out.levels.push_back(result.partial_sums[i].first);
    out.deltas.push_back(norm(result.partial_sums[i].second - result.partial_sums[i - 1].second));
  }
  const std::size_t w = std::min(out.deltas.size(), static_cast<std::size_t>(window));
  if (w < 2) {
    out.decay_slope = 0.0;
    out.decreasing = false;
    return out;
  }
  const std::size_t first = out.deltas.size() - w;
  double mx = 0.0, my = 0.0;
  std::vector<double> xs, ys;
  for (std::size_t i = first; i < out.deltas.size(); ++i) {
    xs.push_back(out.levels[i]);
    ys.push_back(std::log(std::max(out.deltas[i], 1e-300)));
    mx += xs.back();
    my += ys.back();
  }
  mx /= static_cast<double>(w);
  my /= static_cast<double>(w);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.decay_slope = sxy / sxx;
  out.decreasing = out.decay_slope < 0.0;
  return out;
}

SeriesResult coset_height_sum(const GroupDescriptor& g, int word_limit, double alpha) {
  auto sys = coset_system(g, word_limit);
  const int n = g.n;
  const int levels = word_limit + 1;
  std::vector<double> bucket(static_cast<std::size_t>(levels), 0.0);
  for (const auto& r : sys->reps) bucket[static_cast<std::size_t>(r.word_length)] += std::pow(r.height, -alpha);
  SeriesResult out;
  double acc = 0.0;
  for (int l = 0; l < levels; ++l) {
    acc += bucket[static_cast<std::size_t>(l)];
    out.partial_sums.emplace_back(l, MultivectorF::scalar(n, acc));
  }
  out.value = MultivectorF::scalar(n, acc);
  out.coset_count_c0 = sys->c_zero;
  return out;
}

AbscissaDiagnostic abscissa_diagnostic(const GroupDescriptor& g, int word_limit, double alpha, int window) {
  AbscissaDiagnostic out;
  out.alpha = alpha;
  out.p = g.p;
  out.convergent_by_theory = alpha > g.p + 1;
  out.tail = tail_report(coset_height_sum(g, word_limit, alpha), window);
  return out;
}

}  // namespace hmf
