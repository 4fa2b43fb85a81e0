#include "hmf/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace hmf {

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::LessEqual: return "<=";
    case Comparison::Less: return "<";
    case Comparison::Equal: return "==";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
  }
  return "?";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool compare(double measured, Comparison c, double threshold) {
  switch (c) {
    case Comparison::LessEqual: return measured <= threshold;
    case Comparison::Less: return measured < threshold;
    case Comparison::Equal: return measured == threshold;
    case Comparison::Greater: return measured > threshold;
    case Comparison::GreaterEqual: return measured >= threshold;
  }
  return false;
}

void finalize(VerificationReport& r) {
  if (r.status == CheckStatus::Skipped || r.status == CheckStatus::Inconclusive) return;
  r.status = compare(r.measured, r.comparison, r.threshold) ? CheckStatus::Pass : CheckStatus::Fail;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["params"] = r.params;
  const bool count = r.measure == Measure::Count;
  j[count ? "count" : "residual"] = r.measured;
  j[count ? "target" : "threshold"] = r.threshold;
  j["comparison"] = to_string(r.comparison);
  j["status"] = to_string(r.status);
  j["pass"] = r.pass();
  j["seconds"] = r.seconds;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

double ThresholdTable::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw std::out_of_range("no threshold named '" + name + "'");
  return it->second;
}

void ThresholdTable::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("threshold override must be name=value");
  const auto name = assignment.substr(0, eq);
  if (!values.contains(name)) throw std::invalid_argument("no threshold named '" + name + "'");
  values[name] = std::stod(assignment.substr(eq + 1));
}

ThresholdTable default_thresholds() {
  return ThresholdTable{
      "1",
      {
          {"clifford.mismatches", 0.0},
          {"mobius.composition", 1e-9},
          {"kernel.multiplicativity", 1e-10},
          {"kernel.cauchy_monogenicity", 1e-6},
          {"kernel.halving_ratio_tolerance", 1.0},
          {"jet.relative", 1e-5},
          {"automorphy.cap", 1.0},
          {"monogenicity.cap", 1e-2},
          {"limits.final_error", 0.05},
          {"cancellation.zero", 1e-12},
          {"zeta.ratio", 10.0},
          {"abscissa.slope", 0.0},
      }};
}

// ---------------------------------------------------------------------------
// Sampling

VectorF sample_strip_point(Rng& rng, int n, double eps) {
  const double half = 1.0 / (eps * std::sqrt(static_cast<double>(std::max(1, n - 1))));
  std::uniform_real_distribution<double> lat(-half, half), up(2.0 * eps, 1.0 / eps);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i) v[static_cast<std::size_t>(i)] = lat(rng);
  v.back() = up(rng);
  return VectorF(v);
}

VectorF sample_interior_point(Rng& rng, int n) {
  std::uniform_real_distribution<double> lat(-0.5, 0.5), up(1.0, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i) v[static_cast<std::size_t>(i)] = lat(rng);
  v.back() = up(rng);
  return VectorF(v);
}

namespace {

VahlenZ translation(int n, int j, long k) { return make_translation(VectorN<BigInt>::basis(n, j, BigInt(k))); }

VahlenZ power(const VahlenZ& m, int k) {
  auto out = VahlenZ::identity(m.dim());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

VahlenZ sample_gamma_p_word(Rng& rng, int n, int p, int length) {
  std::uniform_int_distribution<int> pick(0, 2 * p);
  auto m = VahlenZ::identity(n);
  for (int i = 0; i < length; ++i) {
    const int k = pick(rng);
    if (k == 2 * p) m = m * make_inversion<BigInt>(n);
    else m = m * translation(n, k / 2 + 1, k % 2 == 0 ? 1 : -1);
  }
  return m;
}

VahlenZ sample_group_element(Rng& rng, const GroupDescriptor& g, int tokens) {
  const int n = g.n;
  const long step = static_cast<long>(translation_lattice(g).step);
  const bool has_j = g.variant == GroupVariant::Full || g.variant == GroupVariant::Theta ||
                     (g.variant == GroupVariant::Lower0 && g.level == 1) ||
                     (g.variant == GroupVariant::Upper0 && g.level == 1) ||
                     (g.variant == GroupVariant::Principal && g.level == 1);
  const auto J = make_inversion<BigInt>(n);
  const auto Jinv = power(J, 3);
  const long level = g.variant == GroupVariant::Theta ? 2 : g.level;
  std::vector<VahlenZ> steps;
  for (int j = 1; j <= g.p; ++j) {
    steps.push_back(power(translation(n, j, 1), static_cast<int>(step)));
    steps.push_back(power(translation(n, j, -1), static_cast<int>(step)));
    // J T(N e_j) J^{-1}: lower unipotent, congruent to 1 mod N
    steps.push_back(J * power(translation(n, j, 1), static_cast<int>(level)) * Jinv);
    steps.push_back(J * power(translation(n, j, -1), static_cast<int>(level)) * Jinv);
  }
  if (has_j) steps.push_back(J);
  std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
  auto m = VahlenZ::identity(n);
  for (int i = 0; i < tokens; ++i) m = m * steps[pick(rng)];
  if (!is_member(m, g)) throw InternalConsistency("sampled element is not in " + g.name());
  return m;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds(const HarnessConfig& cfg) const {
    if (cfg.deterministic) return 0.0;
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

VerificationReport make_report(std::string check, Measure measure, double measured, Comparison c,
                               double threshold) {
  VerificationReport r;
  r.check = std::move(check);
  r.measure = measure;
  r.measured = measured;
  r.comparison = c;
  r.threshold = threshold;
  finalize(r);
  return r;
}

VerificationReport skipped(std::string check, std::string why, nlohmann::ordered_json params) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = CheckStatus::Skipped;
  r.detail = std::move(why);
  return r;
}

MultivectorZ random_sparse(Rng& rng, int n) {
  std::uniform_int_distribution<int> count(1, 8), coeff(-5, 5);
  std::uniform_int_distribution<Blade> blade(0, (Blade{1} << n) - 1);
  std::vector<MultivectorZ::Term> terms;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) terms.push_back({blade(rng), BigInt(coeff(rng))});
  return MultivectorZ::from_terms(n, std::move(terms));
}

VectorF random_shell_vector(Rng& rng, int n) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double r2 = 0.0;
  do {
    r2 = 0.0;
    for (auto& c : v) {
      c = g(rng);
      r2 += c * c;
    }
  } while (r2 < 1e-12);
  const double scale = radius(rng) / std::sqrt(r2);
  for (auto& c : v) c *= scale;
  return VectorF(v);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

nlohmann::ordered_json group_params(const GroupDescriptor& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n;
  j["p"] = g.p;
  j["group"] = g.name();
  j["N"] = g.level;
  return j;
}

}  // namespace

std::vector<VerificationReport> check_clifford_relations(int n, int samples, const HarnessConfig& cfg) {
  Timer timer;
  int anticommute_bad = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto ei = MultivectorZ::basis_vector(n, i);
      const auto ej = MultivectorZ::basis_vector(n, j);
      const auto expected = MultivectorZ::scalar(n, BigInt(i == j ? -2 : 0));
      if (!(ei * ej + ej * ei == expected)) ++anticommute_bad;
    }
  }
  auto r1 = make_report("clifford.anticommutation", Measure::Count, anticommute_bad, Comparison::Equal,
                        cfg.thresholds.at("clifford.mismatches"));
  r1.params = {{"n", n}, {"pairs", n * n}};
  r1.seconds = timer.seconds(cfg);

  Timer timer2;
  Rng rng(cfg.seed);
  int bad = 0;
  for (int k = 0; k < samples; ++k) {
    const auto a = random_sparse(rng, n);
    const auto b = random_sparse(rng, n);
    const auto c = random_sparse(rng, n);
    const auto ab = a * b;
    if (!(ab * c == a * (b * c))) ++bad;
    if (!(conjugate(ab) == conjugate(b) * conjugate(a))) ++bad;
    if (!(reverse(ab) == reverse(b) * reverse(a))) ++bad;
  }
  auto r2 = make_report("clifford.random_identities", Measure::Count, bad, Comparison::Equal,
                        cfg.thresholds.at("clifford.mismatches"));
  r2.params = {{"n", n}, {"samples", samples}, {"seed", cfg.seed}};
  r2.detail = "associativity, conjugation and reversion anti-automorphism, exact integer arithmetic";
  r2.seconds = timer2.seconds(cfg);
  return {r1, r2};
}

std::vector<VerificationReport> check_mobius(int n, int p, int pairs, int points, const HarnessConfig& cfg) {
  Timer timer;
  Rng rng(cfg.seed);
  std::uniform_int_distribution<int> len(1, 6);
  std::vector<VectorF> xs;
  for (int i = 0; i < points; ++i) xs.push_back(sample_strip_point(rng, n));
  double worst = 0.0;
  int outside = 0;
  for (int k = 0; k < pairs; ++k) {
    const auto mz = sample_gamma_p_word(rng, n, p, len(rng));
    const auto lz = sample_gamma_p_word(rng, n, p, len(rng));
    const auto m = to_float(mz);
    const auto l = to_float(lz);
    const auto ml = to_float(mz * lz);
    for (const auto& x : xs) {
      const auto lx = mobius_apply(l, x);
      const auto lhs = mobius_apply(m, lx);
      const auto rhs = mobius_apply(ml, x);
      worst = std::max(worst, (lhs - rhs).norm());
      for (const auto* y : {&lx, &lhs, &rhs}) {
        if (!(y->last() > 0.0)) ++outside;
      }
    }
  }
  nlohmann::ordered_json params{{"n", n}, {"p", p}, {"pairs", pairs}, {"points", points}, {"seed", cfg.seed}};
  auto r1 = make_report("mobius.composition", Measure::Residual, worst, Comparison::Less,
                        cfg.thresholds.at("mobius.composition"));
  r1.params = params;
  r1.detail = "max |M<L<x>> - (ML)<x>| over word pairs and points in V_1/4";
  auto r2 = make_report("mobius.halfspace", Measure::Count, outside, Comparison::Equal, 0.0);
  r2.params = params;
  r2.detail = "images with x_n <= 0";
  r1.seconds = r2.seconds = timer.seconds(cfg);
  return {r1, r2};
}

VerificationReport check_kernel_multiplicativity(int n, int s, int samples, const HarnessConfig& cfg) {
  const std::string name = "kernel.multiplicativity.s" + std::to_string(s);
  nlohmann::ordered_json params{{"n", n}, {"s", s}, {"samples", samples}, {"seed", cfg.seed}};
  if (s < 1 || s >= n) return skipped(name, "needs 1 <= s < n", params);
  Timer timer;
  Rng rng(cfg.seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto a = random_shell_vector(rng, n);
    const auto b = random_shell_vector(rng, n);
    worst = std::max(worst, kernel_multiplicativity_residual(a.mv(), b.mv(), s, n));
  }
  auto r = make_report(name, Measure::Residual, worst, Comparison::Less,
                       cfg.thresholds.at("kernel.multiplicativity"));
  r.params = params;
  r.detail = "max |q0(ab) - q0(b) q0(a)|, vectors with norm in [1/2, 2]";
  r.seconds = timer.seconds(cfg);
  return r;
}

std::vector<VerificationReport> check_cauchy_monogenicity(int n, double h, int points, const HarnessConfig& cfg) {
  Timer timer;
  Rng rng(cfg.seed);
  std::vector<VectorF> xs;
  xs.push_back(VectorF::basis(n, 1) + VectorF::basis(n, n));
  for (int i = 1; i < points; ++i) xs.push_back(sample_interior_point(rng, n));
  const Field f = [n](const VectorF& x) { return q0(x, 1, n); };
  double worst = 0.0, sum_h = 0.0, sum_half = 0.0;
  for (const auto& x : xs) {
    const double rh = norm(dirac_fd(f, x, h));
    const double rhalf = norm(dirac_fd(f, x, h / 2.0));
    worst = std::max(worst, rh);
    sum_h += rh;
    sum_half += rhalf;
  }
  nlohmann::ordered_json params{{"n", n}, {"s", 1}, {"h", h}, {"points", static_cast<int>(xs.size())}};
  auto r1 = make_report("kernel.cauchy_monogenicity", Measure::Residual, worst, Comparison::Less,
                        cfg.thresholds.at("kernel.cauchy_monogenicity"));
  r1.params = params;
  r1.detail = "max |D q0(x)|, first point e_1 + e_n";
  const double ratio = sum_half > 0.0 ? sum_h / sum_half : 0.0;
  auto r2 = make_report("kernel.halving_ratio", Measure::Residual, std::abs(ratio - 4.0), Comparison::LessEqual,
                        cfg.thresholds.at("kernel.halving_ratio_tolerance"));
  r2.params = params;
  r2.detail = "|ratio - 4| with ratio = residual(h) / residual(h/2) = " + std::to_string(ratio);
  r1.seconds = r2.seconds = timer.seconds(cfg);
  return {r1, r2};
}

namespace {

// Nested central differences of q0, h^2-extrapolated (steps h and h/2).
MultivectorF fd_derivative(const VectorF& x, const MultiIndex& m, int s, int n, double h) {
  std::function<MultivectorF(const VectorF&, std::vector<int>, double)> rec =
      [&](const VectorF& y, std::vector<int> mi, double step) -> MultivectorF {
    for (int i = 0; i < n; ++i) {
      if (mi[static_cast<std::size_t>(i)] == 0) continue;
      --mi[static_cast<std::size_t>(i)];
      auto yp = y;
      auto ym = y;
      yp[i + 1] += step;
      ym[i + 1] -= step;
      return (rec(yp, mi, step) - rec(ym, mi, step)) * (1.0 / (2.0 * step));
    }
    return q0(y, s, n);
  };
  std::vector<int> mi(m.components().begin(), m.components().end());
  const auto coarse = rec(x, mi, h);
  const auto fine = rec(x, mi, h / 2.0);
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

}  // namespace

VerificationReport check_jet_vs_fd(int n, int max_order, int points, const HarnessConfig& cfg) {
  Timer timer;
  Rng rng(cfg.seed);
  constexpr double kStep = 1e-3;
  double worst = 0.0;
  std::string worst_at;
  for (int k = 0; k < points; ++k) {
    const auto x = sample_strip_point(rng, n);
    for (int s = 1; s <= std::min(2, n - 1); ++s) {
      // natural size of an order-|m| derivative at x
      const double base = norm(q0(x, s, n));
      for (int order = 1; order <= max_order; ++order) {
        const double scale = base / std::pow(x.norm(), order);
        for (const auto& m : multi_indices_of_order(n, order)) {
          const auto jet = q_m(x, m, s, n);
          // step relative to |x|: derivatives of q0 scale with powers of |x|
          const auto fd = fd_derivative(x, m, s, n, kStep * x.norm());
          const double rel = norm(jet - fd) / std::max(norm(jet), scale);
          if (rel > worst) {
            worst = rel;
            worst_at = "m=" + m.str() + " s=" + std::to_string(s);
          }
        }
      }
    }
  }
  auto r = make_report("jet.derivatives", Measure::Residual, worst, Comparison::Less,
                       cfg.thresholds.at("jet.relative"));
  r.params = {{"n", n}, {"max_order", max_order}, {"points", points}, {"step", kStep}, {"seed", cfg.seed}};
  r.detail = "max relative deviation from extrapolated central differences (step 1e-3 |x|); worst at " + worst_at;
  r.seconds = timer.seconds(cfg);
  return r;
}

int c_zero_count_by_membership(const GroupDescriptor& g) {
  const auto full = GroupDescriptor::full(g.n, g.p);
  const long step = static_cast<long>(translation_lattice(g).step);
  int count = 0;
  // the units +-e_A of Gamma_p first appear at word length about 2p + 4
  for (const auto& rep : enumerate_cosets(full, 2 * g.p + 4)) {
    if (!rep.key.has_zero_c()) continue;
    // left translates T_b M with b over residues mod the lattice step
    std::vector<long> b(static_cast<std::size_t>(g.p), 0);
    bool found = false;
    while (!found) {
      auto t = VahlenZ::identity(g.n);
      for (int j = 1; j <= g.p; ++j) {
        const long bj = b[static_cast<std::size_t>(j - 1)];
        for (long k = 0; k < bj; ++k) t = t * translation(g.n, j, 1);
      }
      if (is_member(t * rep.matrix, g)) found = true;
      std::size_t i = 0;
      while (i < b.size() && ++b[i] == step) b[i++] = 0;
      if (i == b.size()) break;
    }
    if (found) ++count;
  }
  return count;
}

std::vector<VerificationReport> check_coset_counts(int n, int p, int word_limit, const HarnessConfig& cfg) {
  std::vector<VerificationReport> out;
  const int expected_full = 1 << (p + 1);

  auto count_report = [&](const GroupDescriptor& g, const std::string& name, int target) {
    Timer timer;
    const auto reps = enumerate_cosets(g, word_limit);
    auto r = make_report(name, Measure::Count, count_c_zero(reps), Comparison::Equal, target);
    r.params = group_params(g);
    r.params["L"] = word_limit;
    r.detail = std::to_string(reps.size()) + " representatives";
    r.seconds = timer.seconds(cfg);
    return r;
  };

  out.push_back(count_report(GroupDescriptor::full(n, p), "cosets.full_c0", expected_full));
  out.push_back(count_report(GroupDescriptor::principal(n, p, 3), "cosets.principal3_c0", 1));
  out.push_back(count_report(GroupDescriptor::principal(n, p, 4), "cosets.principal4_c0", 1));

  const auto theta = GroupDescriptor::theta(n, p);
  {
    Timer timer;
    const int by_membership = c_zero_count_by_membership(theta);
    auto r = count_report(theta, "cosets.theta_c0", by_membership);
    r.detail += "; target from membership of left translates";
    out.push_back(r);
    const int count = static_cast<int>(r.measured);
    const int outside = count < 1 ? 1 - count : (count > expected_full ? count - expected_full : 0);
    auto b = make_report("cosets.theta_c0_bound", Measure::Count, outside, Comparison::Equal, 0.0);
    b.params = group_params(theta);
    b.params["L"] = word_limit;
    b.detail = "distance of the c = 0 count " + std::to_string(count) + " from [1, " +
               std::to_string(expected_full) + "]";
    b.seconds = timer.seconds(cfg);
    out.push_back(b);
  }

  Timer timer;
  Rng rng(cfg.seed);
  int disagreements = 0;
  long pairs = 0;
  for (const auto& g : {GroupDescriptor::full(n, p), GroupDescriptor::principal(n, p, 3),
                        GroupDescriptor::principal(n, p, 4), theta}) {
    std::vector<VahlenZ> elems;
    for (int len = 0; len <= 4; ++len) {
      for (int k = 0; k < 30; ++k) {
        auto m = sample_gamma_p_word(rng, n, p, len);
        if (is_member(m, g)) elems.push_back(std::move(m));
      }
    }
    for (int k = 0; k < 30; ++k) elems.push_back(sample_group_element(rng, g, 1 + k % 3));
    // left translates of existing elements share keys
    const std::size_t base = elems.size();
    const long step = static_cast<long>(translation_lattice(g).step);
    for (std::size_t i = 0; i < base; i += 3) {
      elems.push_back(power(translation(n, 1, 1), static_cast<int>(step)) * elems[i]);
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const auto ki = coset_key(elems[i], p);
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        ++pairs;
        if ((ki == coset_key(elems[j], p)) != same_coset(elems[i], elems[j], g)) ++disagreements;
      }
    }
  }
  auto r = make_report("cosets.key_soundness", Measure::Count, disagreements, Comparison::Equal, 0.0);
  r.params = {{"n", n}, {"p", p}, {"pairs", pairs}, {"seed", cfg.seed}};
  r.detail = "coset key equality vs same_coset over full, principal(3), principal(4), theta";
  r.seconds = timer.seconds(cfg);
  out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// Series checks

namespace {

void validate_kind(SeriesKind kind, const SeriesSpec& spec) {
  switch (kind) {
    case SeriesKind::Scalar: validate_scalar(spec); return;
    case SeriesKind::Vector: validate_vector(spec); return;
    case SeriesKind::OddWeight: validate_odd_weight(spec); return;
    case SeriesKind::Biregular: validate_biregular(spec); return;
    default: throw std::invalid_argument(std::string("no coset series of kind ") + to_string(kind));
  }
}

MultivectorF eval_one(SeriesKind kind, const VectorF& x, const SeriesSpec& spec) {
  switch (kind) {
    case SeriesKind::Scalar: return scalar_eisenstein(x, spec).value;
    case SeriesKind::Vector: return vector_eisenstein(x, spec).value;
    case SeriesKind::OddWeight: return odd_weight_eisenstein(x, spec).value;
    default: throw std::invalid_argument("single-variable evaluation of a two-variable series");
  }
}

nlohmann::ordered_json spec_params(SeriesKind kind, const SeriesSpec& spec) {
  auto j = group_params(spec.group);
  j["series"] = to_string(kind);
  j["s"] = spec.s;
  if (kind == SeriesKind::Biregular) j["t"] = spec.t;
  if (spec.m) j["m"] = spec.m->str();
  j["L"] = spec.word_limit;
  if (kind == SeriesKind::Vector) j["R"] = spec.box_radius;
  return j;
}

}  // namespace

VerificationReport check_automorphy(SeriesKind kind, const SeriesSpec& spec, const AutomorphyOptions& opt,
                                    const HarnessConfig& cfg) {
  const std::string name = std::string("automorphy.") + to_string(kind);
  auto params = spec_params(kind, spec);
  params.erase("L");
  params["L1"] = opt.coarse_limit;
  params["L2"] = opt.fine_limit;
  params["elements"] = opt.elements;
  params["points"] = opt.points;
  params["seed"] = cfg.seed;
  try {
    validate_kind(kind, spec);
  } catch (const SpecViolation& e) {
    return skipped(name, e.what(), params);
  }
  Timer timer;
  Rng rng(cfg.seed);
  const int n = spec.group.n;
  std::vector<VahlenF> ms;
  for (int k = 0; k < opt.elements; ++k) ms.push_back(to_float(sample_group_element(rng, spec.group, opt.element_tokens)));
  std::vector<VectorF> xs, ys;
  for (int k = 0; k < opt.points; ++k) {
    xs.push_back(sample_strip_point(rng, n));
    ys.push_back(sample_strip_point(rng, n));
  }

  auto median_at = [&](int limit) {
    auto sp = spec;
    sp.word_limit = limit;
    std::vector<double> res;
    for (const auto& m : ms) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& x = xs[i];
        const auto factor_x = m.c() * x.mv() + m.d();
        const auto mx = mobius_apply(m, x);
        if (kind == SeriesKind::Biregular) {
          const auto& y = ys[i];
          const auto lhs = biregular_eisenstein(x, y, sp).value;
          const auto rhs = left_factor(factor_x, sp.s, n) * biregular_eisenstein(mx, mobius_apply(m, y), sp).value *
                           q0_general(y.mv() * reverse(m.c()) + reverse(m.d()), sp.t, n);
          res.push_back(norm(lhs - rhs));
        } else {
          const auto lhs = eval_one(kind, x, sp);
          const auto rhs = q0_general(factor_x, sp.s, n) * eval_one(kind, mx, sp);
          res.push_back(norm(lhs - rhs));
        }
      }
    }
    return median(res);
  };

  const double coarse = median_at(opt.coarse_limit);
  const double fine = median_at(opt.fine_limit);
  const double cap = cfg.thresholds.at("automorphy.cap");
  // Passing needs fine < coarse and fine < cap: compare against the smaller.
  auto r = make_report(name, Measure::Residual, fine, Comparison::Less, std::min(coarse, cap));
  r.params = params;
  r.detail = "median residual L1=" + std::to_string(coarse) + ", L2=" + std::to_string(fine) +
             "; threshold = min(L1 residual, cap " + std::to_string(cap) + ")";
  r.seconds = timer.seconds(cfg);
  return r;
}

namespace {

double max_dirac_residual(SeriesKind kind, const SeriesSpec& spec, const MonogenicityOptions& opt,
                          const std::vector<VectorF>& xs, const std::vector<VectorF>& ys) {
  const int n = spec.group.n;
  double worst = 0.0;
  auto step = [&](int l) { return opt.h > 0.0 ? opt.h : (l == 1 ? kFdStepFirstOrder : kFdStepIterated); };
  if (kind == SeriesKind::Biregular) {
    const int ls = opt.l > 0 ? opt.l : spec.s;
    const int lt = opt.l > 0 ? opt.l : spec.t;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& x = xs[i];
      const auto& y = ys[i];
      const Field fx = [&](const VectorF& z) { return biregular_eisenstein(z, y, spec).value; };
      const Field fy = [&](const VectorF& z) { return biregular_eisenstein(x, z, spec).value; };
      worst = std::max(worst, norm(dirac_power_fd(fx, x, step(ls), ls, {Side::Left, StencilDomain::HalfSpace, opt.richardson})));
      worst = std::max(worst, norm(dirac_power_fd(fy, y, step(lt), lt, {Side::Right, StencilDomain::HalfSpace, opt.richardson})));
    }
    (void)n;
    return worst;
  }
  const int l = opt.l > 0 ? opt.l : spec.s;
  const Field f = [&](const VectorF& z) { return eval_one(kind, z, spec); };
  for (const auto& x : xs) {
    worst = std::max(worst, norm(dirac_power_fd(f, x, step(l), l, {Side::Left, StencilDomain::HalfSpace, opt.richardson})));
  }
  return worst;
}

nlohmann::ordered_json monogenicity_params(SeriesKind kind, const SeriesSpec& spec, const MonogenicityOptions& opt,
                                           const HarnessConfig& cfg) {
  auto params = spec_params(kind, spec);
  params["l"] = opt.l > 0 ? opt.l : spec.s;
  params["h"] = opt.h > 0.0 ? opt.h : ((opt.l > 0 ? opt.l : spec.s) == 1 ? kFdStepFirstOrder : kFdStepIterated);
  params["points"] = opt.points;
  params["richardson"] = opt.richardson;
  params["seed"] = cfg.seed;
  return params;
}

void sample_pairs(const HarnessConfig& cfg, int n, int count, std::vector<VectorF>& xs, std::vector<VectorF>& ys) {
  Rng rng(cfg.seed);
  for (int k = 0; k < count; ++k) {
    xs.push_back(sample_interior_point(rng, n));
    ys.push_back(sample_interior_point(rng, n));
  }
}

}  // namespace

VerificationReport check_monogenicity(SeriesKind kind, const SeriesSpec& spec, const MonogenicityOptions& opt,
                                      const HarnessConfig& cfg) {
  const std::string name = std::string("monogenicity.") + to_string(kind);
  auto params = monogenicity_params(kind, spec, opt, cfg);
  try {
    validate_kind(kind, spec);
  } catch (const SpecViolation& e) {
    return skipped(name, e.what(), params);
  }
  Timer timer;
  std::vector<VectorF> xs, ys;
  sample_pairs(cfg, spec.group.n, opt.points, xs, ys);
  const double worst = max_dirac_residual(kind, spec, opt, xs, ys);
  auto r = make_report(name, Measure::Residual, worst, Comparison::Less, cfg.thresholds.at("monogenicity.cap"));
  r.params = params;
  r.detail = "max |D^l f| over interior points (x_n in [1, 2])";
  r.seconds = timer.seconds(cfg);
  return r;
}

VerificationReport check_monogenicity_trend(SeriesKind kind, const SeriesSpec& spec, int finer,
                                            const MonogenicityOptions& opt, const HarnessConfig& cfg) {
  const std::string name = std::string("monogenicity_trend.") + to_string(kind);
  auto params = monogenicity_params(kind, spec, opt, cfg);
  params["L_finer"] = finer;
  try {
    validate_kind(kind, spec);
  } catch (const SpecViolation& e) {
    return skipped(name, e.what(), params);
  }
  Timer timer;
  std::vector<VectorF> xs, ys;
  sample_pairs(cfg, spec.group.n, opt.points, xs, ys);
  const double base = max_dirac_residual(kind, spec, opt, xs, ys);
  auto sp = spec;
  sp.word_limit = finer;
  const double fine = max_dirac_residual(kind, sp, opt, xs, ys);
  auto r = make_report(name, Measure::Residual, base > 0.0 ? fine / base : 0.0, Comparison::Less, 1.0);
  r.params = params;
  r.detail = "ratio of max residuals, L=" + std::to_string(spec.word_limit) + ": " + std::to_string(base) +
             ", L=" + std::to_string(finer) + ": " + std::to_string(fine);
  r.seconds = timer.seconds(cfg);
  return r;
}

std::vector<VerificationReport> check_limits(SeriesKind kind, const SeriesSpec& spec,
                                             const std::vector<double>& tvalues, const HarnessConfig& cfg) {
  const std::string name = std::string("limits.") + to_string(kind);
  auto params = spec_params(kind, spec);
  params["t"] = tvalues;
  try {
    validate_kind(kind, spec);
  } catch (const SpecViolation& e) {
    return {skipped(name + ".monotone", e.what(), params), skipped(name + ".final_error", e.what(), params)};
  }
  if (tvalues.size() < 2) throw std::invalid_argument("limit check needs at least two t values");
  Timer timer;
  const int n = spec.group.n;
  std::vector<double> errors;
  int target = 0;
  for (double t : tvalues) {
    const auto x = VectorF::basis(n, n, t);
    SeriesResult res;
    switch (kind) {
      case SeriesKind::Scalar: res = scalar_eisenstein(x, spec); break;
      case SeriesKind::Vector: res = vector_eisenstein(x, spec); break;
      case SeriesKind::OddWeight: res = odd_weight_eisenstein(x, spec); break;
      case SeriesKind::Biregular: res = biregular_eisenstein(x, x, spec); break;
      default: break;
    }
    if (kind == SeriesKind::Vector) {
      throw Unsupported("vector series limit has a multivector target; use tail diagnostics");
    }
    target = kind == SeriesKind::OddWeight ? 1 : res.coset_count_c0;
    errors.push_back(norm(res.value - MultivectorF::scalar(n, target)));
  }
  int increases = 0;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i] < errors[i - 1])) ++increases;
  }
  params["target"] = target;
  params["errors"] = errors;
  auto r1 = make_report(name + ".monotone", Measure::Count, increases, Comparison::Equal, 0.0);
  r1.params = params;
  r1.detail = "steps where |value - target| fails to decrease strictly";
  auto r2 = make_report(name + ".final_error", Measure::Residual, errors.back(), Comparison::Less,
                        cfg.thresholds.at("limits.final_error"));
  r2.params = params;
  r2.detail = "|value - target| at the largest t";
  r1.seconds = r2.seconds = timer.seconds(cfg);
  return {r1, r2};
}

VerificationReport check_cancellation(const GroupDescriptor& g, int s, int word_limit, int points,
                                      const HarnessConfig& cfg) {
  auto params = group_params(g);
  params["s"] = s;
  params["L"] = word_limit;
  params["points"] = points;
  params["seed"] = cfg.seed;
  const std::string name = "cancellation." + g.name();
  if (s % 2 == 0) return skipped(name, "cancellation applies to odd weight", params);
  if (s >= g.n) return skipped(name, "needs s < n", params);
  Timer timer;
  Rng rng(cfg.seed);
  const bool neg = contains_neg_identity(g);
  double largest = 0.0, smallest = std::numeric_limits<double>::infinity();
  std::size_t unpaired = 0, pairs = 0;
  for (int k = 0; k < points; ++k) {
    const auto res = paired_odd_weight_sum(sample_strip_point(rng, g.n), g, s, word_limit);
    largest = std::max(largest, norm(res.value));
    smallest = std::min(smallest, norm(res.value));
    unpaired = res.unpaired;
    pairs = res.pairs;
  }
  params["contains_neg_identity"] = neg;
  params["pairs"] = pairs;
  params["unpaired"] = unpaired;
  const double zero = cfg.thresholds.at("cancellation.zero");
  VerificationReport r;
  if (neg) {
    r = make_report(name, Measure::Residual, largest, Comparison::Less, zero);
    r.detail = "max |sum over +-M pairs|; -1 in group, expected 0";
    if (unpaired > 0) {
      r.status = CheckStatus::Inconclusive;
      r.detail += "; enumeration left " + std::to_string(unpaired) + " unpaired";
    }
  } else {
    r = make_report(name, Measure::Residual, smallest, Comparison::Greater, zero);
    r.detail = "min |sum|; -1 not in group, expected nonzero";
  }
  r.params = params;
  r.seconds = timer.seconds(cfg);
  return r;
}

VerificationReport check_zeta_nonvanishing(int n, int order, int r1, int r2, const HarnessConfig& cfg) {
  nlohmann::ordered_json params{{"n", n}, {"order", order}, {"R1", r1}, {"R2", r2}};
  Timer timer;
  double best = 0.0;
  std::string best_m;
  for (const auto& m : multi_indices_of_order(n, order)) {
    const auto z2 = zeta_m(m, n, r2);
    const auto z1 = zeta_m(m, n, r1);
    const double tail = norm(z2 - z1);
    const double size = norm(z2);
    const double ratio = tail > 0.0 ? size / tail : (size > 0.0 ? std::numeric_limits<double>::max() : 0.0);
    if (ratio > best) {
      best = ratio;
      best_m = m.str() + " |zeta|=" + std::to_string(size) + " tail=" + std::to_string(tail);
    }
  }
  auto r = make_report("zeta.nonvanishing", Measure::Residual, best, Comparison::Greater,
                       cfg.thresholds.at("zeta.ratio"));
  r.params = params;
  r.detail = "max |zeta_m(R2)| / |zeta_m(R2) - zeta_m(R1)| at " + best_m;
  r.seconds = timer.seconds(cfg);
  return r;
}

std::vector<VerificationReport> check_abscissa(const GroupDescriptor& g, int word_limit, double alpha_above,
                                               double alpha_below, const HarnessConfig& cfg) {
  std::vector<VerificationReport> out;
  const double zero = cfg.thresholds.at("abscissa.slope");
  for (const auto& [alpha, comparison, tag] :
       {std::tuple{alpha_above, Comparison::Less, "above"}, std::tuple{alpha_below, Comparison::GreaterEqual, "below"}}) {
    Timer timer;
    const auto d = abscissa_diagnostic(g, word_limit, alpha);
    auto r = make_report(std::string("abscissa.") + tag, Measure::Residual, d.tail.decay_slope, comparison, zero);
    r.params = group_params(g);
    r.params["L"] = word_limit;
    r.params["alpha"] = alpha;
    r.params["window"] = d.tail.window;
    r.params["deltas"] = d.tail.deltas;
    r.detail = std::string("slope of log delta over the last levels; alpha ") +
               (d.convergent_by_theory ? "> p+1, expect decreasing" : "<= p+1, expect non-decreasing");
    r.seconds = timer.seconds(cfg);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"clifford",     "mobius",       "multiplicativity", "cauchy",
                                              "jets",         "cosets",       "limits",           "cancellation",
                                              "automorphy",   "monogenicity", "zeta",             "abscissa"};
  return names;
}

std::vector<VerificationReport> run_named_check(const std::string& name, const SuiteOptions& opt,
                                                const HarnessConfig& cfg) {
  const int n = opt.n;
  const int p = opt.p;
  std::vector<VerificationReport> out;
  auto append = [&](std::vector<VerificationReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  auto spec = [&](GroupDescriptor g, int s, int t) {
    SeriesSpec sp;
    sp.group = g;
    sp.s = s;
    sp.t = t;
    sp.word_limit = opt.word_limit;
    sp.box_radius = opt.box_radius;
    return sp;
  };
  const auto full = GroupDescriptor::full(n, p);

  if (name == "all") {
    for (const auto& c : check_names()) append(run_named_check(c, opt, cfg));
  } else if (name == "clifford") {
    append(check_clifford_relations(n, 1000, cfg));
  } else if (name == "mobius") {
    append(check_mobius(n, p, 200, 20, cfg));
  } else if (name == "multiplicativity") {
    for (int s : {1, 2}) out.push_back(check_kernel_multiplicativity(n, s, 500, cfg));
  } else if (name == "cauchy") {
    append(check_cauchy_monogenicity(n, kFdStepFirstOrder, 5, cfg));
  } else if (name == "jets") {
    out.push_back(check_jet_vs_fd(n, 3, 50, cfg));
  } else if (name == "cosets") {
    append(check_coset_counts(n, p, 6, cfg));
  } else if (name == "limits") {
    append(check_limits(SeriesKind::Scalar, spec(full, 2, 2), opt.tvalues, cfg));
    append(check_limits(SeriesKind::OddWeight, spec(GroupDescriptor::principal(n, p, 3), 1, 1), opt.tvalues, cfg));
    append(check_limits(SeriesKind::Biregular, spec(full, 1, 1), opt.tvalues, cfg));
  } else if (name == "cancellation") {
    for (const auto& g : {full, GroupDescriptor::principal(n, p, 2), GroupDescriptor::theta(n, p),
                          GroupDescriptor::upper0(n, p, 2), GroupDescriptor::lower0(n, p, 2),
                          GroupDescriptor::principal(n, p, 3)}) {
      out.push_back(check_cancellation(g, 1, opt.word_limit, 5, cfg));
    }
  } else if (name == "automorphy") {
    AutomorphyOptions a;
    a.fine_limit = opt.word_limit;
    out.push_back(check_automorphy(SeriesKind::Scalar, spec(full, 2, 2), a, cfg));
    out.push_back(check_automorphy(SeriesKind::Biregular, spec(full, 1, 1), a, cfg));
  } else if (name == "monogenicity") {
    out.push_back(check_monogenicity(SeriesKind::Scalar, spec(full, 2, 2), {}, cfg));
    out.push_back(check_monogenicity_trend(SeriesKind::Scalar, spec(full, 2, 2), opt.word_limit + 2, {}, cfg));
    out.push_back(check_monogenicity(SeriesKind::Biregular, spec(full, 1, 1), {}, cfg));
  } else if (name == "zeta") {
    out.push_back(check_zeta_nonvanishing(n, 3, 6, 8, cfg));
  } else if (name == "abscissa") {
    append(check_abscissa(full, opt.word_limit, p + 2.5, p + 0.5, cfg));
  } else {
    throw std::invalid_argument("unknown check '" + name + "'");
  }
  return out;
}

int suite_exit_code(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (r.status == CheckStatus::Fail || r.status == CheckStatus::Inconclusive) return 1;
  }
  return 0;
}

}  // namespace hmf
