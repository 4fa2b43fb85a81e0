// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "hmf/harness.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace hmf;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  std::vector<VerificationReport> reports;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
};

bool passed(const Criterion& c) {
  if (c.time_limit > 0.0 && c.seconds >= c.time_limit) return false;
  for (const auto& r : c.reports) {
    if (r.status != CheckStatus::Pass) return false;
  }
  return !c.reports.empty();
}

std::string summary(const Criterion& c) {
  std::ostringstream out;
  for (const auto& r : c.reports) {
    out << "\n      " << r.check << " " << to_string(r.status) << ": " << r.measured << " " << to_string(r.comparison) << " "
        << r.threshold;
  }
  return out.str();
}

template <class F>
Criterion run(int id, std::string name, double time_limit, F body) {
  Criterion c{id, std::move(name), {}, 0.0, time_limit};
  const auto start = Clock::now();
  try {
    c.reports = body();
  } catch (const std::exception& e) {
    VerificationReport r;
    r.check = c.name;
    r.status = CheckStatus::Fail;
    r.detail = e.what();
    c.reports = {r};
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

void append(std::vector<VerificationReport>& to, std::vector<VerificationReport> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

SeriesSpec spec(GroupDescriptor g, int s, int t, int L) {
  SeriesSpec out;
  out.group = g;
  out.s = s;
  out.t = t;
  out.word_limit = L;
  return out;
}

}  // namespace

int main() {
  HarnessConfig cfg;
  const std::vector<double> tvalues{10.0, 30.0, 100.0};
  std::vector<Criterion> results;

  results.push_back(run(1, "clifford relations (n=4, 8)", 5.0, [&] {
    auto out = check_clifford_relations(4, 1000, cfg);
    append(out, check_clifford_relations(8, 1000, cfg));
    return out;
  }));

  results.push_back(run(2, "mobius homomorphism and half-space", 0.0, [&] { return check_mobius(4, 1, 200, 20, cfg); }));

  results.push_back(run(3, "kernel identities", 0.0, [&] {
    std::vector<VerificationReport> out;
    for (int n : {4, 5}) {
      for (int s : {1, 2}) out.push_back(check_kernel_multiplicativity(n, s, 500, cfg));
    }
    append(out, check_cauchy_monogenicity(4, 1e-4, 20, cfg));
    return out;
  }));

  results.push_back(run(4, "jet derivatives vs finite differences", 0.0,
                        [&] { return std::vector{check_jet_vs_fd(4, 3, 50, cfg)}; }));

  results.push_back(run(5, "coset counts (L=6)", 30.0, [&] { return check_coset_counts(4, 1, 6, cfg); }));

  results.push_back(run(6, "limits", 0.0, [&] {
    auto out = check_limits(SeriesKind::Scalar, spec(GroupDescriptor::full(5, 1), 2, 2, 8), tvalues, cfg);
    append(out, check_limits(SeriesKind::OddWeight, spec(GroupDescriptor::principal(4, 1, 3), 1, 1, 8), tvalues, cfg));
    append(out, check_limits(SeriesKind::Biregular, spec(GroupDescriptor::full(4, 1), 1, 1, 8), tvalues, cfg));
    // the scalar and biregular targets are the Gamma_1 c = 0 count
    VerificationReport target;
    target.check = "limits.target";
    target.measure = Measure::Count;
    target.measured = coset_system(GroupDescriptor::full(4, 1), 8)->c_zero;
    target.comparison = Comparison::Equal;
    target.threshold = 4;
    finalize(target);
    out.push_back(target);
    return out;
  }));

  results.push_back(run(7, "odd-weight collapse", 0.0, [&] {
    std::vector<VerificationReport> out;
    for (const auto& g : {GroupDescriptor::full(4, 1), GroupDescriptor::principal(4, 1, 2), GroupDescriptor::theta(4, 1),
                          GroupDescriptor::upper0(4, 1, 2), GroupDescriptor::lower0(4, 1, 2),
                          GroupDescriptor::principal(4, 1, 3)}) {
      out.push_back(check_cancellation(g, 1, 8, 10, cfg));
    }
    return out;
  }));

  results.push_back(run(8, "automorphy residual decrease", 0.0, [&] {
    AutomorphyOptions opt;
    opt.coarse_limit = 5;
    opt.fine_limit = 8;
    opt.elements = 10;
    opt.points = 10;
    std::vector<VerificationReport> out;
    out.push_back(check_automorphy(SeriesKind::Scalar, spec(GroupDescriptor::full(5, 1), 2, 2, 8), opt, cfg));
    out.push_back(check_automorphy(SeriesKind::Biregular, spec(GroupDescriptor::full(4, 1), 1, 1, 8), opt, cfg));
    return out;
  }));

  results.push_back(run(9, "polymonogenicity of the scalar series", 0.0, [&] {
    MonogenicityOptions opt;
    opt.l = 2;
    opt.h = 1e-2;
    opt.points = 10;
    const auto s = spec(GroupDescriptor::full(5, 1), 2, 2, 8);
    std::vector<VerificationReport> out;
    out.push_back(check_monogenicity(SeriesKind::Scalar, s, opt, cfg));
    out.push_back(check_monogenicity_trend(SeriesKind::Scalar, s, 10, opt, cfg));
    return out;
  }));

  results.push_back(run(10, "non-vanishing zeta (|m|=3, n=4)", 0.0,
                        [&] { return std::vector{check_zeta_nonvanishing(4, 3, 6, 8, cfg)}; }));

  results.push_back(run(11, "convergence abscissa", 0.0,
                        [&] { return check_abscissa(GroupDescriptor::full(4, 1), 8, 3.5, 1.5, cfg); }));

  int failed = 0;
  for (const auto& c : results) {
    const bool ok = passed(c);
    failed += !ok;
    std::printf("%s  %2d  %-42s %7.2fs%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), c.seconds, summary(c).c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed ? 1 : 0;
}
