#pragma once

// Verification checks over the library, each producing a self-describing
// report whose pass flag can be recomputed from (measured, comparison,
// threshold).

#include "hmf/series.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hmf {

enum class Measure { Residual, Count };
enum class Comparison { LessEqual, Less, Equal, Greater, GreaterEqual };
enum class CheckStatus { Pass, Fail, Skipped, Inconclusive };

const char* to_string(Comparison c);
const char* to_string(CheckStatus s);
bool compare(double measured, Comparison c, double threshold);

struct VerificationReport {
  std::string check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Measure measure = Measure::Residual;
  double measured = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::LessEqual;
  CheckStatus status = CheckStatus::Fail;
  double seconds = 0.0;
  std::string detail;

  bool pass() const { return status == CheckStatus::Pass; }
};

// Sets status from the comparison (leaves Skipped / Inconclusive alone).
void finalize(VerificationReport& r);

nlohmann::ordered_json to_json(const VerificationReport& r);

struct ThresholdTable {
  std::string version;
  std::map<std::string, double> values;

  double at(const std::string& name) const;
  // "name=value"
  void set(const std::string& assignment);
};

ThresholdTable default_thresholds();

struct HarnessConfig {
  std::uint64_t seed = 20240501;
  bool deterministic = false;
  ThresholdTable thresholds = default_thresholds();
};

// ---------------------------------------------------------------------------
// Sampling

using Rng = std::mt19937_64;

// Uniform in the strip V_eps: lateral part in a cube of half-width
// 1/(eps sqrt(n-1)) (so its norm is <= 1/eps), x_n in [2 eps, 1/eps].
VectorF sample_strip_point(Rng& rng, int n, double eps = 0.25);

// Lateral part in [-1/2, 1/2]^{n-1}, x_n in [1, 2]: well inside the
// half-space, for stencil-based checks.
VectorF sample_interior_point(Rng& rng, int n);

// Random element of the group as a word of `tokens` generator steps.
// Steps are T(+-step e_j) for the group's translation step, J when J is in
// the group, and J T(N e_j) J^{-1} lifts of the level.
VahlenZ sample_group_element(Rng& rng, const GroupDescriptor& g, int tokens);

// Random word in T(+-e_j), j <= p, and J.
VahlenZ sample_gamma_p_word(Rng& rng, int n, int p, int length);

// ---------------------------------------------------------------------------
// Checks

std::vector<VerificationReport> check_clifford_relations(int n, int samples, const HarnessConfig& cfg);

std::vector<VerificationReport> check_mobius(int n, int p, int pairs, int points, const HarnessConfig& cfg);

VerificationReport check_kernel_multiplicativity(int n, int s, int samples, const HarnessConfig& cfg);

// Cauchy kernel q0(., 1, n) under the first-order stencil at h and h/2.
std::vector<VerificationReport> check_cauchy_monogenicity(int n, double h, int points, const HarnessConfig& cfg);

VerificationReport check_jet_vs_fd(int n, int max_order, int points, const HarnessConfig& cfg);

std::vector<VerificationReport> check_coset_counts(int n, int p, int word_limit, const HarnessConfig& cfg);

// Independent count of c = 0 cosets: c = 0 elements of Gamma_p are
// left-translates T_b M_u of the 2^{p+1} unit matrices M_u; count the M_u
// for which some b, taken modulo the group's translation step, puts T_b M_u
// in the group.
int c_zero_count_by_membership(const GroupDescriptor& g);

struct AutomorphyOptions {
  int coarse_limit = 5;
  int fine_limit = 8;
  int elements = 10;
  int points = 10;
  int element_tokens = 3;
};

VerificationReport check_automorphy(SeriesKind kind, const SeriesSpec& spec, const AutomorphyOptions& opt,
                                    const HarnessConfig& cfg);

struct MonogenicityOptions {
  int l = 0;          // 0: use s
  double h = 0.0;     // 0: step default for the order
  int points = 10;
  bool richardson = false;
};

// Max over interior points of |D^l f| at spec.word_limit.  For biregular
// series, left D_x^s and right D_y^t at the same time.
VerificationReport check_monogenicity(SeriesKind kind, const SeriesSpec& spec, const MonogenicityOptions& opt,
                                      const HarnessConfig& cfg);

// Ratio of the max residual at word limit `finer` to that at spec.word_limit;
// passes when < 1.
VerificationReport check_monogenicity_trend(SeriesKind kind, const SeriesSpec& spec, int finer,
                                            const MonogenicityOptions& opt, const HarnessConfig& cfg);

// Evaluates at x = t e_n (diagonal for biregular); target is the c = 0 coset
// count (1 for odd weight).  Two reports: strict decrease of the errors, and
// the error at the largest t.
std::vector<VerificationReport> check_limits(SeriesKind kind, const SeriesSpec& spec,
                                             const std::vector<double>& tvalues, const HarnessConfig& cfg);

// Odd-weight sum regrouped over +-M pairs, max over sample points.  Zero is
// expected when -1 is in the group, nonzero otherwise.
VerificationReport check_cancellation(const GroupDescriptor& g, int s, int word_limit, int points,
                                      const HarnessConfig& cfg);

// max over |m| = order of |zeta_m(R2)| / |zeta_m(R2) - zeta_m(R1)|.
VerificationReport check_zeta_nonvanishing(int n, int order, int r1, int r2, const HarnessConfig& cfg);

// Tail slope of the coset height sum for an exponent above and below p + 1.
std::vector<VerificationReport> check_abscissa(const GroupDescriptor& g, int word_limit, double alpha_above,
                                               double alpha_below, const HarnessConfig& cfg);

// ---------------------------------------------------------------------------
// Suites

struct SuiteOptions {
  int n = 4;
  int p = 1;
  int word_limit = 8;
  int box_radius = 3;
  std::vector<double> tvalues{10.0, 30.0, 100.0};
};

// Names accepted by run_named_check; "all" runs every one.
const std::vector<std::string>& check_names();

std::vector<VerificationReport> run_named_check(const std::string& name, const SuiteOptions& opt,
                                                const HarnessConfig& cfg);

// Exit status: 0 when every report is Pass or Skipped.
int suite_exit_code(const std::vector<VerificationReport>& reports);

}  // namespace hmf
