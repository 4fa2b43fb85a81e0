#pragma once

// Truncated Eisenstein and Poincare type series over coset representatives
// T(Lambda) \ Lambda, and the lattice series built from kernel derivatives.
//
// Coset sums are truncated by generator word length (see enumerate_cosets);
// lattice sums by symmetric sup-norm boxes, so omega -> -omega pairs are
// always complete.

#include "hmf/congruence.hpp"
#include "hmf/kernels.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hmf {

enum class SeriesKind { Scalar, Vector, OddWeight, Biregular, LatticeG, Zeta };

const char* to_string(SeriesKind k);
SeriesKind parse_series_kind(const std::string& name);

struct SeriesSpec {
  GroupDescriptor group;
  int s = 2;
  int t = 2;  // right weight, biregular series only
  std::optional<MultiIndex> m;
  int word_limit = 6;
  int box_radius = 3;
};

struct SeriesResult {
  MultivectorF value{1};
  // (word-length level, partial sum over reps up to that level)
  std::vector<std::pair<int, MultivectorF>> partial_sums;
  int coset_count_c0 = 0;
  std::vector<std::string> warnings;
};

// Convergence hypotheses; each throws SpecViolation naming the failed condition.
void validate_poincare(const SeriesSpec& spec);   // s < n, p < n - s - 1
void validate_scalar(const SeriesSpec& spec);     // + s even
void validate_vector(const SeriesSpec& spec);     // + |m| >= 3 odd
void validate_odd_weight(const SeriesSpec& spec); // n >= 4, p < n - s - 1
void validate_biregular(const SeriesSpec& spec);  // s + t even, p < min(n, 2n - s - t - 1)
void validate_lattice_index(const MultiIndex& m, int n);

// ---------------------------------------------------------------------------
// Lattice series

// sum over omega in Z^{n-1} \ {0}, |omega|_inf <= R, of q_m(omega) with s = 1.
MultivectorF zeta_m(const MultiIndex& m, int n, int radius);

// sum over |omega|_inf <= R of q_m(z + omega) with s = 1.
MultivectorF epsilon_m(const VectorF& z, const MultiIndex& m, int n, int radius);

// sum over (alpha, omega) != (0, 0), |alpha| <= R, |omega|_inf <= R, of
// q_m(alpha x + omega) with s = 1.
MultivectorF lattice_G_m(const HalfSpacePoint& x, const MultiIndex& m, int n, int radius);

struct LatticeSplit {
  MultivectorF alpha_zero;     // the alpha = 0 slice
  MultivectorF alpha_nonzero;
};
LatticeSplit lattice_G_m_split(const HalfSpacePoint& x, const MultiIndex& m, int n, int radius);

// ---------------------------------------------------------------------------
// Coset series

// Float view of a coset enumeration, shared between evaluations.
struct CosetSystem {
  GroupDescriptor group;
  int word_limit = 0;
  std::vector<CosetRep> reps;
  std::vector<VahlenF> matrices;  // to_float(reps[i].matrix)
  int c_zero = 0;
};

// Memoized per (group, word limit); thread-safe.
std::shared_ptr<const CosetSystem> coset_system(const GroupDescriptor& g, int word_limit);

using HalfSpaceFunction = std::function<MultivectorF(const VectorF&)>;
using SeriesFunction = std::function<SeriesResult(const VectorF&)>;

// x -> sum over cosets of q0(cx + d) ftilde(M<x>).  ftilde must be bounded
// and invariant under the group's translations (not checked).
SeriesFunction poincare_general(HalfSpaceFunction ftilde, const SeriesSpec& spec);

// sum |cx + d|^{s-n}
SeriesResult scalar_eisenstein(const VectorF& x, const SeriesSpec& spec);

// sum q0(cx + d) G_m(M<x> + e_n)
SeriesResult vector_eisenstein(const VectorF& x, const SeriesSpec& spec);

// sum q0(cx + d), even or odd s
SeriesResult odd_weight_eisenstein(const VectorF& x, const SeriesSpec& spec);

// sum left_factor(cx + d, s) q0(y c* + d*, t)
SeriesResult biregular_eisenstein(const VectorF& x, const VectorF& y, const SeriesSpec& spec);

// Odd-weight sum regrouped as (term(M) + term(-M)) over negation pairs.
struct PairedSum {
  MultivectorF value{1};
  std::size_t pairs = 0;
  std::size_t unpaired = 0;
};
PairedSum paired_odd_weight_sum(const VectorF& x, const GroupDescriptor& g, int s, int word_limit);

// ---------------------------------------------------------------------------
// Truncation diagnostics

struct TailReport {
  std::vector<int> levels;      // levels l >= 1
  std::vector<double> deltas;   // |S_l - S_{l-1}|
  int window = 3;
  double decay_slope = 0.0;     // least-squares slope of log(delta) over the last `window` levels
  bool decreasing = false;      // decay_slope < 0
};

TailReport tail_report(const SeriesResult& result, int window = 3);

// sum over cosets of |c e_n + d|^{-alpha}, with partial sums by word length.
SeriesResult coset_height_sum(const GroupDescriptor& g, int word_limit, double alpha);

struct AbscissaDiagnostic {
  double alpha = 0.0;
  int p = 1;
  bool convergent_by_theory = false;  // alpha > p + 1
  TailReport tail;
};

AbscissaDiagnostic abscissa_diagnostic(const GroupDescriptor& g, int word_limit, double alpha, int window = 3);

}  // namespace hmf
