#pragma once

// Fundamental solutions of iterated Dirac operators D^s on R^n (s < n),
//
//   q0(x) = x / |x|^{n+1-s}   (s odd)
//   q0(x) = 1 / |x|^{n-s}     (s even)
//
// their partial derivatives q_m, and a finite-difference Dirac operator used
// as an independent check.

#include "hmf/jet.hpp"
#include "hmf/multivector.hpp"

#include <functional>

namespace hmf {

inline constexpr int kDefaultMaxDerivativeOrder = 6;

void validate_weight(int s, int n);

MultivectorF q0(const VectorF& x, int s, int n);

// Extension to Clifford-group arguments a (products of vectors):
// reverse(a) / |a|^{n+1-s} for odd s, |a|^{s-n} for even s, with
// |a|^2 = Sc(conj(a) a).  Agrees with q0 on vectors and satisfies
// q0(ab) = q0(b) q0(a).
MultivectorF q0_general(const MultivectorF& a, int s, int n);

// conj(reverse(q0_general(a))): the left automorphy factor of the
// two-variable series.
MultivectorF left_factor(const MultivectorF& a, int s, int n);

// |q0(ab) - q0(b) q0(a)| for products of vectors a, b.
double kernel_multiplicativity_residual(const MultivectorF& a, const MultivectorF& b, int s, int n);

// Full Taylor jet of q0 at x up to the given order.
Jet<MultivectorF> q_jet(const VectorF& x, int order, int s, int n);

// d^{|m|}/dx^m q0 at x.
MultivectorF q_m(const VectorF& x, const MultiIndex& m, int s, int n,
                 int max_order = kDefaultMaxDerivativeOrder);

// ---------------------------------------------------------------------------
// Finite-difference Dirac operator D = sum_i e_i d/dx_i

using Field = std::function<MultivectorF(const VectorF&)>;

enum class Side { Left, Right };

enum class StencilDomain {
  Unrestricted,
  HalfSpace,  // every stencil point keeps x_n > 0
  Punctured,  // every stencil point stays away from the origin
};

struct FdOptions {
  Side side = Side::Left;
  StencilDomain domain = StencilDomain::HalfSpace;
  bool richardson = false;  // combine steps h and h/2 to cancel the h^2 term
};

inline constexpr double kFdStepFirstOrder = 1e-4;
inline constexpr double kFdStepIterated = 1e-2;

// sum_i e_i (f(x + h e_i) - f(x - h e_i)) / (2h), or with e_i on the right.
MultivectorF dirac_fd(const Field& f, const VectorF& x, double h, const FdOptions& options = {});

// The central stencil applied l times (nested).
MultivectorF dirac_power_fd(const Field& f, const VectorF& x, double h, int l, const FdOptions& options = {});

}  // namespace hmf
