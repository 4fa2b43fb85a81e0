#include "hmf/kernels.hpp"

#include <cmath>

namespace hmf {

void validate_weight(int s, int n) {
  if (s < 1) throw SpecViolation("kernel weight s must be a positive integer");
  if (s >= n) throw Unsupported("kernel weight s must satisfy s < n (s=" + std::to_string(s) +
                                ", n=" + std::to_string(n) + ")");
}

namespace {

int odd_exponent(int s, int n) { return n + 1 - s; }
int even_exponent(int s, int n) { return n - s; }

void require_dim(int actual, int n) {
  if (actual != n) throw DimensionMismatch("argument dimension " + std::to_string(actual) + " != n=" + std::to_string(n));
}

}  // namespace

MultivectorF q0(const VectorF& x, int s, int n) {
  validate_weight(s, n);
  require_dim(x.dim(), n);
  const double r2 = x.norm_squared();
  if (r2 == 0.0) throw SingularInput("q0 is singular at the origin");
  const double r = std::sqrt(r2);
  if (s % 2 == 1) return x.mv() * std::pow(r, -odd_exponent(s, n));
  return MultivectorF::scalar(n, std::pow(r, -even_exponent(s, n)));
}

MultivectorF q0_general(const MultivectorF& a, int s, int n) {
  validate_weight(s, n);
  require_dim(a.dim(), n);
  const double r2 = scalar_part(conjugate(a) * a);
  if (!(r2 > 0.0)) throw SingularInput("q0 is singular at a zero-norm argument");
  const double r = std::sqrt(r2);
  if (s % 2 == 1) return reverse(a) * std::pow(r, -odd_exponent(s, n));
  return MultivectorF::scalar(n, std::pow(r, -even_exponent(s, n)));
}

MultivectorF left_factor(const MultivectorF& a, int s, int n) {
  return conjugate(reverse(q0_general(a, s, n)));
}

double kernel_multiplicativity_residual(const MultivectorF& a, const MultivectorF& b, int s, int n) {
  return norm(q0_general(a * b, s, n) - q0_general(b, s, n) * q0_general(a, s, n));
}

Jet<MultivectorF> q_jet(const VectorF& x, int order, int s, int n) {
  validate_weight(s, n);
  require_dim(x.dim(), n);
  if (x.is_zero()) throw SingularInput("q0 derivatives are singular at the origin");
  auto coords = jet_lift(x, order);
  const auto layout = coords.front().layout_ptr();
  const MultivectorF zero(n);
  Jet<MultivectorF> out(layout, zero);

  if (s % 2 == 0) {
    const auto p = norm_power(coords, -even_exponent(s, n));
    for (std::size_t k = 0; k < layout->size(); ++k) out[k] = MultivectorF::scalar(n, p[k]);
    return out;
  }
  const auto p = norm_power(coords, -odd_exponent(s, n));
  std::vector<Jet<double>> comps;
  comps.reserve(coords.size());
  for (const auto& c : coords) comps.push_back(c * p);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < layout->size(); ++k) {
    for (std::size_t i = 0; i < comps.size(); ++i) v[i] = comps[i][k];
    out[k] = MultivectorF::vector(v);
  }
  return out;
}

MultivectorF q_m(const VectorF& x, const MultiIndex& m, int s, int n, int max_order) {
  if (m.dim() != n) throw DimensionMismatch("multi-index dimension differs from n");
  if (m.order() > max_order) {
    throw Unsupported("derivative order " + std::to_string(m.order()) + " exceeds configured maximum " +
                      std::to_string(max_order));
  }
  validate_weight(s, n);
  require_dim(x.dim(), n);
  if (x.is_zero()) throw SingularInput("q0 derivatives are singular at the origin");

  // Only the coefficient at m is needed, so assemble just that one.
  auto coords = jet_lift(x, m.order());
  const double scale = m.factorial();
  if (s % 2 == 0) {
    const auto p = norm_power(coords, -even_exponent(s, n));
    return MultivectorF::scalar(n, p.coefficient(m) * scale);
  }
  const auto p = norm_power(coords, -odd_exponent(s, n));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = (coords[i] * p).coefficient(m) * scale;
  return MultivectorF::vector(v);
}

namespace {

void check_stencil_domain(const VectorF& x, double h, int l, StencilDomain domain) {
  const double reach = h * l;
  switch (domain) {
    case StencilDomain::Unrestricted: return;
    case StencilDomain::HalfSpace:
      if (!(x.last() - reach > 0.0)) throw std::domain_error("finite-difference stencil crosses x_n <= 0");
      return;
    case StencilDomain::Punctured:
      if (!(x.norm() > reach)) throw std::domain_error("finite-difference stencil reaches the origin");
      return;
  }
}

MultivectorF stencil(const Field& f, const VectorF& x, double h, int l, Side side) {
  if (l == 0) return f(x);
  const int n = x.dim();
  MultivectorF acc(n);
  for (int i = 1; i <= n; ++i) {
    auto xp = x;
    auto xm = x;
    xp[i] += h;
    xm[i] -= h;
    const auto diff = (stencil(f, xp, h, l - 1, side) - stencil(f, xm, h, l - 1, side)) * (1.0 / (2.0 * h));
    const auto ei = MultivectorF::basis_vector(n, i);
    acc += side == Side::Left ? ei * diff : diff * ei;
  }
  return acc;
}

}  // namespace

MultivectorF dirac_fd(const Field& f, const VectorF& x, double h, const FdOptions& options) {
  return dirac_power_fd(f, x, h, 1, options);
}

MultivectorF dirac_power_fd(const Field& f, const VectorF& x, double h, int l, const FdOptions& options) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (l < 1) throw std::invalid_argument("Dirac power must be >= 1");
  check_stencil_domain(x, h, l, options.domain);
  if (!options.richardson) return stencil(f, x, h, l, options.side);
  const auto coarse = stencil(f, x, h, l, options.side);
  const auto fine = stencil(f, x, h / 2.0, l, options.side);
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

}  // namespace hmf
