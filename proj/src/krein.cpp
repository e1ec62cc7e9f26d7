#include "winter/krein.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

#include "winter/error.hpp"

namespace winter {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_momentum(cplx k) {
  if (k == cplx{0.0, 0.0}) throw OriginSingularity("momentum k = 0");
}

cplx det_from_phi(const GpiParams& p, const PhiBoundaryValues& phi) {
  return -1.0 - p.alpha * phi.phi1_at_R + p.beta * phi.phi2_prime -
         2.0 * p.gamma.real() * phi.phi2_avg - 0.25 * p.coupling_square();
}

// Interior boundary condition c0 f(R-) + c1 f'(R-) = 0 left over when the
// sphere decouples (alpha beta + |gamma|^2 = 4, gamma real).
std::array<double, 2> interior_condition(const GpiParams& p) {
  const double x = p.gamma.real();
  // A (f+, f+') = B (f-, f-'), and A is singular on the separated locus.
  const double a[2][2] = {{1.0 + 0.5 * x, -0.5 * p.beta}, {-0.5 * p.alpha, 1.0 - 0.5 * x}};
  const double b[2][2] = {{1.0 - 0.5 * x, 0.5 * p.beta}, {0.5 * p.alpha, 1.0 + 0.5 * x}};
  const int col = std::abs(a[0][0]) + std::abs(a[1][0]) >= std::abs(a[0][1]) + std::abs(a[1][1]) ? 0 : 1;
  const double w0 = a[1][col];
  const double w1 = -a[0][col];
  return {w0 * b[0][0] + w1 * b[1][0], w0 * b[0][1] + w1 * b[1][1]};
}

}  // namespace

PhiBoundaryValues phi_boundary(const Channel& ch, cplx k) {
  validate(ch);
  require_momentum(k);
  const cplx z = k * ch.radius;
  const ValueAndDerivative s = riccati_s(ch.l, z);
  const ValueAndDerivative xi = riccati_xi(ch.l, z);
  return PhiBoundaryValues{
      kI / k * s.value * xi.value,
      0.5 * kI * (s.value * xi.derivative + s.derivative * xi.value),
      kI * k * s.derivative * xi.derivative,
      k,
  };
}

cplx det_lambda(const GpiParams& p, const Channel& ch, cplx k) {
  return det_from_phi(p, phi_boundary(ch, k));
}

cplx det_lambda_balanced(const GpiParams& p, const Channel& ch, cplx k) {
  validate(ch);
  require_momentum(k);
  const cplx z = k * ch.radius;
  if (riccati_use_series(ch.l, z)) return std::exp(-kI * z) * det_lambda(p, ch, k);

  // With xi1 = e^{iz} p and S = (e^{iz} p + e^{-iz} q)/2 the determinant is
  // e^{2iz} A + B; the balanced form is e^{iz} A + e^{-iz} B.
  const ScaledHankel h = riccati_hankel_scaled(ch.l, z);
  const double x = p.gamma.real();
  const cplx delta_term = -kI * p.alpha / (2.0 * k);
  const cplx delta_prime_term = kI * p.beta * k / 2.0;
  const cplx a = delta_term * h.p * h.p + delta_prime_term * h.dp * h.dp - kI * x * h.p * h.dp;
  const cplx b = (-1.0 - 0.25 * p.coupling_square()) + delta_term * h.p * h.q +
                 delta_prime_term * h.dq * h.dp - 0.5 * kI * x * (h.q * h.dp + h.dq * h.p);
  return std::exp(kI * z) * a + std::exp(-kI * z) * b;
}

KreinCoefficients krein_coefficients(const GpiParams& p, const Channel& ch, cplx k) {
  const PhiBoundaryValues phi = phi_boundary(ch, k);
  const cplx det = det_from_phi(p, phi);
  if (std::abs(det) < kPoleAtKTolerance) throw PoleAtK("det lambda vanishes at the requested momentum");
  const double s = p.coupling_square();
  KreinCoefficients out;
  out.det_lambda = det;
  out.lambda[0][0] = (p.alpha - phi.phi2_prime * s) / det;
  out.lambda[0][1] = (p.gamma + phi.phi2_avg * s) / det;
  out.lambda[1][0] = (std::conj(p.gamma) + phi.phi2_avg * s) / det;
  out.lambda[1][1] = (-p.beta - phi.phi1_at_R * s) / det;
  return out;
}

std::vector<double> real_axis_roots(const GpiParams& p, const Channel& ch, double k_max) {
  validate(ch);
  if (!is_separated(p)) throw NotSeparated("real_axis_roots requires alpha*beta + |gamma|^2 = 4 and Im gamma = 0");
  const auto c = interior_condition(p);
  const double radius = ch.radius;
  // Real on the real axis: the interior factor of det lambda.
  auto interior = [&](double k) {
    const ValueAndDerivative s = riccati_s(ch.l, cplx{k * radius, 0.0});
    return c[0] * s.value.real() + c[1] * k * s.derivative.real();
  };

  std::vector<double> roots;
  const double k_min = 1e-3 / radius;
  const double step = std::numbers::pi / (16.0 * radius);
  double lo = k_min;
  double f_lo = interior(lo);
  while (lo < k_max) {
    const double hi = std::min(lo + step, k_max);
    const double f_hi = interior(hi);
    if (f_hi == 0.0) {
      roots.push_back(hi);
    } else if (f_lo != 0.0 && std::signbit(f_lo) != std::signbit(f_hi)) {
      double a = lo, b = hi, fa = f_lo;
      for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = interior(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return roots;
}

}  // namespace winter
