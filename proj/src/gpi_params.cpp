#include "winter/gpi_params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "winter/error.hpp"

namespace winter {
namespace {

constexpr cplx kI{0.0, 1.0};

// Reduces an angle to [0, pi); returns true when an odd multiple of pi was
// removed, i.e. the accompanying matrix must change sign.
bool reduce_to_half_turn(double& angle) {
  constexpr double pi = std::numbers::pi;
  const double turns = std::floor(angle / pi);
  angle -= turns * pi;
  if (angle >= pi) {
    angle -= pi;
    return std::fmod(turns + 1.0, 2.0) != 0.0;
  }
  if (angle < 0.0) angle = 0.0;
  return std::fmod(std::abs(turns), 2.0) != 0.0;
}

// Unnormalized real matrix M such that Lambda = -M / (s - 4 + 4i Im gamma).
std::array<double, 4> transfer_numerator(const GpiParams& p) {
  const double s = p.coupling_square();
  const double x = p.gamma.real();
  return {s + 4.0 - 4.0 * x, 4.0 * p.beta, 4.0 * p.alpha, s + 4.0 + 4.0 * x};
}

cplx transfer_denominator(const GpiParams& p) {
  return {p.coupling_square() - 4.0, 4.0 * p.gamma.imag()};
}

}  // namespace

std::string_view to_string(GpiClass c) {
  switch (c) {
    case GpiClass::Delta:
      return "delta";
    case GpiClass::Intermediate:
      return "intermediate";
    case GpiClass::DeltaPrime:
      return "delta-prime";
  }
  return "unknown";
}

Mat2 UnitaryForm::matrix() const {
  const cplx phase = std::polar(1.0, xi);
  return {{{phase * u1, phase * u2}, {-phase * std::conj(u2), phase * std::conj(u1)}}};
}

Mat2 TransferForm::matrix() const {
  const cplx phase = std::polar(1.0, chi);
  return {{{phase * a, phase * b}, {phase * c, phase * d}}};
}

GpiClass classify(const GpiParams& p) {
  if (p.beta != 0.0) return GpiClass::DeltaPrime;
  if (p.gamma.real() != 0.0) return GpiClass::Intermediate;
  return GpiClass::Delta;
}

bool is_separated(const GpiParams& p) {
  return std::abs(p.coupling_square() - 4.0) <= kSeparationTolerance &&
         std::abs(p.gamma.imag()) <= kSeparationTolerance;
}

UnitaryForm to_unitary(const GpiParams& p) {
  const double s = p.coupling_square();
  const double x = p.gamma.real();
  const double y = p.gamma.imag();
  // U = -(P + iQ)^{-1}(P - iQ) for the boundary conditions written as P F + Q F' = 0;
  // the common denominator is E = s + 4 + 2i(alpha - beta), |E| = D.
  const cplx e{s + 4.0, 2.0 * (p.alpha - p.beta)};
  const double norm = std::abs(e);

  UnitaryForm u;
  u.xi = std::numbers::pi / 2.0 - std::arg(e);
  u.u1 = cplx{-2.0 * (p.alpha + p.beta), 4.0 * x} / norm;
  u.u2 = kI * cplx{s - 4.0, -4.0 * y} / norm;
  if (reduce_to_half_turn(u.xi)) {
    u.u1 = -u.u1;
    u.u2 = -u.u2;
  }
  return u;
}

TransferForm to_transfer(const GpiParams& p) {
  const cplx den = transfer_denominator(p);
  const double den_abs = std::abs(den);
  if (den_abs <= kSeparationTolerance) {
    throw SeparatedInteraction("transfer matrix undefined: alpha*beta + |gamma|^2 - 4 + 4i Im gamma = 0");
  }
  // Lambda = -M/den = e^{i chi} M/|den| with chi = arg(-conj(den)).
  double chi = std::arg(-std::conj(den));
  const double sign = reduce_to_half_turn(chi) ? -1.0 : 1.0;
  const auto m = transfer_numerator(p);
  return TransferForm{chi, sign * m[0] / den_abs, sign * m[1] / den_abs,
                      sign * m[2] / den_abs, sign * m[3] / den_abs};
}

GpiClass classify_unitary(const UnitaryForm& u) {
  const Mat2 m = u.matrix();
  const cplx det_shifted = (m[0][0] + 1.0) * (m[1][1] + 1.0) - m[0][1] * m[1][0];
  if (std::abs(det_shifted) > kUnitaryZeroTolerance) return GpiClass::DeltaPrime;
  // sigma_1 U^T sigma_1 swaps the diagonal and keeps the off-diagonal.
  if (std::abs(m[0][0] - m[1][1]) <= kUnitaryZeroTolerance) return GpiClass::Delta;
  return GpiClass::Intermediate;
}

GpiParams canonical_real_gamma(const GpiParams& p) {
  if (p.gamma.imag() == 0.0) return p;
  // The inner phase rotation leaves the real transfer matrix T = +-M/|den|.
  // Invert Lambda(alpha', beta', gamma') = T for real gamma':
  //   s' = 4(t - 2)/(t + 2), gamma' = 2(d - a)/(t + 2),
  //   beta' = 4b/(t + 2),     alpha' = 4c/(t + 2),
  // with the sign picked so that trace t >= 0 keeps t + 2 away from zero.
  const double den_abs = std::abs(transfer_denominator(p));
  auto m = transfer_numerator(p);
  double sign = (m[0] + m[3]) >= 0.0 ? 1.0 : -1.0;
  const double a = sign * m[0] / den_abs;
  const double b = sign * m[1] / den_abs;
  const double c = sign * m[2] / den_abs;
  const double d = sign * m[3] / den_abs;
  const double t = a + d;
  return GpiParams{4.0 * c / (t + 2.0), 4.0 * b / (t + 2.0), cplx{2.0 * (d - a) / (t + 2.0), 0.0}};
}

GpiParams from_scale_invariant(double h, double phi) {
  if (!(h > 0.0)) throw std::invalid_argument("from_scale_invariant: h must be positive");
  const double den = h + 1.0 / h + 2.0 * std::cos(phi);
  if (std::abs(den) < 1e-14) {
    throw DegenerateDenominator("h + 1/h + 2 cos(phi) vanishes");
  }
  return GpiParams{0.0, 0.0, cplx{h - 1.0 / h, 2.0 * std::sin(phi)} / den};
}

double boundary_residual(const GpiParams& p, const BoundaryData& f) {
  const cplx sum_f = f.f_plus + f.f_minus;
  const cplx sum_fp = f.fp_plus + f.fp_minus;
  const cplx row1 = f.fp_plus - f.fp_minus - 0.5 * p.alpha * sum_f - 0.5 * p.gamma * sum_fp;
  const cplx row2 = f.f_plus - f.f_minus + 0.5 * std::conj(p.gamma) * sum_f - 0.5 * p.beta * sum_fp;
  return std::sqrt(std::norm(row1) + std::norm(row2));
}

double boundary_residual(const UnitaryForm& u, const BoundaryData& f) {
  const Mat2 m = u.matrix();
  const std::array<cplx, 2> values{f.f_plus, f.f_minus};
  const std::array<cplx, 2> normals{f.fp_plus, -f.fp_minus};
  double sq = 0.0;
  for (int i = 0; i < 2; ++i) {
    cplx row = -values[i] + kI * normals[i];
    for (int j = 0; j < 2; ++j) row += m[i][j] * (values[j] + kI * normals[j]);
    sq += std::norm(row);
  }
  return std::sqrt(sq);
}

double boundary_residual(const TransferForm& t, const BoundaryData& f) {
  const Mat2 m = t.matrix();
  const cplx r1 = f.f_plus - (m[0][0] * f.f_minus + m[0][1] * f.fp_minus);
  const cplx r2 = f.fp_plus - (m[1][0] * f.f_minus + m[1][1] * f.fp_minus);
  return std::sqrt(std::norm(r1) + std::norm(r2));
}

}  // namespace winter
