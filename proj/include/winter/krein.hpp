#pragma once

#include <array>
#include <complex>
#include <vector>

#include "winter/gpi_params.hpp"
#include "winter/riccati.hpp"

namespace winter {

// Boundary values at r = R of the two deficiency solutions.
//   phi1_at_R  = Phi1(R)                      (continuous at R)
//   phi2_avg   = (Phi2(R+) + Phi2(R-)) / 2    (Phi2 jumps by 1 across R)
//   phi2_prime = Phi2'(R)                     (continuous at R; both one-sided values agree)
struct PhiBoundaryValues {
  cplx phi1_at_R;
  cplx phi2_avg;
  cplx phi2_prime;
  cplx k;
};

struct KreinCoefficients {
  std::array<std::array<cplx, 2>, 2> lambda;
  cplx det_lambda;
};

inline constexpr double kPoleAtKTolerance = 1e-14;

PhiBoundaryValues phi_boundary(const Channel& ch, cplx k);

// -1 - alpha Phi1(R) + beta Phi2'(R) - (gamma + conj gamma) Phi2(Rbar) - (alpha beta + |gamma|^2)/4
cplx det_lambda(const GpiParams& p, const Channel& ch, cplx k);

// e^{-ikR} det_lambda(p, ch, k), evaluated without forming e^{2ikR}.
cplx det_lambda_balanced(const GpiParams& p, const Channel& ch, cplx k);

KreinCoefficients krein_coefficients(const GpiParams& p, const Channel& ch, cplx k);

// Embedded eigenvalue momenta in (1e-3/R, k_max] for a separated interaction.
std::vector<double> real_axis_roots(const GpiParams& p, const Channel& ch, double k_max);

}  // namespace winter
