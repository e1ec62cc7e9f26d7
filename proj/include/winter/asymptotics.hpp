#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "winter/gpi_params.hpp"
#include "winter/polefinder.hpp"
#include "winter/riccati.hpp"

namespace winter {

enum class PredictionOrder { Leading, NextOrder };

struct AsymptoticPrediction {
  int index = 0;
  cplx k_pred;
  PredictionOrder order = PredictionOrder::Leading;
  double error_scale = 1.0;  // size of the neglected remainder at this n
};

struct ComparisonRow {
  int index = 0;
  cplx k_found;
  cplx k_pred;
  double abs_err = 0.0;
  double scaled_err = 0.0;  // abs_err / error_scale
};

// Delta-type lattice:
//   Re k_n = (2n pi + l pi + 3pi/2)/(2R) for alpha > 0, (... + pi/2)/(2R) for alpha < 0,
//   Im k_n = -(1/2R) ln(2|Re k_n|/|alpha|),
// remainder n^{-1} ln n. Im k_n is positive for the few sites with 2|Re k_n| < |alpha|,
// where the logarithmic law has not set in.
AsymptoticPrediction predict_delta(int n, const Channel& ch, double alpha);

// Intermediate type: constant imaginary part -(1/2R) ln((1 + |gamma|^2/4)/|Re gamma|).
AsymptoticPrediction predict_intermediate(int n, const Channel& ch, cplx gamma);

// Delta-prime type, next order around k0_n = pi n/R + pi(l+1)/(2R):
//   k_n = k0 - [(l^2+l)/(2R^2) + (Re gamma - 1 - s/4)/(beta R)]/k0
//         - i [1 + |gamma|^2/2 - (Re gamma)^2 - alpha beta/2 + s^2/16]/(beta R k0)^2,
// s = alpha beta + |gamma|^2, remainder n^{-3}.
AsymptoticPrediction predict_delta_prime(int n, const Channel& ch, const GpiParams& p);

// Class dispatch. std::nullopt when the coupling is unitarily equivalent to the free
// interaction (no resonances at all); throws Separated on the separated locus.
std::optional<AsymptoticPrediction> predict(const GpiParams& p, const Channel& ch, int n);

std::vector<ComparisonRow> compare(const std::vector<Resonance>& poles, const GpiParams& p, const Channel& ch);

}  // namespace winter
