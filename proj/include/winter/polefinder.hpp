#pragma once

#include <complex>
#include <vector>

#include "winter/gpi_params.hpp"
#include "winter/riccati.hpp"

namespace winter {

// Rectangle in the closed fourth quadrant of the momentum plane.
struct SearchRegion {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  [[nodiscard]] double width() const { return re_max - re_min; }
  [[nodiscard]] double height() const { return im_max - im_min; }
  [[nodiscard]] bool contains(cplx k) const {
    return k.real() > re_min && k.real() < re_max && k.imag() > im_min && k.imag() < im_max;
  }
};

// Throws std::invalid_argument when the rectangle violates re_min >= 1e-3/R,
// re_min < re_max or im_min <= im_max <= 0.
void validate(const SearchRegion& region, const Channel& ch);

struct Resonance {
  int index = 0;
  cplx k;
  double residual = 0.0;  // |det lambda(k)|
  Channel channel;
  GpiClass gpi_class = GpiClass::Delta;
};

struct RefineResult {
  cplx k;
  double residual = 0.0;  // |det lambda(k)|
  int steps = 0;
};

struct PoleSearchOptions {
  double residual_tolerance = 1e-9;
  double dedupe_tolerance = 1e-8;
  int max_depth = 40;
};

// Smallest admissible real part, 1e-3/R.
double min_search_re(const Channel& ch);

// -(ln(re_max R) + 5)/R
double default_im_min(const Channel& ch, double re_max);

// Winding number of det_lambda_balanced around the region boundary.
int count_zeros(const GpiParams& p, const Channel& ch, const SearchRegion& region);

// Damped Newton on det_lambda_balanced from the seed k0.
RefineResult refine(const GpiParams& p, const Channel& ch, cplx k0);

// Poles in [1e-3/R, re_max] x [im_min, 0], sorted by Re k and indexed.
std::vector<Resonance> find_poles(const GpiParams& p, const Channel& ch, double re_max, double im_min,
                                  const PoleSearchOptions& options = {});

std::vector<Resonance> find_poles(const GpiParams& p, const Channel& ch, const SearchRegion& region,
                                  const PoleSearchOptions& options = {});

// Assigns resonance indices by nearest point of the class lattice.
std::vector<Resonance> index_poles(std::vector<Resonance> poles, const Channel& ch, GpiClass cls,
                                   const GpiParams& p);

}  // namespace winter
