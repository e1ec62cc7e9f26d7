#pragma once

#include <complex>

namespace winter {

using cplx = std::complex<double>;

// Partial-wave channel: angular momentum l (Bessel order l + 1/2) on a sphere of radius R.
struct Channel {
  int l = 0;
  double radius = 1.0;

  [[nodiscard]] double order() const { return l + 0.5; }

  friend bool operator==(const Channel&, const Channel&) = default;
};

// Throws std::invalid_argument unless l >= 0 and R > 0.
void validate(const Channel& ch);

struct ValueAndDerivative {
  cplx value;
  cplx derivative;  // d/dz
};

// Riccati-Bessel S_l(z) = z j_l(z); S_0 = sin z. Entire in z.
ValueAndDerivative riccati_s(int l, cplx z);

// Riccati-Hankel xi_l(z) = z h1_l(z); xi_0 = -i e^{iz}. Throws OriginSingularity at z = 0.
ValueAndDerivative riccati_xi(int l, cplx z);

// S_l xi_l' - S_l' xi_l, identically i.
cplx wronskian(int l, cplx z);

// Exponentially scaled Riccati-Hankel pair:
//   xi1_l = e^{ iz} p,  xi1_l' = e^{ iz} dp,
//   xi2_l = e^{-iz} q,  xi2_l' = e^{-iz} dq,
// with p, q polynomials in 1/z. S_l = (xi1_l + xi2_l) / 2.
struct ScaledHankel {
  cplx p, dp, q, dq;
};

ScaledHankel riccati_hankel_scaled(int l, cplx z);

// Ascending power series of S_l and S_l'; accurate for |z| below about l + 1.
ValueAndDerivative riccati_s_series(int l, cplx z);

// True where S_l must come from the power series rather than (xi1 + xi2)/2.
bool riccati_use_series(int l, cplx z);

}  // namespace winter
