#include "winter/riccati.hpp"

#include <cmath>
#include <stdexcept>

#include "winter/error.hpp"

namespace winter {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_nonzero(cplx z) {
  if (z == cplx{0.0, 0.0}) throw OriginSingularity("Riccati-Hankel function evaluated at z = 0");
}

void require_order(int l) {
  if (l < 0) throw std::invalid_argument("angular momentum l must be nonnegative");
}

}  // namespace

void validate(const Channel& ch) {
  require_order(ch.l);
  if (!(ch.radius > 0.0) || !std::isfinite(ch.radius)) {
    throw std::invalid_argument("sphere radius must be positive and finite");
  }
}

bool riccati_use_series(int l, cplx z) { return std::abs(z) < l + 1.0; }

ValueAndDerivative riccati_s_series(int l, cplx z) {
  require_order(l);
  // S_l(z) = z^{l+1}/(2l+1)!! * sum_k c_k z^{2k},
  // c_k = c_{k-1} * (-1/2) / (k (2l + 2k + 1)).
  cplx lead = z;  // z^{l+1} / (2l+1)!!
  for (int j = 1; j <= l; ++j) lead *= z / (2.0 * j + 1.0);

  const cplx z2 = z * z;
  cplx term{1.0, 0.0};
  cplx sum = term;
  cplx dsum = static_cast<double>(l + 1) * term;
  for (int k = 1; k < 500; ++k) {
    term *= -0.5 * z2 / (static_cast<double>(k) * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    dsum += static_cast<double>(l + 1 + 2 * k) * term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && std::abs(term) * (l + 1 + 2 * k) < 1e-18 * std::abs(dsum)) {
      break;
    }
  }
  // S' = z^l/(2l+1)!! * sum_k (l + 1 + 2k) c_k z^{2k}
  const cplx dlead = (z == cplx{0.0, 0.0}) ? (l == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}) : lead / z;
  return {lead * sum, dlead * dsum};
}

ScaledHankel riccati_hankel_scaled(int l, cplx z) {
  require_order(l);
  require_nonzero(z);
  const cplx inv = 1.0 / z;
  cplx p_prev = -kI;
  cplx q_prev = kI;
  if (l == 0) return {p_prev, 1.0, q_prev, 1.0};

  cplx p = -(1.0 + kI * inv);
  cplx q = -(1.0 - kI * inv);
  for (int m = 1; m < l; ++m) {
    const cplx factor = (2.0 * m + 1.0) * inv;
    const cplx p_next = factor * p - p_prev;
    const cplx q_next = factor * q - q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  const cplx lz = static_cast<double>(l) * inv;
  ScaledHankel h{p, p_prev - lz * p, q, q_prev - lz * q};

  // Off the real axis and below l + 1 one of the two recurrences starts out
  // dominated by the S component and loses about 2|Im z| / ln 10 digits.
  // Rebuild that factor from xi1 + xi2 = 2S with S from its series.
  if (riccati_use_series(l, z) && z.imag() != 0.0) {
    const ValueAndDerivative s = riccati_s_series(l, z);
    if (z.imag() < 0.0) {
      const cplx down = std::exp(-kI * z);
      const cplx down2 = down * down;
      h.p = 2.0 * down * s.value - down2 * h.q;
      h.dp = 2.0 * down * s.derivative - down2 * h.dq;
    } else {
      const cplx up = std::exp(kI * z);
      const cplx up2 = up * up;
      h.q = 2.0 * up * s.value - up2 * h.p;
      h.dq = 2.0 * up * s.derivative - up2 * h.dp;
    }
  }
  return h;
}

ValueAndDerivative riccati_s(int l, cplx z) {
  require_order(l);
  if (riccati_use_series(l, z)) return riccati_s_series(l, z);
  const ScaledHankel h = riccati_hankel_scaled(l, z);
  const cplx up = std::exp(kI * z);
  const cplx down = std::exp(-kI * z);
  return {0.5 * (up * h.p + down * h.q), 0.5 * (up * h.dp + down * h.dq)};
}

ValueAndDerivative riccati_xi(int l, cplx z) {
  const ScaledHankel h = riccati_hankel_scaled(l, z);
  const cplx up = std::exp(kI * z);
  return {up * h.p, up * h.dp};
}

cplx wronskian(int l, cplx z) {
  const ScaledHankel h = riccati_hankel_scaled(l, z);
  // W(S, xi1) = W(xi2, xi1)/2; the exponentials cancel exactly.
  const cplx scaled = 0.5 * (h.q * h.dp - h.dq * h.p);
  if (!riccati_use_series(l, z)) return scaled;

  // Near the origin p and q blow up like z^{-l} and their product cancels;
  // evaluate S from its series instead when that route loses fewer digits.
  const ValueAndDerivative s = riccati_s_series(l, z);
  const cplx up = std::exp(kI * z);
  const double scaled_size = 0.5 * (std::abs(h.q * h.dp) + std::abs(h.dq * h.p));
  const double direct_size = std::abs(up) * (std::abs(s.value * h.dp) + std::abs(s.derivative * h.p));
  if (scaled_size <= direct_size) return scaled;
  return up * (s.value * h.dp - s.derivative * h.p);
}

}  // namespace winter
