#include "winter/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "winter/error.hpp"

namespace winter {
namespace {

constexpr double kPi = std::numbers::pi;

void require_index(int n) {
  if (n < 0) throw std::invalid_argument("resonance index must be nonnegative");
}

// n = 0 is evaluated with the scale of n = 1.
double effective_n(int n) { return std::max(n, 1); }

}  // namespace

AsymptoticPrediction predict_delta(int n, const Channel& ch, double alpha) {
  validate(ch);
  require_index(n);
  if (alpha == 0.0) throw ZeroCoupling("delta-type prediction needs alpha != 0");
  const double r = ch.radius;
  const double phase = alpha > 0.0 ? 1.5 * kPi : 0.5 * kPi;
  const double re = (2.0 * n * kPi + ch.l * kPi + phase) / (2.0 * r);
  const double im = -std::log(2.0 * std::abs(re) / std::abs(alpha)) / (2.0 * r);
  const double m = effective_n(n);
  return {n, cplx{re, im}, PredictionOrder::Leading, std::max(std::log(m), 1.0) / m};
}

AsymptoticPrediction predict_intermediate(int n, const Channel& ch, cplx gamma) {
  validate(ch);
  require_index(n);
  const double x = gamma.real();
  if (x == 0.0) throw NotIntermediate("intermediate prediction needs Re gamma != 0");
  const double r = ch.radius;
  const double phase = x > 0.0 ? 0.5 * kPi : 1.5 * kPi;
  const double re = (kPi * n + 0.5 * kPi * ch.l + phase) / r;
  const double im = -std::log((1.0 + 0.25 * std::norm(gamma)) / std::abs(x)) / (2.0 * r);
  return {n, cplx{re, im}, PredictionOrder::Leading, 1.0 / effective_n(n)};
}

AsymptoticPrediction predict_delta_prime(int n, const Channel& ch, const GpiParams& p) {
  validate(ch);
  require_index(n);
  if (p.beta == 0.0) throw NotDeltaPrime("delta-prime prediction needs beta != 0");
  const double r = ch.radius;
  const double l = ch.l;
  const double x = p.gamma.real();
  const double s = p.coupling_square();
  const double k0 = kPi * n / r + kPi * (l + 1.0) / (2.0 * r);

  const double re_shift = ((l * l + l) / (2.0 * r * r) + (x - 1.0 - 0.25 * s) / (p.beta * r)) / k0;
  const double bracket = 1.0 + 0.5 * std::norm(p.gamma) - x * x - 0.5 * p.alpha * p.beta + s * s / 16.0;
  const double width = p.beta * r * k0;
  const double m = effective_n(n);
  return {n, cplx{k0 - re_shift, -bracket / (width * width)}, PredictionOrder::NextOrder, 1.0 / (m * m * m)};
}

std::optional<AsymptoticPrediction> predict(const GpiParams& p, const Channel& ch, int n) {
  if (is_separated(p)) throw Separated("separated interaction has embedded eigenvalues, not resonances");
  switch (classify(p)) {
    case GpiClass::Delta: {
      const GpiParams q = canonical_real_gamma(p);
      if (q.alpha == 0.0) return std::nullopt;
      return predict_delta(n, ch, q.alpha);
    }
    case GpiClass::Intermediate:
      return predict_intermediate(n, ch, p.gamma);
    case GpiClass::DeltaPrime:
      return predict_delta_prime(n, ch, p);
  }
  return std::nullopt;
}

std::vector<ComparisonRow> compare(const std::vector<Resonance>& poles, const GpiParams& p, const Channel& ch) {
  std::vector<ComparisonRow> rows;
  rows.reserve(poles.size());
  for (const Resonance& pole : poles) {
    const auto pred = predict(p, ch, pole.index);
    if (!pred) continue;
    const double err = std::abs(pole.k - pred->k_pred);
    rows.push_back({pole.index, pole.k, pred->k_pred, err, err / pred->error_scale});
  }
  return rows;
}

}  // namespace winter
