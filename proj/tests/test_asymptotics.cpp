#include <cmath>
#include <numbers>

#include "doctest.h"
#include "winter/asymptotics.hpp"
#include "winter/error.hpp"

using namespace winter;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const Channel kUnit{0, 1.0};
const GpiParams kDelta{50.0, 0.0, 0.0};
const GpiParams kIntermediate{0.0, 0.0, {1.0, 1.0}};
const GpiParams kDeltaPrimeFig{0.0, 0.01, 0.0};

}  // namespace

TEST_CASE("delta predictor") {
  const auto a = predict_delta(10, kUnit, 50.0);
  CHECK(a.k_pred.real() == Approx(33.7721).epsilon(1e-5));
  CHECK(a.k_pred.imag() == Approx(-0.15048).epsilon(1e-4));
  CHECK(a.order == PredictionOrder::Leading);
  CHECK(a.error_scale == Approx(std::log(10.0) / 10.0));

  const auto neg = predict_delta(10, kUnit, -50.0);
  CHECK(neg.k_pred.real() == Approx(10.0 * kPi + 0.25 * kPi));
  CHECK(neg.k_pred.imag() == Approx(-0.5 * std::log(2.0 * neg.k_pred.real() / 50.0)));

  for (int n = 1; n < 60; ++n) {
    CHECK(predict_delta(n + 1, kUnit, 50.0).k_pred.real() - predict_delta(n, kUnit, 50.0).k_pred.real() ==
          Approx(kPi).epsilon(1e-14));
  }
  CHECK(predict_delta(3, Channel{0, 2.0}, 5.0).k_pred.real() - predict_delta(2, Channel{0, 2.0}, 5.0).k_pred.real() ==
        Approx(kPi / 2.0));
  CHECK_THROWS_AS(predict_delta(3, kUnit, 0.0), ZeroCoupling);
  CHECK_THROWS_AS(predict_delta(-1, kUnit, 1.0), std::invalid_argument);
}

TEST_CASE("intermediate predictor") {
  const auto a = predict_intermediate(10, kUnit, {1.0, 1.0});
  CHECK(a.k_pred.real() == Approx(10.5 * kPi));
  CHECK(a.k_pred.imag() == Approx(-0.5 * std::log(1.5)));
  CHECK(a.error_scale == Approx(0.1));

  const auto edge = predict_intermediate(4, kUnit, 2.0);
  CHECK(std::abs(edge.k_pred.imag()) < 1e-16);
  CHECK(is_separated({0.0, 0.0, 2.0}));

  const auto lower = predict_intermediate(10, kUnit, -1.0);
  CHECK(lower.k_pred.real() == Approx(11.5 * kPi));
  CHECK(lower.k_pred.imag() == Approx(-0.5 * std::log(1.25)));

  for (int n = 1; n < 40; ++n) {
    CHECK(predict_intermediate(n + 1, kUnit, {1.0, 1.0}).k_pred.real() -
              predict_intermediate(n, kUnit, {1.0, 1.0}).k_pred.real() ==
          Approx(kPi));
  }
  CHECK_THROWS_AS(predict_intermediate(1, kUnit, {0.0, 1.0}), NotIntermediate);
}

TEST_CASE("delta-prime predictor") {
  const GpiParams p{0.0, 0.1, 0.0};
  const auto a = predict_delta_prime(50, kUnit, p);
  const double k0 = 50.5 * kPi;
  CHECK(k0 == Approx(158.6503).epsilon(1e-6));
  CHECK(a.k_pred.real() - k0 == Approx(10.0 / k0).epsilon(1e-12));
  CHECK(a.k_pred.imag() == Approx(-1.0 / (0.01 * k0 * k0)).epsilon(1e-12));
  CHECK(a.k_pred.imag() == Approx(-3.973e-3).epsilon(1e-3));
  CHECK(a.order == PredictionOrder::NextOrder);
  CHECK(a.error_scale == Approx(1.0 / 125000.0));

  const auto l2 = predict_delta_prime(7, Channel{2, 1.0}, GpiParams{0.0, 1e300, 0.0});
  const double k0l = 7.0 * kPi + 1.5 * kPi;
  CHECK(l2.k_pred.real() - k0l == Approx(-3.0 / k0l).epsilon(1e-12));

  const auto n1 = predict_delta_prime(1, kUnit, p);
  const auto n2 = predict_delta_prime(2, kUnit, p);
  const double ratio = (1.5 * kPi) / (2.5 * kPi);
  CHECK(n2.k_pred.imag() / n1.k_pred.imag() == Approx(ratio * ratio).epsilon(1e-14));

  // spacing is pi/R up to the O(1/k0^2) change of the correction
  for (int n = 1; n < 60; ++n) {
    const double k0n = (n + 0.5) * kPi;
    const double gap = predict_delta_prime(n + 1, kUnit, p).k_pred.real() - predict_delta_prime(n, kUnit, p).k_pred.real();
    CHECK(std::abs(gap - kPi) < 40.0 / (k0n * k0n));
  }
  CHECK_THROWS_AS(predict_delta_prime(3, kUnit, GpiParams{1.0, 0.0, 0.0}), NotDeltaPrime);
}

TEST_CASE("class dispatch") {
  CHECK(predict(kDelta, kUnit, 10)->k_pred == predict_delta(10, kUnit, 50.0).k_pred);
  CHECK(predict(kDeltaPrimeFig, kUnit, 10)->k_pred == predict_delta_prime(10, kUnit, kDeltaPrimeFig).k_pred);
  CHECK(predict(kIntermediate, kUnit, 10)->k_pred == predict_intermediate(10, kUnit, {1.0, 1.0}).k_pred);
  CHECK_FALSE(predict({0.0, 0.0, {0.0, 2.0}}, kUnit, 10).has_value());
  CHECK_FALSE(predict(GpiParams{}, kUnit, 10).has_value());
  const auto reduced = predict({50.0, 0.0, {0.0, 2.0}}, kUnit, 10);
  REQUIRE(reduced.has_value());
  CHECK(reduced->k_pred == predict_delta(10, kUnit, 25.0).k_pred);
  CHECK_THROWS_AS(predict({0.0, 0.0, 2.0}, kUnit, 10), Separated);
  CHECK_THROWS_AS(predict({4.0, 1.0, 0.0}, kUnit, 10), Separated);
}

TEST_CASE("sign of the imaginary part on the figure parameters") {
  for (int n = 1; n <= 200; ++n) {
    const auto d = predict(kDelta, kUnit, n);
    if (2.0 * d->k_pred.real() > 50.0) CHECK(d->k_pred.imag() < 0.0);
    CHECK(predict(kIntermediate, kUnit, n)->k_pred.imag() < 0.0);
    CHECK(predict(kDeltaPrimeFig, kUnit, n)->k_pred.imag() < 0.0);
    CHECK(predict(GpiParams{0.0, 0.1, 0.0}, kUnit, n)->k_pred.imag() < 0.0);
  }
}

TEST_CASE("class ordering at n = 100") {
  const double d = std::abs(predict(kDelta, kUnit, 100)->k_pred.imag());
  const double i = std::abs(predict(kIntermediate, kUnit, 100)->k_pred.imag());
  const double p = std::abs(predict(kDeltaPrimeFig, kUnit, 100)->k_pred.imag());
  CHECK(p < i);
  CHECK(i < d);
  // growth, constancy, decay
  CHECK(std::abs(predict(kDelta, kUnit, 200)->k_pred.imag()) > d);
  CHECK(std::abs(predict(kIntermediate, kUnit, 200)->k_pred.imag()) == Approx(i));
  CHECK(std::abs(predict(kDeltaPrimeFig, kUnit, 200)->k_pred.imag()) < p);
}

TEST_CASE("comparison rows") {
  CHECK(compare({}, kDelta, kUnit).empty());

  Resonance r;
  r.index = 10;
  r.k = {34.086033013394969, -0.26079405636194188};
  const auto rows = compare({r}, kDelta, kUnit);
  REQUIRE(rows.size() == 1);
  const auto pred = predict_delta(10, kUnit, 50.0);
  CHECK(rows[0].index == 10);
  CHECK(rows[0].k_found == r.k);
  CHECK(rows[0].k_pred == pred.k_pred);
  CHECK(rows[0].abs_err == Approx(std::abs(r.k - pred.k_pred)));
  CHECK(rows[0].scaled_err == Approx(rows[0].abs_err / pred.error_scale));
}
