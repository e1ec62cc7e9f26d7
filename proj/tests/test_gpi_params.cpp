#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "winter/error.hpp"
#include "winter/gpi_params.hpp"

using namespace winter;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double unitary_norm(const UnitaryForm& u) { return std::norm(u.u1) + std::norm(u.u2); }

}  // namespace

TEST_CASE("classify follows the (Re gamma, beta) trichotomy") {
  CHECK(classify({50.0, 0.0, 0.0}) == GpiClass::Delta);
  CHECK(classify({0.0, 0.0, {1.0, 1.0}}) == GpiClass::Intermediate);
  CHECK(classify({0.0, 0.01, 0.0}) == GpiClass::DeltaPrime);
  CHECK(classify({0.0, 0.0, {0.0, 2.0}}) == GpiClass::Delta);
  // exact comparisons: a denormal real part already counts
  CHECK(classify({0.0, 0.0, {1e-300, 0.0}}) == GpiClass::Intermediate);
  CHECK(classify({0.0, -1e-300, 0.0}) == GpiClass::DeltaPrime);
}

TEST_CASE("class names") {
  CHECK(to_string(GpiClass::Delta) == "delta");
  CHECK(to_string(GpiClass::Intermediate) == "intermediate");
  CHECK(to_string(GpiClass::DeltaPrime) == "delta-prime");
}

TEST_CASE("separated locus") {
  CHECK(is_separated({4.0, 1.0, 0.0}));
  CHECK(is_separated({0.0, 0.0, 2.0}));
  CHECK_FALSE(is_separated({50.0, 0.0, 0.0}));
  CHECK_FALSE(is_separated({0.0, 0.0, {0.0, 2.0}}));
  CHECK(is_separated({0.0, 0.0, {2.0 + 1e-14, 0.0}}));
  CHECK_FALSE(is_separated({0.0, 0.0, {2.0, 1e-9}}));
}

TEST_CASE("unitary form of the free interaction") {
  const UnitaryForm u = to_unitary({0.0, 0.0, 0.0});
  CHECK(u.xi == Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(std::abs(u.u1) < 1e-15);
  CHECK(std::abs(u.u2) == Approx(1.0).epsilon(1e-15));
  const BoundaryData continuous{1.0, 1.0, 0.0, 0.0};
  CHECK(boundary_residual(u, continuous) < 1e-15);
  const BoundaryData slope{0.0, 0.0, 1.0, 1.0};
  CHECK(boundary_residual(u, slope) < 1e-15);
}

TEST_CASE("unitary form: delta coupling satisfies the oracle") {
  const GpiParams p{50.0, 0.0, 0.0};
  const UnitaryForm u = to_unitary(p);
  const auto [f, g] = oracle::boundary_basis(p);
  CHECK(boundary_residual(u, f) < 1e-10);
  CHECK(boundary_residual(u, g) < 1e-10);
  CHECK(u.u1.imag() == Approx(0.0));
  CHECK(u.u1.real() * u.u1.real() == Approx(4.0 * 2500.0 / (4.0 * 2500.0 + 16.0)).epsilon(1e-12));
}

TEST_CASE("real gamma gives a purely imaginary u2") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    GpiParams p = oracle::random_params(rng);
    p.gamma = p.gamma.real();
    const UnitaryForm u = to_unitary(p);
    CHECK(std::abs(u.u2.real()) < 1e-14);
  }
}

TEST_CASE("unitary invariants on random parameters") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const GpiParams p = oracle::random_params(rng);
    const UnitaryForm u = to_unitary(p);
    CAPTURE(p.alpha);
    CAPTURE(p.beta);
    CHECK(std::abs(unitary_norm(u) - 1.0) < 1e-12);
    CHECK(u.xi >= 0.0);
    CHECK(u.xi < kPi);
    CHECK(classify_unitary(u) == classify(p));
    const auto [f, g] = oracle::boundary_basis(p);
    CHECK(boundary_residual(u, f) < 1e-10);
    CHECK(boundary_residual(u, g) < 1e-10);
    if (!is_separated(p)) {
      const TransferForm t = to_transfer(p);
      CHECK(std::abs(t.a * t.d - t.b * t.c - 1.0) < 1e-12);
      CHECK(boundary_residual(t, f) < 1e-10);
      CHECK(boundary_residual(t, g) < 1e-10);
    }
  }
}

TEST_CASE("classify_unitary on the three figure parameter sets") {
  CHECK(classify_unitary(to_unitary({50.0, 0.0, 0.0})) == GpiClass::Delta);
  CHECK(classify_unitary(to_unitary({0.0, 0.0, {1.0, 1.0}})) == GpiClass::Intermediate);
  CHECK(classify_unitary(to_unitary({0.0, 0.01, 0.0})) == GpiClass::DeltaPrime);
  CHECK(classify_unitary(to_unitary({0.0, 0.0, {0.0, 2.0}})) == GpiClass::Delta);
}

TEST_CASE("transfer form") {
  SUBCASE("free interaction is the identity") {
    const TransferForm t = to_transfer({0.0, 0.0, 0.0});
    CHECK(t.chi == 0.0);
    CHECK(t.a == Approx(1.0));
    CHECK(t.d == Approx(1.0));
    CHECK(t.b == 0.0);
    CHECK(t.c == 0.0);
    CHECK(boundary_residual(t, BoundaryData{1.0, 1.0, 0.5, 0.5}) < 1e-15);
  }
  SUBCASE("separated interaction has none") {
    CHECK_THROWS_AS(to_transfer({4.0, 1.0, 0.0}), SeparatedInteraction);
    CHECK_THROWS_AS(to_transfer({0.0, 0.0, 2.0}), SeparatedInteraction);
  }
  SUBCASE("imaginary gamma gives a diagonal matrix") {
    const TransferForm t = to_transfer({0.0, 0.0, {0.0, 2.0}});
    CHECK(t.b == 0.0);
    CHECK(t.c == 0.0);
    CHECK(t.a * t.d == Approx(1.0).epsilon(1e-12));
    CHECK(t.chi >= 0.0);
    CHECK(t.chi < kPi);
  }
  SUBCASE("delta jump") {
    const TransferForm t = to_transfer({3.0, 0.0, 0.0});
    CHECK(boundary_residual(t, BoundaryData{1.0, 1.0, 3.5, 0.5}) < 1e-15);
  }
}

TEST_CASE("real-gamma representative") {
  const GpiParams q = canonical_real_gamma({50.0, 0.0, {0.0, 2.0}});
  CHECK(q.alpha == Approx(25.0).epsilon(1e-14));
  CHECK(q.beta == Approx(0.0));
  CHECK(q.gamma == cplx{0.0, 0.0});

  const GpiParams real{1.5, -0.25, 0.75};
  CHECK(canonical_real_gamma(real) == real);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const GpiParams p = oracle::random_params(rng);
    if (is_separated(p)) continue;
    const GpiParams r = canonical_real_gamma(p);
    CHECK(r.gamma.imag() == 0.0);
    CHECK(std::abs(std::abs(to_unitary(r).u2) - std::abs(to_unitary(p).u2)) < 1e-12);
  }
}

TEST_CASE("scale-invariant coupling") {
  const GpiParams free = from_scale_invariant(1.0, 0.0);
  CHECK(std::abs(free.gamma) < 1e-16);
  CHECK(from_scale_invariant(2.0, 0.0).gamma.real() == Approx(1.0 / 3.0).epsilon(1e-15));
  const GpiParams imag = from_scale_invariant(1.0, kPi / 2.0);
  CHECK(imag.gamma.real() == Approx(0.0));
  CHECK(imag.gamma.imag() == Approx(1.0).epsilon(1e-15));
  CHECK(classify(GpiParams{0.0, 0.0, {0.0, imag.gamma.imag()}}) == GpiClass::Delta);
  CHECK_THROWS_AS(from_scale_invariant(1.0, kPi), DegenerateDenominator);
  CHECK_THROWS_AS(from_scale_invariant(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(from_scale_invariant(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("boundary residual of the coupling form") {
  CHECK(boundary_residual(GpiParams{}, BoundaryData{1.0, 1.0, 0.0, 0.0}) == 0.0);
  CHECK(boundary_residual(GpiParams{7.0, 0.0, 0.0}, BoundaryData{1.0, 1.0, 7.0, 0.0}) == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const GpiParams p = oracle::random_params(rng);
    const auto [f, g] = oracle::boundary_basis(p);
    CHECK(boundary_residual(p, f) < 1e-12);
    CHECK(boundary_residual(p, g) < 1e-12);
    BoundaryData bad = f;
    bad.f_plus += cplx{0.1 + std::abs(u(rng)), u(rng)};
    CHECK(boundary_residual(p, bad) > 0.0);
    CHECK(boundary_residual(to_unitary(p), bad) > 1e-6);
  }
}
