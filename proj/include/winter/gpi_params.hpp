#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace winter {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

// Coupling data of a spherical generalized point interaction.
// alpha has dimension 1/length, beta has dimension length, gamma is dimensionless.
struct GpiParams {
  double alpha = 0.0;
  double beta = 0.0;
  cplx gamma{0.0, 0.0};

  // alpha*beta + |gamma|^2, the combination that appears everywhere.
  [[nodiscard]] double coupling_square() const {
    return alpha * beta + std::norm(gamma);
  }

  friend bool operator==(const GpiParams&, const GpiParams&) = default;
};

enum class GpiClass { Delta, Intermediate, DeltaPrime };

std::string_view to_string(GpiClass c);

// U = e^{i xi} [[u1, u2], [-conj(u2), conj(u1)]], xi in [0, pi).
struct UnitaryForm {
  double xi = 0.0;
  cplx u1{0.0, 0.0};
  cplx u2{0.0, 0.0};

  [[nodiscard]] Mat2 matrix() const;
};

// Lambda = e^{i chi} [[a, b], [c, d]], chi in [0, pi), ad - bc = 1.
struct TransferForm {
  double chi = 0.0;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  [[nodiscard]] Mat2 matrix() const;
};

// One-sided values f(R+), f(R-) and derivatives f'(R+), f'(R-) at the sphere.
struct BoundaryData {
  cplx f_plus;
  cplx f_minus;
  cplx fp_plus;
  cplx fp_minus;
};

inline constexpr double kSeparationTolerance = 1e-12;
inline constexpr double kUnitaryZeroTolerance = 1e-10;

// Exact comparisons on the stored values; no epsilon.
GpiClass classify(const GpiParams& p);

// alpha*beta + |gamma|^2 = 4 and Im gamma = 0, both to kSeparationTolerance.
bool is_separated(const GpiParams& p);

UnitaryForm to_unitary(const GpiParams& p);

// Throws SeparatedInteraction when the transfer matrix does not exist.
TransferForm to_transfer(const GpiParams& p);

GpiClass classify_unitary(const UnitaryForm& u);

// Unitarily equivalent parameters with Im gamma = 0.
GpiParams canonical_real_gamma(const GpiParams& p);

// Scale-invariant coupling: alpha = beta = 0 and
// gamma = (h - 1/h + 2i sin phi) / (h + 1/h + 2 cos phi).
GpiParams from_scale_invariant(double h, double phi);

// Norm of the defect of the respective boundary condition on `data`.
// The unitary form uses outward normal derivatives F' = (f'(R+), -f'(R-)).
double boundary_residual(const GpiParams& p, const BoundaryData& data);
double boundary_residual(const UnitaryForm& u, const BoundaryData& data);
double boundary_residual(const TransferForm& t, const BoundaryData& data);

}  // namespace winter
