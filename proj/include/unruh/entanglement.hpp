#pragma once

#include "unruh/core.hpp"
#include "unruh/linalg.hpp"
#include "unruh/rindler.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace unruh {

/// Region-I reduced density matrix of Psi or Phi, by coefficient.
///
/// Populations are indexed by the |A_I B_I> basis state. `coherence` is
/// <01|rho|10> for Psi and <00|rho|11> for Phi; no other off-diagonal entry
/// is nonzero. For Psi, p00 is always zero.
///
///   Psi: p01 = |a|^2 cos^2 ua, p10 = |b|^2 cos^2 ub,
///        p11 = |a|^2 sin^2 ua + |b|^2 sin^2 ub, coherence = a b* cos ua cos ub
///   Phi: p00 = |a|^2 cos^2 ua cos^2 ub, p01 = |a|^2 cos^2 ua sin^2 ub,
///        p10 = |a|^2 sin^2 ua cos^2 ub, p11 = |a|^2 sin^2 ua sin^2 ub + |b|^2,
///        coherence = a b* cos ua cos ub
template <typename Scalar = double>
struct ReducedCoefficients {
  TwoModeFamily family;
  Scalar p00 = 0;
  Scalar p01 = 0;
  Scalar p10 = 0;
  Scalar p11 = 0;
  Complex<Scalar> coherence{};
};

template <typename Scalar>
ReducedCoefficients<Scalar> reduced_coefficients(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta,
                                                 AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  require_normalized(alpha, beta, "reduced_coefficients");
  const Scalar ca = u_a.cos(), sa = u_a.sin(), cb = u_b.cos(), sb = u_b.sin();
  const Scalar a2 = std::norm(alpha), b2 = std::norm(beta);
  ReducedCoefficients<Scalar> c{family};
  c.coherence = alpha * std::conj(beta) * ca * cb;
  if (family == TwoModeFamily::Psi) {
    c.p01 = a2 * ca * ca;
    c.p10 = b2 * cb * cb;
    c.p11 = a2 * sa * sa + b2 * sb * sb;
  } else {
    c.p00 = a2 * ca * ca * cb * cb;
    c.p01 = a2 * ca * ca * sb * sb;
    c.p10 = a2 * sa * sa * cb * cb;
    c.p11 = a2 * sa * sa * sb * sb + b2;
  }
  return c;
}

/// Assembles the 4x4 matrix on [A_I, B_I] from the coefficients.
template <typename Scalar>
DensityMatrix<Scalar> assemble(const ReducedCoefficients<Scalar>& c) {
  ModeLayout layout{"A_I", "B_I"};
  ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(4, 4);
  m(0, 0) = c.p00;
  m(1, 1) = c.p01;
  m(2, 2) = c.p10;
  m(3, 3) = c.p11;
  const Eigen::Index lo = c.family == TwoModeFamily::Psi ? 1 : 0;
  const Eigen::Index hi = c.family == TwoModeFamily::Psi ? 2 : 3;
  m(lo, hi) = c.coherence;
  m(hi, lo) = std::conj(c.coherence);
  return DensityMatrix<Scalar>(std::move(layout), std::move(m));
}

/// Closed-form region-I reduced density matrix.
template <typename Scalar>
DensityMatrix<Scalar> reduced_rho(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta,
                                  AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  return assemble(reduced_coefficients(family, alpha, beta, u_a, u_b));
}

/// Same matrix obtained by tracing region II out of the Rindler expansion.
template <typename Scalar>
DensityMatrix<Scalar> reduced_rho_traced(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta,
                                         AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  return partial_trace(expand_two_mode(family, alpha, beta, u_a, u_b), {"A_I", "B_I"});
}

inline constexpr double kNegativityClamp = 1e-12;

/// N = ||rho^T|| - 1 with the partial transpose taken over `subsystem`.
template <typename Scalar>
Scalar negativity(const DensityMatrix<Scalar>& rho, const std::vector<std::string>& subsystem = {"B_I"}) {
  const Scalar trace = rho.matrix.trace().real();
  if (std::abs(trace - Scalar(1)) > Scalar(1e-10)) {
    throw PreconditionError("negativity: density matrix trace " + std::to_string(static_cast<double>(trace)) +
                            " is not 1");
  }
  const Scalar n = trace_norm(partial_transpose(rho, subsystem)) - Scalar(1);
  if (n < Scalar(0)) {
    if (n >= -Scalar(kNegativityClamp)) return Scalar(0);
    throw NumericalError("negativity: trace norm below trace");
  }
  return n;
}

namespace detail {

template <typename Scalar>
Scalar magnitude_from_square(Scalar lambda_sq) {
  if (lambda_sq < Scalar(0)) {
    if (lambda_sq >= -Scalar(kNegativityClamp)) return Scalar(0);
    throw NumericalError("negativity_closed_form: negative squared eigenvalue " +
                         std::to_string(static_cast<double>(lambda_sq)));
  }
  return std::sqrt(lambda_sq);
}

}  // namespace detail

/// Squared magnitudes of the four partial-transpose eigenvalues.
template <typename Scalar>
std::array<Scalar, 4> squared_eigenvalues(const ReducedCoefficients<Scalar>& c) {
  const Scalar j2 = std::norm(c.coherence);
  if (c.family == TwoModeFamily::Psi) {
    const Scalar h = c.p11;
    const Scalar root = h * std::sqrt(h * h + Scalar(4) * j2);
    return {c.p01 * c.p01, c.p10 * c.p10, (Scalar(2) * j2 + h * h + root) / Scalar(2),
            (Scalar(2) * j2 + h * h - root) / Scalar(2)};
  }
  const Scalar g = c.p01, h = c.p10;
  const Scalar diff = g * g - h * h;
  const Scalar root = std::sqrt(diff * diff + Scalar(4) * (g + h) * (g + h) * j2);
  const Scalar base = g * g + h * h + Scalar(2) * j2;
  return {c.p00 * c.p00, c.p11 * c.p11, (base + root) / Scalar(2), (base - root) / Scalar(2)};
}

/// Negativity from the closed-form eigenvalue list: sum of |lambda_i| minus one.
template <typename Scalar>
Scalar negativity_closed_form(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta,
                              AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  const auto squares = squared_eigenvalues(reduced_coefficients(family, alpha, beta, u_a, u_b));
  Scalar sum = 0;
  for (Scalar s : squares) sum += detail::magnitude_from_square(s);
  const Scalar n = sum - Scalar(1);
  if (n < Scalar(0) && n >= -Scalar(kNegativityClamp)) return Scalar(0);
  return n;
}

enum class NegativityLimit {
  BobInfinite,   ///< u_a = 0, u_b = pi/4
  BothInfinite,  ///< u_a = u_b = pi/4
};

template <typename Scalar>
std::pair<AccelMeasure<Scalar>, AccelMeasure<Scalar>> limit_point(NegativityLimit limit) {
  const auto a = limit == NegativityLimit::BobInfinite ? AccelMeasure<Scalar>::inertial() : AccelMeasure<Scalar>::infinite();
  return {a, AccelMeasure<Scalar>::infinite()};
}

/// Limiting negativities in closed form.
template <typename Scalar>
Scalar negativity_limit(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta, NegativityLimit limit) {
  require_normalized(alpha, beta, "negativity_limit");
  const Scalar a = std::norm(alpha), b = std::norm(beta);
  const Scalar half = Scalar(0.5);
  Scalar n;
  if (family == TwoModeFamily::Psi) {
    n = limit == NegativityLimit::BobInfinite
            ? a + half * b + half * std::sqrt(Scalar(8) * a * b + b * b) - Scalar(1)
            : (std::sqrt(Scalar(1) + Scalar(4) * a * b) - Scalar(1)) / Scalar(2);
  } else {
    if (limit == NegativityLimit::BobInfinite) {
      n = half * a + b + half * std::sqrt(a * a + Scalar(8) * a * b) - Scalar(1);
    } else {
      const Scalar x = half * a * a, y = Scalar(2) * a * b;
      n = half * a + b + half * std::sqrt(x + y + std::abs(x - y)) - Scalar(1);
    }
  }
  if (n < Scalar(0) && n >= -Scalar(kNegativityClamp)) return Scalar(0);
  return n;
}

}  // namespace unruh
