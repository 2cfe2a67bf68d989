#pragma once

#include "unruh/core.hpp"
#include "unruh/linalg.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace unruh {

/// Acceleration measure u in [0, pi/4]; 0 is inertial, pi/4 is infinite acceleration.
template <typename Scalar = double>
class AccelMeasure {
 public:
  explicit AccelMeasure(Scalar u) : u_(u) {
    if (!(u >= Scalar(0) && u <= quarter_pi<Scalar>)) {
      throw ArgumentError("acceleration measure u=" + std::to_string(static_cast<double>(u)) +
                          " outside [0, pi/4]");
    }
  }

  static AccelMeasure inertial() { return AccelMeasure(Scalar(0)); }
  static AccelMeasure infinite() { return AccelMeasure(quarter_pi<Scalar>); }

  Scalar value() const { return u_; }
  Scalar cos() const { return std::cos(u_); }
  Scalar sin() const { return std::sin(u_); }

  friend bool operator==(const AccelMeasure&, const AccelMeasure&) = default;

 private:
  Scalar u_;
};

/// Dimensionless omega / a. Zero encodes infinite acceleration; +inf is inertial.
template <typename Scalar = double>
class FrequencyRatio {
 public:
  explicit FrequencyRatio(Scalar x) : x_(x) {
    if (!(x >= Scalar(0))) throw ArgumentError("frequency ratio must be nonnegative");
  }
  Scalar value() const { return x_; }

 private:
  Scalar x_;
};

/// cos u = (exp(-2 pi x) + 1)^(-1/2), evaluated as u = atan(exp(-pi x)).
template <typename Scalar>
AccelMeasure<Scalar> u_from_ratio(FrequencyRatio<Scalar> ratio) {
  if (ratio.value() == Scalar(0)) return AccelMeasure<Scalar>::infinite();
  const Scalar u = std::atan(std::exp(-std::numbers::pi_v<Scalar> * ratio.value()));
  return AccelMeasure<Scalar>(std::min(u, quarter_pi<Scalar>));
}

template <typename Scalar>
FrequencyRatio<Scalar> ratio_from_u(AccelMeasure<Scalar> u) {
  if (u.value() == Scalar(0)) return FrequencyRatio<Scalar>(std::numeric_limits<Scalar>::infinity());
  return FrequencyRatio<Scalar>(std::max(Scalar(0), -std::log(std::tan(u.value())) / std::numbers::pi_v<Scalar>));
}

/// Rindler expansion of a single Minkowski mode in occupation n (0 or 1),
/// over the modes [<name>_I, <name>_II]:
///   |0> -> cos u |0>_I |0>_II + sin u |1>_I |1>_II,   |1> -> |1>_I |0>_II.
/// The Bogoliubov phase is fixed to zero.
template <typename Scalar>
Ket<Scalar> expand_mode(int occupation, AccelMeasure<Scalar> u, const std::string& name) {
  ModeLayout layout{name.empty() ? std::string("I") : name + "_I", name.empty() ? std::string("II") : name + "_II"};
  Ket<Scalar> ket = Ket<Scalar>::zero(std::move(layout));
  if (occupation == 0) {
    ket["00"] = u.cos();
    ket["11"] = u.sin();
  } else if (occupation == 1) {
    ket["10"] = Scalar(1);
  } else {
    throw ArgumentError("expand_mode: occupation must be 0 or 1");
  }
  return ket;
}

template <typename Scalar>
Ket<Scalar> expand_vacuum(AccelMeasure<Scalar> u) {
  return expand_mode(0, u, "");
}

template <typename Scalar>
Ket<Scalar> expand_one_particle(AccelMeasure<Scalar> u) {
  return expand_mode(1, u, "");
}

/// Expands every mode of a Minkowski ket with its own acceleration. Mode M
/// becomes M_I and M_II; the output layout is [M1_I, ..., Mk_I, M1_II, ..., Mk_II].
template <typename Scalar>
Ket<Scalar> expand_to_rindler(const Ket<Scalar>& minkowski, std::span<const AccelMeasure<Scalar>> accel) {
  const auto& modes = minkowski.layout.labels();
  if (accel.size() != modes.size()) throw ArgumentError("expand_to_rindler: one acceleration per mode required");

  std::vector<std::string> region_one, region_two;
  for (const auto& m : modes) {
    region_one.push_back(m + "_I");
    region_two.push_back(m + "_II");
  }
  std::vector<std::string> order = region_one;
  order.insert(order.end(), region_two.begin(), region_two.end());
  const ModeLayout target(order);

  Ket<Scalar> out = Ket<Scalar>::zero(target);
  for (const auto& [index, amp] : minkowski.terms()) {
    const std::string occ = minkowski.layout.occupations(index);
    Ket<Scalar> product = expand_mode(occ[0] - '0', accel[0], modes[0]);
    for (std::size_t k = 1; k < modes.size(); ++k) {
      product = kron(product, expand_mode(occ[k] - '0', accel[k], modes[k]));
    }
    out.amplitudes += amp * permute_modes(product, target).amplitudes;
  }
  return out;
}

enum class TwoModeFamily { Psi, Phi };

inline const char* to_string(TwoModeFamily f) { return f == TwoModeFamily::Psi ? "psi" : "phi"; }

template <typename Scalar>
void require_normalized(Complex<Scalar> a, Complex<Scalar> b, const char* what) {
  const Scalar n = std::norm(a) + std::norm(b);
  if (std::abs(n - Scalar(1)) > Scalar(1e-12)) {
    throw ArgumentError(std::string(what) + ": coefficients not normalized (|a|^2+|b|^2=" +
                        std::to_string(static_cast<double>(n)) + ")");
  }
}

/// Minkowski state over [A, B]: Psi = a|01> + b|10>, Phi = a|00> + b|11>.
template <typename Scalar>
Ket<Scalar> minkowski_two_mode(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta) {
  Ket<Scalar> ket = Ket<Scalar>::zero(ModeLayout{"A", "B"});
  if (family == TwoModeFamily::Psi) {
    ket["01"] = alpha;
    ket["10"] = beta;
  } else {
    ket["00"] = alpha;
    ket["11"] = beta;
  }
  return ket;
}

/// Rindler form of Psi or Phi over [A_I, B_I, A_II, B_II], term by term.
template <typename Scalar>
Ket<Scalar> expand_two_mode(TwoModeFamily family, Complex<Scalar> alpha, Complex<Scalar> beta,
                            AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  require_normalized(alpha, beta, "expand_two_mode");
  const Scalar ca = u_a.cos(), sa = u_a.sin(), cb = u_b.cos(), sb = u_b.sin();
  Ket<Scalar> ket = Ket<Scalar>::zero(two_mode_layout());
  if (family == TwoModeFamily::Psi) {
    ket["0100"] = alpha * ca;
    ket["1110"] = alpha * sa;
    ket["1000"] = beta * cb;
    ket["1101"] = beta * sb;
  } else {
    ket["0000"] = alpha * ca * cb;
    ket["0101"] = alpha * ca * sb;
    ket["1010"] = alpha * sa * cb;
    ket["1111"] = alpha * sa * sb;
    ket["1100"] = beta;
  }
  return ket;
}

}  // namespace unruh
