#pragma once

#include "unruh/core.hpp"
#include "unruh/linalg.hpp"
#include "unruh/rindler.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace unruh {

/// Qubit to teleport, gamma|0> + delta|1>.
template <typename Scalar = double>
class QubitState {
 public:
  QubitState(Complex<Scalar> gamma, Complex<Scalar> delta) : gamma_(gamma), delta_(delta) {
    require_normalized(gamma, delta, "QubitState");
  }

  /// gamma = sin(theta), delta = cos(theta).
  static QubitState from_theta(Scalar theta) { return QubitState(std::sin(theta), std::cos(theta)); }

  Complex<Scalar> gamma() const { return gamma_; }
  Complex<Scalar> delta() const { return delta_; }
  Scalar gamma_sq() const { return std::norm(gamma_); }
  Scalar delta_sq() const { return std::norm(delta_); }

  ComplexVector<Scalar> vector() const {
    ComplexVector<Scalar> v(2);
    v << gamma_, delta_;
    return v;
  }

  /// The same state with gamma and delta exchanged.
  QubitState swapped() const { return QubitState(delta_, gamma_); }

 private:
  Complex<Scalar> gamma_;
  Complex<Scalar> delta_;
};

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellKind, 4> kBellKinds = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                                                       BellKind::PhiMinus};

inline TwoModeFamily family_of(BellKind k) {
  return (k == BellKind::PsiPlus || k == BellKind::PsiMinus) ? TwoModeFamily::Psi : TwoModeFamily::Phi;
}

inline bool is_plus(BellKind k) { return k == BellKind::PsiPlus || k == BellKind::PhiPlus; }

inline const char* to_string(BellKind k) {
  switch (k) {
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
  }
  return "?";
}

/// Bell vector on two modes in the |00>,|01>,|10>,|11> basis:
/// psi+- = (|01> +- |10>)/sqrt2, phi+- = (|00> +- |11>)/sqrt2.
template <typename Scalar>
ComplexVector<Scalar> bell_vector(BellKind k) {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  const Scalar sign = is_plus(k) ? Scalar(1) : Scalar(-1);
  ComplexVector<Scalar> v = ComplexVector<Scalar>::Zero(4);
  if (family_of(k) == TwoModeFamily::Psi) {
    v(1) = r;
    v(2) = sign * r;
  } else {
    v(0) = r;
    v(3) = sign * r;
  }
  return v;
}

/// |Q> (x) shared Bell state, with modes A and B expanded into Rindler modes.
/// Layout [Q, A_I, B_I, A_II, B_II].
template <typename Scalar>
Ket<Scalar> initial_state(const QubitState<Scalar>& q, BellKind shared, AccelMeasure<Scalar> u_a,
                          AccelMeasure<Scalar> u_b) {
  const Ket<Scalar> minkowski(ModeLayout{"A", "B"}, bell_vector<Scalar>(shared));
  const std::array<AccelMeasure<Scalar>, 2> accel{u_a, u_b};
  const Ket<Scalar> rindler = expand_to_rindler(minkowski, std::span<const AccelMeasure<Scalar>>(accel));
  const Ket<Scalar> qubit(ModeLayout{"Q"}, q.vector());
  return kron(qubit, rindler);
}

template <typename Scalar = double>
struct BellProjection {
  Scalar probability = 0;
  /// Renormalized post-measurement state; empty when the branch has probability zero.
  std::optional<Ket<Scalar>> post_state;
};

/// Projects modes (Q, A_I) onto a Bell vector.
template <typename Scalar>
BellProjection<Scalar> bell_project(const Ket<Scalar>& state, BellKind result) {
  const std::size_t mq = state.layout.mask("Q");
  const std::size_t ma = state.layout.mask("A_I");
  const ComplexVector<Scalar> bell = bell_vector<Scalar>(result);
  auto pair_index = [&](std::size_t x) { return ((x & mq) ? 2 : 0) + ((x & ma) ? 1 : 0); };
  auto with_pair = [&](std::size_t rest, int qa) { return rest | ((qa & 2) ? mq : 0) | ((qa & 1) ? ma : 0); };

  // Overlap with the Bell vector for each configuration of the remaining modes,
  // stored at the index whose (Q, A_I) bits are cleared.
  ComplexVector<Scalar> remainder = ComplexVector<Scalar>::Zero(state.amplitudes.size());
  for (std::size_t x = 0; x < state.layout.dimension(); ++x) {
    const std::size_t rest = x & ~(mq | ma);
    remainder(static_cast<Eigen::Index>(rest)) +=
        std::conj(bell(pair_index(x))) * state.amplitudes(static_cast<Eigen::Index>(x));
  }
  const Scalar probability = remainder.squaredNorm();
  BellProjection<Scalar> out;
  out.probability = probability;
  if (!(probability > Scalar(1e-30))) {
    out.probability = 0;
    return out;
  }

  Ket<Scalar> post = Ket<Scalar>::zero(state.layout);
  const Scalar scale = Scalar(1) / std::sqrt(probability);
  for (std::size_t rest = 0; rest < state.layout.dimension(); ++rest) {
    if (rest & (mq | ma)) continue;
    for (int qa = 0; qa < 4; ++qa) {
      post.amplitudes(static_cast<Eigen::Index>(with_pair(rest, qa))) =
          bell(qa) * remainder(static_cast<Eigen::Index>(rest)) * scale;
    }
  }
  out.post_state = std::move(post);
  return out;
}

/// Bob's state on B_I with every other mode traced out.
template <typename Scalar>
DensityMatrix<Scalar> bob_state(const Ket<Scalar>& post_state) {
  return partial_trace(post_state, {"B_I"});
}

/// Bob's correction U for a shared Bell state and Alice's result; Bob's
/// corrected state is U^dagger rho U.
template <typename Scalar = double>
ComplexMatrix<Scalar> corrective_unitary(BellKind shared, BellKind result) {
  const Scalar s = is_plus(shared) ? Scalar(1) : Scalar(-1);
  ComplexMatrix<Scalar> u = ComplexMatrix<Scalar>::Zero(2, 2);
  // diag(+-1, s) when the result "matches" the shared family, otherwise the
  // off-diagonal flip [[0, +-s], [1, 0]].
  const bool same_family = family_of(shared) == family_of(result);
  if (same_family) {
    u(0, 0) = is_plus(result) ? Scalar(1) : Scalar(-1);
    u(1, 1) = s;
  } else {
    u(0, 1) = is_plus(result) ? s : -s;
    u(1, 0) = Scalar(1);
  }
  return u;
}

/// <Q| U^dagger rho U |Q>.
template <typename Scalar>
Scalar fidelity(const QubitState<Scalar>& q, const ComplexMatrix<Scalar>& rho, const ComplexMatrix<Scalar>& u) {
  const ComplexVector<Scalar> v = u * q.vector();
  return (v.adjoint() * rho * v)(0, 0).real();
}

template <typename Scalar>
Scalar fidelity(const QubitState<Scalar>& q, const DensityMatrix<Scalar>& rho, const ComplexMatrix<Scalar>& u) {
  return fidelity(q, rho.matrix, u);
}

/// Which closed-form fidelity a branch follows: 1 and 2 for shared psi+-,
/// 3 and 4 for shared phi+-; odd classes are psi results, even are phi results.
enum class BranchClass { One = 1, Two = 2, Three = 3, Four = 4 };

inline BranchClass branch_class(BellKind shared, BellKind result) {
  const bool psi_result = family_of(result) == TwoModeFamily::Psi;
  if (family_of(shared) == TwoModeFamily::Psi) return psi_result ? BranchClass::One : BranchClass::Two;
  return psi_result ? BranchClass::Three : BranchClass::Four;
}

inline TwoModeFamily family_of(BranchClass c) {
  return (c == BranchClass::One || c == BranchClass::Two) ? TwoModeFamily::Psi : TwoModeFamily::Phi;
}

template <typename Scalar = double>
struct BranchProbabilities {
  Scalar psi_result;  ///< each of the psi+- outcomes
  Scalar phi_result;  ///< each of the phi+- outcomes
};

/// p1 = (|g|^2 + |g|^2 sin^2 ua + |d|^2 cos^2 ua)/4 and p2 with g, d exchanged;
/// the same for both shared families.
template <typename Scalar>
BranchProbabilities<Scalar> branch_probabilities(const QubitState<Scalar>& q, AccelMeasure<Scalar> u_a) {
  const Scalar g = q.gamma_sq(), d = q.delta_sq();
  const Scalar ca2 = u_a.cos() * u_a.cos(), sa2 = u_a.sin() * u_a.sin();
  return {(g + g * sa2 + d * ca2) / Scalar(4), (d + d * sa2 + g * ca2) / Scalar(4)};
}

/// Closed-form fidelity of one branch class.
template <typename Scalar>
Scalar fidelity_closed_form(TwoModeFamily shared_family, BranchClass cls, const QubitState<Scalar>& q,
                            AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  if (family_of(cls) != shared_family) {
    throw ArgumentError("fidelity_closed_form: branch class does not belong to the shared family");
  }
  const Scalar g = q.gamma_sq(), d = q.delta_sq();
  const Scalar ca = u_a.cos(), sa = u_a.sin(), cb = u_b.cos(), sb = u_b.sin();
  const Scalar ca2 = ca * ca, sa2 = sa * sa, cb2 = cb * cb, sb2 = sb * sb;
  const Scalar eta1 = d * ca2 + g * (Scalar(1) + sa2);
  const Scalar eta2 = g * ca2 + d * (Scalar(1) + sa2);
  const Scalar mixed = g * d * (sa2 * cb2 + ca2 * sb2 + Scalar(2) * ca * cb);

  switch (cls) {
    case BranchClass::One: {
      const Scalar t = g * cb + d * ca;
      return (t * t + g * d * (sa2 + sb2)) / eta1;
    }
    case BranchClass::Two: {
      const Scalar t = g * ca + d * cb;
      return (t * t + g * d * (sa2 + sb2)) / eta2;
    }
    case BranchClass::Three:
      return (g * g * (Scalar(1) + sa2 * sb2) + d * d * ca2 * cb2 + mixed) / eta1;
    case BranchClass::Four:
      return (g * g * ca2 * cb2 + d * d * (Scalar(1) + sa2 * sb2) + mixed) / eta2;
  }
  throw ArgumentError("fidelity_closed_form: invalid branch class");
}

/// Average fidelity over the four outcomes, closed form.
template <typename Scalar>
Scalar average_fidelity(TwoModeFamily shared_family, const QubitState<Scalar>& q, AccelMeasure<Scalar> u_a,
                        AccelMeasure<Scalar> u_b) {
  const Scalar gd = q.gamma_sq() * q.delta_sq();
  const Scalar ca = u_a.cos(), sa = u_a.sin(), cb = u_b.cos(), sb = u_b.sin();
  const Scalar ca2 = ca * ca, sa2 = sa * sa, cb2 = cb * cb, sb2 = sb * sb;
  const Scalar two = Scalar(2), half = Scalar(0.5);
  if (shared_family == TwoModeFamily::Psi) {
    return half * (ca2 + cb2 + two * gd * (sa2 - ca2 + sb2 - cb2 + two * ca * cb));
  }
  return half * (Scalar(1) + sa2 * sb2 + ca2 * cb2 +
                 two * gd * (sa2 * cb2 + ca2 * sb2 - sa2 * sb2 - ca2 * cb2 + two * ca * cb - Scalar(1)));
}

/// Average fidelity when both accelerations are infinite:
/// 1/2 + |g|^2 |d|^2 for psi+-, 3/4 for phi+-.
template <typename Scalar>
Scalar average_fidelity_limit(TwoModeFamily shared_family, const QubitState<Scalar>& q) {
  if (shared_family == TwoModeFamily::Psi) return Scalar(0.5) + q.gamma_sq() * q.delta_sq();
  return Scalar(0.75);
}

template <typename Scalar = double>
struct BranchOutcome {
  BellKind result;
  Scalar probability = 0;
  /// Bob's state after the correction; empty for zero-probability branches.
  std::optional<DensityMatrix<Scalar>> bob_state;
  std::optional<Scalar> fidelity;
};

/// Simulates the protocol on the full 32-dimensional state vector, one
/// outcome per Bell result in the order psi+, psi-, phi+, phi-.
template <typename Scalar>
std::array<BranchOutcome<Scalar>, 4> run_protocol(const QubitState<Scalar>& q, BellKind shared,
                                                  AccelMeasure<Scalar> u_a, AccelMeasure<Scalar> u_b) {
  const Ket<Scalar> state = initial_state(q, shared, u_a, u_b);
  std::array<BranchOutcome<Scalar>, 4> out;
  for (std::size_t k = 0; k < kBellKinds.size(); ++k) {
    const BellKind result = kBellKinds[k];
    auto projection = bell_project(state, result);
    out[k].result = result;
    out[k].probability = projection.probability;
    if (!projection.post_state) continue;
    const ComplexMatrix<Scalar> u = corrective_unitary<Scalar>(shared, result);
    const DensityMatrix<Scalar> rho = bob_state(*projection.post_state);
    out[k].fidelity = fidelity(q, rho, u);
    out[k].bob_state = DensityMatrix<Scalar>(rho.layout, u.adjoint() * rho.matrix * u);
  }
  return out;
}

/// Sum of probability * fidelity over the nonzero-probability outcomes.
template <typename Scalar>
Scalar average_fidelity(const std::array<BranchOutcome<Scalar>, 4>& outcomes) {
  Scalar sum = 0;
  for (const auto& o : outcomes) {
    if (o.fidelity) sum += o.probability * *o.fidelity;
  }
  return sum;
}

}  // namespace unruh
