#pragma once

#include "unruh/core.hpp"
#include "unruh/mode_layout.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace unruh {

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// State vector over a mode layout. Storage is dense; `terms()` lists the
/// nonzero amplitudes.
template <typename Scalar = double>
struct Ket {
  ModeLayout layout;
  ComplexVector<Scalar> amplitudes;

  Ket() = default;
  Ket(ModeLayout l, ComplexVector<Scalar> a) : layout(std::move(l)), amplitudes(std::move(a)) {
    if (static_cast<std::size_t>(amplitudes.size()) != layout.dimension()) {
      throw ArgumentError("Ket: amplitude count does not match layout dimension");
    }
  }

  static Ket zero(ModeLayout l) {
    const auto dim = static_cast<Eigen::Index>(l.dimension());
    return Ket(std::move(l), ComplexVector<Scalar>::Zero(dim));
  }

  /// Basis ket such as basis(layout, "0100").
  static Ket basis(ModeLayout l, std::string_view occupations) {
    Ket k = zero(std::move(l));
    k.amplitudes(static_cast<Eigen::Index>(k.layout.index_of(occupations))) = Complex<Scalar>(1);
    return k;
  }

  Complex<Scalar>& operator[](std::string_view occupations) {
    return amplitudes(static_cast<Eigen::Index>(layout.index_of(occupations)));
  }
  Complex<Scalar> operator[](std::string_view occupations) const {
    return amplitudes(static_cast<Eigen::Index>(layout.index_of(occupations)));
  }

  Scalar norm() const { return amplitudes.norm(); }

  std::vector<std::pair<std::size_t, Complex<Scalar>>> terms() const {
    std::vector<std::pair<std::size_t, Complex<Scalar>>> out;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
      if (amplitudes(i) != Complex<Scalar>(0)) out.emplace_back(static_cast<std::size_t>(i), amplitudes(i));
    }
    return out;
  }
};

/// Dense density matrix tagged with the layout of its modes.
template <typename Scalar = double>
struct DensityMatrix {
  ModeLayout layout;
  ComplexMatrix<Scalar> matrix;

  DensityMatrix() = default;
  DensityMatrix(ModeLayout l, ComplexMatrix<Scalar> m) : layout(std::move(l)), matrix(std::move(m)) {
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    if (matrix.rows() != dim || matrix.cols() != dim) {
      throw ArgumentError("DensityMatrix: matrix size does not match layout dimension");
    }
  }

  Complex<Scalar> operator()(std::string_view row, std::string_view col) const {
    return matrix(static_cast<Eigen::Index>(layout.index_of(row)), static_cast<Eigen::Index>(layout.index_of(col)));
  }
};

template <typename Scalar>
DensityMatrix<Scalar> density_matrix(const Ket<Scalar>& ket) {
  return DensityMatrix<Scalar>(ket.layout, ket.amplitudes * ket.amplitudes.adjoint());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, RealOf<Derived> tol = RealOf<Derived>(1e-12)) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

namespace detail {

/// Cyclic Jacobi on a real symmetric matrix. Returns the unsorted diagonal
/// once every off-diagonal magnitude is below `threshold`.
template <typename Scalar>
RealVector<Scalar> jacobi_symmetric(RealMatrix<Scalar> a, Scalar threshold, int max_sweeps) {
  const Eigen::Index n = a.rows();
  auto max_off = [&] {
    Scalar m = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) m = std::max(m, std::abs(a(p, q)));
    return m;
  };

  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (max_off() < threshold) return a.diagonal();
    if (sweep == max_sweeps) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (std::abs(theta) > Scalar(1) / std::sqrt(std::numeric_limits<Scalar>::epsilon())) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
          if (theta < 0) t = -t;
        }
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
      }
    }
  }
  throw NumericalError("eig_hermitian: Jacobi iteration did not converge in " + std::to_string(max_sweeps) +
                       " sweeps");
}

}  // namespace detail

inline constexpr int kJacobiMaxSweeps = 100;

/// Ascending eigenvalues of a Hermitian matrix (dim <= 32).
///
/// The n x n complex matrix is embedded as the real symmetric 2n x 2n matrix
/// [[Re M, -Im M], [Im M, Re M]], diagonalized by cyclic Jacobi, and every
/// eigenvalue then appears twice; after sorting, every other one is kept.
template <typename Derived>
RealVector<RealOf<Derived>> eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = RealOf<Derived>;
  if (m.rows() != m.cols()) throw PreconditionError("eig_hermitian: matrix is not square");
  if (m.rows() > kMaxMatrixDim) throw SizeError("eig_hermitian: dimension exceeds 32");
  if (!is_hermitian(m)) throw PreconditionError("eig_hermitian: matrix is not Hermitian within 1e-12");

  const Eigen::Index n = m.rows();
  RealMatrix<Scalar> embed(2 * n, 2 * n);
  const RealMatrix<Scalar> re = m.real();
  const RealMatrix<Scalar> im = m.imag();
  embed.topLeftCorner(n, n) = re;
  embed.topRightCorner(n, n) = -im;
  embed.bottomLeftCorner(n, n) = im;
  embed.bottomRightCorner(n, n) = re;
  // Symmetrize away the sub-tolerance Hermiticity defect.
  embed = (Scalar(0.5) * (embed + embed.transpose())).eval();

  const Scalar scale = std::max(Scalar(1), embed.cwiseAbs().maxCoeff());
  const Scalar threshold =
      std::max(Scalar(1e-13), Scalar(64) * std::numeric_limits<Scalar>::epsilon()) * scale;
  RealVector<Scalar> doubled = detail::jacobi_symmetric(std::move(embed), threshold, kJacobiMaxSweeps);
  std::sort(doubled.data(), doubled.data() + doubled.size());

  RealVector<Scalar> eig(n);
  for (Eigen::Index i = 0; i < n; ++i) eig(i) = doubled(2 * i);
  return eig;
}

template <typename Derived>
RealOf<Derived> trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return eig_hermitian(m).cwiseAbs().sum();
}

/// Transposes the indices of the named modes only.
template <typename Scalar>
ComplexMatrix<Scalar> partial_transpose(const DensityMatrix<Scalar>& rho, const std::vector<std::string>& subsystem) {
  const std::size_t mask = rho.layout.mask(subsystem);
  const auto dim = rho.matrix.rows();
  ComplexMatrix<Scalar> out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const auto ti = static_cast<Eigen::Index>((ui & ~mask) | (uj & mask));
      const auto tj = static_cast<Eigen::Index>((uj & ~mask) | (ui & mask));
      out(ti, tj) = rho.matrix(i, j);
    }
  }
  return out;
}

namespace detail {

/// Splits every full basis index into (kept index, environment index).
struct IndexSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> env;
  Eigen::Index kept_dim = 1;
  Eigen::Index env_dim = 1;
};

inline IndexSplit split_indices(const ModeLayout& layout, const ModeLayout& kept_layout) {
  const std::size_t n = layout.mode_count();
  IndexSplit s;
  s.kept_dim = static_cast<Eigen::Index>(kept_layout.dimension());
  s.env_dim = static_cast<Eigen::Index>(layout.dimension()) / s.kept_dim;
  s.kept.resize(layout.dimension());
  s.env.resize(layout.dimension());
  for (std::size_t x = 0; x < layout.dimension(); ++x) {
    Eigen::Index k = 0, e = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const Eigen::Index bit = (x >> (n - 1 - pos)) & 1u;
      if (kept_layout.contains(layout.labels()[pos])) {
        k = (k << 1) | bit;
      } else {
        e = (e << 1) | bit;
      }
    }
    s.kept[x] = k;
    s.env[x] = e;
  }
  return s;
}

inline ModeLayout kept_layout(const ModeLayout& layout, const std::vector<std::string>& keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
  return layout.subset(keep);
}

}  // namespace detail

/// Reduced density matrix on `keep` (kept modes stay in layout order).
template <typename Scalar>
DensityMatrix<Scalar> partial_trace(const Ket<Scalar>& state, const std::vector<std::string>& keep) {
  ModeLayout kept = detail::kept_layout(state.layout, keep);
  const auto split = detail::split_indices(state.layout, kept);
  ComplexMatrix<Scalar> psi = ComplexMatrix<Scalar>::Zero(split.kept_dim, split.env_dim);
  for (std::size_t x = 0; x < state.layout.dimension(); ++x) {
    psi(split.kept[x], split.env[x]) = state.amplitudes(static_cast<Eigen::Index>(x));
  }
  return DensityMatrix<Scalar>(std::move(kept), psi * psi.adjoint());
}

template <typename Scalar>
DensityMatrix<Scalar> partial_trace(const DensityMatrix<Scalar>& rho, const std::vector<std::string>& keep) {
  ModeLayout kept = detail::kept_layout(rho.layout, keep);
  const auto split = detail::split_indices(rho.layout, kept);
  ComplexMatrix<Scalar> out = ComplexMatrix<Scalar>::Zero(split.kept_dim, split.kept_dim);
  const auto dim = static_cast<std::size_t>(rho.matrix.rows());
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t y = 0; y < dim; ++y) {
      if (split.env[x] == split.env[y]) {
        out(split.kept[x], split.kept[y]) += rho.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      }
    }
  }
  return DensityMatrix<Scalar>(std::move(kept), std::move(out));
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() * b.rows() > kMaxMatrixDim || a.cols() * b.cols() > kMaxMatrixDim) {
    throw SizeError("kron: result dimension exceeds 32");
  }
  Result out = Eigen::kroneckerProduct(a.eval(), b.eval());
  return out;
}

template <typename Scalar>
Ket<Scalar> kron(const Ket<Scalar>& a, const Ket<Scalar>& b) {
  ComplexVector<Scalar> amps(a.amplitudes.size() * b.amplitudes.size());
  for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i) {
    amps.segment(i * b.amplitudes.size(), b.amplitudes.size()) = a.amplitudes(i) * b.amplitudes;
  }
  return Ket<Scalar>(a.layout.concat(b.layout), std::move(amps));
}

template <typename Scalar>
DensityMatrix<Scalar> kron(const DensityMatrix<Scalar>& a, const DensityMatrix<Scalar>& b) {
  return DensityMatrix<Scalar>(a.layout.concat(b.layout), kron(a.matrix, b.matrix));
}

/// Same state with its modes reordered to `target` (same label set).
template <typename Scalar>
Ket<Scalar> permute_modes(const Ket<Scalar>& ket, const ModeLayout& target) {
  if (target.mode_count() != ket.layout.mode_count()) throw ArgumentError("permute_modes: mode count mismatch");
  Ket<Scalar> out = Ket<Scalar>::zero(target);
  for (std::size_t x = 0; x < ket.layout.dimension(); ++x) {
    out.amplitudes(static_cast<Eigen::Index>(ket.layout.remap_index(x, target))) =
        ket.amplitudes(static_cast<Eigen::Index>(x));
  }
  return out;
}

}  // namespace unruh
