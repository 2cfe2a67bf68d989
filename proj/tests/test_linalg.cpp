#include "doctest.h"
#include "oracle.hpp"

#include "unruh/linalg.hpp"

#include <random>

using namespace unruh;
using cd = std::complex<double>;
using Mat = ComplexMatrix<double>;

namespace {

Mat phi_plus_projector() {
  ComplexVector<double> v = ComplexVector<double>::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

void check_close(const Eigen::VectorXd& got, std::initializer_list<double> want, double tol) {
  REQUIRE(got.size() == static_cast<Eigen::Index>(want.size()));
  Eigen::Index i = 0;
  for (double w : want) CHECK(std::abs(got(i++) - w) < tol);
}

}  // namespace

TEST_CASE("ModeLayout maps the leftmost mode to the most significant bit") {
  const ModeLayout& l = teleport_layout();
  CHECK(l.dimension() == 32);
  CHECK(l.index_of("01000") == 8);
  CHECK(l.index_of("10000") == 16);
  CHECK(l.mask("Q") == 16);
  CHECK(l.mask("B_II") == 1);
  for (std::size_t i = 0; i < l.dimension(); ++i) CHECK(l.index_of(l.occupations(i)) == i);

  CHECK_THROWS_AS(ModeLayout({"A", "A"}), ArgumentError);
  CHECK_THROWS_AS(l.position("C"), ArgumentError);
  CHECK_THROWS_AS(l.index_of("010"), ArgumentError);

  const std::vector<std::string> keep{"B_II", "Q"};
  CHECK(l.subset(keep).labels() == std::vector<std::string>{"Q", "B_II"});
}

TEST_CASE("eig_hermitian on small known spectra") {
  check_close(eig_hermitian(Mat::Identity(2, 2)), {1.0, 1.0}, 1e-14);

  Mat x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  check_close(eig_hermitian(x), {-1.0, 1.0}, 1e-14);

  Mat y(2, 2);
  y << 0.0, cd(0, -1), cd(0, 1), 0.0;
  check_close(eig_hermitian(y), {-1.0, 1.0}, 1e-14);

  // Partial transpose of |phi+><phi+| is the swap operator / 2: the
  // symmetric subspace (dim 3) has eigenvalue 1/2, the antisymmetric one -1/2.
  const DensityMatrix<double> rho(ModeLayout{"A", "B"}, phi_plus_projector());
  const Mat pt = partial_transpose(rho, {"B"});
  check_close(eig_hermitian(pt), {-0.5, 0.5, 0.5, 0.5}, 1e-13);
  check_close(oracle::reference_eigenvalues(pt), {-0.5, 0.5, 0.5, 0.5}, 1e-13);
}

TEST_CASE("eig_hermitian rejects bad input") {
  Mat m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(eig_hermitian(m), PreconditionError);
  CHECK_THROWS_AS(eig_hermitian(Mat::Identity(2, 3)), PreconditionError);
  CHECK_THROWS_AS(eig_hermitian(Mat::Identity(33, 33)), SizeError);

  // A zero sweep budget cannot clear a nonzero off-diagonal.
  RealMatrix<double> a(2, 2);
  a << 1.0, 0.5, 0.5, 2.0;
  CHECK_THROWS_AS(detail::jacobi_symmetric<double>(a, 1e-13, 0), NumericalError);
}

TEST_CASE("eig_hermitian: trace and trace-of-square identities on random matrices") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 1 + trial % 8;
    const Mat m = oracle::random_hermitian(dim, rng);
    const Eigen::VectorXd ev = eig_hermitian(m);
    CHECK(std::is_sorted(ev.data(), ev.data() + ev.size()));
    CHECK(std::abs(ev.sum() - m.trace().real()) < 1e-10);
    CHECK(std::abs(ev.squaredNorm() - (m * m).trace().real()) < 1e-10);
    CHECK((ev - oracle::reference_eigenvalues(m)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eig_hermitian handles the full 32x32 size and degenerate spectra") {
  std::mt19937_64 rng(99);
  const Mat m = oracle::random_hermitian(32, rng);
  CHECK((eig_hermitian(m) - oracle::reference_eigenvalues(m)).cwiseAbs().maxCoeff() < 1e-9);

  const Eigen::VectorXd ones = eig_hermitian(Mat::Identity(32, 32));
  CHECK((ones.array() - 1.0).abs().maxCoeff() < 1e-14);

  // Unitarily rotated diag(1,1,2,2,2,-3).
  Eigen::VectorXd d(6);
  d << 1, 1, 2, 2, 2, -3;
  const Mat h = oracle::random_hermitian(6, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> basis(h);
  const Mat u = basis.eigenvectors();
  const Mat rotated = u * d.cast<cd>().asDiagonal() * u.adjoint();
  const Mat herm = (rotated + rotated.adjoint()) / 2.0;
  check_close(eig_hermitian(herm), {-3, 1, 1, 2, 2, 2}, 1e-12);
}

TEST_CASE("eig_hermitian is generic over the scalar type") {
  using L = long double;
  ComplexMatrix<L> m(2, 2);
  m << L(2), Complex<L>(0, 1), Complex<L>(0, -1), L(2);
  const auto ev = eig_hermitian(m);
  CHECK(static_cast<double>(ev(0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(static_cast<double>(ev(1)) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm(Mat::Identity(4, 4)) == doctest::Approx(4.0).epsilon(1e-14));
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = -0.5;
  CHECK(trace_norm(d) == doctest::Approx(1.0).epsilon(1e-14));

  const DensityMatrix<double> rho(ModeLayout{"A", "B"}, phi_plus_projector());
  CHECK(trace_norm(partial_transpose(rho, {"B"})) == doctest::Approx(2.0).epsilon(1e-13));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat r = oracle::random_density(1 + trial % 8, rng);
    CHECK(std::abs(trace_norm(r) - 1.0) < 1e-10);
  }
}

TEST_CASE("partial_transpose") {
  std::mt19937_64 rng(11);
  const ModeLayout ab{"A", "B"};

  SUBCASE("product state transposes only the named factor") {
    const Mat ra = oracle::random_density(2, rng), rb = oracle::random_density(2, rng);
    const DensityMatrix<double> rho(ab, kron(ra, rb));
    const Mat want = kron(ra, Mat(rb.transpose()));
    CHECK((partial_transpose(rho, {"B"}) - want).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("diagonal matrices are unchanged") {
    Mat d = Mat::Zero(4, 4);
    d.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK(partial_transpose(DensityMatrix<double>(ab, d), {"A"}) == d);
  }

  SUBCASE("|phi+><phi+| moves its coherence to the anti-diagonal block") {
    const Mat pt = partial_transpose(DensityMatrix<double>(ab, phi_plus_projector()), {"B"});
    CHECK(std::abs(pt(0, 3)) == 0.0);
    CHECK(pt(1, 2).real() == doctest::Approx(0.5));
    CHECK(pt(2, 1).real() == doctest::Approx(0.5));
  }

  SUBCASE("involution, trace, Hermiticity, agreement with the string-based oracle") {
    const ModeLayout& l = teleport_layout();
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix<double> rho(l, oracle::random_density(32, rng));
      const std::vector<std::string> sub = trial % 2 ? std::vector<std::string>{"A_I", "B_II"}
                                                     : std::vector<std::string>{"Q"};
      const Mat pt = partial_transpose(rho, sub);
      CHECK(is_hermitian(pt));
      CHECK(pt.trace() == rho.matrix.trace());
      CHECK(partial_transpose(DensityMatrix<double>(l, pt), sub) == rho.matrix);
      CHECK(pt == oracle::naive_partial_transpose(rho.matrix, l, sub));
    }
  }

  CHECK_THROWS_AS(partial_transpose(DensityMatrix<double>(ab, Mat::Identity(4, 4)), {"C"}), ArgumentError);
}

TEST_CASE("partial_trace") {
  const ModeLayout ab{"A", "B"};

  SUBCASE("|00> keeping the first mode") {
    const auto rho = partial_trace(Ket<double>::basis(ab, "00"), {"A"});
    CHECK(rho.layout.labels() == std::vector<std::string>{"A"});
    CHECK(rho.matrix(0, 0) == cd(1));
    CHECK(rho.matrix(1, 1) == cd(0));
  }

  SUBCASE("phi+ marginal is maximally mixed") {
    Ket<double> phi = Ket<double>::zero(ab);
    phi["00"] = phi["11"] = 1.0 / std::sqrt(2.0);
    const auto rho = partial_trace(phi, {"A"});
    CHECK((rho.matrix - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("random kets: PSD, unit trace, kept order, and the string-based oracle") {
    std::mt19937_64 rng(5);
    const ModeLayout& l = teleport_layout();
    const std::vector<std::vector<std::string>> keeps = {
        {"B_I"}, {"A_I", "B_I"}, {"B_II", "Q"}, {"Q", "A_I", "B_I", "A_II", "B_II"}};
    for (int trial = 0; trial < 20; ++trial) {
      const Ket<double> ket = oracle::random_ket(l, rng);
      for (const auto& keep : keeps) {
        const auto rho = partial_trace(ket, keep);
        CHECK(rho.layout == l.subset(keep));
        CHECK(is_hermitian(rho.matrix));
        CHECK(std::abs(rho.matrix.trace() - cd(1)) < 1e-12);
        CHECK(oracle::reference_eigenvalues(rho.matrix).minCoeff() >= -1e-12);
        CHECK((rho.matrix - oracle::naive_partial_trace(ket, keep)).cwiseAbs().maxCoeff() < 1e-14);
        const auto via_density = partial_trace(density_matrix(ket), keep);
        CHECK((rho.matrix - via_density.matrix).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }

  CHECK_THROWS_AS(partial_trace(Ket<double>::basis(ab, "00"), {}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(Ket<double>::basis(ab, "00"), {"Z"}), ArgumentError);
}

TEST_CASE("kron") {
  CHECK(kron(Mat::Identity(2, 2), Mat::Identity(2, 2)) == Mat::Identity(4, 4));

  const ModeLayout a{"A"}, b{"B"};
  const auto k = kron(Ket<double>::basis(a, "0"), Ket<double>::basis(b, "1"));
  CHECK(k.layout == ModeLayout{"A", "B"});
  CHECK(k.amplitudes == Ket<double>::basis(ModeLayout{"A", "B"}, "01").amplitudes);

  Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
  d1.diagonal() << 2.0, 3.0;
  d2.diagonal() << 5.0, 7.0;
  Mat want = Mat::Zero(4, 4);
  want.diagonal() << 10.0, 14.0, 15.0, 21.0;
  CHECK(kron(d1, d2) == want);

  std::mt19937_64 rng(3);
  const Mat x = oracle::random_hermitian(2, rng), y = oracle::random_hermitian(2, rng),
            z = oracle::random_hermitian(2, rng);
  CHECK((kron(kron(x, y), z) - kron(x, kron(y, z))).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(kron(Mat::Identity(8, 8), Mat::Identity(8, 8)), SizeError);
}

TEST_CASE("permute_modes round-trips") {
  std::mt19937_64 rng(8);
  const ModeLayout& l = two_mode_layout();
  const Ket<double> ket = oracle::random_ket(l, rng);
  const ModeLayout other{"B_II", "A_I", "A_II", "B_I"};
  const auto moved = permute_modes(ket, other);
  // A_I=1, B_I=0, A_II=1, B_II=1 read in the new order [B_II, A_I, A_II, B_I].
  CHECK(moved["1110"] == ket["1011"]);
  CHECK(permute_modes(moved, l).amplitudes == ket.amplitudes);
}
