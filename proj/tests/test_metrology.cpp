// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "helpers.hpp"

using namespace qcorr;
using namespace qcorr::test;

namespace {

Mat plus_state() { return bloch_qubit(1, 0, 0); }

/** Qubit with Bloch vector of length r at polar angles (θ, φ). */
DensityMatrix bloch_angles(double r, double th, double ph) {
  return {{2}, bloch_qubit(r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph), r * std::cos(th))};
}

Mat rmat(const RMat& m) { return m.cast<cplx>(); }

}  // namespace

TEST_CASE("derivatives of parametric families", "[metrology]") {
  auto constant = ParametricFamily::evaluator([](const std::vector<double>&) { return DensityMatrix{{2}, bloch_qubit(0.1, 0.2, 0.3)}; }, {0.4});
  CHECK(max_abs(d_rho(constant, 0)) < 1e-14);

  DensityMatrix plus{{2}, plus_state()};
  Mat gen = 0.5 * pauli(3);
  auto uni = ParametricFamily::unitary(plus, gen, 0.0);
  Mat want = cplx(0, -1) * (gen * plus.mat - plus.mat * gen);
  CHECK(max_abs(d_rho(uni, 0) - want) < 1e-14);

  for (double th : {0.0, 0.3, 1.1}) {
    auto u2 = ParametricFamily::unitary(plus, gen, th);
    auto ev = ParametricFamily::evaluator(
        [&](const std::vector<double>& t) {
          Mat u = expm_hermitian(gen, t[0]);
          return DensityMatrix{{2}, u * plus.mat * u.adjoint()};
        },
        {th});
    Mat a = d_rho(u2, 0), b = d_rho(ev, 0);
    CHECK(max_abs(a - b) < 1e-6);
    CHECK(max_abs(b - b.adjoint()) < 1e-8);
  }

  auto jagged = ParametricFamily::evaluator(
      [](const std::vector<double>& t) {
        double z = 0.5 * std::tanh(1e4 * t[0]);
        return DensityMatrix{{2}, bloch_qubit(0, 0, z)};
      },
      {0.0}, 1e-3);
  CHECK_THROWS_MATCHES(d_rho(jagged, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == "StepTooLarge"; }));
  CHECK_THROWS_AS(d_rho(uni, 1), Error);
}

TEST_CASE("symmetric logarithmic derivative", "[metrology]") {
  // commuting case: L_ii = ∂λ_i/λ_i
  Mat rho = Mat::Zero(2, 2), drho = Mat::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  drho(0, 0) = 0.2;
  drho(1, 1) = -0.2;
  Mat l = sld(rho, drho);
  CHECK_THAT(l(0, 0).real(), WithinAbs(0.2 / 0.7, 1e-12));
  CHECK_THAT(l(1, 1).real(), WithinAbs(-0.2 / 0.3, 1e-12));
  CHECK(std::abs(l(0, 1)) < 1e-14);

  std::mt19937_64 rng(61);
  for (int k = 0; k < 20; ++k) {
    int d = 2 + k % 3;
    auto r = random_density({d}, 1 + k % d, rng).mat;
    Mat h = random_hermitian(d, rng);
    Mat dr = cplx(0, -1) * (h * r - r * h);
    Mat ls = sld(r, dr);
    CHECK(ls.allFinite());
    CHECK((0.5 * (ls * r + r * ls) - dr).norm() <= 1e-8 * std::max(1.0, dr.norm()));
    CHECK(std::abs((r * ls).trace()) <= 1e-8);
    CHECK_THAT(qfi(r, dr), WithinAbs(qfi_via_sld(r, dr), 1e-8));
    // Sylvester oracle via the vectorized route
    CHECK_THAT(qfim_vectorized(r, {dr})(0, 0), WithinAbs(qfi(r, dr), 1e-7 * std::max(1.0, qfi(r, dr))));
  }
}

TEST_CASE("quantum Fisher information examples", "[metrology]") {
  Mat gen = 0.5 * pauli(3);
  CHECK_THAT(qfi(plus_state(), Mat(Mat::Zero(2, 2))), WithinAbs(0, 1e-15));
  auto fam = ParametricFamily::unitary({{2}, plus_state()}, gen, 0.0);
  CHECK_THAT(qfi(fam.at().mat, d_rho(fam, 0)), WithinAbs(1, 1e-12));

  PureState plus{{2}, Vec::Constant(2, 1 / std::sqrt(2.0))};
  CHECK_THAT(qfi_pure_unitary(plus, gen), WithinAbs(1, 1e-12));
  CHECK_THAT(qfi_pure_unitary(computational_ket({0}, {2}), gen), WithinAbs(0, 1e-15));
  for (int n = 2; n <= 5; ++n) CHECK_THAT(qfi_pure_unitary(ghz_ket(n), collective_sz(n)), WithinAbs(n * n, 1e-9));

  for (double p : {0.2, 0.5, 0.9}) {
    Mat mixed = p * plus_state() + (1 - p) * 0.5 * pauli(0);
    Mat dr = cplx(0, -1) * (gen * mixed - mixed * gen);
    double f = qfi(mixed, dr);
    CHECK_THAT(f, WithinAbs(p * p, 1e-10));  // |∂r|² for an equatorial rotation
    CHECK(f <= p * 1 + (1 - p) * 0 + 1e-12);
  }

  std::mt19937_64 rng(62);
  for (int k = 0; k < 10; ++k) {
    auto psi = random_pure({3}, rng);
    Mat h = random_hermitian(3, rng);
    Mat r = to_density(psi).mat;
    CHECK_THAT(qfi_pure_unitary(psi, h), WithinAbs(qfi_via_sld(r, Mat(cplx(0, -1) * (h * r - r * h))), 1e-8));
  }
}

TEST_CASE("QFIM routes agree", "[metrology]") {
  // Bloch-angle family: r(θ,φ) with fixed length
  for (double len : {0.6, 0.95}) {
    auto fam = ParametricFamily::evaluator(
        [len](const std::vector<double>& t) { return bloch_angles(len, t[0], t[1]); }, {0.7, 0.4});
    RMat a = qfim(fam);
    auto rho = fam.at().mat;
    RMat b = qfim_vectorized(rho, d_rhos(fam));
    double th = 0.7, ph = 0.4;
    Eigen::Vector3d r(len * std::sin(th) * std::cos(ph), len * std::sin(th) * std::sin(ph), len * std::cos(th));
    Eigen::Vector3d dth(len * std::cos(th) * std::cos(ph), len * std::cos(th) * std::sin(ph), -len * std::sin(th));
    Eigen::Vector3d dph(-len * std::sin(th) * std::sin(ph), len * std::sin(th) * std::cos(ph), 0);
    RMat c = qfim_bloch_qubit(r, {dth, dph});
    CHECK(max_abs(rmat(a - b)) < 1e-7);
    CHECK(max_abs(rmat(a - c)) < 1e-7);
    // angular-only motion: F = diag(len², len² sin²θ)
    CHECK_THAT(a(0, 0), WithinAbs(len * len, 1e-7));
    CHECK_THAT(a(1, 1), WithinAbs(len * len * std::sin(th) * std::sin(th), 1e-7));
    CHECK_THAT(a(0, 1), WithinAbs(a(1, 0), 1e-12));
  }

  // pure qubit: only ∂r·∂r survives
  Eigen::Vector3d r(0, 0, 1), d1(1, 0, 0), d2(0.3, 0.5, 0);
  RMat pure = qfim_bloch_qubit(r, {d1, d2});
  CHECK_THAT(pure(0, 1), WithinAbs(d1.dot(d2), 1e-15));
  CHECK_THROWS_AS(qfim_bloch_qubit(Eigen::Vector3d(1, 1, 0), {d1}), Error);

  // thermal family r = (0, 0, tanh β)
  auto thermal = ParametricFamily::evaluator(
      [](const std::vector<double>& t) { return DensityMatrix{{2}, bloch_qubit(0, 0, std::tanh(t[0]))}; }, {0.8});
  double tz = std::tanh(0.8), dz = 1 - tz * tz;
  RMat tb = qfim_bloch_qubit(Eigen::Vector3d(0, 0, tz), {Eigen::Vector3d(0, 0, dz)});
  CHECK_THAT(qfim(thermal)(0, 0), WithinAbs(tb(0, 0), 1e-7));
  CHECK_THAT(tb(0, 0), WithinAbs(dz, 1e-12));  // dz²/(1 - tz²) = 1 - tanh²

  // X-state two-parameter family
  auto xfam = ParametricFamily::evaluator(
      [](const std::vector<double>& t) {
        XStateParams x;
        x.d1 = 0.3 + 0.1 * t[0];
        x.d4 = 0.3 - 0.1 * t[0];
        x.d2 = x.d3 = 0.2;
        x.a14 = 0.15 * std::cos(t[1]);
        x.a23 = cplx(0.1, 0.05 * std::sin(t[1]));
        return x_state(x);
      },
      {0.2, 0.6});
  auto xr = xfam.at().mat;
  auto xd = d_rhos(xfam);
  RMat s1 = qfim(xr, xd), s2 = qfim_vectorized(xr, xd), s3 = qfim_xstate_block(xr, xd);
  CHECK(max_abs(rmat(s1 - s2)) < 1e-7);
  CHECK(max_abs(rmat(s1 - s3)) < 1e-7);
  for (int k = 0; k < 2; ++k) CHECK_THAT(s1(k, k), WithinAbs(qfi(xr, xd[k]), 1e-8));
  Eigen::SelfAdjointEigenSolver<RMat> es(s1);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);

  CHECK(max_abs(rmat(qfim_vectorized(Mat(Mat::Identity(2, 2) / 2.0), {Mat(Mat::Zero(2, 2))}))) < 1e-15);
}

TEST_CASE("QFIM unitary invariance", "[metrology]") {
  std::mt19937_64 rng(63);
  auto r = random_density({3}, 3, rng).mat;
  std::vector<Mat> ds;
  for (int k = 0; k < 2; ++k) {
    Mat h = random_hermitian(3, rng);
    ds.push_back(cplx(0, -1) * (h * r - r * h));
  }
  Mat u = random_unitary(3, rng);
  std::vector<Mat> dr;
  for (auto& d : ds) dr.push_back(u * d * u.adjoint());
  CHECK(max_abs(rmat(qfim(u * r * u.adjoint(), dr) - qfim(r, ds))) < 1e-7);
}

TEST_CASE("QFI convexity and monotonicity", "[metrology]") {
  std::mt19937_64 rng(64);
  Mat h = random_hermitian(2, rng);
  auto dr = [&](const Mat& r) { return Mat(cplx(0, -1) * (h * r - r * h)); };
  for (int k = 0; k < 20; ++k) {
    Mat r1 = random_density({2}, 2, rng).mat, r2 = random_density({2}, 1, rng).mat;
    double p = (k + 1) / 21.0;
    Mat mix = p * r1 + (1 - p) * r2;
    CHECK(qfi(mix, dr(mix)) <= p * qfi(r1, dr(r1)) + (1 - p) * qfi(r2, dr(r2)) + 1e-6);
  }
  // dephasing commutes with a σ_z generator
  Mat gz = 0.5 * pauli(3);
  auto ch = channel_preset("dephasing", 0.4);
  for (int k = 0; k < 10; ++k) {
    auto rho = random_density({2}, 2, rng);
    Mat d0 = cplx(0, -1) * (gz * rho.mat - rho.mat * gz);
    auto out = apply_channel(rho, ch, 0);
    Mat d1 = cplx(0, -1) * (gz * out.mat - out.mat * gz);
    CHECK(qfi(out.mat, d1) <= qfi(rho.mat, d0) + 1e-6);
  }
}

TEST_CASE("classical Fisher information", "[metrology]") {
  auto fam = ParametricFamily::unitary({{2}, bloch_qubit(0, 0, 1)}, Mat(0.25 * pauli(2)), 0.9);
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  // p(±,θ) = ½(1 ± cos(θ/2)) gives a constant Fisher information of ¼
  auto rho = fam.at().mat;
  CHECK_THAT(rho(0, 0).real(), WithinAbs(0.5 * (1 + std::cos(0.45)), 1e-12));
  CHECK_THAT(cfi(fam, {p0, p1})[0], WithinAbs(0.25, 1e-10));
  CHECK_THAT(cfi(fam, {Mat(Mat::Identity(2, 2))})[0], WithinAbs(0, 1e-15));
  CHECK_THROWS_AS(cfi(fam, {p0}), Error);
  CHECK_THROWS_AS(cfi(fam, {Mat(2.0 * p0), Mat(-p0 + p1)}), Error);

  std::mt19937_64 rng(65);
  for (int k = 0; k < 20; ++k) {
    int d = 2 + k % 2;
    auto r = random_density({d}, d, rng).mat;
    Mat h = random_hermitian(d, rng);
    Mat dr = cplx(0, -1) * (h * r - r * h);
    double q = qfi(r, dr);
    CHECK_THAT(cfi(r, {dr}, sld_eigenbasis_povm(sld(r, dr)))[0], WithinAbs(q, 1e-6));
    auto u = random_unitary(d, rng);
    std::vector<Mat> povm;
    for (int i = 0; i < d; ++i) povm.push_back(u.col(i) * u.col(i).adjoint());
    double c = cfi(r, {dr}, povm)[0];
    CHECK(c >= 0);
    CHECK(c <= q + 1e-7);
  }
}

TEST_CASE("Cramer-Rao bound", "[metrology]") {
  CHECK_THAT(cramer_rao(1, 1), WithinAbs(1, 1e-15));
  CHECK_THAT(cramer_rao(4, 25), WithinAbs(0.01, 1e-15));
  CHECK_THROWS_AS(cramer_rao(0, 1), Error);
  CHECK_THAT(cramer_rao(qfi_pure_unitary(ghz_ket(4), collective_sz(4)), 1), WithinAbs(1.0 / 16, 1e-12));
  PureState sep{{2, 2, 2, 2}, Vec::Constant(16, 0.25)};
  CHECK_THAT(cramer_rao(qfi_pure_unitary(sep, collective_sz(4)), 1), WithinAbs(1.0 / 4, 1e-12));
}
