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

TEST_CASE("presets", "[states]") {
  auto b = preset("bell_phi_plus");
  for (int i : {0, 3})
    for (int j : {0, 3}) CHECK_THAT(b.mat(i, j).real(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(b.mat.cwiseAbs().sum(), WithinAbs(2.0, 1e-15));
  Mat psi_plus = to_density(bell_ket("psi_plus")).mat;
  CHECK(max_abs(horodecki(1).mat - psi_plus) < 1e-15);
  CHECK(max_abs(preset("horodecki", {1}).mat - psi_plus) < 1e-15);
  for (const char* name : {"bell_phi_minus", "bell_psi_plus", "bell_psi_minus", "plus_state"})
    CHECK(validate(preset(name).mat, preset(name).dims).ok);
  CHECK(preset("ghz").dims == Dims{2, 2, 2});
  CHECK(preset("ghz", {4}).dims.size() == 4);
  CHECK_THROWS_AS(preset("ghz", {2.5}), Error);
  CHECK_THROWS_AS(preset("nope"), Error);
  CHECK_THROWS_AS(preset("horodecki", {1.5}), Error);
  auto c = preset("computational", {1, 2}, {2, 3});
  CHECK_THAT(c.mat(5, 5).real(), WithinAbs(1, 0));
}

TEST_CASE("Bell-diagonal weights", "[states]") {
  auto lam = bell_diagonal_eigenvalues({0.2, -0.3, 0.4});
  RVec ev = eigvalsh(bell_diagonal_matrix({0.2, -0.3, 0.4}));
  std::sort(lam.begin(), lam.end());
  for (int i = 0; i < 4; ++i) CHECK_THAT(ev[i], WithinAbs(lam[i], 1e-14));
  // (0.8, 0.5, 0.2) lies outside the tetrahedron: one weight is -1/8
  auto bad = bell_diagonal_eigenvalues({0.8, 0.5, 0.2});
  CHECK_THAT(*std::min_element(bad.begin(), bad.end()), WithinAbs(-0.125, 1e-15));
  try {
    preset("bell_diagonal", {0.8, 0.5, 0.2});
    FAIL("expected InvalidParams");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidParams");
  }
}

TEST_CASE("validate", "[states]") {
  CHECK(validate(0.5 * Mat::Identity(2, 2), {2}).ok);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.2;
  d(1, 1) = -0.2;
  auto v = validate(d, {2});
  CHECK_FALSE(v.ok);
  CHECK_THAT(v.min_eigenvalue, WithinAbs(-0.2, 1e-14));
  CHECK(v.violations.size() == 1);
  CHECK(validate(x_matrix({0.4, 0.1, 0.2, 0.3, cplx(0.2, 0.1), 0.1}), {2, 2}).ok);
  CHECK_FALSE(validate(Mat::Identity(3, 3) / 3.0, {2, 2}).ok);
  Mat nh = 0.5 * Mat::Identity(2, 2);
  nh(0, 1) = 0.1;
  CHECK_FALSE(validate(nh, {2}).ok);
  CHECK_THROWS_AS(require_valid(d, {2}), Error);
}

TEST_CASE("X-state constraints", "[states]") {
  CHECK(x_violations({0.25, 0.25, 0.25, 0.25, 0.25, 0.25}).empty());
  CHECK_FALSE(x_violations({0.25, 0.25, 0.25, 0.25, 0.3, 0}).empty());
  CHECK_FALSE(x_violations({0.3, 0.25, 0.25, 0.25, 0, 0}).empty());
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    auto x = random_x(rng);
    CHECK(validate(x_matrix(x), {2, 2}).ok);
    CHECK(is_x_shaped(x_state(x).mat));
  }
}

TEST_CASE("Bloch triple", "[states]") {
  auto mixed = bloch_decompose({{2, 2}, Mat::Identity(4, 4) / 4.0});
  CHECK(mixed.x.norm() + mixed.y.norm() + mixed.T.norm() < 1e-15);
  auto b = bloch_decompose(preset("bell_phi_plus"));
  CHECK(b.x.norm() + b.y.norm() < 1e-15);
  Eigen::Matrix3d want = Eigen::Vector3d(1, -1, 1).asDiagonal();
  CHECK((b.T - want).norm() < 1e-14);
  auto bd = bloch_decompose(bell_diagonal({0.3, -0.1, 0.2}));
  CHECK((bd.T - Eigen::Matrix3d(Eigen::Vector3d(0.3, -0.1, 0.2).asDiagonal())).norm() < 1e-14);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    auto r = random_density({2, 2}, 4, rng);
    CHECK(max_abs(bloch_reconstruct(bloch_decompose(r)) - r.mat) < 1e-12);
  }
  CHECK_THROWS_AS(bloch_decompose(random_density({2, 3}, 2, rng)), Error);
}

TEST_CASE("Fano-Bloch tensor", "[states]") {
  for (int d : {2, 3}) {
    auto r = fano_bloch({{d, 2}, Mat::Identity(2 * d, 2 * d) / double(2 * d)});
    CHECK_THAT(r(0, 0), WithinAbs(d / 2.0, 1e-14));
    r(0, 0) = 0;
    CHECK(r.cwiseAbs().maxCoeff() < 1e-14);
  }
  // d = 2: R_{αβ} = Tr(ρ σ^α ⊗ σ^β), the Bloch triple with a unit corner
  auto bell = preset("bell_phi_plus");
  auto r = fano_bloch(bell);
  auto b = bloch_decompose(bell);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK_THAT(r(i + 1, j + 1), WithinAbs(b.T(i, j), 1e-14));
  std::mt19937_64 rng(7);
  for (int d : {2, 3, 4}) {
    auto s = random_density({d, 2}, 2 * d, rng);
    CHECK(max_abs(fano_bloch_reconstruct(fano_bloch(s), d) - s.mat) < 1e-10);
  }
  CHECK_THROWS_AS(fano_bloch(random_density({2, 3}, 2, rng)), Error);
}

TEST_CASE("Schmidt decomposition", "[states]") {
  auto s11 = schmidt(computational_ket({1, 1}, {2, 2}), 1);
  CHECK_THAT(s11.coefficients[0], WithinAbs(1, 1e-15));
  CHECK_THAT(s11.coefficients[1], WithinAbs(0, 1e-15));
  CHECK(s11.rank == 1);
  auto flat = schmidt(ket({0.5, 0.5, 0.5, 0.5}, {2, 2}), 1);
  CHECK(flat.rank == 1);
  auto bell = schmidt(bell_ket("phi_plus"), 1);
  CHECK(bell.rank == 2);
  CHECK_THAT(bell.coefficients[0], WithinAbs(0.5, 1e-15));
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    auto psi = random_pure({2, 3}, rng);
    auto s = schmidt(psi, 1);
    CHECK_THAT(s.coefficients.sum(), WithinAbs(1, 1e-12));
    // rebuild ψ = Σ √λ_k |u_k⟩|v_k⟩
    Vec rebuilt = Vec::Zero(6);
    for (int k = 0; k < s.coefficients.size(); ++k)
      rebuilt += std::sqrt(s.coefficients[k]) * kron(s.left.col(k), s.right.col(k));
    CHECK((rebuilt - psi.amp).norm() < 1e-12);
    auto rho = to_density(psi);
    RVec la = eigvalsh(partial_trace(rho.mat, rho.dims, {0}));
    RVec lb = eigvalsh(partial_trace(rho.mat, rho.dims, {1}));
    CHECK_THAT(la[1], WithinAbs(lb[2], 1e-10));
    CHECK_THAT(la[0], WithinAbs(lb[1], 1e-10));
  }
  CHECK_THROWS_AS(schmidt(bell_ket("phi_plus"), 2), Error);
}

TEST_CASE("purification", "[states]") {
  auto pure = purify(preset("bell_phi_plus"));
  CHECK(pure.dims.back() == 1);
  auto mm = purify({{2}, Mat::Identity(2, 2) / 2.0});
  CHECK(mm.dims == Dims{2, 2});
  CHECK_THAT(entanglement_entropy(mm, 1), WithinAbs(1, 1e-12));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    auto r = random_density({2, 2}, 2, rng);
    auto p = purify(r);
    CHECK(p.dims == Dims{2, 2, 2});
    CHECK(max_abs(partial_trace(to_density(p), {0, 1}).mat - r.mat) < 1e-10);
  }
}

TEST_CASE("su(d) generators", "[states]") {
  auto g2 = su_generators(2);
  for (int i = 0; i < 3; ++i) CHECK(max_abs(g2[i] - pauli(i + 1)) < 1e-15);
  for (int d : {2, 3, 4}) {
    auto g = su_generators(d);
    REQUIRE(g.size() == std::size_t(d * d - 1));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(g[i].trace()) < 1e-14);
      CHECK(is_hermitian(g[i]));
      for (std::size_t j = 0; j < g.size(); ++j)
        CHECK_THAT((g[i] * g[j]).trace().real(), WithinAbs(i == j ? 2.0 : 0.0, 1e-14));
    }
  }
  CHECK_THROWS_AS(su_generators(1), Error);
}

TEST_CASE("random states", "[states]") {
  auto a = random_density({2, 2}, 2, 99), b = random_density({2, 2}, 2, 99);
  CHECK(a.mat == b.mat);
  CHECK(random_pure({3}, 5).amp == random_pure({3}, 5).amp);
  CHECK_THAT(purity(random_density({2, 2}, 1, 3).mat), WithinAbs(1, 1e-12));
  CHECK(eigvalsh(random_density({2, 2}, 4, 4).mat)[0] > 0);
  std::mt19937_64 rng(1);
  Mat u = random_unitary(5, rng);
  CHECK((u.adjoint() * u - Mat::Identity(5, 5)).norm() < 1e-12);
  for (int t = 0; t < 50; ++t) CHECK(validate(bell_diagonal(random_bell_diagonal(rng)).mat, {2, 2}).ok);
  CHECK_THROWS_AS(random_density({2}, 3, 1), Error);
}
