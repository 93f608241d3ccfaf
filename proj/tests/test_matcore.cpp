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

TEST_CASE("eigh spectra", "[matcore]") {
  auto e = eigh(Mat::Identity(2, 2));
  CHECK_THAT(e.values[0], WithinAbs(1, 1e-14));
  CHECK_THAT(e.values[1], WithinAbs(1, 1e-14));
  auto z = eigvalsh(pauli(3));
  CHECK_THAT(z[0], WithinAbs(-1, 1e-14));
  CHECK_THAT(z[1], WithinAbs(1, 1e-14));
}

TEST_CASE("eigh matches characteristic polynomial roots", "[matcore]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Mat h = random_hermitian(4, rng);
    auto ed = eigh(h);
    auto roots = polynomial_real_roots(charpoly(h));
    for (int i = 0; i < 4; ++i) CHECK_THAT(ed.values[i], WithinAbs(roots[i], 1e-8));
    Mat rec = ed.vectors * ed.values.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
    CHECK((rec - h).norm() <= 1e-10 * h.norm());
    CHECK((ed.vectors.adjoint() * ed.vectors - Mat::Identity(4, 4)).norm() <= 1e-10);
  }
}

TEST_CASE("eigh rejects non-Hermitian input", "[matcore]") {
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1;
  try {
    eigh(a);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == "NonHermitian");
  }
}

TEST_CASE("matrix functions", "[matcore]") {
  CHECK(max_abs(msqrt(Mat::Identity(3, 3)) - Mat::Identity(3, 3)) < 1e-14);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 4;
  d(1, 1) = 9;
  Mat s = msqrt(d);
  CHECK_THAT(s(0, 0).real(), WithinAbs(2, 1e-14));
  CHECK_THAT(s(1, 1).real(), WithinAbs(3, 1e-14));
  Mat bd = bell_diagonal({0.3, -0.2, 0.5}).mat;
  Mat r = msqrt(bd);
  CHECK(max_abs(r * r - bd) < 1e-10);
  Mat neg = -0.1 * Mat::Identity(2, 2);
  CHECK_THROWS_AS(msqrt(neg), Error);
  Mat tiny = -1e-12 * Mat::Identity(2, 2);
  CHECK(max_abs(msqrt(tiny)) == 0);
}

TEST_CASE("kron", "[matcore]") {
  CHECK(max_abs(kron(Mat::Identity(2, 2), Mat::Identity(2, 2)) - Mat::Identity(4, 4)) == 0);
  Mat xx = kron(pauli(1), pauli(1));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(xx(i, j) == cplx(i + j == 3 ? 1.0 : 0.0));
  std::mt19937_64 rng(3);
  Mat a = random_gaussian(2, 2, rng), b = random_gaussian(2, 2, rng), c = random_gaussian(2, 2, rng),
      d = random_gaussian(2, 2, rng);
  CHECK(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-12);
  CHECK(kron(Mat::Identity(2, 3), Mat::Identity(3, 2)).rows() == 6);
}

TEST_CASE("partial trace", "[matcore]") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto a = random_density({2}, 2, rng), b = random_density({3}, 3, rng);
    Mat ab = kron(a.mat, b.mat);
    CHECK(max_abs(partial_trace(ab, {2, 3}, {0}) - a.mat) < 1e-12);
    CHECK(max_abs(partial_trace(ab, {2, 3}, {1}) - b.mat) < 1e-12);
  }
  auto bell = preset("bell_phi_plus");
  CHECK(max_abs(partial_trace(bell, {0}).mat - 0.5 * Mat::Identity(2, 2)) < 1e-15);
  auto psi = to_density(random_pure({2, 3}, rng));
  RVec la = eigvalsh(partial_trace(psi.mat, psi.dims, {0}));
  RVec lb = eigvalsh(partial_trace(psi.mat, psi.dims, {1}));
  CHECK_THAT(la[0], WithinAbs(lb[1], 1e-12));
  CHECK_THAT(la[1], WithinAbs(lb[2], 1e-12));
  CHECK_THAT(lb[0], WithinAbs(0, 1e-12));
  CHECK_THROWS_AS(partial_trace(bell, {2}), Error);
  auto three = to_density(random_pure({2, 2, 2}, rng));
  auto r02 = partial_trace(three, {0, 2});
  CHECK(r02.dims == Dims{2, 2});
  CHECK_THAT(r02.mat.trace().real(), WithinAbs(1, 1e-12));
}

TEST_CASE("partial transpose", "[matcore]") {
  auto bell = preset("bell_phi_plus");
  Mat pt = partial_transpose(bell.mat, bell.dims, 0);
  CHECK_THAT(eigvalsh(pt)[0], WithinAbs(-0.5, 1e-12));
  CHECK(partial_transpose(pt, bell.dims, 0) == bell.mat);
  std::mt19937_64 rng(9);
  Mat prod = kron(random_density({2}, 2, rng).mat, random_density({3}, 3, rng).mat);
  CHECK(eigvalsh(partial_transpose(prod, {2, 3}, 1))[0] > -1e-12);
  CHECK_THROWS_AS(partial_transpose(prod, {2, 3}, 2), Error);
}

TEST_CASE("trace norm", "[matcore]") {
  CHECK(trace_norm(Mat::Zero(3, 3)) == 0);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -2;
  CHECK_THAT(trace_norm(d), WithinAbs(3, 1e-14));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    Mat a = random_gaussian(3, 3, rng), b = random_gaussian(3, 3, rng);
    RVec ev = eigvalsh(a.adjoint() * a);
    double s = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::sqrt(std::max(0.0, ev[i]));
    CHECK_THAT(trace_norm(a), WithinAbs(s, 1e-10));
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10);
    CHECK_THAT(trace_norm(cplx(-2.5, 1) * a), WithinAbs(std::abs(cplx(-2.5, 1)) * trace_norm(a), 1e-10));
  }
}

TEST_CASE("fidelity", "[matcore]") {
  std::mt19937_64 rng(4);
  auto r = random_density({2, 2}, 3, rng);
  CHECK_THAT(fidelity(r, r), WithinAbs(1, 1e-10));
  CHECK_THAT(fidelity(preset("computational", {0}, {2}), preset("computational", {1}, {2})), WithinAbs(0, 1e-14));
  for (int t = 0; t < 100; ++t) {
    auto a = random_density({3}, 3, rng), b = random_density({3}, 2, rng);
    CHECK_THAT(fidelity(a, b), WithinAbs(fidelity(b, a), 1e-10));
  }
  for (int t = 0; t < 20; ++t) {
    auto a = random_density({2}, 2, rng), b = random_density({2}, 2, rng);
    Eigen::Vector3d ra = bloch_vector(a.mat), rb = bloch_vector(b.mat);
    double closed =
        0.5 * (1 + ra.dot(rb) + std::sqrt((1 - ra.squaredNorm()) * (1 - rb.squaredNorm())));
    CHECK_THAT(fidelity(a, b), WithinAbs(closed, 1e-10));
  }
  CHECK_THROWS_AS(fidelity(random_density({2}, 2, rng), random_density({3}, 2, rng)), Error);
}

TEST_CASE("permute reorders factors", "[matcore]") {
  std::mt19937_64 rng(8);
  auto a = random_density({2}, 2, rng), b = random_density({3}, 3, rng);
  DensityMatrix ab{{2, 3}, kron(a.mat, b.mat)};
  auto ba = permute(ab, {1, 0});
  CHECK(ba.dims == Dims{3, 2});
  CHECK(max_abs(ba.mat - kron(b.mat, a.mat)) < 1e-14);
}
