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


#pragma once

#include <catch_amalgamated.hpp>

#include "qcorr/registry.hpp"

namespace qcorr::test {

using Catch::Matchers::WithinAbs;

inline double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

inline Mat random_hermitian(int d, std::mt19937_64& rng) {
  Mat a = random_gaussian(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

/** Characteristic polynomial coefficients (monic, highest first) by Faddeev-LeVerrier. */
inline std::vector<cplx> charpoly(const Mat& a) {
  int n = static_cast<int>(a.rows());
  std::vector<cplx> c(n + 1);
  c[0] = 1;
  Mat m = Mat::Zero(n, n);
  Mat id = Mat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * id;
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

/** All roots of a monic polynomial by Durand-Kerner iteration, sorted by real part. */
inline std::vector<double> polynomial_real_roots(const std::vector<cplx>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), i);
  auto eval = [&](cplx x) {
    cplx v = 0;
    for (const auto& ci : c) v = v * x + ci;
    return v;
  };
  for (int it = 0; it < 2000; ++it) {
    for (int i = 0; i < n; ++i) {
      cplx den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(z[i]) / den;
    }
  }
  std::vector<double> r;
  for (auto v : z) r.push_back(v.real());
  std::sort(r.begin(), r.end());
  return r;
}

inline Mat bloch_qubit(double x, double y, double z) {
  return 0.5 * (pauli(0) + x * pauli(1) + y * pauli(2) + z * pauli(3));
}

}  // namespace qcorr::test
