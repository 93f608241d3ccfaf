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

#include "qcorr/entropy.hpp"

namespace qcorr {

struct EntanglementReport {
  std::string measure;
  double value = 0;
  std::vector<double> witnesses;
};

/** Wootters concurrence. */
inline double concurrence_2q(const DensityMatrix& rho) {
  require_dims(rho, {2, 2}, "concurrence_2q");
  Mat yy = kron(pauli(2), pauli(2));
  Mat tilde = yy * rho.mat.conjugate() * yy;
  Mat s = msqrt(rho.mat);
  Mat r = s * tilde * s;
  RVec lam = eigvalsh(0.5 * (r + r.adjoint()));
  double floor = 64 * std::numeric_limits<double>::epsilon() * lam.cwiseAbs().maxCoeff();
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = lam[i] > floor ? std::sqrt(lam[i]) : 0.0;
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double concurrence_x(const XStateParams& x) {
  require_valid_x(x);
  double a = std::abs(x.a14) - std::sqrt(x.d2 * x.d3);
  double b = std::abs(x.a23) - std::sqrt(x.d1 * x.d4);
  return 2.0 * std::max({0.0, a, b});
}

/** √(2(1 - Tr ρ_A²)) for the first `cut` factors. */
inline double concurrence_pure(const PureState& psi, int cut) {
  auto s = schmidt(psi, cut);
  double p = s.coefficients.array().square().sum();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

inline double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_h(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double eof_2q(const DensityMatrix& rho) { return eof_from_concurrence(concurrence_2q(rho)); }

inline double entanglement_entropy(const PureState& psi, int cut) {
  return shannon(schmidt(psi, cut).coefficients);
}

inline RVec pt_spectrum(const DensityMatrix& rho, int subsystem) {
  return eigvalsh(partial_transpose(rho.mat, rho.dims, subsystem));
}

/** Sum of |negative eigenvalues| of ρ^{T_subsystem}. */
inline double negativity(const DensityMatrix& rho, int subsystem) {
  RVec lam = pt_spectrum(rho, subsystem);
  double n = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] < 0) n -= lam[i];
  return n;
}

inline double log_negativity(const DensityMatrix& rho, int subsystem) {
  return std::log2(2.0 * negativity(rho, subsystem) + 1.0);
}

inline double tripartite_negativity(const DensityMatrix& rho) {
  require_dims(rho, {2, 2, 2}, "tripartite_negativity");
  double p = negativity(rho, 0) * negativity(rho, 1) * negativity(rho, 2);
  return std::cbrt(p);
}

struct PptReport {
  bool ppt = true;
  double min_eigenvalue = 0;
};

inline PptReport is_ppt(const DensityMatrix& rho, int subsystem) {
  if (rho.dims.size() < 2) throw Error("DimMismatch", "PPT test needs at least two factors");
  double m = pt_spectrum(rho, subsystem)[0];
  return {m >= -tol.psd, m};
}

/** Squared concurrence of factor k against the rest, for a pure state. */
inline double concurrence_sq_one_vs_rest(const PureState& psi, int k) {
  Mat rk = partial_trace(psi.amp * psi.amp.adjoint(), psi.dims, {k});
  return std::max(0.0, 2.0 * (1.0 - purity(rk)));
}

struct Tangle {
  double value = 0;  // max over labelings
  std::array<double, 3> by_focus{};
};

/** τ = C²_{i|jk} - C²_{ij} - C²_{ik}, reported for each focus qubit i. */
inline Tangle tangle_3q(const PureState& psi) {
  if (psi.dims != Dims{2, 2, 2}) throw Error("DimMismatch", "tangle_3q needs three qubits");
  DensityMatrix rho = to_density(psi);
  double pair[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double c = concurrence_2q(partial_trace(rho, {i, j}));
      pair[i][j] = pair[j][i] = c * c;
    }
  Tangle t;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    t.by_focus[i] = concurrence_sq_one_vs_rest(psi, i) - pair[i][j] - pair[i][k];
  }
  t.value = *std::max_element(t.by_focus.begin(), t.by_focus.end());
  return t;
}

}  // namespace qcorr
