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

#include <limits>

#include "qcorr/states.hpp"

namespace qcorr {

/** -x log2 x with 0 log 0 = 0. */
inline double xlog2x_neg(double x) { return x > 0 ? -x * std::log2(x) : 0.0; }

template <class Range>
double shannon(const Range& p) {
  double s = 0;
  for (double x : p) {
    if (x < -tol.psd) throw Error("DomainError", "negative probability");
    s += xlog2x_neg(x);
  }
  return s;
}

inline double shannon(const RVec& p) {
  return shannon(std::vector<double>(p.data(), p.data() + p.size()));
}

inline double binary_h(double x) {
  if (x < -1e-12 || x > 1 + 1e-12) throw Error("DomainError", "binary entropy argument outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  return xlog2x_neg(x) + xlog2x_neg(1 - x);
}

inline RVec clamped_spectrum(const Mat& rho) {
  RVec lam = eigvalsh(rho);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -tol.psd) throw Error("DomainError", "negative eigenvalue in entropy");
    lam[i] = std::max(0.0, lam[i]);
  }
  return lam;
}

inline double von_neumann(const Mat& rho) { return shannon(clamped_spectrum(rho)); }
inline double von_neumann(const DensityMatrix& rho) { return von_neumann(rho.mat); }

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

/** S₂(ρ) = 2(1 - Tr ρ²). */
inline double linear_entropy(const Mat& rho) { return 2.0 * (1.0 - purity(rho)); }
inline double linear_entropy(const DensityMatrix& rho) { return linear_entropy(rho.mat); }

inline double normalized_mixedness(const Mat& rho) {
  double d = static_cast<double>(rho.rows());
  return d / (d - 1.0) * (1.0 - purity(rho));
}
inline double normalized_mixedness(const DensityMatrix& rho) { return normalized_mixedness(rho.mat); }

inline double renyi(const Mat& rho, double alpha) {
  if (alpha <= 0 || alpha == 1) throw Error("DomainError", "Renyi order must be positive and not 1");
  RVec lam = clamped_spectrum(rho);
  double s = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > 0) s += std::pow(lam[i], alpha);
  return std::log2(s) / (1.0 - alpha);
}
inline double renyi(const DensityMatrix& rho, double alpha) { return renyi(rho.mat, alpha); }

/** S(ρ‖σ); +inf when supp ρ is not inside supp σ. */
inline double relative_entropy(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw Error("DimMismatch", "relative entropy operands differ in size");
  auto es = eigh(sigma);
  double cross = 0;
  Mat rs = es.vectors.adjoint() * rho * es.vectors;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double w = rs(i, i).real();
    if (es.values[i] <= tol.rank) {
      if (w > 1e-12) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= w * std::log2(es.values[i]);
  }
  return std::max(0.0, cross - von_neumann(rho));
}
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims != sigma.dims) throw Error("DimMismatch", "relative entropy operands differ in dims");
  return relative_entropy(rho.mat, sigma.mat);
}

inline double mutual_information(const DensityMatrix& rho) {
  if (rho.dims.size() != 2) throw Error("DimMismatch", "mutual information needs a bipartite state");
  return von_neumann(partial_trace(rho, {0})) + von_neumann(partial_trace(rho, {1})) - von_neumann(rho);
}

/** S(ρ_AB) - S(ρ_conditioned_on). */
inline double conditional_entropy(const DensityMatrix& rho, int conditioned_on) {
  if (rho.dims.size() != 2) throw Error("DimMismatch", "conditional entropy needs a bipartite state");
  return von_neumann(rho) - von_neumann(partial_trace(rho, {conditioned_on}));
}

}  // namespace qcorr
