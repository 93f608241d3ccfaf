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

/** Wigner-Yanase-Dyson skew information; alpha = 1/2 is the Wigner-Yanase case. */
inline double skew_information(const Mat& rho, const Mat& k, double alpha = 0.5) {
  if (rho.rows() != k.rows() || k.rows() != k.cols())
    throw Error("DimMismatch", "observable and state sizes differ");
  if (alpha <= 0 || alpha >= 1) throw Error("DomainError", "alpha must lie in (0,1)");
  Mat ra, rb;
  if (alpha == 0.5) {
    ra = rb = msqrt(rho);
  } else {
    ra = matrix_function(rho, [alpha](double x) { return std::pow(x, alpha); }, true);
    rb = matrix_function(rho, [alpha](double x) { return std::pow(x, 1 - alpha); }, true);
  }
  return (rho * k * k).trace().real() - (ra * k * rb * k).trace().real();
}

inline double skew_information(const DensityMatrix& rho, const Mat& k, double alpha = 0.5) {
  return skew_information(rho.mat, k, alpha);
}

struct LquResult {
  double value = 0;
  Eigen::Matrix3d W;
};

inline void require_qubit_first(const DensityMatrix& rho, const char* op) {
  if (rho.dims.size() != 2 || rho.dims[0] != 2 || rho.dim() != dims_product(rho.dims))
    throw Error("DimMismatch", std::string(op) + " needs a 2 x d state");
}

/** 1 - λ_max(W), W_ij = Tr(√ρ σ_i⊗1 √ρ σ_j⊗1). */
inline LquResult lqu_2xd(const DensityMatrix& rho) {
  require_qubit_first(rho, "lqu_2xd");
  int d = rho.dims[1];
  Mat s = msqrt(rho.mat);
  Mat id = Mat::Identity(d, d);
  std::array<Mat, 3> sig;
  for (int i = 0; i < 3; ++i) sig[i] = kron(pauli(i + 1), id);
  std::array<Mat, 3> a;
  for (int i = 0; i < 3; ++i) a[i] = s * sig[i] * s;
  LquResult r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) r.W(i, j) = r.W(j, i) = (a[i] * sig[j]).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(r.W, Eigen::EigenvaluesOnly);
  r.value = std::clamp(1.0 - es.eigenvalues()[2], 0.0, 1.0);
  return r;
}

struct LquAverage {
  double avg = 0;
  std::vector<double> per_cut;
};

/** Moves factor k to the front and groups the rest: dims [dk, Π others]. */
inline DensityMatrix one_vs_rest(const DensityMatrix& rho, int k) {
  std::vector<int> perm{k};
  for (int j = 0; j < static_cast<int>(rho.dims.size()); ++j)
    if (j != k) perm.push_back(j);
  auto p = permute(rho, perm);
  int rest = rho.dim() / rho.dims[k];
  return {{rho.dims[k], rest}, p.mat};
}

inline LquAverage lqu_multiqubit_avg(const DensityMatrix& rho) {
  int n = static_cast<int>(rho.dims.size());
  if (n < 2 || n > 5) throw Error("DimMismatch", "lqu_multiqubit_avg needs 2..5 qubits");
  for (int d : rho.dims)
    if (d != 2) throw Error("DimMismatch", "lqu_multiqubit_avg needs qubit factors");
  LquAverage out;
  for (int k = 0; k < n; ++k) out.per_cut.push_back(lqu_2xd(one_vs_rest(rho, k)).value);
  out.avg = std::accumulate(out.per_cut.begin(), out.per_cut.end(), 0.0) / n;
  return out;
}

/** 2/d1 - ξ_max(Ŵ) with Ŵ_ij = Tr(√ρ λ_i √ρ λ_j) - Σ_k g_ijk P_k. */
inline double lqu_d1xd2(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[0] < 2) throw Error("DimMismatch", "lqu_d1xd2 needs a d1 x d2 state");
  int d1 = rho.dims[0], d2 = rho.dims[1];
  auto gens = su_generators(d1);
  int m = static_cast<int>(gens.size());
  Mat s = msqrt(rho.mat);
  Mat id = Mat::Identity(d2, d2);
  std::vector<Mat> lifted(m), a(m);
  for (int i = 0; i < m; ++i) {
    lifted[i] = kron(gens[i], id);
    a[i] = s * lifted[i] * s;
  }
  Mat rho_a = partial_trace(rho.mat, rho.dims, {0});
  RVec p(m);
  for (int k = 0; k < m; ++k) p[k] = (rho_a * gens[k]).trace().real();
  RMat w(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Mat anti = gens[i] * gens[j] + gens[j] * gens[i];
      double gp = 0;
      for (int k = 0; k < m; ++k) gp += 0.25 * (anti * gens[k]).trace().real() * p[k];
      w(i, j) = w(j, i) = (a[i] * lifted[j]).trace().real() - gp;
    }
  Eigen::SelfAdjointEigenSolver<RMat> es(w, Eigen::EigenvaluesOnly);
  return 2.0 / d1 - es.eigenvalues()[m - 1];
}

// ------------------------------------------------- separable X-state search

/** √ρ entries for a real nonnegative X state: Γ1..Γ4 diagonal, Γ5 = (1,4), Γ6 = (2,3). */
inline std::array<double, 6> x_sqrt_gammas(const XStateParams& x) {
  auto block = [](double a, double b, double c) {
    double det = std::sqrt(std::max(0.0, a * b - c * c));
    double t = std::sqrt(a + b + 2 * det);
    if (t == 0) return std::array<double, 3>{0, 0, 0};
    return std::array<double, 3>{(a + det) / t, (b + det) / t, c / t};
  };
  auto o = block(x.d1, x.d4, x.a14.real());
  auto i = block(x.d2, x.d3, x.a23.real());
  return {o[0], i[0], i[1], o[1], o[2], i[2]};
}

/** LQU of a real nonnegative X state from the branch formulas in the Γ's. */
inline double lqu_x_gamma(const XStateParams& x) {
  auto g = x_sqrt_gammas(x);
  double xi1 = 2 * (g[0] * g[2] + g[1] * g[3] + 2 * g[4] * g[5]);
  double all = 0;
  for (double v : g) all += v * v;
  double xi3 = all - 3 * (g[4] * g[4] + g[5] * g[5]);
  if (xi1 >= xi3)
    return (g[0] - g[2]) * (g[0] - g[2]) + (g[1] - g[3]) * (g[1] - g[3]) +
           2 * (g[4] - g[5]) * (g[4] - g[5]);
  return 4 * (g[4] * g[4] + g[5] * g[5]);
}

inline bool separable_x_feasible(const XStateParams& x) {
  double lim = std::min(std::sqrt(x.d1 * x.d4), std::sqrt(x.d2 * x.d3));
  return x.d1 >= 0 && x.d2 >= 0 && x.d3 >= 0 && x.d4 >= 0 &&
         std::abs(x.d1 + x.d2 + x.d3 + x.d4 - 1) < 1e-12 && x.a14.real() >= 0 &&
         x.a23.real() >= 0 && x.a14.real() <= lim + 1e-15 && x.a23.real() <= lim + 1e-15;
}

struct SeparableXSearch {
  double value = 0;
  XStateParams argmax;
  long evaluations = 0;
  double max_branch_gap = 0;  // |Γ-branch LQU - lqu_2xd| over all evaluations
  bool all_feasible = true;
};

/**
 * Multi-start projected random local search.  The evaluation sequence depends
 * only on the seed, so a larger budget extends a smaller one.
 */
inline SeparableXSearch max_lqu_separable_x(long budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> g;
  auto project = [](std::array<double, 6> v) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += (v[i] = std::max(v[i], 1e-9));
    for (int i = 0; i < 4; ++i) v[i] /= s;
    double lim = std::min(std::sqrt(v[0] * v[3]), std::sqrt(v[1] * v[2]));
    v[4] = std::clamp(v[4], 0.0, lim);
    v[5] = std::clamp(v[5], 0.0, lim);
    return v;
  };
  auto to_x = [](const std::array<double, 6>& v) {
    return XStateParams{v[0], v[1], v[2], v[3], cplx(v[4]), cplx(v[5])};
  };
  SeparableXSearch out;
  out.value = -1;
  const long per_start = 400;
  std::array<double, 6> cur{};
  double cur_val = -1, step = 0;
  for (long e = 0; e < budget; ++e) {
    std::array<double, 6> cand{};
    if (e % per_start == 0) {
      for (auto& c : cand) c = u(rng);
      cand[4] *= 0.5;
      cand[5] *= 0.5;
      cur_val = -1;
      step = 0.1;
    } else {
      cand = cur;
      for (auto& c : cand) c += step * g(rng);
    }
    cand = project(cand);
    auto x = to_x(cand);
    double v = lqu_2xd(x_state(x)).value;
    double gap = std::abs(v - lqu_x_gamma(x));
    out.max_branch_gap = std::max(out.max_branch_gap, gap);
    out.all_feasible = out.all_feasible && separable_x_feasible(x);
    ++out.evaluations;
    if (v > cur_val) {
      cur_val = v;
      cur = cand;
    } else {
      step = std::max(step * 0.97, 1e-6);
    }
    if (v > out.value) {
      out.value = v;
      out.argmax = x;
    }
  }
  return out;
}

// ------------------------------------------------------------------- LQFI

struct LqfiResult {
  double value = 0;
  Eigen::Matrix3d M;
};

/**
 * 1 - λ_max(M) with M_lk = Σ_{p_i+p_j>0} 2 p_i p_j/(p_i+p_j) Re⟨i|σ_l|j⟩⟨j|σ_k|i⟩.
 * Diagonal (i = j) terms are part of the sum.
 */
inline LqfiResult lqfi(const DensityMatrix& rho) {
  require_qubit_first(rho, "lqfi");
  int d = rho.dims[1];
  auto ed = eigh(rho.mat);
  int n = rho.dim();
  Mat id = Mat::Identity(d, d);
  std::array<Mat, 3> s;
  for (int l = 0; l < 3; ++l) s[l] = ed.vectors.adjoint() * kron(pauli(l + 1), id) * ed.vectors;
  RVec p = ed.values.cwiseMax(0.0);
  LqfiResult r;
  Eigen::Matrix3cd mc = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double den = p[i] + p[j];
      if (den <= 1e-12) continue;
      double w = 2 * p[i] * p[j] / den;
      if (w == 0) continue;
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) mc(l, k) += w * s[l](i, j) * s[k](j, i);
    }
  if ((mc - mc.adjoint()).norm() > 1e-10 || mc.imag().norm() > 1e-10)
    throw Error("NonHermitian", "LQFI M matrix has a non-negligible imaginary part");
  r.M = 0.5 * (mc.real() + mc.real().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(r.M, Eigen::EigenvaluesOnly);
  r.value = std::clamp(1.0 - es.eigenvalues()[2], 0.0, 1.0);
  return r;
}

struct CrBounds {
  double inv_u = 0, inv_qf = 0;
  bool zero_correlation = false;
};

inline CrBounds cr_bounds_from_correlations(const DensityMatrix& rho) {
  double u = lqu_2xd(rho).value;
  double q = lqfi(rho).value;
  CrBounds b;
  if (u <= 1e-12 && q <= 1e-12) {
    b.zero_correlation = true;
    b.inv_u = b.inv_qf = std::numeric_limits<double>::infinity();
    return b;
  }
  b.inv_u = u > 1e-12 ? 1.0 / u : std::numeric_limits<double>::infinity();
  b.inv_qf = q > 1e-12 ? 1.0 / q : std::numeric_limits<double>::infinity();
  return b;
}

}  // namespace qcorr
