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

#include "qcorr/discord.hpp"

namespace qcorr {

/** Orthonormal reference basis stored as the columns of a unitary. */
struct ReferenceBasis {
  Mat U;

  static ReferenceBasis computational(int d) { return {Mat::Identity(d, d)}; }
};

namespace detail {
inline Mat in_basis(const Mat& rho, const ReferenceBasis& b) {
  if (b.U.rows() != rho.rows()) throw Error("DimMismatch", "basis size differs from state size");
  if ((b.U.adjoint() * b.U - Mat::Identity(b.U.cols(), b.U.cols())).norm() > 1e-10)
    throw Error("NonUnitary", "reference basis is not orthonormal");
  return b.U.adjoint() * rho * b.U;
}
}  // namespace detail

inline double c_rel_entropy(const Mat& rho, const ReferenceBasis& b) {
  Mat r = detail::in_basis(rho, b);
  RVec p = r.diagonal().real();
  return std::max(0.0, shannon(p) - von_neumann(r));
}
inline double c_rel_entropy(const Mat& rho) { return c_rel_entropy(rho, ReferenceBasis::computational(rho.rows())); }

inline double c_l1(const Mat& rho, const ReferenceBasis& b) {
  Mat r = detail::in_basis(rho, b);
  return r.cwiseAbs().sum() - r.diagonal().cwiseAbs().sum();
}
inline double c_l1(const Mat& rho) { return c_l1(rho, ReferenceBasis::computational(rho.rows())); }

struct Complementarity {
  double lhs = 0;
  bool holds = true;
};

/** C_l1²/(d-1)² + M_l ≤ 1. */
inline Complementarity complementarity_check(const Mat& rho) {
  double d = static_cast<double>(rho.rows());
  double c = c_l1(rho);
  Complementarity out;
  out.lhs = c * c / ((d - 1) * (d - 1)) + normalized_mixedness(rho);
  out.holds = out.lhs <= 1 + 1e-9;
  return out;
}

/** 1 - (√2/2)√(1 + √(1 - r_x² - r_y²)). */
inline double c_geometric_qubit(const Mat& rho) {
  if (rho.rows() != 2) throw Error("DimMismatch", "closed-form geometric coherence is for qubits");
  double rx = 2 * rho(0, 1).real(), ry = -2 * rho(0, 1).imag();
  double inner = std::sqrt(std::max(0.0, 1 - rx * rx - ry * ry));
  return 1 - std::sqrt(0.5) * std::sqrt(1 + inner);
}

/**
 * 1 - √(max over incoherent σ of F(ρ,σ)).  Simplex grid of the given resolution
 * (d ≤ 3 exhaustive, otherwise random), then pairwise mass-transfer refinement.
 */
inline double c_geometric_numeric(const Mat& rho, const ReferenceBasis& b, int grid = 200) {
  Mat r = detail::in_basis(rho, b);
  int d = static_cast<int>(r.rows());
  Mat sr = msqrt(r);
  auto fid = [&](const RVec& q) {
    Mat m = sr * q.cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal();
    double t = trace_norm(m);
    return t * t;
  };
  RVec best_q = RVec::Constant(d, 1.0 / d);
  double best = fid(best_q);
  auto consider = [&](const RVec& q) {
    double v = fid(q);
    if (v > best) {
      best = v;
      best_q = q;
    }
  };
  if (d == 2) {
    for (int i = 0; i <= grid; ++i) consider((RVec(2) << double(i) / grid, 1 - double(i) / grid).finished());
  } else if (d == 3) {
    int g = std::min(grid, 60);
    for (int i = 0; i <= g; ++i)
      for (int j = 0; i + j <= g; ++j)
        consider((RVec(3) << double(i) / g, double(j) / g, double(g - i - j) / g).finished());
  } else {
    std::mt19937_64 rng(12345);
    std::exponential_distribution<double> e(1.0);
    for (int k = 0; k < grid * 10; ++k) {
      RVec q(d);
      for (int i = 0; i < d; ++i) q[i] = e(rng);
      consider(q / q.sum());
    }
  }
  double step = 1.0 / grid;
  for (int it = 0; it < 40; ++it) {
    bool improved = false;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        RVec q = best_q;
        double t = std::min(step, q[j]);
        if (t <= 0) continue;
        q[i] += t;
        q[j] -= t;
        double v = fid(q);
        if (v > best) {
          best = v;
          best_q = q;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
    if (step < 1e-12) break;
  }
  return 1 - std::sqrt(std::clamp(best, 0.0, 1.0));
}

/** Trace coherence 2(d-1)|α| of the state with diagonal 1/d and all off-diagonals α. */
inline double c_trace_uniform(int d, cplx alpha) {
  Mat m = Mat::Constant(d, d, alpha);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = std::conj(alpha);
  if (eigvalsh(m)[0] < -tol.psd) throw Error("InvalidParams", "uniform-coherence matrix is not PSD");
  return 2.0 * (d - 1) * std::abs(alpha);
}

/** Σ_{j<k} |⟨ψ|U_jk|ψ*⟩| with U_jk the symmetric su(d) generators. */
inline double coherence_concurrence_pure(const PureState& psi) {
  int d = static_cast<int>(psi.amp.size());
  if (d < 2) return 0;
  auto gens = su_generators(d);
  int nu = d * (d - 1) / 2;
  Vec conj = psi.amp.conjugate();
  double s = 0;
  for (int k = 0; k < nu; ++k) s += std::abs(psi.amp.dot(gens[k] * conj));
  return s;
}

/** C_r(ρ_AB) - C_r(ρ_A) - C_r(ρ_B) in the computational product basis. */
inline double correlated_coherence(const DensityMatrix& rho) {
  if (rho.dims.size() != 2) throw Error("DimMismatch", "correlated coherence needs a bipartite state");
  return c_rel_entropy(rho.mat) - c_rel_entropy(partial_trace(rho.mat, rho.dims, {0})) -
         c_rel_entropy(partial_trace(rho.mat, rho.dims, {1}));
}

struct Consumption {
  double lhs = 0;  // C^cc(ρ) - C^cc(Π_B ρ)
  double rhs = 0;  // discord for the computational-basis measurement on B
  double optimized = 0;  // discord optimized over measurements on B
};

inline Consumption discord_consumption(const DensityMatrix& rho) {
  require_dims(rho, {2, 2}, "discord_consumption");
  Mat pb = Mat::Zero(4, 4);
  for (int b = 0; b < 2; ++b) {
    Mat proj = Mat::Zero(2, 2);
    proj(b, b) = 1;
    Mat k = kron(Mat::Identity(2, 2), proj);
    pb += k * rho.mat * k;
  }
  Consumption c;
  c.lhs = correlated_coherence(rho) - correlated_coherence({rho.dims, pb});
  // I(ρ) - I(Π_B ρ) is the σ_z-measurement discord on B
  c.rhs = mutual_information(rho) - mutual_information({rho.dims, pb});
  c.optimized = discord_numeric(rho, Side::B).quantum;
  return c;
}

struct UncertaintyGap {
  double U = 0, L = 0, gap = 0;
};

/**
 * U = S(P|B) + S(Q|B) on the states dephased in the eigenbases of P and Q;
 * L = -log2 c + S(A|B) + max{0, Q_A - J_A} with c = max |⟨p_i|q_j⟩|²
 * (equivalently -2 log2 of the largest overlap), discord measured on A.
 */
inline UncertaintyGap entropic_uncertainty_gap(const DensityMatrix& rho, const Mat& P, const Mat& Q,
                                               int grid_n = 64) {
  require_dims(rho, {2, 2}, "entropic_uncertainty_gap");
  auto nondeg = [](const Mat& o) {
    RVec e = eigvalsh(o);
    for (Eigen::Index i = 1; i < e.size(); ++i)
      if (e[i] - e[i - 1] < 1e-9) throw Error("DegenerateObservable", "observable spectrum is degenerate");
  };
  nondeg(P);
  nondeg(Q);
  auto ep = eigh(P), eq = eigh(Q);
  auto cond_after = [&](const Mat& basis) {
    Mat out = Mat::Zero(4, 4);
    for (int k = 0; k < 2; ++k) {
      Mat proj = basis.col(k) * basis.col(k).adjoint();
      Mat kk = kron(proj, Mat::Identity(2, 2));
      out += kk * rho.mat * kk;
    }
    return conditional_entropy({rho.dims, out}, 1);
  };
  UncertaintyGap g;
  g.U = cond_after(ep.vectors) + cond_after(eq.vectors);
  double c = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c = std::max(c, std::norm(ep.vectors.col(i).dot(eq.vectors.col(j))));
  auto dA = discord_numeric(rho, Side::A, grid_n);
  g.L = -std::log2(c) + conditional_entropy(rho, 1) + std::max(0.0, dA.quantum - dA.classical);
  g.gap = g.U - g.L;
  return g;
}

}  // namespace qcorr
