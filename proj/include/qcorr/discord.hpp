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

#include "qcorr/entanglement.hpp"
#include "qcorr/uncertainty.hpp"

namespace qcorr {

enum class Side { A = 0, B = 1 };

struct DiscordResult {
  double quantum = 0;
  double classical = 0;
  double total = 0;
  Side measured_side = Side::B;
  std::string method;
};

// ------------------------------------------------------------ X states

/** Entropic discord of an X state, measurement on B, two candidate angles. */
inline DiscordResult discord_x(const XStateParams& x) {
  require_valid_x(x);
  double r11 = x.d1, r22 = x.d2, r33 = x.d3, r44 = x.d4;
  double a14 = std::abs(x.a14), a23 = std::abs(x.a23);
  double e1 = std::sqrt((r11 - r44) * (r11 - r44) + 4 * a14 * a14);
  double e3 = std::sqrt((r22 - r33) * (r22 - r33) + 4 * a23 * a23);
  std::array<double, 4> eta{0.5 * (r11 + r44 + e1), 0.5 * (r11 + r44 - e1),
                            0.5 * (r22 + r33 + e3), 0.5 * (r22 + r33 - e3)};
  double s_ab = 0;
  for (double v : eta) s_ab += xlog2x_neg(std::max(0.0, v));
  double s_b = binary_h(r11 + r33);
  double s_a = binary_h(r11 + r22);
  double g = std::sqrt((1 - 2 * (r33 + r44)) * (1 - 2 * (r33 + r44)) + 4 * (a14 + a23) * (a14 + a23));
  double zeta1 = binary_h(std::clamp(0.5 * (1 + g), 0.0, 1.0));
  double zeta2 = xlog2x_neg(r11) + xlog2x_neg(r22) + xlog2x_neg(r33) + xlog2x_neg(r44) - s_b;
  double zeta = std::min(zeta1, zeta2);
  DiscordResult r;
  r.total = s_a + s_b - s_ab;
  r.quantum = s_b - s_ab + zeta;
  r.classical = s_a - zeta;
  r.measured_side = Side::B;
  r.method = "x_closed";
  return r;
}

// ------------------------------------------------------ numeric optimizer

namespace detail {

/** Conditional entropy Σ p± S(ρ_A|±) for projectors (1 ± n·σ)/2 on the last qubit. */
struct CondEntropy {
  int d;
  std::array<std::array<Mat, 2>, 2> blk;  // blk[b][b'] = <b|ρ|b'> on the measured qubit

  CondEntropy(const Mat& rho, int dother) : d(dother) {
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        Mat m(d, d);
        for (int a = 0; a < d; ++a)
          for (int ap = 0; ap < d; ++ap) m(a, ap) = rho(a * 2 + b, ap * 2 + bp);
        blk[b][bp] = m;
      }
  }

  static double entropy_unnormalized(const Mat& s, double p) {
    if (p <= 1e-15) return 0;
    if (s.rows() == 2) {
      double a = s(0, 0).real() / p, b = s(1, 1).real() / p;
      double c = std::abs(s(0, 1)) / p;
      double disc = std::sqrt(std::max(0.0, (a - b) * (a - b) + 4 * c * c));
      return xlog2x_neg(std::max(0.0, 0.5 * (a + b + disc))) + xlog2x_neg(std::max(0.0, 0.5 * (a + b - disc)));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(s / p, Eigen::EigenvaluesOnly);
    double h = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) h += xlog2x_neg(std::max(0.0, es.eigenvalues()[i]));
    return h;
  }

  double operator()(double theta, double phi) const {
    double nx = std::sin(theta) * std::cos(phi), ny = std::sin(theta) * std::sin(phi), nz = std::cos(theta);
    double h = 0;
    for (int sgn : {1, -1}) {
      // Π = (1 + s n·σ)/2; σ_A = Σ_{b,b'} Π_{b'b} blk[b][b']
      cplx p00 = 0.5 * (1 + sgn * nz), p11 = 0.5 * (1 - sgn * nz);
      cplx p01 = 0.5 * sgn * cplx(nx, -ny), p10 = 0.5 * sgn * cplx(nx, ny);
      Mat s = p00 * blk[0][0] + p11 * blk[1][1] + p10 * blk[0][1] + p01 * blk[1][0];
      double p = s.trace().real();
      h += p * entropy_unnormalized(s, p);
    }
    return h;
  }
};

}  // namespace detail

/**
 * Entropic discord with a projective measurement on the qubit `measured`,
 * optimized over the Bloch sphere by a (θ,φ) grid followed by pattern-search
 * refinement with step halving.
 */
inline DiscordResult discord_numeric(const DensityMatrix& rho, Side measured, int grid_n = 64,
                                     int refine_iters = 20) {
  if (rho.dims.size() != 2) throw Error("DimMismatch", "discord needs a bipartite state");
  int m = static_cast<int>(measured);
  if (rho.dims[m] != 2) throw Error("DimMismatch", "measured side must be a qubit");
  if (grid_n < 2) throw Error("InvalidParams", "grid_n must be at least 2");
  DensityMatrix r = m == 1 ? rho : permute(rho, {1, 0});
  int d = r.dims[0];
  detail::CondEntropy f(r.mat, d);
  double best = std::numeric_limits<double>::infinity(), bt = 0, bp = 0;
  for (int i = 0; i < grid_n; ++i) {
    double th = M_PI * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      double ph = 2 * M_PI * j / grid_n;
      double v = f(th, ph);
      if (v < best) {
        best = v;
        bt = th;
        bp = ph;
      }
    }
  }
  double st = M_PI / (grid_n - 1), sp = 2 * M_PI / grid_n;
  for (int it = 0; it < refine_iters; ++it) {
    for (int moves = 0; moves < 8; ++moves) {
      double nt = bt, np = bp, nv = best;
      for (auto [dt, dp] : {std::pair{st, 0.0}, {-st, 0.0}, {0.0, sp}, {0.0, -sp}}) {
        double v = f(bt + dt, bp + dp);
        if (v < nv) {
          nv = v;
          nt = bt + dt;
          np = bp + dp;
        }
      }
      if (nv >= best) break;
      best = nv;
      bt = nt;
      bp = np;
    }
    st *= 0.5;
    sp *= 0.5;
  }
  DiscordResult out;
  double s_a = von_neumann(partial_trace(r, {0}));
  double s_b = von_neumann(partial_trace(r, {1}));
  out.total = s_a + s_b - von_neumann(r);
  out.classical = s_a - best;
  out.quantum = out.total - out.classical;
  out.measured_side = measured;
  out.method = "numeric";
  return out;
}

// ---------------------------------------------- linear classical correlation

struct LinearCorrelation {
  double J2 = 0;
  RMat L;
};

namespace detail {

/** Symmetric purification matrix V = Σ √λ φ φᵀ of a qubit state. */
inline Mat symmetric_purification(const Mat& rho_b) {
  auto ed = eigh(rho_b);
  Mat v = Mat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    v += std::sqrt(std::max(0.0, ed.values[i])) * ed.vectors.col(i) * ed.vectors.col(i).transpose();
  return v;
}

inline double s2_qubit(const Mat& rho_b) { return 2.0 * (1.0 - purity(rho_b)); }

}  // namespace detail

/**
 * Rebuilds the channel Λ with ρ = (Λ⊗1)|v⟩⟨v| from the four blocks
 * β_{nn'} = ⟨n|ρ|n'⟩_B and returns J₂ = λ_max(LᵀL) S₂(ρ_B),
 * L_kj = Tr(Λ(σ_j) σ_k)/2.
 */
inline LinearCorrelation classical_corr_linear_qubitqubit(const DensityMatrix& rho) {
  require_dims(rho, {2, 2}, "classical_corr_linear_qubitqubit");
  Mat rb = partial_trace(rho.mat, rho.dims, {1});
  Mat v = detail::symmetric_purification(rb);
  Mat c(4, 4);
  for (int n = 0; n < 2; ++n)
    for (int np = 0; np < 2; ++np)
      for (int m = 0; m < 2; ++m)
        for (int mp = 0; mp < 2; ++mp) c(n * 2 + np, m * 2 + mp) = v(m, n) * std::conj(v(mp, np));
  Eigen::JacobiSVD<Mat> svd(c);
  double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
  double cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    std::ostringstream os;
    os << "block system condition number " << cond;
    throw Error("SingularPurification", os.str());
  }
  // rhs columns: entries (a,a') of β_{nn'}
  Mat rhs(4, 4);
  for (int n = 0; n < 2; ++n)
    for (int np = 0; np < 2; ++np)
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) rhs(n * 2 + np, a * 2 + ap) = rho.mat(a * 2 + n, ap * 2 + np);
  Mat sol = c.fullPivLu().solve(rhs);
  auto lambda_of = [&](int m, int mp) {
    Mat x(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap) x(a, ap) = sol(m * 2 + mp, a * 2 + ap);
    return x;
  };
  LinearCorrelation out;
  out.L = RMat(3, 3);
  for (int j = 0; j < 3; ++j) {
    Mat sj = pauli(j + 1);
    Mat img = Mat::Zero(2, 2);
    for (int m = 0; m < 2; ++m)
      for (int mp = 0; mp < 2; ++mp) img += sj(m, mp) * lambda_of(m, mp);
    for (int k = 0; k < 3; ++k) out.L(k, j) = 0.5 * (img * pauli(k + 1)).trace().real();
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(out.L.transpose() * out.L, Eigen::EigenvaluesOnly);
  out.J2 = es.eigenvalues()[2] * detail::s2_qubit(rb);
  return out;
}

/**
 * Fano-Bloch route for d x 2 states: 𝓛 = (2/d)(𝓡ᵀ)⁻¹Rᵀ, where 𝓡 is the
 * correlation tensor of the symmetric purification of ρ_B.  Returns L with
 * L_{jδ} = (d/4) Tr(Λ(σ^j) γ^δ), shape 3 × (d²-1), and J₂ = (4/d²) λ_max(LᵀL) S₂(ρ_B).
 */
inline LinearCorrelation classical_corr_linear_quditqubit(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[1] != 2)
    throw Error("DimMismatch", "classical_corr_linear_quditqubit needs a d x 2 state");
  int d = rho.dims[0];
  RMat R = fano_bloch(rho);
  Mat rb = partial_trace(rho.mat, rho.dims, {1});
  Mat v = detail::symmetric_purification(rb);
  Vec vv(4);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) vv[m * 2 + n] = v(m, n);
  Mat pbb = vv * vv.adjoint();
  Eigen::Matrix4d calR;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) calR(a, b) = real_trace(pbb * kron(pauli(a), pauli(b)));
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(calR);
  double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
  double cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    std::ostringstream os;
    os << "purification tensor condition number " << cond;
    throw Error("SingularR", os.str());
  }
  RMat calL = (2.0 / d) * calR.transpose().fullPivLu().solve(R.transpose());
  LinearCorrelation out;
  out.L = RMat(3, d * d - 1);
  for (int j = 1; j <= 3; ++j)
    for (int del = 1; del < d * d; ++del) out.L(j - 1, del - 1) = 0.5 * d * calL(j, del);
  Eigen::SelfAdjointEigenSolver<RMat> es(out.L * out.L.transpose(), Eigen::EigenvaluesOnly);
  out.J2 = 4.0 / (d * d) * es.eigenvalues()[2] * detail::s2_qubit(rb);
  return out;
}

/** I(ρ) - J₂_B(ρ). */
inline double linear_discord(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[1] != 2) throw Error("DimMismatch", "linear_discord needs a d x 2 state");
  double j2 = rho.dims[0] == 2 ? classical_corr_linear_qubitqubit(rho).J2
                               : classical_corr_linear_quditqubit(rho).J2;
  return mutual_information(rho) - j2;
}

// -------------------------------------------------------------- rank two

inline double g_of(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return binary_h(0.5 * (1 + std::sqrt(1 - x)));
}

/** S(ρ_B) - S(ρ) + g(S₂(ρ_A) - J₂_B), with the roles of A and B swapped when measuring A. */
inline double discord_rank2(const DensityMatrix& rho, Side measured = Side::B) {
  require_dims(rho, {2, 2}, "discord_rank2");
  RVec lam = eigvalsh(rho.mat);
  if (lam[1] >= 1e-9) {
    std::ostringstream os;
    os << "third eigenvalue " << lam[1];
    throw Error("RankTooHigh", os.str());
  }
  DensityMatrix r = measured == Side::B ? rho : permute(rho, {1, 0});
  Mat ra = partial_trace(r.mat, r.dims, {0});
  Mat rb = partial_trace(r.mat, r.dims, {1});
  if (eigvalsh(rb)[0] < 1e-12) return 0.0;
  double j2 = classical_corr_linear_qubitqubit(r).J2;
  return von_neumann(rb) - von_neumann(r) + g_of(detail::s2_qubit(ra) - j2);
}

// ----------------------------------------------------- geometric discords

/** ¼(‖x‖² + ‖T‖² - λ_max(xxᵀ + TTᵀ)); x is the Bloch vector of A. */
inline double geometric_discord_hs(const DensityMatrix& rho) {
  auto b = bloch_decompose(rho);
  Eigen::Matrix3d k = b.x * b.x.transpose() + b.T * b.T.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k, Eigen::EigenvaluesOnly);
  return 0.25 * (b.x.squaredNorm() + b.T.squaredNorm() - es.eigenvalues()[2]);
}

namespace detail {
inline std::array<double, 3> sorted_abs(const BellDiagonalParams& c) {
  std::array<double, 3> a{std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
  std::sort(a.begin(), a.end());
  return a;
}
}  // namespace detail

inline double geometric_discord_hs_bd(const BellDiagonalParams& c) {
  auto a = detail::sorted_abs(c);
  return 0.25 * (a[0] * a[0] + a[1] * a[1]);
}

inline double trace_discord_bd(const BellDiagonalParams& c) { return detail::sorted_abs(c)[1]; }

/** Entropic discord of a Bell-diagonal state. */
inline double discord_bd(const BellDiagonalParams& c) {
  auto lam = bell_diagonal_eigenvalues(c);
  double cp = detail::sorted_abs(c)[2];
  double s = 2;  // log2 4
  for (double l : lam) s -= xlog2x_neg(std::max(0.0, l));
  s -= 0.5 * ((1 - cp) * (1 - cp > 0 ? std::log2(1 - cp) : 0) + (1 + cp) * std::log2(1 + cp));
  return s;
}

namespace detail {
/** Trace-distance discord formula on canonical (real, nonnegative) anti-diagonals. */
inline double trace_discord_x_formula(const XStateParams& x) {
  double r14 = std::abs(x.a14), r23 = std::abs(x.a23);
  double g1 = 2 * (r23 + r14), g2 = 2 * (r23 - r14);
  double g3 = 1 - 2 * (x.d2 + x.d3), x3 = 2 * (x.d1 + x.d2) - 1;
  double g1s = g1 * g1, g2s = g2 * g2, g3s = g3 * g3;
  double a = std::max(g3s, g2s + x3 * x3);
  double b = std::min(g3s, g1s);
  double den = a - b + g1s - g2s;
  if (den < 1e-14) return std::abs(g1);
  return std::sqrt(std::max(0.0, (g1s * a - g2s * b) / den));
}
}  // namespace detail

/** Trace-distance discord of an X state; phases of ρ14, ρ23 are first removed by local diagonal unitaries. */
inline double trace_discord_x(const XStateParams& x) {
  require_valid_x(x);
  return detail::trace_discord_x_formula(x);
}

// ------------------------------------------------ Koashi-Winter, conservation

/** |E_f(ρ_AB) + J(ρ_BE measured on E) - S(ρ_B)| for a three-qubit pure state. */
inline double koashi_winter_residual(const PureState& psi, int grid_n = 64, int refine_iters = 20) {
  if (psi.dims != Dims{2, 2, 2}) throw Error("DimMismatch", "koashi_winter_residual needs three qubits");
  DensityMatrix rho = to_density(psi);
  double ef = eof_2q(partial_trace(rho, {0, 1}));
  double j = discord_numeric(partial_trace(rho, {1, 2}), Side::B, grid_n, refine_iters).classical;
  double sb = von_neumann(partial_trace(rho, {1}));
  return std::abs(ef + j - sb);
}

struct ConservationResidual {
  double central = 0;
  double cyclic = 0;
};

/**
 * Q_{X|Y} is the discord of ρ_XY with the measurement on Y.
 * central: |E_AB + E_AC - Q_{A|B} - Q_{A|C}|
 * cyclic:  |E_AB + E_BC + E_CA - Q_{B|A} - Q_{C|B} - Q_{A|C}|
 */
inline ConservationResidual conservation_3q_residual(const PureState& psi, int grid_n = 64,
                                                     int refine_iters = 20) {
  if (psi.dims != Dims{2, 2, 2}) throw Error("DimMismatch", "conservation_3q_residual needs three qubits");
  DensityMatrix rho = to_density(psi);
  auto pair = [&](int x, int y) {
    // ρ_XY with X first
    DensityMatrix r = partial_trace(rho, {x, y});
    return x < y ? r : permute(r, {1, 0});
  };
  auto e = [&](int x, int y) { return eof_2q(pair(x, y)); };
  auto q = [&](int x, int y) { return discord_numeric(pair(x, y), Side::B, grid_n, refine_iters).quantum; };
  ConservationResidual r;
  r.central = std::abs(e(0, 1) + e(0, 2) - q(0, 1) - q(0, 2));
  r.cyclic = std::abs(e(0, 1) + e(1, 2) + e(2, 0) - q(1, 0) - q(2, 1) - q(0, 2));
  return r;
}

// -------------------------------------------------------------- monogamy

enum class MonogamyMeasure { lqu, negativity_sq, concurrence_sq };

/** δ = Q_{pivot|rest} - Σ_i Q_{pivot,i} over the other qubits. */
inline double monogamy_delta(const DensityMatrix& rho, MonogamyMeasure measure, int pivot) {
  int n = static_cast<int>(rho.dims.size());
  if (n < 3) throw Error("UnsupportedCut", "monogamy needs at least three qubits");
  for (int d : rho.dims)
    if (d != 2) throw Error("UnsupportedCut", "monogamy is defined here for qubits only");
  detail::check_subsystem(pivot, rho.dims);
  auto pair_state = [&](int i) {
    DensityMatrix r = partial_trace(rho, {pivot, i});
    return pivot < i ? r : permute(r, {1, 0});
  };
  double whole = 0, parts = 0;
  switch (measure) {
    case MonogamyMeasure::concurrence_sq: {
      if (std::abs(purity(rho.mat) - 1) > 1e-9)
        throw Error("UnsupportedCut", "one-vs-rest concurrence needs a pure state");
      Mat rk = partial_trace(rho.mat, rho.dims, {pivot});
      whole = std::max(0.0, 2 * (1 - purity(rk)));
      for (int i = 0; i < n; ++i)
        if (i != pivot) {
          double c = concurrence_2q(pair_state(i));
          parts += c * c;
        }
      break;
    }
    case MonogamyMeasure::negativity_sq: {
      double w = negativity(rho, pivot);
      whole = w * w;
      for (int i = 0; i < n; ++i)
        if (i != pivot) {
          double v = negativity(pair_state(i), 0);
          parts += v * v;
        }
      break;
    }
    case MonogamyMeasure::lqu: {
      whole = lqu_2xd(one_vs_rest(rho, pivot)).value;
      for (int i = 0; i < n; ++i)
        if (i != pivot) parts += lqu_2xd(pair_state(i)).value;
      break;
    }
  }
  return whole - parts;
}

}  // namespace qcorr
