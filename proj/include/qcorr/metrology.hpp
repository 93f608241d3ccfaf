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

#include <Eigen/Eigenvalues>
#include <functional>

#include "qcorr/entropy.hpp"

namespace qcorr {

inline Mat expm_hermitian(const Mat& h, double t) {
  auto ed = eigh(h);
  Vec ph(ed.values.size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph[i] = std::exp(cplx(0, -t * ed.values[i]));
  return ed.vectors * ph.asDiagonal() * ed.vectors.adjoint();
}

/**
 * θ ↦ ρ(θ).  Unitary mode: one parameter, ρ(θ) = e^{-iθH} ρ₀ e^{iθH}.
 * Evaluator mode: any map, differentiated by central differences.
 */
struct ParametricFamily {
  enum class Mode { unitary, evaluator };
  Mode mode = Mode::evaluator;
  Mat H;
  DensityMatrix rho0;
  std::function<DensityMatrix(const std::vector<double>&)> eval;
  std::vector<double> theta0;
  double h = 1e-4;

  static ParametricFamily unitary(const DensityMatrix& rho0, const Mat& H, double theta0) {
    ParametricFamily f;
    f.mode = Mode::unitary;
    f.H = H;
    f.rho0 = rho0;
    f.theta0 = {theta0};
    f.eval = [rho0, H](const std::vector<double>& th) {
      Mat u = expm_hermitian(H, th[0]);
      return DensityMatrix{rho0.dims, u * rho0.mat * u.adjoint()};
    };
    return f;
  }

  static ParametricFamily evaluator(std::function<DensityMatrix(const std::vector<double>&)> fn,
                                    std::vector<double> theta0, double h = 1e-4) {
    ParametricFamily f;
    f.eval = std::move(fn);
    f.theta0 = std::move(theta0);
    f.h = h;
    return f;
  }

  int n_params() const { return static_cast<int>(theta0.size()); }
  DensityMatrix at() const { return eval(theta0); }
};

namespace detail {
inline Mat central_difference(const ParametricFamily& f, int k, double h) {
  auto tp = f.theta0, tm = f.theta0;
  tp[k] += h;
  tm[k] -= h;
  return (f.eval(tp).mat - f.eval(tm).mat) / (2 * h);
}
}  // namespace detail

/** ∂ρ/∂θ_k at θ₀; exact -i[H,ρ] in unitary mode. */
inline Mat d_rho(const ParametricFamily& f, int k) {
  if (k < 0 || k >= f.n_params()) throw Error("InvalidParams", "parameter index out of range");
  if (f.mode == ParametricFamily::Mode::unitary) {
    Mat r = f.at().mat;
    return cplx(0, -1) * (f.H * r - r * f.H);
  }
  Mat d1 = detail::central_difference(f, k, f.h);
  Mat d2 = detail::central_difference(f, k, f.h / 2);
  double gap = (d1 - d2).norm();
  if (gap > 1e-5) {
    std::ostringstream os;
    os << "step h vs h/2 disagreement " << gap;
    throw Error("StepTooLarge", os.str());
  }
  return 0.5 * (d1 + d1.adjoint());
}

/** L_ij = 2⟨i|∂ρ|j⟩/(λ_i+λ_j) in the eigenbasis of ρ, zero when λ_i+λ_j ≤ 1e-12. */
inline Mat sld(const Mat& rho, const Mat& drho) {
  auto ed = eigh(rho);
  Mat dp = ed.vectors.adjoint() * drho * ed.vectors;
  int n = static_cast<int>(rho.rows());
  Mat l = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double den = ed.values[i] + ed.values[j];
      if (den > 1e-12) l(i, j) = 2.0 * dp(i, j) / den;
    }
  l = ed.vectors * l * ed.vectors.adjoint();
  return 0.5 * (l + l.adjoint());
}

/** 2 Σ |⟨i|∂ρ|j⟩|²/(λ_i+λ_j). */
inline double qfi(const Mat& rho, const Mat& drho) {
  auto ed = eigh(rho);
  Mat dp = ed.vectors.adjoint() * drho * ed.vectors;
  double f = 0;
  for (Eigen::Index i = 0; i < dp.rows(); ++i)
    for (Eigen::Index j = 0; j < dp.cols(); ++j) {
      double den = ed.values[i] + ed.values[j];
      if (den > 1e-12) f += 2.0 * std::norm(dp(i, j)) / den;
    }
  return f;
}

/** Tr(L²ρ) via the SLD. */
inline double qfi_via_sld(const Mat& rho, const Mat& drho) {
  Mat l = sld(rho, drho);
  return (l * l * rho).trace().real();
}

inline double qfi_pure_unitary(const PureState& psi, const Mat& H) {
  cplx m1 = psi.amp.dot(H * psi.amp);
  cplx m2 = psi.amp.dot(H * H * psi.amp);
  return 4.0 * (m2.real() - m1.real() * m1.real());
}

/** F_μν = ½ Tr(ρ{L_μ, L_ν}). */
inline RMat qfim(const Mat& rho, const std::vector<Mat>& drhos) {
  int n = static_cast<int>(drhos.size());
  std::vector<Mat> l(n);
  for (int k = 0; k < n; ++k) l[k] = sld(rho, drhos[k]);
  RMat f(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) f(a, b) = f(b, a) = 0.5 * (rho * (l[a] * l[b] + l[b] * l[a])).trace().real();
  return f;
}

inline std::vector<Mat> d_rhos(const ParametricFamily& fam) {
  std::vector<Mat> d;
  for (int k = 0; k < fam.n_params(); ++k) d.push_back(d_rho(fam, k));
  return d;
}

inline RMat qfim(const ParametricFamily& fam) { return qfim(fam.at().mat, d_rhos(fam)); }

/** 2 vec(∂_μρ)† (ρ̄⊗1 + 1⊗ρ)⁺ vec(∂_νρ) with column-stacking vec. */
inline RMat qfim_vectorized(const Mat& rho, const std::vector<Mat>& drhos) {
  int d = static_cast<int>(rho.rows());
  Mat id = Mat::Identity(d, d);
  Mat big = kron(rho.conjugate(), id) + kron(id, rho);
  auto ed = eigh(big);
  Vec inv(ed.values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv[i] = ed.values[i] > 1e-12 ? 1.0 / ed.values[i] : 0.0;
  Mat pinv = ed.vectors * inv.asDiagonal() * ed.vectors.adjoint();
  int n = static_cast<int>(drhos.size());
  std::vector<Vec> v(n);
  for (int k = 0; k < n; ++k) v[k] = Eigen::Map<const Vec>(drhos[k].data(), d * d);
  RMat f(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) f(a, b) = f(b, a) = 2.0 * v[a].dot(pinv * v[b]).real();
  return f;
}

/** Single-qubit Bloch form; for |r| = 1 only the ∂r·∂r term is kept. */
inline RMat qfim_bloch_qubit(const Eigen::Vector3d& r, const std::vector<Eigen::Vector3d>& dr) {
  double rr = r.squaredNorm();
  if (rr > 1 + 1e-10) throw Error("BlochOutOfBall", "Bloch vector longer than 1");
  bool pure = std::abs(rr - 1) <= 1e-10;
  int n = static_cast<int>(dr.size());
  RMat f(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double v = dr[a].dot(dr[b]);
      if (!pure) v += r.dot(dr[a]) * r.dot(dr[b]) / (1 - rr);
      f(a, b) = f(b, a) = v;
    }
  return f;
}

inline Eigen::Vector3d bloch_vector(const Mat& rho) {
  Eigen::Vector3d r;
  for (int i = 0; i < 3; ++i) r[i] = (rho * pauli(i + 1)).trace().real();
  return r;
}

/**
 * X-state QFIM as the sum of the two 2x2 block contributions, ρ = ρ⁽⁰⁾ ⊕ ρ⁽¹⁾
 * on {|00⟩,|11⟩} and {|01⟩,|10⟩}, each block diagonalized in closed form.
 */
inline RMat qfim_xstate_block(const Mat& rho, const std::vector<Mat>& drhos) {
  if (!is_x_shaped(rho)) throw Error("InvalidParams", "state is not X shaped");
  for (const auto& d : drhos)
    if (!is_x_shaped(d, 1e-10)) throw Error("InvalidParams", "derivative is not X shaped");
  int n = static_cast<int>(drhos.size());
  RMat f = RMat::Zero(n, n);
  const int idx[2][2] = {{0, 3}, {1, 2}};
  for (const auto& bi : idx) {
    auto sub = [&](const Mat& m) {
      Eigen::Matrix2cd b;
      b << m(bi[0], bi[0]), m(bi[0], bi[1]), m(bi[1], bi[0]), m(bi[1], bi[1]);
      return b;
    };
    Eigen::Matrix2cd b = sub(rho);
    double tr = b.trace().real();
    double det = (b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0)).real();
    double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
    double lam[2] = {0.5 * (tr + disc), 0.5 * (tr - disc)};
    Eigen::Matrix2cd vecs;
    cplx c = b(1, 0);  // Tr(ρ⁽ⁱ⁾σ₊)
    if (std::abs(c) < 1e-300) {
      bool first_big = b(0, 0).real() >= b(1, 1).real();
      vecs << (first_big ? 1 : 0), (first_big ? 0 : 1), (first_big ? 0 : 1), (first_big ? 1 : 0);
    } else {
      double z = (b(0, 0) - b(1, 1)).real();  // Tr(ρ⁽ⁱ⁾σ_z)
      for (int k = 0; k < 2; ++k) {
        double sgn = k == 0 ? 1 : -1;
        Eigen::Vector2cd v((z + sgn * disc) / (2.0 * c), 1.0);
        vecs.col(k) = v.normalized();
      }
    }
    std::vector<Eigen::Matrix2cd> dp;
    for (const auto& d : drhos) dp.push_back(vecs.adjoint() * sub(d) * vecs);
    for (int a = 0; a < n; ++a)
      for (int bb = a; bb < n; ++bb) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            double den = lam[i] + lam[j];
            if (den > 1e-12) s += 2.0 * (dp[a](i, j) * dp[bb](j, i)).real() / den;
          }
        f(a, bb) += s;
        if (bb != a) f(bb, a) += s;
      }
  }
  return f;
}

// ----------------------------------------------- classical Fisher information

inline void check_povm(const std::vector<Mat>& povm, int d) {
  Mat s = Mat::Zero(d, d);
  for (const auto& e : povm) {
    if (e.rows() != d || !is_hermitian(e) || eigvalsh(e)[0] < -1e-10)
      throw Error("InvalidPOVM", "effect is not a PSD operator of the right size");
    s += e;
  }
  if ((s - Mat::Identity(d, d)).norm() > 1e-10) throw Error("InvalidPOVM", "effects do not sum to identity");
}

/** Σ_x (∂_k p_x)²/p_x per parameter, p_x = Tr(ρ Π_x); p_x < 1e-14 dropped. */
inline std::vector<double> cfi(const Mat& rho, const std::vector<Mat>& drhos, const std::vector<Mat>& povm) {
  check_povm(povm, static_cast<int>(rho.rows()));
  std::vector<double> out;
  for (const auto& d : drhos) {
    double f = 0;
    for (const auto& e : povm) {
      double p = (rho * e).trace().real();
      double dp = (d * e).trace().real();
      if (p >= 1e-14) f += dp * dp / p;
    }
    out.push_back(f);
  }
  return out;
}

inline std::vector<double> cfi(const ParametricFamily& fam, const std::vector<Mat>& povm) {
  return cfi(fam.at().mat, d_rhos(fam), povm);
}

/** Projectors onto the SLD eigenvectors. */
inline std::vector<Mat> sld_eigenbasis_povm(const Mat& l) {
  auto ed = eigh(l);
  std::vector<Mat> p;
  for (Eigen::Index i = 0; i < ed.vectors.cols(); ++i) p.push_back(ed.vectors.col(i) * ed.vectors.col(i).adjoint());
  return p;
}

inline double cramer_rao(double F, long n_trials) {
  if (!(F > 0)) throw Error("NonpositiveFisher", "Fisher information must be positive");
  if (n_trials < 1) throw Error("InvalidParams", "need at least one trial");
  return 1.0 / (static_cast<double>(n_trials) * F);
}

/** ½ Σ_k σ_z^{(k)} on n qubits. */
inline Mat collective_sz(int n) {
  int dim = 1 << n;
  Mat h = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int ones = __builtin_popcount(static_cast<unsigned>(i));
    h(i, i) = 0.5 * (n - 2.0 * ones);
  }
  return h;
}

}  // namespace qcorr
