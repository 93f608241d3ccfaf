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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Dims = std::vector<int>;

/** Shared numerical tolerances. */
struct Tolerances {
  double hermitian = 1e-10;
  double psd = 1e-10;
  double trace = 1e-10;
  double rank = 1e-12;
};
inline constexpr Tolerances tol{};

/** Library error carrying a machine-readable code such as "DimMismatch". */
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/** Density matrix with its tensor-factor dimensions (index 0 is leftmost). */
struct DensityMatrix {
  Dims dims;
  Mat mat;

  int dim() const { return static_cast<int>(mat.rows()); }
};

inline int dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

struct EigenDecomposition {
  RVec values;  // ascending
  Mat vectors;  // columns
};

inline bool is_hermitian(const Mat& h, double rel = tol.hermitian) {
  if (h.rows() != h.cols()) return false;
  double scale = std::max(1.0, h.norm());
  return (h - h.adjoint()).norm() <= rel * scale;
}

inline EigenDecomposition eigh(const Mat& h) {
  if (!is_hermitian(h)) {
    std::ostringstream os;
    os << "asymmetry " << (h - h.adjoint()).norm();
    throw Error("NonHermitian", os.str());
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

inline RVec eigvalsh(const Mat& h) { return eigh(h).values; }

/**
 * V f(Λ) V† for Hermitian h.  With clamp_negative, eigenvalues below the
 * solver noise floor 64ε·max|λ| (and down to -tol.psd) are set to zero;
 * anything lower is a DomainError.
 */
template <class F>
Mat matrix_function(const Mat& h, F&& f, bool clamp_negative) {
  auto ed = eigh(h);
  RVec lam = ed.values;
  if (clamp_negative) {
    double floor = 64 * std::numeric_limits<double>::epsilon() * lam.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam[i] < -tol.psd) {
        std::ostringstream os;
        os << "eigenvalue " << lam[i] << " below " << -tol.psd;
        throw Error("DomainError", os.str());
      }
      if (lam[i] < floor) lam[i] = 0;
    }
  }
  Vec fl(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) fl[i] = f(lam[i]);
  return ed.vectors * fl.asDiagonal() * ed.vectors.adjoint();
}

inline Mat msqrt(const Mat& h) {
  return matrix_function(h, [](double x) { return std::sqrt(x); }, true);
}

template <class A, class B>
Mat kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          cplx(a(i, j)) * b.template cast<cplx>();
  return out;
}

inline Mat kron_all(const std::vector<Mat>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

namespace detail {

inline std::vector<int> digits(int idx, const Dims& dims) {
  std::vector<int> d(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = idx % dims[k];
    idx /= dims[k];
  }
  return d;
}

inline int undigits(const std::vector<int>& d, const Dims& dims) {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + d[k];
  return idx;
}

inline void check_subsystem(int s, const Dims& dims) {
  if (s < 0 || s >= static_cast<int>(dims.size()))
    throw Error("BadSubsystem", "index " + std::to_string(s) + " outside " +
                                    std::to_string(dims.size()) + " factors");
}

inline void check_dims(const Mat& m, const Dims& dims) {
  if (m.rows() != m.cols() || m.rows() != dims_product(dims))
    throw Error("DimMismatch", "matrix size " + std::to_string(m.rows()) +
                                   " vs dims product " +
                                   std::to_string(dims_product(dims)));
}

}  // namespace detail

/** Reduced matrix on the factors in keep (kept in their original order). */
inline Mat partial_trace(const Mat& rho, const Dims& dims, std::vector<int> keep) {
  detail::check_dims(rho, dims);
  if (keep.empty()) throw Error("BadSubsystem", "empty keep set");
  for (int k : keep) detail::check_subsystem(k, dims);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  Dims kd, td;
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) kept[k] = true;
  for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? kd : td).push_back(dims[k]);
  int nk = dims_product(kd), nt = dims_product(td);
  Mat out = Mat::Zero(nk, nk);
  std::vector<int> full(dims.size());
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& t) {
    std::size_t ia = 0, it = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) full[k] = kept[k] ? a[ia++] : t[it++];
    return detail::undigits(full, dims);
  };
  for (int i = 0; i < nk; ++i) {
    auto di = detail::digits(i, kd);
    for (int j = 0; j < nk; ++j) {
      auto dj = detail::digits(j, kd);
      cplx s = 0;
      for (int t = 0; t < nt; ++t) {
        auto dt = detail::digits(t, td);
        int r = compose(di, dt);
        int c = compose(dj, dt);
        s += rho(r, c);
      }
      out(i, j) = s;
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  Mat m = partial_trace(rho.mat, rho.dims, keep);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  Dims kd;
  for (int k : keep) kd.push_back(rho.dims[k]);
  return {kd, m};
}

inline Mat partial_transpose(const Mat& rho, const Dims& dims, int subsystem) {
  detail::check_dims(rho, dims);
  detail::check_subsystem(subsystem, dims);
  int n = dims_product(dims);
  Mat out(n, n);
  for (int r = 0; r < n; ++r) {
    auto dr = detail::digits(r, dims);
    for (int c = 0; c < n; ++c) {
      auto dc = detail::digits(c, dims);
      std::swap(dr[subsystem], dc[subsystem]);
      out(detail::undigits(dr, dims), detail::undigits(dc, dims)) = rho(r, c);
      std::swap(dr[subsystem], dc[subsystem]);
    }
  }
  return out;
}

/** Reorder tensor factors: new factor k is old factor perm[k]. */
inline DensityMatrix permute(const DensityMatrix& rho, const std::vector<int>& perm) {
  detail::check_dims(rho.mat, rho.dims);
  if (perm.size() != rho.dims.size()) throw Error("BadSubsystem", "permutation length");
  Dims nd(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    detail::check_subsystem(perm[k], rho.dims);
    nd[k] = rho.dims[perm[k]];
  }
  int n = rho.dim();
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) {
    auto d = detail::digits(i, rho.dims);
    std::vector<int> e(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) e[k] = d[perm[k]];
    map[i] = detail::undigits(e, nd);
  }
  Mat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(map[r], map[c]) = rho.mat(r, c);
  return {nd, out};
}

inline double trace_norm(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("DimMismatch", "trace norm needs a square matrix");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

/** Uhlmann fidelity ‖√ρ√σ‖₁², clipped to [0,1]. */
inline double fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error("DimMismatch", "fidelity of differently sized states");
  double f = trace_norm(msqrt(rho) * msqrt(sigma));
  return std::clamp(f * f, 0.0, 1.0);
}

inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims != sigma.dims) throw Error("DimMismatch", "fidelity of differently factored states");
  return fidelity(rho.mat, sigma.mat);
}

/** Paulis: index 0 is the identity. */
inline Mat pauli(int i) {
  Mat m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw Error("InvalidParams", "pauli index " + std::to_string(i));
  }
  return m;
}

inline double real_trace(const Mat& m) { return m.trace().real(); }

}  // namespace qcorr
