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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>

#include "qcorr/matcore.hpp"

namespace qcorr {

struct PureState {
  Dims dims;
  Vec amp;
};

inline DensityMatrix to_density(const PureState& psi) {
  return {psi.dims, psi.amp * psi.amp.adjoint()};
}

/** Two-qubit X state: diagonals d1..d4, anti-diagonals ρ14 and ρ23. */
struct XStateParams {
  double d1 = 0, d2 = 0, d3 = 0, d4 = 0;
  cplx a14 = 0, a23 = 0;
};

struct BellDiagonalParams {
  double c1 = 0, c2 = 0, c3 = 0;
};

struct BlochTriple {
  Eigen::Vector3d x, y;
  Eigen::Matrix3d T;
};

struct Schmidt {
  RVec coefficients;  // squared weights, descending
  Mat left, right;    // columns
  int rank = 0;
};

// ---------------------------------------------------------------- validation

struct Validation {
  bool ok = true;
  std::vector<std::string> violations;
  double min_eigenvalue = 0;
};

inline Validation validate(const Mat& m, const Dims& dims) {
  Validation v;
  if (m.rows() != m.cols() || m.rows() != dims_product(dims)) {
    v.ok = false;
    v.violations.push_back("shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + " does not match dims product " +
                           std::to_string(dims_product(dims)));
    return v;
  }
  if (!m.allFinite()) {
    v.ok = false;
    v.violations.push_back("non-finite entries");
    return v;
  }
  std::ostringstream os;
  double asym = (m - m.adjoint()).norm();
  if (asym > tol.hermitian * std::max(1.0, m.norm())) {
    v.ok = false;
    os << "not Hermitian (asymmetry " << asym << ")";
    v.violations.push_back(os.str());
    os.str("");
  }
  double tr_err = std::abs(m.trace() - cplx(1.0));
  if (tr_err > tol.trace) {
    v.ok = false;
    os << "trace differs from 1 by " << tr_err;
    v.violations.push_back(os.str());
    os.str("");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  v.min_eigenvalue = es.eigenvalues()[0];
  if (v.min_eigenvalue < -tol.psd) {
    v.ok = false;
    os << "negative eigenvalue " << v.min_eigenvalue;
    v.violations.push_back(os.str());
  }
  return v;
}

inline DensityMatrix require_valid(const Mat& m, const Dims& dims) {
  auto v = validate(m, dims);
  if (!v.ok) {
    std::string msg;
    for (const auto& s : v.violations) msg += (msg.empty() ? "" : "; ") + s;
    throw Error("InvalidState", msg);
  }
  return {dims, m};
}

inline void require_dims(const DensityMatrix& rho, const Dims& want, const char* op) {
  if (rho.dims != want || rho.dim() != dims_product(want))
    throw Error("DimMismatch", std::string(op) + " needs different subsystem dimensions");
}

// ------------------------------------------------------------- constructors

inline PureState ket(const std::vector<cplx>& amps, const Dims& dims) {
  Vec v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) v[i] = amps[i];
  return {dims, v.normalized()};
}

inline PureState computational_ket(const std::vector<int>& basis, const Dims& dims) {
  if (basis.size() != dims.size()) throw Error("InvalidParams", "basis label length");
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (basis[k] < 0 || basis[k] >= dims[k]) throw Error("InvalidParams", "basis label out of range");
  Vec v = Vec::Zero(dims_product(dims));
  v[detail::undigits(basis, dims)] = 1;
  return {dims, v};
}

inline PureState bell_ket(const std::string& which) {
  const double s = 1.0 / std::sqrt(2.0);
  if (which == "phi_plus") return {{2, 2}, (Vec(4) << s, 0, 0, s).finished()};
  if (which == "phi_minus") return {{2, 2}, (Vec(4) << s, 0, 0, -s).finished()};
  if (which == "psi_plus") return {{2, 2}, (Vec(4) << 0, s, s, 0).finished()};
  if (which == "psi_minus") return {{2, 2}, (Vec(4) << 0, s, -s, 0).finished()};
  throw Error("InvalidParams", "unknown Bell state " + which);
}

inline PureState ghz_ket(int n) {
  if (n < 2) throw Error("InvalidParams", "ghz needs n >= 2");
  Dims dims(n, 2);
  Vec v = Vec::Zero(1 << n);
  v[0] = v[(1 << n) - 1] = 1.0 / std::sqrt(2.0);
  return {dims, v};
}

inline PureState w_ket(int n) {
  Dims dims(n, 2);
  Vec v = Vec::Zero(1 << n);
  for (int k = 0; k < n; ++k) v[1 << k] = 1.0 / std::sqrt(double(n));
  return {dims, v};
}

inline std::array<double, 4> bell_diagonal_eigenvalues(const BellDiagonalParams& c) {
  std::array<double, 4> lam{};
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double si = i ? -1 : 1, sij = (i + j) % 2 ? -1 : 1, sj = j ? -1 : 1;
      lam[k++] = 0.25 * (1 + si * c.c1 - sij * c.c2 + sj * c.c3);
    }
  return lam;
}

/** ¼(1 + Σ cᵢ σᵢ⊗σᵢ) without positivity checks. */
inline Mat bell_diagonal_matrix(const BellDiagonalParams& c) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 3) = (1 + c.c3) / 4;
  m(1, 1) = m(2, 2) = (1 - c.c3) / 4;
  m(0, 3) = m(3, 0) = (c.c1 - c.c2) / 4;
  m(1, 2) = m(2, 1) = (c.c1 + c.c2) / 4;
  return m;
}

inline DensityMatrix bell_diagonal(const BellDiagonalParams& c) {
  for (double ci : {c.c1, c.c2, c.c3})
    if (std::abs(ci) > 1) throw Error("InvalidParams", "correlation coefficient outside [-1,1]");
  auto lam = bell_diagonal_eigenvalues(c);
  for (double l : lam)
    if (l < -1e-12) {
      std::ostringstream os;
      os << "Bell-diagonal weight " << l << " is negative";
      throw Error("InvalidParams", os.str());
    }
  return {{2, 2}, bell_diagonal_matrix(c)};
}

inline Mat x_matrix(const XStateParams& x) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = x.d1;
  m(1, 1) = x.d2;
  m(2, 2) = x.d3;
  m(3, 3) = x.d4;
  m(0, 3) = x.a14;
  m(3, 0) = std::conj(x.a14);
  m(1, 2) = x.a23;
  m(2, 1) = std::conj(x.a23);
  return m;
}

inline std::vector<std::string> x_violations(const XStateParams& x) {
  std::vector<std::string> out;
  for (double d : {x.d1, x.d2, x.d3, x.d4})
    if (d < -tol.psd) out.push_back("negative diagonal");
  if (std::abs(x.d1 + x.d2 + x.d3 + x.d4 - 1) > tol.trace) out.push_back("diagonals do not sum to 1");
  if (std::abs(x.a14) > std::sqrt(std::max(0.0, x.d1 * x.d4)) + 1e-12)
    out.push_back("|a14| exceeds sqrt(d1 d4)");
  if (std::abs(x.a23) > std::sqrt(std::max(0.0, x.d2 * x.d3)) + 1e-12)
    out.push_back("|a23| exceeds sqrt(d2 d3)");
  return out;
}

inline void require_valid_x(const XStateParams& x) {
  auto v = x_violations(x);
  if (!v.empty()) throw Error("InvalidParams", v.front());
}

inline DensityMatrix x_state(const XStateParams& x) {
  require_valid_x(x);
  return {{2, 2}, x_matrix(x)};
}

/** Reads the X entries of a two-qubit matrix; other entries are ignored. */
inline XStateParams x_params(const Mat& m) {
  return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(0, 3), m(1, 2)};
}

inline bool is_x_shaped(const Mat& m, double eps = 1e-12) {
  if (m.rows() != 4 || m.cols() != 4) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(m(i, j)) > eps) return false;
  return true;
}

/** ρ_H(p) = p|ψ⁺⟩⟨ψ⁺| + (1-p)|00⟩⟨00|, with ψ⁺ = (|01⟩+|10⟩)/√2. */
inline DensityMatrix horodecki(double p) {
  if (p < 0 || p > 1) throw Error("InvalidParams", "p outside [0,1]");
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1 - p;
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = p / 2;
  return {{2, 2}, m};
}

/** One-parameter family with (2-x)/6 on |00⟩,|11⟩, (1+x)/6 on |01⟩,|10⟩ and 1/6 coherences. */
inline DensityMatrix rho_x_family(double x) {
  if (x < 0 || x > 1) throw Error("InvalidParams", "x outside [0,1]");
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 3) = (2 - x) / 6;
  m(1, 1) = m(2, 2) = (1 + x) / 6;
  m(1, 2) = m(2, 1) = 1.0 / 6;
  return {{2, 2}, m};
}

/**
 * Named presets.  Parameter lists: bell_diagonal(c1,c2,c3), x_state(x),
 * horodecki(p), ghz(n), computational(b0..bk ; dims given separately).
 */
inline DensityMatrix preset(const std::string& name, const std::vector<double>& params = {},
                            const Dims& dims = {}) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw Error("InvalidParams", name + " expects " + std::to_string(n) + " parameter(s)");
  };
  if (name == "bell_phi_plus") return to_density(bell_ket("phi_plus"));
  if (name == "bell_phi_minus") return to_density(bell_ket("phi_minus"));
  if (name == "bell_psi_plus") return to_density(bell_ket("psi_plus"));
  if (name == "bell_psi_minus") return to_density(bell_ket("psi_minus"));
  if (name == "bell_diagonal") {
    need(3);
    return bell_diagonal({params[0], params[1], params[2]});
  }
  if (name == "x_state") {
    need(1);
    return rho_x_family(params[0]);
  }
  if (name == "horodecki") {
    need(1);
    return horodecki(params[0]);
  }
  if (name == "ghz") {
    if (params.size() > 1) throw Error("InvalidParams", "ghz expects at most 1 parameter");
    int n = params.empty() ? 3 : static_cast<int>(params[0]);
    if (params.size() == 1 && (params[0] != n || n < 2 || n > 6))
      throw Error("InvalidParams", "ghz size must be an integer in [2,6]");
    return to_density(ghz_ket(n));
  }
  if (name == "plus_state") {
    const double s = 1.0 / std::sqrt(2.0);
    return to_density({{2}, (Vec(2) << s, s).finished()});
  }
  if (name == "computational") {
    Dims d = dims.empty() ? Dims(params.size(), 2) : dims;
    std::vector<int> b;
    for (double p : params) {
      if (p != std::floor(p)) throw Error("InvalidParams", "basis labels must be integers");
      b.push_back(static_cast<int>(p));
    }
    return to_density(computational_ket(b, d));
  }
  throw Error("InvalidParams", "unknown preset " + name);
}

// ----------------------------------------------------------- representations

inline BlochTriple bloch_decompose(const DensityMatrix& rho) {
  require_dims(rho, {2, 2}, "bloch_decompose");
  BlochTriple b;
  Mat id = Mat::Identity(2, 2);
  for (int i = 0; i < 3; ++i) {
    b.x[i] = real_trace(rho.mat * kron(pauli(i + 1), id));
    b.y[i] = real_trace(rho.mat * kron(id, pauli(i + 1)));
    for (int j = 0; j < 3; ++j) b.T(i, j) = real_trace(rho.mat * kron(pauli(i + 1), pauli(j + 1)));
  }
  return b;
}

inline Mat bloch_reconstruct(const BlochTriple& b) {
  Mat id = Mat::Identity(2, 2);
  Mat m = kron(id, id);
  for (int i = 0; i < 3; ++i) {
    m += b.x[i] * kron(pauli(i + 1), id) + b.y[i] * kron(id, pauli(i + 1));
    for (int j = 0; j < 3; ++j) m += b.T(i, j) * kron(pauli(i + 1), pauli(j + 1));
  }
  return m / 4.0;
}

/** Generalized Gell-Mann set: symmetric U_jk, antisymmetric V_jk, diagonal W_l. */
inline std::vector<Mat> su_generators(int d) {
  if (d < 2) throw Error("InvalidParams", "su(d) needs d >= 2");
  std::vector<Mat> u, v, w;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Mat a = Mat::Zero(d, d), b = Mat::Zero(d, d);
      a(j, k) = a(k, j) = 1;
      b(j, k) = cplx(0, -1);
      b(k, j) = cplx(0, 1);
      u.push_back(a);
      v.push_back(b);
    }
  for (int l = 1; l < d; ++l) {
    Mat c = Mat::Zero(d, d);
    double s = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) c(j, j) = s;
    c(l, l) = -l * s;
    w.push_back(c);
  }
  std::vector<Mat> out;
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

/** R_{αβ} = (d/2) Tr(ρ γ^α ⊗ σ^β) with γ⁰, σ⁰ identities; shape d² × 4. */
inline RMat fano_bloch(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[1] != 2)
    throw Error("DimMismatch", "fano_bloch needs a d x 2 state");
  int d = rho.dims[0];
  auto gens = su_generators(d);
  gens.insert(gens.begin(), Mat::Identity(d, d));
  RMat r(d * d, 4);
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < 4; ++b) r(a, b) = 0.5 * d * real_trace(rho.mat * kron(gens[a], pauli(b)));
  return r;
}

inline Mat fano_bloch_reconstruct(const RMat& r, int d) {
  auto gens = su_generators(d);
  gens.insert(gens.begin(), Mat::Identity(d, d));
  Mat m = Mat::Zero(2 * d, 2 * d);
  for (int a = 0; a < d * d; ++a) {
    double norm = a == 0 ? double(d) : 2.0;
    for (int b = 0; b < 4; ++b) m += (r(a, b) / (d * norm)) * kron(gens[a], pauli(b));
  }
  return m;
}

// ------------------------------------------------------ Schmidt, purification

/** cut = number of leading factors on the left side. */
inline Schmidt schmidt(const PureState& psi, int cut) {
  if (cut <= 0 || cut >= static_cast<int>(psi.dims.size()))
    throw Error("BadSubsystem", "cut must split the factor list");
  Dims l(psi.dims.begin(), psi.dims.begin() + cut), r(psi.dims.begin() + cut, psi.dims.end());
  int nl = dims_product(l), nr = dims_product(r);
  Mat c(nl, nr);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j) c(i, j) = psi.amp[i * nr + j];
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Schmidt s;
  s.coefficients = svd.singularValues().array().square();
  s.left = svd.matrixU();
  s.right = svd.matrixV().conjugate();
  s.rank = 0;
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i)
    if (s.coefficients[i] > tol.rank) ++s.rank;
  return s;
}

inline PureState purify(const DensityMatrix& rho) {
  auto ed = eigh(rho.mat);
  std::vector<int> keep;
  for (Eigen::Index i = ed.values.size() - 1; i >= 0; --i)
    if (ed.values[i] > tol.rank) keep.push_back(static_cast<int>(i));
  int r = static_cast<int>(keep.size());
  int n = rho.dim();
  Vec v = Vec::Zero(n * r);
  for (int k = 0; k < r; ++k) {
    double s = std::sqrt(ed.values[keep[k]]);
    for (int i = 0; i < n; ++i) v[i * r + k] = s * ed.vectors(i, keep[k]);
  }
  Dims dims = rho.dims;
  dims.push_back(r);
  return {dims, v};
}

// ----------------------------------------------------------------- random

inline Mat random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline PureState random_pure(const Dims& dims, std::mt19937_64& rng) {
  Vec v = random_gaussian(dims_product(dims), 1, rng).col(0);
  return {dims, v.normalized()};
}

inline PureState random_pure(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure(dims, rng);
}

inline DensityMatrix random_density(const Dims& dims, int rank, std::mt19937_64& rng) {
  int n = dims_product(dims);
  if (rank < 1 || rank > n) throw Error("InvalidParams", "rank outside [1, dim]");
  Mat g = random_gaussian(n, rank, rng);
  Mat m = g * g.adjoint();
  m /= m.trace().real();
  return {dims, 0.5 * (m + m.adjoint())};
}

inline DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(dims, rank, rng);
}

inline Mat random_unitary(int n, std::mt19937_64& rng) {
  Mat g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1);
  }
  return q;
}

/** Random valid X state with complex anti-diagonals. */
inline XStateParams random_x(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> d{};
  double s = 0;
  for (auto& di : d) s += (di = e(rng));
  for (auto& di : d) di /= s;
  XStateParams x{d[0], d[1], d[2], d[3]};
  x.a14 = std::polar(u(rng) * std::sqrt(d[0] * d[3]), 2 * M_PI * u(rng));
  x.a23 = std::polar(u(rng) * std::sqrt(d[1] * d[2]), 2 * M_PI * u(rng));
  return x;
}

/** Uniform over the valid Bell-diagonal tetrahedron (rejection sampling). */
inline BellDiagonalParams random_bell_diagonal(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    BellDiagonalParams c{u(rng), u(rng), u(rng)};
    auto lam = bell_diagonal_eigenvalues(c);
    if (*std::min_element(lam.begin(), lam.end()) >= 0) return c;
  }
}

}  // namespace qcorr
