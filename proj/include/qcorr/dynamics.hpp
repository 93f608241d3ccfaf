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

#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <utility>

#include "qcorr/states.hpp"

namespace qcorr {

struct KrausChannel {
  std::vector<Mat> operators;
  std::string label;

  int dim() const { return operators.empty() ? 0 : static_cast<int>(operators[0].rows()); }

  double completeness_error() const {
    Mat s = Mat::Zero(dim(), dim());
    for (const auto& k : operators) s += k.adjoint() * k;
    return (s - Mat::Identity(dim(), dim())).norm();
  }
};

inline KrausChannel channel_preset(const std::string& name, double p) {
  if (!(p >= 0 && p <= 1)) throw Error("InvalidParams", name + " strength must lie in [0,1]");
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  KrausChannel ch;
  ch.label = name;
  if (name == "dephasing") {
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - p);
    k1(1, 1) = std::sqrt(p);
    ch.operators = {k0, k1};
  } else if (name == "phase_flip") {
    ch.operators = {std::sqrt(1 - p) * pauli(0), std::sqrt(p) * pauli(3)};
  } else if (name == "depolarizing") {
    ch.operators = {std::sqrt(1 - 3 * p / 4) * pauli(0)};
    for (int i = 1; i <= 3; ++i) ch.operators.push_back(std::sqrt(p / 4) * pauli(i));
  } else if (name == "amplitude_damping") {
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - p);
    k1(0, 1) = std::sqrt(p);
    ch.operators = {k0, k1};
  } else {
    throw Error("InvalidParams", "unknown channel '" + name + "'");
  }
  return ch;
}

inline KrausChannel identity_channel(int d) { return {{Mat::Identity(d, d)}, "identity"}; }

/** K ⊗ 𝟙 padding on every factor except `target`. */
inline DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, int target) {
  detail::check_subsystem(target, rho.dims);
  if (ch.dim() != rho.dims[target]) throw Error("DimMismatch", "channel dimension differs from target factor");
  Mat out = Mat::Zero(rho.mat.rows(), rho.mat.cols());
  for (const auto& k : ch.operators) {
    std::vector<Mat> ops;
    for (std::size_t i = 0; i < rho.dims.size(); ++i)
      ops.push_back(static_cast<int>(i) == target ? k : Mat::Identity(rho.dims[i], rho.dims[i]));
    Mat big = kron_all(ops);
    out += big * rho.mat * big.adjoint();
  }
  return {rho.dims, out};
}

inline DensityMatrix apply_channel_all(const DensityMatrix& rho, const KrausChannel& ch) {
  DensityMatrix r = rho;
  for (std::size_t i = 0; i < rho.dims.size(); ++i) r = apply_channel(r, ch, static_cast<int>(i));
  return r;
}

/** Kraus set of "first, then second". */
inline KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.dim() != second.dim()) throw Error("DimMismatch", "channels act on different dimensions");
  KrausChannel c;
  c.label = second.label + "*" + first.label;
  for (const auto& b : second.operators)
    for (const auto& a : first.operators) c.operators.push_back(b * a);
  return c;
}

/** K_μν = √ϑ_ν ⟨μ|U|ν⟩ with ρ_E = Σ ϑ_ν |ν⟩⟨ν|. */
inline KrausChannel kraus_from_environment(const Mat& U, const DensityMatrix& rho_e) {
  int de = rho_e.dim();
  if (U.rows() != U.cols() || U.rows() % de != 0) throw Error("DimMismatch", "U is not square on S⊗E");
  if ((U.adjoint() * U - Mat::Identity(U.rows(), U.cols())).norm() > 1e-10)
    throw Error("NonUnitary", "joint evolution is not unitary");
  require_valid(rho_e.mat, {de});
  int ds = static_cast<int>(U.rows()) / de;
  auto ed = eigh(rho_e.mat);
  KrausChannel ch;
  ch.label = "environment";
  for (int nu = 0; nu < de; ++nu) {
    double w = ed.values[nu];
    if (w <= tol.rank) continue;
    for (int mu = 0; mu < de; ++mu) {
      // ⟨μ|U|ν⟩ as an operator on S
      Mat k = Mat::Zero(ds, ds);
      for (int e = 0; e < de; ++e) {
        cplx c = ed.vectors(e, nu);
        for (int i = 0; i < ds; ++i)
          for (int j = 0; j < ds; ++j) k(i, j) += U(i * de + mu, j * de + e) * c;
      }
      ch.operators.push_back(std::sqrt(w) * k);
    }
  }
  return ch;
}

inline Mat environment_route(const Mat& U, const Mat& rho_s, const Mat& rho_e) {
  int ds = static_cast<int>(rho_s.rows()), de = static_cast<int>(rho_e.rows());
  Mat joint = U * kron(rho_s, rho_e) * U.adjoint();
  return partial_trace(joint, {ds, de}, {0});
}

// ------------------------------------------------------------------ Lindblad

struct LindbladModel {
  Mat H;
  std::vector<std::pair<double, Mat>> jumps;

  void check() const {
    for (const auto& [g, l] : jumps) {
      if (g < 0) throw Error("InvalidParams", "negative jump rate");
      if (l.rows() != H.rows()) throw Error("DimMismatch", "jump operator size differs from H");
    }
    if (!is_hermitian(H)) throw Error("NonHermitian", "Hamiltonian is not Hermitian");
  }
};

inline Mat lindblad_rhs(const Mat& rho, const LindbladModel& m) {
  Mat out = cplx(0, -1) * (m.H * rho - rho * m.H);
  for (const auto& [g, l] : m.jumps) {
    Mat ldl = l.adjoint() * l;
    out += g * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_trace_drift = 0;
  double min_eigenvalue = 1;
};

/** Fixed-step RK4 from 0 to t_end, recording every step. */
inline Trajectory lindblad_evolve(const DensityMatrix& rho0, const LindbladModel& m, double t_end, double dt,
                                  bool hermitize = true) {
  if (!(dt > 0) || !(t_end >= 0)) throw Error("InvalidParams", "need dt > 0 and t_end >= 0");
  m.check();
  if (m.H.rows() != rho0.mat.rows()) throw Error("DimMismatch", "model and state sizes differ");
  long steps = std::lround(std::ceil(t_end / dt - 1e-9));
  double h = steps > 0 ? t_end / static_cast<double>(steps) : 0;
  Trajectory tr;
  Mat r = rho0.mat;
  double tr0 = r.trace().real();
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.states.push_back({rho0.dims, r});
    tr.max_trace_drift = std::max(tr.max_trace_drift, std::abs(r.trace().real() - tr0));
    tr.min_eigenvalue = std::min(tr.min_eigenvalue, eigvalsh(0.5 * (r + r.adjoint()))[0]);
  };
  record(0);
  for (long s = 0; s < steps; ++s) {
    Mat k1 = lindblad_rhs(r, m);
    Mat k2 = lindblad_rhs(r + 0.5 * h * k1, m);
    Mat k3 = lindblad_rhs(r + 0.5 * h * k2, m);
    Mat k4 = lindblad_rhs(r + h * k3, m);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (hermitize) r = 0.5 * (r + r.adjoint()).eval();
    record(h * static_cast<double>(s + 1));
    if (tr.max_trace_drift > 1e-6) {
      std::ostringstream os;
      os << "trace drift " << tr.max_trace_drift << " at t=" << tr.times.back() << "; reduce dt";
      throw Error("StepUnstable", os.str());
    }
  }
  return tr;
}

inline Mat sigma_minus() {
  Mat s = Mat::Zero(2, 2);
  s(0, 1) = 1;
  return s;
}

/** Single jump operator on one factor, padded with identities. */
inline Mat lift(const Mat& op, const Dims& dims, int target) {
  std::vector<Mat> ops;
  for (std::size_t i = 0; i < dims.size(); ++i)
    ops.push_back(static_cast<int>(i) == target ? op : Mat::Identity(dims[i], dims[i]));
  return kron_all(ops);
}

inline LindbladModel lindblad_preset(const std::string& name, double gamma, const Dims& dims) {
  int n = dims_product(dims);
  LindbladModel m{Mat::Zero(n, n), {}};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] != 2) throw Error("DimMismatch", "Lindblad presets act on qubits");
    if (name == "amplitude_damping")
      m.jumps.push_back({gamma, lift(sigma_minus(), dims, static_cast<int>(i))});
    else if (name == "dephasing")
      m.jumps.push_back({gamma, lift(pauli(3), dims, static_cast<int>(i))});
    else
      throw Error("InvalidParams", "unknown Lindblad model '" + name + "'");
  }
  return m;
}

// ---------------------------------------------------------------- sweeps

using MeasureFn = std::function<double(const DensityMatrix&)>;

struct MeasureTable {
  std::string parameter = "param";
  std::vector<double> grid;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> failures;
};

inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw Error("InvalidParams", "grid count must be at least 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

/** Evaluates every measure on evolve(x) for x in grid; failing cells become NaN. */
inline MeasureTable sweep(const std::function<DensityMatrix(double)>& evolve,
                          const std::vector<std::pair<std::string, MeasureFn>>& measures,
                          const std::vector<double>& grid, const std::string& parameter = "param") {
  MeasureTable t;
  t.parameter = parameter;
  t.grid = grid;
  for (const auto& m : measures) t.names.push_back(m.first);
  t.columns.assign(measures.size(), std::vector<double>(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    DensityMatrix rho = evolve(grid[i]);
    for (std::size_t j = 0; j < measures.size(); ++j) {
      try {
        t.columns[j][i] = measures[j].second(rho);
      } catch (const Error& e) {
        t.columns[j][i] = std::numeric_limits<double>::quiet_NaN();
        t.failures.push_back(measures[j].first + "@" + std::to_string(grid[i]) + ": " + e.code());
      }
    }
  }
  return t;
}

inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const MeasureTable& t) {
  os << "param";
  for (const auto& n : t.names) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    os << format_g12(t.grid[i]);
    for (const auto& c : t.columns) os << ',' << format_g12(c[i]);
    os << '\n';
  }
}

}  // namespace qcorr
