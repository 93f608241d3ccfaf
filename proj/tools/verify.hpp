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

#include <map>
#include <optional>

#include "qcorr/registry.hpp"

namespace qcorr::verify {

struct Check {
  std::string name;
  double value = 0;
  double bound = 0;
  bool at_least = false;  // value ≥ bound instead of value ≤ bound

  bool ok() const { return std::isfinite(value) && (at_least ? value >= bound : value <= bound); }
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
  }
};

struct Options {
  std::uint64_t seed = 2026;
  std::optional<int> n;  // overrides every random-battery size

  int count(int dflt) const { return n ? std::max(1, *n) : dflt; }
};

/** Running maximum of |a - b| under a name. */
class MaxDiff {
 public:
  explicit MaxDiff(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void add(double a, double b) { add(std::abs(a - b)); }
  void add(double r) { worst_ = std::isnan(r) ? r : std::max(worst_, r); }
  Check check() const { return {name_, worst_, tol_}; }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0;
};

// -------------------------------------------------------------- oracles

namespace oracle {

/** min over q of S(ρ ‖ diag(q, 1-q)) by golden-section search. */
inline double rel_entropy_to_incoherent_qubit(const Mat& rho) {
  auto f = [&](double q) {
    Mat s = Mat::Zero(2, 2);
    s(0, 0) = q;
    s(1, 1) = 1 - q;
    return relative_entropy(rho, s);
  };
  double a = 1e-12, b = 1 - 1e-12;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

/** Random POVM with k effects on C^d: E_i = S^{-1/2} G_i S^{-1/2}, S = Σ G_i. */
inline std::vector<Mat> random_povm(int d, int k, std::mt19937_64& rng) {
  std::vector<Mat> g;
  Mat s = Mat::Zero(d, d);
  for (int i = 0; i < k; ++i) {
    Mat a = random_gaussian(d, d, rng);
    g.push_back(a * a.adjoint());
    s += g.back();
  }
  Mat sinv = matrix_function(s, [](double x) { return 1.0 / std::sqrt(x); }, false);
  for (auto& e : g) {
    e = sinv * e * sinv;
    e = 0.5 * (e + e.adjoint()).eval();
  }
  return g;
}

inline Mat random_hermitian(int d, std::mt19937_64& rng) {
  Mat a = random_gaussian(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

}  // namespace oracle

// ------------------------------------------------------------- criteria

inline Criterion bell_golden(const Options&) {
  Criterion c{1, "Bell-state golden values", {}};
  auto psi = bell_ket("phi_plus");
  auto rho = to_density(psi);
  auto x = x_params(rho.mat);
  const double t = 1e-9;
  c.checks.push_back({"concurrence", std::abs(concurrence_2q(rho) - 1), t});
  c.checks.push_back({"eof", std::abs(eof_2q(rho) - 1), t});
  c.checks.push_back({"entanglement_entropy", std::abs(entanglement_entropy(psi, 1) - 1), t});
  c.checks.push_back({"negativity", std::abs(negativity(rho, 1) - 0.5), t});
  c.checks.push_back({"log_negativity", std::abs(log_negativity(rho, 1) - 1), t});
  c.checks.push_back({"lqu", std::abs(lqu_2xd(rho).value - 1), t});
  c.checks.push_back({"lqfi", std::abs(lqfi(rho).value - 1), t});
  c.checks.push_back({"discord_x", std::abs(discord_x(x).quantum - 1), t});
  c.checks.push_back({"discord_numeric", std::abs(discord_numeric(rho, Side::B).quantum - 1), 2e-4});
  return c;
}

inline Criterion bell_diagonal_battery(const Options& o) {
  Criterion c{2, "Bell-diagonal closed forms", {}};
  std::mt19937_64 rng(o.seed);
  MaxDiff td("trace_discord_vs_middle_c", 1e-9), gd("hs_geometric_discord", 1e-9),
      j2("linear_J2_vs_max_c2", 1e-8), wang("wang_vs_bd_expression", 1e-8), num("wang_vs_numeric", 2e-4);
  for (int i = 0, n = o.count(100); i < n; ++i) {
    auto p = random_bell_diagonal(rng);
    auto rho = bell_diagonal(p);
    std::array<double, 3> a{std::abs(p.c1), std::abs(p.c2), std::abs(p.c3)};
    std::sort(a.begin(), a.end());
    td.add(trace_discord_x(x_params(rho.mat)), a[1]);
    gd.add(geometric_discord_hs(rho), 0.25 * (a[0] * a[0] + a[1] * a[1]));
    j2.add(classical_corr_linear_qubitqubit(rho).J2, a[2] * a[2]);
    double w = discord_x(x_params(rho.mat)).quantum;
    wang.add(w, discord_bd(p));
    num.add(w, discord_numeric(rho, Side::B).quantum);
  }
  c.checks = {td.check(), gd.check(), j2.check(), wang.check(), num.check()};
  return c;
}

inline Criterion horodecki_family(const Options&) {
  Criterion c{3, "Horodecki family", {}};
  MaxDiff fx("formula_vs_x", 2e-4), fn("formula_vs_numeric", 2e-4), xn("x_vs_numeric", 2e-4),
      r2("rank2_route_vs_formula", 2e-4), lm("L_matrix_entries", 1e-9);
  for (int i = 0; i <= 20; ++i) {
    double p = i / 20.0;
    auto rho = horodecki(p);
    double formula = binary_h(p / 2) - binary_h(p) + g_of(2 * p * (1 - p));
    double xr = discord_x(x_params(rho.mat)).quantum;
    double nr = discord_numeric(rho, Side::B).quantum;
    fx.add(formula, xr);
    fn.add(formula, nr);
    xn.add(xr, nr);
    if (p > 0 && p < 1) {
      r2.add(discord_rank2(rho), formula);
      RMat want = RMat::Zero(3, 3);
      double s = std::sqrt(p / (2 - p));
      want(0, 0) = s;
      want(1, 1) = -s;
      want(2, 2) = -p / (2 - p);
      lm.add((classical_corr_linear_qubitqubit(rho).L - want).cwiseAbs().maxCoeff());
    }
  }
  c.checks = {fx.check(), fn.check(), xn.check(), r2.check(), lm.check()};
  return c;
}

inline Criterion x_battery(const Options& o) {
  Criterion c{4, "X-state oracle battery", {}};
  std::mt19937_64 rng(o.seed + 1);
  MaxDiff cc("concurrence_x_vs_wootters", 1e-10), dd("discord_x_vs_numeric", 2e-4),
      bd("trace_discord_x_bd_limit", 1e-9);
  for (int i = 0, n = o.count(300); i < n; ++i) {
    auto x = random_x(rng);
    auto rho = x_state(x);
    cc.add(concurrence_x(x), concurrence_2q(rho));
    dd.add(discord_x(x).quantum, discord_numeric(rho, Side::B).quantum);
  }
  for (int i = 0, n = o.count(100); i < n; ++i) {
    auto p = random_bell_diagonal(rng);
    bd.add(trace_discord_x(x_params(bell_diagonal(p).mat)), trace_discord_bd(p));
  }
  c.checks = {cc.check(), dd.check(), bd.check()};
  return c;
}

inline Criterion pure_identities(const Options& o) {
  Criterion c{5, "Pure-state identities", {}};
  std::mt19937_64 rng(o.seed + 2);
  MaxDiff ls("lqu_vs_linear_entropy", 1e-9), lc("lqu_vs_concurrence_sq", 1e-9), cn("cl1_schmidt_vs_2N", 1e-9),
      cc("coherence_concurrence_vs_cl1", 1e-10);
  for (int i = 0, n = o.count(200); i < n; ++i) {
    auto psi = random_pure({2, 2}, rng);
    auto rho = to_density(psi);
    double u = lqu_2xd(rho).value;
    double s2 = linear_entropy(partial_trace(rho.mat, rho.dims, {0}));
    double conc = concurrence_2q(rho);
    ls.add(u, s2);
    lc.add(u, conc * conc);
    auto sch = schmidt(psi, 1);
    ReferenceBasis b{kron(sch.left, sch.right)};
    cn.add(c_l1(rho.mat, b), 2 * negativity(rho, 1));
    cc.add(coherence_concurrence_pure({{4}, psi.amp}), c_l1(rho.mat));
  }
  c.checks = {ls.check(), lc.check(), cn.check(), cc.check()};
  return c;
}

inline Criterion sandwich(const Options& o) {
  Criterion c{6, "LQU <= LQFI <= 2 LQU", {}};
  std::mt19937_64 rng(o.seed + 3);
  MaxDiff lo("lower_violation", 1e-9), hi("upper_violation", 1e-9);
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
    int n = dims_product(dims);
    for (int i = 0, m = o.count(200); i < m; ++i) {
      auto rho = random_density(dims, 1 + static_cast<int>(rng() % n), rng);
      double u = lqu_2xd(rho).value, q = lqfi(rho).value;
      lo.add(std::max(0.0, u - q));
      hi.add(std::max(0.0, q - 2 * u));
    }
  }
  c.checks = {lo.check(), hi.check()};
  return c;
}

inline Criterion conservation(const Options& o) {
  Criterion c{7, "Conservation and Koashi-Winter", {}};
  std::mt19937_64 rng(o.seed + 4);
  MaxDiff central("central_law", 5e-3), cyclic("cyclic_law", 5e-3), kw("koashi_winter", 2e-3);
  int n = o.count(100);
  for (int i = 0; i < n; ++i) {
    auto r = conservation_3q_residual(random_pure({2, 2, 2}, rng));
    central.add(r.central);
    cyclic.add(r.cyclic);
  }
  kw.add(koashi_winter_residual(ghz_ket(3)));
  for (int i = 0; i < n; ++i) {
    auto psi = purify(random_density({2, 2}, 2, rng));
    kw.add(koashi_winter_residual(psi));
  }
  c.checks = {central.check(), cyclic.check(), kw.check()};
  return c;
}

namespace detail {
/** ρ(θ, φ) = ½(1 + r n(θ,φ)·σ) with analytic Bloch derivatives. */
struct BlochAngleFamily {
  double r, th, ph;
  Eigen::Vector3d vec() const {
    return r * Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  }
  std::vector<Eigen::Vector3d> dvec() const {
    return {r * Eigen::Vector3d(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)),
            r * Eigen::Vector3d(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0)};
  }
  static Mat dot_sigma(const Eigen::Vector3d& v) {
    return 0.5 * (v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3));
  }
  Mat rho() const { return 0.5 * pauli(0) + dot_sigma(vec()); }
  std::vector<Mat> drho() const {
    std::vector<Mat> out;
    for (const auto& d : dvec()) out.push_back(dot_sigma(d));
    return out;
  }
};

/** Two-parameter X family: populations move with θ₁, the ρ14 phase with θ₂. */
struct XFamily {
  double t1, t2;
  XStateParams at(double a, double b) const {
    XStateParams x{0.4 + 0.1 * std::sin(a), 0.2, 0.1, 0.3 - 0.1 * std::sin(a)};
    x.a14 = std::polar(0.25, b);
    x.a23 = 0.1 * std::cos(a);
    return x;
  }
  Mat rho() const { return x_matrix(at(t1, t2)); }
  std::vector<Mat> drho() const {
    Mat d1 = Mat::Zero(4, 4), d2 = Mat::Zero(4, 4);
    d1(0, 0) = 0.1 * std::cos(t1);
    d1(3, 3) = -0.1 * std::cos(t1);
    d1(1, 2) = d1(2, 1) = -0.1 * std::sin(t1);
    d2(0, 3) = cplx(0, 1) * std::polar(0.25, t2);
    d2(3, 0) = std::conj(d2(0, 3));
    return {d1, d2};
  }
};
}  // namespace detail

inline Criterion metrology_consensus(const Options& o) {
  Criterion c{8, "Metrology consensus", {}};
  std::mt19937_64 rng(o.seed + 5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  MaxDiff bloch("bloch_sld_vectorized_closed", 1e-7), xs("x_sld_vectorized_block", 1e-7),
      ghz("ghz_heisenberg", 1e-8), sat("cfi_sld_basis_vs_qfi", 1e-6), bound("cfi_minus_qfi", 1e-7);
  for (int i = 0; i < 20; ++i) {
    detail::BlochAngleFamily f{std::uniform_real_distribution<double>(0.2, 0.95)(rng), u(rng), u(rng)};
    RMat a = qfim(f.rho(), f.drho()), b = qfim_vectorized(f.rho(), f.drho()), cl = qfim_bloch_qubit(f.vec(), f.dvec());
    bloch.add(std::max({(a - b).cwiseAbs().maxCoeff(), (a - cl).cwiseAbs().maxCoeff(),
                        (b - cl).cwiseAbs().maxCoeff()}));
  }
  for (int i = 0; i < 20; ++i) {
    detail::XFamily f{u(rng), u(rng)};
    RMat a = qfim(f.rho(), f.drho()), b = qfim_vectorized(f.rho(), f.drho()), cl = qfim_xstate_block(f.rho(), f.drho());
    xs.add(std::max({(a - b).cwiseAbs().maxCoeff(), (a - cl).cwiseAbs().maxCoeff(),
                     (b - cl).cwiseAbs().maxCoeff()}));
  }
  for (int n : {2, 3, 4}) ghz.add(qfi_pure_unitary(ghz_ket(n), collective_sz(n)), double(n * n));
  for (int i = 0; i < 20; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    auto rho = random_density({d}, d, rng);
    Mat h = oracle::random_hermitian(d, rng);
    Mat dr = cplx(0, -1) * (h * rho.mat - rho.mat * h);
    double q = qfi(rho.mat, dr);
    sat.add(cfi(rho.mat, {dr}, sld_eigenbasis_povm(sld(rho.mat, dr)))[0], q);
  }
  for (int i = 0, n = o.count(50); i < n; ++i) {
    int d = 2 + static_cast<int>(rng() % 3);
    auto rho = random_density({d}, 1 + static_cast<int>(rng() % d), rng);
    auto fam = ParametricFamily::unitary(rho, oracle::random_hermitian(d, rng), 0.0);
    auto povm = oracle::random_povm(d, 2 + static_cast<int>(rng() % 4), rng);
    Mat dr = d_rho(fam, 0);
    bound.add(std::max(0.0, cfi(rho.mat, {dr}, povm)[0] - qfi(rho.mat, dr)));
  }
  c.checks = {bloch.check(), xs.check(), ghz.check(), sat.check(), bound.check()};
  return c;
}

inline Criterion coherence_battery(const Options& o) {
  Criterion c{9, "Coherence", {}};
  std::mt19937_64 rng(o.seed + 6);
  MaxDiff cr("c_rel_entropy_vs_minimization", 1e-4), comp("complementarity_violation", 1e-9),
      eq("complementarity_equality_plus", 1e-9), cg("c_geometric_closed_vs_numeric", 1e-5);
  for (int i = 0, n = o.count(100); i < n; ++i) {
    auto rho = random_density({2}, 1 + static_cast<int>(rng() % 2), rng);
    cr.add(c_rel_entropy(rho.mat), oracle::rel_entropy_to_incoherent_qubit(rho.mat));
  }
  for (int i = 0, n = o.count(1000); i < n; ++i) {
    int d = 2 + i % 3;
    auto rho = random_density({d}, 1 + static_cast<int>(rng() % d), rng);
    comp.add(std::max(0.0, complementarity_check(rho.mat).lhs - 1));
  }
  eq.add(complementarity_check(preset("plus_state").mat).lhs, 1.0);
  for (int i = 0, n = o.count(50); i < n; ++i) {
    auto rho = random_density({2}, 1 + static_cast<int>(rng() % 2), rng);
    cg.add(c_geometric_qubit(rho.mat), c_geometric_numeric(rho.mat, ReferenceBasis::computational(2)));
  }
  c.checks = {cr.check(), comp.check(), eq.check(), cg.check()};
  return c;
}

inline Criterion dynamics_battery(const Options& o) {
  Criterion c{10, "Dynamics", {}};
  std::mt19937_64 rng(o.seed + 7);
  MaxDiff comp("channel_completeness", 1e-12), deph("dephasing1_offdiagonal", 1e-12),
      pop("amplitude_damping_population", 1e-5), drift("trace_drift", 1e-8), env("environment_two_route", 1e-9),
      envc("environment_completeness", 1e-9);
  for (const char* name : {"dephasing", "phase_flip", "depolarizing", "amplitude_damping"})
    for (int i = 0; i <= 20; ++i) comp.add(channel_preset(name, i / 20.0).completeness_error());
  for (int i = 0; i < 20; ++i) {
    auto rho = random_density({2}, 2, rng);
    auto out = apply_channel(rho, channel_preset("dephasing", 1.0), 0);
    deph.add(std::abs(out.mat(0, 1)));
  }
  {
    const double gamma = 0.7;
    auto rho0 = preset("computational", {1}, {2});
    auto tr = lindblad_evolve(rho0, lindblad_preset("amplitude_damping", gamma, {2}), 3.0, 0.01);
    for (std::size_t k = 0; k < tr.times.size(); ++k) pop.add(tr.states[k].mat(1, 1).real(), std::exp(-gamma * tr.times[k]));
    drift.add(tr.max_trace_drift);
  }
  double order = 0;
  {
    const double gamma = 0.5, t_end = 2.0;
    auto rho0 = preset("plus_state");
    auto model = lindblad_preset("dephasing", gamma, {2});
    model.H = 0.8 * pauli(1);
    auto err = [&](double dt) {
      auto tr = lindblad_evolve(rho0, model, t_end, dt);
      auto fine = lindblad_evolve(rho0, model, t_end, dt / 16);
      drift.add(tr.max_trace_drift);
      return (tr.states.back().mat - fine.states.back().mat).norm();
    };
    double e1 = err(0.2), e2 = err(0.1);
    order = std::log2(e1 / e2);
  }
  for (int i = 0; i < 20; ++i) {
    int de = 2 + i % 2;
    Mat U = random_unitary(2 * de, rng);
    auto rho_e = random_density({de}, 1 + static_cast<int>(rng() % de), rng);
    auto rho_s = random_density({2}, 2, rng);
    auto ch = kraus_from_environment(U, rho_e);
    env.add((apply_channel(rho_s, ch, 0).mat - environment_route(U, rho_s.mat, rho_e.mat)).norm());
    envc.add(ch.completeness_error());
  }
  c.checks = {comp.check(), deph.check(), pop.check(), drift.check(),
              {"rk4_empirical_order", order, 3.5, true}, env.check(), envc.check()};
  return c;
}

using CriterionFn = Criterion (*)(const Options&);

inline const std::vector<CriterionFn>& all_criteria() {
  static const std::vector<CriterionFn> v = {bell_golden,  bell_diagonal_battery, horodecki_family,
                                             x_battery,    pure_identities,       sandwich,
                                             conservation, metrology_consensus,   coherence_battery,
                                             dynamics_battery};
  return v;
}

/** Criterion ids per suite; empty optional for an unknown suite. */
inline std::optional<std::vector<int>> suite_members(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> m = {
      {"closed_forms", {1, 2, 3}},
      {"oracles", {4, 5, 6, 9, 10}},
      {"conservation", {7}},
      {"metrology", {8}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  auto it = m.find(suite);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline Criterion run_criterion(int id, const Options& o) {
  try {
    return all_criteria().at(id - 1)(o);
  } catch (const Error& e) {
    Criterion c{id, "error", {}};
    c.checks.push_back({std::string("raised ") + e.code(), std::numeric_limits<double>::quiet_NaN(), 0});
    return c;
  }
}

}  // namespace qcorr::verify
