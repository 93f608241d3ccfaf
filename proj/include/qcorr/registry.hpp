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

#include "qcorr/qcorr.hpp"

namespace qcorr {

/** Named measure with an applicability predicate; the predicate returns "" when it applies. */
struct MeasureEntry {
  std::string name;
  std::string method;
  std::function<std::string(const DensityMatrix&)> applicable;
  MeasureFn eval;
};

namespace detail {
inline std::function<std::string(const DensityMatrix&)> dims_is(Dims want, std::string label) {
  return [want, label](const DensityMatrix& r) { return r.dims == want ? std::string() : "dims must be " + label; };
}
inline std::string qubit_first_bipartite(const DensityMatrix& r) {
  return r.dims.size() == 2 && r.dims[0] == 2 ? "" : "dims must be [2,d]";
}
inline std::string qubit_second_bipartite(const DensityMatrix& r) {
  return r.dims.size() == 2 && r.dims[1] == 2 ? "" : "dims must be [d,2]";
}
inline std::string some_qubit_bipartite(const DensityMatrix& r) {
  return r.dims.size() == 2 && (r.dims[0] == 2 || r.dims[1] == 2) ? "" : "dims must be [2,d] or [d,2]";
}
inline std::string bipartite(const DensityMatrix& r) { return r.dims.size() == 2 ? "" : "state must be bipartite"; }
inline std::string any_state(const DensityMatrix&) { return ""; }
inline std::string x_shaped_2q(const DensityMatrix& r) {
  if (r.dims != Dims{2, 2}) return "dims must be [2,2]";
  return is_x_shaped(r.mat, 1e-10) ? "" : "state must be X shaped";
}
inline std::string pure_bipartite(const DensityMatrix& r) {
  if (r.dims.size() != 2) return "state must be bipartite";
  return std::abs(purity(r.mat) - 1) < 1e-9 ? "" : "state must be pure";
}
inline PureState dominant_ket(const DensityMatrix& r) {
  auto ed = eigh(r.mat);
  return {r.dims, ed.vectors.col(ed.vectors.cols() - 1)};
}
}  // namespace detail

inline const std::vector<MeasureEntry>& measure_registry() {
  using namespace detail;
  static const std::vector<MeasureEntry> reg = {
      {"concurrence", "wootters", dims_is({2, 2}, "[2,2]"), [](const DensityMatrix& r) { return concurrence_2q(r); }},
      {"eof", "wootters", dims_is({2, 2}, "[2,2]"), [](const DensityMatrix& r) { return eof_2q(r); }},
      {"negativity", "partial_transpose", bipartite, [](const DensityMatrix& r) { return negativity(r, 1); }},
      {"log_negativity", "partial_transpose", bipartite, [](const DensityMatrix& r) { return log_negativity(r, 1); }},
      {"tripartite_negativity", "partial_transpose", dims_is({2, 2, 2}, "[2,2,2]"),
       [](const DensityMatrix& r) { return tripartite_negativity(r); }},
      {"entanglement_entropy", "schmidt", pure_bipartite,
       [](const DensityMatrix& r) { return entanglement_entropy(dominant_ket(r), 1); }},
      {"discord", "numeric_b", some_qubit_bipartite,
       [](const DensityMatrix& r) {
         return r.dims[1] == 2 ? discord_numeric(r, Side::B).quantum : discord_numeric(r, Side::A).quantum;
       }},
      {"discord_x", "x_closed", x_shaped_2q, [](const DensityMatrix& r) { return discord_x(x_params(r.mat)).quantum; }},
      {"trace_discord_x", "x_closed", x_shaped_2q,
       [](const DensityMatrix& r) { return trace_discord_x(x_params(r.mat)); }},
      {"geometric_discord", "hilbert_schmidt", dims_is({2, 2}, "[2,2]"),
       [](const DensityMatrix& r) { return geometric_discord_hs(r); }},
      {"linear_discord", "channel_L", qubit_second_bipartite, [](const DensityMatrix& r) { return linear_discord(r); }},
      {"lqu", "skew_W", qubit_first_bipartite, [](const DensityMatrix& r) { return lqu_2xd(r).value; }},
      {"lqfi", "fisher_M", qubit_first_bipartite, [](const DensityMatrix& r) { return lqfi(r).value; }},
      {"mutual_information", "entropy", bipartite, [](const DensityMatrix& r) { return mutual_information(r); }},
      {"von_neumann", "entropy", any_state, [](const DensityMatrix& r) { return von_neumann(r); }},
      {"purity", "trace", any_state, [](const DensityMatrix& r) { return purity(r.mat); }},
      {"linear_entropy", "trace", any_state, [](const DensityMatrix& r) { return linear_entropy(r); }},
      {"c_rel_entropy", "computational", any_state, [](const DensityMatrix& r) { return c_rel_entropy(r.mat); }},
      {"c_l1", "computational", any_state, [](const DensityMatrix& r) { return c_l1(r.mat); }},
      {"c_geometric", "fidelity", any_state,
       [](const DensityMatrix& r) {
         return r.dim() == 2 ? c_geometric_qubit(r.mat)
                             : c_geometric_numeric(r.mat, ReferenceBasis::computational(r.dim()));
       }},
      {"correlated_coherence", "computational", bipartite,
       [](const DensityMatrix& r) { return correlated_coherence(r); }},
      {"excited_population", "diagonal", [](const DensityMatrix& r) { return r.dims[0] == 2 ? "" : "first factor must be a qubit"; },
       [](const DensityMatrix& r) { return partial_trace(r, {0}).mat(1, 1).real(); }},
  };
  return reg;
}

inline const MeasureEntry& find_measure(const std::string& name) {
  for (const auto& m : measure_registry())
    if (m.name == name) return m;
  throw Error("UnknownMeasure", "no measure named '" + name + "'");
}

/** Looks up every name and checks applicability against `rho`. */
inline std::vector<std::pair<std::string, MeasureFn>> resolve_measures(const std::vector<std::string>& names,
                                                                        const DensityMatrix& rho) {
  if (names.empty()) throw Error("EmptyMeasureList", "no measures requested");
  std::vector<std::pair<std::string, MeasureFn>> out;
  for (const auto& n : names) {
    const auto& m = find_measure(n);
    std::string why = m.applicable(rho);
    if (!why.empty()) throw Error("InapplicableMeasure", n + ": " + why);
    out.emplace_back(n, m.eval);
  }
  return out;
}

}  // namespace qcorr
