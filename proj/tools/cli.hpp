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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "verify.hpp"

namespace qcorr::cli {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kInapplicable = 3, kUnstable = 4 };

inline int exit_code_for(const std::string& code) {
  if (code == "InapplicableMeasure" || code == "EmptyMeasureList" || code == "UnknownMeasure") return kInapplicable;
  if (code == "StepUnstable") return kUnstable;
  return kInvalidInput;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline double parse_number(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("InvalidParams", std::string("cannot parse ") + what + " '" + s + "'");
  }
}

struct Grid {
  double start = 0, stop = 1;
  int count = 2;
};

inline Grid parse_grid(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 3) throw Error("InvalidGrid", "grid must be start:stop:count");
  Grid g{parse_number(parts[0], "grid start"), parse_number(parts[1], "grid stop"), 0};
  double c = parse_number(parts[2], "grid count");
  if (c != std::floor(c) || c < 2) throw Error("InvalidGrid", "grid count must be an integer >= 2");
  g.count = static_cast<int>(c);
  return g;
}

// ------------------------------------------------------------- state input

inline std::vector<double> preset_params_from_json(const std::string& name, const nlohmann::json& p, Dims& dims) {
  if (p.is_null()) return {};
  if (p.is_array()) return p.get<std::vector<double>>();
  if (!p.is_object()) throw Error("InvalidJson", "params must be an array or an object");
  auto key = [&](const char* k) {
    if (!p.contains(k) || !p[k].is_number()) throw Error("InvalidJson", name + " needs numeric param '" + k + "'");
    return p[k].get<double>();
  };
  if (name == "bell_diagonal") return {key("c1"), key("c2"), key("c3")};
  if (name == "x_state") return {p.contains("x") ? key("x") : key("p")};
  if (name == "horodecki") return {key("p")};
  if (name == "ghz") return p.contains("n") ? std::vector<double>{key("n")} : std::vector<double>{};
  if (name == "computational") {
    if (p.contains("dims")) dims = p["dims"].get<Dims>();
    return p.at("basis").get<std::vector<double>>();
  }
  return {};
}

inline DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("InvalidJson", "state must be a JSON object");
  if (j.contains("preset")) {
    auto name = j["preset"].get<std::string>();
    Dims dims = j.contains("dims") ? j["dims"].get<Dims>() : Dims{};
    auto params = preset_params_from_json(name, j.contains("params") ? j["params"] : nlohmann::json(), dims);
    return preset(name, params, dims);
  }
  for (const char* k : {"dims", "re"})
    if (!j.contains(k)) throw Error("InvalidJson", std::string("missing field '") + k + "'");
  Dims dims = j["dims"].get<Dims>();
  for (int d : dims)
    if (d < 1) throw Error("InvalidState", "dims entries must be positive");
  int n = dims_product(dims);
  auto re = j["re"].get<std::vector<std::vector<double>>>();
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = j["im"].get<std::vector<std::vector<double>>>();
  auto shape_ok = [n](const std::vector<std::vector<double>>& m) {
    if (static_cast<int>(m.size()) != n) return false;
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != n) return false;
    return true;
  };
  if (!shape_ok(re) || (!im.empty() && !shape_ok(im)))
    throw Error("DimMismatch", "matrix shape does not match prod(dims) = " + std::to_string(n));
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(re[r][c], im.empty() ? 0.0 : im[r][c]);
  return require_valid(m, dims);
}

struct StateSpec {
  std::string preset_name, params, input;
};

inline DensityMatrix load_state(const StateSpec& s) {
  if (!s.input.empty() && !s.preset_name.empty()) throw Error("InvalidParams", "use either --input or --preset");
  if (!s.input.empty()) {
    std::ifstream in(s.input);
    if (!in) throw Error("InvalidInput", "cannot open " + s.input);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      return state_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw Error("InvalidJson", e.what());
    }
  }
  if (s.preset_name.empty()) throw Error("InvalidParams", "a state is required (--preset or --input)");
  std::vector<double> p;
  for (const auto& t : split(s.params, ',')) p.push_back(parse_number(t, "param"));
  return preset(s.preset_name, p);
}

// ---------------------------------------------------------------- commands

inline std::string g12(double v) { return format_g12(v); }

/** Writes to --out if given, otherwise to `out`. */
inline void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("InvalidOutput", "cannot write " + path);
  body(f);
}

inline int cmd_measure(const StateSpec& spec, const std::string& measures, const std::string& out_path,
                       std::ostream& out) {
  DensityMatrix rho = load_state(spec);
  auto resolved = resolve_measures(split(measures, ','), rho);
  std::vector<double> values;
  for (auto& [name, fn] : resolved) values.push_back(fn(rho));
  emit(out_path, out, [&](std::ostream& os) {
    os << "measure,value,method\n";
    for (std::size_t i = 0; i < resolved.size(); ++i)
      os << resolved[i].first << ',' << g12(values[i]) << ',' << find_measure(resolved[i].first).method << '\n';
  });
  return kOk;
}

struct Process {
  std::string name = "dephasing";
  double rate = 1.0;
  double dt = 1e-3;
};

inline bool is_lindblad(const std::string& p) { return p.rfind("lindblad_", 0) == 0; }

inline MeasureTable run_process(const DensityMatrix& rho, const Process& proc,
                                const std::vector<std::pair<std::string, MeasureFn>>& measures, const Grid& g) {
  auto grid = linspace(g.start, g.stop, g.count);
  if (!is_lindblad(proc.name)) {
    for (double p : grid)
      if (p < 0 || p > 1) throw Error("InvalidGrid", "channel strength grid must lie in [0,1]");
    for (int d : rho.dims)
      if (d != 2) throw Error("DimMismatch", "channel presets act on qubit factors");
    return sweep([&](double p) { return apply_channel_all(rho, channel_preset(proc.name, p)); }, measures, grid, "p");
  }
  if (g.start < 0) throw Error("InvalidGrid", "time grid must start at t >= 0");
  auto model = lindblad_preset(proc.name.substr(9), proc.rate, rho.dims);
  // integrate once with a step that lands on every grid point
  double spacing = (g.stop - g.start) / (g.count - 1);
  long sub = std::max(1L, std::lround(std::ceil(spacing / proc.dt)));
  double h = spacing / static_cast<double>(sub);
  DensityMatrix start = rho;
  if (g.start > 0) {
    long pre = std::max(1L, std::lround(std::ceil(g.start / proc.dt)));
    start = lindblad_evolve(rho, model, g.start, g.start / static_cast<double>(pre)).states.back();
  }
  auto tr = lindblad_evolve(start, model, g.stop - g.start, h);
  auto idx = [&](double t) {
    return static_cast<std::size_t>(std::lround((t - g.start) / h));
  };
  return sweep([&](double t) { return tr.states.at(idx(t)); }, measures, grid, "t");
}

inline int cmd_sweep(const StateSpec& spec, const Process& proc, const std::string& measures, const std::string& grid,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  DensityMatrix rho = load_state(spec);
  auto resolved = resolve_measures(split(measures, ','), rho);
  Grid g = parse_grid(grid.empty() ? "0:1:11" : grid);
  auto table = run_process(rho, proc, resolved, g);
  emit(out_path, out, [&](std::ostream& os) { write_csv(os, table); });
  for (const auto& f : table.failures) err << "warning: cell failed " << f << '\n';
  return kOk;
}

inline Mat generator(const std::string& name, const Dims& dims) {
  int n = static_cast<int>(dims.size());
  for (int d : dims)
    if (d != 2) throw Error("DimMismatch", "generators are defined on qubit registers");
  int axis = name == "collective_x" ? 1 : name == "collective_y" ? 2 : name == "collective_z" ? 3 : 0;
  if (axis == 0) throw Error("InvalidParams", "unknown generator '" + name + "'");
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (int k = 0; k < n; ++k) h += 0.5 * lift(pauli(axis), dims, k);
  return h;
}

inline int cmd_qfi(const StateSpec& spec, const std::string& gen, long trials, std::ostream& out) {
  DensityMatrix rho = load_state(spec);
  Mat h = generator(gen, rho.dims);
  Mat dr = cplx(0, -1) * (h * rho.mat - rho.mat * h);
  double f = qfi(rho.mat, dr);
  out << "quantity,value\n";
  out << "qfi," << g12(f) << '\n';
  out << "qfi_sld_route," << g12(qfi_via_sld(rho.mat, dr)) << '\n';
  if (std::abs(purity(rho.mat) - 1) < 1e-10) {
    auto ed = eigh(rho.mat);
    out << "qfi_pure_variance," << g12(qfi_pure_unitary({rho.dims, ed.vectors.col(rho.dim() - 1)}, h)) << '\n';
  }
  if (f > 1e-12) out << "cramer_rao_bound," << g12(cramer_rao(f, trials)) << '\n';
  return kOk;
}

inline int cmd_verify(const std::string& suite, const verify::Options& o, std::ostream& out) {
  auto ids = verify::suite_members(suite);
  if (!ids) throw Error("UnknownSuite", "no suite named '" + suite + "'");
  bool all_ok = true;
  std::vector<std::string> failures;
  for (int id : *ids) {
    auto c = verify::run_criterion(id, o);
    for (const auto& ch : c.checks) {
      out << "criterion=" << c.id << " check=" << ch.name << " value=" << g12(ch.value)
          << (ch.at_least ? " min=" : " tol=") << g12(ch.bound) << " status=" << (ch.ok() ? "pass" : "FAIL") << '\n';
      if (!ch.ok()) failures.push_back("criterion " + std::to_string(c.id) + " " + ch.name);
    }
    all_ok = all_ok && c.ok();
  }
  out << "suite=" << suite << " result=" << (all_ok ? "pass" : "FAIL") << '\n';
  if (!all_ok) {
    for (const auto& f : failures) out << "failed: " << f << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

// -------------------------------------------------------------------- main

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: quantum correlation, coherence and Fisher-information measures"};
  app.require_subcommand(1);
  StateSpec spec;
  std::string measures, grid, out_path, suite = "all", gen = "collective_z";
  std::uint64_t seed = 2026;
  int n = -1;
  Process proc;

  auto add_state = [&](CLI::App* c) {
    c->add_option("--preset", spec.preset_name, "named preset state");
    c->add_option("--params", spec.params, "comma-separated preset parameters");
    c->add_option("--input", spec.input, "state JSON file");
  };
  auto* m = app.add_subcommand("measure", "evaluate measures on one state");
  add_state(m);
  m->add_option("--measures", measures, "comma-separated measure names");
  m->add_option("--out", out_path, "CSV output path");

  auto* s = app.add_subcommand("sweep", "measures along a channel-strength grid");
  auto* e = app.add_subcommand("evolve", "measures along a Lindblad trajectory");
  for (auto* c : {s, e}) {
    add_state(c);
    c->add_option("--measures", measures, "comma-separated measure names");
    c->add_option("--grid", grid, "start:stop:count");
    c->add_option("--out", out_path, "CSV output path");
    c->add_option("--rate", proc.rate, "Lindblad rate gamma");
    c->add_option("--dt", proc.dt, "RK4 step upper bound");
    c->add_option("--seed", seed, "random seed");
  }
  s->add_option("--process", proc.name,
                "dephasing|phase_flip|depolarizing|amplitude_damping|lindblad_dephasing|lindblad_amplitude_damping");
  std::string model = "amplitude_damping";
  e->add_option("--model", model, "amplitude_damping|dephasing");

  auto* q = app.add_subcommand("qfi", "quantum Fisher information under a collective generator");
  add_state(q);
  q->add_option("--generator", gen, "collective_x|collective_y|collective_z");
  q->add_option("--n", n, "number of trials for the Cramer-Rao bound");

  auto* v = app.add_subcommand("verify", "run a verification suite");
  v->add_option("--suite", suite, "closed_forms|oracles|conservation|metrology|all");
  v->add_option("--seed", seed, "random seed");
  v->add_option("--n", n, "random-battery size override");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& pe) {
    err << "error_code=UsageError " << pe.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (m->parsed()) return cmd_measure(spec, measures, out_path, out);
    if (s->parsed()) return cmd_sweep(spec, proc, measures, grid, out_path, out, err);
    if (e->parsed()) {
      proc.name = "lindblad_" + model;
      return cmd_sweep(spec, proc, measures, grid, out_path, out, err);
    }
    if (q->parsed()) return cmd_qfi(spec, gen, n > 0 ? n : 1, out);
    verify::Options o;
    o.seed = seed;
    if (n > 0) o.n = n;
    return cmd_verify(suite, o, out);
  } catch (const Error& ex) {
    std::string msg = ex.what();
    if (msg.rfind(ex.code() + ": ", 0) == 0) msg = msg.substr(ex.code().size() + 2);
    err << "error_code=" << ex.code() << ' ' << msg << '\n';
    return exit_code_for(ex.code());
  } catch (const std::exception& ex) {
    err << "error_code=InternalError " << ex.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace qcorr::cli
