// Copyright 2026 The sbpwave Authors
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

#include "sbpwave/cli.hpp"

#include "sbpwave/errors.hpp"
#include "sbpwave/leapfrog_solver.hpp"
#include "sbpwave/model.hpp"
#include "sbpwave/sbp_operators_1d.hpp"
#include "sbpwave/transfer_operators.hpp"
#include "sbpwave/verify_suites.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sbpwave::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out << content;
  if (!out) throw IoError("failed writing " + p.string());
}

fs::path resolve(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

}  // namespace

RunOutputs run_simulation(const fs::path& config_file, const std::optional<fs::path>& out_dir) {
  const RunConfig cfg = load_config(config_file);
  const fs::path base = config_file.parent_path().empty() ? fs::path(".") : config_file.parent_path();

  // Validation: everything that can fail does so before any output exists.
  const Model model = build_model(model_spec(cfg, base));
  if (cfg.ratio && !(model.layout && model.layout->ratio == *cfg.ratio))
    throw DomainError("config ratio does not match the block spacings");
  std::vector<PointSource> sources;
  for (const auto& s : cfg.sources)
    sources.push_back({locate_p(model, {s.x, s.y}), s.f0, s.t0, s.amplitude});
  std::vector<Receiver> receivers;
  for (const auto& r : cfg.receivers) receivers.push_back({locate_p(model, {r.x, r.y})});
  const fs::path dir = out_dir ? *out_dir : resolve(base, cfg.output.directory);
  if (fs::exists(dir) && !fs::is_directory(dir)) throw IoError(dir.string() + " exists and is not a directory");

  RunOptions opt;
  opt.record_energy = cfg.output.energy;
  const auto res = run(model.system, {cfg.dt, cfg.n_steps}, sources, receivers, zero_state(model.system), opt);

  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("config.json", serialize(cfg));
  if (cfg.output.seismograms) {
    std::string s = "t";
    for (const auto& r : cfg.receivers) s += "," + r.name;
    s += "\n";
    for (std::size_t n = 0; n <= cfg.n_steps; ++n) {
      s += format_double(static_cast<double>(n) * cfg.dt);
      for (const auto& tr : res.seismograms) s += "," + format_double(tr[n]);
      s += "\n";
    }
    files.emplace_back("seismograms.csv", std::move(s));
  }
  if (cfg.output.energy) {
    std::string s = "step,t,E\n";
    for (std::size_t n = 0; n < res.energy.size(); ++n)
      s += std::to_string(n) + "," + format_double((static_cast<double>(n) + 0.5) * cfg.dt) + "," +
           format_double(res.energy[n]) + "\n";
    files.emplace_back("energy.csv", std::move(s));
  }
  nlohmann::json manifest{{"files", nlohmann::json::array()}};
  for (const auto& [name, content] : files)
    manifest["files"].push_back({{"name", name}, {"bytes", content.size()}, {"fnv1a64", hex64(fnv1a64(content))}});
  files.emplace_back("manifest.json", manifest.dump(2) + "\n");

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  RunOutputs out{dir, {}};
  for (const auto& [name, content] : files) {
    write_file(dir / name, content);
    out.files.push_back(name);
  }
  return out;
}

namespace {

// operators sbp1d
int cmd_sbp1d(std::size_t n, const std::optional<fs::path>& out) {
  const auto ex = build_sbp_1d_exact(n);
  const auto rep = verify_sbp_structure(build_sbp_1d(n, 1.0 / static_cast<double>(n - 1)));
  const auto q = ex.q();
  std::cout << "SBP staggered pair, n_p = " << n << ", n_v = " << n - 1 << " (unit spacing)\n";
  std::cout << "exact structure residual: " << to_string(exact_structure_residual(ex)) << "\n";
  std::cout << "floating structure residual (relative): " << format_double(rep.structure_residual) << "\n";
  std::cout << "Q row 0:";
  for (std::size_t c = 0; c < q.cols; ++c) std::cout << " " << to_string(q(0, c));
  std::cout << "\nd_p row degrees:";
  for (std::size_t i = 0; i < n - 1; ++i) std::cout << " " << exact_dp_row_degree(ex, i);
  std::cout << "\nd_v row degrees:";
  for (std::size_t i = 0; i < n; ++i) std::cout << " " << exact_dv_row_degree(ex, i);
  std::cout << "\nprojection degrees: left " << exact_projection_degree(ex, true) << ", right "
            << exact_projection_degree(ex, false) << "\n";
  if (out) {
    fs::create_directories(*out);
    auto dense = [](const RationalMatrix& m) {
      std::string s;
      for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += "\n";
      }
      return s;
    };
    write_file(*out / "d_p.csv", dense(ex.d_p));
    write_file(*out / "d_v.csv", dense(ex.d_v));
    write_file(*out / "q.csv", dense(q));
    std::string v = "vector,index,value\n";
    auto add = [&](const char* name, const std::vector<Rational>& x) {
      for (std::size_t k = 0; k < x.size(); ++k) v += std::string(name) + "," + std::to_string(k) + "," + to_string(x[k]) + "\n";
    };
    add("a_p", ex.a_p);
    add("a_v", ex.a_v);
    add("proj_left", ex.proj_left);
    add("proj_right", ex.proj_right);
    write_file(*out / "vectors.csv", v);
    std::cout << "wrote d_p.csv, d_v.csv, q.csv, vectors.csv to " << out->string() << "\n";
  }
  return kOk;
}

// operators transfer
int cmd_transfer(const std::string& ratio_text, int support, const std::optional<fs::path>& out) {
  const auto ratio = parse_ratio(ratio_text);
  const auto pair = support > 0 ? derive_elemental_pair(ratio, support) : shipped_pair(ratio);
  const auto cert = certify(pair);
  std::cout << "transfer pair " << ratio_text << " ("
            << (pair.support ? "derived, support " + std::to_string(pair.support) : std::string("tabulated"))
            << ")\n";
  auto dump = [](const char* title, const std::vector<std::vector<StencilEntry>>& rows, std::string& csv) {
    std::cout << title << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::cout << "  row " << r << ":";
      for (const auto& e : rows[r]) {
        std::cout << " [" << e.index << "] " << to_string(e.value);
        csv += std::string(title) + "," + std::to_string(r) + "," + std::to_string(e.index) + "," + to_string(e.value) + "\n";
      }
      std::cout << "\n";
    }
  };
  std::string csv = "operator,row,index,value\n";
  dump("coarse_to_fine", pair.coarse_to_fine, csv);
  dump("fine_to_coarse", pair.fine_to_coarse, csv);
  std::cout << "row-sum error: " << to_string(cert.row_sum_error) << "\n";
  std::cout << "minimum row exactness degree: " << cert.min_degree << "\n";
  std::cout << "transpose constraint residual: " << to_string(cert.constraint_residual) << "\n";
  if (out) {
    fs::create_directories(*out);
    write_file(*out / "transfer.csv", csv);
    std::cout << "wrote transfer.csv to " << out->string() << "\n";
  }
  const bool ok = cert.row_sum_error == 0 && cert.constraint_residual == 0 && cert.min_degree >= 2;
  return ok ? kOk : kVerification;
}

int cmd_verify(const std::string& suite, bool quick, std::size_t steps, bool control,
               const std::optional<fs::path>& out) {
  std::vector<SuiteReport> reports;
  auto want = [&](const char* s) { return suite == s || suite == "all"; };
  if (want("structure")) reports.push_back(verify_structure());
  if (want("exactness")) reports.push_back(verify_exactness());
  if (want("energy")) reports.push_back(verify_energy());
  if (want("convergence")) {
    ConvergenceOptions o;
    if (quick) o.ladder = {16, 32, 64};
    reports.push_back(verify_convergence(o));
  }
  if (want("cfl")) reports.push_back(verify_cfl());
  if (want("agreement")) reports.push_back(verify_agreement(steps ? steps : 5000));
  if (want("stability")) {
    StabilityOptions o;
    o.n_steps = steps ? steps : (quick ? 5000 : 50000);
    o.broken_control = control;
    reports.push_back(verify_stability(o));
  }
  if (reports.empty()) throw ConfigError("unknown suite '" + suite + "'");
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.text();
    ok = ok && r.pass();
    if (out) {
      fs::create_directories(*out);
      write_file(*out / (r.suite + ".csv"), r.csv());
    }
  }
  return ok ? kOk : kVerification;
}

int cmd_cfl(const std::string& system, std::size_t n, const CflProtocol& protocol) {
  const double dx = 1.0 / static_cast<double>(n);
  CflResult r;
  if (system == "1d-periodic") {
    r = find_cfl(System1D({build_periodic_1d(n, dx)}, {}), dx, protocol);
  } else if (system == "1d-sbp") {
    r = find_cfl(assemble_1d_boundary_system(build_sbp_1d(n + 1, dx), {}), dx, protocol);
  } else if (system == "2d-periodic") {
    r = find_cfl(assemble_periodic_2d_system(n, n, dx), dx, protocol);
  } else if (system == "2d-sbp") {
    const auto blk = make_block(0, 1, n, 0, 1, n + 1);
    r = find_cfl(assemble_free_surface_system(blk, unit_coefficients(blk)), dx, protocol);
  } else {
    throw ConfigError("unknown system '" + system + "'");
  }
  std::cout << system << " n=" << n << ": dt_max/dx in [" << format_double(r.dt_stable) << ", "
            << format_double(r.dt_unstable) << "], estimate " << format_double(r.ratio()) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered SBP-SAT acoustic wave solver"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a JSON config");
  std::string config;
  std::string out_text;
  run_cmd->add_option("config", config, "Config file")->required();
  run_cmd->add_option("--out", out_text, "Output directory (overrides the config)");

  auto* ops = app.add_subcommand("operators", "Dump operators and certificates");
  ops->require_subcommand(1);
  auto* sbp = ops->add_subcommand("sbp1d", "1D SBP pair");
  std::size_t n_p = 9;
  sbp->add_option("--n", n_p, "Number of p points (>= 9)");
  sbp->add_option("--out", out_text, "Directory for CSV matrices");
  auto* tr = ops->add_subcommand("transfer", "Interface transfer pair");
  std::string ratio = "2:1";
  int support = 0;
  tr->add_option("--ratio", ratio, "coarse:fine")->required();
  tr->add_option("--support", support, "Derive with this support instead of the shipped pair");
  tr->add_option("--out", out_text, "Directory for the stencil CSV");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  bool quick = false, control = false;
  std::size_t steps = 0;
  ver->add_option("suite", suite, "structure|exactness|energy|convergence|cfl|stability|agreement|all")->required();
  ver->add_flag("--quick", quick, "Shorter ladder / fewer steps");
  ver->add_option("--steps", steps, "Steps for stability or agreement");
  ver->add_flag("--broken-control", control, "Stability: also run the broken-constraint control");
  ver->add_option("--out", out_text, "Directory for CSV reports");

  auto* cfl = app.add_subcommand("cfl", "Bisect the largest stable time step at c = 1");
  std::string system = "1d-sbp";
  std::size_t n = 64;
  CflProtocol protocol;
  cfl->add_option("--system", system, "1d-periodic|1d-sbp|2d-periodic|2d-sbp");
  cfl->add_option("--n", n, "Cells per direction");
  cfl->add_option("--steps", protocol.steps, "Steps per trial");
  cfl->add_option("--seed", protocol.seed, "Seed of the random initial data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  const std::optional<fs::path> out = out_text.empty() ? std::nullopt : std::optional<fs::path>(out_text);
  try {
    if (run_cmd->parsed()) {
      const auto res = run_simulation(config, out);
      std::cout << "wrote";
      for (const auto& f : res.files) std::cout << " " << f;
      std::cout << " to " << res.directory.string() << "\n";
      return kOk;
    }
    if (sbp->parsed()) return cmd_sbp1d(n_p, out);
    if (tr->parsed()) return cmd_transfer(ratio, support, out);
    if (ver->parsed()) return cmd_verify(suite, quick, steps, control, out);
    if (cfl->parsed()) return cmd_cfl(system, n, protocol);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}

}  // namespace sbpwave::cli
