#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamb/analysis.hpp"
#include "lamb/cli.hpp"
#include "lamb/modes.hpp"
#include "lamb/verify.hpp"

namespace lamb::cli {

namespace {

struct Solved {
  Grid grid;
  DiscretePencil pencil;
  DiscreteOperator op;
  ModeSet modes;
};

Solved solve(const RunConfig& cfg, const Material& m) {
  Solved s;
  s.grid = chebyshev_grid(cfg.n_colloc, m.h);
  s.pencil = assemble_pencil(m, s.grid, cfg.bc);
  s.op = assemble_linearization(s.pencil);
  SolveOptions so;
  so.accept_tol = cfg.accept_tol;
  s.modes = solve_modes(s.op, s.pencil, so);
  return s;
}

// One representative of each +-beta pair: Re beta > 0, or Im beta > 0 on
// the imaginary axis.
bool right_half(cplx b) {
  const double tol = 1e-9 * std::max(1.0, std::abs(b));
  return b.real() > tol || (std::abs(b.real()) <= tol && b.imag() > 0.0);
}

}  // namespace

void write_modes_csv(const RunConfig& cfg, std::ostream& out) {
  Solved s = solve(cfg, cfg.material);
  const auto chains = detect_jordan_chains(s.modes, s.pencil, 1e-4, cfg.chain_tol);
  annotate_chain_lengths(s.modes, chains);
  out << "re_beta,im_beta,parity,residual,chain_length\n";
  for (const auto& m : s.modes.modes)
    out << fmt(m.beta.real()) << ',' << fmt(m.beta.imag()) << ',' << parity_name(m.parity) << ','
        << fmt(m.residual) << ',' << m.chain_length << '\n';
}

void write_dispersion_csv(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.omega_sweep) throw ConfigError("dispersion needs omega_sweep");
  const OmegaSweep w = *cfg.omega_sweep;
  const double cap = 10.0 / cfg.material.h;
  const double dw = (w.stop - w.start) / (w.steps - 1);
  const double jump_tol = 0.25 / cfg.material.h + 5.0 * dw / cfg.material.transverse_speed();

  struct Branch {
    int id;
    cplx beta;
    Parity parity;
  };
  std::vector<Branch> prev;
  int next_id = 0;
  out << "omega,branch,re_beta,im_beta,parity,flag\n";
  for (int k = 0; k < w.steps; ++k) {
    Material m = cfg.material;
    m.omega = w.start + k * dw;
    const Solved s = solve(cfg, m);
    std::vector<const Mode*> cur;
    for (const auto& md : s.modes.modes)
      if (std::abs(md.beta) <= cap && right_half(md.beta)) cur.push_back(&md);

    // greedy nearest pairing on increasing distance
    struct Pair {
      double d;
      int i, j;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < static_cast<int>(prev.size()); ++i)
      for (int j = 0; j < static_cast<int>(cur.size()); ++j)
        if (prev[i].parity == cur[j]->parity || prev[i].parity == Parity::Mixed ||
            cur[j]->parity == Parity::Mixed)
          pairs.push_back({std::abs(prev[i].beta - cur[j]->beta), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.d != b.d) return a.d < b.d;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });
    std::vector<int> id_of(cur.size(), -1);
    std::vector<std::string> flag(cur.size());
    std::vector<bool> used(prev.size(), false);
    for (const auto& p : pairs) {
      if (used[p.i] || id_of[p.j] >= 0) continue;
      used[p.i] = true;
      id_of[p.j] = prev[p.i].id;
      if (p.d > jump_tol) flag[p.j] = "jump";
    }
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (id_of[j] < 0) {
        id_of[j] = next_id++;
        if (k > 0) flag[j] = "new";
      }

    std::vector<int> order(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return id_of[a] < id_of[b]; });
    std::vector<Branch> now;
    for (int j : order) {
      const Mode& md = *cur[j];
      out << fmt(m.omega) << ',' << id_of[j] << ',' << fmt(md.beta.real()) << ','
          << fmt(md.beta.imag()) << ',' << parity_name(md.parity) << ',' << flag[j] << '\n';
      now.push_back({id_of[j], md.beta, md.parity});
    }
    prev = std::move(now);
  }
}

void write_resolvent_csv(const RunConfig& cfg, std::ostream& out) {
  const Solved s = solve(cfg, cfg.material);
  std::vector<double> mods = cfg.moduli;
  if (mods.empty()) {
    const double B = measured_resolvent_threshold(s.modes, cfg.theta0);
    for (int k = 0; k <= 8; ++k) mods.push_back(B * std::pow(10.0, k / 4.0));
  }
  std::vector<cplx> mus;
  for (const auto& m : s.modes.modes) mus.push_back(m.mu);
  const auto scan = resolvent_scan(s.op, cfg.theta0, mods, mus);
  out << "ray,arg_beta,modulus,re_beta,im_beta,norm,hs_norm,conj_norm\n";
  for (std::size_t r = 0; r < scan.rays.size(); ++r)
    for (std::size_t k = 0; k < mods.size(); ++k) {
      const cplx b = std::polar(mods[k], scan.rays[r]);
      out << r << ',' << fmt(scan.rays[r]) << ',' << fmt(mods[k]) << ',' << fmt(b.real()) << ','
          << fmt(b.imag()) << ',' << fmt(scan.norms(r, k)) << ',' << fmt(scan.hs_norms(r, k)) << ','
          << fmt(scan.conj_norms(r, k)) << '\n';
    }
  for (const auto& line : scan.log) std::cerr << line << '\n';
}

void write_completeness_csv(const RunConfig& cfg, std::ostream& out) {
  const Solved s = solve(cfg, cfg.material);
  const auto sys = biorthogonalize(s.modes, s.op);
  const int K = static_cast<int>(s.modes.size());
  std::vector<int> ks;
  for (int k = 1; k <= K; ++k) ks.push_back(k);
  out << "target,k,residual\n";
  if (K == 0) return;
  for (int t = 0; t < 5; ++t) {
    const auto f = random_trig_field(s.grid, s.pencil.components(), cfg.seed + 100 + t);
    const auto rep = expand_field(sys, s.op, f, ks);
    for (std::size_t i = 0; i < ks.size(); ++i)
      out << t << ',' << ks[i] << ',' << fmt(rep.residuals[i]) << '\n';
  }
}

bool write_verify_json(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions o;
  o.material = cfg.material;
  o.theta0 = cfg.theta0;
  o.seed = cfg.seed;
  o.accept_tol = cfg.accept_tol;
  o.chain_tol = cfg.chain_tol;
  const auto results = run_suite(o);
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["criterion"] = r.criterion;
    c["name"] = r.name;
    c["value"] = r.value;
    c["threshold"] = r.threshold;
    c["pass"] = r.pass;
    c["detail"] = r.detail;
    j["checks"].push_back(c);
    all = all && r.pass;
  }
  j["pass"] = all;
  out << j.dump(2) << '\n';
  return all;
}

int run(int argc, char** argv) {
  CLI::App app{"Lamb-mode quadratic eigenvalue solver"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  const std::vector<std::pair<std::string, std::string>> subs{
      {"modes", "eigenvalues and mode data for one frequency"},
      {"dispersion", "frequency sweep of wavenumber branches"},
      {"resolvent", "resolvent norms along the five rays"},
      {"completeness", "least-squares expansion residuals"},
      {"verify", "full invariant suite, JSON report"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--config", config_path, "JSON run configuration")->required();
    s->add_option("--out", out_path, "output file (default stdout)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  std::ostringstream buf;
  bool ok = true;
  try {
    const RunConfig cfg = load_config(config_path);
    if (cmd == "modes") write_modes_csv(cfg, buf);
    else if (cmd == "dispersion") write_dispersion_csv(cfg, buf);
    else if (cmd == "resolvent") write_resolvent_csv(cfg, buf);
    else if (cmd == "completeness") write_completeness_csv(cfg, buf);
    else ok = write_verify_json(cfg, buf);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (out_path.empty()) {
    std::cout << buf.str();
    std::cout.flush();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    f << buf.str();
  }
  return ok ? 0 : 1;
}

}  // namespace lamb::cli
