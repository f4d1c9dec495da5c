// Benchmark driver for the structure-preserving Fourier/HBVM solver for
// coupled NLS (Manakov) systems.
//
// Subcommands:
//   run          integrate one configuration; writes invariants.csv and
//                summary.json (optionally |psi_i|^2 field grids)
//   converge     time-convergence ladder against a fine reference
//   space-study  spatial-resolution ladder against a large-N reference
//   spectral     spectral-in-time run with per-step stage-decay logging
//
// Exit codes: 0 success, 1 bad configuration, 2 stage-solver failure,
// 3 I/O failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "manakov/integrator.hpp"
#include "manakov/kernels.hpp"
#include "manakov/problems.hpp"
#include "manakov/run_io.hpp"

namespace {

using namespace manakov;

struct Options {
  std::string problem = "manakov1";
  int N = 0;  // 0 -> problem default (70 for manakov1, 400 for manakov2)
  int k = 0;  // 0 -> automatic (2s; spectral: max(20, s+2))
  int s = 1;
  double h = 0.1;
  double T = -1.0;  // <0 -> problem default
  std::string solver = "blended";
  double tol = 1e-13;
  int max_iter = 100;
  std::string out = "out";
  int oversample = 1;
  int record_every = 1;
  bool store_states = false;
  bool warm_start = false;
  bool zero_field = false;
  long seed = 0;

  // run: optional field grids and e_y reference
  bool fields = false;
  int grid_nx = 200;
  int grid_nt = 200;
  double plot_xmin = std::numeric_limits<double>::quiet_NaN();
  double plot_xmax = std::numeric_limits<double>::quiet_NaN();
  int ref_k = 20;
  int ref_s = 10;
  double ref_h = 0.0;  // run: 0 disables; converge: 0 -> min(h)/4
  double ref_tol = 1e-13;

  // converge
  std::vector<std::string> methods;  // "k,s" entries
  std::vector<double> h_ladder;

  // space-study
  std::vector<int> N_ladder;
  int ref_N = 150;

  // spectral
  double tol_rank = 1.4901161193847656e-08;

  std::string config_file;  // consumed before parsing; kept for --help
};

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

// Parse a flat key=value file: '#'/';' comment lines, blank lines, optional
// quotes around the value.  Keys may repeat (only meaningful for options
// that are themselves repeatable, e.g. `method`).
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = trim(text.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    std::string value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\'')))
      value = value.substr(1, value.size() - 2);
    if (key.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty key");
    if (key == "config")
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": config files cannot nest");
    items.emplace_back(std::move(key), std::move(value));
  }
  return items;
}

// Replace every `--config FILE` / `--config=FILE` with the file's key=value
// lines rewritten as --key=value tokens, inserted right after the subcommand
// name.  CLI11 only reads config files on the root parser, so a subcommand
// --config would be silently ignored; hand expansion also gives the
// documented precedence: keys spelled out on the command line always win.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> files;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config requires a file path");
      files.push_back(args[i + 1]);
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      files.push_back(args[i].substr(std::string("--config=").size()));
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (files.empty()) return args;

  std::set<std::string> given;
  for (const std::string& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

  std::vector<std::string> injected;
  for (const std::string& file : files)
    for (const auto& [key, value] : read_config_file(file))
      if (given.count("--" + key) == 0)
        injected.push_back("--" + key + "=" + value);

  static constexpr std::array<const char*, 4> kSubcommands = {
      "run", "converge", "space-study", "spectral"};
  auto anchor = args.end();
  for (auto it = args.begin(); it != args.end(); ++it) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), *it) !=
        kSubcommands.end()) {
      anchor = it + 1;
      break;
    }
  }
  args.insert(anchor, injected.begin(), injected.end());
  return args;
}

long resolve_steps(double T, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  return std::lround(T / h);
}

long checked_stride(double coarse, double fine, const char* what) {
  const double ratio = coarse / fine;
  const long stride = std::lround(ratio);
  if (stride < 1 || std::fabs(ratio - stride) > 1e-9 * std::fabs(ratio))
    throw std::invalid_argument(std::string(what) + " must divide the step size");
  return stride;
}

StageSolverKind parse_solver(const std::string& name) {
  if (name == "blended") return StageSolverKind::blended;
  if (name == "fixed-point") return StageSolverKind::fixed_point;
  throw std::invalid_argument("unknown solver: " + name);
}

std::vector<MethodSpec> parse_methods(const std::vector<std::string>& specs) {
  std::vector<MethodSpec> out;
  for (const std::string& text : specs) {
    MethodSpec m;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d,%d%c", &m.k, &m.s, &tail) != 2 ||
        m.k < 1 || m.s < 1)
      throw std::invalid_argument("bad --method entry (expected k,s): " + text);
    out.push_back(m);
  }
  return out;
}

ManakovProblem resolve_problem(const Options& o) {
  ManakovProblem p = problem_by_name(o.problem);
  if (o.T >= 0.0) p.T = o.T;
  return p;
}

int resolve_N(const Options& o, const ManakovProblem& p) {
  if (o.N > 0) return o.N;
  return p.name == "manakov2" ? 400 : 70;
}

struct InvariantErrors {
  double eH = 0.0, eK = 0.0, eM = 0.0;
  std::vector<double> ei;
};

InvariantErrors invariant_errors(const std::vector<InvariantSample>& log) {
  InvariantErrors e;
  if (log.empty()) return e;
  const InvariantSample& r = log.front();
  e.ei.assign(r.Mi.size(), 0.0);
  for (const InvariantSample& s : log) {
    e.eH = std::max(e.eH, std::fabs(s.H - r.H));
    e.eK = std::max(e.eK, std::fabs(s.K - r.K));
    e.eM = std::max(e.eM, std::fabs(s.M - r.M));
    for (std::size_t c = 0; c < e.ei.size(); ++c)
      e.ei[c] = std::max(e.ei[c], std::fabs(s.Mi[c] - r.Mi[c]));
  }
  return e;
}

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

nlohmann::ordered_json base_summary(const ManakovProblem& problem, int N,
                                    const Tableau& tab,
                                    const IntegrationConfig& cfg,
                                    const Options& o) {
  nlohmann::ordered_json j;
  j["problem"] = problem.name;
  j["N"] = N;
  j["k"] = tab.k;
  j["s"] = tab.s;
  j["h"] = cfg.h;
  j["T"] = problem.T;
  j["steps"] = cfg.steps;
  j["solver"] = o.solver;
  j["kernels"] = std::string(kernels::active().name);
  j["seed"] = o.seed;
  return j;
}

int report_solver_failure(const Trajectory& traj, double h) {
  std::cerr << "stage solver failed to converge at step "
            << traj.stats.failed_step << " (t = "
            << traj.stats.failed_step * h << ")\n";
  return 2;
}

int do_run(const Options& o) {
  const ManakovProblem problem = resolve_problem(o);
  const int N = resolve_N(o, problem);
  const FourierBasis basis = build_basis(N, problem.a, problem.b, o.oversample);
  const int k = o.k > 0 ? o.k : 2 * o.s;
  const Tableau tab = build_tableau(k, o.s);

  SpectralState y0 = initial_state(problem, basis);
  if (o.zero_field) y0.y.fill(0.0);

  const bool want_ref = o.ref_h > 0.0;
  IntegrationConfig cfg;
  cfg.h = o.h;
  cfg.steps = resolve_steps(problem.T, o.h);
  cfg.record_every = 1;
  cfg.solver = parse_solver(o.solver);
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.store_states = o.store_states || o.fields || want_ref;
  cfg.warm_start = o.warm_start;

  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj = integrate(problem, basis, tab, y0, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!traj.stats.all_converged) return report_solver_failure(traj, cfg.h);

  double e_y = 0.0;
  if (want_ref) {
    const long stride = checked_stride(o.h, o.ref_h, "--ref-h");
    const Tableau ref_tab = build_tableau(o.ref_k, o.ref_s);
    IntegrationConfig rcfg = cfg;
    rcfg.h = o.ref_h;
    rcfg.steps = cfg.steps * stride;
    rcfg.record_every = static_cast<int>(stride);
    rcfg.tol = o.ref_tol;
    rcfg.max_iter = std::max(o.max_iter, 200);
    rcfg.store_states = true;
    const Trajectory ref = integrate(problem, basis, ref_tab, y0, rcfg);
    if (!ref.stats.all_converged) return report_solver_failure(ref, rcfg.h);
    if (ref.states.size() != traj.states.size())
      throw std::logic_error("reference sample grid disagrees with the run");
    for (std::size_t i = 0; i < traj.states.size(); ++i)
      e_y = std::max(e_y, solution_error(traj.states[i], ref.states[i]));
  }

  const InvariantErrors err = invariant_errors(traj.invariant_log);

  ensure_output_dir(o.out);
  write_invariants_csv(join_path(o.out, "invariants.csv"), traj.invariant_log,
                       o.record_every);
  if (o.fields) {
    const double xmin = std::isnan(o.plot_xmin) ? problem.a : o.plot_xmin;
    const double xmax = std::isnan(o.plot_xmax) ? problem.b : o.plot_xmax;
    write_field_grids(o.out, problem, basis, traj, o.grid_nx, o.grid_nt, xmin,
                      xmax);
  }

  nlohmann::ordered_json j = base_summary(problem, N, tab, cfg, o);
  if (want_ref)
    j["e_y"] = e_y;
  else
    j["e_y"] = nullptr;
  j["e_H"] = err.eH;
  j["e_K"] = err.eK;
  j["e_M"] = err.eM;
  j["e_i"] = err.ei;
  j["blended_iterations"] = traj.stats.total_iterations;
  j["max_residual"] = traj.stats.max_residual;
  j["wall_seconds"] = wall;
  j["converged"] = true;
  write_text_file(join_path(o.out, "summary.json"), j.dump(2) + "\n");

  std::cout << "run: " << problem.name << " " << tab.label << " N=" << N
            << " h=" << o.h << " steps=" << cfg.steps << " solver=" << o.solver
            << " kernels=" << kernels::active().name << "\n";
  std::cout << "invariants: e_H=" << format_sci(err.eH)
            << " e_K=" << format_sci(err.eK) << " e_M=" << format_sci(err.eM)
            << "\n";
  if (want_ref) std::cout << "e_y=" << format_sci(e_y) << "\n";
  std::cout << "iterations=" << traj.stats.total_iterations
            << " wall=" << wall << "s\n";
  std::cout << "wrote " << join_path(o.out, "invariants.csv") << ", "
            << join_path(o.out, "summary.json") << "\n";
  return 0;
}

int do_converge(const Options& o) {
  const ManakovProblem problem = resolve_problem(o);
  const int N = resolve_N(o, problem);
  const FourierBasis basis = build_basis(N, problem.a, problem.b, o.oversample);

  std::vector<MethodSpec> methods = parse_methods(o.methods);
  if (methods.empty()) methods = {{2, 1}, {4, 2}, {6, 3}};
  const std::vector<double> hs =
      o.h_ladder.empty() ? std::vector<double>{o.h} : o.h_ladder;

  ReferenceSpec ref;
  ref.k = o.ref_k;
  ref.s = o.ref_s;
  ref.h = o.ref_h;
  ref.tol = o.ref_tol;
  ref.max_iter = std::max(o.max_iter, 200);

  const std::vector<ConvergenceRow> rows =
      convergence_study(problem, basis, methods, hs, ref, o.tol, o.max_iter);

  ensure_output_dir(o.out);
  write_converge_csv(join_path(o.out, "converge.csv"), rows);

  std::cout << "converge: " << problem.name << " N=" << N << " (blended solver)\n";
  for (const ConvergenceRow& r : rows) {
    std::cout << "  " << r.method << " h=" << format_sci(r.h)
              << " e_y=" << format_sci(r.e_y);
    if (std::isfinite(r.rate)) std::cout << " rate=" << format_sci(r.rate);
    std::cout << "\n";
  }
  std::cout << "wrote " << join_path(o.out, "converge.csv") << "\n";
  return 0;
}

int do_space(const Options& o) {
  const ManakovProblem problem = resolve_problem(o);
  std::vector<int> ladder =
      o.N_ladder.empty() ? std::vector<int>{30, 40, 50, 60, 70, 80} : o.N_ladder;
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
    if (ladder[i + 1] <= ladder[i])
      throw std::invalid_argument("--N-ladder must be strictly increasing");
  if (ladder.front() < 1) throw std::invalid_argument("--N-ladder entries must be >= 1");
  if (o.ref_N < ladder.back())
    throw std::invalid_argument("--ref-N must be at least the largest ladder entry");

  const int k = o.k > 0 ? o.k : 2 * std::max(o.s, 1);
  const Tableau tab = build_tableau(k, std::max(o.s, 1));
  const long steps = resolve_steps(problem.T, o.h);
  const int stride = static_cast<int>(std::max<long>(1, steps / 100));

  auto run_at = [&](int N) {
    const FourierBasis basis = build_basis(N, problem.a, problem.b, o.oversample);
    const SpectralState y0 = initial_state(problem, basis);
    IntegrationConfig cfg;
    cfg.h = o.h;
    cfg.steps = steps;
    cfg.record_every = stride;
    cfg.solver = parse_solver(o.solver);
    cfg.tol = o.tol;
    cfg.max_iter = o.max_iter;
    cfg.store_states = true;
    cfg.warm_start = o.warm_start;
    Trajectory traj = integrate(problem, basis, tab, y0, cfg);
    if (!traj.stats.all_converged)
      throw std::runtime_error("space study: stage solver failed at N=" +
                               std::to_string(N));
    return traj;
  };

  const Trajectory ref = run_at(o.ref_N);
  std::vector<SpaceRow> rows;
  for (int N : ladder) {
    const Trajectory traj = run_at(N);
    if (traj.states.size() != ref.states.size())
      throw std::logic_error("space study: sample grids disagree");
    double e_y = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i)
      e_y = std::max(e_y, solution_error_padded(traj.states[i], ref.states[i]));
    rows.push_back({tab.label, o.h, N, e_y});
  }

  ensure_output_dir(o.out);
  write_space_csv(join_path(o.out, "space.csv"), rows);

  std::cout << "space-study: " << problem.name << " " << tab.label
            << " h=" << format_sci(o.h) << " ref N=" << o.ref_N << "\n";
  for (const SpaceRow& r : rows)
    std::cout << "  N=" << r.N << " e_y=" << format_sci(r.e_y) << "\n";
  std::cout << "wrote " << join_path(o.out, "space.csv") << "\n";
  return 0;
}

int do_spectral(const Options& o) {
  const ManakovProblem problem = resolve_problem(o);
  const int N = resolve_N(o, problem);
  const FourierBasis basis = build_basis(N, problem.a, problem.b, o.oversample);
  const int k = o.k > 0 ? o.k : std::max(20, o.s + 2);
  const Tableau tab = build_tableau(k, o.s);
  const SpectralState y0 = initial_state(problem, basis);

  IntegrationConfig cfg;
  cfg.h = o.h;
  cfg.steps = resolve_steps(problem.T, o.h);
  cfg.record_every = 1;
  cfg.solver = parse_solver(o.solver);
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.spectral_check = true;
  cfg.tol_rank = o.tol_rank;

  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj = integrate(problem, basis, tab, y0, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!traj.stats.all_converged) return report_solver_failure(traj, cfg.h);

  std::vector<double> times(traj.rank_ratios.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = (i + 1) * cfg.h;

  const InvariantErrors err = invariant_errors(traj.invariant_log);

  ensure_output_dir(o.out);
  write_rank_csv(join_path(o.out, "rank.csv"), times, traj.rank_ratios);
  write_invariants_csv(join_path(o.out, "invariants.csv"), traj.invariant_log,
                       o.record_every);

  nlohmann::ordered_json j = base_summary(problem, N, tab, cfg, o);
  j["e_H"] = err.eH;
  j["e_K"] = err.eK;
  j["e_M"] = err.eM;
  j["tol_rank"] = cfg.tol_rank;
  j["max_rank_ratio"] = traj.stats.max_rank_ratio;
  j["rank_flags"] = traj.stats.rank_flags;
  j["blended_iterations"] = traj.stats.total_iterations;
  j["wall_seconds"] = wall;
  j["converged"] = true;
  write_text_file(join_path(o.out, "summary.json"), j.dump(2) + "\n");

  std::cout << "spectral: " << problem.name << " " << tab.label << " N=" << N
            << " h=" << o.h << "\n";
  std::cout << "max stage-decay ratio=" << format_sci(traj.stats.max_rank_ratio)
            << " flagged steps=" << traj.stats.rank_flags << "/"
            << traj.rank_ratios.size() << " (tol=" << format_sci(cfg.tol_rank)
            << ")\n";
  std::cout << "wrote " << join_path(o.out, "rank.csv") << ", "
            << join_path(o.out, "invariants.csv") << ", "
            << join_path(o.out, "summary.json") << "\n";
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  // The step-size option is spelled --h, so help must not claim -h.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--config", o.config_file,
                  "Flat key=value file of these options (explicit "
                  "command-line options take precedence)");
  cmd->add_option("--problem", o.problem, "Benchmark problem")
      ->check(CLI::IsMember({"manakov1", "manakov2"}))
      ->capture_default_str();
  cmd->add_option("--N", o.N,
                  "Highest wavenumber (0 = problem default: 70 / 400)")
      ->capture_default_str();
  cmd->add_option("--T", o.T, "Integration horizon (<0 = problem default)")
      ->capture_default_str();
  cmd->add_option("--solver", o.solver, "Nonlinear stage solver")
      ->check(CLI::IsMember({"blended", "fixed-point"}))
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "Stage-solver tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Stage-solver iteration cap")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--oversample", o.oversample, "Quadrature oversampling factor")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed,
                  "Echoed into summary.json (runs are deterministic)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Benchmark driver for a structure-preserving Fourier/HBVM solver of "
      "n-component coupled NLS (Manakov) systems"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  Options o;

  CLI::App* c_run = app.add_subcommand(
      "run", "Integrate one configuration (invariants.csv, summary.json)");
  add_common(c_run, o);
  c_run->add_option("--k", o.k, "Quadrature stages (0 = 2s)")->capture_default_str();
  c_run->add_option("--s", o.s, "Method degree")->capture_default_str();
  c_run->add_option("--h", o.h, "Time step")->capture_default_str();
  c_run->add_option("--record-every", o.record_every,
                    "Row stride for invariants.csv")
      ->capture_default_str();
  c_run->add_flag("--store-states", o.store_states,
                  "Keep all states in memory (implied by --fields / --ref-h)");
  c_run->add_flag("--warm-start", o.warm_start,
                  "Seed each step's stages with the previous step's");
  c_run->add_flag("--zero-field", o.zero_field, "Zero the initial data");
  c_run->add_flag("--fields", o.fields, "Write |psi_i|^2 field grids");
  c_run->add_option("--grid-nx", o.grid_nx, "Field grid: spatial points")
      ->capture_default_str();
  c_run->add_option("--grid-nt", o.grid_nt, "Field grid: time blocks")
      ->capture_default_str();
  c_run->add_option("--plot-xmin", o.plot_xmin,
                    "Field grid window start (default: domain edge)");
  c_run->add_option("--plot-xmax", o.plot_xmax,
                    "Field grid window end (default: domain edge)");
  c_run->add_option("--ref-k", o.ref_k, "Reference method k for e_y")
      ->capture_default_str();
  c_run->add_option("--ref-s", o.ref_s, "Reference method s for e_y")
      ->capture_default_str();
  c_run->add_option("--ref-h", o.ref_h,
                    "Reference step for e_y (0 = skip; must divide --h)")
      ->capture_default_str();
  c_run->add_option("--ref-tol", o.ref_tol, "Reference solver tolerance")
      ->capture_default_str();

  CLI::App* c_conv = app.add_subcommand(
      "converge", "Time-convergence ladder against a fine reference (converge.csv)");
  add_common(c_conv, o);
  c_conv->add_option("--method", o.methods,
                     "Method as k,s (repeatable; default 2,1 4,2 6,3)");
  c_conv->add_option("--h", o.h, "Single time step (used when no ladder is given)")
      ->capture_default_str();
  c_conv->add_option("--h-ladder", o.h_ladder,
                     "Comma-separated decreasing time steps")
      ->delimiter(',');
  c_conv->add_option("--ref-k", o.ref_k, "Reference method k")->capture_default_str();
  c_conv->add_option("--ref-s", o.ref_s, "Reference method s")->capture_default_str();
  c_conv->add_option("--ref-h", o.ref_h, "Reference step (0 = min(h)/4)")
      ->capture_default_str();
  c_conv->add_option("--ref-tol", o.ref_tol, "Reference solver tolerance")
      ->capture_default_str();

  CLI::App* c_space = app.add_subcommand(
      "space-study",
      "Spatial-resolution ladder against a large-N reference (space.csv)");
  add_common(c_space, o);
  c_space->add_option("--k", o.k, "Quadrature stages (0 = 2s)")->capture_default_str();
  c_space->add_option("--s", o.s, "Method degree")->capture_default_str();
  c_space->add_option("--h", o.h, "Time step")->capture_default_str();
  c_space->add_option("--N-ladder", o.N_ladder,
                      "Comma-separated increasing wavenumbers "
                      "(default 30,40,50,60,70,80)")
      ->delimiter(',');
  c_space->add_option("--ref-N", o.ref_N, "Reference wavenumber")
      ->capture_default_str();

  CLI::App* c_spec = app.add_subcommand(
      "spectral", "Spectral-in-time run with stage-decay logging (rank.csv)");
  add_common(c_spec, o);
  c_spec->add_option("--k", o.k, "Quadrature stages (0 = max(20, s+2))")
      ->capture_default_str();
  c_spec->add_option("--s", o.s, "Method degree")->capture_default_str();
  c_spec->add_option("--h", o.h, "Time step")->capture_default_str();
  c_spec->add_option("--record-every", o.record_every,
                     "Row stride for invariants.csv")
      ->capture_default_str();
  c_spec->add_option("--tol-rank", o.tol_rank, "Stage-decay flag threshold")
      ->capture_default_str();

  std::vector<std::string> args;
  try {
    args = expand_config_args(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_run->parsed()) return do_run(o);
    if (c_conv->parsed()) return do_converge(o);
    if (c_space->parsed()) return do_space(o);
    if (c_spec->parsed()) return do_spectral(o);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
