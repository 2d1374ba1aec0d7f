#include <csignal>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "whitham/closing.hpp"
#include "whitham/csv_io.hpp"
#include "whitham/flow.hpp"
#include "whitham/geometry.hpp"
#include "whitham/immersion.hpp"
#include "whitham/mesh_obj.hpp"
#include "whitham/monodromy.hpp"
#include "whitham/parallel.hpp"
#include "whitham/run_config.hpp"
#include "whitham/snapshot.hpp"

namespace fs = std::filesystem;
using namespace whitham;

namespace {

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) { g_stop = 1; }

struct CommonArgs {
  std::string config_path;
  std::string snapshot_path;
  std::string resume_path;
  std::string out_dir = ".";
  int threads = 0;
  bool dump_generators = false;
};

RunConfig load_config(const CommonArgs& args) {
  if (args.config_path.empty()) {
    RunConfig cfg;
    cfg.validate();
    return cfg;
  }
  return RunConfig::load(args.config_path);
}

fs::path ensure_out_dir(const CommonArgs& args) {
  fs::path dir(args.out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  return dir;
}

std::string join_cells(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::string snapshot_input(const CommonArgs& args) {
  if (!args.resume_path.empty()) return args.resume_path;
  return args.snapshot_path;
}

void dump_generator_file(const FlowState& state, const RunConfig& cfg,
                         const fs::path& out) {
  const GeometricParams geo = state.geometry();
  ResidueSet res = build_residues(state.A, geo.nu0(), geo.nu1());
  const PoleConfig poles = geo.poles();
  const auto nu = nu_array(geo.nu0(), geo.nu1());

  nlohmann::json j;
  for (int sp = 0; sp < 2; ++sp) {
    const cplx lam = sp ? geo.sym_point1() : geo.sym_point0();
    MonodromyGenerators gen = generators(res, poles, lam, cfg.tol_integrator);
    GeneratorDiagnostics diag = check_generators(gen, nu, poles);
    nlohmann::json g;
    g["lambda"] = {fmt17(lam.real()), fmt17(lam.imag())};
    nlohmann::json ms = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) {
      nlohmann::json m = nlohmann::json::array();
      for (int r = 0; r < 2; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 2; ++c)
          row.push_back({fmt17(gen.M[k](r, c).real()), fmt17(gen.M[k](r, c).imag())});
        m.push_back(row);
      }
      ms.push_back(m);
    }
    g["M"] = ms;
    g["det_err"] = fmt17(diag.det_err);
    g["trace_err"] = fmt17(diag.trace_err);
    g["product_err"] = fmt17(diag.product_err);
    j[sp ? "sym_point_1" : "sym_point_0"] = g;
  }
  std::ofstream os(out / "generators.json", std::ios::binary);
  os << j.dump(1) << "\n";
}

void switch_mode(FlowCursor& cursor, const std::string& mode) {
  FlowMode::Kind want;
  if (mode == "genus_opening") want = FlowMode::Kind::GenusOpening;
  else if (mode == "family_tracing") want = FlowMode::Kind::FamilyTracing;
  else throw ConfigError("flow: unknown mode '" + mode + "'");
  if (cursor.state.mode.kind == want) return;
  // t and the frozen parameter trade places between the two modes.
  std::swap(cursor.state.t, cursor.state.mode.frozen);
  cursor.state.mode.kind = want;
  cursor.dt = 0.0;
  cursor.accept_streak = 0;
}

int cmd_seed(const CommonArgs& args) {
  RunConfig cfg = load_config(args);
  fs::path out = ensure_out_dir(args);
  const FlowMode mode = cfg.flow_mode();
  const double t0 = cfg.t_start();

  AccessoryParams guess;
  double u0 = cfg.H0;
  if (!snapshot_input(args).empty()) {
    Snapshot snap = load_snapshot(snapshot_input(args));
    guess = snap.cursor.state.A;
    u0 = snap.cursor.state.u;
  } else {
    const GeometricParams geo = mode.geometry(t0, u0);
    guess = default_guess(cfg.shape(), nu_array(geo.nu0(), geo.nu1()));
  }

  FlowState seeded = seed_solve(mode, t0, guess, u0, cfg.seed_options());
  ClosingResiduals res = closing_residuals(seeded, cfg.problem_options());

  FlowCursor cursor;
  cursor.state = seeded;
  Snapshot snap = Snapshot::capture(cursor, cfg.raw, res.c_i_inf(), res.c_e_inf(),
                                    res.c_a_inf());
  save_snapshot((out / "seed.json").string(), snap);
  if (args.dump_generators) dump_generator_file(seeded, cfg, out);

  std::cout << "seed converged: t=" << fmt17(seeded.t) << " H=" << fmt17(seeded.u)
            << " residual=" << fmt17(seeded.residual_norm) << "\n";
  return 0;
}

int cmd_flow(const CommonArgs& args, double t_target, bool has_target,
             const std::string& mode_override) {
  RunConfig cfg = load_config(args);
  fs::path out = ensure_out_dir(args);
  if (snapshot_input(args).empty())
    throw ConfigError("flow: need --snapshot or --resume");
  if (!has_target) throw ConfigError("flow: need --t-target");

  Snapshot snap = load_snapshot(snapshot_input(args));
  FlowCursor cursor = snap.cursor;
  if (!mode_override.empty()) switch_mode(cursor, mode_override);

  std::ofstream csv(out / "flow.csv", std::ios::binary);
  csv << kFlowCsvVersion << "\n" << join_cells(flow_csv_columns()) << "\n";

  int steps = 0;
  StepRecord last_record;
  RunCallbacks cb;
  cb.should_stop = [] { return g_stop != 0; };
  cb.on_step = [&](const FlowState&, const StepRecord& rec) {
    last_record = rec;
    std::string events;
    for (std::size_t i = 0; i < rec.events.size(); ++i) {
      if (i) events += ';';
      events += rec.events[i];
    }
    csv << join_cells({fmt17(rec.t), fmt17(rec.u), fmt17(rec.alpha),
                       fmt17(rec.gamma), fmt17(rec.H), fmt17(rec.ci_inf),
                       fmt17(rec.ce_inf), fmt17(rec.ca_inf), fmt17(rec.dt), events})
        << "\n";
    csv.flush();
    ++steps;
    if (steps % cfg.snapshot_every == 0) {
      Snapshot periodic = Snapshot::capture(cursor, cfg.raw, rec.ci_inf, rec.ce_inf,
                                            rec.ca_inf);
      save_snapshot((out / ("snapshot_" + std::to_string(steps) + ".json")).string(),
                    periodic);
    }
  };

  RunStatus status = flow_run(cursor, t_target, cfg.flow_options(), cb);

  Snapshot final_snap = Snapshot::capture(cursor, cfg.raw, last_record.ci_inf,
                                          last_record.ce_inf, last_record.ca_inf);
  save_snapshot((out / "last.json").string(), final_snap);

  switch (status) {
    case RunStatus::ReachedTarget:
      std::cout << "flow reached t=" << fmt17(cursor.state.t) << " in " << steps
                << " steps\n";
      return 0;
    case RunStatus::Interrupted:
      std::cout << "flow interrupted at t=" << fmt17(cursor.state.t)
                << ", snapshot saved\n";
      return 0;
    case RunStatus::SteppingFailed:
      std::cerr << "flow endpoint: step width underflow at t="
                << fmt17(cursor.state.t) << " (family degeneration)\n";
      return 3;
  }
  return 1;
}

int cmd_reconstruct(const CommonArgs& args) {
  RunConfig cfg = load_config(args);
  fs::path out = ensure_out_dir(args);
  if (snapshot_input(args).empty()) throw ConfigError("reconstruct: need --snapshot");
  Snapshot snap = load_snapshot(snapshot_input(args));
  const FlowState& state = snap.cursor.state;
  const GeometricParams geo = state.geometry();

  ImmersionPatch patch = immerse(state, cfg.reconstruction_options());
  GeometryReport rep = geometry_report(patch, geo);

  {
    std::ofstream obj(out / "surface.obj", std::ios::binary);
    write_mesh_obj(obj, patch);
  }
  {
    CsvTable table;
    table.version = kGeometryCsvVersion;
    table.columns = geometry_csv_columns();
    table.rows.push_back({fmt17(state.t), fmt17(geo.poles().theta), fmt17(geo.gamma),
                          fmt17(geo.alpha), fmt17(geo.H), fmt17(rep.area),
                          fmt17(rep.willmore), fmt17(rep.refinement),
                          fmt17(rep.sphere_defect),
                          std::to_string(rep.failed_points)});
    std::ofstream gcsv(out / "geometry.csv", std::ios::binary);
    write_csv(gcsv, table);
  }
  if (args.dump_generators) dump_generator_file(state, cfg, out);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "area=" << fmt17(rep.area) << " willmore=" << fmt17(rep.willmore)
            << " H=" << fmt17(rep.H) << " refinement=" << fmt17(rep.refinement)
            << "\n";
  if (rep.failed_points > 0) {
    std::cerr << "reconstruct: " << rep.failed_points
              << " grid points failed to factor\n";
    return 2;
  }
  return 0;
}

int cmd_events(const CommonArgs& args, const std::string& input) {
  fs::path out = ensure_out_dir(args);
  CsvTable in = read_csv_file(input);
  if (in.rows.size() < 3)
    throw ConfigError("events: need at least 3 geometry rows, got " +
                      std::to_string(in.rows.size()));
  const int c_theta = in.column("theta");
  const int c_h = in.column("H");
  const int c_w = in.column("willmore");
  const int c_area = in.column("area");
  if (c_theta < 0 || c_h < 0 || c_w < 0)
    throw ConfigError("events: geometry csv needs theta, H, willmore columns");

  std::vector<double> theta;
  std::vector<GeometryReport> reports;
  for (const auto& row : in.rows) {
    theta.push_back(parse_number(row[c_theta]));
    GeometryReport rep;
    rep.H = parse_number(row[c_h]);
    rep.willmore = parse_number(row[c_w]);
    if (c_area >= 0) rep.area = parse_number(row[c_area]);
    reports.push_back(rep);
  }

  std::vector<FamilyEvent> events = family_events(theta, reports);
  CsvTable table;
  table.version = kEventsCsvVersion;
  table.columns = events_csv_columns();
  for (const auto& ev : events)
    table.rows.push_back({ev.kind, fmt17(ev.theta), fmt17(ev.value)});
  std::ofstream os(out / "events.csv", std::ios::binary);
  write_csv(os, table);
  std::cout << events.size() << " events\n";
  return 0;
}

int cmd_unstable(const CommonArgs& args) {
  fs::path out = ensure_out_dir(args);
  if (snapshot_input(args).empty()) throw ConfigError("unstable: need --snapshot");
  Snapshot snap = load_snapshot(snapshot_input(args));
  const FlowState& state = snap.cursor.state;
  const GeometricParams geo = state.geometry();
  ResidueSet res = build_residues(state.A, geo.nu0(), geo.nu1());

  std::vector<cplx> pts = res.unstable_points();
  CsvTable table;
  table.version = "# whitham unstable csv v1";
  table.columns = {"re", "im"};
  for (cplx p : pts) table.rows.push_back({fmt17(p.real()), fmt17(p.imag())});
  std::ofstream os(out / "unstable.csv", std::ios::binary);
  write_csv(os, table);
  std::cout << pts.size() << " unstable points\n";
  return 0;
}

int cmd_plotdata(const CommonArgs& args, const std::string& flow_path,
                 const std::string& geom_path) {
  fs::path out = ensure_out_dir(args);
  CsvTable f = read_csv_file(flow_path);
  CsvTable g = read_csv_file(geom_path);
  const int ft = f.column("t");
  const int gt = g.column("t");
  if (ft < 0 || gt < 0) throw ConfigError("plotdata: both inputs need a t column");

  std::map<std::string, const std::vector<std::string>*> by_t;
  for (const auto& row : g.rows)
    if (!by_t.count(row[gt])) by_t[row[gt]] = &row;

  CsvTable merged;
  merged.version = kPlotCsvVersion;
  merged.columns = f.columns;
  for (std::size_t i = 0; i < g.columns.size(); ++i)
    if (static_cast<int>(i) != gt) merged.columns.push_back(g.columns[i]);

  for (const auto& row : f.rows) {
    auto it = by_t.find(row[ft]);
    if (it == by_t.end()) continue;
    std::vector<std::string> cells = row;
    for (std::size_t i = 0; i < g.columns.size(); ++i)
      if (static_cast<int>(i) != gt) cells.push_back((*it->second)[i]);
    merged.rows.push_back(std::move(cells));
  }

  std::ofstream os(out / "plotdata.csv", std::ios::binary);
  write_csv(os, merged);
  std::cout << merged.rows.size() << " merged rows\n";
  return 0;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what();
    if (e.best_residual >= 0.0)
      std::cerr << " (best residual " << fmt17(e.best_residual) << ")";
    std::cerr << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

void add_common(CLI::App* sub, CommonArgs& args, bool wants_snapshot = true) {
  sub->add_option("--config", args.config_path, "run configuration file");
  if (wants_snapshot) {
    sub->add_option("--snapshot", args.snapshot_path, "input state snapshot");
    sub->add_option("--resume", args.resume_path, "snapshot to resume from");
  }
  sub->add_option("--out-dir", args.out_dir, "output directory");
  sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
  sub->add_flag("--dump-generators", args.dump_generators,
                "write generators.json at the sym points");
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);

  CLI::App app{"constant mean curvature surfaces in the 3-sphere"};
  app.require_subcommand(1);

  CommonArgs args;
  double t_target = 0.0;
  std::string mode_override, events_input, plot_flow, plot_geom;

  CLI::App* seed = app.add_subcommand("seed", "solve the closing conditions");
  add_common(seed, args);

  CLI::App* flow = app.add_subcommand("flow", "continuation run to a target t");
  add_common(flow, args);
  CLI::Option* opt_target =
      flow->add_option("--t-target", t_target, "flow parameter target");
  flow->add_option("--mode", mode_override,
                   "switch mode (genus_opening | family_tracing)");

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "build the surface mesh and geometry row");
  add_common(reconstruct, args);

  CLI::App* events = app.add_subcommand("events", "extract family events");
  add_common(events, args, false);
  events->add_option("input", events_input, "geometry csv")->required();

  CLI::App* unstable =
      app.add_subcommand("unstable", "eigenline coincidence points in the disk");
  add_common(unstable, args);

  CLI::App* plotdata = app.add_subcommand("plotdata", "merge flow and geometry csv");
  add_common(plotdata, args, false);
  plotdata->add_option("flow_csv", plot_flow, "flow csv")->required();
  plotdata->add_option("geometry_csv", plot_geom, "geometry csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (args.threads > 0) set_thread_count(args.threads);

  if (app.got_subcommand(seed)) return guarded([&] { return cmd_seed(args); });
  if (app.got_subcommand(flow))
    return guarded([&] {
      return cmd_flow(args, t_target, opt_target->count() > 0, mode_override);
    });
  if (app.got_subcommand(reconstruct))
    return guarded([&] { return cmd_reconstruct(args); });
  if (app.got_subcommand(events))
    return guarded([&] { return cmd_events(args, events_input); });
  if (app.got_subcommand(unstable)) return guarded([&] { return cmd_unstable(args); });
  if (app.got_subcommand(plotdata))
    return guarded([&] { return cmd_plotdata(args, plot_flow, plot_geom); });
  return 1;
}
