#include "whitham/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace whitham {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  const char* c = v.c_str();
  char* end = nullptr;
  double x = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw ConfigError("config: key '" + key + "' has a malformed number '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const char* c = v.c_str();
  char* end = nullptr;
  long x = std::strtol(c, &end, 10);
  if (end == c || *end != '\0')
    throw ConfigError("config: key '" + key + "' has a malformed integer '" + v + "'");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "0" || v == "false") return false;
  if (v == "1" || v == "true") return true;
  throw ConfigError("config: key '" + key + "' must be 0/1/true/false, got '" + v + "'");
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (cfg.raw.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    cfg.raw[key] = val;

    if (key == "d_p") cfg.d_p = parse_int(key, val);
    else if (key == "d_q") cfg.d_q = parse_int(key, val);
    else if (key == "N") cfg.N = parse_int(key, val);
    else if (key == "S") cfg.S = parse_int(key, val);
    else if (key == "tol_integrator") cfg.tol_integrator = parse_double(key, val);
    else if (key == "tol_corrector") cfg.tol_corrector = parse_double(key, val);
    else if (key == "tol_seed") cfg.tol_seed = parse_double(key, val);
    else if (key == "jet_h") cfg.jet_h = parse_double(key, val);
    else if (key == "fd_step") cfg.fd_step = parse_double(key, val);
    else if (key == "central_differences") cfg.central_differences = parse_bool(key, val);
    else if (key == "dt") cfg.dt = parse_double(key, val);
    else if (key == "dt_min") cfg.dt_min = parse_double(key, val);
    else if (key == "dt_max") cfg.dt_max = parse_double(key, val);
    else if (key == "dt_growth") cfg.dt_growth = parse_double(key, val);
    else if (key == "snapshot_every") cfg.snapshot_every = parse_int(key, val);
    else if (key == "mode") cfg.mode = val;
    else if (key == "alpha") cfg.alpha = parse_double(key, val);
    else if (key == "gamma") cfg.gamma = parse_double(key, val);
    else if (key == "H0") cfg.H0 = parse_double(key, val);
    else if (key == "K") cfg.K = parse_int(key, val);
    else if (key == "fft_samples") cfg.fft_samples = parse_int(key, val);
    else if (key == "extra_blocks") cfg.extra_blocks = parse_int(key, val);
    else if (key == "grid_r") cfg.grid_r = parse_int(key, val);
    else if (key == "grid_phi") cfg.grid_phi = parse_int(key, val);
    else if (key == "cap_s") cfg.cap_s = parse_int(key, val);
    else if (key == "cap_phi") cfg.cap_phi = parse_int(key, val);
    else if (key == "cap_radius") cfg.cap_radius = parse_double(key, val);
    else if (key == "tol_unitarizer") cfg.tol_unitarizer = parse_double(key, val);
    else if (key == "tol_iwasawa") cfg.tol_iwasawa = parse_double(key, val);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse(in);
}

void RunConfig::validate() const {
  if (d_p < 1 || d_q < 1 || N < 0)
    throw ConfigError("config: require d_p >= 1, d_q >= 1, N >= 0");
  if (S < 4 * (N + 1))
    throw ConfigError("config: S = " + std::to_string(S) +
                      " violates S >= 4 (N + 1) = " + std::to_string(4 * (N + 1)));
  for (double tol : {tol_integrator, tol_corrector, tol_seed, jet_h, fd_step,
                     tol_unitarizer, tol_iwasawa})
    if (!(tol > 0.0)) throw ConfigError("config: tolerances and steps must be positive");
  if (!(dt_min > 0.0) || !(dt_min <= dt) || !(dt <= dt_max))
    throw ConfigError("config: require 0 < dt_min <= dt <= dt_max");
  if (!(dt_growth >= 1.0)) throw ConfigError("config: dt_growth must be >= 1");
  if (snapshot_every < 1) throw ConfigError("config: snapshot_every must be >= 1");
  if (mode != "genus_opening" && mode != "family_tracing")
    throw ConfigError("config: mode must be genus_opening or family_tracing");
  if (!(alpha > 0.0) || alpha > pi + 1e-15)
    throw ConfigError("config: alpha must lie in (0, pi]");
  if (!(gamma <= -1.0)) throw ConfigError("config: gamma must be <= -1");
  if (K < 1 || extra_blocks < 1) throw ConfigError("config: K and extra_blocks must be >= 1");
  if (fft_samples < 2 * (K + extra_blocks))
    throw ConfigError("config: fft_samples must be >= 2 (K + extra_blocks)");
  if (grid_r < 4 || grid_phi < 4 || cap_s < 3 || cap_phi < 8)
    throw ConfigError("config: reconstruction grid too small");
  if (!(cap_radius > 0.0)) throw ConfigError("config: cap_radius must be positive");
}

AccessoryShape RunConfig::shape() const {
  AccessoryShape sh;
  sh.d_p = d_p;
  sh.d_q = d_q;
  sh.N = N;
  return sh;
}

FlowMode RunConfig::flow_mode() const {
  FlowMode m;
  m.kind = (mode == "genus_opening") ? FlowMode::Kind::GenusOpening
                                     : FlowMode::Kind::FamilyTracing;
  m.frozen = (m.kind == FlowMode::Kind::GenusOpening) ? gamma : alpha;
  return m;
}

double RunConfig::t_start() const {
  return (mode == "genus_opening") ? alpha : gamma;
}

ProblemOptions RunConfig::problem_options() const {
  ProblemOptions p;
  p.S = S;
  p.tol_integrator = tol_integrator;
  p.jet_h = jet_h;
  return p;
}

FlowOptions RunConfig::flow_options() const {
  FlowOptions f;
  f.problem = problem_options();
  f.corrector_tol = tol_corrector;
  f.fd_step = fd_step;
  f.central_differences = central_differences;
  f.dt_init = dt;
  f.dt_min = dt_min;
  f.dt_max = dt_max;
  f.dt_growth = dt_growth;
  return f;
}

SeedOptions RunConfig::seed_options() const {
  SeedOptions s;
  s.flow = flow_options();
  s.tol = tol_seed;
  return s;
}

ReconstructionOptions RunConfig::reconstruction_options() const {
  ReconstructionOptions r;
  r.K = K;
  r.fft_samples = fft_samples;
  r.extra_blocks = extra_blocks;
  r.grid_r = grid_r;
  r.grid_phi = grid_phi;
  r.cap_s = cap_s;
  r.cap_phi = cap_phi;
  r.cap_radius = cap_radius;
  r.tol_integrator = tol_integrator;
  r.unitarizer_tol = tol_unitarizer;
  r.iwasawa_tol = tol_iwasawa;
  return r;
}

}  // namespace whitham
