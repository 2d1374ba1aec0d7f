#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "whitham/accessory.hpp"
#include "whitham/closing.hpp"
#include "whitham/flow.hpp"
#include "whitham/immersion.hpp"

namespace whitham {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value run configuration. Unknown keys are rejected; '#'
// starts a comment; every key has a default. See README for the schema.
struct RunConfig {
  // problem structure
  int d_p = 1, d_q = 1, N = 4, S = 20;
  // tolerances and derivative steps
  double tol_integrator = 1e-12;
  double tol_corrector = 1e-8;
  double tol_seed = 1e-10;
  double jet_h = 1e-4;
  double fd_step = 1e-6;
  bool central_differences = false;
  // flow stepping
  double dt = 5e-3, dt_min = 1e-8, dt_max = 2e-2, dt_growth = 1.3;
  int snapshot_every = 25;
  // mode and geometry
  std::string mode = "genus_opening";  // or "family_tracing"
  double alpha = pi;
  double gamma = -1.0;
  double H0 = 0.0;
  // reconstruction
  int K = 16, fft_samples = 128, extra_blocks = 32;
  int grid_r = 64, grid_phi = 64, cap_s = 12, cap_phi = 48;
  double cap_radius = 0.05;
  double tol_unitarizer = 1e-6;
  double tol_iwasawa = 1e-6;

  std::map<std::string, std::string> raw;  // pairs as read, for echoing

  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);

  void validate() const;  // throws ConfigError naming the violated constraint

  AccessoryShape shape() const;
  FlowMode flow_mode() const;
  double t_start() const;  // alpha in GenusOpening, gamma in FamilyTracing
  ProblemOptions problem_options() const;
  FlowOptions flow_options() const;
  SeedOptions seed_options() const;
  ReconstructionOptions reconstruction_options() const;
};

}  // namespace whitham
