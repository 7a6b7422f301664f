#ifndef VARHYDRO_DRIVER_HPP
#define VARHYDRO_DRIVER_HPP

#include "cases.hpp"
#include "config.hpp"
#include "oracles.hpp"

#include <string>
#include <vector>

namespace varhydro
{

struct RunOptions
{
   double t_final = 1.0;
   double fixed_dt = 0.0;   // > 0: constant step (convergence studies)
   double dt_init = 0.0;    // 0: start from the CFL estimate
   int snapshot_every = 0;  // steps between snapshots; 0 = final only
   std::string snapshot_format = "csv"; // csv | vtk | both
   std::string output_dir;  // empty: no files written
   bool audit = false;      // per-step conservation/entropy checks
   int max_steps = 2000000;
   bool verbose = false;
};

// Accumulated per-step identity checks; "slack" entries record the largest
// tolerance the checks were held to (10x Newton residual scale).
struct AuditSummary
{
   bool any = false;
   double mass_drift_max = 0.0;
   bool energy_identity_applicable = false; // BE / midpoint only
   double energy_defect_max = 0.0;
   double energy_slack_max = 0.0;
   double be_energy_increase_max = 0.0;     // positive = violation (BE, no source)
   bool momentum_applicable[2] = {false, false};
   double momentum_defect_max = 0.0;
   double momentum_slack_max = 0.0;
   double min_pointwise_production = 0.0;   // over accepted states (AV runs)
   double entropy_change_min = 0.0;         // min per-step (rho0 s, 1)_h change
};

struct RunResult
{
   bool ok = false;
   std::string error;
   int steps = 0;
   int rejected = 0;
   double wall_seconds = 0.0;
   double newton_iters_mean = 0.0;
   FlowState final_state;
   std::vector<DiagnosticsRecord> diagnostics;
   AuditSummary audit;
};

RunResult run_simulation(Simulation &sim, const RunOptions &opt);

// Config plumbing: case selection plus per-key overrides.
Simulation simulation_from_config(const Config &cfg);
RunOptions options_from_config(const Config &cfg, const Simulation &sim);

// `run` subcommand body; returns a process exit code.
int run_from_config(const Config &cfg);

// Taylor-Green convergence study: BDF[m]-P^m on N x N meshes with
// dt = dt0 / 2^level, AV off, fixed steps. Errors against the exact fields
// at t_final.
struct TgConvergence
{
   std::vector<double> hs;
   std::vector<double> err_u, err_e;
   std::vector<double> order_u, order_e; // pairwise
};

TgConvergence taylor_green_convergence(int m, const std::vector<int> &meshes,
                                       double dt0, double t_final,
                                       double newton_tol = 1e-10,
                                       bool verbose = false);

void write_convergence_csv(const TgConvergence &tab, const std::string &path);

} // namespace varhydro

#endif
