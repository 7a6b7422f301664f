#include "driver.hpp"
#include "errors.hpp"
#include "snapshot.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace varhydro
{

namespace
{

std::string snapshot_path(const std::string &dir, const std::string &stem,
                          int index, const char *ext)
{
   std::ostringstream ss;
   ss << dir << "/" << stem << "_" << std::setfill('0') << std::setw(5)
      << index << ext;
   return ss.str();
}

void write_diag_header(std::ofstream &out, int dim)
{
   out << "step,t,dt,mass,momx";
   if (dim == 2) { out << ",momy"; }
   out << ",kinetic,internal,total,entropy,newton_iters,min_J,min_theta\n";
}

void write_diag_row(std::ofstream &out, const DiagnosticsRecord &r, int dim)
{
   out << r.step << "," << r.t << "," << r.dt << "," << r.mass << ","
       << r.momentum[0];
   if (dim == 2) { out << "," << r.momentum[1]; }
   out << "," << r.kinetic << "," << r.internal << "," << r.total << ","
       << r.entropy << "," << r.newton_iters << "," << r.min_J << ","
       << r.min_theta << "\n";
}

// (rho0 |du|^2 / 2, 1)_h for the BE dissipation identity.
double half_velocity_norm(const Discretization &disc, const Material &mat,
                          const Eigen::VectorXd &x, const Eigen::VectorXd &du)
{
   double total = 0.0;
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, du, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         double d2 = 0.0;
         for (int c = 0; c < disc.dim; c++)
         {
            d2 += w.uq[(size_t)q*disc.dim + c]*w.uq[(size_t)q*disc.dim + c];
         }
         total += 0.5*disc.qweight[pt]*mat.rho0[pt]*d2;
      }
   }
   return total;
}

} // namespace

RunResult run_simulation(Simulation &sim, const RunOptions &opt)
{
   RunResult result;
   const auto t_start = std::chrono::steady_clock::now();
   const Discretization &disc = sim.disc;

   Integrator integ(disc, sim.mat, sim.bc, sim.params);
   HistoryBuffer hist;
   hist.push(sim.state0);

   std::ofstream diag_out;
   const bool files = !opt.output_dir.empty();
   if (files)
   {
      std::filesystem::create_directories(opt.output_dir);
      diag_out.open(opt.output_dir + "/diagnostics.csv");
      diag_out.precision(17);
      write_diag_header(diag_out, disc.dim);
   }

   DiagnosticsRecord d0 = compute_totals(disc, sim.mat, sim.state0);
   d0.step = 0;
   const double mass0 = d0.mass;
   result.diagnostics.push_back(d0);
   if (files) { write_diag_row(diag_out, d0, disc.dim); }

   AuditSummary &audit = result.audit;
   audit.min_pointwise_production = std::numeric_limits<double>::infinity();
   audit.entropy_change_min = std::numeric_limits<double>::infinity();
   const bool energy_identity = sim.params.scheme == Scheme::BE
                                || sim.params.scheme == Scheme::Midpoint;
   bool mom_applicable[2] = {false, false};
   for (int c = 0; c < disc.dim; c++)
   {
      bool any_constrained = false;
      for (int node = 0; node < sim.bc.n_nodes; node++)
      {
         if (sim.bc.constrained(kidx(c, node, sim.bc.n_nodes)))
         {
            any_constrained = true;
            break;
         }
      }
      mom_applicable[c] = !any_constrained;
      audit.momentum_applicable[c] = mom_applicable[c];
   }

   double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt
               : (opt.dt_init > 0.0 ? opt.dt_init : integ.compute_dt(sim.state0));
   double t = sim.state0.t;
   int snapshots = 0;
   long iters_total = 0;

   auto snapshot = [&](const FlowState &state)
   {
      if (!files) { return; }
      std::map<std::string, std::string> meta = {{"case", sim.spec.name}};
      if (opt.snapshot_format == "csv" || opt.snapshot_format == "both")
      {
         write_csv_snapshot(disc, sim.mat, state,
                            snapshot_path(opt.output_dir, "snapshot", snapshots, ".csv"),
                            meta);
      }
      if (opt.snapshot_format == "vtk" || opt.snapshot_format == "both")
      {
         write_vtk_snapshot(disc, sim.mat, state,
                            snapshot_path(opt.output_dir, "snapshot", snapshots, ".vtk"));
      }
      snapshots++;
   };

   try
   {
      while (t < opt.t_final - 1e-14*std::max(1.0, opt.t_final))
      {
         if (result.steps >= opt.max_steps)
         {
            throw StepControlError("max_steps exceeded");
         }
         const double dt_try = std::min(dt, opt.t_final - t);
         const DiagnosticsRecord prev_diag = result.diagnostics.back();
         const Eigen::VectorXd prev_u = hist.newest().u;
         StepResult res = integ.advance(hist, dt_try);
         if (!res.accepted)
         {
            if (opt.fixed_dt > 0.0)
            {
               throw StepControlError("step rejected in fixed-dt mode");
            }
            result.rejected++;
            dt = integ.next_dt_on_failure(dt_try);
            continue;
         }
         result.steps++;
         t = res.state.t;
         iters_total += res.newton.iterations;

         DiagnosticsRecord rec = compute_totals(disc, sim.mat, res.state);
         rec.step = result.steps;
         rec.dt = dt_try;
         rec.newton_iters = res.newton.iterations;
         result.diagnostics.push_back(rec);
         if (files) { write_diag_row(diag_out, rec, disc.dim); }
         if (opt.verbose)
         {
            std::cout << "step " << result.steps << "  t=" << t << "  dt=" << dt_try
                      << "  newton=" << res.newton.iterations
                      << "  minJ=" << rec.min_J << "\n";
         }

         if (opt.audit)
         {
            audit.any = true;
            audit.mass_drift_max = std::max(audit.mass_drift_max,
                                            std::abs(rec.mass - mass0));
            const double rnorm = std::max(res.newton.final_residual,
                                          sim.params.newton.tol*
                                          std::max(1.0, res.newton.first_residual));
            if (energy_identity)
            {
               audit.energy_identity_applicable = true;
               const double slack = 10.0*(dt_try*rnorm*std::max(1.0, res.state.u.norm())
                                          + 1e-13*std::max(1.0, std::abs(rec.total)));
               double defect;
               if (sim.params.scheme == Scheme::BE)
               {
                  // dE = -(rho0 |du|^2/2, 1)_h + source
                  const double half_du = half_velocity_norm(
                     disc, sim.mat, res.state.x,
                     Eigen::VectorXd(res.state.u - prev_u));
                  defect = std::abs(rec.total - prev_diag.total
                                    + half_du - res.source_energy);
                  audit.be_energy_increase_max =
                     std::max(audit.be_energy_increase_max,
                              rec.total - prev_diag.total - res.source_energy);
               }
               else
               {
                  defect = std::abs(rec.total - prev_diag.total - res.source_energy);
               }
               audit.energy_defect_max = std::max(audit.energy_defect_max, defect);
               audit.energy_slack_max = std::max(audit.energy_slack_max, slack);
            }
            for (int c = 0; c < disc.dim; c++)
            {
               if (!mom_applicable[c]) { continue; }
               audit.momentum_defect_max = std::max(audit.momentum_defect_max,
                                                    std::abs(res.mom_defect[c]));
            }
            audit.momentum_slack_max =
               std::max(audit.momentum_slack_max,
                        10.0*dt_try*rnorm*std::sqrt((double)res.state.u.size()));
            if (sim.params.av_on)
            {
               const std::vector<double> mu =
                  artificial_viscosity_field(disc, sim.mat, res.state.x, res.state.u,
                                             res.state.theta,
                                             sim.params.av_quadratic_switch);
               const EntropyProduction ep =
                  entropy_production(disc, sim.mat, res.state.x, res.state.u,
                                     res.state.theta, mu);
               for (double v : ep.pointwise)
               {
                  audit.min_pointwise_production =
                     std::min(audit.min_pointwise_production, v);
               }
            }
            audit.entropy_change_min = std::min(audit.entropy_change_min,
                                                rec.entropy - prev_diag.entropy);
         }

         if (opt.snapshot_every > 0 && result.steps % opt.snapshot_every == 0)
         {
            snapshot(res.state);
         }
         if (opt.fixed_dt > 0.0) { dt = opt.fixed_dt; }
         else { dt = integ.next_dt_on_success(res.state, dt_try); }
      }
      result.final_state = hist.newest();
      snapshot(result.final_state);
      result.ok = true;
   }
   catch (const std::exception &ex)
   {
      result.error = ex.what();
      result.final_state = hist.newest();
   }

   result.newton_iters_mean = result.steps > 0
                              ? (double)iters_total/result.steps : 0.0;
   result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t_start).count();
   return result;
}

Simulation simulation_from_config(const Config &cfg)
{
   const std::string case_name = cfg.get("case");
   if (case_name.empty()) { throw ConfigError("missing 'case' key"); }
   CaseSpec spec = get_case(case_name);

   if (cfg.has("nx")) { spec.nx = cfg.get_int("nx", spec.nx); }
   if (cfg.has("ny")) { spec.ny = cfg.get_int("ny", spec.ny); }
   if (cfg.has("degree")) { spec.degree = cfg.get_int("degree", spec.degree); }
   if (cfg.has("scheme")) { spec.scheme = scheme_from_string(cfg.get("scheme")); }
   if (cfg.has("cfl")) { spec.cfl = cfg.get_double("cfl", spec.cfl); }
   if (cfg.has("q1")) { spec.q1 = cfg.get_double("q1", spec.q1); }
   if (cfg.has("q2")) { spec.q2 = cfg.get_double("q2", spec.q2); }
   if (cfg.has("t_final")) { spec.t_final = cfg.get_double("t_final", spec.t_final); }
   if (cfg.has("av")) { spec.av_on = cfg.get_bool("av", spec.av_on); }
   if (cfg.has("gamma")) { spec.gamma = cfg.get_double("gamma", spec.gamma); }
   if (cfg.has("c_v")) { spec.c_v = cfg.get_double("c_v", spec.c_v); }
   if (cfg.has("mmax"))
   {
      spec.lowmach_Mmax = cfg.get_double("mmax", spec.lowmach_Mmax);
   }
   if (cfg.has("e_floor")) { spec.e_floor = cfg.get_double("e_floor", spec.e_floor); }
   if (!(spec.cfl > 0.0)) { throw ConfigError("cfl must be positive"); }
   if (!(spec.t_final > 0.0)) { throw ConfigError("t_final must be positive"); }

   Simulation sim = instantiate_case(spec);

   sim.params.auto_control = cfg.get_bool("auto_control", true);
   sim.params.newton.tol = cfg.get_double("newton_tol", 1e-10);
   sim.params.newton.max_iter = cfg.get_int("newton_max_iter", 25);
   sim.params.av_quadratic_switch = cfg.get_bool("av_quadratic_switch", false);
   sim.params.dt_min = cfg.get_double("dt_min", 1e-12);
   sim.params.dt_max = cfg.get_double("dt_max", 1e30);

   const int threads = cfg.get_int("threads", 1);
   if (threads < 1) { throw ConfigError("threads must be >= 1"); }
   if (threads > 1)
   {
      std::cerr << "note: parallel assembly is not built in; running serial\n";
   }
   return sim;
}

RunOptions options_from_config(const Config &cfg, const Simulation &sim)
{
   RunOptions opt;
   opt.t_final = sim.spec.t_final;
   opt.fixed_dt = cfg.get_double("fixed_dt", 0.0);
   opt.dt_init = cfg.get_double("dt_init", 0.0);
   opt.snapshot_every = cfg.get_int("snapshot_every", 0);
   opt.snapshot_format = cfg.get("snapshot_format", "csv");
   if (opt.snapshot_format != "csv" && opt.snapshot_format != "vtk"
       && opt.snapshot_format != "both")
   {
      throw ConfigError("snapshot_format must be csv, vtk, or both");
   }
   const char *env_dir = std::getenv("VARHYDRO_OUTPUT_DIR");
   opt.output_dir = cfg.get("output_dir", env_dir ? env_dir : "out");
   opt.audit = cfg.get_bool("audit", false);
   opt.max_steps = cfg.get_int("max_steps", 2000000);
   opt.verbose = cfg.get_bool("verbose", false);
   return opt;
}

int run_from_config(const Config &cfg)
{
   Simulation sim = simulation_from_config(cfg);
   RunOptions opt = options_from_config(cfg, sim);
   std::cout << "case " << sim.spec.name << ": " << scheme_name(sim.params.scheme)
             << "-P" << sim.spec.degree << ", " << sim.disc.n_elems
             << " elements, " << sim.disc.space.n_nodes << " kinematic nodes\n";
   RunResult res = run_simulation(sim, opt);
   if (!res.ok)
   {
      std::cerr << "run failed after " << res.steps << " steps: " << res.error << "\n";
      return 1;
   }
   const DiagnosticsRecord &fin = res.diagnostics.back();
   std::cout << "done: " << res.steps << " steps (" << res.rejected
             << " rejected), t=" << fin.t << ", mean newton iters "
             << res.newton_iters_mean << "\n";
   std::cout << "totals: mass=" << fin.mass << " energy=" << fin.total
             << " entropy=" << fin.entropy << " minJ=" << fin.min_J << "\n";
   if (!opt.output_dir.empty())
   {
      std::cout << "wrote " << opt.output_dir << "/diagnostics.csv and snapshots\n";
   }
   return 0;
}

TgConvergence taylor_green_convergence(int m, const std::vector<int> &meshes,
                                       double dt0, double t_final,
                                       double newton_tol, bool verbose)
{
   TgConvergence out;
   const TaylorGreenReference tg;
   RefFn ref = [&tg](const double *pos)
   {
      RefFields f;
      tg.fields(pos, f.rho, f.u, f.p);
      f.e = tg.internal_energy(pos);
      return f;
   };
   for (size_t l = 0; l < meshes.size(); l++)
   {
      CaseSpec spec = get_case("taylor-green");
      spec.nx = spec.ny = meshes[l];
      spec.degree = m;
      spec.scheme = m == 1 ? Scheme::BE : (m == 2 ? Scheme::BDF2
                    : (m == 3 ? Scheme::BDF3 : Scheme::BDF4));
      spec.t_final = t_final;
      spec.av_on = false;
      Simulation sim = instantiate_case(spec);
      sim.params.newton.tol = newton_tol;

      RunOptions opt;
      opt.t_final = t_final;
      opt.fixed_dt = dt0/std::pow(2.0, (double)l);
      RunResult res = run_simulation(sim, opt);
      if (!res.ok)
      {
         throw StepControlError("convergence run failed on mesh " +
                                std::to_string(meshes[l]) + ": " + res.error);
      }
      const double eu = l2_error_vs_reference(sim.disc, sim.mat, res.final_state,
                                              ref, ErrField::velocity);
      const double ee = l2_error_vs_reference(sim.disc, sim.mat, res.final_state,
                                              ref, ErrField::internal_energy);
      out.hs.push_back(1.0/meshes[l]);
      out.err_u.push_back(eu);
      out.err_e.push_back(ee);
      if (verbose)
      {
         std::cout << "  " << meshes[l] << "x" << meshes[l] << ": err_u=" << eu
                   << " err_e=" << ee << " (" << res.steps << " steps)\n";
      }
   }
   const ConvergenceTable tu = convergence_order(out.err_u, out.hs);
   const ConvergenceTable te = convergence_order(out.err_e, out.hs);
   out.order_u = tu.orders;
   out.order_e = te.orders;
   return out;
}

void write_convergence_csv(const TgConvergence &tab, const std::string &path)
{
   std::ofstream out(path);
   if (!out) { throw ConfigError("write_convergence_csv: cannot open " + path); }
   out.precision(12);
   out << "h,error_u,order_u,error_e,order_e\n";
   for (size_t i = 0; i < tab.hs.size(); i++)
   {
      out << tab.hs[i] << "," << tab.err_u[i] << ",";
      if (i == 0) { out << "-"; } else { out << tab.order_u[i - 1]; }
      out << "," << tab.err_e[i] << ",";
      if (i == 0) { out << "-"; } else { out << tab.order_e[i - 1]; }
      out << "\n";
   }
}

} // namespace varhydro
