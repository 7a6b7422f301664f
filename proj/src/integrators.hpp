#ifndef VARHYDRO_INTEGRATORS_HPP
#define VARHYDRO_INTEGRATORS_HPP

#include "hydro.hpp"
#include "newton.hpp"
#include "state.hpp"
#include "step_system.hpp"

#include <deque>

namespace varhydro
{

enum class Scheme { BE, Midpoint, BDF2, BDF3, BDF4 };

Scheme scheme_from_string(const std::string &name);
int scheme_order(Scheme s);
const char *scheme_name(Scheme s);

struct StepParams
{
   Scheme scheme = Scheme::BDF2;
   double cfl = 1.0;
   double dt_min = 1e-12;
   double dt_max = 1e30;
   double lowmach_Mmax = 0.0; // 0 = standard CFL
   bool auto_control = true;
   double growth = 1.02;
   bool av_on = true;
   bool av_quadratic_switch = false;
   NewtonOptions newton;

   void validate() const;
};

// Up to three previous states, newest first.
struct HistoryBuffer
{
   std::deque<FlowState> states;

   void push(FlowState s, int max_keep = 4)
   {
      states.push_front(std::move(s));
      while ((int)states.size() > max_keep) { states.pop_back(); }
   }
   int size() const { return (int)states.size(); }
   const FlowState &newest() const { return states.front(); }
};

enum class StepFail { none, newton_diverged, positivity, inversion };

struct StepResult
{
   bool accepted = false;
   StepFail reason = StepFail::none;
   int bad_point = -1;
   NewtonReport newton;
   FlowState state;
   // audit data: discrete momentum recurrence defect a0 P^n + sum a_j P^{n-j}
   // per component, and the source-energy increment dt (J e_src, 1)_h of the
   // step (zero without a source).
   double mom_defect[2] = {0.0, 0.0};
   double source_energy = 0.0;
};

class Integrator
{
public:
   Integrator(const Discretization &disc, const Material &mat,
              const ConstraintSet &bc, StepParams params);

   // CFL time step (cfl * signal_dt clamped to [dt_min, dt_max]).
   double compute_dt(const FlowState &state) const;

   StepResult be_step(const FlowState &prev, double dt);
   StepResult midpoint_step(const FlowState &prev, double dt);
   // BDF[m] step; history must hold m levels. m = 2..4.
   StepResult bdf_step(const HistoryBuffer &hist, double dt, int m);

   // Scheme dispatch with BDF startup by midpoint substepping. On success
   // the new state is pushed into hist.
   StepResult advance(HistoryBuffer &hist, double dt);

   // Halve-on-failure / capped-growth control rule. Throws StepControlError
   // below dt_min.
   double next_dt_on_failure(double dt) const;
   double next_dt_on_success(const FlowState &state, double dt) const;

   const StepParams &params() const { return params_; }
   const Discretization &disc() const { return disc_; }
   const Material &material() const { return mat_; }
   const ConstraintSet &constraints() const { return bc_; }

   // AV field frozen from a given state (empty when AV is off).
   std::vector<double> frozen_av(const FlowState &state) const;

private:
   // One implicit solve with the given time levels (newest history first).
   StepResult implicit_solve(const std::vector<const FlowState *> &hist, double dt);

   const Discretization &disc_;
   const Material &mat_;
   const ConstraintSet &bc_;
   StepParams params_;
};

} // namespace varhydro

#endif
