#include "integrators.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace varhydro
{

Scheme scheme_from_string(const std::string &name)
{
   if (name == "be" || name == "euler") { return Scheme::BE; }
   if (name == "midpoint") { return Scheme::Midpoint; }
   if (name == "bdf1") { return Scheme::BE; }
   if (name == "bdf2") { return Scheme::BDF2; }
   if (name == "bdf3") { return Scheme::BDF3; }
   if (name == "bdf4") { return Scheme::BDF4; }
   throw ConfigError("unknown scheme '" + name + "'");
}

int scheme_order(Scheme s)
{
   switch (s)
   {
      case Scheme::BE: return 1;
      case Scheme::Midpoint: return 2;
      case Scheme::BDF2: return 2;
      case Scheme::BDF3: return 3;
      default: return 4;
   }
}

const char *scheme_name(Scheme s)
{
   switch (s)
   {
      case Scheme::BE: return "be";
      case Scheme::Midpoint: return "midpoint";
      case Scheme::BDF2: return "bdf2";
      case Scheme::BDF3: return "bdf3";
      default: return "bdf4";
   }
}

void StepParams::validate() const
{
   if (!(cfl > 0.0)) { throw ConfigError("cfl must be positive"); }
   if (!(dt_min > 0.0) || !(dt_max >= dt_min))
   {
      throw ConfigError("dt bounds must be positive and ordered");
   }
   if (lowmach_Mmax < 0.0) { throw ConfigError("lowmach M_max must be >= 0"); }
}

Integrator::Integrator(const Discretization &disc, const Material &mat,
                       const ConstraintSet &bc, StepParams params)
   : disc_(disc), mat_(mat), bc_(bc), params_(std::move(params))
{
   params_.validate();
}

double Integrator::compute_dt(const FlowState &state) const
{
   const double dt = params_.cfl*signal_dt(disc_, mat_, state, params_.lowmach_Mmax);
   return std::clamp(dt, params_.dt_min, params_.dt_max);
}

std::vector<double> Integrator::frozen_av(const FlowState &state) const
{
   if (!params_.av_on) { return {}; }
   return artificial_viscosity_field(disc_, mat_, state.x, state.u, state.theta,
                                     params_.av_quadratic_switch);
}

StepResult Integrator::implicit_solve(const std::vector<const FlowState *> &hist,
                                      double dt)
{
   const int m = (int)hist.size();
   std::vector<double> times(m + 1);
   times[0] = hist[0]->t + dt;
   for (int j = 0; j < m; j++) { times[j + 1] = hist[j]->t; }
   const BdfCoeffs co = bdf_coefficients(times);

   const int n = (int)hist[0]->x.size();
   Eigen::VectorXd hx = Eigen::VectorXd::Zero(n);
   Eigen::VectorXd hu = Eigen::VectorXd::Zero(n);
   std::vector<double> htheta(disc_.n_points(), 0.0);
   for (int j = 0; j < m; j++)
   {
      hx += co.a[j]*hist[j]->x;
      hu += co.a[j]*hist[j]->u;
      for (int p = 0; p < disc_.n_points(); p++)
      {
         htheta[p] += co.a[j]*hist[j]->theta[p];
      }
   }

   ImplicitVelocitySystem sys(disc_, mat_, bc_, dt, co.a0,
                              std::move(hx), std::move(hu), std::move(htheta),
                              frozen_av(*hist[0]));

   StepResult res;
   Eigen::VectorXd U = hist[0]->u;
   bc_.enforce(U);
   res.newton = newton_solve(sys, U, params_.newton);
   if (res.newton.invalid_initial || !res.newton.converged)
   {
      res.reason = res.newton.invalid_initial ? StepFail::inversion
                                              : StepFail::newton_diverged;
      return res;
   }

   FlowState next;
   next.u = U;
   next.x = sys.flowmap(U);
   next.t = times[0];
   int bad = -1;
   if (!sys.temperature(U, next.theta, bad))
   {
      res.reason = StepFail::positivity;
      res.bad_point = bad;
      return res;
   }

   // audit quantities: momentum recurrence defect and the source increment
   {
      ElementWork w;
      const int nn = disc_.space.n_nodes;
      for (int e = 0; e < disc_.n_elems; e++)
      {
         int b2 = -1;
         if (!w.gather(disc_, next.x, next.u, e, b2)) { break; }
         for (int q = 0; q < disc_.n_qp; q++)
         {
            const int pt = disc_.qp(e, q);
            const double wq = disc_.qweight[pt];
            for (int c = 0; c < disc_.dim; c++)
            {
               double hval = 0.0;
               for (int j = 0; j < m; j++)
               {
                  double uj = 0.0;
                  for (int i = 0; i < disc_.n_loc; i++)
                  {
                     const int dof = disc_.space.dof(e, i);
                     uj += hist[j]->u[kidx(c, dof, nn)]*disc_.phi[(size_t)q*disc_.n_loc + i];
                  }
                  hval += co.a[j]*uj;
               }
               res.mom_defect[c] += wq*mat_.rho0[pt]*
                                    (co.a0*w.uq[(size_t)q*disc_.dim + c] + hval);
            }
            if (mat_.has_source())
            {
               double pos[2] = {0.0, 0.0};
               for (int i = 0; i < disc_.n_loc; i++)
               {
                  const int dof = disc_.space.dof(e, i);
                  for (int d = 0; d < disc_.dim; d++)
                  {
                     pos[d] += next.x[kidx(d, dof, nn)]*disc_.phi[(size_t)q*disc_.n_loc + i];
                  }
               }
               res.source_energy += dt*wq*w.geo.J[q]*mat_.e_src(pos);
            }
         }
      }
   }

   res.accepted = true;
   res.state = std::move(next);
   return res;
}

StepResult Integrator::be_step(const FlowState &prev, double dt)
{
   if (!(dt > 0.0)) { throw InvalidArgument("be_step: dt must be positive"); }
   return implicit_solve({&prev}, dt);
}

StepResult Integrator::midpoint_step(const FlowState &prev, double dt)
{
   StepResult half = be_step(prev, 0.5*dt);
   if (!half.accepted) { return half; }
   // time filter: v^n = 2 v^{n-1/2} - v^{n-1}
   StepResult res;
   res.newton = half.newton;
   res.mom_defect[0] = 2.0*half.mom_defect[0];
   res.mom_defect[1] = 2.0*half.mom_defect[1];
   res.source_energy = 2.0*half.source_energy;
   FlowState next;
   next.x = 2.0*half.state.x - prev.x;
   next.u = 2.0*half.state.u - prev.u;
   next.t = prev.t + dt;
   next.theta.resize(prev.theta.size());
   for (size_t p = 0; p < prev.theta.size(); p++)
   {
      next.theta[p] = 2.0*half.state.theta[p] - prev.theta[p];
      if (!(next.theta[p] > 0.0))
      {
         res.reason = StepFail::positivity;
         res.bad_point = (int)p;
         return res;
      }
   }
   // extrapolated geometry must stay valid
   GeometryEval geo;
   for (int e = 0; e < disc_.n_elems; e++)
   {
      int bad = -1;
      if (!try_evaluate_geometry(disc_, next.x, e, geo, bad))
      {
         res.reason = StepFail::inversion;
         res.bad_point = disc_.qp(e, bad);
         return res;
      }
   }
   res.accepted = true;
   res.state = std::move(next);
   return res;
}

StepResult Integrator::bdf_step(const HistoryBuffer &hist, double dt, int m)
{
   if (m < 2 || m > 4) { throw InvalidArgument("bdf_step: m must be 2..4"); }
   if (hist.size() < m)
   {
      throw InvalidArgument("bdf_step: insufficient history for BDF[" +
                            std::to_string(m) + "]");
   }
   std::vector<const FlowState *> levels;
   for (int j = 0; j < m; j++) { levels.push_back(&hist.states[j]); }
   return implicit_solve(levels, dt);
}

StepResult Integrator::advance(HistoryBuffer &hist, double dt)
{
   if (hist.size() == 0)
   {
      throw InvalidArgument("advance: empty history");
   }
   StepResult res;
   switch (params_.scheme)
   {
      case Scheme::BE:
         res = be_step(hist.newest(), dt);
         break;
      case Scheme::Midpoint:
         res = midpoint_step(hist.newest(), dt);
         break;
      default:
      {
         const int m = scheme_order(params_.scheme);
         if (hist.size() < m)
         {
            // startup by midpoint substepping
            int nsub = 1;
            if (m >= 3)
            {
               nsub = (int)std::ceil(std::pow(dt, -0.5*(m - 2)));
               nsub = std::max(nsub, 2);
            }
            FlowState cur = hist.newest();
            for (int s = 0; s < nsub; s++)
            {
               StepResult sub = midpoint_step(cur, dt/nsub);
               if (!sub.accepted) { return sub; }
               res = sub;
               cur = std::move(sub.state);
            }
            res.state = std::move(cur);
            res.accepted = true;
         }
         else
         {
            res = bdf_step(hist, dt, m);
         }
         break;
      }
   }
   if (res.accepted) { hist.push(res.state); }
   return res;
}

double Integrator::next_dt_on_failure(double dt) const
{
   const double next = 0.5*dt;
   if (next < params_.dt_min)
   {
      throw StepControlError("time step fell below dt_min after halving");
   }
   return next;
}

double Integrator::next_dt_on_success(const FlowState &state, double dt) const
{
   if (!params_.auto_control) { return dt; }
   return std::clamp(std::min(compute_dt(state), params_.growth*dt),
                     params_.dt_min, params_.dt_max);
}

} // namespace varhydro
