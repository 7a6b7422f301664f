#include "oracles.hpp"
#include "errors.hpp"

#include <cmath>
#include <limits>

namespace varhydro
{

namespace
{

// Toro's pressure function for one side and its derivative.
void pressure_fn(double p, const RiemannState &s, double gamma,
                 double &f, double &df)
{
   const double a = std::sqrt(gamma*s.p/s.rho);
   if (p > s.p)
   {
      // shock branch
      const double A = 2.0/((gamma + 1.0)*s.rho);
      const double B = (gamma - 1.0)/(gamma + 1.0)*s.p;
      const double q = std::sqrt(A/(p + B));
      f = (p - s.p)*q;
      df = q*(1.0 - 0.5*(p - s.p)/(p + B));
   }
   else
   {
      // rarefaction branch
      const double pr = p/s.p;
      f = 2.0*a/(gamma - 1.0)*(std::pow(pr, (gamma - 1.0)/(2.0*gamma)) - 1.0);
      df = std::pow(pr, -(gamma + 1.0)/(2.0*gamma))/(s.rho*a);
   }
}

double total_fn(double p, const RiemannState &l, const RiemannState &r,
                double gamma, double *deriv = nullptr)
{
   double fl, dfl, fr, dfr;
   pressure_fn(p, l, gamma, fl, dfl);
   pressure_fn(p, r, gamma, fr, dfr);
   if (deriv) { *deriv = dfl + dfr; }
   return fl + fr + (r.u - l.u);
}

void check_vacuum(const RiemannState &l, const RiemannState &r, double gamma)
{
   if (!(l.rho > 0.0) || !(r.rho > 0.0) || !(l.p > 0.0) || !(r.p > 0.0))
   {
      throw InvalidArgument("exact_riemann: nonpositive input state");
   }
   const double al = std::sqrt(gamma*l.p/l.rho);
   const double ar = std::sqrt(gamma*r.p/r.rho);
   if (2.0*(al + ar)/(gamma - 1.0) <= r.u - l.u)
   {
      throw InvalidArgument("exact_riemann: vacuum-generating data is unsupported");
   }
}

} // namespace

double riemann_pstar_newton(const RiemannState &l, const RiemannState &r,
                            double gamma, double tol)
{
   check_vacuum(l, r, gamma);
   // two-rarefaction initial guess
   const double al = std::sqrt(gamma*l.p/l.rho);
   const double ar = std::sqrt(gamma*r.p/r.rho);
   const double z = (gamma - 1.0)/(2.0*gamma);
   double p = std::pow((al + ar - 0.5*(gamma - 1.0)*(r.u - l.u)) /
                       (al/std::pow(l.p, z) + ar/std::pow(r.p, z)), 1.0/z);
   p = std::max(p, 1e-12*std::min(l.p, r.p));
   for (int it = 0; it < 200; it++)
   {
      double df;
      const double f = total_fn(p, l, r, gamma, &df);
      double pn = p - f/df;
      if (pn <= 0.0) { pn = 0.5*p; }
      const double change = 2.0*std::abs(pn - p)/(pn + p);
      p = pn;
      if (change < tol) { break; }
   }
   return p;
}

double riemann_pstar_bisection(const RiemannState &l, const RiemannState &r,
                               double gamma, double tol)
{
   check_vacuum(l, r, gamma);
   double lo = 1e-14*std::min(l.p, r.p);
   double hi = std::max(l.p, r.p);
   while (total_fn(hi, l, r, gamma) < 0.0) { hi *= 2.0; }
   for (int it = 0; it < 200; it++)
   {
      const double mid = 0.5*(lo + hi);
      if (total_fn(mid, l, r, gamma) < 0.0) { lo = mid; }
      else { hi = mid; }
      if (hi - lo < tol*hi) { break; }
   }
   return 0.5*(lo + hi);
}

RiemannSolution exact_riemann(const RiemannState &left, const RiemannState &right,
                              double gamma)
{
   RiemannSolution sol;
   sol.left = left;
   sol.right = right;
   sol.gamma = gamma;
   sol.p_star = riemann_pstar_newton(left, right, gamma);
   double fl, dfl, fr, dfr;
   pressure_fn(sol.p_star, left, gamma, fl, dfl);
   pressure_fn(sol.p_star, right, gamma, fr, dfr);
   sol.u_star = 0.5*(left.u + right.u) + 0.5*(fr - fl);
   return sol;
}

double RiemannSolution::right_shock_speed() const
{
   const double ar = std::sqrt(gamma*right.p/right.rho);
   if (p_star <= right.p) { return u_star; } // right wave is a rarefaction
   return right.u + ar*std::sqrt((gamma + 1.0)/(2.0*gamma)*p_star/right.p +
                                 (gamma - 1.0)/(2.0*gamma));
}

RiemannState RiemannSolution::sample_xi(double xi) const
{
   const double g = gamma;
   const double gm = g - 1.0, gp = g + 1.0;
   RiemannState out;
   if (xi <= u_star)
   {
      const double al = std::sqrt(g*left.p/left.rho);
      if (p_star > left.p)
      {
         // left shock
         const double S = left.u - al*std::sqrt(gp/(2.0*g)*p_star/left.p + gm/(2.0*g));
         if (xi < S) { return left; }
         const double pr = p_star/left.p;
         out.rho = left.rho*((pr + gm/gp)/(gm/gp*pr + 1.0));
         out.u = u_star;
         out.p = p_star;
         return out;
      }
      // left rarefaction
      const double astar = al*std::pow(p_star/left.p, gm/(2.0*g));
      const double SH = left.u - al;
      const double ST = u_star - astar;
      if (xi < SH) { return left; }
      if (xi > ST)
      {
         out.rho = left.rho*std::pow(p_star/left.p, 1.0/g);
         out.u = u_star;
         out.p = p_star;
         return out;
      }
      const double a = 2.0/gp*(al + 0.5*gm*(left.u - xi));
      out.u = 2.0/gp*(al + 0.5*gm*left.u + xi);
      out.rho = left.rho*std::pow(a/al, 2.0/gm);
      out.p = left.p*std::pow(a/al, 2.0*g/gm);
      return out;
   }
   const double ar = std::sqrt(g*right.p/right.rho);
   if (p_star > right.p)
   {
      // right shock
      const double S = right.u + ar*std::sqrt(gp/(2.0*g)*p_star/right.p + gm/(2.0*g));
      if (xi > S) { return right; }
      const double pr = p_star/right.p;
      out.rho = right.rho*((pr + gm/gp)/(gm/gp*pr + 1.0));
      out.u = u_star;
      out.p = p_star;
      return out;
   }
   // right rarefaction
   const double astar = ar*std::pow(p_star/right.p, gm/(2.0*g));
   const double SH = right.u + ar;
   const double ST = u_star + astar;
   if (xi > SH) { return right; }
   if (xi < ST)
   {
      out.rho = right.rho*std::pow(p_star/right.p, 1.0/g);
      out.u = u_star;
      out.p = p_star;
      return out;
   }
   const double a = 2.0/gp*(ar - 0.5*gm*(right.u - xi));
   out.u = 2.0/gp*(-ar + 0.5*gm*right.u + xi);
   out.rho = right.rho*std::pow(a/ar, 2.0/gm);
   out.p = right.p*std::pow(a/ar, 2.0*g/gm);
   return out;
}

RiemannState RiemannSolution::sample(double x, double t) const
{
   if (!(t > 0.0))
   {
      return (x < 0.0) ? left : right;
   }
   return sample_xi(x/t);
}

void TaylorGreenReference::fields(const double *pos, double &rho, double *u,
                                  double &p) const
{
   const double x = pos[0], y = pos[1];
   rho = 1.0;
   u[0] = std::sin(M_PI*x)*std::cos(M_PI*y);
   u[1] = -std::cos(M_PI*x)*std::sin(M_PI*y);
   p = 0.25*(std::cos(2.0*M_PI*x) + std::cos(2.0*M_PI*y)) + 1.0;
}

double TaylorGreenReference::internal_energy(const double *pos) const
{
   double rho, u[2], p;
   fields(pos, rho, u, p);
   return p/((gamma - 1.0)*rho);
}

double TaylorGreenReference::e_src(const double *pos) const
{
   const double x = pos[0], y = pos[1];
   return 3.0*M_PI/8.0*(std::cos(3.0*M_PI*x)*std::cos(M_PI*y)
                        - std::cos(M_PI*x)*std::cos(3.0*M_PI*y));
}

void TaylorGreenReference::e_src_grad(const double *pos, double *grad) const
{
   const double x = pos[0], y = pos[1];
   const double c = 3.0*M_PI/8.0;
   grad[0] = c*(-3.0*M_PI*std::sin(3.0*M_PI*x)*std::cos(M_PI*y)
                + M_PI*std::sin(M_PI*x)*std::cos(3.0*M_PI*y));
   grad[1] = c*(-M_PI*std::cos(3.0*M_PI*x)*std::sin(M_PI*y)
                + 3.0*M_PI*std::cos(M_PI*x)*std::sin(3.0*M_PI*y));
}

double l2_error_vs_reference(const Discretization &disc, const Material &mat,
                             const FlowState &state, const RefFn &ref,
                             ErrField which)
{
   double err2 = 0.0;
   ElementWork w;
   int bad = -1;
   const int nn = disc.space.n_nodes;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, state.x, state.u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         double pos[2] = {0.0, 0.0};
         for (int i = 0; i < disc.n_loc; i++)
         {
            const int dof = disc.space.dof(e, i);
            for (int d = 0; d < disc.dim; d++)
            {
               pos[d] += state.x[kidx(d, dof, nn)]*disc.phi[(size_t)q*disc.n_loc + i];
            }
         }
         const RefFields rf = ref(pos);
         double d2 = 0.0;
         switch (which)
         {
            case ErrField::velocity:
            {
               for (int c = 0; c < disc.dim; c++)
               {
                  const double d = w.uq[(size_t)q*disc.dim + c] - rf.u[c];
                  d2 += d*d;
               }
               break;
            }
            case ErrField::internal_energy:
            {
               const double d = mat.c_v[pt]*state.theta[pt] - rf.e;
               d2 = d*d;
               break;
            }
            case ErrField::density:
            {
               const double d = mat.rho0[pt]/w.geo.J[q] - rf.rho;
               d2 = d*d;
               break;
            }
         }
         err2 += d2*w.geo.J[q]*disc.qweight[pt];
      }
   }
   return std::sqrt(err2);
}

std::vector<std::pair<double, double>> radial_scatter(const Discretization &disc,
                                                      const Material &mat,
                                                      const FlowState &state,
                                                      const double *center)
{
   std::vector<std::pair<double, double>> out;
   out.reserve(disc.n_points());
   ElementWork w;
   int bad = -1;
   const int nn = disc.space.n_nodes;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, state.x, state.u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         double pos[2] = {0.0, 0.0};
         for (int i = 0; i < disc.n_loc; i++)
         {
            const int dof = disc.space.dof(e, i);
            for (int d = 0; d < disc.dim; d++)
            {
               pos[d] += state.x[kidx(d, dof, nn)]*disc.phi[(size_t)q*disc.n_loc + i];
            }
         }
         double r2 = 0.0;
         for (int d = 0; d < disc.dim; d++)
         {
            const double dd = pos[d] - center[d];
            r2 += dd*dd;
         }
         out.emplace_back(std::sqrt(r2), mat.rho0[pt]/w.geo.J[q]);
      }
   }
   return out;
}

ConvergenceTable convergence_order(const std::vector<double> &errors,
                                   const std::vector<double> &hs)
{
   if (errors.size() != hs.size() || errors.size() < 2)
   {
      throw InvalidArgument("convergence_order: need >= 2 matching levels");
   }
   for (size_t i = 0; i + 1 < hs.size(); i++)
   {
      if (!(hs[i] > hs[i + 1]))
      {
         throw InvalidArgument("convergence_order: hs must decrease monotonically");
      }
   }
   ConvergenceTable tab;
   tab.hs = hs;
   tab.errors = errors;
   for (size_t i = 0; i + 1 < errors.size(); i++)
   {
      if (errors[i] <= 0.0 || errors[i + 1] <= 0.0)
      {
         tab.orders.push_back(std::numeric_limits<double>::quiet_NaN());
      }
      else
      {
         tab.orders.push_back(std::log(errors[i]/errors[i + 1]) /
                              std::log(hs[i]/hs[i + 1]));
      }
   }
   return tab;
}

} // namespace varhydro
