#ifndef VARHYDRO_THERMO_HPP
#define VARHYDRO_THERMO_HPP

#include "errors.hpp"

#include <cmath>
#include <string>

namespace varhydro
{

// Ideal-gas constants plus viscosity/AV coefficients. gamma is derived;
// cases that specify gamma use c_v = 1/(gamma-1) so that c_p - c_v = 1 and
// p = rho*theta, matching the usual (rho,u,p) initial-condition convention.
struct GasParams
{
   double c_v = 2.5;
   double c_p = 3.5;
   double eta = 0.0;      // dynamic viscosity
   double xi_bulk = 0.0;  // bulk viscosity
   double q1 = 0.5;       // linear AV scaling
   double q2 = 2.0;       // quadratic AV scaling

   double gamma() const { return c_p / c_v; }
   double kappa() const { return c_p - c_v; } // the (c_p - c_v) factor in p

   static GasParams from_gamma(double gamma, double c_v = -1.0)
   {
      GasParams g;
      g.c_v = (c_v > 0.0) ? c_v : 1.0/(gamma - 1.0);
      g.c_p = gamma*g.c_v;
      return g;
   }

   void validate() const
   {
      if (!(c_p > c_v) || !(c_v > 0.0))
      {
         throw InvalidArgument("GasParams: need c_p > c_v > 0");
      }
      if (eta < 0.0 || xi_bulk < 0.0 || q1 < 0.0 || q2 < 0.0)
      {
         throw InvalidArgument("GasParams: viscosities and AV scalings must be >= 0");
      }
   }
};

struct EosOut
{
   double p;
   double e;
   double s;
};

// p = (c_p - c_v) rho theta, e = c_v theta,
// s = c_v log(theta) - (c_p - c_v) log(rho) + c_v.
inline EosOut eos_eval(double rho, double theta, double c_v, double c_p,
                       int element = -1, int point = -1)
{
   if (!(rho > 0.0) || !(theta > 0.0))
   {
      throw PositivityError("eos_eval: nonpositive density or temperature",
                            element, point);
   }
   EosOut out;
   out.p = (c_p - c_v)*rho*theta;
   out.e = c_v*theta;
   out.s = c_v*std::log(theta) - (c_p - c_v)*std::log(rho) + c_v;
   return out;
}

inline EosOut eos_eval(double rho, double theta, const GasParams &g,
                       int element = -1, int point = -1)
{
   return eos_eval(rho, theta, g.c_v, g.c_p, element, point);
}

// Pointwise strong mass conservation: rho = rho0 / J.
inline double density_from_jacobian(double rho0, double J,
                                    int element = -1, int point = -1)
{
   if (!(J > 0.0)) { throw InvertedElement(element, point); }
   if (!(rho0 > 0.0))
   {
      throw PositivityError("density_from_jacobian: nonpositive rho0", element, point);
   }
   return rho0 / J;
}

// psi = (c_p - c_v) theta rho log(rho) - c_v rho theta log(theta).
inline double free_energy_density(double rho, double theta, double c_v, double c_p)
{
   if (!(rho > 0.0) || !(theta > 0.0))
   {
      throw PositivityError("free_energy_density: nonpositive density or temperature");
   }
   return (c_p - c_v)*theta*rho*std::log(rho) - c_v*rho*theta*std::log(theta);
}

inline double free_energy_density(double rho, double theta, const GasParams &g)
{
   return free_energy_density(rho, theta, g.c_v, g.c_p);
}

// Sound speed c_s = sqrt(gamma p / rho).
inline double sound_speed(double rho, double theta, double c_v, double c_p)
{
   const double p = (c_p - c_v)*rho*theta;
   return std::sqrt((c_p/c_v)*p/rho);
}

} // namespace varhydro

#endif
