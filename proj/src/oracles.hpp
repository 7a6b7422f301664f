#ifndef VARHYDRO_ORACLES_HPP
#define VARHYDRO_ORACLES_HPP

#include "hydro.hpp"
#include "state.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace varhydro
{

// --- exact Riemann solver (ideal gas) ---

struct RiemannState
{
   double rho, u, p;
};

struct RiemannSolution
{
   RiemannState left, right;
   double gamma = 1.4;
   double p_star = 0.0;
   double u_star = 0.0;

   // self-similar solution sampled at xi = x/t
   RiemannState sample_xi(double xi) const;
   RiemannState sample(double x, double t) const;
   // wave speeds for shock-position queries: returns the right-going shock
   // speed when the right wave is a shock (Sod-like setups).
   double right_shock_speed() const;
};

// Solves the pressure function for p*. Throws on vacuum-generating data.
RiemannSolution exact_riemann(const RiemannState &left, const RiemannState &right,
                              double gamma);

// Independent root finders for the star pressure (test oracles).
double riemann_pstar_newton(const RiemannState &l, const RiemannState &r,
                            double gamma, double tol = 1e-14);
double riemann_pstar_bisection(const RiemannState &l, const RiemannState &r,
                               double gamma, double tol = 1e-12);

// --- Taylor-Green (stationary vortex with energy source) ---

struct TaylorGreenReference
{
   double gamma = 5.0/3.0;
   void fields(const double *pos, double &rho, double *u, double &p) const;
   double internal_energy(const double *pos) const; // e = p/((gamma-1) rho)
   double e_src(const double *pos) const;
   void e_src_grad(const double *pos, double *grad) const;
};

// --- error metrics and convergence ---

struct RefFields
{
   double rho = 0.0;
   double u[2] = {0.0, 0.0};
   double p = 0.0;
   double e = 0.0;
};

using RefFn = std::function<RefFields(const double *pos)>;

enum class ErrField { velocity, internal_energy, density };

// L2 norm over the deformed configuration via the moving measure J w:
// sqrt(((f_h - f(x_h))^2, J)_h).
double l2_error_vs_reference(const Discretization &disc, const Material &mat,
                             const FlowState &state, const RefFn &ref,
                             ErrField which);

// (radius, density) pairs at all quadrature points of the deformed state.
std::vector<std::pair<double, double>> radial_scatter(const Discretization &disc,
                                                      const Material &mat,
                                                      const FlowState &state,
                                                      const double *center);

struct ConvergenceTable
{
   std::vector<double> hs;
   std::vector<double> errors;
   std::vector<double> orders; // orders[i] between levels i and i+1; NaN if undefined
};

ConvergenceTable convergence_order(const std::vector<double> &errors,
                                   const std::vector<double> &hs);

} // namespace varhydro

#endif
