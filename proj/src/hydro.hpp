#ifndef VARHYDRO_HYDRO_HPP
#define VARHYDRO_HYDRO_HPP

#include "fem_space.hpp"
#include "state.hpp"
#include "thermo.hpp"

#include <Eigen/SparseCore>
#include <functional>
#include <optional>
#include <vector>

namespace varhydro
{

// Pointwise material data frozen at t = 0. c_v/c_p are stored per quadrature
// point so multimaterial cases (per-region gamma) ride the same code path.
struct Material
{
   GasParams gas;
   std::vector<double> rho0; // [pt]
   std::vector<double> c_v;  // [pt]
   std::vector<double> c_p;  // [pt]
   // Internal-energy source per unit current volume; enters the temperature
   // equation as J e_src(x) / (c_v rho0). Gradient is used by the Newton
   // Jacobian (falls back to central differences when absent).
   std::function<double(const double *)> e_src;
   std::function<void(const double *, double *)> e_src_grad;

   bool has_source() const { return (bool)e_src; }
};

Material make_uniform_material(const Discretization &disc, const GasParams &gas,
                               double rho0 = 1.0);

// Gathered element data at the current flow map: geometry, spatial basis
// gradients g_i = F^{-T} G_i, velocity values and gradients.
struct ElementWork
{
   int nl = 0, nq = 0, dim = 0;
   std::vector<double> xe, ue;  // local coefficients [i*dim + a]
   GeometryEval geo;
   std::vector<double> g;       // [q*nl*dim + i*dim + a]
   std::vector<double> uq;      // [q*dim]
   std::vector<Mat> L;          // grad u per point, (L)_{ab} = d_a u_b

   // Returns false if J <= 0 at any rule point (bad_point set).
   bool gather(const Discretization &disc, const Eigen::VectorXd &x,
               const Eigen::VectorXd &u, int elem, int &bad_point);
};

// mu_av = rho ( q2 l_s^2 |lambda_1| + q1 phi0 phi1 l_s c_s ) with
// l_s = l0 |F s1|, (lambda_1, s1) the smallest eigenpair of sym(grad u),
// phi0 = clamp(|div u| / ||grad u||_F, 0, 1), phi1 = [lambda_1 < 0].
// The quadratic term is unswitched as printed; quadratic_switch gates it
// by phi1 as an option. cs is the local sound speed (sqrt(gamma p / rho)
// for an ideal gas, sqrt(dp/drho) for barotropic models).
double artificial_viscosity(const Mat &grad_u, double rho, double cs,
                            const Mat &F, double l0, double q1, double q2,
                            bool quadratic_switch = false);

// Per-point AV coefficient field for a whole state (used lagged by the
// implicit steppers). Empty vector when av is off.
std::vector<double> artificial_viscosity_field(const Discretization &disc,
                                               const Material &mat,
                                               const Eigen::VectorXd &x,
                                               const Eigen::VectorXd &u,
                                               const std::vector<double> &theta,
                                               bool quadratic_switch = false);

struct StressField
{
   std::vector<Mat> sigma; // [pt]
};

// sigma = (eta + mu_av) J sym(grad u) + (xi - 2 eta/3) J (div u) I.
// mu_av: empty = no artificial stress.
StressField assemble_stress(const Discretization &disc, const Material &mat,
                            const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                            const std::vector<double> &mu_av);

// Force part of the momentum equation (acceleration excluded):
// R_j = -((c_p-c_v) rho0 theta, div phi_j)_h + (sigma, grad phi_j)_h,
// so the semi-discrete ODE is M u' = -R.
Eigen::VectorXd momentum_force_residual(const Discretization &disc,
                                        const Material &mat,
                                        const Eigen::VectorXd &x,
                                        const Eigen::VectorXd &u,
                                        const std::vector<double> &theta,
                                        const std::vector<double> &mu_av);

// Scalar SPD kinematic mass matrix M_{jk} = (rho0 phi_k, phi_j)_h (one
// component; vector systems apply it blockwise).
Eigen::SparseMatrix<double> kinematic_mass_matrix(const Discretization &disc,
                                                  const Material &mat);

// Pointwise temperature rate:
// theta' = -(gamma-1)(div u) theta + (sigma : grad u + J e_src) / (c_v rho0).
std::vector<double> temperature_rhs(const Discretization &disc, const Material &mat,
                                    const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                                    const std::vector<double> &theta,
                                    const std::vector<double> &mu_av);

struct EntropyProduction
{
   std::vector<double> pointwise; // J rho theta s' = sigma : grad u per point
   double total_rate = 0.0;       // (sigma : grad u / theta, 1)_h
};

EntropyProduction entropy_production(const Discretization &disc, const Material &mat,
                                     const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                                     const std::vector<double> &theta,
                                     const std::vector<double> &mu_av);

// Conserved totals and per-point minima for diagnostics.
DiagnosticsRecord compute_totals(const Discretization &disc, const Material &mat,
                                 const FlowState &state);

// min over quadrature points of h0 alpha0/k / (|u| + c_hat), where alpha0 is
// the smallest singular value of F and c_hat = c_s (or M_max c_s when
// lowmach_Mmax > 0). Returns +inf for an empty mesh; throws on non-finite
// speeds.
double signal_dt(const Discretization &disc, const Material &mat,
                 const FlowState &state, double lowmach_Mmax = 0.0);

} // namespace varhydro

#endif
