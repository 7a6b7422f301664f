#ifndef VARHYDRO_ISOTHERMAL_HPP
#define VARHYDRO_ISOTHERMAL_HPP

#include "hydro.hpp"
#include "newton.hpp"
#include "state.hpp"

#include <vector>

namespace varhydro
{

// Barotropic free energy psi(rho) with p = psi_rho rho - psi.
struct BarotropicEOS
{
   enum class Form { power, loglinear };
   Form form = Form::power;
   double alpha = 1.0;
   double gamma = 2.0; // power form only

   double psi(double rho) const;
   double pressure(double rho) const;
   double dpressure(double rho) const; // dp/drho = rho psi''
   void validate() const;
};

double barotropic_pressure(double rho, const BarotropicEOS &eos);

// Backward Euler system of the isothermal scheme: unknown u^n with
// x^n = x^{n-1} + dt u^n. The pressure pairing is J-weighted,
// -(p_h J_h, div phi)_h, and the viscous stress uses geometry frozen at
// t^{n-1}, which makes the step the exact Euler-Lagrange equation of the
// incremental energy functional below.
class IsothermalStepSystem : public NonlinearSystem
{
public:
   IsothermalStepSystem(const Discretization &disc, const Material &mat,
                        const BarotropicEOS &eos, const ConstraintSet &bc,
                        double dt, const Eigen::VectorXd &x_old,
                        const Eigen::VectorXd &u_old,
                        std::vector<double> mu_frozen);

   int size() const override { return (int)x_old_.size(); }
   bool residual(const Eigen::VectorXd &U, Eigen::VectorXd &R) override;
   void jacobian(const Eigen::VectorXd &U, Eigen::SparseMatrix<double> &J) override;

   Eigen::VectorXd flowmap(const Eigen::VectorXd &U) const { return x_old_ + dt_*U; }

   // Incremental energy: (rho0 |x - x^{n-1} - dt u^{n-1}|^2 / (2 dt^2)
   //                      + psi(rho0/J) J, 1)_h + (dt/2)(Delta_h, 1)_h.
   // Returns +inf when J <= 0 anywhere (rejects trial points in descent).
   double discrete_energy(const Eigen::VectorXd &x) const;
   // grad E(x); equals the BE residual at u = (x - x^{n-1})/dt.
   Eigen::VectorXd energy_gradient(const Eigen::VectorXd &x);

private:
   bool assemble(const Eigen::VectorXd &U, Eigen::VectorXd *R,
                 std::vector<Eigen::Triplet<double>> *trips);

   const Discretization &disc_;
   const Material &mat_;
   BarotropicEOS eos_;
   const ConstraintSet &bc_;
   double dt_;
   Eigen::VectorXd x_old_, u_old_;
   std::vector<double> mu_;
   // frozen geometry of the t^{n-1} configuration
   std::vector<double> J_old_;    // [pt]
   std::vector<double> g_old_;    // [(pt*nl + i)*dim + a]
};

struct MinimizeReport
{
   int iterations = 0;
   double final_gradient_norm = 0.0;
   double final_energy = 0.0;
   bool converged = false;
   bool energy_monotone = true;
};

// x^n = argmin E_h over J > 0 (Newton on the gradient with backtracking on
// the energy); u^n = (x^n - x^{n-1})/dt.
MinimizeReport minimize_step(IsothermalStepSystem &sys, const Eigen::VectorXd &x_old,
                             double dt, const ConstraintSet &bc,
                             Eigen::VectorXd &x_out, Eigen::VectorXd &u_out,
                             double tol = 1e-10, int max_iter = 60);

// (1/2 rho0 |u|^2 + psi(rho0/J) J, 1)_h — the decaying functional of the
// isothermal scheme.
double isothermal_energy(const Discretization &disc, const Material &mat,
                         const BarotropicEOS &eos, const Eigen::VectorXd &x,
                         const Eigen::VectorXd &u);

// AV coefficient field with barotropic sound speed c_s = sqrt(dp/drho).
std::vector<double> isothermal_av_field(const Discretization &disc,
                                        const Material &mat,
                                        const BarotropicEOS &eos,
                                        const Eigen::VectorXd &x,
                                        const Eigen::VectorXd &u,
                                        bool quadratic_switch = false);

} // namespace varhydro

#endif
