#ifndef VARHYDRO_STEP_SYSTEM_HPP
#define VARHYDRO_STEP_SYSTEM_HPP

#include "hydro.hpp"
#include "newton.hpp"

#include <vector>

namespace varhydro
{

// Backward-difference coefficients for arbitrary (possibly nonuniform) time
// levels t[0] = t^n > t[1] > ... > t[m]:
//   d/dt alpha(t^n) ~ (a0 alpha^n + sum_j a[j-1] alpha^{n-j}) / dt,
// dt = t[0] - t[1]. Exact for polynomials of degree <= m; reproduces the
// classic uniform BDF coefficient sets.
struct BdfCoeffs
{
   double a0 = 1.0;
   std::vector<double> a; // history coefficients a_1 .. a_m
   double dt = 0.0;
};

BdfCoeffs bdf_coefficients(const std::vector<double> &times);

// Velocity-only nonlinear system of one implicit step. The flow map and
// temperature are eliminated:
//   x^n = (dt u^n - hx)/a0,
//   theta^n = (-htheta + dt (sigma:grad u + J e_src)/(c_v rho0))
//             / (a0 + dt (gamma-1) div u),
// and the momentum rows close the system. The AV coefficient is frozen
// (evaluated from the previous time level).
class ImplicitVelocitySystem : public NonlinearSystem
{
public:
   ImplicitVelocitySystem(const Discretization &disc, const Material &mat,
                          const ConstraintSet &bc,
                          double dt, double a0,
                          Eigen::VectorXd hx, Eigen::VectorXd hu,
                          std::vector<double> htheta,
                          std::vector<double> mu_frozen);

   int size() const override { return (int)hx_.size(); }
   bool residual(const Eigen::VectorXd &U, Eigen::VectorXd &R) override;
   void jacobian(const Eigen::VectorXd &U, Eigen::SparseMatrix<double> &J) override;

   Eigen::VectorXd flowmap(const Eigen::VectorXd &U) const;
   // Eliminated temperature at the solution; returns false on an
   // inadmissible point (J <= 0 or nonpositive update denominator) or a
   // nonpositive temperature, with the offending point index.
   bool temperature(const Eigen::VectorXd &U, std::vector<double> &theta,
                    int &bad_point) const;

   // Central-difference Jacobian (test/cross-validation path; dense).
   Eigen::MatrixXd fd_jacobian(const Eigen::VectorXd &U, double eps);

private:
   bool assemble(const Eigen::VectorXd &U, Eigen::VectorXd *R,
                 std::vector<Eigen::Triplet<double>> *trips);

   const Discretization &disc_;
   const Material &mat_;
   const ConstraintSet &bc_;
   double dt_, a0_, alpha_; // alpha = dt/a0 = dx/dU
   Eigen::VectorXd hx_, hu_;
   std::vector<double> htheta_, mu_;
};

} // namespace varhydro

#endif
