#include "isothermal.hpp"
#include "errors.hpp"

#include <cmath>
#include <limits>

namespace varhydro
{

void BarotropicEOS::validate() const
{
   if (!(alpha > 0.0)) { throw InvalidArgument("BarotropicEOS: alpha must be > 0"); }
   if (form == Form::power && !(gamma > 1.0))
   {
      throw InvalidArgument("BarotropicEOS: power form needs gamma > 1");
   }
}

double BarotropicEOS::psi(double rho) const
{
   if (!(rho > 0.0)) { throw PositivityError("BarotropicEOS::psi: rho <= 0"); }
   return form == Form::power ? alpha*std::pow(rho, gamma)
                              : alpha*rho*std::log(rho);
}

double BarotropicEOS::pressure(double rho) const
{
   if (!(rho > 0.0)) { throw PositivityError("BarotropicEOS::pressure: rho <= 0"); }
   return form == Form::power ? alpha*(gamma - 1.0)*std::pow(rho, gamma)
                              : alpha*rho;
}

double BarotropicEOS::dpressure(double rho) const
{
   if (!(rho > 0.0)) { throw PositivityError("BarotropicEOS::dpressure: rho <= 0"); }
   return form == Form::power ? alpha*gamma*(gamma - 1.0)*std::pow(rho, gamma - 1.0)
                              : alpha;
}

double barotropic_pressure(double rho, const BarotropicEOS &eos)
{
   return eos.pressure(rho);
}

IsothermalStepSystem::IsothermalStepSystem(const Discretization &disc,
                                           const Material &mat,
                                           const BarotropicEOS &eos,
                                           const ConstraintSet &bc,
                                           double dt,
                                           const Eigen::VectorXd &x_old,
                                           const Eigen::VectorXd &u_old,
                                           std::vector<double> mu_frozen)
   : disc_(disc), mat_(mat), eos_(eos), bc_(bc), dt_(dt),
     x_old_(x_old), u_old_(u_old), mu_(std::move(mu_frozen))
{
   eos_.validate();
   // freeze the t^{n-1} geometry for the dissipation terms
   const int nl = disc.n_loc;
   J_old_.assign(disc.n_points(), 0.0);
   g_old_.assign((size_t)disc.n_points()*nl*disc.dim, 0.0);
   GeometryEval geo;
   for (int e = 0; e < disc.n_elems; e++)
   {
      int bad = -1;
      if (!try_evaluate_geometry(disc, x_old_, e, geo, bad))
      {
         throw InvertedElement(e, bad);
      }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         J_old_[pt] = geo.J[q];
         for (int i = 0; i < nl; i++)
         {
            const double *G = &disc.matgrad[((size_t)pt*nl + i)*disc.dim];
            geo.Finv[q].mult_transpose(G, &g_old_[((size_t)pt*nl + i)*disc.dim]);
         }
      }
   }
}

bool IsothermalStepSystem::residual(const Eigen::VectorXd &U, Eigen::VectorXd &R)
{
   R.setZero(size());
   return assemble(U, &R, nullptr);
}

void IsothermalStepSystem::jacobian(const Eigen::VectorXd &U,
                                    Eigen::SparseMatrix<double> &J)
{
   std::vector<Eigen::Triplet<double>> trips;
   if (!assemble(U, nullptr, &trips)) { throw InvertedElement(-1, -1); }
   for (int i = 0; i < size(); i++)
   {
      if (bc_.constrained(i)) { trips.emplace_back(i, i, 1.0); }
   }
   J.resize(size(), size());
   J.setFromTriplets(trips.begin(), trips.end());
}

bool IsothermalStepSystem::assemble(const Eigen::VectorXd &U, Eigen::VectorXd *R,
                                    std::vector<Eigen::Triplet<double>> *trips)
{
   const int nl = disc_.n_loc, nq = disc_.n_qp, dim = disc_.dim;
   const int nn = disc_.space.n_nodes;
   const Eigen::VectorXd x = flowmap(U);
   const double beta = mat_.gas.xi_bulk - 2.0*mat_.gas.eta/3.0;

   ElementWork w;
   Eigen::MatrixXd K;
   int bad = -1;
   for (int e = 0; e < disc_.n_elems; e++)
   {
      if (!w.gather(disc_, x, U, e, bad)) { return false; }
      if (trips) { K.setZero(nl*dim, nl*dim); }
      for (int q = 0; q < nq; q++)
      {
         const int pt = disc_.qp(e, q);
         const double wq = disc_.qweight[pt];
         const double rho0 = mat_.rho0[pt];
         const double J = w.geo.J[q];
         const double rho = rho0/J;
         const double p = eos_.pressure(rho);
         const double mu = (mu_.empty() ? 0.0 : mu_[pt]) + mat_.gas.eta;
         const double Jo = J_old_[pt];
         const double *go = &g_old_[(size_t)pt*nl*dim];

         // frozen-geometry velocity gradient L_o = sum g_i^old (x) u_i
         Mat Lo = Mat::zero(dim);
         for (int i = 0; i < nl; i++)
         {
            const int dof = disc_.space.dof(e, i);
            for (int a = 0; a < dim; a++)
               for (int b = 0; b < dim; b++)
               {
                  Lo.a[a][b] += go[(size_t)i*dim + a]*U[kidx(b, dof, nn)];
               }
         }
         const Mat So = Lo.sym();
         const double divo = Lo.trace();
         Mat sig = So*(mu*Jo);
         for (int a = 0; a < dim; a++) { sig.a[a][a] += beta*Jo*divo; }

         if (R)
         {
            double du[2] = {0.0, 0.0};
            for (int c = 0; c < dim; c++)
            {
               double uo = 0.0;
               for (int i = 0; i < nl; i++)
               {
                  const int d2 = disc_.space.dof(e, i);
                  uo += u_old_[kidx(c, d2, nn)]*disc_.phi[(size_t)q*nl + i];
               }
               du[c] = (w.uq[(size_t)q*dim + c] - uo)/dt_;
            }
            for (int j = 0; j < nl; j++)
            {
               const int dof = disc_.space.dof(e, j);
               const double pj = disc_.phi[(size_t)q*nl + j];
               const double *gj = &w.g[((size_t)q*nl + j)*dim];
               const double *gjo = &go[(size_t)j*dim];
               double sg[2];
               sig.mult(gjo, sg);
               for (int c = 0; c < dim; c++)
               {
                  (*R)[kidx(c, dof, nn)] += wq*(rho0*pj*du[c] - p*J*gj[c] + sg[c]);
               }
            }
         }

         if (trips)
         {
            const double dpdr = eos_.dpressure(rho);
            const double pJfac = p - rho*dpdr; // d(pJ)/dJ
            for (int i = 0; i < nl; i++)
            {
               const double pi = disc_.phi[(size_t)q*nl + i];
               const double *gi = &w.g[((size_t)q*nl + i)*dim];
               const double *gio = &go[(size_t)i*dim];
               for (int a = 0; a < dim; a++)
               {
                  const double dJ = dt_*J*gi[a];
                  const int col = i*dim + a;
                  for (int j = 0; j < nl; j++)
                  {
                     const double pj = disc_.phi[(size_t)q*nl + j];
                     const double *gj = &w.g[((size_t)q*nl + j)*dim];
                     const double *gjo = &go[(size_t)j*dim];
                     const double gg_o = dot(gio, gjo, dim);
                     for (int b = 0; b < dim; b++)
                     {
                        double v = 0.0;
                        if (a == b) { v += rho0*pi*pj/dt_; }
                        // pressure: -(d(pJ) gj_b + pJ dgj_b)
                        v += -pJfac*dJ*gj[b] + p*J*dt_*gj[a]*gi[b];
                        // frozen-geometry stress (linear in U)
                        v += mu*Jo*0.5*(gio[b]*gjo[a] + (a == b ? gg_o : 0.0))
                             + beta*Jo*gio[a]*gjo[b];
                        K(j*dim + b, col) += wq*v;
                     }
                  }
               }
            }
         }
      }
      if (trips)
      {
         for (int j = 0; j < nl; j++)
         {
            const int rdof = disc_.space.dof(e, j);
            for (int b = 0; b < dim; b++)
            {
               const int row = kidx(b, rdof, nn);
               if (bc_.constrained(row)) { continue; }
               for (int i = 0; i < nl; i++)
               {
                  const int cdof = disc_.space.dof(e, i);
                  for (int a = 0; a < dim; a++)
                  {
                     const int col = kidx(a, cdof, nn);
                     if (bc_.constrained(col)) { continue; }
                     const double v = K(j*dim + b, i*dim + a);
                     if (v != 0.0) { trips->emplace_back(row, col, v); }
                  }
               }
            }
         }
      }
   }
   if (R) { bc_.zero_constrained(*R); }
   return true;
}

double IsothermalStepSystem::discrete_energy(const Eigen::VectorXd &x) const
{
   const int nl = disc_.n_loc, nq = disc_.n_qp, dim = disc_.dim;
   const int nn = disc_.space.n_nodes;
   const double beta = mat_.gas.xi_bulk - 2.0*mat_.gas.eta/3.0;
   double E = 0.0;
   GeometryEval geo;
   for (int e = 0; e < disc_.n_elems; e++)
   {
      int bad = -1;
      if (!try_evaluate_geometry(disc_, x, e, geo, bad))
      {
         return std::numeric_limits<double>::infinity();
      }
      for (int q = 0; q < nq; q++)
      {
         const int pt = disc_.qp(e, q);
         const double wq = disc_.qweight[pt];
         const double rho0 = mat_.rho0[pt];
         // inertial term: |x - x^{n-1} - dt u^{n-1}|^2 at the point
         double dev2 = 0.0;
         Mat Lo = Mat::zero(dim); // grad of v = (x - x^{n-1})/dt, frozen geometry
         const double *go = &g_old_[(size_t)pt*nl*dim];
         double dxq[2] = {0.0, 0.0};
         for (int i = 0; i < nl; i++)
         {
            const int dof = disc_.space.dof(e, i);
            const double pi = disc_.phi[(size_t)q*nl + i];
            for (int c = 0; c < dim; c++)
            {
               const double vi = (x[kidx(c, dof, nn)] - x_old_[kidx(c, dof, nn)])/dt_;
               dxq[c] += (x[kidx(c, dof, nn)] - x_old_[kidx(c, dof, nn)]
                          - dt_*u_old_[kidx(c, dof, nn)])*pi;
               for (int a = 0; a < dim; a++)
               {
                  Lo.a[a][c] += go[(size_t)i*dim + a]*vi;
               }
            }
         }
         for (int c = 0; c < dim; c++) { dev2 += dxq[c]*dxq[c]; }
         const double rho = rho0/geo.J[q];
         const double mu = (mu_.empty() ? 0.0 : mu_[pt]) + mat_.gas.eta;
         const double divo = Lo.trace();
         const double delta = mu*J_old_[pt]*Lo.sym().frobenius2()
                              + beta*J_old_[pt]*divo*divo;
         E += wq*(rho0*dev2/(2.0*dt_*dt_) + eos_.psi(rho)*geo.J[q] + 0.5*dt_*delta);
      }
   }
   return E;
}

Eigen::VectorXd IsothermalStepSystem::energy_gradient(const Eigen::VectorXd &x)
{
   Eigen::VectorXd U = (x - x_old_)/dt_;
   Eigen::VectorXd R(size());
   if (!residual(U, R)) { throw InvertedElement(-1, -1); }
   return R;
}

MinimizeReport minimize_step(IsothermalStepSystem &sys, const Eigen::VectorXd &x_old,
                             double dt, const ConstraintSet &bc,
                             Eigen::VectorXd &x_out, Eigen::VectorXd &u_out,
                             double tol, int max_iter)
{
   MinimizeReport rep;
   Eigen::VectorXd x = x_old;
   Eigen::VectorXd U = (x - x_old)/dt;
   bc.enforce(U);
   x = x_old + dt*U;

   Eigen::VectorXd R(sys.size());
   if (!sys.residual(U, R)) { throw InvertedElement(-1, -1); }
   double rnorm = R.norm();
   const double target = tol*std::max(1.0, rnorm);
   double E = sys.discrete_energy(x);
   Eigen::SparseMatrix<double> J;
   for (int it = 0; it < max_iter && rnorm > target; it++)
   {
      sys.jacobian(U, J);
      Eigen::VectorXd dU = linear_solve(J, -R);
      double step = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 30; bt++)
      {
         Eigen::VectorXd Ut = U + step*dU;
         Eigen::VectorXd xt = x_old + dt*Ut;
         const double Et = sys.discrete_energy(xt); // +inf on inversion
         Eigen::VectorXd Rt(sys.size());
         if (std::isfinite(Et) && sys.residual(Ut, Rt)
             && (Et < E || Rt.norm() < rnorm))
         {
            U = Ut; x = xt; E = Et; R = Rt; rnorm = Rt.norm();
            accepted = true;
            break;
         }
         step *= 0.5;
      }
      rep.iterations = it + 1;
      if (!accepted) { break; }
   }
   rep.final_gradient_norm = rnorm;
   rep.final_energy = E;
   rep.converged = rnorm <= target;
   x_out = x;
   u_out = U;
   return rep;
}

double isothermal_energy(const Discretization &disc, const Material &mat,
                         const BarotropicEOS &eos, const Eigen::VectorXd &x,
                         const Eigen::VectorXd &u)
{
   double E = 0.0;
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double rho = mat.rho0[pt]/w.geo.J[q];
         double u2 = 0.0;
         for (int c = 0; c < disc.dim; c++)
         {
            u2 += w.uq[(size_t)q*disc.dim + c]*w.uq[(size_t)q*disc.dim + c];
         }
         E += disc.qweight[pt]*(0.5*mat.rho0[pt]*u2 + eos.psi(rho)*w.geo.J[q]);
      }
   }
   return E;
}

std::vector<double> isothermal_av_field(const Discretization &disc,
                                        const Material &mat,
                                        const BarotropicEOS &eos,
                                        const Eigen::VectorXd &x,
                                        const Eigen::VectorXd &u,
                                        bool quadratic_switch)
{
   std::vector<double> mu(disc.n_points(), 0.0);
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      const double l0 = disc.h0[e]/disc.k;
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double rho = mat.rho0[pt]/w.geo.J[q];
         const double cs = std::sqrt(eos.dpressure(rho));
         mu[pt] = artificial_viscosity(w.L[q], rho, cs, w.geo.F[q], l0,
                                       mat.gas.q1, mat.gas.q2, quadratic_switch);
      }
   }
   return mu;
}

} // namespace varhydro
