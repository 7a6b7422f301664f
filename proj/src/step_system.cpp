#include "step_system.hpp"
#include "errors.hpp"

#include <cmath>

namespace varhydro
{

BdfCoeffs bdf_coefficients(const std::vector<double> &times)
{
   const int m = (int)times.size() - 1;
   if (m < 1) { throw InvalidArgument("bdf_coefficients: need at least two levels"); }
   for (int j = 0; j < m; j++)
   {
      if (!(times[j] > times[j + 1]))
      {
         throw InvalidArgument("bdf_coefficients: times must be strictly decreasing");
      }
   }
   BdfCoeffs c;
   c.dt = times[0] - times[1];
   // c_j = L_j'(t0) for the Lagrange basis over the levels
   double c0 = 0.0;
   for (int j = 1; j <= m; j++) { c0 += 1.0/(times[0] - times[j]); }
   c.a0 = c0*c.dt;
   c.a.resize(m);
   for (int j = 1; j <= m; j++)
   {
      double num = 1.0, den = 1.0;
      for (int l = 0; l <= m; l++)
      {
         if (l == j) { continue; }
         if (l != 0) { num *= (times[0] - times[l]); }
         den *= (times[j] - times[l]);
      }
      c.a[j - 1] = (num/den)*c.dt;
   }
   return c;
}

ImplicitVelocitySystem::ImplicitVelocitySystem(
   const Discretization &disc, const Material &mat, const ConstraintSet &bc,
   double dt, double a0, Eigen::VectorXd hx, Eigen::VectorXd hu,
   std::vector<double> htheta, std::vector<double> mu_frozen)
   : disc_(disc), mat_(mat), bc_(bc), dt_(dt), a0_(a0), alpha_(dt/a0),
     hx_(std::move(hx)), hu_(std::move(hu)),
     htheta_(std::move(htheta)), mu_(std::move(mu_frozen))
{
}

Eigen::VectorXd ImplicitVelocitySystem::flowmap(const Eigen::VectorXd &U) const
{
   return (dt_*U - hx_)/a0_;
}

bool ImplicitVelocitySystem::temperature(const Eigen::VectorXd &U,
                                         std::vector<double> &theta,
                                         int &bad_point) const
{
   const Eigen::VectorXd x = flowmap(U);
   theta.assign(disc_.n_points(), 0.0);
   bad_point = -1;
   ElementWork w;
   int bad = -1;
   const double gmin = 1e-14;
   for (int e = 0; e < disc_.n_elems; e++)
   {
      if (!w.gather(disc_, x, U, e, bad)) { bad_point = disc_.qp(e, bad); return false; }
      for (int q = 0; q < disc_.n_qp; q++)
      {
         const int pt = disc_.qp(e, q);
         const double J = w.geo.J[q];
         const double mu = mu_.empty() ? 0.0 : mu_[pt];
         const double eta = mat_.gas.eta + mu;
         const double beta = mat_.gas.xi_bulk - 2.0*mat_.gas.eta/3.0;
         const Mat S = w.L[q].sym();
         const double div = w.L[q].trace();
         double W = eta*J*S.frobenius2() + beta*J*div*div;
         if (mat_.has_source())
         {
            double pos[2] = {0.0, 0.0};
            const int nn = disc_.space.n_nodes;
            for (int i = 0; i < disc_.n_loc; i++)
            {
               const int dof = disc_.space.dof(e, i);
               for (int d = 0; d < disc_.dim; d++)
               {
                  pos[d] += x[kidx(d, dof, nn)]*disc_.phi[(size_t)q*disc_.n_loc + i];
               }
            }
            W += J*mat_.e_src(pos);
         }
         const double gamma = mat_.c_p[pt]/mat_.c_v[pt];
         const double den = a0_ + dt_*(gamma - 1.0)*div;
         if (!(den > gmin)) { bad_point = pt; return false; }
         const double th = (-htheta_[pt] + dt_*W/(mat_.c_v[pt]*mat_.rho0[pt]))/den;
         theta[pt] = th;
         if (!(th > 0.0) && bad_point < 0) { bad_point = pt; }
      }
   }
   return bad_point < 0;
}

bool ImplicitVelocitySystem::residual(const Eigen::VectorXd &U, Eigen::VectorXd &R)
{
   R.setZero(size());
   return assemble(U, &R, nullptr);
}

void ImplicitVelocitySystem::jacobian(const Eigen::VectorXd &U,
                                      Eigen::SparseMatrix<double> &J)
{
   std::vector<Eigen::Triplet<double>> trips;
   trips.reserve((size_t)disc_.n_elems*disc_.n_loc*disc_.n_loc*disc_.dim*disc_.dim);
   if (!assemble(U, nullptr, &trips))
   {
      throw InvertedElement(-1, -1); // jacobian requested at inadmissible state
   }
   // identity rows/cols for constrained dofs
   for (int i = 0; i < size(); i++)
   {
      if (bc_.constrained(i)) { trips.emplace_back(i, i, 1.0); }
   }
   J.resize(size(), size());
   J.setFromTriplets(trips.begin(), trips.end());
}

bool ImplicitVelocitySystem::assemble(const Eigen::VectorXd &U, Eigen::VectorXd *R,
                                      std::vector<Eigen::Triplet<double>> *trips)
{
   const int nl = disc_.n_loc, nq = disc_.n_qp, dim = disc_.dim;
   const int nn = disc_.space.n_nodes;
   const int nld = nl*dim;
   const Eigen::VectorXd x = flowmap(U);
   const double eta_phys = mat_.gas.eta;
   const double beta = mat_.gas.xi_bulk - 2.0*eta_phys/3.0;
   const double gmin = 1e-14;

   ElementWork w;
   std::vector<double> hu_loc((size_t)nl*dim);
   Eigen::MatrixXd K;
   std::vector<double> srcgrad(2, 0.0);
   int bad = -1;

   for (int e = 0; e < disc_.n_elems; e++)
   {
      if (!w.gather(disc_, x, U, e, bad)) { return false; }
      for (int i = 0; i < nl; i++)
      {
         const int dof = disc_.space.dof(e, i);
         for (int a = 0; a < dim; a++)
         {
            hu_loc[(size_t)i*dim + a] = hu_[kidx(a, dof, nn)];
         }
      }
      if (trips) { K.setZero(nld, nld); }

      for (int q = 0; q < nq; q++)
      {
         const int pt = disc_.qp(e, q);
         const double wq = disc_.qweight[pt];
         const double rho0 = mat_.rho0[pt];
         const double cv = mat_.c_v[pt];
         const double kap = mat_.c_p[pt] - cv;
         const double gamma = mat_.c_p[pt]/cv;
         const double J = w.geo.J[q];
         const double mu = (mu_.empty() ? 0.0 : mu_[pt]) + eta_phys;
         const Mat &L = w.L[q];
         const Mat S = L.sym();
         const double div = L.trace();
         const double S2 = S.frobenius2();

         // stress and its contraction with grad u
         Mat sig = S*(mu*J);
         {
            const double bterm = beta*J*div;
            for (int a = 0; a < dim; a++) { sig.a[a][a] += bterm; }
         }
         double W = mu*J*S2 + beta*J*div*div;

         double esrc = 0.0;
         double pos[2] = {0.0, 0.0};
         if (mat_.has_source())
         {
            for (int i = 0; i < nl; i++)
            {
               const int dof = disc_.space.dof(e, i);
               for (int d = 0; d < dim; d++)
               {
                  pos[d] += x[kidx(d, dof, nn)]*disc_.phi[(size_t)q*nl + i];
               }
            }
            esrc = mat_.e_src(pos);
            W += J*esrc;
         }

         const double P = dt_/(cv*rho0);
         const double N = -htheta_[pt] + P*W;
         const double D = a0_ + dt_*(gamma - 1.0)*div;
         if (!(D > gmin)) { return false; }
         const double theta = N/D;

         if (R)
         {
            double du[2] = {0.0, 0.0}; // D_dt(u) at the point
            for (int c = 0; c < dim; c++)
            {
               double hs = 0.0;
               for (int i = 0; i < nl; i++)
               {
                  hs += hu_loc[(size_t)i*dim + c]*disc_.phi[(size_t)q*nl + i];
               }
               du[c] = (a0_*w.uq[(size_t)q*dim + c] + hs)/dt_;
            }
            for (int j = 0; j < nl; j++)
            {
               const int dof = disc_.space.dof(e, j);
               const double pj = disc_.phi[(size_t)q*nl + j];
               const double *gj = &w.g[((size_t)q*nl + j)*dim];
               double sg[2];
               sig.mult(gj, sg);
               for (int c = 0; c < dim; c++)
               {
                  (*R)[kidx(c, dof, nn)] += wq*(rho0*pj*du[c] - kap*rho0*theta*gj[c] + sg[c]);
               }
            }
         }

         if (trips)
         {
            if (mat_.has_source())
            {
               if (mat_.e_src_grad) { mat_.e_src_grad(pos, srcgrad.data()); }
               else
               {
                  // central-difference fallback
                  const double h = 1e-6;
                  for (int d = 0; d < dim; d++)
                  {
                     double pp[2] = {pos[0], pos[1]}, pm[2] = {pos[0], pos[1]};
                     pp[d] += h; pm[d] -= h;
                     srcgrad[d] = (mat_.e_src(pp) - mat_.e_src(pm))/(2.0*h);
                  }
               }
            }
            for (int i = 0; i < nl; i++)
            {
               const double pi = disc_.phi[(size_t)q*nl + i];
               const double *gi = &w.g[((size_t)q*nl + i)*dim];
               double Sgi[2];
               S.mult(gi, Sgi);
               double sig_gi[2];
               sig.mult(gi, sig_gi);
               for (int a = 0; a < dim; a++)
               {
                  // t_a = e_a - alpha L^T e_a
                  double ta[2] = {0.0, 0.0};
                  for (int b = 0; b < dim; b++)
                  {
                     ta[b] = (a == b ? 1.0 : 0.0) - alpha_*L.a[a][b];
                  }
                  const double dJ = alpha_*J*gi[a];
                  const double ddiv = dot(gi, ta, dim);
                  const double dS2 = 2.0*dot(Sgi, ta, dim);
                  double dW = mu*(dJ*S2 + J*dS2) + beta*(dJ*div*div + 2.0*J*div*ddiv);
                  if (mat_.has_source())
                  {
                     dW += dJ*esrc + J*alpha_*pi*srcgrad[a];
                  }
                  const double dN = P*dW;
                  const double dD = dt_*(gamma - 1.0)*ddiv;
                  const double dtheta = (dN*D - N*dD)/(D*D);
                  // dsigma = mu (dJ S + J dSym) + beta (dJ div + J ddiv) I
                  Mat dsig = S*(mu*dJ);
                  for (int r = 0; r < dim; r++)
                     for (int s = 0; s < dim; s++)
                     {
                        dsig.a[r][s] += mu*J*0.5*(gi[r]*ta[s] + ta[r]*gi[s]);
                     }
                  {
                     const double dbt = beta*(dJ*div + J*ddiv);
                     for (int r = 0; r < dim; r++) { dsig.a[r][r] += dbt; }
                  }
                  const int col = i*dim + a;
                  for (int j = 0; j < nl; j++)
                  {
                     const double pj = disc_.phi[(size_t)q*nl + j];
                     const double *gj = &w.g[((size_t)q*nl + j)*dim];
                     double dsg[2];
                     dsig.mult(gj, dsg);
                     const double gja = gj[a];
                     for (int b = 0; b < dim; b++)
                     {
                        double v = 0.0;
                        if (a == b) { v += rho0*(a0_/dt_)*pi*pj; } // mass
                        // pressure: -kap rho0 (dtheta gj_b + theta dgj_b)
                        v += -kap*rho0*(dtheta*gj[b] - theta*alpha_*gja*gi[b]);
                        // stress: (dsig gj)_b + (sig dgj)_b
                        v += dsg[b] - alpha_*gja*sig_gi[b];
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

Eigen::MatrixXd ImplicitVelocitySystem::fd_jacobian(const Eigen::VectorXd &U, double eps)
{
   const int n = size();
   Eigen::MatrixXd J(n, n);
   Eigen::VectorXd Rp(n), Rm(n), Up;
   for (int i = 0; i < n; i++)
   {
      const double h = eps*std::max(1.0, std::abs(U[i]));
      Up = U; Up[i] += h;
      if (!residual(Up, Rp)) { throw InvertedElement(-1, -1); }
      Up = U; Up[i] -= h;
      if (!residual(Up, Rm)) { throw InvertedElement(-1, -1); }
      J.col(i) = (Rp - Rm)/(2.0*h);
   }
   return J;
}

} // namespace varhydro
