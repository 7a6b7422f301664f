#include "hydro.hpp"
#include "errors.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <limits>

namespace varhydro
{

Material make_uniform_material(const Discretization &disc, const GasParams &gas,
                               double rho0)
{
   Material mat;
   mat.gas = gas;
   mat.rho0.assign(disc.n_points(), rho0);
   mat.c_v.assign(disc.n_points(), gas.c_v);
   mat.c_p.assign(disc.n_points(), gas.c_p);
   return mat;
}

bool ElementWork::gather(const Discretization &disc, const Eigen::VectorXd &x,
                         const Eigen::VectorXd &u, int elem, int &bad_point)
{
   nl = disc.n_loc;
   nq = disc.n_qp;
   dim = disc.dim;
   const int nn = disc.space.n_nodes;
   xe.resize((size_t)nl*dim);
   ue.resize((size_t)nl*dim);
   for (int i = 0; i < nl; i++)
   {
      const int dof = disc.space.dof(elem, i);
      for (int a = 0; a < dim; a++)
      {
         xe[(size_t)i*dim + a] = x[kidx(a, dof, nn)];
         ue[(size_t)i*dim + a] = u[kidx(a, dof, nn)];
      }
   }
   const bool ok = try_evaluate_geometry(disc, x, elem, geo, bad_point);
   if (!ok) { return false; }

   g.assign((size_t)nq*nl*dim, 0.0);
   uq.assign((size_t)nq*dim, 0.0);
   L.assign(nq, Mat::zero(dim));
   for (int q = 0; q < nq; q++)
   {
      Mat Lq = Mat::zero(dim);
      for (int i = 0; i < nl; i++)
      {
         const double *G = &disc.matgrad[((size_t)disc.qp(elem, q)*nl + i)*dim];
         double *gi = &g[((size_t)q*nl + i)*dim];
         geo.Finv[q].mult_transpose(G, gi);
         const double p = disc.phi[(size_t)q*nl + i];
         for (int a = 0; a < dim; a++)
         {
            uq[(size_t)q*dim + a] += ue[(size_t)i*dim + a]*p;
            for (int b = 0; b < dim; b++)
            {
               Lq.a[a][b] += gi[a]*ue[(size_t)i*dim + b];
            }
         }
      }
      L[q] = Lq;
   }
   return true;
}

double artificial_viscosity(const Mat &grad_u, double rho, double cs,
                            const Mat &F, double l0, double q1, double q2,
                            bool quadratic_switch)
{
   const Mat S = grad_u.sym();
   double lambda1, s1[2];
   smallest_eigenpair_sym(S, lambda1, s1);
   double Fs[2];
   F.mult(s1, Fs);
   const double ls = l0*norm2(Fs, F.dim);
   const double frob = std::sqrt(grad_u.frobenius2());
   const double divu = grad_u.trace();
   double phi0 = (frob > 0.0) ? std::abs(divu)/frob : 0.0;
   phi0 = std::min(phi0, 1.0);
   const double phi1 = (lambda1 < 0.0) ? 1.0 : 0.0;
   double quad_term = q2*ls*ls*std::abs(lambda1);
   if (quadratic_switch) { quad_term *= phi1; }
   return rho*(quad_term + q1*phi0*phi1*ls*cs);
}

std::vector<double> artificial_viscosity_field(const Discretization &disc,
                                               const Material &mat,
                                               const Eigen::VectorXd &x,
                                               const Eigen::VectorXd &u,
                                               const std::vector<double> &theta,
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
         const double cs = sound_speed(rho, std::max(theta[pt], 0.0),
                                       mat.c_v[pt], mat.c_p[pt]);
         mu[pt] = artificial_viscosity(w.L[q], rho, cs, w.geo.F[q], l0,
                                       mat.gas.q1, mat.gas.q2,
                                       quadratic_switch);
      }
   }
   return mu;
}

namespace
{

inline Mat stress_at(const Mat &L, double J, double eta, double xi, double mu_av)
{
   const int dim = L.dim;
   Mat sig = L.sym()*((eta + mu_av)*J);
   const double beta = xi - 2.0*eta/3.0;
   const double bterm = beta*J*L.trace();
   for (int a = 0; a < dim; a++) { sig.a[a][a] += bterm; }
   return sig;
}

} // namespace

StressField assemble_stress(const Discretization &disc, const Material &mat,
                            const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                            const std::vector<double> &mu_av)
{
   StressField out;
   out.sigma.assign(disc.n_points(), Mat::zero(disc.dim));
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double mu = mu_av.empty() ? 0.0 : mu_av[pt];
         out.sigma[pt] = stress_at(w.L[q], w.geo.J[q], mat.gas.eta,
                                   mat.gas.xi_bulk, mu);
      }
   }
   return out;
}

Eigen::VectorXd momentum_force_residual(const Discretization &disc,
                                        const Material &mat,
                                        const Eigen::VectorXd &x,
                                        const Eigen::VectorXd &u,
                                        const std::vector<double> &theta,
                                        const std::vector<double> &mu_av)
{
   const int nn = disc.space.n_nodes, dim = disc.dim;
   Eigen::VectorXd R = Eigen::VectorXd::Zero((Eigen::Index)nn*dim);
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double wq = disc.qweight[pt];
         const double kap = mat.c_p[pt] - mat.c_v[pt];
         const double pterm = kap*mat.rho0[pt]*theta[pt];
         const double mu = mu_av.empty() ? 0.0 : mu_av[pt];
         const Mat sig = stress_at(w.L[q], w.geo.J[q], mat.gas.eta,
                                   mat.gas.xi_bulk, mu);
         for (int j = 0; j < disc.n_loc; j++)
         {
            const int dof = disc.space.dof(e, j);
            const double *gj = &w.g[((size_t)q*disc.n_loc + j)*dim];
            double sg[2];
            sig.mult(gj, sg); // sigma symmetric
            for (int c = 0; c < dim; c++)
            {
               R[kidx(c, dof, nn)] += wq*(-pterm*gj[c] + sg[c]);
            }
         }
      }
   }
   return R;
}

Eigen::SparseMatrix<double> kinematic_mass_matrix(const Discretization &disc,
                                                  const Material &mat)
{
   const int nn = disc.space.n_nodes;
   std::vector<Eigen::Triplet<double>> trips;
   trips.reserve((size_t)disc.n_elems*disc.n_loc*disc.n_loc);
   for (int e = 0; e < disc.n_elems; e++)
   {
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         if (!(mat.rho0[pt] > 0.0))
         {
            throw PositivityError("kinematic_mass_matrix: nonpositive rho0", e, q);
         }
         const double c = disc.qweight[pt]*mat.rho0[pt];
         for (int j = 0; j < disc.n_loc; j++)
         {
            const double pj = disc.phi[(size_t)q*disc.n_loc + j];
            for (int i = 0; i < disc.n_loc; i++)
            {
               const double pi = disc.phi[(size_t)q*disc.n_loc + i];
               trips.emplace_back(disc.space.dof(e, j), disc.space.dof(e, i), c*pj*pi);
            }
         }
      }
   }
   Eigen::SparseMatrix<double> M(nn, nn);
   M.setFromTriplets(trips.begin(), trips.end());
   return M;
}

std::vector<double> temperature_rhs(const Discretization &disc, const Material &mat,
                                    const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                                    const std::vector<double> &theta,
                                    const std::vector<double> &mu_av)
{
   std::vector<double> rate(disc.n_points(), 0.0);
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double mu = mu_av.empty() ? 0.0 : mu_av[pt];
         const Mat sig = stress_at(w.L[q], w.geo.J[q], mat.gas.eta,
                                   mat.gas.xi_bulk, mu);
         const double gamma = mat.c_p[pt]/mat.c_v[pt];
         double work = sig.contract(w.L[q]);
         if (mat.has_source())
         {
            // current position of the quadrature point
            double pos[2] = {0.0, 0.0};
            const int nn = disc.space.n_nodes;
            for (int i = 0; i < disc.n_loc; i++)
            {
               const int dof = disc.space.dof(e, i);
               const double p = disc.phi[(size_t)q*disc.n_loc + i];
               for (int d = 0; d < disc.dim; d++)
               {
                  pos[d] += x[kidx(d, dof, nn)]*p;
               }
            }
            work += w.geo.J[q]*mat.e_src(pos);
         }
         rate[pt] = -(gamma - 1.0)*w.L[q].trace()*theta[pt]
                    + work/(mat.c_v[pt]*mat.rho0[pt]);
      }
   }
   return rate;
}

EntropyProduction entropy_production(const Discretization &disc, const Material &mat,
                                     const Eigen::VectorXd &x, const Eigen::VectorXd &u,
                                     const std::vector<double> &theta,
                                     const std::vector<double> &mu_av)
{
   EntropyProduction out;
   out.pointwise.assign(disc.n_points(), 0.0);
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, x, u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         if (!(theta[pt] > 0.0))
         {
            throw PositivityError("entropy_production: nonpositive temperature", e, q);
         }
         const double mu = mu_av.empty() ? 0.0 : mu_av[pt];
         const Mat sig = stress_at(w.L[q], w.geo.J[q], mat.gas.eta,
                                   mat.gas.xi_bulk, mu);
         const double prod = sig.contract(w.L[q]);
         out.pointwise[pt] = prod;
         out.total_rate += disc.qweight[pt]*prod/theta[pt];
      }
   }
   return out;
}

DiagnosticsRecord compute_totals(const Discretization &disc, const Material &mat,
                                 const FlowState &state)
{
   DiagnosticsRecord rec;
   rec.t = state.t;
   rec.min_J = std::numeric_limits<double>::infinity();
   rec.min_theta = std::numeric_limits<double>::infinity();
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, state.x, state.u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double wq = disc.qweight[pt];
         const double rho0 = mat.rho0[pt];
         const double th = state.theta[pt];
         rec.mass += wq*rho0;
         double u2 = 0.0;
         for (int c = 0; c < disc.dim; c++)
         {
            const double uc = w.uq[(size_t)q*disc.dim + c];
            rec.momentum[c] += wq*rho0*uc;
            u2 += uc*uc;
         }
         rec.kinetic += 0.5*wq*rho0*u2;
         rec.internal += wq*rho0*mat.c_v[pt]*th;
         const double rho = rho0/w.geo.J[q];
         if (th > 0.0 && rho > 0.0)
         {
            const double s = mat.c_v[pt]*std::log(th)
                             - (mat.c_p[pt] - mat.c_v[pt])*std::log(rho) + mat.c_v[pt];
            rec.entropy += wq*rho0*s;
         }
         rec.min_J = std::min(rec.min_J, w.geo.J[q]);
         rec.min_theta = std::min(rec.min_theta, th);
      }
   }
   rec.total = rec.kinetic + rec.internal;
   return rec;
}

double signal_dt(const Discretization &disc, const Material &mat,
                 const FlowState &state, double lowmach_Mmax)
{
   double dt = std::numeric_limits<double>::infinity();
   ElementWork w;
   int bad = -1;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, state.x, state.u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         const double alpha0 = min_singular_value(w.geo.F[q]);
         const double hmin = disc.h0[e]*alpha0/disc.k;
         const double rho = mat.rho0[pt]/w.geo.J[q];
         double cs = sound_speed(rho, std::max(state.theta[pt], 0.0) + 0.0,
                                 mat.c_v[pt], mat.c_p[pt]);
         if (state.theta[pt] <= 0.0) { cs = 0.0; }
         if (lowmach_Mmax > 0.0) { cs *= lowmach_Mmax; }
         const double speed = norm2(&w.uq[(size_t)q*disc.dim], disc.dim) + cs;
         if (!std::isfinite(speed))
         {
            throw StepControlError("signal_dt: non-finite signal speed");
         }
         if (speed > 0.0) { dt = std::min(dt, hmin/speed); }
      }
   }
   return dt;
}

} // namespace varhydro
