#include "quadrature.hpp"
#include "errors.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace varhydro
{

namespace
{

// Golub-Welsch for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
// Recurrence coefficients from the standard three-term recurrence of the
// monic Jacobi polynomials.
void gauss_jacobi_m11(int n, double alpha, double beta,
                      std::vector<double> &nodes, std::vector<double> &weights)
{
   if (n < 1) { throw InvalidArgument("quadrature: need n >= 1 points"); }
   Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
   const double ab = alpha + beta;
   for (int i = 0; i < n; i++)
   {
      double ai;
      if (i == 0)
      {
         ai = (beta - alpha) / (ab + 2.0);
      }
      else
      {
         const double den = (2.0*i + ab) * (2.0*i + ab + 2.0);
         ai = (beta*beta - alpha*alpha) / den;
      }
      T(i, i) = ai;
      if (i >= 1)
      {
         double bi;
         if (i == 1)
         {
            bi = 4.0*(alpha + 1.0)*(beta + 1.0) /
                 ((ab + 2.0)*(ab + 2.0)*(ab + 3.0));
         }
         else
         {
            const double k = i;
            const double den = (2.0*k + ab)*(2.0*k + ab)*(2.0*k + ab + 1.0)*(2.0*k + ab - 1.0);
            bi = 4.0*k*(k + alpha)*(k + beta)*(k + ab) / den;
         }
         T(i, i - 1) = T(i - 1, i) = std::sqrt(bi);
      }
   }
   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
   // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
   const double mu0 = std::pow(2.0, ab + 1.0) *
                      std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                               std::lgamma(ab + 2.0));
   nodes.resize(n);
   weights.resize(n);
   for (int i = 0; i < n; i++)
   {
      nodes[i] = es.eigenvalues()(i);
      const double v0 = es.eigenvectors()(0, i);
      weights[i] = mu0 * v0 * v0;
   }
}

} // namespace

void gauss_legendre_01(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
   gauss_jacobi_m11(n, 0.0, 0.0, nodes, weights);
   for (int i = 0; i < n; i++)
   {
      nodes[i] = 0.5*(nodes[i] + 1.0);
      weights[i] *= 0.5;
   }
}

void gauss_jacobi10_01(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
   // int_0^1 g(s)(1-s) ds with s = (1+x)/2: weight (1-x)/2, measure dx/2
   gauss_jacobi_m11(n, 1.0, 0.0, nodes, weights);
   for (int i = 0; i < n; i++)
   {
      nodes[i] = 0.5*(nodes[i] + 1.0);
      weights[i] *= 0.25;
   }
}

std::vector<double> gauss_lobatto_01(int n)
{
   if (n < 2) { throw InvalidArgument("gauss_lobatto_01: need n >= 2"); }
   const int m = n - 1; // interior points are roots of P'_m
   std::vector<double> x(n);
   x[0] = -1.0;
   x[n - 1] = 1.0;
   for (int i = 1; i < m; i++)
   {
      // Chebyshev-Gauss-Lobatto initial guess, then Newton on P'_m
      double t = std::cos(M_PI * (m - i) / m);
      for (int it = 0; it < 100; it++)
      {
         // Legendre recurrence for P_m and P_{m-1}
         double p0 = 1.0, p1 = t;
         for (int j = 2; j <= m; j++)
         {
            const double p2 = ((2.0*j - 1.0)*t*p1 - (j - 1.0)*p0) / j;
            p0 = p1; p1 = p2;
         }
         // P'_m and P''_m from standard identities
         const double dp = m*(t*p1 - p0) / (t*t - 1.0);
         const double ddp = (2.0*t*dp - m*(m + 1.0)*p1) / (1.0 - t*t);
         const double dt = dp / ddp;
         t -= dt;
         if (std::abs(dt) < 1e-15) { break; }
      }
      x[i] = t;
   }
   for (int i = 0; i < n; i++) { x[i] = 0.5*(x[i] + 1.0); }
   // force exact symmetry
   for (int i = 0; i < n/2; i++)
   {
      const double s = 0.5*(x[i] + (1.0 - x[n - 1 - i]));
      x[i] = s;
      x[n - 1 - i] = 1.0 - s;
   }
   return x;
}

QuadRule get_rule(ElemShape shape, int k)
{
   if (k < 0 || k > 6)
   {
      throw InvalidArgument("get_rule: supported degree range is 0 <= k <= 6");
   }
   const int n = k + 1;
   QuadRule rule;
   rule.shape = shape;
   rule.k = k;
   rule.exactness_degree = 2*k + 1;

   std::vector<double> gx, gw;
   gauss_legendre_01(n, gx, gw);

   switch (shape)
   {
      case ElemShape::segment:
      {
         for (int i = 0; i < n; i++)
         {
            rule.points.push_back({gx[i], 0.0});
            rule.weights.push_back(gw[i]);
         }
         break;
      }
      case ElemShape::quad:
      {
         for (int j = 0; j < n; j++)
            for (int i = 0; i < n; i++)
            {
               rule.points.push_back({gx[i], gx[j]});
               rule.weights.push_back(gw[i]*gw[j]);
            }
         break;
      }
      case ElemShape::triangle:
      {
         // Conical product: int_T f = int_0^1 int_0^1 f(x, y(1-x)) (1-x) dy dx,
         // Gauss-Jacobi(1,0) in x and Gauss-Legendre in y.
         std::vector<double> jx, jw;
         gauss_jacobi10_01(n, jx, jw);
         for (int j = 0; j < n; j++)
            for (int i = 0; i < n; i++)
            {
               const double x = jx[i];
               const double y = gx[j]*(1.0 - jx[i]);
               rule.points.push_back({x, y});
               rule.weights.push_back(jw[i]*gw[j]);
            }
         break;
      }
   }
   return rule;
}

double discrete_inner_product(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> weights)
{
   if (a.size() != b.size() || a.size() != weights.size())
   {
      throw InvalidArgument("discrete_inner_product: layout mismatch");
   }
   double s = 0.0;
   for (size_t i = 0; i < a.size(); i++) { s += a[i]*b[i]*weights[i]; }
   return s;
}

} // namespace varhydro
