#ifndef VARHYDRO_TENSOR_HPP
#define VARHYDRO_TENSOR_HPP

#include <array>
#include <cmath>
#include <algorithm>

namespace varhydro
{

// Small dim x dim tensor for spatial dimension 1 or 2. Storage is always
// 2x2; only the leading dim x dim block is meaningful.
struct Mat
{
   int dim = 2;
   double a[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

   static Mat zero(int d) { Mat m; m.dim = d; return m; }
   static Mat identity(int d)
   {
      Mat m; m.dim = d;
      for (int i = 0; i < d; i++) { m.a[i][i] = 1.0; }
      return m;
   }

   double det() const
   {
      return (dim == 1) ? a[0][0] : a[0][0]*a[1][1] - a[0][1]*a[1][0];
   }

   Mat inverse() const
   {
      Mat m; m.dim = dim;
      if (dim == 1) { m.a[0][0] = 1.0 / a[0][0]; return m; }
      const double d = det();
      m.a[0][0] =  a[1][1] / d;
      m.a[0][1] = -a[0][1] / d;
      m.a[1][0] = -a[1][0] / d;
      m.a[1][1] =  a[0][0] / d;
      return m;
   }

   Mat transpose() const
   {
      Mat m; m.dim = dim;
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { m.a[i][j] = a[j][i]; }
      return m;
   }

   double trace() const { return (dim == 1) ? a[0][0] : a[0][0] + a[1][1]; }

   Mat sym() const
   {
      Mat m; m.dim = dim;
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { m.a[i][j] = 0.5*(a[i][j] + a[j][i]); }
      return m;
   }

   double frobenius2() const
   {
      double s = 0.0;
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { s += a[i][j]*a[i][j]; }
      return s;
   }

   double contract(const Mat &b) const // A : B
   {
      double s = 0.0;
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { s += a[i][j]*b.a[i][j]; }
      return s;
   }

   // y = A x
   void mult(const double *x, double *y) const
   {
      for (int i = 0; i < dim; i++)
      {
         y[i] = 0.0;
         for (int j = 0; j < dim; j++) { y[i] += a[i][j]*x[j]; }
      }
   }

   // y = A^T x
   void mult_transpose(const double *x, double *y) const
   {
      for (int i = 0; i < dim; i++)
      {
         y[i] = 0.0;
         for (int j = 0; j < dim; j++) { y[i] += a[j][i]*x[j]; }
      }
   }

   Mat operator*(double s) const
   {
      Mat m; m.dim = dim;
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { m.a[i][j] = a[i][j]*s; }
      return m;
   }

   Mat &operator+=(const Mat &b)
   {
      for (int i = 0; i < dim; i++)
         for (int j = 0; j < dim; j++) { a[i][j] += b.a[i][j]; }
      return *this;
   }
};

inline double dot(const double *x, const double *y, int dim)
{
   double s = 0.0;
   for (int i = 0; i < dim; i++) { s += x[i]*y[i]; }
   return s;
}

inline double norm2(const double *x, int dim)
{
   return std::sqrt(dot(x, x, dim));
}

// Smallest singular value of F, i.e. sqrt of the smallest eigenvalue of
// F^T F. Returns 0 for rank-deficient F.
inline double min_singular_value(const Mat &F)
{
   if (F.dim == 1) { return std::abs(F.a[0][0]); }
   // B = F^T F, symmetric positive semidefinite 2x2
   const double b00 = F.a[0][0]*F.a[0][0] + F.a[1][0]*F.a[1][0];
   const double b11 = F.a[0][1]*F.a[0][1] + F.a[1][1]*F.a[1][1];
   const double b01 = F.a[0][0]*F.a[0][1] + F.a[1][0]*F.a[1][1];
   const double tr = b00 + b11;
   const double disc = std::sqrt(std::max(0.0, (b00 - b11)*(b00 - b11) + 4.0*b01*b01));
   const double lmin = 0.5*(tr - disc);
   return std::sqrt(std::max(0.0, lmin));
}

// Smallest eigenvalue and unit eigenvector of a symmetric tensor.
// Sign convention: first nonzero component of s1 is positive. For
// (near-)isotropic tensors s1 = e_0 by convention.
inline void smallest_eigenpair_sym(const Mat &A, double &lambda1, double s1[2])
{
   s1[0] = 1.0; s1[1] = 0.0;
   if (A.dim == 1) { lambda1 = A.a[0][0]; return; }
   const double p = A.a[0][0], q = A.a[1][1];
   const double b = 0.5*(A.a[0][1] + A.a[1][0]);
   const double disc = std::sqrt((p - q)*(p - q) + 4.0*b*b);
   lambda1 = 0.5*(p + q - disc);
   // (A - lambda1 I) s = 0; pick the better conditioned row
   const double r0[2] = {p - lambda1, b};
   const double r1[2] = {b, q - lambda1};
   const double n0 = std::abs(r0[0]) + std::abs(r0[1]);
   const double n1 = std::abs(r1[0]) + std::abs(r1[1]);
   double v[2];
   if (n0 >= n1) { v[0] = -r0[1]; v[1] = r0[0]; }
   else          { v[0] = -r1[1]; v[1] = r1[0]; }
   const double n = std::sqrt(v[0]*v[0] + v[1]*v[1]);
   if (n < 1e-300) { return; } // isotropic: keep convention e_0
   v[0] /= n; v[1] /= n;
   const double lead = (std::abs(v[0]) > 1e-14) ? v[0] : v[1];
   if (lead < 0.0) { v[0] = -v[0]; v[1] = -v[1]; }
   s1[0] = v[0]; s1[1] = v[1];
}

} // namespace varhydro

#endif
