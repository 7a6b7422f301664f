#ifndef VARHYDRO_QUADRATURE_HPP
#define VARHYDRO_QUADRATURE_HPP

#include <array>
#include <span>
#include <vector>

namespace varhydro
{

enum class ElemShape { segment, quad, triangle };

inline int shape_dim(ElemShape s) { return s == ElemShape::segment ? 1 : 2; }
inline int shape_verts(ElemShape s)
{
   switch (s)
   {
      case ElemShape::segment: return 2;
      case ElemShape::triangle: return 3;
      default: return 4;
   }
}
// Measure of the reference element: [0,1], [0,1]^2, unit simplex.
inline double shape_measure(ElemShape s)
{
   return s == ElemShape::triangle ? 0.5 : 1.0;
}

// Quadrature rule on the reference element, exact for polynomials of
// degree 2k+1, with strictly positive weights. The points double as the
// nodes of the discontinuous thermodynamic space, so N_k = size() is also
// dim W^k per element.
struct QuadRule
{
   ElemShape shape = ElemShape::quad;
   int k = 0;
   int exactness_degree = 1;
   std::vector<std::array<double, 2>> points; // reference coords, [1] unused in 1D
   std::vector<double> weights;

   int size() const { return (int)weights.size(); }
};

// Gauss-Legendre rule with n points on [0,1].
void gauss_legendre_01(int n, std::vector<double> &nodes, std::vector<double> &weights);

// Gauss-Jacobi rule with n points for the weight (1-x) on [0,1].
void gauss_jacobi10_01(int n, std::vector<double> &nodes, std::vector<double> &weights);

// Gauss-Lobatto nodes (n >= 2 points including endpoints) on [0,1].
std::vector<double> gauss_lobatto_01(int n);

// Rule exact to degree >= 2k+1: (k+1)-point Gauss-Legendre on segments,
// (k+1)^2 tensor Gauss-Legendre on quads, (k+1)^2 conical-product rule on
// triangles. Supported range 0 <= k <= 6.
QuadRule get_rule(ElemShape shape, int k);

// Sum_i a_i b_i w_i over matching flat layouts (N_T x N_k).
double discrete_inner_product(std::span<const double> a,
                              std::span<const double> b,
                              std::span<const double> weights);

} // namespace varhydro

#endif
