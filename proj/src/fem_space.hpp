#ifndef VARHYDRO_FEM_SPACE_HPP
#define VARHYDRO_FEM_SPACE_HPP

#include "mesh.hpp"
#include "quadrature.hpp"
#include "tensor.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <vector>

namespace varhydro
{

// Nodal Lagrange basis on the reference element. Gauss-Lobatto node
// placement on segments/quads, uniform nodes on triangles.
struct ReferenceBasis
{
   ElemShape shape = ElemShape::quad;
   int k = 1;
   int n_loc = 0;
   std::vector<double> nodes1d;                    // segment/quad
   std::vector<std::array<int, 3>> tri_idx;        // triangle barycentric indices
   std::vector<std::array<double, 2>> node_ref;    // reference coords of local nodes

   static ReferenceBasis create(ElemShape shape, int k);

   // vals: n_loc, grads: n_loc x dim (reference gradients)
   void eval(const double *pt, double *vals, double *grads) const;
};

// Continuous vector kinematic space V_h^k (scalar dof layout; vector fields
// store components in blocks: index = comp * n_nodes + node).
struct KinematicSpace
{
   ElemShape shape = ElemShape::quad;
   int k = 1;
   int dim = 2;
   int n_nodes = 0;                  // N_V^k per component
   int n_loc = 0;
   std::vector<int> elem_dofs;       // [e*n_loc + i] -> global scalar dof
   std::vector<double> node_coords;  // [dof*dim + d] initial coordinates
   ReferenceBasis basis;
   std::vector<int> vertex_dof;                              // mesh vertex -> dof
   std::map<std::pair<int, int>, std::vector<int>> edge_dofs; // (vmin,vmax) -> dofs

   int dof(int e, int i) const { return elem_dofs[(size_t)e*n_loc + i]; }
};

inline int kidx(int comp, int node, int n_nodes) { return comp*n_nodes + node; }

// Mesh + spaces + frozen initial-configuration quadrature data. Everything
// here is immutable after build_discretization and shared by all states.
struct Discretization
{
   MeshData mesh;
   int k = 1;
   int dim = 2;
   QuadRule rule;
   KinematicSpace space;
   int n_elems = 0;
   int n_qp = 0;   // points per element
   int n_loc = 0;  // kinematic dofs per element

   std::vector<double> phi;       // [q*n_loc + i] basis values at rule points
   std::vector<double> qweight;   // [e*n_qp + q] initial physical weights
   std::vector<double> qpos0;     // [(e*n_qp + q)*dim + d] initial qp positions
   std::vector<double> matgrad;   // [((e*n_qp + q)*n_loc + i)*dim + d]
   std::vector<double> h0;        // per-element initial min edge
   double volume0 = 0.0;

   int qp(int e, int q) const { return e*n_qp + q; }
   int n_points() const { return n_elems*n_qp; }
};

Discretization build_discretization(const MeshData &mesh, int k);

// Flow-map coefficients of the identity map (nodal coordinates).
Eigen::VectorXd initial_flowmap(const Discretization &disc);

// Deformation data at the quadrature points of one element.
struct GeometryEval
{
   std::vector<Mat> F;
   std::vector<Mat> Finv;
   std::vector<double> J;
};

// Returns F = grad_X x_h, J = det F, Finv at each rule point of the element.
// Throws InvertedElement if J <= 0 anywhere.
GeometryEval evaluate_geometry(const Discretization &disc,
                               const Eigen::VectorXd &x_coeffs, int elem);
// Non-throwing variant; returns false (with bad_point set) on J <= 0.
bool try_evaluate_geometry(const Discretization &disc,
                           const Eigen::VectorXd &x_coeffs, int elem,
                           GeometryEval &geo, int &bad_point);

// Kinematic field values at the rule points of an element.
// out has n_qp * dim entries, component-major per point: out[q*dim + c].
void eval_field_at_quad(const Discretization &disc, const Eigen::VectorXd &coeffs,
                        int elem, std::vector<double> &out);

// Spatial gradients (grad u)_{ab} = d_a u_b at the rule points, pulled back
// through the deformation: grad phi_i = F^{-T} grad_X phi_i.
void eval_physical_gradient(const Discretization &disc, const Eigen::VectorXd &coeffs,
                            const GeometryEval &geo, int elem, std::vector<Mat> &out);

enum class BcType { free, wall, symmetry, prescribed };

struct BoundaryCondition
{
   BcType type = BcType::free;
   std::array<double, 2> velocity = {0.0, 0.0}; // prescribed value
};

// Marker-based velocity constraints. Wall/symmetry zero the normal component
// on axis-aligned facets; prescribed pins all components.
struct ConstraintSet
{
   int dim = 2;
   int n_nodes = 0;
   std::vector<std::uint8_t> mask; // [comp*n_nodes + node]
   std::vector<double> value;

   bool constrained(int idx) const { return mask[idx] != 0; }
   int count() const;
   void enforce(Eigen::VectorXd &u) const;          // set constrained entries
   void zero_constrained(Eigen::VectorXd &r) const; // zero constrained entries
};

ConstraintSet build_constraints(const Discretization &disc,
                                const std::map<int, BoundaryCondition> &bcs);

} // namespace varhydro

#endif
