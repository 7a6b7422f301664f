#include "fem_space.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace varhydro
{

namespace
{

// 1D Lagrange values and derivatives at t for the given nodes. O(n^2),
// used only for tabulation and point evaluation, never in hot loops.
void lagrange1d(const std::vector<double> &nodes, double t,
                double *vals, double *ders)
{
   const int n = (int)nodes.size();
   for (int i = 0; i < n; i++)
   {
      double v = 1.0;
      for (int j = 0; j < n; j++)
      {
         if (j != i) { v *= (t - nodes[j]) / (nodes[i] - nodes[j]); }
      }
      vals[i] = v;
      double d = 0.0;
      for (int m = 0; m < n; m++)
      {
         if (m == i) { continue; }
         double p = 1.0 / (nodes[i] - nodes[m]);
         for (int j = 0; j < n; j++)
         {
            if (j != i && j != m) { p *= (t - nodes[j]) / (nodes[i] - nodes[j]); }
         }
         d += p;
      }
      ders[i] = d;
   }
}

// Silvester factor R_m(t) = prod_{r<m} (t - r)/(m - r) and its derivative.
void silvester(int m, double t, double &val, double &der)
{
   val = 1.0;
   der = 0.0;
   for (int r = 0; r < m; r++)
   {
      // derivative by product rule before multiplying the new factor in
      der = der*(t - r)/(m - r) + val/(m - r);
      val *= (t - r)/(m - r);
   }
}

} // namespace

ReferenceBasis ReferenceBasis::create(ElemShape shape, int k)
{
   if (k < 1 || k > 6)
   {
      throw InvalidArgument("ReferenceBasis: supported degree range is 1 <= k <= 6");
   }
   ReferenceBasis b;
   b.shape = shape;
   b.k = k;
   switch (shape)
   {
      case ElemShape::segment:
      {
         b.nodes1d = gauss_lobatto_01(k + 1);
         b.n_loc = k + 1;
         for (int i = 0; i <= k; i++) { b.node_ref.push_back({b.nodes1d[i], 0.0}); }
         break;
      }
      case ElemShape::quad:
      {
         b.nodes1d = gauss_lobatto_01(k + 1);
         b.n_loc = (k + 1)*(k + 1);
         for (int iy = 0; iy <= k; iy++)
            for (int ix = 0; ix <= k; ix++)
            {
               b.node_ref.push_back({b.nodes1d[ix], b.nodes1d[iy]});
            }
         break;
      }
      case ElemShape::triangle:
      {
         for (int a2 = 0; a2 <= k; a2++)
            for (int a1 = 0; a1 + a2 <= k; a1++)
            {
               const int a0 = k - a1 - a2;
               b.tri_idx.push_back({a0, a1, a2});
               b.node_ref.push_back({(double)a1/k, (double)a2/k});
            }
         b.n_loc = (int)b.tri_idx.size();
         break;
      }
   }
   return b;
}

void ReferenceBasis::eval(const double *pt, double *vals, double *grads) const
{
   switch (shape)
   {
      case ElemShape::segment:
      {
         lagrange1d(nodes1d, pt[0], vals, grads);
         break;
      }
      case ElemShape::quad:
      {
         const int n = k + 1;
         std::vector<double> vx(n), dx(n), vy(n), dy(n);
         lagrange1d(nodes1d, pt[0], vx.data(), dx.data());
         lagrange1d(nodes1d, pt[1], vy.data(), dy.data());
         for (int iy = 0; iy < n; iy++)
            for (int ix = 0; ix < n; ix++)
            {
               const int i = iy*n + ix;
               vals[i] = vx[ix]*vy[iy];
               grads[2*i + 0] = dx[ix]*vy[iy];
               grads[2*i + 1] = vx[ix]*dy[iy];
            }
         break;
      }
      case ElemShape::triangle:
      {
         const double x = pt[0], y = pt[1];
         const double t0 = k*(1.0 - x - y), t1 = k*x, t2 = k*y;
         for (int i = 0; i < n_loc; i++)
         {
            const auto &a = tri_idx[i];
            double v0, d0, v1, d1, v2, d2;
            silvester(a[0], t0, v0, d0);
            silvester(a[1], t1, v1, d1);
            silvester(a[2], t2, v2, d2);
            vals[i] = v0*v1*v2;
            // dt0/dx = dt0/dy = -k, dt1/dx = k, dt2/dy = k
            grads[2*i + 0] = k*(-d0*v1*v2 + v0*d1*v2);
            grads[2*i + 1] = k*(-d0*v1*v2 + v0*v1*d2);
         }
         break;
      }
   }
}

namespace
{

// Local node classification for the continuity-aware dof numbering.
struct NodeKey
{
   int type;  // 0 vertex, 1 edge, 2 interior
   int vertex = -1;
   std::pair<int, int> edge = {-1, -1}; // canonical (vmin, vmax)
   int edge_pos = -1;                   // position in canonical direction
};

NodeKey classify_node(const ReferenceBasis &b, const std::vector<int> &ev, int i)
{
   const int k = b.k;
   NodeKey key;
   auto edge_key = [&](int va, int vb, int pos)
   {
      key.type = 1;
      if (va < vb) { key.edge = {va, vb}; key.edge_pos = pos; }
      else { key.edge = {vb, va}; key.edge_pos = (k - 2) - pos; }
   };
   switch (b.shape)
   {
      case ElemShape::segment:
      {
         if (i == 0) { key.type = 0; key.vertex = ev[0]; }
         else if (i == k) { key.type = 0; key.vertex = ev[1]; }
         else { key.type = 2; }
         break;
      }
      case ElemShape::quad:
      {
         const int ix = i % (k + 1), iy = i / (k + 1);
         const bool x0 = ix == 0, x1 = ix == k, y0 = iy == 0, y1 = iy == k;
         if (x0 && y0) { key.type = 0; key.vertex = ev[0]; }
         else if (x1 && y0) { key.type = 0; key.vertex = ev[1]; }
         else if (x1 && y1) { key.type = 0; key.vertex = ev[2]; }
         else if (x0 && y1) { key.type = 0; key.vertex = ev[3]; }
         else if (y0) { edge_key(ev[0], ev[1], ix - 1); }
         else if (x1) { edge_key(ev[1], ev[2], iy - 1); }
         else if (y1) { edge_key(ev[2], ev[3], (k - 1) - ix); }
         else if (x0) { edge_key(ev[3], ev[0], (k - 1) - iy); }
         else { key.type = 2; }
         break;
      }
      case ElemShape::triangle:
      {
         const auto &a = b.tri_idx[i];
         if (a[1] == 0 && a[2] == 0) { key.type = 0; key.vertex = ev[0]; }
         else if (a[0] == 0 && a[2] == 0) { key.type = 0; key.vertex = ev[1]; }
         else if (a[0] == 0 && a[1] == 0) { key.type = 0; key.vertex = ev[2]; }
         else if (a[2] == 0) { edge_key(ev[0], ev[1], a[1] - 1); }
         else if (a[0] == 0) { edge_key(ev[1], ev[2], a[2] - 1); }
         else if (a[1] == 0) { edge_key(ev[2], ev[0], a[0] - 1); }
         else { key.type = 2; }
         break;
      }
   }
   return key;
}

// Vertex map of the element (affine/bilinear), used to place higher-order
// nodes and as the initial reference map Phi.
void vertex_map(const MeshData &mesh, int e, const double *ref, double *x)
{
   const auto &ev = mesh.elements[e];
   switch (mesh.shape)
   {
      case ElemShape::segment:
      {
         const double t = ref[0];
         x[0] = (1.0 - t)*mesh.coords[ev[0]][0] + t*mesh.coords[ev[1]][0];
         break;
      }
      case ElemShape::quad:
      {
         const double s = ref[0], t = ref[1];
         for (int d = 0; d < 2; d++)
         {
            x[d] = mesh.coords[ev[0]][d]*(1 - s)*(1 - t)
                 + mesh.coords[ev[1]][d]*s*(1 - t)
                 + mesh.coords[ev[2]][d]*s*t
                 + mesh.coords[ev[3]][d]*(1 - s)*t;
         }
         break;
      }
      case ElemShape::triangle:
      {
         const double s = ref[0], t = ref[1];
         for (int d = 0; d < 2; d++)
         {
            x[d] = mesh.coords[ev[0]][d]*(1 - s - t)
                 + mesh.coords[ev[1]][d]*s
                 + mesh.coords[ev[2]][d]*t;
         }
         break;
      }
   }
}

} // namespace

Discretization build_discretization(const MeshData &mesh, int k)
{
   Discretization disc;
   disc.mesh = mesh;
   disc.k = k;
   disc.dim = mesh.dim;
   disc.rule = get_rule(mesh.shape, k);
   disc.n_elems = mesh.element_count();
   disc.n_qp = disc.rule.size();

   KinematicSpace &sp = disc.space;
   sp.shape = mesh.shape;
   sp.k = k;
   sp.dim = mesh.dim;
   sp.basis = ReferenceBasis::create(mesh.shape, k);
   sp.n_loc = sp.basis.n_loc;
   disc.n_loc = sp.n_loc;

   // Global scalar dof numbering keyed by mesh entity.
   sp.vertex_dof.assign(mesh.vertex_count(), -1);
   std::map<std::pair<std::pair<int, int>, int>, int> edge_pos_dof;
   sp.elem_dofs.assign((size_t)disc.n_elems*sp.n_loc, -1);
   sp.node_coords.clear();
   int next = 0;
   auto new_dof = [&](const double *xy)
   {
      for (int d = 0; d < disc.dim; d++) { sp.node_coords.push_back(xy[d]); }
      return next++;
   };
   for (int e = 0; e < disc.n_elems; e++)
   {
      const auto &ev = mesh.elements[e];
      for (int i = 0; i < sp.n_loc; i++)
      {
         const NodeKey key = classify_node(sp.basis, ev, i);
         double xy[2];
         vertex_map(mesh, e, sp.basis.node_ref[i].data(), xy);
         int dof = -1;
         if (key.type == 0)
         {
            if (sp.vertex_dof[key.vertex] < 0) { sp.vertex_dof[key.vertex] = new_dof(xy); }
            dof = sp.vertex_dof[key.vertex];
         }
         else if (key.type == 1)
         {
            auto it = edge_pos_dof.find({key.edge, key.edge_pos});
            if (it == edge_pos_dof.end())
            {
               dof = new_dof(xy);
               edge_pos_dof[{key.edge, key.edge_pos}] = dof;
            }
            else { dof = it->second; }
         }
         else
         {
            dof = new_dof(xy);
         }
         sp.elem_dofs[(size_t)e*sp.n_loc + i] = dof;
      }
   }
   sp.n_nodes = next;
   for (auto &[kpos, dof] : edge_pos_dof)
   {
      auto &list = sp.edge_dofs[kpos.first];
      if ((int)list.size() <= kpos.second) { list.resize(k - 1, -1); }
      list[kpos.second] = dof;
   }

   // Tabulate basis at rule points and freeze the initial-configuration
   // quadrature data (weights, material gradients, positions). Reference
   // gradients are stored with stride dim (1 in 1D).
   const int nq = disc.n_qp, nl = disc.n_loc, dim = disc.dim;
   disc.phi.assign((size_t)nq*nl, 0.0);
   std::vector<double> dphi((size_t)nq*nl*dim, 0.0);
   for (int q = 0; q < nq; q++)
   {
      sp.basis.eval(disc.rule.points[q].data(), &disc.phi[(size_t)q*nl],
                    &dphi[(size_t)q*nl*dim]);
   }

   disc.qweight.assign((size_t)disc.n_elems*nq, 0.0);
   disc.qpos0.assign((size_t)disc.n_elems*nq*dim, 0.0);
   disc.matgrad.assign((size_t)disc.n_elems*nq*nl*dim, 0.0);
   disc.h0.assign(disc.n_elems, 0.0);
   disc.volume0 = 0.0;

   for (int e = 0; e < disc.n_elems; e++)
   {
      disc.h0[e] = mesh.min_edge(e);
      for (int q = 0; q < nq; q++)
      {
         // A = grad_ref Phi from the isoparametric node coordinates
         Mat A = Mat::zero(dim);
         for (int i = 0; i < nl; i++)
         {
            const int dof = sp.dof(e, i);
            for (int a = 0; a < dim; a++)
               for (int b = 0; b < dim; b++)
               {
                  A.a[a][b] += sp.node_coords[(size_t)dof*dim + a] *
                               dphi[((size_t)q*nl + i)*dim + b];
               }
         }
         const double detA = A.det();
         if (detA <= 0.0) { throw InvertedElement(e, q); }
         disc.qweight[disc.qp(e, q)] = detA*disc.rule.weights[q];
         disc.volume0 += disc.qweight[disc.qp(e, q)];
         double xy[2];
         vertex_map(mesh, e, disc.rule.points[q].data(), xy);
         // isoparametric position (equals the vertex map for straight meshes)
         double pos[2] = {0.0, 0.0};
         for (int i = 0; i < nl; i++)
         {
            const int dof = sp.dof(e, i);
            for (int d = 0; d < dim; d++)
            {
               pos[d] += sp.node_coords[(size_t)dof*dim + d]*disc.phi[(size_t)q*nl + i];
            }
         }
         for (int d = 0; d < dim; d++)
         {
            disc.qpos0[(size_t)disc.qp(e, q)*dim + d] = pos[d];
         }
         const Mat Ainv = A.inverse();
         for (int i = 0; i < nl; i++)
         {
            // material gradient G_i = A^{-T} grad_ref phi_i
            double g[2] = {0.0, 0.0};
            Ainv.mult_transpose(&dphi[((size_t)q*nl + i)*dim], g);
            for (int d = 0; d < dim; d++)
            {
               disc.matgrad[((size_t)disc.qp(e, q)*nl + i)*dim + d] = g[d];
            }
         }
      }
   }
   return disc;
}

Eigen::VectorXd initial_flowmap(const Discretization &disc)
{
   const int n = disc.space.n_nodes, dim = disc.dim;
   Eigen::VectorXd x(n*dim);
   for (int node = 0; node < n; node++)
      for (int c = 0; c < dim; c++)
      {
         x[kidx(c, node, n)] = disc.space.node_coords[(size_t)node*dim + c];
      }
   return x;
}

bool try_evaluate_geometry(const Discretization &disc,
                           const Eigen::VectorXd &x_coeffs, int elem,
                           GeometryEval &geo, int &bad_point)
{
   const int nq = disc.n_qp, nl = disc.n_loc, dim = disc.dim;
   const int nn = disc.space.n_nodes;
   geo.F.assign(nq, Mat::zero(dim));
   geo.Finv.assign(nq, Mat::zero(dim));
   geo.J.assign(nq, 0.0);
   bad_point = -1;
   for (int q = 0; q < nq; q++)
   {
      Mat F = Mat::zero(dim);
      for (int i = 0; i < nl; i++)
      {
         const int dof = disc.space.dof(elem, i);
         const double *G = &disc.matgrad[((size_t)disc.qp(elem, q)*nl + i)*dim];
         for (int a = 0; a < dim; a++)
            for (int b = 0; b < dim; b++)
            {
               F.a[a][b] += x_coeffs[kidx(a, dof, nn)]*G[b];
            }
      }
      const double J = F.det();
      geo.F[q] = F;
      geo.J[q] = J;
      if (!(J > 0.0))
      {
         if (bad_point < 0) { bad_point = q; }
         continue;
      }
      geo.Finv[q] = F.inverse();
   }
   return bad_point < 0;
}

GeometryEval evaluate_geometry(const Discretization &disc,
                               const Eigen::VectorXd &x_coeffs, int elem)
{
   GeometryEval geo;
   int bad = -1;
   if (!try_evaluate_geometry(disc, x_coeffs, elem, geo, bad))
   {
      throw InvertedElement(elem, bad);
   }
   return geo;
}

void eval_field_at_quad(const Discretization &disc, const Eigen::VectorXd &coeffs,
                        int elem, std::vector<double> &out)
{
   const int nq = disc.n_qp, nl = disc.n_loc, dim = disc.dim;
   const int nn = disc.space.n_nodes;
   if (coeffs.size() != (Eigen::Index)nn*dim)
   {
      throw InvalidArgument("eval_field_at_quad: coefficient size mismatch");
   }
   out.assign((size_t)nq*dim, 0.0);
   for (int q = 0; q < nq; q++)
      for (int i = 0; i < nl; i++)
      {
         const int dof = disc.space.dof(elem, i);
         const double p = disc.phi[(size_t)q*nl + i];
         for (int c = 0; c < dim; c++)
         {
            out[(size_t)q*dim + c] += coeffs[kidx(c, dof, nn)]*p;
         }
      }
}

void eval_physical_gradient(const Discretization &disc, const Eigen::VectorXd &coeffs,
                            const GeometryEval &geo, int elem, std::vector<Mat> &out)
{
   const int nq = disc.n_qp, nl = disc.n_loc, dim = disc.dim;
   const int nn = disc.space.n_nodes;
   out.assign(nq, Mat::zero(dim));
   for (int q = 0; q < nq; q++)
   {
      Mat L = Mat::zero(dim); // (grad u)_{ab} = d_a u_b
      for (int i = 0; i < nl; i++)
      {
         const int dof = disc.space.dof(elem, i);
         const double *G = &disc.matgrad[((size_t)disc.qp(elem, q)*nl + i)*dim];
         double g[2];
         geo.Finv[q].mult_transpose(G, g); // spatial gradient of phi_i
         for (int a = 0; a < dim; a++)
            for (int b = 0; b < dim; b++)
            {
               L.a[a][b] += g[a]*coeffs[kidx(b, dof, nn)];
            }
      }
      out[q] = L;
   }
}

int ConstraintSet::count() const
{
   int c = 0;
   for (auto m : mask) { c += (m != 0); }
   return c;
}

void ConstraintSet::enforce(Eigen::VectorXd &u) const
{
   for (size_t i = 0; i < mask.size(); i++)
   {
      if (mask[i]) { u[i] = value[i]; }
   }
}

void ConstraintSet::zero_constrained(Eigen::VectorXd &r) const
{
   for (size_t i = 0; i < mask.size(); i++)
   {
      if (mask[i]) { r[i] = 0.0; }
   }
}

ConstraintSet build_constraints(const Discretization &disc,
                                const std::map<int, BoundaryCondition> &bcs)
{
   const auto &mesh = disc.mesh;
   const auto &sp = disc.space;
   ConstraintSet cs;
   cs.dim = disc.dim;
   cs.n_nodes = sp.n_nodes;
   cs.mask.assign((size_t)disc.dim*sp.n_nodes, 0);
   cs.value.assign((size_t)disc.dim*sp.n_nodes, 0.0);

   for (const auto &facet : mesh.boundary)
   {
      auto it = bcs.find(facet.marker);
      if (it == bcs.end())
      {
         throw ConfigError("boundary marker " + std::to_string(facet.marker) +
                           " has no registered condition");
      }
      const BoundaryCondition &bc = it->second;
      if (bc.type == BcType::free) { continue; }

      // scalar dofs on the facet
      std::vector<int> dofs;
      dofs.push_back(sp.vertex_dof[facet.verts[0]]);
      if (disc.dim == 2)
      {
         dofs.push_back(sp.vertex_dof[facet.verts[1]]);
         const auto key = std::minmax(facet.verts[0], facet.verts[1]);
         auto ed = sp.edge_dofs.find({key.first, key.second});
         if (ed != sp.edge_dofs.end())
         {
            for (int d : ed->second) { dofs.push_back(d); }
         }
      }

      if (bc.type == BcType::prescribed)
      {
         for (int dof : dofs)
            for (int c = 0; c < disc.dim; c++)
            {
               const int idx = kidx(c, dof, sp.n_nodes);
               cs.mask[idx] = 1;
               cs.value[idx] = bc.velocity[c];
            }
         continue;
      }

      // wall/symmetry: constrain the normal component of an axis-aligned facet
      int axis = 0;
      if (disc.dim == 2)
      {
         const auto &p = mesh.coords[facet.verts[0]];
         const auto &q = mesh.coords[facet.verts[1]];
         const double tx = q[0] - p[0], ty = q[1] - p[1];
         const double len = std::sqrt(tx*tx + ty*ty);
         if (std::abs(tx) <= 1e-12*len) { axis = 0; }
         else if (std::abs(ty) <= 1e-12*len) { axis = 1; }
         else
         {
            throw ConfigError("wall/symmetry condition on a non-axis-aligned facet");
         }
      }
      for (int dof : dofs)
      {
         const int idx = kidx(axis, dof, sp.n_nodes);
         cs.mask[idx] = 1;
         cs.value[idx] = 0.0;
      }
   }
   return cs;
}

} // namespace varhydro
