#include <doctest.h>

#include "errors.hpp"
#include "fem_space.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace varhydro;

namespace
{

Discretization make_disc(ElemShape shape, int nx, int ny, int k,
                         std::array<double, 4> box = {0, 1, 0, 1})
{
   return build_discretization(build_cartesian_mesh(nx, ny, box, shape), k);
}

} // namespace

TEST_SUITE_BEGIN("fem_space");

TEST_CASE("partition of unity at tabulated points")
{
   for (ElemShape shape : {ElemShape::segment, ElemShape::quad, ElemShape::triangle})
   {
      const int dim = shape_dim(shape);
      for (int k = 1; k <= 4; k++)
      {
         const ReferenceBasis b = ReferenceBasis::create(shape, k);
         const QuadRule r = get_rule(shape, k);
         std::vector<double> vals(b.n_loc), grads(b.n_loc*2);
         for (int q = 0; q < r.size(); q++)
         {
            b.eval(r.points[q].data(), vals.data(), grads.data());
            double sum = 0.0, g[2] = {0.0, 0.0};
            for (int i = 0; i < b.n_loc; i++)
            {
               sum += vals[i];
               for (int d = 0; d < dim; d++) { g[d] += grads[i*dim + d]; }
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
            for (int d = 0; d < dim; d++) { CHECK(std::abs(g[d]) < 1e-11); }
         }
      }
   }
}

TEST_CASE("nodal property")
{
   for (ElemShape shape : {ElemShape::quad, ElemShape::triangle})
   {
      const ReferenceBasis b = ReferenceBasis::create(shape, 3);
      std::vector<double> vals(b.n_loc), grads(b.n_loc*2);
      for (int n = 0; n < b.n_loc; n++)
      {
         b.eval(b.node_ref[n].data(), vals.data(), grads.data());
         for (int i = 0; i < b.n_loc; i++)
         {
            CHECK(vals[i] == doctest::Approx(i == n ? 1.0 : 0.0).epsilon(1e-11));
         }
      }
   }
}

TEST_CASE("dof counts on structured quad meshes")
{
   for (int k = 1; k <= 4; k++)
   {
      const Discretization d = make_disc(ElemShape::quad, 3, 2, k);
      CHECK(d.space.n_nodes == (3*k + 1)*(2*k + 1));
   }
   // triangle mesh: vertices + edges*(k-1) + interior per element
   const Discretization t = make_disc(ElemShape::triangle, 2, 2, 2);
   // 9 vertices, edges: 2*2 cells -> 8 tris; Euler: V - E + F = 1 (w/ boundary)
   // count directly instead: n_nodes = V + E (k=2 puts 1 dof per edge)
   int n_edges = 0;
   {
      std::set<std::pair<int, int>> edges;
      for (const auto &ev : t.mesh.elements)
      {
         for (int i = 0; i < 3; i++)
         {
            int a = ev[i], b = ev[(i + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
         }
      }
      n_edges = (int)edges.size();
   }
   CHECK(t.space.n_nodes == t.mesh.vertex_count() + n_edges);
}

TEST_CASE("initial volume and identity geometry")
{
   for (ElemShape shape : {ElemShape::segment, ElemShape::quad, ElemShape::triangle})
   {
      const Discretization d = make_disc(shape, 3, 2, 2, {0, 2, 0, 1.5});
      const double vol = shape == ElemShape::segment ? 2.0 : 3.0;
      CHECK(d.volume0 == doctest::Approx(vol).epsilon(1e-12));
      const Eigen::VectorXd x = initial_flowmap(d);
      for (int e = 0; e < d.n_elems; e++)
      {
         const GeometryEval g = evaluate_geometry(d, x, e);
         for (int q = 0; q < d.n_qp; q++)
         {
            CHECK(g.J[q] == doctest::Approx(1.0).epsilon(1e-12));
            for (int a = 0; a < d.dim; a++)
               for (int b = 0; b < d.dim; b++)
               {
                  CHECK(g.F[q].a[a][b] ==
                        doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
               }
         }
      }
   }
}

TEST_CASE("uniform dilation geometry")
{
   const Discretization d = make_disc(ElemShape::quad, 2, 2, 2);
   const Eigen::VectorXd x = 2.0*initial_flowmap(d);
   const GeometryEval g = evaluate_geometry(d, x, 0);
   for (int q = 0; q < d.n_qp; q++)
   {
      CHECK(g.J[q] == doctest::Approx(4.0).epsilon(1e-12));
      CHECK(g.F[q].a[0][0] == doctest::Approx(2.0));
      CHECK(g.F[q].a[1][1] == doctest::Approx(2.0));
   }
}

TEST_CASE("det(F) = J and Finv F = I for random deformations")
{
   std::mt19937 rng(5);
   std::uniform_real_distribution<double> dist(-0.012, 0.012);
   const Discretization d = make_disc(ElemShape::quad, 3, 3, 3);
   Eigen::VectorXd x = initial_flowmap(d);
   for (int i = 0; i < x.size(); i++) { x[i] += dist(rng); }
   for (int e = 0; e < d.n_elems; e++)
   {
      const GeometryEval g = evaluate_geometry(d, x, e);
      for (int q = 0; q < d.n_qp; q++)
      {
         CHECK(g.F[q].det() == doctest::Approx(g.J[q]).epsilon(1e-12));
         for (int a = 0; a < 2; a++)
            for (int b = 0; b < 2; b++)
            {
               double s = 0.0;
               for (int c = 0; c < 2; c++) { s += g.Finv[q].a[a][c]*g.F[q].a[c][b]; }
               CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
            }
      }
   }
}

TEST_CASE("random bilinear map matches the symbolic Jacobian")
{
   // one quad, k=1: x_h is the bilinear vertex map itself; its Jacobian
   // determinant is affine in the reference coordinates
   const Discretization d = make_disc(ElemShape::quad, 1, 1, 1);
   std::mt19937 rng(17);
   std::uniform_real_distribution<double> dist(-0.15, 0.15);
   // perturbed vertex positions p_i
   std::array<std::array<double, 2>, 4> P = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
   for (auto &p : P)
   {
      p[0] += dist(rng);
      p[1] += dist(rng);
   }
   Eigen::VectorXd x(2*d.space.n_nodes);
   // local vertex nodes on the single element: match via node coordinates
   for (int node = 0; node < d.space.n_nodes; node++)
   {
      const double X = d.space.node_coords[2*node];
      const double Y = d.space.node_coords[2*node + 1];
      // bilinear map of the unit square (reference == initial here)
      x[kidx(0, node, d.space.n_nodes)] =
         P[0][0]*(1 - X)*(1 - Y) + P[1][0]*X*(1 - Y) + P[2][0]*X*Y + P[3][0]*(1 - X)*Y;
      x[kidx(1, node, d.space.n_nodes)] =
         P[0][1]*(1 - X)*(1 - Y) + P[1][1]*X*(1 - Y) + P[2][1]*X*Y + P[3][1]*(1 - X)*Y;
   }
   const GeometryEval g = evaluate_geometry(d, x, 0);
   for (int q = 0; q < d.n_qp; q++)
   {
      const double s = d.rule.points[q][0], t = d.rule.points[q][1];
      // symbolic d(map)/d(s,t)
      const double xs = -(P[0][0])*(1 - t) + P[1][0]*(1 - t) + P[2][0]*t - P[3][0]*t;
      const double xt = -(P[0][0])*(1 - s) - P[1][0]*s + P[2][0]*s + P[3][0]*(1 - s);
      const double ys = -(P[0][1])*(1 - t) + P[1][1]*(1 - t) + P[2][1]*t - P[3][1]*t;
      const double yt = -(P[0][1])*(1 - s) - P[1][1]*s + P[2][1]*s + P[3][1]*(1 - s);
      CHECK(g.J[q] == doctest::Approx(xs*yt - xt*ys).epsilon(1e-12));
   }
}

TEST_CASE("inverted element detection")
{
   const Discretization d = make_disc(ElemShape::quad, 2, 2, 1);
   Eigen::VectorXd x = initial_flowmap(d);
   x.segment(0, d.space.n_nodes) *= -1.0; // reflect: J < 0
   CHECK_THROWS_AS(evaluate_geometry(d, x, 0), InvertedElement);
   GeometryEval g;
   int bad = -1;
   CHECK_FALSE(try_evaluate_geometry(d, x, 0, g, bad));
   CHECK(bad >= 0);
}

TEST_CASE("field evaluation: constants and linears reproduce, random matches naive sum")
{
   const Discretization d = make_disc(ElemShape::triangle, 2, 2, 3);
   const int nn = d.space.n_nodes;
   Eigen::VectorXd c(2*nn);
   SUBCASE("constant")
   {
      c.setZero();
      for (int n = 0; n < nn; n++) { c[kidx(0, n, nn)] = 4.5; }
      std::vector<double> vals;
      eval_field_at_quad(d, c, 1, vals);
      for (int q = 0; q < d.n_qp; q++)
      {
         CHECK(vals[(size_t)q*2] == doctest::Approx(4.5).epsilon(1e-13));
      }
   }
   SUBCASE("linear field reproduced")
   {
      for (int n = 0; n < nn; n++)
      {
         const double X = d.space.node_coords[2*n], Y = d.space.node_coords[2*n + 1];
         c[kidx(0, n, nn)] = 2.0*X - 0.5*Y + 1.0;
         c[kidx(1, n, nn)] = X + Y;
      }
      std::vector<double> vals;
      eval_field_at_quad(d, c, 3, vals);
      for (int q = 0; q < d.n_qp; q++)
      {
         const double X = d.qpos0[(size_t)d.qp(3, q)*2];
         const double Y = d.qpos0[(size_t)d.qp(3, q)*2 + 1];
         CHECK(vals[(size_t)q*2] == doctest::Approx(2.0*X - 0.5*Y + 1.0).epsilon(1e-12));
         CHECK(vals[(size_t)q*2 + 1] == doctest::Approx(X + Y).epsilon(1e-12));
      }
   }
   SUBCASE("random coefficients match naive basis sum")
   {
      std::mt19937 rng(23);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (int i = 0; i < c.size(); i++) { c[i] = dist(rng); }
      std::vector<double> vals;
      eval_field_at_quad(d, c, 2, vals);
      std::vector<double> bv(d.n_loc), bg(d.n_loc*2);
      for (int q = 0; q < d.n_qp; q++)
      {
         d.space.basis.eval(d.rule.points[q].data(), bv.data(), bg.data());
         double sum = 0.0;
         for (int i = 0; i < d.n_loc; i++)
         {
            sum += c[kidx(0, d.space.dof(2, i), nn)]*bv[i];
         }
         CHECK(vals[(size_t)q*2] == doctest::Approx(sum).epsilon(1e-13));
      }
   }
}

TEST_CASE("physical gradient: affine, dilated, constant")
{
   const Discretization d = make_disc(ElemShape::quad, 2, 2, 2);
   const int nn = d.space.n_nodes;
   const Eigen::VectorXd X0 = initial_flowmap(d);

   SUBCASE("identity map, linear velocity u = A X")
   {
      Eigen::VectorXd u(2*nn);
      const double A[2][2] = {{0.3, -0.7}, {1.1, 0.25}};
      for (int n = 0; n < nn; n++)
      {
         const double X = d.space.node_coords[2*n], Y = d.space.node_coords[2*n + 1];
         u[kidx(0, n, nn)] = A[0][0]*X + A[0][1]*Y;
         u[kidx(1, n, nn)] = A[1][0]*X + A[1][1]*Y;
      }
      const GeometryEval g = evaluate_geometry(d, X0, 1);
      std::vector<Mat> grads;
      eval_physical_gradient(d, u, g, 1, grads);
      for (int q = 0; q < d.n_qp; q++)
      {
         // (grad u)_{ab} = d_a u_b = A[b][a]
         for (int a = 0; a < 2; a++)
            for (int b = 0; b < 2; b++)
            {
               CHECK(grads[q].a[a][b] == doctest::Approx(A[b][a]).epsilon(1e-12));
            }
      }
   }
   SUBCASE("dilated map x = 2X with u = X gives grad u = I/2")
   {
      const Eigen::VectorXd x = 2.0*X0;
      const GeometryEval g = evaluate_geometry(d, x, 0);
      std::vector<Mat> grads;
      eval_physical_gradient(d, X0, g, 0, grads);
      for (int q = 0; q < d.n_qp; q++)
      {
         CHECK(grads[q].a[0][0] == doctest::Approx(0.5).epsilon(1e-12));
         CHECK(grads[q].a[1][1] == doctest::Approx(0.5).epsilon(1e-12));
         CHECK(std::abs(grads[q].a[0][1]) < 1e-12);
      }
   }
   SUBCASE("constant field has zero gradient")
   {
      Eigen::VectorXd u = Eigen::VectorXd::Constant(2*nn, 3.0);
      const GeometryEval g = evaluate_geometry(d, X0, 2);
      std::vector<Mat> grads;
      eval_physical_gradient(d, u, g, 2, grads);
      for (int q = 0; q < d.n_qp; q++)
      {
         CHECK(std::abs(grads[q].a[0][0]) < 1e-12);
         CHECK(std::abs(grads[q].a[1][0]) < 1e-12);
      }
   }
}

TEST_CASE("continuity across shared facets")
{
   // random coefficients evaluated from both elements at shared edge nodes
   const Discretization d = make_disc(ElemShape::quad, 2, 1, 3);
   std::mt19937 rng(31);
   std::uniform_real_distribution<double> dist(-1.0, 1.0);
   const int nn = d.space.n_nodes;
   Eigen::VectorXd c(2*nn);
   for (int i = 0; i < c.size(); i++) { c[i] = dist(rng); }
   // shared edge of elements 0 and 1 is x = 0.5: right edge of 0, left of 1
   std::vector<double> bv(d.n_loc), bg(d.n_loc*2);
   for (double t : {0.0, 0.3, 0.77, 1.0})
   {
      double p0[2] = {1.0, t}, p1[2] = {0.0, t};
      double v0 = 0.0, v1 = 0.0;
      d.space.basis.eval(p0, bv.data(), bg.data());
      for (int i = 0; i < d.n_loc; i++) { v0 += c[kidx(0, d.space.dof(0, i), nn)]*bv[i]; }
      d.space.basis.eval(p1, bv.data(), bg.data());
      for (int i = 0; i < d.n_loc; i++) { v1 += c[kidx(0, d.space.dof(1, i), nn)]*bv[i]; }
      CHECK(v0 == doctest::Approx(v1).epsilon(1e-12));
   }
}

TEST_CASE("boundary constraints")
{
   const Discretization d = make_disc(ElemShape::quad, 3, 3, 2);
   std::map<int, BoundaryCondition> bcs;
   bcs[1] = {BcType::wall, {0, 0}};       // left: constrain u_x
   bcs[2] = {BcType::free, {0, 0}};
   bcs[3] = {BcType::symmetry, {0, 0}};   // bottom: constrain u_y
   bcs[4] = {BcType::prescribed, {1.5, -2.0}};
   const ConstraintSet cs = build_constraints(d, bcs);
   const int nn = d.space.n_nodes;
   for (int n = 0; n < nn; n++)
   {
      const double X = d.space.node_coords[2*n], Y = d.space.node_coords[2*n + 1];
      const bool left = std::abs(X) < 1e-12;
      const bool bottom = std::abs(Y) < 1e-12;
      const bool top = std::abs(Y - 1.0) < 1e-12;
      if (left && !top) { CHECK(cs.constrained(kidx(0, n, nn))); }
      if (bottom) { CHECK(cs.constrained(kidx(1, n, nn))); }
      if (top)
      {
         CHECK(cs.constrained(kidx(0, n, nn)));
         CHECK(cs.constrained(kidx(1, n, nn)));
         CHECK(cs.value[kidx(0, n, nn)] == doctest::Approx(1.5));
         CHECK(cs.value[kidx(1, n, nn)] == doctest::Approx(-2.0));
      }
      if (!left && !bottom && !top && std::abs(X - 1.0) > 1e-12)
      {
         CHECK_FALSE(cs.constrained(kidx(0, n, nn)));
         CHECK_FALSE(cs.constrained(kidx(1, n, nn)));
      }
   }
   Eigen::VectorXd u = Eigen::VectorXd::Constant(2*nn, 7.0);
   cs.enforce(u);
   for (int n = 0; n < nn; n++)
   {
      if (std::abs(d.space.node_coords[2*n + 1] - 1.0) < 1e-12)
      {
         CHECK(u[kidx(0, n, nn)] == doctest::Approx(1.5));
      }
   }

   std::map<int, BoundaryCondition> missing = {{1, {BcType::wall, {0, 0}}}};
   CHECK_THROWS_AS(build_constraints(d, missing), ConfigError);
}

TEST_CASE("W-space locality: element values are independent storage")
{
   // theta-style fields are plain per-point arrays; changing one element's
   // slots must leave others bit-identical (layout check)
   const Discretization d = make_disc(ElemShape::quad, 2, 2, 1);
   std::vector<double> theta(d.n_points(), 1.0);
   std::vector<double> before(theta);
   for (int q = 0; q < d.n_qp; q++) { theta[d.qp(2, q)] = 9.0; }
   for (int e = 0; e < d.n_elems; e++)
   {
      if (e == 2) { continue; }
      for (int q = 0; q < d.n_qp; q++)
      {
         CHECK(theta[d.qp(e, q)] == before[d.qp(e, q)]);
      }
   }
}

TEST_SUITE_END();
