#include "cases.hpp"
#include "errors.hpp"
#include "oracles.hpp"

#include <cmath>

namespace varhydro
{

void CaseSpec::validate() const
{
   if (nx < 1 || (shape != ElemShape::segment && ny < 1))
   {
      throw ConfigError("case '" + name + "': mesh cell counts must be >= 1");
   }
   if (!(gamma > 1.0)) { throw ConfigError("case '" + name + "': gamma must be > 1"); }
   if (degree < 1 || degree > 6)
   {
      throw ConfigError("case '" + name + "': degree must be in 1..6");
   }
   if (!(cfl > 0.0)) { throw ConfigError("case '" + name + "': cfl must be positive"); }
   if (!(t_final > 0.0)) { throw ConfigError("case '" + name + "': t_final must be positive"); }
   if (q1 < 0.0 || q2 < 0.0) { throw ConfigError("case '" + name + "': q1, q2 must be >= 0"); }
   if (!rho0) { throw ConfigError("case '" + name + "': missing initial density"); }
   if (!p0 && !sedov_corner && !zero_energy_init)
   {
      throw ConfigError("case '" + name + "': missing initial pressure/energy");
   }
}

std::vector<double> sedov_corner_energy(const Discretization &disc, double total)
{
   if (disc.mesh.shape != ElemShape::quad)
   {
      throw InvalidArgument("sedov_corner_energy: quad meshes only");
   }
   // the corner cell contains the domain's (xmin, ymin) vertex
   double xmin = 1e300, ymin = 1e300;
   for (const auto &c : disc.mesh.coords)
   {
      xmin = std::min(xmin, c[0]);
      ymin = std::min(ymin, c[1]);
   }
   int corner = -1;
   double hx = 0.0, hy = 0.0;
   for (int e = 0; e < disc.n_elems; e++)
   {
      const auto &ev = disc.mesh.elements[e];
      const auto &p0 = disc.mesh.coords[ev[0]];
      if (std::abs(p0[0] - xmin) < 1e-12 && std::abs(p0[1] - ymin) < 1e-12)
      {
         corner = e;
         hx = disc.mesh.coords[ev[1]][0] - p0[0];
         hy = disc.mesh.coords[ev[3]][1] - p0[1];
         break;
      }
   }
   if (corner < 0)
   {
      throw InvalidArgument("sedov_corner_energy: no cell anchored at the domain corner");
   }
   const double area = hx*hy;
   const double val = total*4.0/area;
   std::vector<double> e_field(disc.n_points(), 0.0);
   for (int q = 0; q < disc.n_qp; q++)
   {
      const int pt = disc.qp(corner, q);
      const double x = disc.qpos0[(size_t)pt*disc.dim + 0] - xmin;
      const double y = disc.qpos0[(size_t)pt*disc.dim + 1] - ymin;
      e_field[pt] = val*(1.0 - x/hx)*(1.0 - y/hy);
   }
   return e_field;
}

Simulation instantiate_case(const CaseSpec &spec)
{
   spec.validate();
   Simulation sim;
   sim.spec = spec;

   MeshData mesh = build_cartesian_mesh(spec.nx, spec.ny, spec.box, spec.shape);
   sim.disc = build_discretization(mesh, spec.degree);
   const Discretization &disc = sim.disc;

   GasParams gas = GasParams::from_gamma(spec.gamma, spec.c_v);
   gas.q1 = spec.q1;
   gas.q2 = spec.q2;
   gas.validate();
   sim.mat.gas = gas;
   sim.mat.rho0.resize(disc.n_points());
   sim.mat.c_v.resize(disc.n_points());
   sim.mat.c_p.resize(disc.n_points());
   sim.mat.e_src = spec.e_src;
   sim.mat.e_src_grad = spec.e_src_grad;

   FlowState s0;
   s0.t = 0.0;
   s0.x = initial_flowmap(disc);
   s0.u = Eigen::VectorXd::Zero((Eigen::Index)disc.space.n_nodes*disc.dim);
   s0.theta.assign(disc.n_points(), 0.0);

   std::vector<double> e_field;
   if (spec.sedov_corner)
   {
      e_field = sedov_corner_energy(disc, spec.sedov_energy);
   }

   for (int pt = 0; pt < disc.n_points(); pt++)
   {
      const double *pos = &disc.qpos0[(size_t)pt*disc.dim];
      const double g = spec.gamma_field ? spec.gamma_field(pos) : spec.gamma;
      const double cv = (spec.c_v > 0.0) ? spec.c_v : 1.0/(g - 1.0);
      sim.mat.c_v[pt] = cv;
      sim.mat.c_p[pt] = g*cv;
      const double rho = spec.rho0(pos);
      if (!(rho > 0.0))
      {
         throw ConfigError("case '" + spec.name + "': nonpositive initial density");
      }
      sim.mat.rho0[pt] = rho;
      double e;
      if (spec.p0)
      {
         const double p = spec.p0(pos);
         e = p/((g - 1.0)*rho); // theta = p / ((c_p - c_v) rho), e = c_v theta
      }
      else
      {
         e = spec.sedov_corner ? e_field[pt] : 0.0;
      }
      e = std::max(e, spec.e_floor);
      s0.theta[pt] = e/cv;
   }

   if (spec.u0)
   {
      const int nn = disc.space.n_nodes;
      double uv[2];
      for (int node = 0; node < nn; node++)
      {
         spec.u0(&disc.space.node_coords[(size_t)node*disc.dim], uv);
         for (int c = 0; c < disc.dim; c++)
         {
            s0.u[kidx(c, node, nn)] = uv[c];
         }
      }
   }

   sim.bc = build_constraints(disc, spec.bcs);
   sim.bc.enforce(s0.u);
   sim.state0 = std::move(s0);

   sim.params.scheme = spec.scheme;
   sim.params.cfl = spec.cfl;
   sim.params.av_on = spec.av_on;
   sim.params.lowmach_Mmax = spec.lowmach_Mmax;
   return sim;
}

namespace
{

CaseSpec taylor_green_case()
{
   CaseSpec c;
   c.name = "taylor-green";
   c.shape = ElemShape::quad;
   c.nx = c.ny = 16;
   c.box = {0.0, 1.0, 0.0, 1.0};
   c.gamma = 5.0/3.0;
   c.degree = 2;
   c.scheme = Scheme::BDF2;
   c.t_final = 0.5;
   c.av_on = false;
   for (int m = 1; m <= 4; m++) { c.bcs[m] = {BcType::wall, {0, 0}}; }
   static const TaylorGreenReference tg;
   c.rho0 = [](const double *) { return 1.0; };
   c.u0 = [](const double *pos, double *u)
   {
      double rho, p;
      tg.fields(pos, rho, u, p);
   };
   c.p0 = [](const double *pos)
   {
      double rho, u[2], p;
      tg.fields(pos, rho, u, p);
      return p;
   };
   c.e_src = [](const double *pos) { return tg.e_src(pos); };
   c.e_src_grad = [](const double *pos, double *g) { tg.e_src_grad(pos, g); };
   return c;
}

CaseSpec sod_case()
{
   CaseSpec c;
   c.name = "sod";
   c.dim = 1;
   c.shape = ElemShape::segment;
   c.nx = 20;
   c.ny = 1;
   c.box = {-5.0, 5.0, 0.0, 0.0};
   c.gamma = 1.4;
   c.degree = 4;
   c.scheme = Scheme::BDF2;
   c.t_final = 2.0;
   c.bcs[1] = {BcType::wall, {0, 0}};
   c.bcs[2] = {BcType::wall, {0, 0}};
   c.rho0 = [](const double *pos) { return pos[0] < 0.0 ? 1.0 : 0.125; };
   c.p0 = [](const double *pos) { return pos[0] < 0.0 ? 1.0 : 0.1; };
   return c;
}

CaseSpec sedov_case()
{
   CaseSpec c;
   c.name = "sedov";
   c.shape = ElemShape::quad;
   c.nx = c.ny = 16;
   c.box = {0.0, 1.2, 0.0, 1.2};
   c.gamma = 1.4;
   c.degree = 2;
   c.scheme = Scheme::BDF2;
   c.t_final = 1.0;
   c.bcs[1] = {BcType::symmetry, {0, 0}};
   c.bcs[3] = {BcType::symmetry, {0, 0}};
   c.bcs[2] = {BcType::free, {0, 0}};
   c.bcs[4] = {BcType::free, {0, 0}};
   c.rho0 = [](const double *) { return 1.0; };
   c.sedov_corner = true;
   return c;
}

CaseSpec noh_case()
{
   CaseSpec c;
   c.name = "noh";
   c.shape = ElemShape::quad;
   c.nx = c.ny = 16;
   c.box = {0.0, 1.0, 0.0, 1.0};
   c.gamma = 5.0/3.0;
   c.degree = 2;
   c.scheme = Scheme::BDF2;
   c.t_final = 0.6;
   c.q1 = 1.0;
   c.q2 = 4.0;
   c.bcs[1] = {BcType::symmetry, {0, 0}};
   c.bcs[3] = {BcType::symmetry, {0, 0}};
   c.bcs[2] = {BcType::free, {0, 0}};
   c.bcs[4] = {BcType::free, {0, 0}};
   c.rho0 = [](const double *) { return 1.0; };
   c.u0 = [](const double *pos, double *u)
   {
      const double r = std::sqrt(pos[0]*pos[0] + pos[1]*pos[1]);
      if (r < 1e-14) { u[0] = u[1] = 0.0; return; }
      u[0] = -pos[0]/r;
      u[1] = -pos[1]/r;
   };
   c.zero_energy_init = true; // e0 = 0 up to the positivity floor
   return c;
}

CaseSpec gresho_case()
{
   CaseSpec c;
   c.name = "gresho";
   c.shape = ElemShape::quad;
   c.nx = c.ny = 20;
   c.box = {0.0, 1.0, 0.0, 1.0};
   c.gamma = 1.4;
   c.degree = 4;
   c.scheme = Scheme::BDF2;
   c.cfl = 0.25;
   c.av_on = false;
   c.lowmach_Mmax = 0.1;
   c.t_final = 0.75*0.4*M_PI;
   for (int m = 1; m <= 4; m++) { c.bcs[m] = {BcType::wall, {0, 0}}; }
   c.rho0 = [](const double *) { return 1.0; };
   const double gamma = c.gamma;
   const double mmax = c.lowmach_Mmax;
   c.p0 = [gamma, mmax](const double *pos)
   {
      const double r = std::sqrt((pos[0] - 0.5)*(pos[0] - 0.5)
                                 + (pos[1] - 0.5)*(pos[1] - 0.5));
      double pr;
      if (r < 0.2) { pr = 12.5*r*r; }
      else if (r <= 0.4) { pr = 4.0*std::log(5.0*r) + 4.0 - 20.0*r + 12.5*r*r; }
      else { pr = 4.0*std::log(2.0) - 2.0; }
      return 1.0/(gamma*mmax*mmax) - 0.5 + pr;
   };
   c.u0 = [](const double *pos, double *u)
   {
      const double dx = pos[0] - 0.5, dy = pos[1] - 0.5;
      const double r = std::sqrt(dx*dx + dy*dy);
      u[0] = u[1] = 0.0;
      if (r < 1e-14) { return; }
      double uphi;
      if (r < 0.2) { uphi = 5.0*r; }
      else if (r <= 0.4) { uphi = 2.0 - 5.0*r; }
      else { return; }
      u[0] = -uphi*dy/r;
      u[1] = uphi*dx/r;
   };
   return c;
}

CaseSpec triple_point_case()
{
   CaseSpec c;
   c.name = "triple-point";
   c.shape = ElemShape::quad;
   c.nx = 28;
   c.ny = 12;
   c.box = {0.0, 7.0, 0.0, 3.0};
   c.gamma = 1.5; // per-point field below overrides
   c.degree = 4;
   c.scheme = Scheme::BDF2;
   c.cfl = 3.0;
   c.q1 = 0.25;
   c.q2 = 1.0;
   c.t_final = 3.3;
   for (int m = 1; m <= 4; m++) { c.bcs[m] = {BcType::wall, {0, 0}}; }
   c.rho0 = [](const double *pos)
   {
      if (pos[0] <= 1.0) { return 1.0; }
      return pos[1] <= 1.5 ? 1.0 : 0.125;
   };
   c.p0 = [](const double *pos) { return pos[0] <= 1.0 ? 1.0 : 0.1; };
   c.gamma_field = [](const double *pos)
   {
      if (pos[0] <= 1.0) { return 1.5; }
      return pos[1] <= 1.5 ? 1.4 : 1.5;
   };
   return c;
}

} // namespace

CaseSpec get_case(const std::string &name)
{
   if (name == "taylor-green" || name == "taylor_green" || name == "tg")
   {
      return taylor_green_case();
   }
   if (name == "sod") { return sod_case(); }
   if (name == "sedov") { return sedov_case(); }
   if (name == "noh") { return noh_case(); }
   if (name == "gresho") { return gresho_case(); }
   if (name == "triple-point" || name == "triple_point" || name == "triplept")
   {
      return triple_point_case();
   }
   throw ConfigError("unknown case '" + name + "'");
}

std::vector<std::string> list_case_names()
{
   return {"taylor-green", "sod", "sedov", "noh", "gresho", "triple-point"};
}

} // namespace varhydro
