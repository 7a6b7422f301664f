#ifndef VARHYDRO_CASES_HPP
#define VARHYDRO_CASES_HPP

#include "fem_space.hpp"
#include "hydro.hpp"
#include "integrators.hpp"
#include "state.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace varhydro
{

// Complete problem definition: domain, mesh, gas, initial fields, boundary
// markers, AV parameters, and run defaults. Initial thermodynamic data is
// sampled pointwise at quadrature points; velocity at kinematic nodes.
struct CaseSpec
{
   std::string name;
   int dim = 2;
   ElemShape shape = ElemShape::quad;
   int nx = 16, ny = 16;
   std::array<double, 4> box = {0.0, 1.0, 0.0, 1.0};

   double gamma = 1.4;
   double c_v = -1.0; // < 0: use 1/(gamma-1) so that c_p - c_v = 1

   int degree = 2;
   Scheme scheme = Scheme::BDF2;
   double cfl = 1.0;
   double t_final = 1.0;
   double q1 = 0.5, q2 = 2.0;
   bool av_on = true;
   double lowmach_Mmax = 0.0;
   double e_floor = 1e-12;

   std::map<int, BoundaryCondition> bcs;

   std::function<double(const double *)> rho0;
   std::function<void(const double *, double *)> u0;
   std::function<double(const double *)> p0;          // null if e0-based init
   std::function<double(const double *)> gamma_field; // per-point gamma override
   bool sedov_corner = false;
   double sedov_energy = 0.2448;
   bool zero_energy_init = false;                     // e0 = 0 up to e_floor
   std::function<double(const double *)> e_src;
   std::function<void(const double *, double *)> e_src_grad;

   void validate() const;
};

struct Simulation
{
   CaseSpec spec;
   Discretization disc;
   Material mat;
   ConstraintSet bc;
   FlowState state0;
   StepParams params;
};

// Named paper benchmarks: taylor-green, sod, sedov, noh, gresho, triple-point.
CaseSpec get_case(const std::string &name);
std::vector<std::string> list_case_names();

Simulation instantiate_case(const CaseSpec &spec);

// Corner-cell internal-energy field: bilinear in the corner cell with value
// total*4/area(T0) at the domain-corner vertex and zero at the other three,
// sampled at the cell's quadrature points; zero elsewhere. Quad meshes only.
std::vector<double> sedov_corner_energy(const Discretization &disc, double total);

} // namespace varhydro

#endif
