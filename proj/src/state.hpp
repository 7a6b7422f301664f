#ifndef VARHYDRO_STATE_HPP
#define VARHYDRO_STATE_HPP

#include <Eigen/Core>
#include <vector>

namespace varhydro
{

// Discrete state: flow-map and velocity coefficients in the kinematic space
// (component-blocked: index = comp * n_nodes + node) and temperature values
// at the quadrature points (the thermodynamic space is purely nodal).
struct FlowState
{
   Eigen::VectorXd x;
   Eigen::VectorXd u;
   std::vector<double> theta; // [e*n_qp + q]
   double t = 0.0;
};

// Per-step conserved/monitored totals.
struct DiagnosticsRecord
{
   int step = 0;
   double t = 0.0;
   double dt = 0.0;
   double mass = 0.0;           // (rho0, 1)_h, frozen
   double momentum[2] = {0.0, 0.0};
   double kinetic = 0.0;
   double internal = 0.0;
   double total = 0.0;
   double entropy = 0.0;        // (rho0 s, 1)_h
   int newton_iters = 0;
   double min_J = 0.0;
   double min_theta = 0.0;
};

} // namespace varhydro

#endif
