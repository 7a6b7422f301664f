#ifndef VARHYDRO_NEWTON_HPP
#define VARHYDRO_NEWTON_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace varhydro
{

// Nonlinear system over the full dof vector; constrained dofs are pinned by
// the implementation (residual rows zeroed, Jacobian rows/cols = identity).
class NonlinearSystem
{
public:
   virtual ~NonlinearSystem() = default;
   virtual int size() const = 0;
   // Returns false when the state is inadmissible (inverted element,
   // nonpositive temperature denominator); R is then unusable.
   virtual bool residual(const Eigen::VectorXd &U, Eigen::VectorXd &R) = 0;
   virtual void jacobian(const Eigen::VectorXd &U, Eigen::SparseMatrix<double> &J) = 0;
};

struct NewtonOptions
{
   double tol = 1e-10;     // relative to max(1, first residual norm)
   int max_iter = 25;
   int max_backtracks = 8;
};

struct NewtonReport
{
   int iterations = 0;
   double first_residual = 0.0;
   double final_residual = 0.0;
   bool converged = false;
   bool invalid_initial = false; // inadmissible at the initial guess
   int linear_solves = 0;
};

// Newton with backtracking line search; halves the step when the full step
// is inadmissible or increases the residual norm.
NewtonReport newton_solve(NonlinearSystem &system, Eigen::VectorXd &U,
                          const NewtonOptions &opts = {});

// Direct sparse solve. Numerically symmetric matrices are attempted with
// sparse Cholesky (SimplicialLLT) first; indefinite or nonsymmetric systems
// fall back to SparseLU. Throws LinearSolveError if both fail.
Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double> &A,
                             const Eigen::VectorXd &b);

} // namespace varhydro

#endif
