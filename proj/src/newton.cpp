#include "newton.hpp"
#include "errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>

namespace varhydro
{

Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double> &A,
                             const Eigen::VectorXd &b)
{
   if (A.rows() != A.cols() || A.rows() != b.size())
   {
      throw InvalidArgument("linear_solve: dimension mismatch");
   }
   // symmetry probe
   Eigen::SparseMatrix<double> At = A.transpose();
   Eigen::SparseMatrix<double> D = A - At;
   const double asym = D.coeffs().size() ? D.coeffs().cwiseAbs().maxCoeff() : 0.0;
   const double scale = A.coeffs().size() ? A.coeffs().cwiseAbs().maxCoeff() : 1.0;
   if (asym <= 1e-12*std::max(scale, 1.0))
   {
      Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
      if (llt.info() == Eigen::Success)
      {
         Eigen::VectorXd x = llt.solve(b);
         if (llt.info() == Eigen::Success) { return x; }
      }
   }
   Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
   if (lu.info() != Eigen::Success)
   {
      throw LinearSolveError("linear_solve: sparse LU factorization failed");
   }
   Eigen::VectorXd x = lu.solve(b);
   if (lu.info() != Eigen::Success)
   {
      throw LinearSolveError("linear_solve: sparse LU solve failed");
   }
   return x;
}

NewtonReport newton_solve(NonlinearSystem &system, Eigen::VectorXd &U,
                          const NewtonOptions &opts)
{
   NewtonReport rep;
   Eigen::VectorXd R(system.size());
   if (!system.residual(U, R))
   {
      rep.invalid_initial = true;
      return rep;
   }
   double rnorm = R.norm();
   rep.first_residual = rnorm;
   rep.final_residual = rnorm;
   const double target = opts.tol*std::max(1.0, rnorm);
   if (rnorm <= target) { rep.converged = true; return rep; }

   Eigen::SparseMatrix<double> J(system.size(), system.size());
   Eigen::VectorXd trial(system.size()), Rt(system.size());
   for (int it = 0; it < opts.max_iter; it++)
   {
      system.jacobian(U, J);
      Eigen::VectorXd dU = linear_solve(J, -R);
      rep.linear_solves++;

      double step = 1.0;
      bool accepted = false;
      for (int bt = 0; bt <= opts.max_backtracks; bt++)
      {
         trial = U + step*dU;
         if (system.residual(trial, Rt))
         {
            const double rt = Rt.norm();
            if (rt < rnorm || rt <= target)
            {
               U = trial;
               R = Rt;
               rnorm = rt;
               accepted = true;
               break;
            }
         }
         step *= 0.5;
      }
      rep.iterations = it + 1;
      if (!accepted)
      {
         rep.final_residual = rnorm;
         return rep; // stalled; caller decides (usually dt halving)
      }
      rep.final_residual = rnorm;
      if (rnorm <= target) { rep.converged = true; return rep; }
   }
   return rep;
}

} // namespace varhydro
