#ifndef VARHYDRO_SNAPSHOT_HPP
#define VARHYDRO_SNAPSHOT_HPP

#include "hydro.hpp"
#include "state.hpp"

#include <map>
#include <string>
#include <vector>

namespace varhydro
{

// CSV scatter of all quadrature-point values on the deformed configuration.
// First line: "# key=value ..." metadata, second line: column names.
// 2D columns: x,y,r,rho,p,e,theta,s,ux,uy,speed,J
// 1D columns: x,rho,p,e,theta,s,u,J
void write_csv_snapshot(const Discretization &disc, const Material &mat,
                        const FlowState &state, const std::string &path,
                        const std::map<std::string, std::string> &meta = {});

struct CsvSnapshot
{
   std::map<std::string, std::string> meta;
   std::vector<std::string> columns;
   std::vector<std::vector<double>> rows;

   int column(const std::string &name) const; // -1 if absent
};

CsvSnapshot read_csv_snapshot(const std::string &path);

// Legacy-ASCII VTK unstructured grid of the deformed mesh, each element
// subdivided at k+1 uniform points per direction. Velocity lives on the
// subdivision points; thermodynamic fields (rho, p, e, theta, s) are
// cell data taken from the nearest quadrature point.
void write_vtk_snapshot(const Discretization &disc, const Material &mat,
                        const FlowState &state, const std::string &path);

struct VtkSummary
{
   int n_points = 0;
   int n_cells = 0;
   std::vector<std::string> point_fields;
   std::vector<std::string> cell_fields;
};

// Structural re-parse of the writer's output (round-trip check).
VtkSummary parse_vtk(const std::string &path);

} // namespace varhydro

#endif
