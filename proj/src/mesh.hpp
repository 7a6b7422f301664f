#ifndef VARHYDRO_MESH_HPP
#define VARHYDRO_MESH_HPP

#include "quadrature.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace varhydro
{

// Conforming mesh of the initial configuration. All elements share one
// shape; vertices are listed counterclockwise (segments left-to-right by
// construction but any order is accepted).
struct MeshData
{
   int dim = 2;
   ElemShape shape = ElemShape::quad;
   std::vector<std::array<double, 2>> coords;   // vertex coordinates
   std::vector<std::vector<int>> elements;      // vertex indices per element

   struct BoundaryFacet
   {
      int marker = 0;
      std::array<int, 2> verts = {-1, -1};      // verts[1] = -1 in 1D
   };
   std::vector<BoundaryFacet> boundary;

   int element_count() const { return (int)elements.size(); }
   int vertex_count() const { return (int)coords.size(); }

   // Minimum initial edge length of an element (the AV/CFL length scale h0).
   double min_edge(int elem) const;
};

// Axis-aligned box {xmin, xmax, ymin, ymax} (ymin/ymax ignored in 1D).
// Boundary markers: 1 left, 2 right, 3 bottom, 4 top (1D: 1 left, 2 right).
// Triangle meshes split each cell along the (i,j)-(i+1,j+1) diagonal.
MeshData build_cartesian_mesh(int nx, int ny, const std::array<double, 4> &box,
                              ElemShape shape);

// Text format: "dim n_nodes n_elems", node coordinate lines, element lines
// "shape v0 v1 ..." (shape in {segment,quad,triangle}), then boundary facet
// lines "marker v0 [v1]" until EOF. Whitespace-delimited ASCII decimal.
MeshData read_mesh(std::istream &in);
MeshData read_mesh_file(const std::string &path);
void write_mesh(const MeshData &mesh, std::ostream &out);

} // namespace varhydro

#endif
