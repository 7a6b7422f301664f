#include "mesh.hpp"
#include "errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace varhydro
{

double MeshData::min_edge(int elem) const
{
   const auto &ev = elements[elem];
   const int nv = (int)ev.size();
   if (dim == 1)
   {
      return std::abs(coords[ev[1]][0] - coords[ev[0]][0]);
   }
   double h = 1e300;
   for (int i = 0; i < nv; i++)
   {
      const auto &p = coords[ev[i]];
      const auto &q = coords[ev[(i + 1) % nv]];
      const double dx = q[0] - p[0], dy = q[1] - p[1];
      h = std::min(h, std::sqrt(dx*dx + dy*dy));
   }
   return h;
}

MeshData build_cartesian_mesh(int nx, int ny, const std::array<double, 4> &box,
                              ElemShape shape)
{
   if (nx < 1 || (shape != ElemShape::segment && ny < 1))
   {
      throw InvalidArgument("build_cartesian_mesh: cell counts must be >= 1");
   }
   const double xmin = box[0], xmax = box[1], ymin = box[2], ymax = box[3];
   if (!(xmax > xmin) || (shape != ElemShape::segment && !(ymax > ymin)))
   {
      throw InvalidArgument("build_cartesian_mesh: degenerate box");
   }

   MeshData mesh;
   mesh.shape = shape;

   if (shape == ElemShape::segment)
   {
      mesh.dim = 1;
      for (int i = 0; i <= nx; i++)
      {
         mesh.coords.push_back({xmin + (xmax - xmin)*i/nx, 0.0});
      }
      for (int i = 0; i < nx; i++)
      {
         mesh.elements.push_back({i, i + 1});
      }
      mesh.boundary.push_back({1, {0, -1}});
      mesh.boundary.push_back({2, {nx, -1}});
      return mesh;
   }

   mesh.dim = 2;
   auto vid = [&](int i, int j) { return j*(nx + 1) + i; };
   for (int j = 0; j <= ny; j++)
      for (int i = 0; i <= nx; i++)
      {
         mesh.coords.push_back({xmin + (xmax - xmin)*i/nx,
                                ymin + (ymax - ymin)*j/ny});
      }
   for (int j = 0; j < ny; j++)
      for (int i = 0; i < nx; i++)
      {
         const int a = vid(i, j), b = vid(i + 1, j);
         const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
         if (shape == ElemShape::quad)
         {
            mesh.elements.push_back({a, b, c, d});
         }
         else if (shape == ElemShape::triangle)
         {
            mesh.elements.push_back({a, b, c});
            mesh.elements.push_back({a, c, d});
         }
         else
         {
            throw InvalidArgument("build_cartesian_mesh: shape must be quad or triangle in 2D");
         }
      }
   for (int j = 0; j < ny; j++)
   {
      mesh.boundary.push_back({1, {vid(0, j), vid(0, j + 1)}});
      mesh.boundary.push_back({2, {vid(nx, j), vid(nx, j + 1)}});
   }
   for (int i = 0; i < nx; i++)
   {
      mesh.boundary.push_back({3, {vid(i, 0), vid(i + 1, 0)}});
      mesh.boundary.push_back({4, {vid(i, ny), vid(i + 1, ny)}});
   }
   return mesh;
}

MeshData read_mesh(std::istream &in)
{
   MeshData mesh;
   int n_nodes = 0, n_elems = 0;
   if (!(in >> mesh.dim >> n_nodes >> n_elems))
   {
      throw InvalidArgument("read_mesh: bad header");
   }
   if (mesh.dim < 1 || mesh.dim > 2 || n_nodes < 1 || n_elems < 1)
   {
      throw InvalidArgument("read_mesh: unsupported header values");
   }
   mesh.coords.resize(n_nodes, {0.0, 0.0});
   for (int i = 0; i < n_nodes; i++)
   {
      for (int d = 0; d < mesh.dim; d++)
      {
         if (!(in >> mesh.coords[i][d]))
         {
            throw InvalidArgument("read_mesh: truncated node list");
         }
      }
   }
   bool shape_set = false;
   for (int e = 0; e < n_elems; e++)
   {
      std::string sh;
      if (!(in >> sh)) { throw InvalidArgument("read_mesh: truncated element list"); }
      ElemShape shape;
      if (sh == "segment") { shape = ElemShape::segment; }
      else if (sh == "quad") { shape = ElemShape::quad; }
      else if (sh == "triangle") { shape = ElemShape::triangle; }
      else { throw InvalidArgument("read_mesh: unknown shape '" + sh + "'"); }
      if (shape_set && shape != mesh.shape)
      {
         throw InvalidArgument("read_mesh: mixed element shapes are not supported");
      }
      mesh.shape = shape;
      shape_set = true;
      std::vector<int> ev(shape_verts(shape));
      for (int &v : ev)
      {
         if (!(in >> v) || v < 0 || v >= n_nodes)
         {
            throw InvalidArgument("read_mesh: bad element vertex index");
         }
      }
      mesh.elements.push_back(ev);
   }
   // boundary facets until EOF
   int marker;
   while (in >> marker)
   {
      MeshData::BoundaryFacet f;
      f.marker = marker;
      if (!(in >> f.verts[0])) { throw InvalidArgument("read_mesh: bad facet"); }
      if (mesh.dim == 2)
      {
         if (!(in >> f.verts[1])) { throw InvalidArgument("read_mesh: bad facet"); }
      }
      mesh.boundary.push_back(f);
   }
   return mesh;
}

MeshData read_mesh_file(const std::string &path)
{
   std::ifstream in(path);
   if (!in) { throw InvalidArgument("read_mesh_file: cannot open " + path); }
   return read_mesh(in);
}

void write_mesh(const MeshData &mesh, std::ostream &out)
{
   out.precision(17);
   out << mesh.dim << " " << mesh.vertex_count() << " " << mesh.element_count() << "\n";
   for (const auto &c : mesh.coords)
   {
      out << c[0];
      if (mesh.dim == 2) { out << " " << c[1]; }
      out << "\n";
   }
   const char *name = mesh.shape == ElemShape::segment ? "segment"
                      : mesh.shape == ElemShape::quad ? "quad" : "triangle";
   for (const auto &ev : mesh.elements)
   {
      out << name;
      for (int v : ev) { out << " " << v; }
      out << "\n";
   }
   for (const auto &f : mesh.boundary)
   {
      out << f.marker << " " << f.verts[0];
      if (mesh.dim == 2) { out << " " << f.verts[1]; }
      out << "\n";
   }
}

} // namespace varhydro
