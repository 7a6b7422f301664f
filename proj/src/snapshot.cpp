#include "snapshot.hpp"
#include "errors.hpp"
#include "thermo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace varhydro
{

void write_csv_snapshot(const Discretization &disc, const Material &mat,
                        const FlowState &state, const std::string &path,
                        const std::map<std::string, std::string> &meta)
{
   std::ofstream out(path);
   if (!out) { throw ConfigError("write_csv_snapshot: cannot open " + path); }
   out.precision(17);
   out << "#";
   for (const auto &[k, v] : meta) { out << " " << k << "=" << v; }
   out << " t=" << state.t << "\n";
   if (disc.dim == 2) { out << "x,y,r,rho,p,e,theta,s,ux,uy,speed,J\n"; }
   else { out << "x,rho,p,e,theta,s,u,J\n"; }

   ElementWork w;
   int bad = -1;
   const int nn = disc.space.n_nodes;
   for (int e = 0; e < disc.n_elems; e++)
   {
      if (!w.gather(disc, state.x, state.u, e, bad)) { throw InvertedElement(e, bad); }
      for (int q = 0; q < disc.n_qp; q++)
      {
         const int pt = disc.qp(e, q);
         double pos[2] = {0.0, 0.0};
         for (int i = 0; i < disc.n_loc; i++)
         {
            const int dof = disc.space.dof(e, i);
            for (int d = 0; d < disc.dim; d++)
            {
               pos[d] += state.x[kidx(d, dof, nn)]*disc.phi[(size_t)q*disc.n_loc + i];
            }
         }
         const double rho = mat.rho0[pt]/w.geo.J[q];
         const double th = state.theta[pt];
         const EosOut eos = eos_eval(rho, th, mat.c_v[pt], mat.c_p[pt], e, q);
         if (disc.dim == 2)
         {
            const double ux = w.uq[(size_t)q*2], uy = w.uq[(size_t)q*2 + 1];
            out << pos[0] << "," << pos[1] << ","
                << std::sqrt(pos[0]*pos[0] + pos[1]*pos[1]) << ","
                << rho << "," << eos.p << "," << eos.e << "," << th << ","
                << eos.s << "," << ux << "," << uy << ","
                << std::sqrt(ux*ux + uy*uy) << "," << w.geo.J[q] << "\n";
         }
         else
         {
            out << pos[0] << "," << rho << "," << eos.p << "," << eos.e << ","
                << th << "," << eos.s << "," << w.uq[(size_t)q] << ","
                << w.geo.J[q] << "\n";
         }
      }
   }
}

int CsvSnapshot::column(const std::string &name) const
{
   for (size_t i = 0; i < columns.size(); i++)
   {
      if (columns[i] == name) { return (int)i; }
   }
   return -1;
}

CsvSnapshot read_csv_snapshot(const std::string &path)
{
   std::ifstream in(path);
   if (!in) { throw ConfigError("read_csv_snapshot: cannot open " + path); }
   CsvSnapshot snap;
   std::string line;
   if (!std::getline(in, line) || line.empty() || line[0] != '#')
   {
      throw ConfigError("read_csv_snapshot: missing metadata line");
   }
   std::istringstream ms(line.substr(1));
   std::string tok;
   while (ms >> tok)
   {
      const auto eq = tok.find('=');
      if (eq != std::string::npos)
      {
         snap.meta[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
   }
   if (!std::getline(in, line))
   {
      throw ConfigError("read_csv_snapshot: missing column header");
   }
   std::istringstream hs(line);
   while (std::getline(hs, tok, ',')) { snap.columns.push_back(tok); }
   while (std::getline(in, line))
   {
      if (line.empty()) { continue; }
      std::istringstream rs(line);
      std::vector<double> row;
      while (std::getline(rs, tok, ',')) { row.push_back(std::stod(tok)); }
      if (row.size() != snap.columns.size())
      {
         throw ConfigError("read_csv_snapshot: ragged row");
      }
      snap.rows.push_back(std::move(row));
   }
   return snap;
}

namespace
{

// Uniform (k+1)-per-direction subdivision of the reference element.
void subdivision(ElemShape shape, int k,
                 std::vector<std::array<double, 2>> &pts,
                 std::vector<std::array<int, 4>> &cells, // [3] = -1 for tri/line
                 std::vector<std::array<double, 2>> &cell_centers)
{
   pts.clear();
   cells.clear();
   cell_centers.clear();
   const int n = k + 1;
   if (shape == ElemShape::segment)
   {
      for (int i = 0; i < n; i++) { pts.push_back({(double)i/k, 0.0}); }
      for (int i = 0; i < k; i++)
      {
         cells.push_back({i, i + 1, -1, -1});
         cell_centers.push_back({(i + 0.5)/k, 0.0});
      }
      return;
   }
   if (shape == ElemShape::quad)
   {
      for (int j = 0; j < n; j++)
         for (int i = 0; i < n; i++)
         {
            pts.push_back({(double)i/k, (double)j/k});
         }
      for (int j = 0; j < k; j++)
         for (int i = 0; i < k; i++)
         {
            const int a = j*n + i;
            cells.push_back({a, a + 1, a + 1 + n, a + n});
            cell_centers.push_back({(i + 0.5)/k, (j + 0.5)/k});
         }
      return;
   }
   // triangle: uniform barycentric grid
   std::vector<std::vector<int>> id(n);
   int next = 0;
   for (int j = 0; j < n; j++)
   {
      for (int i = 0; i + j < n; i++)
      {
         id[j].push_back(next++);
         pts.push_back({(double)i/k, (double)j/k});
      }
   }
   for (int j = 0; j < k; j++)
      for (int i = 0; i + j < k; i++)
      {
         cells.push_back({id[j][i], id[j][i + 1], id[j + 1][i], -1});
         cell_centers.push_back({(i + 1.0/3.0)/k, (j + 1.0/3.0)/k});
         if (i + j < k - 1)
         {
            cells.push_back({id[j][i + 1], id[j + 1][i + 1], id[j + 1][i], -1});
            cell_centers.push_back({(i + 2.0/3.0)/k, (j + 2.0/3.0)/k});
         }
      }
}

} // namespace

void write_vtk_snapshot(const Discretization &disc, const Material &mat,
                        const FlowState &state, const std::string &path)
{
   std::ofstream out(path);
   if (!out) { throw ConfigError("write_vtk_snapshot: cannot open " + path); }
   out.precision(12);

   std::vector<std::array<double, 2>> ref_pts;
   std::vector<std::array<int, 4>> ref_cells;
   std::vector<std::array<double, 2>> centers;
   subdivision(disc.mesh.shape, disc.k, ref_pts, ref_cells, centers);
   const int ppe = (int)ref_pts.size();
   const int cpe = (int)ref_cells.size();
   const int npts = ppe*disc.n_elems;
   const int ncells = cpe*disc.n_elems;
   const int nn = disc.space.n_nodes;
   const int nl = disc.n_loc;

   // nearest rule point for each subcell center
   std::vector<int> nearest(cpe);
   for (int c = 0; c < cpe; c++)
   {
      double best = 1e300;
      for (int q = 0; q < disc.n_qp; q++)
      {
         const double dx = centers[c][0] - disc.rule.points[q][0];
         const double dy = centers[c][1] - disc.rule.points[q][1];
         const double d = dx*dx + dy*dy;
         if (d < best) { best = d; nearest[c] = q; }
      }
   }

   std::vector<double> vals(nl), grads(nl*2);

   out << "# vtk DataFile Version 3.0\n";
   out << "deformed flow state t=" << state.t << "\n";
   out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
   out << "POINTS " << npts << " double\n";
   std::vector<double> speed(npts, 0.0);
   std::vector<double> vel((size_t)npts*3, 0.0);
   for (int e = 0; e < disc.n_elems; e++)
   {
      for (int p = 0; p < ppe; p++)
      {
         disc.space.basis.eval(ref_pts[p].data(), vals.data(), grads.data());
         double pos[2] = {0.0, 0.0}, uv[2] = {0.0, 0.0};
         for (int i = 0; i < nl; i++)
         {
            const int dof = disc.space.dof(e, i);
            for (int d = 0; d < disc.dim; d++)
            {
               pos[d] += state.x[kidx(d, dof, nn)]*vals[i];
               uv[d] += state.u[kidx(d, dof, nn)]*vals[i];
            }
         }
         out << pos[0] << " " << (disc.dim == 2 ? pos[1] : 0.0) << " 0\n";
         const int gp = e*ppe + p;
         speed[gp] = std::sqrt(uv[0]*uv[0] + uv[1]*uv[1]);
         vel[(size_t)gp*3] = uv[0];
         vel[(size_t)gp*3 + 1] = (disc.dim == 2) ? uv[1] : 0.0;
      }
   }

   const int corners = disc.mesh.shape == ElemShape::quad ? 4
                       : disc.mesh.shape == ElemShape::triangle ? 3 : 2;
   out << "CELLS " << ncells << " " << ncells*(corners + 1) << "\n";
   for (int e = 0; e < disc.n_elems; e++)
      for (int c = 0; c < cpe; c++)
      {
         out << corners;
         for (int v = 0; v < corners; v++) { out << " " << e*ppe + ref_cells[c][v]; }
         out << "\n";
      }
   const int vtk_type = disc.mesh.shape == ElemShape::quad ? 9
                        : disc.mesh.shape == ElemShape::triangle ? 5 : 3;
   out << "CELL_TYPES " << ncells << "\n";
   for (int c = 0; c < ncells; c++) { out << vtk_type << "\n"; }

   out << "POINT_DATA " << npts << "\n";
   out << "SCALARS speed double 1\nLOOKUP_TABLE default\n";
   for (int p = 0; p < npts; p++) { out << speed[p] << "\n"; }
   out << "VECTORS velocity double\n";
   for (int p = 0; p < npts; p++)
   {
      out << vel[(size_t)p*3] << " " << vel[(size_t)p*3 + 1] << " 0\n";
   }

   // thermodynamic cell data from nearest quadrature points
   GeometryEval geo;
   std::vector<double> rho_c, p_c, e_c, th_c, s_c;
   rho_c.reserve(ncells);
   for (int e = 0; e < disc.n_elems; e++)
   {
      int bad = -1;
      if (!try_evaluate_geometry(disc, state.x, e, geo, bad))
      {
         throw InvertedElement(e, bad);
      }
      for (int c = 0; c < cpe; c++)
      {
         const int q = nearest[c];
         const int pt = disc.qp(e, q);
         const double rho = mat.rho0[pt]/geo.J[q];
         const EosOut eos = eos_eval(rho, state.theta[pt], mat.c_v[pt], mat.c_p[pt]);
         rho_c.push_back(rho);
         p_c.push_back(eos.p);
         e_c.push_back(eos.e);
         th_c.push_back(state.theta[pt]);
         s_c.push_back(eos.s);
      }
   }
   out << "CELL_DATA " << ncells << "\n";
   auto dump = [&](const char *name, const std::vector<double> &v)
   {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double x : v) { out << x << "\n"; }
   };
   dump("rho", rho_c);
   dump("p", p_c);
   dump("e", e_c);
   dump("theta", th_c);
   dump("s", s_c);
}

VtkSummary parse_vtk(const std::string &path)
{
   std::ifstream in(path);
   if (!in) { throw ConfigError("parse_vtk: cannot open " + path); }
   VtkSummary sum;
   std::string tok;
   bool in_cell_data = false;
   while (in >> tok)
   {
      if (tok == "POINTS")
      {
         in >> sum.n_points;
         std::string type;
         in >> type;
         for (int i = 0; i < sum.n_points*3; i++)
         {
            double v;
            if (!(in >> v)) { throw ConfigError("parse_vtk: truncated points"); }
         }
      }
      else if (tok == "CELLS")
      {
         int total;
         in >> sum.n_cells >> total;
         for (int i = 0; i < total; i++)
         {
            int v;
            if (!(in >> v)) { throw ConfigError("parse_vtk: truncated cells"); }
         }
      }
      else if (tok == "POINT_DATA") { int n; in >> n; in_cell_data = false; }
      else if (tok == "CELL_DATA") { int n; in >> n; in_cell_data = true; }
      else if (tok == "SCALARS")
      {
         std::string name;
         in >> name;
         (in_cell_data ? sum.cell_fields : sum.point_fields).push_back(name);
      }
      else if (tok == "VECTORS")
      {
         std::string name;
         in >> name;
         (in_cell_data ? sum.cell_fields : sum.point_fields).push_back(name);
      }
   }
   return sum;
}

} // namespace varhydro
