#include "feec/cli.hpp"
#include "feec/complexes.hpp"
#include "feec/mesh.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <sstream>

namespace py = pybind11;
using namespace feec;

namespace
{

py::object to_python(const nlohmann::json& j)
{
  return py::module_::import("json").attr("loads")(j.dump());
}

SpaceSpec spec(const std::string& family, int n, int r, int k)
{
  SpaceSpec s{parse_family(family), n, r, k};
  s.validate();
  return s;
}

// A builtin mesh name, a path to a mesh file, or a mesh document as a dict.
Mesh load_mesh(const py::object& source)
{
  if (py::isinstance<py::str>(source))
  {
    const auto name = source.cast<std::string>();
    for (const auto& b : builtin_mesh_names())
      if (b == name)
        return builtin_mesh(name);
    return read_mesh_file(name);
  }
  const auto text = py::module_::import("json").attr("dumps")(source).cast<std::string>();
  return read_mesh(nlohmann::json::parse(text));
}

std::vector<Rational> point(const py::handle& row)
{
  std::vector<Rational> v;
  for (const auto& x : row)
    v.push_back(py::isinstance<py::str>(x) ? parse_rational(x.cast<std::string>())
                                           : Rational(x.cast<long>()));
  return v;
}

std::vector<std::string> strings(const PiecewiseForm& u)
{
  std::vector<std::string> out;
  for (const auto& p : u.pieces)
    out.push_back(p.to_string());
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Exact finite element differential forms";
  py::register_exception<std::invalid_argument>(m, "FeecError", PyExc_ValueError);

  m.attr("FAMILIES") = std::vector<std::string>{"P", "Pminus", "Qminus", "S"};

  m.def(
      "dimension",
      [](const std::string& family, int n, int r, int k)
      { return dimension(spec(family, n, r, k), DimensionMethod::rank); },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("k"));

  m.def(
      "basis",
      [](const std::string& family, int n, int r, int k)
      {
        std::vector<std::string> out;
        for (const auto& f : basis(spec(family, n, r, k)).forms)
          out.push_back(f.to_string());
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("k"));

  m.def(
      "member",
      [](const std::string& form, const std::string& family, int n, int r, int k)
      { return membership(parse_form(form, n, k), spec(family, n, r, k)); },
      py::arg("form"), py::arg("family"), py::arg("n"), py::arg("r"), py::arg("k"));

  m.def(
      "dof_counts",
      [](const std::string& family, int n, int r, int k)
      {
        py::list out;
        for (const auto& f : dofs(spec(family, n, r, k)).per_face)
        {
          py::dict row;
          row["d"] = f.dim;
          row["faces"] = f.faces;
          row["per_face"] = f.count_per_face;
          out.append(row);
        }
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("k"));

  m.def(
      "unisolvence",
      [](const std::string& family, int n, int r, int k)
      { return to_python(check_unisolvence(spec(family, n, r, k)).to_json()); },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("k"));

  m.def(
      "check_exactness",
      [](const std::string& family, int n, int r, bool koszul)
      {
        const ComplexSpec c{parse_family(family), n, r,
                            koszul ? ComplexKind::koszul : ComplexKind::de_rham};
        return to_python(check_exactness(c).to_json());
      },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("koszul") = false);

  m.def(
      "check_homotopy",
      [](int n, int r, int k) { return to_python(check_homotopy(n, r, k).to_json()); },
      py::arg("n"), py::arg("r"), py::arg("k"));
  m.def(
      "check_direct_sum",
      [](int n, int r, int k) { return to_python(check_direct_sum(n, r, k).to_json()); },
      py::arg("n"), py::arg("r"), py::arg("k"));
  m.def(
      "check_S_properties",
      [](int n, int r) { return to_python(check_S_properties(n, r).to_json()); },
      py::arg("n"), py::arg("r"));
  m.def(
      "check_table1",
      [](int max_n, int max_r) { return to_python(check_table1(max_n, max_r).to_json()); },
      py::arg("max_n") = 4, py::arg("max_r") = 6);

  m.def(
      "d",
      [](const std::string& form, int n, int k)
      { return exterior_derivative(parse_form(form, n, k)).to_string(); },
      py::arg("form"), py::arg("n"), py::arg("k"));
  m.def(
      "koszul",
      [](const std::string& form, int n, int k)
      { return koszul(parse_form(form, n, k)).to_string(); },
      py::arg("form"), py::arg("n"), py::arg("k"));
  m.def(
      "wedge",
      [](const std::string& a, int ka, const std::string& b, int kb, int n)
      { return wedge(parse_form(a, n, ka), parse_form(b, n, kb)).to_string(); },
      py::arg("a"), py::arg("ka"), py::arg("b"), py::arg("kb"), py::arg("n"));
  m.def(
      "integrate_simplex",
      [](const std::string& form, const py::list& vertices)
      {
        std::vector<std::vector<Rational>> v;
        for (const auto& row : vertices)
          v.push_back(point(row));
        const int n = static_cast<int>(v.empty() ? 0 : v[0].size());
        return to_string(integrate_simplex(parse_form(form, n, n), v));
      },
      py::arg("form"), py::arg("vertices"),
      "Integral of an n-form over the ordered simplex, as a 'p/q' string.");

  m.def("builtin_meshes", &builtin_mesh_names);
  m.def(
      "mesh_face_counts",
      [](const py::object& mesh)
      {
        const Mesh msh = load_mesh(mesh);
        std::vector<std::size_t> counts;
        for (int d = 0; d <= msh.n(); ++d)
          counts.push_back(msh.num_faces(d));
        return counts;
      },
      py::arg("mesh"));
  m.def(
      "assemble_dimension",
      [](const py::object& mesh, const std::string& family, int r, int k)
      {
        const Mesh msh = load_mesh(mesh);
        return assemble(msh, spec(family, msh.n(), r, k)).dimension;
      },
      py::arg("mesh"), py::arg("family"), py::arg("r"), py::arg("k"));
  m.def(
      "project",
      [](const py::object& mesh, const std::string& family, int r, int k,
         const std::string& form)
      {
        const Mesh msh = load_mesh(mesh);
        const auto space = assemble(msh, spec(family, msh.n(), r, k));
        return strings(project(space, parse_form(form, msh.n(), k)));
      },
      py::arg("mesh"), py::arg("family"), py::arg("r"), py::arg("k"), py::arg("form"),
      "Projection of a global polynomial form; one canonical string per element.");
  m.def(
      "check_commuting",
      [](const py::object& mesh, const std::string& family, int r, int k,
         const std::string& form)
      {
        const Mesh msh = load_mesh(mesh);
        const auto u = restrict_to_elements(parse_form(form, msh.n(), k), msh.num_elements());
        return to_python(check_commuting(msh, parse_family(family), r, u).to_json());
      },
      py::arg("mesh"), py::arg("family"), py::arg("r"), py::arg("k"), py::arg("form"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args)
      {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool; returns (exit code, stdout, stderr).");
}
