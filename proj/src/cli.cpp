#include "feec/cli.hpp"

#include "feec/complexes.hpp"
#include "feec/mesh.hpp"
#include "feec/parallel.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace feec;

namespace
{

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

enum class Format
{
  text,
  json,
  tsv
};

struct Options
{
  std::optional<std::string> family;
  std::optional<int> n;
  std::optional<int> r;
  std::optional<int> k;
  std::optional<std::string> mesh;
  std::optional<std::string> out;
  std::optional<std::string> format;

  Format fmt(Format fallback) const
  {
    if (!format)
      return fallback;
    return *format == "json" ? Format::json : Format::tsv;
  }
};

template <typename T>
T need(const std::optional<T>& v, const char* flag)
{
  if (!v)
    throw UsageError(std::string("missing required flag --") + flag);
  return *v;
}

SpaceSpec spec_from(const Options& o)
{
  Family f;
  try
  {
    f = parse_family(need(o.family, "family"));
  }
  catch (const std::invalid_argument& e)
  {
    throw UsageError(e.what());
  }
  SpaceSpec s{f, need(o.n, "n"), need(o.r, "r"), o.k.value_or(0)};
  return s;
}

void validate(const SpaceSpec& s)
{
  try
  {
    s.validate();
  }
  catch (const std::invalid_argument& e)
  {
    throw UsageError(e.what());
  }
}

/// Writes certificates and reports whether all passed.
bool write_certificates(const std::vector<Certificate>& certs, Format fmt,
                        std::ostream& out)
{
  bool ok = true;
  if (fmt == Format::json)
  {
    for (const auto& c : certs)
      out << c.to_json().dump() << '\n';
  }
  else
  {
    out << "claim\tparameters\tverdict\n";
    for (const auto& c : certs)
      out << c.tsv_line() << '\n';
  }
  for (const auto& c : certs)
    ok = ok and c.pass;
  return ok;
}

// Destination for the report: --out when given, otherwise stdout.
class Sink
{
public:
  Sink(const Options& o, std::ostream& fallback) : stream_(&fallback)
  {
    if (o.out)
    {
      file_.open(*o.out);
      if (!file_)
        throw UsageError("cannot write " + *o.out);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<int> levels(const Options& o, int n)
{
  if (o.k)
    return {*o.k};
  std::vector<int> ks;
  for (int k = 0; k <= n; ++k)
    ks.push_back(k);
  return ks;
}

Mesh load_mesh(const std::string& source)
{
  if (!std::filesystem::exists(source))
  {
    for (const auto& name : builtin_mesh_names())
      if (name == source)
        return builtin_mesh(name);
    throw UsageError("cannot read mesh file " + source);
  }
  try
  {
    return read_mesh_file(source);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }
}

//-----------------------------------------------------------------------------
int cmd_dims(const Options& o, std::ostream& os)
{
  const SpaceSpec s = spec_from(o);
  need(o.k, "k");
  validate(s);
  const auto dim = dimension(s, DimensionMethod::rank);
  const auto formula = dimension_formula(s);
  Sink sink(o, os);
  switch (o.fmt(Format::text))
  {
  case Format::text:
    *sink << dim << '\n';
    break;
  case Format::json:
  {
    nlohmann::json j = {{"spec", to_json(s)}, {"dim", dim}};
    if (formula)
      j["formula"] = *formula;
    *sink << j.dump() << '\n';
    break;
  }
  case Format::tsv:
    *sink << "family\tn\tr\tk\tdim\n"
          << to_string(s.family) << '\t' << s.n << '\t' << s.r << '\t' << s.k
          << '\t' << dim << '\n';
    break;
  }
  return !formula or *formula == dim ? 0 : 1;
}
//-----------------------------------------------------------------------------
int cmd_describe(const Options& o, std::ostream& os)
{
  const SpaceSpec s = spec_from(o);
  need(o.k, "k");
  validate(s);
  const auto& b = basis(s);
  Sink sink(o, os);
  if (o.fmt(Format::json) == Format::tsv)
  {
    *sink << "index\tform\n";
    for (std::size_t i = 0; i < b.size(); ++i)
      *sink << i << '\t' << b.forms[i].to_string() << '\n';
    return 0;
  }
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& f : b.forms)
    forms.push_back(f.to_string());
  *sink << nlohmann::json{{"spec", to_json(s)}, {"dim", b.size()}, {"basis", forms}}
               .dump()
        << '\n';
  return 0;
}
//-----------------------------------------------------------------------------
int cmd_unisolvence(const Options& o, std::ostream& os)
{
  const SpaceSpec base = spec_from(o);
  std::vector<Certificate> certs;
  for (int k : levels(o, base.n))
  {
    SpaceSpec s = base;
    s.k = k;
    if (!o.k and !has_element(s))
      continue;
    validate(s);
    if (!has_element(s))
      throw UsageError(s.to_string() + " has no degrees of freedom");
    certs.push_back(check_unisolvence(s));
  }
  Sink sink(o, os);
  return write_certificates(certs, o.fmt(Format::tsv), *sink) ? 0 : 1;
}
//-----------------------------------------------------------------------------
int cmd_complex(const Options& o, std::ostream& os)
{
  const SpaceSpec s = spec_from(o);
  validate({s.family, s.n, s.r, 0});
  std::vector<Certificate> certs{check_exactness({s.family, s.n, s.r})};
  if (s.family == Family::P)
    certs.push_back(
        check_exactness({s.family, s.n, s.r, ComplexKind::koszul}));
  Sink sink(o, os);
  return write_certificates(certs, o.fmt(Format::tsv), *sink) ? 0 : 1;
}
//-----------------------------------------------------------------------------
int cmd_homotopy(const Options& o, std::ostream& os)
{
  const int n = need(o.n, "n");
  const int r = need(o.r, "r");
  if (n < 1 or n > kMaxDim - 1 or r < 0)
    throw UsageError("homotopy needs 1 <= n <= 6 and r >= 0");
  std::vector<Certificate> certs;
  for (int k : levels(o, n))
  {
    if (k < 0 or k > n)
      throw UsageError("form degree k must satisfy 0 <= k <= n");
    certs.push_back(check_homotopy(n, r, k));
  }
  Sink sink(o, os);
  return write_certificates(certs, o.fmt(Format::tsv), *sink) ? 0 : 1;
}
//-----------------------------------------------------------------------------
int cmd_table1(const Options& o, std::ostream& os)
{
  const Certificate c = check_table1();
  Sink sink(o, os);
  if (o.fmt(Format::text) == Format::json)
  {
    *sink << c.to_json().dump() << '\n';
    return c.pass ? 0 : 1;
  }
  *sink << "family\tn\tk\tr=1\tr=2\tr=3\tr=4\tr=5\tr=6\n";
  for (const char* fam : {"Qminus", "S"})
    for (const auto& row : c.witness[fam])
    {
      *sink << fam << '\t' << row["n"] << '\t' << row["k"];
      for (const auto& d : row["dims"])
        *sink << '\t' << d;
      *sink << '\n';
    }
  *sink << "mismatches\t" << c.witness["mismatches"].size() << '\n';
  for (const auto& m : c.witness["mismatches"])
    *sink << "mismatch\t" << m.dump() << '\n';
  *sink << "verdict\t" << (c.pass ? "pass" : "fail") << '\n';
  return c.pass ? 0 : 1;
}
//-----------------------------------------------------------------------------
int cmd_dof_counts(const Options& o, std::ostream& os)
{
  const SpaceSpec s = spec_from(o);
  need(o.k, "k");
  validate(s);
  if (!has_element(s))
    throw UsageError(s.to_string() + " has no degrees of freedom");
  const DofSet set = dofs(s);
  const auto dim = static_cast<std::int64_t>(basis(s).size());
  std::int64_t total = 0;
  for (const auto& f : set.per_face)
    total += static_cast<std::int64_t>(f.faces) * f.count_per_face;
  Sink sink(o, os);
  if (o.fmt(Format::tsv) == Format::json)
  {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& f : set.per_face)
      rows.push_back({{"d", f.dim},
                      {"faces", f.faces},
                      {"per_face", f.count_per_face},
                      {"subtotal", f.faces * f.count_per_face}});
    *sink << nlohmann::json{{"spec", to_json(s)},
                            {"per_face", rows},
                            {"total", total},
                            {"dim", dim}}
                 .dump()
          << '\n';
  }
  else
  {
    *sink << "d\tfaces\tper_face\tsubtotal\n";
    for (const auto& f : set.per_face)
      *sink << f.dim << '\t' << f.faces << '\t' << f.count_per_face << '\t'
            << f.faces * f.count_per_face << '\n';
    *sink << "total\t\t\t" << total << '\n' << "dim\t\t\t" << dim << '\n';
  }
  return total == dim ? 0 : 1;
}
//-----------------------------------------------------------------------------
// Projects every monomial k-form of degree <= r+1 onto the assembled space
// and certifies idempotence, continuity and, where the next level exists,
// commutation with d.
int cmd_project(const Options& o, std::ostream& os)
{
  const Mesh mesh = load_mesh(need(o.mesh, "mesh"));
  if (o.n and *o.n != mesh.n())
    throw UsageError("--n differs from the mesh dimension");
  Options oo = o;
  oo.n = mesh.n();
  SpaceSpec s = spec_from(oo);
  need(o.k, "k");
  validate(s);
  GlobalSpace space;
  try
  {
    space = assemble(mesh, s);
  }
  catch (const std::invalid_argument& e)
  {
    throw UsageError(e.what());
  }
  const SpaceSpec next{s.family, s.n, next_level_degree(s.family, s.r), s.k + 1};
  std::optional<GlobalSpace> next_space;
  if (s.k < s.n and has_element(next))
    next_space = assemble(mesh, next);

  const auto inputs = polynomial_forms(s.n, s.k, s.r + 1);
  std::vector<Certificate> certs(inputs.size());
  parallel_for(
      inputs.size(),
      [&](std::size_t i)
      {
        const auto u = restrict_to_elements(inputs[i], mesh.num_elements());
        const auto pu = project(space, u);
        const bool idempotent = project(space, pu).pieces == pu.pieces;
        const bool continuous = continuity_check(mesh, pu);
        nlohmann::json w = {{"projection", pu.to_json()["pieces"]},
                            {"idempotent", idempotent},
                            {"continuous", continuous}};
        bool ok = idempotent and continuous;
        if (next_space)
        {
          const bool commutes
              = exterior_derivative(pu).pieces
                == project(*next_space, exterior_derivative(u)).pieces;
          w["commutes"] = commutes;
          ok = ok and commutes;
        }
        nlohmann::json params = to_json(s);
        params["input"] = inputs[i].to_string();
        params["elements"] = mesh.num_elements();
        certs[i] = Certificate{"projection", params, ok, w};
      });
  Sink sink(o, os);
  return write_certificates(certs, o.fmt(Format::json), *sink) ? 0 : 1;
}
//-----------------------------------------------------------------------------
std::vector<std::function<Certificate()>> verification_suite()
{
  std::vector<std::function<Certificate()>> tasks;
  auto add = [&](std::function<Certificate()> f)
  { tasks.push_back(std::move(f)); };

  add([] { return check_table1(); });
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 6; ++r)
      for (int k = 0; k <= n; ++k)
        for (Family f : {Family::P, Family::Pminus, Family::Qminus})
          add([=] { return check_dimension({f, n, r, k}); });
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
    {
      for (int r = 1; r <= 4; ++r)
        for (Family f : {Family::P, Family::Pminus})
          add([=] { return check_unisolvence({f, n, r, k}); });
      for (int r = 1; r <= 3; ++r)
        for (Family f : {Family::Qminus, Family::S})
          add([=] { return check_unisolvence({f, n, r, k}); });
    }
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= 5; ++r)
      for (int k = 0; k <= n; ++k)
        add([=] { return check_homotopy(n, r, k); });
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 4; ++r)
    {
      add([=] { return check_exactness({Family::P, n, r}); });
      add([=] { return check_exactness({Family::Pminus, n, r}); });
      add([=] { return check_exactness({Family::P, n, r, ComplexKind::koszul}); });
      for (int k = 0; k <= n; ++k)
        add([=] { return check_direct_sum(n, r, k); });
      if (r <= 3)
      {
        add([=] { return check_exactness({Family::Qminus, n, r}); });
        add([=] { return check_exactness({Family::S, n, r}); });
        add([=] { return check_S_properties(n, r); });
        add([=] { return check_S0_sdeg(n, r); });
        add([=] { return check_S_top(n, r); });
      }
    }
  for (int r = 1; r <= 3; ++r)
    add([=] { return check_S_vector_proxy(r); });
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 6; ++r)
      for (int k = 0; k <= n; ++k)
        add([=] { return check_count_identity(n, r, k); });
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 4; ++r)
      for (int k = 0; k <= n; ++k)
        add([=] { return check_vanishing_lemma(n, r, k); });
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
        for (Family f : {Family::P, Family::Pminus, Family::Qminus, Family::S})
        {
          add([=] { return check_trace_compatibility({f, n, r, k}); });
          add(
              [=]
              {
                AffineMap shift = AffineMap::identity(n);
                for (int i = 0; i < n; ++i)
                  shift.offset[i] = make_rational(2 * i + 1, 3);
                return check_affine_invariance({f, n, r, k}, shift,
                                               "translation");
              });
          if (element_of(f) == ElementKind::box)
            add(
                [=]
                {
                  AffineMap dilation = AffineMap::identity(n);
                  for (int i = 0; i < n; ++i)
                  {
                    dilation.linear(i, i) = make_rational(i + 2, 3);
                    dilation.offset[i] = make_rational(1 - i, 2);
                  }
                  return check_affine_invariance({f, n, r, k}, dilation,
                                                 "dilation");
                });
        }
  for (const char* name : {"square2", "quad2"})
    for (Family f : {Family::P, Family::Pminus, Family::Qminus, Family::S})
      for (int r = 1; r <= 3; ++r)
        add(
            [=]() -> Certificate
            {
              const Mesh m = builtin_mesh(name);
              if (element_of(f) != m.element_kind())
                return {};
              return check_commuting_monomials(m, f, r);
            });
  for (const auto& name : builtin_mesh_names())
    for (Family f : {Family::P, Family::Pminus, Family::Qminus, Family::S})
      for (int r = 1; r <= 2; ++r)
        for (int k = 0; k <= 3; ++k)
          add(
              [=]() -> Certificate
              {
                const Mesh m = builtin_mesh(name);
                const SpaceSpec s{f, m.n(), r, k};
                if (element_of(f) != m.element_kind() or !has_element(s))
                  return {};
                Certificate c = check_assembly(m, s);
                c.parameters["mesh_name"] = name;
                return c;
              });
  return tasks;
}
//-----------------------------------------------------------------------------
int cmd_verify_all(const Options& o, std::ostream& os)
{
  const auto tasks = verification_suite();
  std::vector<Certificate> certs(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { certs[i] = tasks[i](); });
  std::erase_if(certs, [](const Certificate& c) { return c.claim.empty(); });
  std::size_t failed = 0;
  for (const auto& c : certs)
    failed += c.pass ? 0 : 1;
  bool ok;
  {
    Sink sink(o, os);
    ok = write_certificates(certs, o.fmt(Format::json), *sink);
  }
  if (o.out)
    os << certs.size() << " certificates, " << failed << " failed\n";
  return ok ? 0 : 1;
}

} // namespace
//-----------------------------------------------------------------------------
int feec::cli::run(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err)
{
  CLI::App app{"Finite element differential forms: construction and "
               "verification"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> families{"P", "Pminus", "Qminus", "S"};
  auto flags = [&](CLI::App* sub)
  {
    sub->add_option("--family", o.family, "P | Pminus | Qminus | S")
        ->check(CLI::IsMember(families));
    sub->add_option("--n", o.n, "ambient dimension");
    sub->add_option("--r", o.r, "polynomial degree");
    sub->add_option("--k", o.k, "form degree");
    sub->add_option("--mesh", o.mesh, "mesh JSON file or built-in mesh name");
    sub->add_option("--out", o.out, "report path");
    sub->add_option("--format", o.format, "json | tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    return sub;
  };
  const std::vector<std::pair<std::string, int (*)(const Options&,
                                                   std::ostream&)>>
      verbs{{"dims", cmd_dims},
            {"describe", cmd_describe},
            {"unisolvence", cmd_unisolvence},
            {"complex", cmd_complex},
            {"homotopy", cmd_homotopy},
            {"table1", cmd_table1},
            {"dof-counts", cmd_dof_counts},
            {"project", cmd_project},
            {"verify-all", cmd_verify_all}};
  const std::vector<std::string> help{
      "dimension of a space",
      "basis of a space as JSON",
      "unisolvence certificates",
      "exactness of the polynomial complexes",
      "homotopy formula on homogeneous forms",
      "dimension tables for Qminus and S on boxes",
      "degrees of freedom per face dimension",
      "projections of monomial forms on a mesh",
      "every verification, as deterministic reports"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < verbs.size(); ++i)
    subs.push_back(flags(app.add_subcommand(verbs[i].first, help[i])));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  for (std::size_t i = 0; i < verbs.size(); ++i)
  {
    if (!subs[i]->parsed())
      continue;
    try
    {
      return verbs[i].second(o, out);
    }
    catch (const UsageError& e)
    {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    catch (const std::invalid_argument& e)
    {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}
//-----------------------------------------------------------------------------
int feec::cli::run(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}
