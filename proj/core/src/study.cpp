#include "dstokes/study.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "dstokes/assembly.hpp"
#include "dstokes/error.hpp"
#include "dstokes/errors.hpp"
#include "dstokes/manufactured.hpp"

namespace dstokes {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ValidationError("invalid number for " + std::string(key) + ": '" + v + "'");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ValidationError("invalid integer for " + std::string(key) + ": '" + v + "'");
  }
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string to_string(DomainId d) { return d == DomainId::convex ? "convex" : "nonconvex"; }
std::string to_string(PairingKind k) { return k == PairingKind::taylor_hood ? "taylor_hood" : "mini"; }
std::string to_string(ProjectorKind k) {
  switch (k) {
    case ProjectorKind::l2: return "l2";
    case ProjectorKind::carstensen: return "carstensen";
    case ProjectorKind::lagrange: return "lagrange";
  }
  return {};
}
std::string to_string(CompatMode m) {
  switch (m) {
    case CompatMode::off: return "off";
    case CompatMode::affine_field: return "affine_field";
    case CompatMode::projected_normal: return "projected_normal";
  }
  return {};
}

void StudyConfig::validate() const {
  if (levels < 2) throw ValidationError("levels must be at least 2 (eoc needs two meshes)");
  if (!(alpha > -1.0)) throw ValidationError("alpha must be greater than -1");
  if (projector == ProjectorKind::lagrange && alpha <= 0.0) {
    throw ValidationError("lagrange projector requires alpha > 0 (datum not continuous)");
  }
  if (quad_degree < 1 || quad_degree > 20) throw ValidationError("quad-degree must lie in [1, 20]");
  if (corner_depth < 0) throw ValidationError("corner-depth must be nonnegative");
  if (alpha_reg < 0.0) throw ValidationError("alpha-reg must be nonnegative");
}

void apply_setting(StudyConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  auto bad = [&]() { return ValidationError("invalid value for " + key + ": '" + value + "'"); };
  if (key == "domain") {
    if (value == "convex") c.domain = DomainId::convex;
    else if (value == "nonconvex") c.domain = DomainId::nonconvex;
    else throw bad();
  } else if (key == "alpha") {
    c.alpha = parse_double(key, value);
  } else if (key == "element") {
    if (value == "taylor_hood" || value == "taylor-hood") c.pairing = ElementPairing::taylor_hood();
    else if (value == "mini") c.pairing = ElementPairing::mini();
    else throw bad();
  } else if (key == "projector") {
    if (value == "l2") c.projector = ProjectorKind::l2;
    else if (value == "carstensen") c.projector = ProjectorKind::carstensen;
    else if (value == "lagrange") c.projector = ProjectorKind::lagrange;
    else throw bad();
  } else if (key == "compat") {
    if (value == "off") c.compat = CompatMode::off;
    else if (value == "affine_field" || value == "affine-field") c.compat = CompatMode::affine_field;
    else if (value == "projected_normal" || value == "projected-normal") c.compat = CompatMode::projected_normal;
    else throw bad();
  } else if (key == "levels") {
    c.levels = parse_int(key, value);
  } else if (key == "quad-degree" || key == "quad_degree") {
    c.quad_degree = parse_int(key, value);
  } else if (key == "corner-depth" || key == "corner_depth") {
    c.corner_depth = parse_int(key, value);
  } else if (key == "alpha-reg" || key == "alpha_reg") {
    c.alpha_reg = parse_double(key, value);
  } else if (key == "solver") {
    if (value == "direct") c.solver = SolveMethod::direct_factorization;
    else if (value == "minres") c.solver = SolveMethod::minres_uzawa;
    else throw bad();
  } else if (key == "output") {
    if (value == "csv") c.output = OutputFormat::csv;
    else if (value == "markdown") c.output = OutputFormat::markdown;
    else throw bad();
  } else {
    throw ValidationError("unknown setting '" + key + "'");
  }
}

void apply_config_file(StudyConfig& config, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(config, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
}

StudyResult run_convergence(const StudyConfig& config) {
  config.validate();
  Mesh mesh = build_domain(config.domain);
  const SingularSolution exact(config.alpha, mesh.polygon().corner_angle);
  const BoundaryDatum datum = BoundaryDatum::from_field(
      mesh.polygon(), [&exact](const Point2& x) { return exact.velocity(x); }, 0.5 + config.alpha, true);

  ErrorQuadrature quad;
  quad.degree = config.quad_degree;
  quad.corner_depth = config.corner_depth;

  SolverOptions solver;
  solver.method = config.solver;

  StudyResult result;
  for (int level = 1; level <= config.levels; ++level) {
    mesh = refine_uniform(mesh);
    const DofMap dofs = build_dofmap(mesh, config.pairing);

    BoundaryTrace trace;
    switch (config.projector) {
      case ProjectorKind::l2: trace = project_l2(datum, mesh, dofs); break;
      case ProjectorKind::carstensen: trace = interpolate_carstensen(datum, mesh, dofs); break;
      case ProjectorKind::lagrange: trace = interpolate_lagrange(datum, mesh, dofs); break;
    }
    if (config.compat != CompatMode::off) {
      const auto kind =
          config.compat == CompatMode::affine_field ? CorrectorKind::affine_field : CorrectorKind::projected_normal;
      trace = enforce_compatibility(trace, build_corrector(kind, mesh, dofs), mesh, dofs);
    }

    const BorderedSystem system = assemble_bordered_system(mesh, dofs, trace, config.alpha_reg);
    auto [sol, report] = solve(system, solver);

    ConvergenceRecord rec;
    rec.level = level;
    rec.h = mesh.h();
    rec.n_dofs = dofs.n_velocity() + dofs.n_pressure;
    rec.err_l2_velocity = l2_velocity_error(sol, exact, mesh, dofs, quad);
    if (config.alpha > 0.0) {
      rec.err_h1_velocity = h1_seminorm_velocity_error(sol, exact, mesh, dofs, quad);
      rec.err_l2_pressure = l2_pressure_error(sol, exact, mesh, dofs, quad);
    }
    rec.delta_h = sol.delta_h;
    rec.flux_identity_gap = std::abs(divergence_integral(sol.velocity, mesh, dofs) - boundary_flux(trace, mesh, dofs));
    rec.relative_residual = report.rhs_norm > 0.0 ? report.residual_norm / report.rhs_norm : 0.0;
    result.records.push_back(rec);
  }
  fill_eoc(result.records);
  result.expected_order = expected_order(config.alpha, mesh.polygon().corner_angle, config.pairing.velocity_order());
  return result;
}

void fill_eoc(std::vector<ConvergenceRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    auto& cur = records[i];
    const auto& prev = records[i - 1];
    cur.eoc_l2_velocity = eoc(prev.err_l2_velocity, cur.err_l2_velocity);
    if (prev.err_h1_velocity && cur.err_h1_velocity) cur.eoc_h1_velocity = eoc(*prev.err_h1_velocity, *cur.err_h1_velocity);
    if (prev.err_l2_pressure && cur.err_l2_pressure) cur.eoc_l2_pressure = eoc(*prev.err_l2_pressure, *cur.err_l2_pressure);
  }
}

std::string emit_table(const std::vector<ConvergenceRecord>& records, OutputFormat format,
                       std::optional<double> expected) {
  if (records.empty()) throw ValidationError("emit_table: no records");
  const bool h1 = records.front().err_h1_velocity.has_value();
  const bool pr = records.front().err_l2_pressure.has_value();
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v, const char* f) { return v ? fmt(f, *v) : std::string(); };

  if (format == OutputFormat::csv) {
    const char* g = "%.12e";
    os << "level,h,n_dofs,e_l2_velocity,eoc_l2_velocity";
    if (h1) os << ",e_h1_velocity,eoc_h1_velocity";
    if (pr) os << ",e_l2_pressure,eoc_l2_pressure";
    os << ",delta_h\n";
    for (const auto& r : records) {
      os << r.level << ',' << fmt(g, r.h) << ',' << r.n_dofs << ',' << fmt(g, r.err_l2_velocity) << ','
         << opt(r.eoc_l2_velocity, g);
      if (h1) os << ',' << opt(r.err_h1_velocity, g) << ',' << opt(r.eoc_h1_velocity, g);
      if (pr) os << ',' << opt(r.err_l2_pressure, g) << ',' << opt(r.eoc_l2_pressure, g);
      os << ',' << fmt(g, r.delta_h) << '\n';
    }
    if (expected) {
      os << "expected,,,," << fmt("%.4f", *expected);
      if (h1) os << ",,";
      if (pr) os << ",,";
      os << ",\n";
    }
    return os.str();
  }

  os << "| h | e_h | eoc |";
  if (h1) os << " H1 e_h | eoc |";
  if (pr) os << " p e_h | eoc |";
  os << "\n|---|---|---|";
  if (h1) os << "---|---|";
  if (pr) os << "---|---|";
  os << '\n';
  auto eoc_cell = [&](const std::optional<double>& v) { return v ? fmt("%.4f", *v) : std::string("-"); };
  for (const auto& r : records) {
    os << "| " << fmt("%.4e", r.h) << " | " << fmt("%.4e", r.err_l2_velocity) << " | " << eoc_cell(r.eoc_l2_velocity)
       << " |";
    if (h1) os << ' ' << fmt("%.4e", r.err_h1_velocity.value_or(0.0)) << " | " << eoc_cell(r.eoc_h1_velocity) << " |";
    if (pr) os << ' ' << fmt("%.4e", r.err_l2_pressure.value_or(0.0)) << " | " << eoc_cell(r.eoc_l2_pressure) << " |";
    os << '\n';
  }
  if (expected) {
    os << "| expected | | " << fmt("%.4f", *expected) << " |";
    if (h1) os << " | |";
    if (pr) os << " | |";
    os << '\n';
  }
  return os.str();
}

std::vector<ConvergenceRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("parse_csv: empty input");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string f;
    while (std::getline(hs, f, ',')) header.push_back(f);
  }
  std::vector<ConvergenceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("expected", 0) == 0) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != header.size()) throw ValidationError("parse_csv: column count mismatch");
    ConvergenceRecord r;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& key = header[i];
      const auto& v = fields[i];
      auto num = [&]() { return parse_double(key, v); };
      auto optnum = [&]() { return v.empty() ? std::optional<double>{} : std::optional<double>{num()}; };
      if (key == "level") r.level = parse_int(key, v);
      else if (key == "h") r.h = num();
      else if (key == "n_dofs") r.n_dofs = static_cast<long>(num());
      else if (key == "e_l2_velocity") r.err_l2_velocity = num();
      else if (key == "eoc_l2_velocity") r.eoc_l2_velocity = optnum();
      else if (key == "e_h1_velocity") r.err_h1_velocity = optnum();
      else if (key == "eoc_h1_velocity") r.eoc_h1_velocity = optnum();
      else if (key == "e_l2_pressure") r.err_l2_pressure = optnum();
      else if (key == "eoc_l2_pressure") r.eoc_l2_pressure = optnum();
      else if (key == "delta_h") r.delta_h = num();
    }
    out.push_back(r);
  }
  return out;
}

BoundaryDatum counterexample_datum(const Polygon& square) {
  BoundaryDatum d;
  d.smoothness = 0.0;
  // Polygon edge 2 runs from (1,1) to (0,1): x1 = 1 - s, so 1/2 <= x1 < 1 is 0 < s <= 1/2.
  const int top = 2;
  d.evaluator = [top](int e, double s) {
    if (e == top && s > 0.0 && s <= 0.5) return Vec2{1.0, 0.0};
    return Vec2{0.0, 0.0};
  };
  d.jumps = {{top, 0.0}, {top, 0.5}};
  (void)square;
  return d;
}

bool CounterexampleReport::datum_ok() const { return std::abs(datum_flux) <= tolerance; }
bool CounterexampleReport::l2_ok() const { return std::abs(l2_flux - 3.0 / 16.0) <= tolerance; }
bool CounterexampleReport::carstensen_ok() const { return std::abs(carstensen_flux - 1.0 / 8.0) <= tolerance; }

std::string CounterexampleReport::to_text() const {
  std::ostringstream os;
  auto status = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "unit square, one boundary element per side, P1 trace\n";
  os << "boundary mass matrix:\n";
  for (const auto& row : boundary_mass) {
    os << ' ';
    for (double v : row) os << ' ' << fmt("%.15f", v);
    os << '\n';
  }
  os << "L2 projection, first component:";
  for (double v : l2_projection.x) os << ' ' << fmt("%.15f", v);
  os << "\nCarstensen interpolant, first component:";
  for (double v : carstensen.x) os << ' ' << fmt("%.15f", v);
  os << '\n';
  os << "<u, n>            = " << fmt("%.15e", datum_flux) << "  expected 0      " << status(datum_ok()) << '\n';
  os << "<pi_h u, n> (L2)  = " << fmt("%.15e", l2_flux) << "  expected 3/16   " << status(l2_ok()) << '\n';
  os << "<pi_h u, n> (Car) = " << fmt("%.15e", carstensen_flux) << "  expected 1/8    " << status(carstensen_ok())
     << '\n';
  return os.str();
}

CounterexampleReport run_counterexample() {
  const Mesh mesh = build_unit_square();
  const DofMap dofs = build_dofmap(mesh, ElementPairing::mini());
  const BoundaryDatum u = counterexample_datum(mesh.polygon());

  CounterexampleReport rep;
  const SparseMatrix M = assemble_boundary_mass(mesh, dofs);
  rep.boundary_mass.assign(M.rows(), std::vector<double>(M.cols(), 0.0));
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) rep.boundary_mass[i][j] = M(i, j);
  }
  rep.l2_projection = project_l2(u, mesh, dofs);
  rep.carstensen = interpolate_carstensen(u, mesh, dofs);
  rep.datum_flux = datum_flux(u, mesh);
  rep.l2_flux = boundary_flux(rep.l2_projection, mesh, dofs);
  rep.carstensen_flux = boundary_flux(rep.carstensen, mesh, dofs);
  return rep;
}

}  // namespace dstokes
