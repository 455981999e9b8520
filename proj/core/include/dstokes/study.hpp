#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dstokes/boundary_data.hpp"
#include "dstokes/fe_spaces.hpp"
#include "dstokes/mesh.hpp"
#include "dstokes/solver.hpp"

namespace dstokes {

enum class ProjectorKind { l2, carstensen, lagrange };
enum class CompatMode { off, affine_field, projected_normal };
enum class OutputFormat { csv, markdown };

struct StudyConfig {
  DomainId domain = DomainId::convex;
  double alpha = 0.5;
  ElementPairing pairing = ElementPairing::taylor_hood();
  ProjectorKind projector = ProjectorKind::l2;
  CompatMode compat = CompatMode::off;
  int levels = 6;
  int quad_degree = 10;
  int corner_depth = 6;
  double alpha_reg = 1.0;
  SolveMethod solver = SolveMethod::direct_factorization;
  OutputFormat output = OutputFormat::csv;

  /// Throws ValidationError naming the first violated constraint.
  void validate() const;
};

/// Applies one `key=value` setting (keys as the long CLI flags without dashes:
/// domain, alpha, element, projector, compat, levels, quad-degree,
/// corner-depth, alpha-reg, solver, output). Throws ValidationError.
void apply_setting(StudyConfig& config, std::string_view key, std::string_view value);

/// Reads `key=value` lines; blank lines and `#` comments are ignored.
void apply_config_file(StudyConfig& config, std::istream& in);

std::string to_string(DomainId d);
std::string to_string(PairingKind k);
std::string to_string(ProjectorKind k);
std::string to_string(CompatMode m);

struct ConvergenceRecord {
  int level = 0;
  double h = 0.0;
  long n_dofs = 0;
  double err_l2_velocity = 0.0;
  std::optional<double> err_h1_velocity;
  std::optional<double> err_l2_pressure;
  std::optional<double> eoc_l2_velocity;
  std::optional<double> eoc_h1_velocity;
  std::optional<double> eoc_l2_pressure;
  /// Divergence defect delta_h of the solved system.
  double delta_h = 0.0;
  /// |(div y_h, 1) - <u_h, n>|.
  double flux_identity_gap = 0.0;
  double relative_residual = 0.0;
};

struct StudyResult {
  std::vector<ConvergenceRecord> records;
  double expected_order = 0.0;
};

/// Refinement loop: level l uses the coarse domain mesh refined l times,
/// l = 1..levels. The boundary datum is the exact solution's trace.
/// Throws NumericalError if a solve fails.
StudyResult run_convergence(const StudyConfig& config);

/// Appends eoc entries computed from consecutive records.
void fill_eoc(std::vector<ConvergenceRecord>& records);

/// Table with h, e_h and eoc per measured norm and a final `expected` row.
std::string emit_table(const std::vector<ConvergenceRecord>& records, OutputFormat format,
                       std::optional<double> expected = std::nullopt);

/// Parses the CSV produced by emit_table (the `expected` row is skipped).
std::vector<ConvergenceRecord> parse_csv(std::string_view text);

/// Step datum on the unit square: (1, 0) on the top side for 1/2 <= x1 < 1,
/// zero elsewhere. Its net flux vanishes.
BoundaryDatum counterexample_datum(const Polygon& unit_square);

struct CounterexampleReport {
  std::vector<std::vector<double>> boundary_mass;  // dense 4 x 4
  BoundaryTrace l2_projection;
  BoundaryTrace carstensen;
  double datum_flux = 0.0;
  double l2_flux = 0.0;
  double carstensen_flux = 0.0;
  double tolerance = 1e-12;

  bool datum_ok() const;
  bool l2_ok() const;
  bool carstensen_ok() const;
  bool passed() const { return datum_ok() && l2_ok() && carstensen_ok(); }
  std::string to_text() const;
};

/// Unit square with one boundary element per side and a P1 trace space.
CounterexampleReport run_counterexample();

}  // namespace dstokes
