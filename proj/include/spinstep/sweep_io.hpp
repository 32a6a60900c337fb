#ifndef SPINSTEP_SWEEP_IO_HPP
#define SPINSTEP_SWEEP_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spinstep/eigensystem.hpp"
#include "spinstep/scattering.hpp"

namespace spinstep {

enum class Spacing { Linear, Log };
enum class Regime { Propagating, Evanescent, Auto };

struct SweepSpec {
  double potential = 100.0;  // eV
  double mass = kElectronMassEv;
  double e_over_v0_min = 1.001;
  double e_over_v0_max = 10.0;
  int points = 500;
  Spacing spacing = Spacing::Log;
  Regime regime = Regime::Auto;
  Spin incident_spin = Spin::Up;

  /// Throws Error(InvalidArgument) on an unusable grid.
  void validate() const;
};

/// One grid point. For evanescent rows r1 and r2 are R1' and R2', the transmission
/// fields are zero and t_qm / r_qm are unused.
struct SweepRow {
  Branch branch = Branch::Propagating;
  double energy = 0.0;
  double e_over_v0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double sum = 0.0;
  double t_qm = 0.0;
  double r_qm = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // strictly increasing energy
  int skipped_threshold = 0;   // grid points with |E/V0 - 1| <= 1e-9

  std::vector<SweepRow> rows_of(Branch b) const;
};

/// Evaluates the grid. Propagating points use the linear solve, evanescent points the
/// pole-free solve. Throws Error(ThresholdDegeneracy) only if every point is skipped.
SweepResult run_sweep(const SweepSpec& spec);

/// Fixed CSV header for a branch.
const char* csv_header(Branch b);

// The to_* functions require a non-empty row set whose sums are all within
// kUnitarityTol of 1, and throw Error otherwise. CSV and SVG also require a single branch.
std::string to_csv(std::span<const SweepRow> rows);
/// Array of row objects, each tagged with its regime.
std::string to_json(std::span<const SweepRow> rows);
/// 800x600 line chart of the named CSV columns against E/V0. Spin-up channels are
/// drawn red, spin-down channels blue.
std::string to_svg(std::span<const SweepRow> rows, const std::vector<std::string>& columns);

/// Default plotted columns: T1,T2,R1,R2 or R1_prime,R2_prime.
std::vector<std::string> default_columns(Branch b);

// Emitters validate everything before touching the file system and write through a
// temporary file, so a failure never leaves a partial file behind. I/O failures throw
// Error(Io) naming the path.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);
void emit_json(std::span<const SweepRow> rows, const std::filesystem::path& path);
void emit_svg(std::span<const SweepRow> rows, const std::filesystem::path& path,
              const std::vector<std::string>& columns);

enum class OutputFormat { Csv, Json, Svg };

/// Writes a sweep. A JSON file always holds every row; CSV and SVG split a two-regime
/// result into <stem>.propagating<ext> and <stem>.evanescent<ext>. Returns the paths written.
std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::filesystem::path& path, OutputFormat format,
                                               const std::vector<std::string>& columns = {});

/// Parses a CSV produced by to_csv back into rows.
std::vector<SweepRow> parse_csv(const std::string& text);

}  // namespace spinstep

#endif  // SPINSTEP_SWEEP_IO_HPP
