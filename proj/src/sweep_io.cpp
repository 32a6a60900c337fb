#include "spinstep/sweep_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinstep/error.hpp"
#include "spinstep/serialize.hpp"

namespace spinstep {

namespace {

constexpr double kViewWidth = 800.0;
constexpr double kViewHeight = 600.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<double> grid(const SweepSpec& s) {
  std::vector<double> xs(static_cast<std::size_t>(s.points));
  const double n = static_cast<double>(s.points - 1);
  for (int i = 0; i < s.points; ++i) {
    const double f = static_cast<double>(i) / n;
    xs[static_cast<std::size_t>(i)] =
        s.spacing == Spacing::Log
            ? s.e_over_v0_min * std::pow(s.e_over_v0_max / s.e_over_v0_min, f)
            : s.e_over_v0_min + f * (s.e_over_v0_max - s.e_over_v0_min);
  }
  xs.front() = s.e_over_v0_min;
  xs.back() = s.e_over_v0_max;
  return xs;
}

void check_rows(std::span<const SweepRow> rows, bool single_branch) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "no rows to emit");
  for (const auto& r : rows) {
    if (single_branch && r.branch != rows.front().branch)
      throw Error(ErrorCode::InvalidArgument, "CSV/SVG output needs rows from a single regime");
    if (!(std::abs(r.sum - 1.0) <= kUnitarityTol))
      throw Error(ErrorCode::UnitarityViolation,
                  "row at E = " + format_number(r.energy) + " eV has coefficient sum " + format_number(r.sum));
  }
}

double column_value(const SweepRow& r, const std::string& column) {
  if (column == "T1") return r.t1;
  if (column == "T2") return r.t2;
  if (column == "R1" || column == "R1_prime") return r.r1;
  if (column == "R2" || column == "R2_prime") return r.r2;
  if (column == "sum") return r.sum;
  if (column == "T_QM") return r.t_qm;
  if (column == "R_QM") return r.r_qm;
  throw Error(ErrorCode::InvalidArgument, "unknown column '" + column + "'");
}

bool column_allowed(Branch b, const std::string& column) {
  static const std::vector<std::string> prop = {"T1", "T2", "R1", "R2", "sum", "T_QM", "R_QM"};
  static const std::vector<std::string> evan = {"R1_prime", "R2_prime", "sum"};
  const auto& allowed = b == Branch::Propagating ? prop : evan;
  return std::find(allowed.begin(), allowed.end(), column) != allowed.end();
}

struct Stroke {
  const char* color;
  const char* dash;  // empty for solid
};

Stroke stroke_for(const std::string& column) {
  if (column == "T1") return {"red", ""};
  if (column == "R1" || column == "R1_prime") return {"red", "8,4"};
  if (column == "T2") return {"blue", ""};
  if (column == "R2" || column == "R2_prime") return {"blue", "8,4"};
  if (column == "sum") return {"black", ""};
  if (column == "T_QM") return {"gray", ""};
  return {"gray", "8,4"};
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::Io, "write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::Io, "cannot move output into '" + path.string() + "': " + ec.message());
  }
}

std::filesystem::path with_regime_suffix(const std::filesystem::path& path, Branch b) {
  std::filesystem::path out = path.parent_path();
  out /= path.stem().string() + "." + to_string(b) + path.extension().string();
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (!finite_positive(potential)) throw Error(ErrorCode::InvalidArgument, "V0 must be positive and finite");
  if (!finite_positive(mass)) throw Error(ErrorCode::InvalidArgument, "mass must be positive and finite");
  if (!finite_positive(e_over_v0_min) || !std::isfinite(e_over_v0_max))
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be positive and finite");
  if (!(e_over_v0_min < e_over_v0_max))
    throw Error(ErrorCode::InvalidArgument, "grid requires from < to");
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "grid requires at least 2 points");
  if (regime == Regime::Propagating && !(e_over_v0_min > 1.0))
    throw Error(ErrorCode::InvalidArgument, "propagating regime requires E/V0 > 1 over the whole grid");
  if (regime == Regime::Evanescent && !(e_over_v0_max < 1.0))
    throw Error(ErrorCode::InvalidArgument, "evanescent regime requires E/V0 < 1 over the whole grid");
}

std::vector<SweepRow> SweepResult::rows_of(Branch b) const {
  std::vector<SweepRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [b](const SweepRow& r) { return r.branch == b; });
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  for (double x : grid(spec)) {
    if (std::abs(x - 1.0) <= kThresholdEps) {
      ++result.skipped_threshold;
      continue;
    }
    const double energy = x * spec.potential;
    const StepProblem problem(energy, spec.potential, spec.mass, spec.incident_spin);
    SweepRow row;
    row.branch = problem.branch();
    row.energy = energy;
    row.e_over_v0 = x;
    if (row.branch == Branch::Propagating) {
      const ScatteringCoefficients c = coefficients(problem, solve_amplitudes_linear(problem));
      const QmReference q = qm_reference(energy, spec.potential);
      row.t1 = c.t1;
      row.t2 = c.t2;
      row.r1 = c.r1;
      row.r2 = c.r2;
      row.sum = c.sum();
      row.t_qm = q.t;
      row.r_qm = q.r;
    } else {
      const ScatteringCoefficients c = coefficients(problem, solve_amplitudes_pole_free(problem));
      row.r1 = c.r1;
      row.r2 = c.r2;
      row.sum = c.sum();
    }
    result.rows.push_back(row);
  }
  if (result.rows.empty())
    throw Error(ErrorCode::ThresholdDegeneracy, "threshold degeneracy: every grid point lies in |E/V0 - 1| <= 1e-9");
  return result;
}

const char* csv_header(Branch b) {
  return b == Branch::Propagating ? "E_eV,E_over_V0,T1,T2,R1,R2,sum,T_QM,R_QM"
                                  : "E_eV,E_over_V0,R1_prime,R2_prime,sum";
}

std::string to_csv(std::span<const SweepRow> rows) {
  check_rows(rows, true);
  const Branch b = rows.front().branch;
  std::string out = csv_header(b);
  out += "\n";
  for (const auto& r : rows) {
    std::vector<double> values = {r.energy, r.e_over_v0};
    if (b == Branch::Propagating)
      values.insert(values.end(), {r.t1, r.t2, r.r1, r.r2, r.sum, r.t_qm, r.r_qm});
    else
      values.insert(values.end(), {r.r1, r.r2, r.sum});
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += format_number(values[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(std::span<const SweepRow> rows) {
  check_rows(rows, false);
  std::string out = "[";
  bool first = true;
  for (const auto& r : rows) {
    JsonObject obj;
    obj.field("regime", to_string(r.branch)).field("e_ev", r.energy).field("e_over_v0", r.e_over_v0);
    if (r.branch == Branch::Propagating) {
      obj.field("t1", r.t1).field("t2", r.t2).field("r1", r.r1).field("r2", r.r2);
      obj.field("sum", r.sum).field("t_qm", r.t_qm).field("r_qm", r.r_qm);
    } else {
      obj.field("r1_prime", r.r1).field("r2_prime", r.r2).field("sum", r.sum);
    }
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += obj.str();
  }
  return out + "\n]\n";
}

std::vector<std::string> default_columns(Branch b) {
  if (b == Branch::Propagating) return {"T1", "T2", "R1", "R2"};
  return {"R1_prime", "R2_prime"};
}

std::string to_svg(std::span<const SweepRow> rows, const std::vector<std::string>& columns) {
  check_rows(rows, true);
  const Branch b = rows.front().branch;
  const std::vector<std::string> cols = columns.empty() ? default_columns(b) : columns;
  for (const auto& c : cols)
    if (!column_allowed(b, c))
      throw Error(ErrorCode::InvalidArgument, "column '" + c + "' is not available for the " +
                                                  to_string(b) + " regime");

  double x_lo = rows.front().e_over_v0;
  double x_hi = rows.back().e_over_v0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const double plot_w = kViewWidth - kMarginLeft - kMarginRight;
  const double plot_h = kViewHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kMarginTop + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s << "<rect x=\"" << coord(kMarginLeft) << "\" y=\"" << coord(kMarginTop) << "\" width=\"" << coord(plot_w)
    << "\" height=\"" << coord(plot_h) << "\"/>\n";
  s << "</g>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = 0.25 * i;
    s << "<line x1=\"" << coord(kMarginLeft - 5) << "\" y1=\"" << coord(py(y)) << "\" x2=\""
      << coord(kMarginLeft) << "\" y2=\"" << coord(py(y)) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << coord(kMarginLeft - 8) << "\" y=\"" << coord(py(y) + 4)
      << "\" text-anchor=\"end\">" << tick_label(y) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / 5.0;
    s << "<line x1=\"" << coord(px(x)) << "\" y1=\"" << coord(kMarginTop + plot_h) << "\" x2=\""
      << coord(px(x)) << "\" y2=\"" << coord(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << coord(px(x)) << "\" y=\"" << coord(kMarginTop + plot_h + 20)
      << "\" text-anchor=\"middle\">" << tick_label(x) << "</text>\n";
  }
  s << "<text x=\"" << coord(kMarginLeft + plot_w / 2) << "\" y=\"" << coord(kViewHeight - 15)
    << "\" text-anchor=\"middle\">E/V0</text>\n";
  s << "<text x=\"20\" y=\"" << coord(kMarginTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << coord(kMarginTop + plot_h / 2) << ")\">probability</text>\n";
  s << "</g>\n";

  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Stroke st = stroke_for(cols[k]);
    s << "<polyline fill=\"none\" stroke=\"" << st.color << "\" stroke-width=\"2\"";
    if (*st.dash) s << " stroke-dasharray=\"" << st.dash << "\"";
    s << " data-column=\"" << cols[k] << "\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) s << ' ';
      s << coord(px(rows[i].e_over_v0)) << ',' << coord(py(column_value(rows[i], cols[k])));
    }
    s << "\"/>\n";
    const double ly = kMarginTop + 20.0 + 20.0 * static_cast<double>(k);
    const double lx = kViewWidth - kMarginRight + 15.0;
    s << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 30) << "\" y2=\""
      << coord(ly) << "\" stroke=\"" << st.color << "\" stroke-width=\"2\"";
    if (*st.dash) s << " stroke-dasharray=\"" << st.dash << "\"";
    s << "/>\n";
    s << "<text x=\"" << coord(lx + 36) << "\" y=\"" << coord(ly + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << cols[k] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  write_atomically(path, to_csv(rows));
}

void emit_json(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  write_atomically(path, to_json(rows));
}

void emit_svg(std::span<const SweepRow> rows, const std::filesystem::path& path,
              const std::vector<std::string>& columns) {
  write_atomically(path, to_svg(rows, columns));
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result, const std::filesystem::path& path,
                                               OutputFormat format, const std::vector<std::string>& columns) {
  std::vector<std::filesystem::path> written;
  if (format == OutputFormat::Json) {
    emit_json(result.rows, path);
    written.push_back(path);
    return written;
  }
  const std::vector<SweepRow> prop = result.rows_of(Branch::Propagating);
  const std::vector<SweepRow> evan = result.rows_of(Branch::Evanescent);
  const bool split = !prop.empty() && !evan.empty();
  if (format == OutputFormat::Svg && split)
    for (const auto& c : columns)
      if (!column_allowed(Branch::Propagating, c) && !column_allowed(Branch::Evanescent, c))
        throw Error(ErrorCode::InvalidArgument, "unknown column '" + c + "'");
  // Validate both halves before writing either.
  std::vector<std::pair<std::filesystem::path, std::string>> outputs;
  for (const auto* part : {&evan, &prop}) {
    if (part->empty()) continue;
    const Branch b = part->front().branch;
    const std::filesystem::path target = split ? with_regime_suffix(path, b) : path;
    std::string text;
    if (format == OutputFormat::Csv) {
      text = to_csv(*part);
    } else {
      // Columns that do not exist in a regime are dropped from that half of a split plot.
      std::vector<std::string> cols;
      for (const auto& c : columns)
        if (column_allowed(b, c)) cols.push_back(c);
      if (!split) cols = columns;
      text = to_svg(*part, cols);
    }
    outputs.emplace_back(target, std::move(text));
  }
  for (const auto& [target, text] : outputs) {
    write_atomically(target, text);
    written.push_back(target);
  }
  return written;
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "empty CSV");
  Branch b;
  if (line == csv_header(Branch::Propagating))
    b = Branch::Propagating;
  else if (line == csv_header(Branch::Evanescent))
    b = Branch::Evanescent;
  else
    throw Error(ErrorCode::InvalidArgument, "unrecognized CSV header: " + line);

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    const std::size_t want = b == Branch::Propagating ? 9 : 5;
    if (v.size() != want) throw Error(ErrorCode::InvalidArgument, "malformed CSV row: " + line);
    SweepRow r;
    r.branch = b;
    r.energy = v[0];
    r.e_over_v0 = v[1];
    if (b == Branch::Propagating) {
      r.t1 = v[2];
      r.t2 = v[3];
      r.r1 = v[4];
      r.r2 = v[5];
      r.sum = v[6];
      r.t_qm = v[7];
      r.r_qm = v[8];
    } else {
      r.r1 = v[2];
      r.r2 = v[3];
      r.sum = v[4];
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace spinstep
