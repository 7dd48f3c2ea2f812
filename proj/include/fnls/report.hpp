#pragma once

#include <string>
#include <vector>

#include "fnls/measure.hpp"
#include "fnls/probes.hpp"
#include "fnls/solver.hpp"

namespace fnls {

/// Deterministic numeric formatting shared by every report writer: %.17g
/// round-trips doubles exactly and is byte-stable for a fixed input.
std::string format_double(double v);

/// Minimal CSV table: fixed header, rows of preformatted cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string& path) const;
};

CsvTable probe_csv(const std::vector<ProbeReport>& reports);

/// JSON mirror of the probe CSV: an array of objects with the same keys.
std::string probe_json(const std::vector<ProbeReport>& reports);
CsvTable scan_csv(const SymbolSpec& spec, double xi0, long trunc_N, const ScanTable& table);
CsvTable diagnostics_csv(const Trajectory& traj);

enum class PlotKind { ratio_vs_k, ratio_vs_c, series_vs_n, mass_vs_t };

const char* to_string(PlotKind k);

/// Tidy long-format plot data.  Rows are (series label, x, y); sorted by
/// (label, x).  Throws on empty input.
void emit_plotdata(const std::vector<std::tuple<std::string, double, double>>& rows,
                   PlotKind kind, const std::string& path);

} // namespace fnls
