#include "fnls/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fnls {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("csv: cannot open " + path + " for writing");
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    if (!os) throw std::runtime_error("csv: write failed for " + path);
}

CsvTable probe_csv(const std::vector<ProbeReport>& reports) {
    CsvTable t;
    t.header = {"probe_id", "alpha", "sign", "b",    "s",         "K1",
                "K2",       "delta", "Nx",   "Ny",   "Nt",        "Lx",
                "data_kind", "seed",  "numerator", "denominator", "ratio",
                "outside_hypotheses"};
    if (!reports.empty())
        for (const auto& [k, v] : reports.front().extras) t.header.push_back(k);
    for (const auto& r : reports) {
        std::vector<std::string> row = {r.probe_id,
                                        format_double(r.alpha),
                                        to_string(r.sign),
                                        format_double(r.b),
                                        format_double(r.s),
                                        format_double(r.K1),
                                        format_double(r.K2),
                                        format_double(r.delta),
                                        std::to_string(r.Nx),
                                        std::to_string(r.Ny),
                                        std::to_string(r.Nt),
                                        format_double(r.Lx),
                                        r.data_kind,
                                        std::to_string(r.seed),
                                        format_double(r.numerator),
                                        format_double(r.denominator),
                                        format_double(r.ratio),
                                        r.outside_hypotheses ? "true" : "false"};
        for (const auto& [k, v] : r.extras) row.push_back(format_double(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string probe_json(const std::vector<ProbeReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json o;
        o["probe_id"] = r.probe_id;
        o["alpha"] = r.alpha;
        o["sign"] = to_string(r.sign);
        o["b"] = r.b;
        o["s"] = r.s;
        o["K1"] = r.K1;
        o["K2"] = r.K2;
        o["delta"] = r.delta;
        o["Nx"] = r.Nx;
        o["Ny"] = r.Ny;
        o["Nt"] = r.Nt;
        o["Lx"] = r.Lx;
        o["data_kind"] = r.data_kind;
        o["seed"] = r.seed;
        o["numerator"] = r.numerator;
        o["denominator"] = r.denominator;
        o["ratio"] = r.ratio;
        o["outside_hypotheses"] = r.outside_hypotheses;
        for (const auto& [k, v] : r.extras) o[k] = v;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

CsvTable scan_csv(const SymbolSpec& spec, double xi0, long trunc_N, const ScanTable& table) {
    CsvTable t;
    t.header = {"alpha", "sign",  "xi0",  "n0",
                "C",     "K",     "trunc_N", "lower",
                "upper", "ratio_upper_over_K", "divergent_tail"};
    for (const auto& c : table.cells) {
        t.rows.push_back({format_double(spec.alpha), to_string(spec.sign), format_double(xi0),
                          std::to_string(c.n0), format_double(c.C), format_double(c.K),
                          std::to_string(trunc_N), format_double(c.lower),
                          format_double(c.upper), format_double(c.ratio),
                          c.divergent ? "true" : "false"});
    }
    return t;
}

CsvTable diagnostics_csv(const Trajectory& traj) {
    CsvTable t;
    t.header = {"step", "t", "mass", "mass_drift_rel", "l4_space_norm"};
    for (const auto& d : traj.diagnostics)
        t.rows.push_back({std::to_string(d.step), format_double(d.t), format_double(d.mass),
                          format_double(d.mass_drift_rel), format_double(d.l4_space_norm)});
    return t;
}

const char* to_string(PlotKind k) {
    switch (k) {
        case PlotKind::ratio_vs_k: return "ratio_vs_k";
        case PlotKind::ratio_vs_c: return "ratio_vs_c";
        case PlotKind::series_vs_n: return "series_vs_n";
        case PlotKind::mass_vs_t: return "mass_vs_t";
    }
    return "?";
}

void emit_plotdata(const std::vector<std::tuple<std::string, double, double>>& rows,
                   PlotKind kind, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_plotdata: empty report set");
    auto sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    CsvTable t;
    const char* x = kind == PlotKind::ratio_vs_k   ? "K"
                    : kind == PlotKind::ratio_vs_c ? "C"
                    : kind == PlotKind::series_vs_n ? "N"
                                                    : "t";
    const char* y = kind == PlotKind::series_vs_n ? "partial_sum"
                    : kind == PlotKind::mass_vs_t ? "mass"
                                                  : "ratio";
    t.header = {"series", x, y};
    for (const auto& [label, xv, yv] : sorted)
        t.rows.push_back({label, format_double(xv), format_double(yv)});
    t.write(path);
}

} // namespace fnls
