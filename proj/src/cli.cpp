#include "fnls/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "fnls/config.hpp"
#include "fnls/measure.hpp"
#include "fnls/parallel.hpp"
#include "fnls/probes.hpp"
#include "fnls/report.hpp"
#include "fnls/rng.hpp"
#include "fnls/snapshot.hpp"
#include "fnls/solver.hpp"

namespace fnls {

namespace {

namespace fs = std::filesystem;

struct Ctx {
    RunConfig cfg;
    std::string outdir = "fnls_out";
    bool assert_mode = false;

    std::string path(const std::string& name) const { return (fs::path(outdir) / name).string(); }

    void write_summary(const std::string& sub, const json& results) const {
        json j;
        j["subcommand"] = sub;
        j["resolved_config"] = cfg.resolved();
        j["results"] = results;
        std::ofstream os(path(sub + "_summary.json"));
        if (!os) throw std::runtime_error("cannot open summary file in " + outdir);
        os << j.dump(2) << "\n";
    }
};

SymbolSpec get_spec(const RunConfig& cfg) {
    return SymbolSpec(cfg.get_double("symbol", "alpha", 1.0),
                      sign_from_string(cfg.get_string("symbol", "sign", "elliptic")));
}

GridPtr get_grid(const RunConfig& cfg, int def_nx, int def_ny, double def_lx) {
    const int nx = static_cast<int>(cfg.get_long("grid", "nx", def_nx));
    const int ny = static_cast<int>(cfg.get_long("grid", "ny", def_ny));
    const double lx = cfg.get_double("grid", "lx", def_lx);
    if (cfg.get_bool("grid", "planar", false))
        return make_planar_grid(nx, ny, lx, cfg.get_double("grid", "ly", lx));
    return make_grid(nx, ny, lx);
}

Field initial_data(const RunConfig& cfg, GridPtr grid, const CounterRng& rng) {
    const std::string kind = cfg.get_string("data", "kind", "gaussian");
    const double amp = cfg.get_double("data", "amplitude", 0.5);
    if (kind == "gaussian") {
        const int jmax = static_cast<int>(cfg.get_long("data", "jmax", grid->nx / 9));
        const int nmax = static_cast<int>(cfg.get_long("data", "nmax", grid->ny / 9));
        Field f = gaussian_field(grid, jmax, nmax, rng);
        for (auto& z : f.data) z *= amp;
        return f;
    }
    if (kind == "plane_wave") {
        const long j0 = cfg.get_long("data", "j0", 1);
        const long n0 = cfg.get_long("data", "n0", 1);
        if (j0 < -grid->nx / 2 || j0 >= grid->nx / 2)
            throw std::invalid_argument("data.j0 = " + std::to_string(j0) +
                                        " outside the mode range [-nx/2, nx/2)");
        if (n0 < -grid->ny / 2 || n0 >= grid->ny / 2)
            throw std::invalid_argument("data.n0 = " + std::to_string(n0) +
                                        " outside the mode range [-ny/2, ny/2)");
        Field f = make_field(grid, Representation::spectral);
        f.at(Grid::storage_index(j0, grid->nx), Grid::storage_index(n0, grid->ny)) =
            cdouble{amp, 0.0};
        return f;
    }
    if (kind == "file") {
        const std::string path = cfg.get_string("data", "path", "");
        if (path.empty()) throw std::invalid_argument("data.kind = file requires data.path");
        return read_snapshot(path).field;
    }
    throw std::invalid_argument("data.kind must be gaussian|plane_wave|file, got '" + kind + "'");
}

// Ensemble member for the linear-estimate probes; `mixed` cycles data kinds.
Field ensemble_member(GridPtr grid, const std::string& kind, int trunc, int member,
                      const CounterRng& base_rng, std::string& kind_out) {
    const CounterRng rng = base_rng.member(static_cast<uint64_t>(member));
    std::string k = kind;
    if (k == "mixed") {
        const char* cycle[] = {"gaussian", "packet", "knapp"};
        k = cycle[member % 3];
    }
    kind_out = k;
    const int nmax = std::min(trunc, grid->ny / 2 - 1);
    if (k == "gaussian") return gaussian_field(grid, trunc, nmax, rng);
    if (k == "packet") {
        const int j0 = trunc / 2 + static_cast<int>(rng.uniform(900001) * trunc / 4);
        const int n0 = static_cast<int>(rng.uniform(900002) * std::min(4, nmax));
        return wave_packet(grid, j0, n0, std::max(1.0, std::sqrt(trunc)), 1.5, rng);
    }
    if (k == "knapp")
        return knapp_tube(grid, trunc / 2, 0, std::max(1, trunc / 8), std::min(1, nmax));
    throw std::invalid_argument("probe.kind must be gaussian|packet|knapp|mixed, got '" + k +
                                "'");
}

void write_probe_reports(const Ctx& ctx, const std::string& sub,
                         const std::vector<ProbeReport>& reports) {
    probe_csv(reports).write(ctx.path(sub + ".csv"));
    std::ofstream os(ctx.path(sub + "_reports.json"));
    if (!os) throw std::runtime_error("cannot open report mirror in " + ctx.outdir);
    os << probe_json(reports);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// --- subcommands ----------------------------------------------------------

int cmd_simulate(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    SimulationConfig sim;
    sim.spec = spec;
    sim.grid = get_grid(cfg, 64, 32, 16.0 * std::numbers::pi);
    sim.nu = cfg.get_double("nonlinearity", "nu", 1.0);
    sim.dealias_rule =
        dealias_rule_from_string(cfg.get_string("nonlinearity", "dealias", "two_thirds"));
    sim.dt = cfg.get_double("time", "dt", 1e-3);
    sim.t_end = cfg.get_double("time", "t_end", 0.1);
    sim.snapshot_stride = static_cast<int>(cfg.get_long("time", "snapshot_stride", 0));

    const CounterRng rng(cfg.seed());
    const Field phi = initial_data(cfg, sim.grid, rng);
    const Trajectory traj = evolve(phi, sim);

    diagnostics_csv(traj).write(ctx.path("simulate.csv"));
    write_snapshot(ctx.path("final.fnls"), traj.final_state, sim.t_end);
    for (const auto& s : traj.snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%06d.fnls", s.step);
        write_snapshot(ctx.path(name), s.field, s.t);
    }
    std::vector<std::tuple<std::string, double, double>> plot;
    for (const auto& d : traj.diagnostics) plot.emplace_back("mass", d.t, d.mass);
    emit_plotdata(plot, PlotKind::mass_vs_t, ctx.path("plot_mass_vs_t.csv"));

    json res;
    res["steps"] = traj.diagnostics.back().step;
    res["final_mass_drift_rel"] = traj.diagnostics.back().mass_drift_rel;
    if (sim.nu == 0.0) {
        Field lin = linear_propagate(phi, sim.t_end, spec);
        if (lin.repr == Representation::spectral) lin = inverse(lin);
        res["nu0_linear_distance"] = l2_distance(traj.final_state, lin);
    }
    ctx.write_summary("simulate", res);
    return 0;
}

int cmd_picard(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    SimulationConfig sim;
    sim.spec = get_spec(cfg);
    sim.grid = get_grid(cfg, 64, 16, 16.0 * std::numbers::pi);
    sim.nu = cfg.get_double("nonlinearity", "nu", 1.0);
    const TimeWindow window(cfg.get_double("time", "t0", -0.1), cfg.get_double("time", "t1", 0.1),
                            static_cast<int>(cfg.get_long("time", "nt", 33)));
    const int max_iter = static_cast<int>(cfg.get_long("probe", "max_iter", 20));
    const double tol = cfg.get_double("probe", "tol", 1e-10);

    const CounterRng rng(cfg.seed());
    const Field phi = initial_data(cfg, sim.grid, rng);
    const PicardResult pr = picard_iterate(phi, sim, window, max_iter, tol);

    CsvTable t;
    t.header = {"iteration", "distance"};
    for (size_t k = 0; k < pr.report.distances.size(); ++k)
        t.rows.push_back({std::to_string(k + 1), format_double(pr.report.distances[k])});
    t.write(ctx.path("picard.csv"));

    json res;
    res["phi_l2"] = pr.report.phi_l2;
    res["iterations"] = pr.report.iterations;
    res["converged"] = pr.report.converged;
    res["diverged"] = pr.report.diverged;
    res["contraction_factor"] = pr.report.contraction_factor;
    ctx.write_summary("picard", res);
    return ctx.assert_mode && pr.report.diverged ? 2 : 0;
}

struct TrendResult {
    std::vector<double> max_per_trunc;
    bool ok = false;
};

// "No growth trend": the last max ratio stays below 1.3x the median.
TrendResult trend_check(const std::vector<double>& maxima) {
    TrendResult t;
    t.max_per_trunc = maxima;
    t.ok = !maxima.empty() && maxima.back() <= 1.3 * median(maxima);
    return t;
}

int cmd_strichartz(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    GridPtr grid = get_grid(cfg, 256, 64, 16.0 * std::numbers::pi);
    const double delta = cfg.get_double("probe", "delta", 0.5);
    const TimeWindow window(-delta, delta, static_cast<int>(cfg.get_long("probe", "nt", 48)));
    const int members = static_cast<int>(cfg.get_long("probe", "members", 8));
    const std::string kind = cfg.get_string("probe", "kind", "mixed");
    const auto truncs = cfg.get_array("probe", "trunc", {16, 32, 64, 128});
    const CounterRng rng(cfg.seed());

    std::vector<ProbeReport> reports;
    std::vector<double> maxima;
    for (size_t ti = 0; ti < truncs.size(); ++ti) {
        const int trunc = static_cast<int>(truncs[ti]);
        std::vector<ProbeReport> batch(members);
        parallel_for(members, [&](size_t m) {
            std::string kind_used;
            const Field phi = ensemble_member(grid, kind, trunc,
                                              static_cast<int>(ti * 1000 + m), rng, kind_used);
            DataDesc desc;
            desc.kind = kind_used;
            desc.seed = rng.member(ti * 1000 + m).seed();
            char id[64];
            std::snprintf(id, sizeof(id), "strichartz-N%03d-m%02zu", trunc, m);
            desc.probe_id = id;
            batch[m] = strichartz_ratio(phi, window, spec, desc);
            batch[m].extras.emplace_back("trunc", trunc);
        });
        double mx = 0.0;
        for (auto& r : batch) {
            mx = std::max(mx, r.ratio);
            reports.push_back(std::move(r));
        }
        maxima.push_back(mx);
    }
    write_probe_reports(ctx, "strichartz", reports);

    const TrendResult trend = trend_check(maxima);
    json res;
    res["max_ratio_per_trunc"] = trend.max_per_trunc;
    res["trend_ok"] = trend.ok;
    res["outside_hypotheses"] = !within_hypotheses(spec);
    ctx.write_summary("strichartz", res);
    if (ctx.assert_mode && (!trend.ok || !within_hypotheses(spec))) return 2;
    return 0;
}

SpaceTimeField spacetime_gaussian(GridPtr grid, const TimeWindow& window, int trunc,
                                  const CounterRng& rng, const SymbolSpec& /*spec*/) {
    SpaceTimeField u = make_spacetime_field(grid, window, Representation::spectral);
    const Grid& g = *grid;
    const int nmax = std::min(trunc, g.ny / 2 - 1);
    uint64_t ctr = 0;
    size_t idx = 0;
    for (int m = 0; m < window.nt; ++m)
        for (int j = 0; j < g.nx; ++j) {
            const long jj = Grid::signed_index(j, g.nx);
            for (int q = 0; q < g.ny; ++q, ++idx, ++ctr) {
                if (std::labs(jj) > trunc || std::labs(g.nmode[q]) > nmax) continue;
                u.data[idx] = cdouble{rng.gaussian(2 * ctr), rng.gaussian(2 * ctr + 1)};
            }
        }
    const double n = st_l2_norm(u);
    for (auto& z : u.data) z /= n;
    return spacetime_inverse(u);
}

int cmd_inhomog(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    GridPtr grid = get_grid(cfg, 128, 32, 16.0 * std::numbers::pi);
    const double delta = cfg.get_double("probe", "delta", 0.5);
    const TimeWindow window(-delta, delta, static_cast<int>(cfg.get_long("probe", "nt", 48)));
    const int members = static_cast<int>(cfg.get_long("probe", "members", 6));
    const auto truncs = cfg.get_array("probe", "trunc", {8, 16, 32, 64});
    const CounterRng rng(cfg.seed());

    std::vector<ProbeReport> reports;
    std::vector<double> maxima;
    for (size_t ti = 0; ti < truncs.size(); ++ti) {
        const int trunc = static_cast<int>(truncs[ti]);
        std::vector<ProbeReport> batch(members);
        parallel_for(members, [&](size_t m) {
            const CounterRng mrng = rng.member(7000 + ti * 100 + m);
            const SpaceTimeField f = spacetime_gaussian(grid, window, trunc, mrng, spec);
            DataDesc desc;
            desc.kind = "st_gaussian";
            desc.seed = mrng.seed();
            char id[64];
            std::snprintf(id, sizeof(id), "inhomog-N%03d-m%02zu", trunc, m);
            desc.probe_id = id;
            batch[m] = inhomog_ratio(f, spec, desc);
            batch[m].extras.emplace_back("trunc", trunc);
        });
        double mx = 0.0;
        for (auto& r : batch) {
            mx = std::max(mx, r.ratio);
            reports.push_back(std::move(r));
        }
        maxima.push_back(mx);
    }
    write_probe_reports(ctx, "inhomog", reports);

    const TrendResult trend = trend_check(maxima);
    json res;
    res["max_ratio_per_trunc"] = trend.max_per_trunc;
    res["trend_ok"] = trend.ok;
    res["outside_hypotheses"] = !within_hypotheses(spec);
    ctx.write_summary("inhomog", res);
    if (ctx.assert_mode && (!trend.ok || !within_hypotheses(spec))) return 2;
    return 0;
}

int cmd_embedding(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    GridPtr grid = get_grid(cfg, 128, 32, 16.0 * std::numbers::pi);
    const double delta = cfg.get_double("probe", "delta", 0.5);
    const TimeWindow window(-2.0 * delta, 2.0 * delta,
                            static_cast<int>(cfg.get_long("probe", "nt", 64)));
    BourgainParams params;
    params.b = cfg.get_double("probe", "b", 0.55);
    params.s = cfg.get_double("probe", "s", 0.0);
    const int members = static_cast<int>(cfg.get_long("probe", "members", 6));
    const auto truncs = cfg.get_array("probe", "trunc", {8, 16, 32, 64});
    const CounterRng rng(cfg.seed());

    std::vector<ProbeReport> reports;
    std::vector<double> maxima;
    for (size_t ti = 0; ti < truncs.size(); ++ti) {
        const int trunc = static_cast<int>(truncs[ti]);
        std::vector<ProbeReport> batch(members);
        parallel_for(members, [&](size_t m) {
            const CounterRng mrng = rng.member(9000 + ti * 100 + m);
            SpaceTimeField u =
                m % 2 == 0 ? spacetime_gaussian(grid, window, trunc, mrng, spec)
                           : sample_cutoff_free_wave(
                                 gaussian_field(grid, trunc, std::min(trunc, grid->ny / 2 - 1),
                                                mrng),
                                 window, spec, delta);
            DataDesc desc;
            desc.kind = m % 2 == 0 ? "st_gaussian" : "cutoff_free_wave";
            desc.seed = mrng.seed();
            char id[64];
            std::snprintf(id, sizeof(id), "embedding-N%03d-m%02zu", trunc, m);
            desc.probe_id = id;
            batch[m] = embedding_ratio(u, params, spec, desc);
            batch[m].extras.emplace_back("trunc", trunc);
        });
        double mx = 0.0;
        for (auto& r : batch) {
            mx = std::max(mx, r.ratio);
            reports.push_back(std::move(r));
        }
        maxima.push_back(mx);
    }
    write_probe_reports(ctx, "embedding", reports);

    const TrendResult trend = trend_check(maxima);
    json res;
    res["max_ratio_per_trunc"] = trend.max_per_trunc;
    res["trend_ok"] = trend.ok;
    res["outside_hypotheses"] = !within_hypotheses(spec);
    ctx.write_summary("embedding", res);
    if (ctx.assert_mode && (!trend.ok || !within_hypotheses(spec))) return 2;
    return 0;
}

int cmd_bilinear(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    GridPtr grid = get_grid(cfg, 64, 32, 16.0 * std::numbers::pi);
    const double delta = cfg.get_double("probe", "delta", 8.0);
    const TimeWindow window(-delta, delta, static_cast<int>(cfg.get_long("probe", "nt", 64)));
    const int members = static_cast<int>(cfg.get_long("probe", "members", 8));
    const auto k1s = cfg.get_array("probe", "k1", {1, 2, 4, 8, 16, 32, 64});
    const auto k2s = cfg.get_array("probe", "k2", {1, 2, 4, 8, 16, 32, 64});
    const CounterRng rng(cfg.seed());

    // One pool of shell-localized members per distinct K; pairs are matched
    // by member index.
    std::vector<double> ks = k1s;
    ks.insert(ks.end(), k2s.begin(), k2s.end());
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::map<double, std::vector<SpaceTimeField>> pools;
    for (size_t ki = 0; ki < ks.size(); ++ki) {
        auto& pool = pools[ks[ki]];
        pool.resize(members, make_spacetime_field(grid, window));
        parallel_for(members, [&](size_t m) {
            pool[m] = shell_localized(grid, window, ks[ki],
                                      spec, rng.member(1000 * (ki + 1) + m));
        });
    }

    std::vector<ProbeReport> reports;
    double grid_max = 0.0;
    bool holder_ok = true;
    std::map<std::pair<double, double>, double> max_per_pair;
    for (double K1 : k1s)
        for (double K2 : k2s) {
            double mx = 0.0;
            for (int m = 0; m < members; ++m) {
                DataDesc desc;
                desc.kind = "shell_gaussian";
                desc.seed = cfg.seed();
                char id[64];
                std::snprintf(id, sizeof(id), "bilinear-K%g-K%g-m%02d", K1, K2, m);
                desc.probe_id = id;
                ProbeReport r =
                    bilinear_ratio(pools[K1][m], pools[K2][m], K1, K2, spec, desc);
                // Holder sanity: ||u1 u2||_2 <= ||u1||_4 ||u2||_4.
                const double h4 =
                    lp_spacetime_norm(pools[K1][m], 4.0) * lp_spacetime_norm(pools[K2][m], 4.0);
                if (r.numerator > h4 * (1.0 + 1e-12)) holder_ok = false;
                mx = std::max(mx, r.ratio);
                reports.push_back(std::move(r));
            }
            max_per_pair[{K1, K2}] = mx;
            grid_max = std::max(grid_max, mx);
        }
    write_probe_reports(ctx, "bilinear", reports);

    // Flat check: along each dyadic doubling of either K the max ratio must
    // not grow by more than factor 2.
    bool flat_ok = true;
    for (const auto& [kk, v] : max_per_pair) {
        const auto next1 = max_per_pair.find({kk.first * 2.0, kk.second});
        if (next1 != max_per_pair.end() && next1->second > 2.0 * v) flat_ok = false;
        const auto next2 = max_per_pair.find({kk.first, kk.second * 2.0});
        if (next2 != max_per_pair.end() && next2->second > 2.0 * v) flat_ok = false;
    }

    json res;
    json table = json::array();
    for (const auto& [kk, v] : max_per_pair)
        table.push_back({{"K1", kk.first}, {"K2", kk.second}, {"max_ratio", v}});
    res["max_per_pair"] = table;
    res["grid_max"] = grid_max;
    res["flat_ok"] = flat_ok;
    res["holder_ok"] = holder_ok;
    res["outside_hypotheses"] = !within_hypotheses(spec);
    ctx.write_summary("bilinear", res);
    if (ctx.assert_mode && (!flat_ok || !holder_ok || !within_hypotheses(spec))) return 2;
    return 0;
}

MeasureQuery scalar_query(const RunConfig& cfg, const SymbolSpec& spec) {
    MeasureQuery q;
    q.spec = spec;
    q.xi0 = cfg.get_double("scan", "xi0", 0.0);
    q.n0 = cfg.get_long("scan", "n0", 0);
    q.C = cfg.get_double("scan", "c", 1.0);
    q.K = cfg.get_double("scan", "k", 1.0);
    q.trunc_N = cfg.get_long("scan", "trunc_n", 100000);
    return q;
}

int cmd_measure(Ctx& ctx) {
    const SymbolSpec spec = get_spec(ctx.cfg);
    const MeasureQuery q = scalar_query(ctx.cfg, spec);
    const MeasureResult r = measure_set(q);

    ScanTable table;
    table.cells.push_back({q.n0, q.C, q.K, r.lower, r.upper, r.upper / q.K, r.divergent_tail});
    scan_csv(spec, q.xi0, q.trunc_N, table).write(ctx.path("measure.csv"));

    json res;
    res["lower"] = r.lower;
    res["upper"] = r.upper;
    res["ratio_upper_over_K"] = r.upper / q.K;
    res["divergent_tail"] = r.divergent_tail;
    ctx.write_summary("measure", res);
    if (ctx.assert_mode && (r.divergent_tail || !within_hypotheses(spec))) return 2;
    return 0;
}

int cmd_scan(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    const double xi0 = cfg.get_double("scan", "xi0", 0.0);
    std::vector<long> n0s;
    for (double v : cfg.get_array("scan", "n0", {0, 1, -1, 5, -5, 50, -50}))
        n0s.push_back(static_cast<long>(v));
    const std::vector<double> def_c = spec.sign == Sign::elliptic
                                          ? std::vector<double>{1, 10, 100}
                                          : std::vector<double>{0.1, 1, 10, 100};
    const auto cs = cfg.get_array("scan", "c", def_c);
    const auto ks = cfg.get_array("scan", "k", {1, 2, 4, 8, 16, 32, 64});
    const long trunc = cfg.get_long("scan", "trunc_n", 100000);

    const ScanTable table = ratio_scan(spec, n0s, cs, ks, trunc, xi0);
    scan_csv(spec, xi0, trunc, table).write(ctx.path("scan.csv"));

    std::vector<std::tuple<std::string, double, double>> pk, pc;
    for (const auto& c : table.cells) {
        // zero-padded labels so the lexical sort of emit_plotdata is numeric
        char label[64];
        std::snprintf(label, sizeof(label), "n0=%+04ld C=%08.2f", c.n0, c.C);
        pk.emplace_back(label, c.K, c.ratio);
        std::snprintf(label, sizeof(label), "n0=%+04ld K=%06.1f", c.n0, c.K);
        pc.emplace_back(label, c.C, c.ratio);
    }
    emit_plotdata(pk, PlotKind::ratio_vs_k, ctx.path("plot_ratio_vs_k.csv"));
    emit_plotdata(pc, PlotKind::ratio_vs_c, ctx.path("plot_ratio_vs_c.csv"));

    const bool flat = table.flat(1.5);
    json res;
    json sup = json::array();
    for (const auto& [k, v] : table.sup_per_k) sup.push_back({{"K", k}, {"sup_ratio", v}});
    res["sup_per_k"] = sup;
    res["flat_within_1_5"] = flat;
    res["any_divergent"] = table.any_divergent();
    res["outside_hypotheses"] = !within_hypotheses(spec);
    ctx.write_summary("scan", res);
    if (ctx.assert_mode && (!flat || !within_hypotheses(spec))) return 2;
    return 0;
}

int cmd_series(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    const std::string kind_s = cfg.get_string("probe", "kind", "s1-hyp");
    SeriesKind kind;
    if (kind_s == "s1-hyp")
        kind = SeriesKind::s1_plus_hyperbolic;
    else if (kind_s == "s1-elliptic")
        kind = SeriesKind::s1_tilde_elliptic;
    else
        throw std::invalid_argument("series: probe.kind must be s1-hyp|s1-elliptic, got '" +
                                    kind_s + "'");
    const double C = cfg.get_double("scan", "c", 1.0);
    const double K = cfg.get_double("scan", "k", 1.0);
    const long n_max = cfg.get_long("scan", "trunc_n", 1 << 17);

    CsvTable t;
    t.header = {"kind", "alpha", "C", "K", "N", "partial_sum"};
    std::vector<std::tuple<std::string, double, double>> plot;
    std::vector<double> lnN, val;
    for (long n = 1; n <= n_max; n *= 2) {
        const double s = series_partial(kind, spec.alpha, C, K, n);
        t.rows.push_back({kind_s, format_double(spec.alpha), format_double(C), format_double(K),
                          std::to_string(n), format_double(s)});
        plot.emplace_back(kind_s, static_cast<double>(n), s);
        lnN.push_back(std::log(static_cast<double>(n)));
        val.push_back(s);
    }
    t.write(ctx.path("series.csv"));
    emit_plotdata(plot, PlotKind::series_vs_n, ctx.path("plot_series_vs_n.csv"));

    // Least-squares slope of partial sum against ln N over the upper half of
    // the ladder (the divergence diagnostic for the hyperbolic series).
    const size_t h = lnN.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const size_t cnt = lnN.size() - h;
    for (size_t i = h; i < lnN.size(); ++i) {
        sx += lnN[i];
        sy += val[i];
        sxx += lnN[i] * lnN[i];
        sxy += lnN[i] * val[i];
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

    json res;
    res["fitted_log_slope"] = slope;
    res["slope_over_k"] = slope / K;
    res["final_partial"] = val.back();
    ctx.write_summary("series", res);
    return 0;
}

int cmd_proof_bounds(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const double alpha = cfg.get_double("symbol", "alpha", 2.0);
    const auto cs = cfg.get_array("scan", "c", {1, 4, 100});
    const auto ks = cfg.get_array("scan", "k", {1, 8, 64});

    CsvTable t;
    t.header = {"alpha", "C", "K", "J1", "J1_bound", "J2", "J2_bound", "pass"};
    bool all_pass = true;
    for (double C : cs)
        for (double K : ks) {
            const ProofBounds pb = proof_bounds(alpha, C, K);
            all_pass = all_pass && pb.pass;
            t.rows.push_back({format_double(alpha), format_double(C), format_double(K),
                              format_double(pb.j1), format_double(pb.j1_bound),
                              format_double(pb.j2), format_double(pb.j2_bound),
                              pb.pass ? "true" : "false"});
        }
    t.write(ctx.path("proof_bounds.csv"));

    json res;
    res["all_pass"] = all_pass;
    ctx.write_summary("proof-bounds", res);
    return ctx.assert_mode && !all_pass ? 2 : 0;
}

int cmd_scaling(Ctx& ctx) {
    const auto& cfg = ctx.cfg;
    const SymbolSpec spec = get_spec(cfg);
    const int nx = static_cast<int>(cfg.get_long("grid", "nx", 256));
    const int ny = static_cast<int>(cfg.get_long("grid", "ny", 256));
    const double lx = cfg.get_double("grid", "lx", 40.0);
    const double ly = cfg.get_double("grid", "ly", lx);
    GridPtr grid = make_planar_grid(nx, ny, lx, ly);
    const double sigma = cfg.get_double("data", "sigma", lx / 20.0);
    const auto lambdas = cfg.get_array("probe", "lambdas", {1, 2, 4, 8});

    Field phi = make_field(grid);
    for (int p = 0; p < nx; ++p)
        for (int q = 0; q < ny; ++q) {
            const double x = grid->x(p), y = grid->y(q);
            phi.at(p, q) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        }

    const double base = l2_norm(phi);
    const double predicted = 0.5 * (1.0 - 1.0 / spec.alpha);
    CsvTable t;
    t.header = {"lambda", "l2_norm", "ratio", "predicted_ratio"};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double lam : lambdas) {
        const Field u = rescale(phi, ScalingParams(lam, 0.0), spec);
        const double ratio = l2_norm(u) / base;
        t.rows.push_back({format_double(lam), format_double(l2_norm(u)), format_double(ratio),
                          format_double(std::pow(lam, predicted))});
        const double lx_ = std::log(lam), ly_ = std::log(ratio);
        sx += lx_;
        sy += ly_;
        sxx += lx_ * lx_;
        sxy += lx_ * ly_;
    }
    const double n = static_cast<double>(lambdas.size());
    const double fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    t.write(ctx.path("scaling.csv"));

    json res;
    res["fitted_exponent"] = fitted;
    res["predicted_exponent"] = predicted;
    res["critical_index"] = critical_index(spec.alpha);
    ctx.write_summary("scaling", res);
    if (ctx.assert_mode && std::abs(fitted - predicted) > 1e-3) return 2;
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"fnls: pseudospectral toolkit for the fractional cubic NLS on a cylinder"};
    app.require_subcommand(1);
    app.footer(
        "config keys (TOML) and defaults:\n"
        "  seed = 12345\n"
        "  [symbol] alpha = 1.0, sign = \"elliptic\"|\"hyperbolic\"\n"
        "  [grid] nx, ny (even, >= 4), lx, ly = 2*pi, planar = false\n"
        "         defaults per subcommand: simulate 64x32 lx=16pi, strichartz 256x64,\n"
        "         bilinear 64x32, embedding/inhomog 128x32, scaling 256x256 lx=ly=40\n"
        "  [time] dt = 1e-3, t_end = 0.1, snapshot_stride = 0, t0 = -0.1, t1 = 0.1, nt = 33\n"
        "  [nonlinearity] nu = 1.0 (focusing < 0), dealias = \"two_thirds\"|\"half\"|\"none\"\n"
        "  [data] kind = \"gaussian\"|\"plane_wave\"|\"file\", amplitude = 0.5,\n"
        "         jmax = nx/9, nmax = ny/9, j0 = 1, n0 = 1, sigma = lx/20, path\n"
        "  [probe] b = 0.55, s = 0, delta (0.5; bilinear 8), nt, kind = \"mixed\",\n"
        "          members, trunc = [16,32,64,128], k1/k2 = dyadic to 64,\n"
        "          lambdas = [1,2,4,8], max_iter = 20, tol = 1e-10\n"
        "  [scan] xi0 = 0, n0 = [0,+-1,+-5,+-50], c = [0.1,1,10,100] (elliptic from 1),\n"
        "         k = [1..64 dyadic], trunc_n = 100000\n"
        "outputs: <sub>.csv, <sub>_summary.json (resolved_config echo), probe mirrors\n"
        "<sub>_reports.json, plot_*.csv, snapshots *.fnls; exit 0 ok / 1 usage / 2 assert");

    std::string config_path, outdir = "fnls_out", global_seed;
    bool assert_mode = false;
    int threads = 0;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "TOML config file");
    app.add_option("--out", outdir, "output directory (default fnls_out)");
    app.add_flag("--assert", assert_mode,
                 "fail (exit 2) on hypothesis violations and flat-band failures");
    app.add_option("--threads", threads, "worker threads (default: FNLS_THREADS or hardware)");
    app.add_option("--seed", global_seed, "u64 ensemble seed (default 12345)");
    app.add_option("--set", sets, "override config values, e.g. --set symbol.alpha=2")
        ->take_all();

    // Frequently used overrides mirroring config keys.
    std::vector<std::pair<std::string, std::string>> overrides;
    const auto add_override = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                                  bool quoted, const std::string& help) {
        sub->add_option_function<std::string>(
            flag,
            [&overrides, key, quoted](const std::string& v) {
                overrides.emplace_back(key, quoted ? "\"" + v + "\"" : v);
            },
            help);
    };

    const char* names[] = {"simulate", "picard",  "strichartz", "bilinear",
                           "inhomog",  "embedding", "measure",  "scan",
                           "series",   "proof-bounds", "scaling"};
    const char* helps[] = {
        "split-step evolution with mass/L4 diagnostics",
        "Picard iteration of the integral equation with contraction report",
        "free-wave L4/L2 ratio probe over data ensembles",
        "shell-localized bilinear L2 ratio probe over the (K1,K2) grid",
        "Duhamel L4 / L^{4/3} ratio probe",
        "L4 / X^{b,0} embedding ratio probe (requires b > 1/2)",
        "section-measure enclosure for one query",
        "measure ratio scan over (n0, C, K)",
        "partial sums of the proof's majorant series",
        "quadrature check of the proof integrals J1, J2 against their bounds",
        "zoom-scaling norm law on a planar box"};
    std::map<std::string, CLI::App*> subs;
    for (size_t i = 0; i < std::size(names); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], helps[i]);
        sub->fallthrough();
        add_override(sub, "--alpha", "symbol.alpha", false, "dispersion exponent alpha > 0");
        add_override(sub, "--sign", "symbol.sign", true, "elliptic|hyperbolic");
        add_override(sub, "--seed", "seed", false, "u64 ensemble seed (default 12345)");
        add_override(sub, "--nx", "grid.nx", false, "line modes (even, >= 4)");
        add_override(sub, "--ny", "grid.ny", false, "torus modes (even, >= 4)");
        add_override(sub, "--lx", "grid.lx", false, "line box length");
        add_override(sub, "--nu", "nonlinearity.nu", false, "cubic coefficient nu");
        add_override(sub, "--dt", "time.dt", false, "time step");
        add_override(sub, "--t-end", "time.t_end", false, "final time");
        add_override(sub, "--n0", "scan.n0", false, "query n0");
        add_override(sub, "--c", "scan.c", false, "query C");
        add_override(sub, "--k", "scan.k", false, "query K");
        add_override(sub, "--trunc", "scan.trunc_n", false, "lattice cutoff");
        add_override(sub, "--b", "probe.b", false, "modulation weight exponent b");
        add_override(sub, "--delta", "probe.delta", false, "window half-width delta");
        add_override(sub, "--members", "probe.members", false, "ensemble members");
        add_override(sub, "--kind", "probe.kind", true, "data kind");
        subs[names[i]] = sub;
    }

    try {
        // CLI11 parses argv-style; reconstruct it.
        std::vector<const char*> argv;
        argv.push_back("fnls");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Ctx ctx;
        if (!config_path.empty()) ctx.cfg = RunConfig::from_file(config_path);
        if (!global_seed.empty()) ctx.cfg.override_value("seed", global_seed);
        for (const auto& s : sets) {
            const size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects section.key=value, got '" + s + "'");
            ctx.cfg.override_value(s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [key, value] : overrides) ctx.cfg.override_value(key, value);
        ctx.outdir = outdir;
        ctx.assert_mode = assert_mode;
        if (threads > 0) set_thread_count(threads);
        fs::create_directories(outdir);

        if (subs["simulate"]->parsed()) return cmd_simulate(ctx);
        if (subs["picard"]->parsed()) return cmd_picard(ctx);
        if (subs["strichartz"]->parsed()) return cmd_strichartz(ctx);
        if (subs["bilinear"]->parsed()) return cmd_bilinear(ctx);
        if (subs["inhomog"]->parsed()) return cmd_inhomog(ctx);
        if (subs["embedding"]->parsed()) return cmd_embedding(ctx);
        if (subs["measure"]->parsed()) return cmd_measure(ctx);
        if (subs["scan"]->parsed()) return cmd_scan(ctx);
        if (subs["series"]->parsed()) return cmd_series(ctx);
        if (subs["proof-bounds"]->parsed()) return cmd_proof_bounds(ctx);
        if (subs["scaling"]->parsed()) return cmd_scaling(ctx);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fnls: error: %s\n", e.what());
        return 1;
    }
}

} // namespace fnls
