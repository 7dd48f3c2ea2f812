#include "fnls/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "fnls/parallel.hpp"
#include "fnls/quadrature.hpp"

namespace fnls {

namespace {

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

inline double half_power_sum(long n, long n0, double two_alpha) {
    const double a = std::pow(std::abs(static_cast<double>(n)), two_alpha);
    const double b = std::pow(std::abs(static_cast<double>(n - n0)), two_alpha);
    return 0.5 * (a + b);
}

// Stable interval length 2(sqrt(hi) - sqrt(lo)) for 0 <= lo <= hi.
inline double root_gap(double lo, double hi) {
    if (hi <= 0.0) return 0.0;
    lo = std::max(0.0, lo);
    return 2.0 * (hi - lo) / (std::sqrt(hi) + std::sqrt(lo));
}

// The upper endpoint is composed as A + (C+K) so the counting-function
// identity m(plus) = h(C+K) - h(C) holds to roundoff term by term.
double plus_branch(double A, double C, double K) { return root_gap(A + C, A + (C + K)); }

double minus_branch(double A, double C, double K) { return root_gap(A - C - K, A - C); }

double elliptic_section(double A, double C, double K) { return root_gap(C - A, C + K - A); }

} // namespace

void MeasureQuery::validate() const {
    if (!(C > 0.0))
        throw std::invalid_argument("MeasureQuery: C must be positive, got " + std::to_string(C));
    if (!(K >= 1.0))
        throw std::invalid_argument("MeasureQuery: K must be >= 1, got " + std::to_string(K));
    if (spec.sign == Sign::elliptic && !(C >= 1.0))
        throw std::invalid_argument("MeasureQuery: the elliptic set requires C >= 1, got " +
                                    std::to_string(C));
    if (trunc_N < 0) throw std::invalid_argument("MeasureQuery: trunc_N must be >= 0");
}

double section_length(long n, const MeasureQuery& q) {
    const double A = half_power_sum(n, q.n0, 2.0 * q.spec.alpha);
    if (q.spec.sign == Sign::elliptic) return elliptic_section(A, q.C, q.K);
    return plus_branch(A, q.C, q.K) + minus_branch(A, q.C, q.K);
}

SectionParts section_parts(long n, const MeasureQuery& q) {
    const double A = half_power_sum(n, q.n0, 2.0 * q.spec.alpha);
    if (q.spec.sign == Sign::elliptic) return {elliptic_section(A, q.C, q.K), 0.0};
    return {plus_branch(A, q.C, q.K), minus_branch(A, q.C, q.K)};
}

MeasureResult measure_set(const MeasureQuery& q, bool collect_per_n) {
    q.validate();
    const double two_alpha = 2.0 * q.spec.alpha;

    MeasureResult res;
    if (collect_per_n) res.per_n.emplace();

    Kahan lower;
    for (long n = -q.trunc_N; n <= q.trunc_N; ++n) {
        const double len = section_length(n, q);
        lower.add(len);
        if (collect_per_n && len > 0.0) res.per_n->emplace_back(n, len);
    }
    res.lower = lower.s;

    if (q.spec.sign == Sign::elliptic) {
        // Sections vanish once A_n > C + K; extend the explicit sum past the
        // requested cutoff if it stopped short, the true tail being zero.
        const long n_cut =
            static_cast<long>(std::ceil(std::pow(2.0 * (q.C + q.K), 1.0 / two_alpha))) + 1;
        Kahan extra;
        for (long m = q.trunc_N + 1; m <= n_cut; ++m) {
            extra.add(section_length(m, q));
            extra.add(section_length(-m, q));
        }
        res.upper = res.lower + extra.s;
        return res;
    }

    if (q.spec.alpha <= 1.0) {
        res.divergent_tail = true;
        res.upper = std::numeric_limits<double>::infinity();
        return res;
    }

    // Hyperbolic, alpha > 1.  Beyond M with A_m >= 2(C+K) both branches obey
    //   len_+ <= sqrt(2) K m^{-a},  len_- <= 2 K m^{-a},
    // so the two-sided tail is bounded by 2(sqrt(2)+2) K sum_{m>M} m^{-a}
    // <= 2(sqrt(2)+2) K M^{1-a}/(a-1).
    const long m_safe =
        static_cast<long>(std::ceil(std::pow(4.0 * (q.C + q.K), 1.0 / two_alpha))) + 1;
    const long M = std::max(q.trunc_N, m_safe);
    Kahan extra;
    for (long m = q.trunc_N + 1; m <= M; ++m) {
        extra.add(section_length(m, q));
        extra.add(section_length(-m, q));
    }
    const double tail = 2.0 * (std::sqrt(2.0) + 2.0) * q.K *
                        std::pow(static_cast<double>(M), 1.0 - q.spec.alpha) /
                        (q.spec.alpha - 1.0);
    res.upper = res.lower + extra.s + tail;
    return res;
}

double h_partial(double level, long N, double alpha, long n0) {
    if (level < 0.0) throw std::invalid_argument("h_partial: level must be >= 0");
    // Extended precision: h is consumed as a difference of two large sums,
    // so its own rounding must stay far below the difference.
    long double sum = 0.0L;
    for (long n = -N; n <= N; ++n)
        sum += 2.0L * std::sqrt(static_cast<long double>(half_power_sum(n, n0, 2.0 * alpha)) +
                                static_cast<long double>(level));
    return static_cast<double>(sum);
}

double series_partial(SeriesKind kind, double alpha, double C, double K, long N) {
    if (N < 1) throw std::invalid_argument("series_partial: N must be >= 1");
    const double two_alpha = 2.0 * alpha;
    Kahan sum;
    if (kind == SeriesKind::s1_plus_hyperbolic) {
        for (long n = 1; n <= N; ++n)
            sum.add(K / std::sqrt(std::pow(static_cast<double>(n), two_alpha) + C + K));
        return sum.s;
    }
    for (long n = 1; n <= N; ++n) {
        const double p = std::pow(static_cast<double>(n), two_alpha);
        if (p >= C) break; // finite support of the elliptic majorant
        sum.add(2.0 * K / std::sqrt(C - p));
    }
    return sum.s;
}

ProofBounds proof_bounds(double alpha, double C, double K) {
    if (!(alpha > 1.0)) throw std::invalid_argument("proof_bounds: alpha must be > 1");
    if (!(C > 0.0)) throw std::invalid_argument("proof_bounds: C must be positive");
    if (!(K >= 1.0)) throw std::invalid_argument("proof_bounds: K must be >= 1");

    const double inv2a = 1.0 / (2.0 * alpha);
    const double a = std::pow(C, inv2a);
    const double b = std::pow(C + K, inv2a);

    ProofBounds out;
    out.j1 = tanh_sinh(
        [&](double z) { return std::sqrt(std::max(0.0, std::pow(z, 2.0 * alpha) - C)); }, a, b);
    out.j1_bound = C >= 1.0 ? K / alpha : std::sqrt(K) * b;

    // J2 after u = 1/z: K * int_0^{1/b} u^{a-2} / sqrt(1 - C u^{2a}) du;
    // the u -> 0 endpoint singularity (1 < a < 2) is integrable and within
    // tanh-sinh's reach.
    out.j2 = K * tanh_sinh(
                     [&](double u) {
                         const double den = 1.0 - C * std::pow(u, 2.0 * alpha);
                         if (den <= 0.0) return 0.0;
                         return std::pow(u, alpha - 2.0) / std::sqrt(den);
                     },
                     0.0, 1.0 / b);
    const double c_alpha =
        2.0 + (2.0 / std::sqrt(3.0)) * std::pow(2.0, (1.0 - alpha) / alpha) * alpha /
                  (alpha - 1.0);
    out.j2_bound = c_alpha * K;

    const double slack = 1e-9;
    out.pass = out.j1 <= out.j1_bound * (1.0 + slack) + 1e-12 &&
               out.j2 <= out.j2_bound * (1.0 + slack) + 1e-12;
    return out;
}

bool ScanTable::flat(double factor) const {
    for (size_t i = 1; i < sup_per_k.size(); ++i) {
        const double prev = sup_per_k[i - 1].second;
        const double cur = sup_per_k[i].second;
        if (!std::isfinite(prev) || !std::isfinite(cur)) return false;
        if (cur > factor * prev) return false;
    }
    return !sup_per_k.empty();
}

bool ScanTable::any_divergent() const {
    for (const auto& c : cells)
        if (c.divergent) return true;
    return false;
}

ScanTable ratio_scan(const SymbolSpec& spec, const std::vector<long>& n0s,
                     const std::vector<double>& Cs, const std::vector<double>& Ks, long trunc_N,
                     double xi0) {
    ScanTable table;
    table.cells.resize(n0s.size() * Cs.size() * Ks.size());
    parallel_for(table.cells.size(), [&](size_t idx) {
        const size_t ik = idx % Ks.size();
        const size_t ic = (idx / Ks.size()) % Cs.size();
        const size_t in = idx / (Ks.size() * Cs.size());
        MeasureQuery q;
        q.spec = spec;
        q.xi0 = xi0;
        q.n0 = n0s[in];
        q.C = Cs[ic];
        q.K = Ks[ik];
        q.trunc_N = trunc_N;
        const MeasureResult r = measure_set(q);
        table.cells[idx] = {q.n0, q.C, q.K, r.lower, r.upper, r.upper / q.K, r.divergent_tail};
    });

    std::vector<double> ks_sorted = Ks;
    std::sort(ks_sorted.begin(), ks_sorted.end());
    for (double k : ks_sorted) {
        double sup = 0.0;
        for (const auto& c : table.cells)
            if (c.K == k) sup = std::max(sup, c.ratio);
        table.sup_per_k.emplace_back(k, sup);
    }
    return table;
}

} // namespace fnls
