#pragma once

#include <optional>
#include <vector>

#include "fnls/symbol.hpp"

namespace fnls {

/// Parameters of the section-measure sets:
///   hyperbolic: { (xi, n) : C <= |(xi-xi0)^2 - A_n| <= C+K },
///   elliptic:   { (xi, n) : C <= (xi-xi0)^2 + A_n    <= C+K },
/// with A_n = ((|n|^{2a} + |n-n0|^{2a}) / 2.  The measure is Lebesgue in xi
/// times counting in n.  K >= 1 always; the elliptic lemma further requires
/// C >= 1.
struct MeasureQuery {
    SymbolSpec spec;
    double xi0 = 0.0;
    long n0 = 0;
    double C = 1.0;
    double K = 1.0;
    long trunc_N = 1000; // lattice cutoff |n| <= trunc_N for the explicit sum

    void validate() const;
};

struct MeasureResult {
    double lower = 0.0; // explicit sum over |n| <= trunc_N
    double upper = 0.0; // lower + integral-comparison tail bound (inf when divergent)
    bool divergent_tail = false;
    std::optional<std::vector<std::pair<long, double>>> per_n;
};

/// Exact total xi-length of the section at fixed n (closed-form square
/// roots, clipped at xi^2 >= 0).  Independent of xi0 by translation.
double section_length(long n, const MeasureQuery& q);

/// Per-branch section lengths; the hyperbolic set splits into the + branch
/// (xi^2 > A_n) and the - branch (xi^2 <= A_n), which nest separately in K.
/// Elliptic sections are all "plus".
struct SectionParts {
    double plus = 0.0;
    double minus = 0.0;
};
SectionParts section_parts(long n, const MeasureQuery& q);

/// Enclosure [lower, upper] of the set's product measure.  The hyperbolic
/// tail bound needs alpha > 1; for alpha <= 1 the result carries
/// divergent_tail = true and an infinite upper bound.  Elliptic sections
/// vanish once A_n > C+K, so their tail is exactly zero (the sum is
/// extended internally past trunc_N if needed).
MeasureResult measure_set(const MeasureQuery& q, bool collect_per_n = false);

/// Truncated counting function h(l) = sum_{|n| <= N} 2 sqrt(A_n + l) of the
/// hyperbolic + branch; at matched truncation,
/// measure(+branch) = h(C+K) - h(C).  Compensated summation.
double h_partial(double level, long N, double alpha, long n0);

enum class SeriesKind { s1_plus_hyperbolic, s1_tilde_elliptic };

/// Partial sums of the proof's majorant series:
///   s1_plus_hyperbolic: sum_{n=1..N} K / sqrt(n^{2a} + C + K)   (diverges
///     logarithmically at alpha = 1),
///   s1_tilde_elliptic:  sum over 1 <= n <= min(N, ceil(C^{1/2a})-1) of
///     2K / sqrt(C - n^{2a}) (finite support).
double series_partial(SeriesKind kind, double alpha, double C, double K, long N);

struct ProofBounds {
    double j1 = 0.0;
    double j1_bound = 0.0;
    double j2 = 0.0;
    double j2_bound = 0.0;
    bool pass = false;
};

/// Quadrature values of the proof integrals
///   J1 = int_{C^{1/2a}}^{(C+K)^{1/2a}} sqrt(z^{2a} - C) dz,
///   J2 = int_{(C+K)^{1/2a}}^{inf}  K / sqrt(z^{2a} - C) dz,
/// against their analytic bounds: J1 <= K/alpha for C >= 1 (else
/// sqrt(K)(C+K)^{1/2a}) and J2 <= c(alpha) K with
/// c(a) = 2 + (2/sqrt(3)) 2^{(1-a)/a} a/(a-1).  Requires alpha > 1, C > 0,
/// K >= 1.
ProofBounds proof_bounds(double alpha, double C, double K);

struct ScanCell {
    long n0 = 0;
    double C = 0.0;
    double K = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double ratio = 0.0; // upper / K
    bool divergent = false;
};

struct ScanTable {
    std::vector<ScanCell> cells;            // ordered by (n0, C, K) input order
    std::vector<std::pair<double, double>> sup_per_k; // (K, sup ratio over cells)
    /// No-growth check: sup ratio never grows by more than `factor` from one
    /// dyadic K to the next (the sets only assert an upper bound, so decay
    /// is fine).
    bool flat(double factor) const;
    bool any_divergent() const;
};

ScanTable ratio_scan(const SymbolSpec& spec, const std::vector<long>& n0s,
                     const std::vector<double>& Cs, const std::vector<double>& Ks,
                     long trunc_N, double xi0 = 0.0);

} // namespace fnls
