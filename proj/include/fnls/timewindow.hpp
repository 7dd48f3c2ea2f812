#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fnls {

/// Uniformly sampled time interval [t0, t1].
///
/// Two sample conventions coexist: quadrature (Duhamel, Picard) uses the
/// closed lattice of nt points with both endpoints included; the space-time
/// transform treats the window as a time-torus and uses the half-open
/// lattice t0 + i*(t1-t0)/nt, i = 0..nt-1.
struct TimeWindow {
    double t0 = 0.0;
    double t1 = 0.0;
    int nt = 0;

    TimeWindow() = default;
    TimeWindow(double a, double b, int n) : t0(a), t1(b), nt(n) {
        if (!(b > a))
            throw std::invalid_argument("TimeWindow: need t1 > t0, got [" + std::to_string(a) +
                                        ", " + std::to_string(b) + "]");
        if (n < 1) throw std::invalid_argument("TimeWindow: nt must be positive");
    }

    double length() const { return t1 - t0; }
    double half_width() const { return 0.5 * length(); }

    double closed_dt() const { return length() / (nt - 1); }
    double closed_time(int i) const { return t0 + i * closed_dt(); }
    std::vector<double> closed_times() const {
        std::vector<double> t(nt);
        for (int i = 0; i < nt; ++i) t[i] = closed_time(i);
        return t;
    }

    double periodic_dt() const { return length() / nt; }
    double periodic_time(int i) const { return t0 + i * periodic_dt(); }

    bool contains(double t) const { return t >= t0 && t <= t1; }
};

} // namespace fnls
