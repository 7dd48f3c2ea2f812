#pragma once

#include <memory>
#include <vector>

namespace fnls {

/// Discretized cylinder: a truncated line of length lx (periodic box
/// [-lx/2, lx/2)) times a torus of period ly (2*pi by default).  In planar
/// mode the second direction is a centered truncated line as well, with
/// frequencies (2*pi/ly)*Z instead of the integers.
///
/// Immutable after construction; share via GridPtr.
struct Grid {
    int nx = 0;          // modes on the line direction, even, >= 4
    int ny = 0;          // modes on the torus direction, even, >= 4
    double lx = 0.0;     // line box length
    double ly = 0.0;     // torus period (2*pi) or planar box length
    bool planar = false; // second direction centered line instead of torus

    std::vector<double> xi;    // line frequency by storage index, 2*pi*j/lx
    std::vector<double> yfreq; // transverse frequency by storage index
    std::vector<long> nmode;   // signed transverse integer index

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    double cell() const { return dx() * dy(); }
    double area() const { return lx * ly; }
    long size() const { return static_cast<long>(nx) * ny; }

    double x(int p) const { return -0.5 * lx + p * dx(); }
    double y(int q) const { return (planar ? -0.5 * ly : 0.0) + q * dy(); }

    /// Map a storage index in [0, n) to the signed mode in [-n/2, n/2).
    static long signed_index(int i, int n) { return i < n / 2 ? i : i - n; }

    /// Storage index of a signed mode; caller guarantees -n/2 <= m < n/2.
    static int storage_index(long m, int n) {
        return static_cast<int>(m >= 0 ? m : m + n);
    }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Cylinder grid: torus period fixed at 2*pi.
GridPtr make_grid(int nx, int ny, double lx);

/// Planar-box grid for the scaling studies: both directions truncated
/// centered lines.
GridPtr make_planar_grid(int nx, int ny, double lx, double ly);

} // namespace fnls
