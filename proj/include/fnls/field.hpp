#pragma once

#include <complex>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using cdouble = std::complex<double>;

enum class Representation { physical, spectral };

/// Complex double-precision field on a Grid, in physical or spectral
/// representation.  Row-major storage with the y/n index contiguous:
/// data[ix*ny + iy].
///
/// Normalization: the forward transform carries the 1/(nx*ny) factor, so a
/// constant field c has spectral coefficient c at the zero mode and the
/// discrete Plancherel identity reads
///   ||u||_2^2 = sum |u|^2 dx dy = (lx*ly) * sum |u_hat|^2.
struct Field {
    GridPtr grid;
    Representation repr = Representation::physical;
    std::vector<cdouble> data;

    cdouble& at(int ix, int iy) { return data[static_cast<size_t>(ix) * grid->ny + iy]; }
    const cdouble& at(int ix, int iy) const {
        return data[static_cast<size_t>(ix) * grid->ny + iy];
    }
};

Field make_field(GridPtr grid, Representation repr = Representation::physical);

/// Discrete L2 norm; physical fields use the cell measure dx*dy, spectral
/// fields the Plancherel-matching weight lx*ly.
double l2_norm(const Field& u);

/// M[u] = integral of |u|^2 over the box (the squared L2 norm).
double mass(const Field& u);

/// L4 norm in space; physical representation required.
double l4_norm(const Field& u);

double linf_norm(const Field& u);

/// Pointwise conjugate (same representation).
Field conjugate(const Field& u);

double l2_distance(const Field& a, const Field& b);

bool all_finite(const Field& u);

} // namespace fnls
