#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fnls {

namespace {

void check_sizes(int nx, int ny, double lx, double ly) {
    if (nx < 4 || nx % 2 != 0)
        throw std::invalid_argument("grid: nx must be even and >= 4, got " + std::to_string(nx));
    if (ny < 4 || ny % 2 != 0)
        throw std::invalid_argument("grid: ny must be even and >= 4, got " + std::to_string(ny));
    if (!(lx > 0.0))
        throw std::invalid_argument("grid: lx must be positive, got " + std::to_string(lx));
    if (!(ly > 0.0))
        throw std::invalid_argument("grid: ly must be positive, got " + std::to_string(ly));
}

GridPtr build(int nx, int ny, double lx, double ly, bool planar) {
    check_sizes(nx, ny, lx, ly);
    auto g = std::make_shared<Grid>();
    g->nx = nx;
    g->ny = ny;
    g->lx = lx;
    g->ly = ly;
    g->planar = planar;
    g->xi.resize(nx);
    g->yfreq.resize(ny);
    g->nmode.resize(ny);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < nx; ++j)
        g->xi[j] = two_pi * static_cast<double>(Grid::signed_index(j, nx)) / lx;
    for (int q = 0; q < ny; ++q) {
        g->nmode[q] = Grid::signed_index(q, ny);
        g->yfreq[q] = two_pi * static_cast<double>(g->nmode[q]) / ly;
    }
    return g;
}

} // namespace

GridPtr make_grid(int nx, int ny, double lx) {
    return build(nx, ny, lx, 2.0 * std::numbers::pi, false);
}

GridPtr make_planar_grid(int nx, int ny, double lx, double ly) {
    return build(nx, ny, lx, ly, true);
}

} // namespace fnls
