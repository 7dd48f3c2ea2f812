#include "fnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fnls {

Field make_field(GridPtr grid, Representation repr) {
    Field f;
    f.grid = std::move(grid);
    f.repr = repr;
    f.data.assign(static_cast<size_t>(f.grid->size()), cdouble{0.0, 0.0});
    return f;
}

double l2_norm(const Field& u) { return std::sqrt(mass(u)); }

double mass(const Field& u) {
    double s = 0.0;
    for (const auto& z : u.data) s += std::norm(z);
    const double w = u.repr == Representation::physical ? u.grid->cell() : u.grid->area();
    return s * w;
}

double l4_norm(const Field& u) {
    if (u.repr != Representation::physical)
        throw std::invalid_argument("l4_norm: physical representation required");
    double s = 0.0;
    for (const auto& z : u.data) {
        const double m2 = std::norm(z);
        s += m2 * m2;
    }
    return std::pow(s * u.grid->cell(), 0.25);
}

double linf_norm(const Field& u) {
    double m = 0.0;
    for (const auto& z : u.data) m = std::max(m, std::abs(z));
    return m;
}

Field conjugate(const Field& u) {
    Field v = u;
    for (auto& z : v.data) z = std::conj(z);
    return v;
}

double l2_distance(const Field& a, const Field& b) {
    if (a.grid->size() != b.grid->size() || a.repr != b.repr)
        throw std::invalid_argument("l2_distance: incompatible fields");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += std::norm(a.data[i] - b.data[i]);
    const double w = a.repr == Representation::physical ? a.grid->cell() : a.grid->area();
    return std::sqrt(s * w);
}

bool all_finite(const Field& u) {
    for (const auto& z : u.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace fnls
