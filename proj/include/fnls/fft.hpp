#pragma once

#include "fnls/field.hpp"

namespace fnls {

/// Forward transform of a physical field.  Coefficient convention:
///   u_hat(j, n) = (1/(nx*ny)) * sum_{p,q} u(x_p, y_q) e^{-i(xi_j x_p + eta_n y_q)}
/// so an on-grid plane wave e^{i(xi0 x + n0 y)} maps to a single unit
/// coefficient.  Throws on representation mismatch.
Field forward(const Field& u);

/// Inverse transform of a spectral field; inverse(forward(u)) == u up to
/// roundoff.
Field inverse(const Field& uhat);

enum class DealiasRule { none, two_thirds, half };

const char* to_string(DealiasRule r);
DealiasRule dealias_rule_from_string(const std::string& s);

/// Zero all coefficients with |j| > rule*nx/2 or |n| > rule*ny/2.
/// Idempotent; spectral representation required.
Field dealias(const Field& uhat, DealiasRule rule);

bool dealias_keeps(int mode_abs, int n_modes, DealiasRule rule);

} // namespace fnls
