#pragma once

#include <vector>

#include "fnls/fft.hpp"
#include "fnls/field.hpp"
#include "fnls/symbol.hpp"
#include "fnls/timewindow.hpp"

namespace fnls {

/// Table of omega(xi_j, n) over the grid, storage order.
std::vector<double> omega_table(const Grid& grid, const SymbolSpec& spec);

/// Phase multiplier table e^{-i t omega} over the grid.
std::vector<cdouble> phase_table(const Grid& grid, const SymbolSpec& spec, double t);

/// Linear group: multiply each coefficient by e^{-i t (xi^2 +- |n|^{2a})}.
/// Representation-preserving; t = 0 is the exact identity.
Field linear_propagate(const Field& phi, double t, const SymbolSpec& spec);

enum class QuadRule { trapezoid, simpson };

/// Retarded integral int_0^t U(t-s) f(s) ds by composite quadrature.
/// f holds the forcing sampled on the window's closed lattice (size nt);
/// both 0 and t must lie on that lattice.  Output representation matches the
/// samples'.
Field duhamel(const std::vector<Field>& f, const TimeWindow& window, double t,
              const SymbolSpec& spec, QuadRule rule = QuadRule::trapezoid);

/// Duhamel evaluated at every closed-lattice sample in one sweep
/// (cumulative trapezoid; identical rule to duhamel's default).
std::vector<Field> duhamel_all_samples(const std::vector<Field>& f, const TimeWindow& window,
                                       const SymbolSpec& spec);

} // namespace fnls
