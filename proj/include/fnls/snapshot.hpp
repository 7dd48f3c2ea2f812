#pragma once

#include <string>

#include "fnls/field.hpp"

namespace fnls {

/// Field snapshot file, little-endian binary:
///   magic "FNLS", version u32 = 1, nx u32, ny u32, lx f64, time f64,
///   representation u8 (0 physical / 1 spectral), nx*ny (re, im) f64 pairs
///   in storage order.
/// Round trips bit-exactly.
void write_snapshot(const std::string& path, const Field& u, double time);

struct Snapshot {
    Field field;
    double time = 0.0;
};

Snapshot read_snapshot(const std::string& path);

} // namespace fnls
