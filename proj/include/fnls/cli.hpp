#pragma once

#include <string>
#include <vector>

namespace fnls {

/// Batch front door.  Subcommands: simulate, picard, strichartz, bilinear,
/// inhomog, embedding, measure, scan, series, proof-bounds, scaling.
/// Returns 0 on success, 2 on assertion-mode failure, 1 on usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace fnls
