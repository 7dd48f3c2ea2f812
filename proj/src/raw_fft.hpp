#pragma once

#include <complex>
#include <vector>

namespace fnls::detail {

/// Unnormalized c2c DFT over up to three dimensions (row-major, last dim
/// contiguous).  sign = -1 is the forward exponent e^{-i...}, +1 backward.
/// Out-of-place; input is preserved.  Thread-safe; plans are cached.
void raw_dft(const std::vector<int>& dims, const std::complex<double>* in,
             std::complex<double>* out, int sign);

} // namespace fnls::detail
