#pragma once

#include <array>
#include <complex>
#include <vector>

namespace volkov::fft {

enum class Direction { forward, backward };

/// Unnormalized multidimensional DFT applied to `components` interleaved
/// complex fields (node-major, component-minor layout), in place.
///
/// forward:  X_k = sum_j x_j e^{-2 pi i j k / n}
/// backward: x_j = sum_k X_k e^{+2 pi i j k / n}
///
/// `shape` lists the active extents, slowest varying first. Backed by FFTW
/// with estimate-mode plans; plans are cached and planning is serialized.
void transform(std::vector<std::complex<double>>& data, const std::vector<int>& shape, int components,
               Direction dir);

}  // namespace volkov::fft
