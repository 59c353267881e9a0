#pragma once

#include <span>
#include <vector>

#include "peskin/vec2.hpp"

namespace peskin::fft {

/// Unnormalized forward DFT: out[k] = sum_j in[j] exp(-2 pi i j k / n).
std::vector<cplx> forward(std::span<const cplx> in);

/// Unnormalized backward DFT: out[j] = sum_k in[k] exp(+2 pi i j k / n).
std::vector<cplx> backward(std::span<const cplx> in);

}  // namespace peskin::fft
