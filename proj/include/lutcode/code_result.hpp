#pragma once

#include <cstdint>
#include <vector>

#include "lutcode/lut.hpp"

namespace lutcode {

/// A completed, possibly column-extended LUT together with its decoder
/// matrix and the number of redundant columns that were added.
///
/// Invariants: every row of `coded` multiplied by H^T is zero; `coded`
/// agrees with `source` on fixed cells and its first p columns equal
/// complete(source, dc_assignment); 0 <= k <= delta(p); H.t = t_rows(p + k).
struct CodeResult {
  TernaryLut source;
  int k = 0;                           // redundant (extra) column count
  BinaryLut coded;                     // l x (p + k)
  DecoderMatrix H;                     // t x (p + k)
  std::vector<uint8_t> dc_assignment;  // row-major over source's DC cells
};

}  // namespace lutcode
