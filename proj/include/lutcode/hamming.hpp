#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lutcode/code_result.hpp"
#include "lutcode/lut.hpp"

namespace lutcode {

/// Default parity-column count for p data columns: the least s with
/// 2^s >= p + s + 1 (single-error-correcting Hamming bound).
int delta(int p);

/// Decoder-matrix row count for c total columns: the least t with 2^t > c.
int t_rows(int c);

/// The canonical t x c decoder matrix for c = p + delta(p): columns are the
/// delta(p)-bit values 1..c with the non-powers of two first in increasing
/// order (data positions), then the powers of two in increasing order
/// (parity positions).
DecoderMatrix canonical_decoder_matrix(int p);

/// Extends `data` with delta(p) parity columns so every row has zero
/// syndrome against the canonical decoder matrix.
CodeResult baseline_code(const BinaryLut& data);

/// Result of syndrome decoding one stored row.
struct CorrectionOutcome {
  enum class Tag { NoError, Corrected, Uncorrectable };
  Tag tag = Tag::NoError;
  int position = 0;                    // 1-based flipped bit, set when Corrected
  std::vector<uint8_t> corrected_row;  // set when Corrected

  bool operator==(const CorrectionOutcome&) const = default;
};

/// Syndrome decode: zero syndrome reports NoError; a syndrome equal to
/// column j reports Corrected(j, row with bit j inverted); any other
/// syndrome is Uncorrectable. The match is unique when H is valid.
CorrectionOutcome correct(std::span<const uint8_t> row, const DecoderMatrix& h);

}  // namespace lutcode
