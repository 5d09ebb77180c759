#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lutcode {

/// Cell value of a ternary lookup table.
enum class Trit : uint8_t { Zero = 0, One = 1, DontCare = 2 };

/// Error raised while reading a text format; `line` is 1-based.
struct ParseError : std::runtime_error {
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
  int line;
};

/// An l x p table over {0, 1, don't-care}.
///
/// Rows are kept in file order and duplicates are retained. `input_bits`
/// is set when the rows enumerate all input combinations (l = 2^input_bits);
/// it carries no per-row data of its own.
struct TernaryLut {
  int rows = 0;
  int outputs = 0;
  std::optional<int> input_bits;
  std::vector<Trit> cells;  // row-major, rows * outputs entries

  Trit at(int r, int c) const { return cells[static_cast<size_t>(r) * outputs + c]; }
  void set(int r, int c, Trit v) { cells[static_cast<size_t>(r) * outputs + c] = v; }

  int dc_count() const;
  /// Positions of don't-care cells in row-major order (0-based row, col).
  std::vector<std::pair<int, int>> dc_cells() const;

  bool operator==(const TernaryLut&) const = default;
};

/// A fully specified l x c bit grid (completed and possibly column-extended LUT).
struct BinaryLut {
  int rows = 0;
  int width = 0;
  std::vector<uint8_t> bits;  // row-major, values 0/1

  uint8_t at(int r, int c) const { return bits[static_cast<size_t>(r) * width + c]; }
  void set(int r, int c, uint8_t v) { bits[static_cast<size_t>(r) * width + c] = v; }
  std::vector<uint8_t> row(int r) const {
    auto first = bits.begin() + static_cast<size_t>(r) * width;
    return {first, first + width};
  }

  bool operator==(const BinaryLut&) const = default;
};

/// The t x c parity-check matrix. A stored row r is a codeword iff r * H^T = 0.
///
/// Valid instances have pairwise-distinct nonzero columns, which requires
/// 2^t - 1 >= c. Row 0 is the most significant bit of a column's value.
struct DecoderMatrix {
  int t = 0;
  int c = 0;
  std::vector<uint8_t> bits;  // row-major, t * c

  uint8_t at(int k, int j) const { return bits[static_cast<size_t>(k) * c + j]; }
  void set(int k, int j, uint8_t v) { bits[static_cast<size_t>(k) * c + j] = v; }

  /// Column j packed as an integer, row 0 = MSB.
  uint32_t column_value(int j) const;

  /// Empty when all invariants hold, else a description of the violation.
  std::optional<std::string> invariant_violation() const;
};

using Syndrome = std::vector<uint8_t>;  // length t

/// Parses the line-oriented truth-table text format:
///   `.i <n>` (optional), `.o <p>` (required), body lines, `.e`.
/// Body lines are `<inputbits> <outputbits>` when `.i` is present and
/// `<outputbits>` otherwise; output symbols are 0, 1, and -/X/x for
/// don't-care. `#` starts a comment. Throws ParseError.
TernaryLut parse_truth_table(std::istream& in);
TernaryLut parse_truth_table(const std::string& text);

/// Inverse of parse_truth_table; don't-cares are written as '-'.
std::string serialize_truth_table(const TernaryLut& lut);

/// Substitutes `assignment` into the don't-care cells (row-major order).
/// Fixed cells are copied unchanged. Throws std::invalid_argument when the
/// assignment length differs from the number of don't-care cells.
BinaryLut complete(const TernaryLut& lut, std::span<const uint8_t> assignment);

/// GF(2) product row * H^T: bit k of the result is the XOR over j of
/// row[j] AND H[k][j]. Throws std::invalid_argument on width mismatch.
Syndrome gf2_row_times_ht(std::span<const uint8_t> row, const DecoderMatrix& h);

/// Returns `row` with the listed positions inverted. Positions are 1-based
/// with position 1 the leftmost bit; out-of-range positions throw.
std::vector<uint8_t> flip_bits(std::span<const uint8_t> row, std::span<const int> positions);

}  // namespace lutcode
