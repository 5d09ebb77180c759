#pragma once

#include <istream>
#include <optional>
#include <string>

#include "lutcode/code_result.hpp"

namespace lutcode {

/// On-disk form of a CodeResult: `.p` and `.k` headers, the coded table in
/// the truth-table format (`.o` is the total width p + k), then one `.h`
/// line per decoder-matrix row.
///
///   .p 3
///   .k 2
///   .i 2
///   .o 5
///   00 00111
///   ...
///   .e
///   .h 10010
///   .h 01101
///   .h 11100
struct StoredCode {
  int p = 0;
  int k = 0;
  std::optional<int> input_bits;
  BinaryLut coded;
  DecoderMatrix H;
};

std::string write_code_result(const CodeResult& result);

/// Parses and shape-checks a stored code (widths consistent, .o = .p + .k,
/// t = t_rows(c)). Column invariants and syndromes are left to verification.
StoredCode read_code_result(std::istream& in);
StoredCode read_code_result(const std::string& text);

/// Checks a stored code the way verify_code checks a CodeResult, limited to
/// what the file carries: decoder-matrix invariants, all-zero syndromes,
/// and exhaustive single-bit-flip recovery. When `source` is given, also
/// checks fixed-cell agreement and recovers the don't-care assignment.
struct StoredCodeReport {
  std::vector<std::pair<std::string, bool>> checks;
  std::string detail;
  bool all_passed() const;
};
StoredCodeReport verify_stored_code(const StoredCode& stored,
                                    const std::optional<TernaryLut>& source = std::nullopt);

}  // namespace lutcode
