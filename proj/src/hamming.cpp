#include "lutcode/hamming.hpp"

#include <stdexcept>

namespace lutcode {

int delta(int p) {
  if (p < 1) throw std::invalid_argument("delta requires p >= 1");
  int s = 1;
  while ((1LL << s) < p + s + 1) ++s;
  return s;
}

int t_rows(int c) {
  if (c < 1) throw std::invalid_argument("t_rows requires c >= 1");
  int t = 1;
  while ((1LL << t) <= c) ++t;
  return t;
}

namespace {
bool is_power_of_two(int v) { return (v & (v - 1)) == 0; }
}  // namespace

DecoderMatrix canonical_decoder_matrix(int p) {
  int s = delta(p);
  int c = p + s;
  std::vector<int> values;
  values.reserve(c);
  for (int v = 1; v <= c; ++v)
    if (!is_power_of_two(v)) values.push_back(v);
  for (int v = 1; v <= c; ++v)
    if (is_power_of_two(v)) values.push_back(v);

  DecoderMatrix h;
  h.t = s;
  h.c = c;
  h.bits.resize(static_cast<size_t>(s) * c);
  for (int j = 0; j < c; ++j)
    for (int k = 0; k < s; ++k) h.set(k, j, (values[j] >> (s - 1 - k)) & 1);
  return h;
}

CodeResult baseline_code(const BinaryLut& data) {
  if (data.width < 1 || data.rows < 1)
    throw std::invalid_argument("baseline_code requires a non-empty table");
  int p = data.width;
  int s = delta(p);
  DecoderMatrix h = canonical_decoder_matrix(p);

  // Each parity column is a power of two, so it has a single 1; the parity
  // bit in that column must equal the data syndrome bit of its row.
  std::vector<int> parity_col_for_row(s);
  for (int j = p; j < h.c; ++j) {
    for (int k = 0; k < s; ++k)
      if (h.at(k, j)) parity_col_for_row[k] = j;
  }

  BinaryLut coded;
  coded.rows = data.rows;
  coded.width = h.c;
  coded.bits.resize(static_cast<size_t>(coded.rows) * coded.width);
  for (int r = 0; r < data.rows; ++r) {
    std::vector<uint8_t> syn(s, 0);
    for (int j = 0; j < p; ++j) {
      uint8_t bit = data.at(r, j);
      coded.set(r, j, bit);
      if (!bit) continue;
      for (int k = 0; k < s; ++k) syn[k] ^= h.at(k, j);
    }
    for (int k = 0; k < s; ++k) coded.set(r, parity_col_for_row[k], syn[k]);
  }

  CodeResult result;
  result.source.rows = data.rows;
  result.source.outputs = data.width;
  result.source.cells.reserve(data.bits.size());
  for (uint8_t b : data.bits) result.source.cells.push_back(b ? Trit::One : Trit::Zero);
  result.k = s;
  result.coded = std::move(coded);
  result.H = std::move(h);
  return result;
}

CorrectionOutcome correct(std::span<const uint8_t> row, const DecoderMatrix& h) {
  Syndrome syn = gf2_row_times_ht(row, h);
  bool zero = true;
  for (uint8_t b : syn) zero = zero && !b;
  CorrectionOutcome out;
  if (zero) {
    out.tag = CorrectionOutcome::Tag::NoError;
    return out;
  }
  for (int j = 0; j < h.c; ++j) {
    bool match = true;
    for (int k = 0; k < h.t && match; ++k) match = h.at(k, j) == syn[k];
    if (match) {
      out.tag = CorrectionOutcome::Tag::Corrected;
      out.position = j + 1;
      out.corrected_row.assign(row.begin(), row.end());
      out.corrected_row[j] ^= 1;
      return out;
    }
  }
  out.tag = CorrectionOutcome::Tag::Uncorrectable;
  return out;
}

}  // namespace lutcode
