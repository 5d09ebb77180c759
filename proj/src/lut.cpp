#include "lutcode/lut.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lutcode {

int TernaryLut::dc_count() const {
  return static_cast<int>(std::count(cells.begin(), cells.end(), Trit::DontCare));
}

std::vector<std::pair<int, int>> TernaryLut::dc_cells() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < outputs; ++c)
      if (at(r, c) == Trit::DontCare) out.emplace_back(r, c);
  return out;
}

uint32_t DecoderMatrix::column_value(int j) const {
  uint32_t v = 0;
  for (int k = 0; k < t; ++k) v = (v << 1) | at(k, j);
  return v;
}

std::optional<std::string> DecoderMatrix::invariant_violation() const {
  if (t < 1 || c < 1) return "decoder matrix has empty shape";
  if (bits.size() != static_cast<size_t>(t) * c) return "decoder matrix bit grid has wrong size";
  if (t < 31 && ((1u << t) - 1) < static_cast<uint32_t>(c))
    return "fewer than c distinct nonzero t-bit columns exist";
  std::vector<uint32_t> vals(c);
  for (int j = 0; j < c; ++j) {
    vals[j] = column_value(j);
    if (vals[j] == 0) return "column " + std::to_string(j + 1) + " is zero";
  }
  for (int j1 = 0; j1 < c; ++j1)
    for (int j2 = j1 + 1; j2 < c; ++j2)
      if (vals[j1] == vals[j2])
        return "columns " + std::to_string(j1 + 1) + " and " + std::to_string(j2 + 1) +
               " are identical";
  return std::nullopt;
}

namespace {

// Strips a trailing comment and surrounding whitespace.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  auto is_space = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  return s.substr(b);
}

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> fields;
  std::istringstream iss(s);
  std::string f;
  while (iss >> f) fields.push_back(f);
  return fields;
}

bool is_binary(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

int parse_header_count(const std::string& field, int line, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(field, &pos);
    if (pos != field.size() || v < 1) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " expects a positive integer, got '" + field + "'");
  }
}

}  // namespace

TernaryLut parse_truth_table(std::istream& in) {
  std::optional<int> n_in;
  std::optional<int> n_out;
  std::vector<Trit> cells;
  int rows = 0;
  bool terminated = false;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = clean_line(raw);
    if (s.empty()) continue;

    if (s[0] == '.') {
      auto fields = split_fields(s);
      const std::string& key = fields[0];
      if (key == ".i") {
        if (n_in) throw ParseError(line, "duplicate .i header");
        if (rows > 0) throw ParseError(line, ".i must precede body rows");
        if (fields.size() != 2) throw ParseError(line, ".i expects one argument");
        n_in = parse_header_count(fields[1], line, ".i");
        if (*n_in > 30) throw ParseError(line, ".i too large (max 30)");
      } else if (key == ".o") {
        if (n_out) throw ParseError(line, "duplicate .o header");
        if (rows > 0) throw ParseError(line, ".o must precede body rows");
        if (fields.size() != 2) throw ParseError(line, ".o expects one argument");
        n_out = parse_header_count(fields[1], line, ".o");
      } else if (key == ".e") {
        terminated = true;
        break;
      } else {
        throw ParseError(line, "unknown directive '" + key + "'");
      }
      continue;
    }

    if (!n_out) throw ParseError(line, "body row before .o header");
    auto fields = split_fields(s);
    std::string out_field;
    if (n_in) {
      if (fields.size() != 2)
        throw ParseError(line, "expected '<inputbits> <outputbits>' (have .i header)");
      if (!is_binary(fields[0]) || static_cast<int>(fields[0].size()) != *n_in)
        throw ParseError(line, "input field must be " + std::to_string(*n_in) + " binary digits");
      out_field = fields[1];
    } else {
      if (fields.size() != 1)
        throw ParseError(line, "expected a single output field (no .i header)");
      out_field = fields[0];
    }
    if (static_cast<int>(out_field.size()) != *n_out)
      throw ParseError(line, "output field must have " + std::to_string(*n_out) +
                                 " symbols, got " + std::to_string(out_field.size()));
    for (char ch : out_field) {
      switch (ch) {
        case '0': cells.push_back(Trit::Zero); break;
        case '1': cells.push_back(Trit::One); break;
        case '-':
        case 'X':
        case 'x': cells.push_back(Trit::DontCare); break;
        default: throw ParseError(line, std::string("invalid output symbol '") + ch + "'");
      }
    }
    ++rows;
  }

  if (!n_out) throw ParseError(line, "missing .o header");
  if (!terminated) throw ParseError(line, "missing .e terminator");
  if (rows == 0) throw ParseError(line, "no rows");
  if (n_in && rows != (1 << *n_in))
    throw ParseError(line, "row count " + std::to_string(rows) + " does not equal 2^" +
                               std::to_string(*n_in));

  TernaryLut lut;
  lut.rows = rows;
  lut.outputs = *n_out;
  lut.input_bits = n_in;
  lut.cells = std::move(cells);
  return lut;
}

TernaryLut parse_truth_table(const std::string& text) {
  std::istringstream iss(text);
  return parse_truth_table(iss);
}

std::string serialize_truth_table(const TernaryLut& lut) {
  std::ostringstream out;
  if (lut.input_bits) out << ".i " << *lut.input_bits << "\n";
  out << ".o " << lut.outputs << "\n";
  for (int r = 0; r < lut.rows; ++r) {
    if (lut.input_bits) {
      for (int b = *lut.input_bits - 1; b >= 0; --b) out << ((r >> b) & 1);
      out << ' ';
    }
    for (int c = 0; c < lut.outputs; ++c) {
      switch (lut.at(r, c)) {
        case Trit::Zero: out << '0'; break;
        case Trit::One: out << '1'; break;
        case Trit::DontCare: out << '-'; break;
      }
    }
    out << "\n";
  }
  out << ".e\n";
  return out.str();
}

BinaryLut complete(const TernaryLut& lut, std::span<const uint8_t> assignment) {
  if (static_cast<int>(assignment.size()) != lut.dc_count())
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " bits but the table has " + std::to_string(lut.dc_count()) +
                                " don't-care cells");
  BinaryLut out;
  out.rows = lut.rows;
  out.width = lut.outputs;
  out.bits.resize(static_cast<size_t>(lut.rows) * lut.outputs);
  size_t next_dc = 0;
  for (int r = 0; r < lut.rows; ++r) {
    for (int c = 0; c < lut.outputs; ++c) {
      Trit v = lut.at(r, c);
      out.set(r, c, v == Trit::DontCare ? assignment[next_dc++] : static_cast<uint8_t>(v));
    }
  }
  return out;
}

Syndrome gf2_row_times_ht(std::span<const uint8_t> row, const DecoderMatrix& h) {
  if (static_cast<int>(row.size()) != h.c)
    throw std::invalid_argument("row width " + std::to_string(row.size()) +
                                " does not match decoder matrix with " + std::to_string(h.c) +
                                " columns");
  Syndrome s(h.t, 0);
  for (int j = 0; j < h.c; ++j) {
    if (!row[j]) continue;
    for (int k = 0; k < h.t; ++k) s[k] ^= h.at(k, j);
  }
  return s;
}

std::vector<uint8_t> flip_bits(std::span<const uint8_t> row, std::span<const int> positions) {
  std::vector<uint8_t> out(row.begin(), row.end());
  for (int pos : positions) {
    if (pos < 1 || pos > static_cast<int>(row.size()))
      throw std::invalid_argument("flip position " + std::to_string(pos) + " out of range [1, " +
                                  std::to_string(row.size()) + "]");
    out[pos - 1] ^= 1;
  }
  return out;
}

}  // namespace lutcode
