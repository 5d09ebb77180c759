#include "lutcode/code_result_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lutcode/code_search.hpp"
#include "lutcode/hamming.hpp"

namespace lutcode {

std::string write_code_result(const CodeResult& result) {
  std::ostringstream out;
  out << "# coded lookup table with single-error-correcting decoder matrix\n";
  out << ".p " << result.source.outputs << "\n";
  out << ".k " << result.k << "\n";
  if (result.source.input_bits) out << ".i " << *result.source.input_bits << "\n";
  out << ".o " << result.coded.width << "\n";
  for (int r = 0; r < result.coded.rows; ++r) {
    if (result.source.input_bits) {
      for (int b = *result.source.input_bits - 1; b >= 0; --b) out << ((r >> b) & 1);
      out << ' ';
    }
    for (int c = 0; c < result.coded.width; ++c) out << static_cast<int>(result.coded.at(r, c));
    out << "\n";
  }
  out << ".e\n";
  for (int k = 0; k < result.H.t; ++k) {
    out << ".h ";
    for (int j = 0; j < result.H.c; ++j) out << static_cast<int>(result.H.at(k, j));
    out << "\n";
  }
  return out.str();
}

namespace {

std::string strip(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && sp(s.back())) s.pop_back();
  size_t b = 0;
  while (b < s.size() && sp(s[b])) ++b;
  return s.substr(b);
}

}  // namespace

StoredCode read_code_result(std::istream& in) {
  std::optional<int> p, k, n_in, width;
  std::vector<uint8_t> bits;
  std::vector<std::string> h_rows;
  int rows = 0;
  bool in_table_done = false;
  std::string raw;
  int line = 0;

  auto parse_int = [&](const std::string& f, const char* what, int min) {
    try {
      size_t pos = 0;
      int v = std::stoi(f, &pos);
      if (pos != f.size() || v < min) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ParseError(line, std::string(what) + " expects an integer >= " + std::to_string(min));
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip(raw);
    if (s.empty()) continue;
    std::istringstream fields(s);
    std::string key;
    fields >> key;

    if (key == ".p" || key == ".k" || key == ".i" || key == ".o") {
      std::string val;
      if (!(fields >> val)) throw ParseError(line, key + " expects one argument");
      if (key == ".p") p = parse_int(val, ".p", 1);
      else if (key == ".k") k = parse_int(val, ".k", 0);
      else if (key == ".i") n_in = parse_int(val, ".i", 1);
      else width = parse_int(val, ".o", 1);
    } else if (key == ".e") {
      in_table_done = true;
    } else if (key == ".h") {
      if (!in_table_done) throw ParseError(line, ".h before .e");
      std::string row;
      if (!(fields >> row)) throw ParseError(line, ".h expects a bit string");
      h_rows.push_back(row);
    } else if (key[0] == '.') {
      throw ParseError(line, "unknown directive '" + key + "'");
    } else {
      if (in_table_done) throw ParseError(line, "table row after .e");
      if (!width) throw ParseError(line, "table row before .o");
      std::string out_field = key;
      if (n_in) {
        std::string second;
        if (!(fields >> second)) throw ParseError(line, "expected '<inputbits> <codedrow>'");
        out_field = second;
      }
      if (static_cast<int>(out_field.size()) != *width)
        throw ParseError(line, "row width != .o value");
      for (char ch : out_field) {
        if (ch != '0' && ch != '1') throw ParseError(line, "coded rows must be binary");
        bits.push_back(ch == '1');
      }
      ++rows;
    }
  }

  if (!p) throw ParseError(line, "missing .p header");
  if (!k) throw ParseError(line, "missing .k header");
  if (!width) throw ParseError(line, "missing .o header");
  if (!in_table_done) throw ParseError(line, "missing .e terminator");
  if (rows == 0) throw ParseError(line, "no rows");
  if (*width != *p + *k) throw ParseError(line, ".o must equal .p + .k");
  if (n_in && rows != (1 << *n_in)) throw ParseError(line, "row count does not equal 2^.i");
  int t = t_rows(*width);
  if (static_cast<int>(h_rows.size()) != t)
    throw ParseError(line, "expected " + std::to_string(t) + " .h lines, got " +
                               std::to_string(h_rows.size()));

  StoredCode sc;
  sc.p = *p;
  sc.k = *k;
  sc.input_bits = n_in;
  sc.coded.rows = rows;
  sc.coded.width = *width;
  sc.coded.bits = std::move(bits);
  sc.H.t = t;
  sc.H.c = *width;
  sc.H.bits.resize(static_cast<size_t>(t) * *width);
  for (int kk = 0; kk < t; ++kk) {
    if (static_cast<int>(h_rows[kk].size()) != *width)
      throw ParseError(line, ".h row width != .o value");
    for (int j = 0; j < *width; ++j) {
      char ch = h_rows[kk][j];
      if (ch != '0' && ch != '1') throw ParseError(line, ".h rows must be binary");
      sc.H.set(kk, j, ch == '1');
    }
  }
  return sc;
}

StoredCode read_code_result(const std::string& text) {
  std::istringstream iss(text);
  return read_code_result(iss);
}

bool StoredCodeReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

StoredCodeReport verify_stored_code(const StoredCode& stored,
                                    const std::optional<TernaryLut>& source) {
  StoredCodeReport report;
  auto add = [&](const std::string& name, bool ok, const std::string& why = "") {
    report.checks.emplace_back(name, ok);
    if (!ok && report.detail.empty()) report.detail = name + (why.empty() ? "" : ": " + why);
  };

  auto violation = stored.H.invariant_violation();
  add("decoder_columns", !violation, violation ? *violation : "");
  add("decoder_rows", stored.H.t == t_rows(stored.H.c));
  add("k_range", stored.k >= 0 && stored.k <= delta(stored.p));
  if (violation) return report;

  bool zero = true;
  for (int r = 0; r < stored.coded.rows && zero; ++r)
    for (uint8_t b : gf2_row_times_ht(stored.coded.row(r), stored.H)) zero = zero && !b;
  add("zero_syndromes", zero);

  bool decode_ok = true;
  for (int r = 0; r < stored.coded.rows && decode_ok; ++r) {
    std::vector<uint8_t> original = stored.coded.row(r);
    for (int pos = 1; pos <= stored.coded.width && decode_ok; ++pos) {
      auto out = correct(flip_bits(original, std::vector<int>{pos}), stored.H);
      decode_ok = out.tag == CorrectionOutcome::Tag::Corrected && out.position == pos &&
                  out.corrected_row == original;
    }
  }
  add("single_flip_recovery", decode_ok);

  if (source) {
    bool match = source->rows == stored.coded.rows && source->outputs == stored.p;
    for (int r = 0; match && r < source->rows; ++r)
      for (int c = 0; match && c < source->outputs; ++c) {
        Trit v = source->at(r, c);
        if (v != Trit::DontCare) match = stored.coded.at(r, c) == static_cast<uint8_t>(v);
      }
    add("fixed_cells", match);
  }
  return report;
}

}  // namespace lutcode
