#include "dslut/bit_assignment.hpp"

#include "dslut/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dslut {

BitAssignment::BitAssignment(int num_inputs, std::vector<std::uint8_t> assign)
    : num_inputs_(num_inputs), assign_(std::move(assign)) {
  if (num_inputs < 2 || num_inputs > 6)
    throw UsageError("bit assignment input count must be in [2,6]");
  if (static_cast<int>(assign_.size()) != num_positions())
    throw UsageError("bit assignment needs " + std::to_string(num_positions()) +
                     " positions, got " + std::to_string(assign_.size()));
  const int max_id = *std::max_element(assign_.begin(), assign_.end());
  num_bits_ = max_id + 1;
  class_masks_.assign(static_cast<std::size_t>(num_bits_), 0);
  for (int p = 0; p < num_positions(); ++p)
    class_masks_[assign_[static_cast<std::size_t>(p)]] |= 1ull << p;
  for (int id = 0; id < num_bits_; ++id)
    if (class_masks_[static_cast<std::size_t>(id)] == 0)
      throw UsageError("bit id " + std::to_string(id) + " is unused; ids must be contiguous");
}

BitAssignment BitAssignment::full_lut(int num_inputs) {
  std::vector<std::uint8_t> assign(1u << num_inputs);
  for (std::size_t p = 0; p < assign.size(); ++p)
    assign[p] = static_cast<std::uint8_t>(p);
  return {num_inputs, std::move(assign)};
}

BitAssignment BitAssignment::from_labels(int num_inputs, std::span<const int> labels) {
  std::map<int, std::uint8_t> ids;
  std::vector<std::uint8_t> assign;
  assign.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<std::uint8_t>(ids.size()));
    assign.push_back(it->second);
  }
  return {num_inputs, std::move(assign)};
}

bool refines(const BitAssignment& fine, const BitAssignment& coarse) {
  if (fine.num_inputs() != coarse.num_inputs())
    return false;
  for (auto m : fine.class_masks()) {
    const auto first = static_cast<unsigned>(__builtin_ctzll(m));
    if ((m & ~coarse.class_masks()[coarse.bit(first)]) != 0)
      return false;
  }
  return true;
}

std::string write_bit_assignment(const BitAssignment& ba) {
  std::ostringstream out;
  out << "dslut v1\n"
      << "K=" << ba.num_inputs() << '\n'
      << "B=" << ba.num_bits() << '\n'
      << "PINV=" << ba.num_pinv() << '\n'
      << "ASSIGN=";
  for (int p = 0; p < ba.num_positions(); ++p)
    out << (p ? " " : "") << static_cast<int>(ba.bit(static_cast<unsigned>(p)));
  out << '\n';
  return out.str();
}

namespace {

int parse_int(std::string_view s, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected integer, got '" + std::string(s) + "'", line);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

} // namespace

BitAssignment parse_bit_assignment(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  int k = -1, b = -1, pinv = -1;
  std::vector<std::uint8_t> assign;
  bool have_header = false, have_assign = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    if (!have_header) {
      if (line != "dslut v1")
        throw ParseError("expected 'dslut v1' header", line_no);
      have_header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected KEY=value", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "K") {
      k = parse_int(value, line_no);
    } else if (key == "B") {
      b = parse_int(value, line_no);
    } else if (key == "PINV") {
      pinv = parse_int(value, line_no);
    } else if (key == "ASSIGN") {
      std::istringstream vs{std::string(value)};
      std::string tok;
      while (vs >> tok) {
        const int id = parse_int(tok, line_no);
        if (id < 0 || id > 63)
          throw ParseError("bit id out of range: " + tok, line_no);
        assign.push_back(static_cast<std::uint8_t>(id));
      }
      have_assign = true;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  if (!have_header)
    throw ParseError("empty bit-assignment file", 1);
  if (k < 2 || k > 6 || !have_assign)
    throw ParseError("bit-assignment file needs K in [2,6] and ASSIGN");
  if (pinv != -1 && pinv != k)
    throw ParseError("PINV must equal K (every input carries an inverter)");
  try {
    BitAssignment ba(k, std::move(assign));
    if (b != -1 && b != ba.num_bits())
      throw ParseError("B=" + std::to_string(b) + " but ASSIGN uses " +
                       std::to_string(ba.num_bits()) + " bits");
    return ba;
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
}

BitAssignment read_bit_assignment_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_bit_assignment(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

} // namespace dslut
