#include "dslut/arch_model.hpp"

#include "dslut/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace dslut {

const PlbVariant& ArchModel::variant(const std::string& name) const {
  const auto it = variants.find(name);
  if (it == variants.end())
    throw UsageError("architecture has no variant '" + name + "'");
  return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::size_t line) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a number, got '" + std::string(s) + "'", line);
  if (v < 0)
    throw ParseError("negative value '" + std::string(s) + "'", line);
  return v;
}

int parse_count(std::string_view s, std::size_t line) {
  const double v = parse_real(s, line);
  if (v != static_cast<double>(static_cast<int>(v)))
    throw ParseError("expected an integer, got '" + std::string(trim(s)) + "'", line);
  return static_cast<int>(v);
}

const std::set<std::string, std::less<>> kVariantKeys = {
    "num_sram", "mux_tree_area", "input_buffer_area", "other_buffer_area", "crossbar_area", "delay"};

} // namespace

ArchModel parse_arch(std::string_view text) {
  ArchModel m;
  std::set<std::string> seen;
  std::map<std::string, std::set<std::string>> variant_keys;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw ParseError("duplicate key '" + key + "'", line_no);

    if (key == "per_sram_area") {
      m.per_sram_area = parse_real(value, line_no);
    } else if (key == "plb_per_clb") {
      m.plb_per_clb = parse_count(value, line_no);
    } else if (key == "ff_area") {
      m.ff_area = parse_real(value, line_no);
    } else if (key == "out_mux_area") {
      m.out_mux_area = parse_real(value, line_no);
    } else if (key == "carry_area") {
      m.carry_area = parse_real(value, line_no);
    } else if (key == "pinv_delay") {
      m.pinv_delay = parse_real(value, line_no);
    } else {
      const auto dot = key.find('.');
      const auto base = key.substr(0, dot);
      if (dot == std::string::npos || dot + 1 == key.size() || !kVariantKeys.contains(base))
        throw ParseError("unknown key '" + key + "'", line_no);
      const auto name = key.substr(dot + 1);
      auto& v = m.variants[name];
      v.name = name;
      variant_keys[name].insert(base);
      if (base == "num_sram") {
        v.num_sram = parse_count(value, line_no);
      } else if (base == "mux_tree_area") {
        v.mux_tree_area = parse_real(value, line_no);
      } else if (base == "input_buffer_area") {
        v.input_buffer_area = parse_real(value, line_no);
      } else if (base == "other_buffer_area") {
        v.other_buffer_area = parse_real(value, line_no);
      } else if (base == "crossbar_area") {
        v.crossbar_area = parse_real(value, line_no);
      } else {
        std::string_view rest = value;
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          v.delays.push_back(parse_real(rest.substr(0, comma), line_no));
          rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        if (v.delays.empty() || v.delays.size() > 6)
          throw ParseError("delay list needs 1..6 entries", line_no);
      }
    }
  }
  for (const auto& [name, keys] : variant_keys)
    for (const auto& k : kVariantKeys)
      if (!keys.contains(k))
        throw ParseError("variant '" + name + "' is missing " + k + "." + name);
  return m;
}

ArchModel read_arch_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_arch(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

double plb_area(const ArchModel& m, const PlbVariant& v, int num_sram) {
  return num_sram * m.per_sram_area + v.mux_tree_area + v.input_buffer_area + v.other_buffer_area;
}

double clb_area(const ArchModel& m, const PlbVariant& v, double plb) {
  return m.plb_per_clb * plb + m.ff_area + v.crossbar_area + m.out_mux_area + m.carry_area;
}

double avg_delay(const ArchModel& m, const PlbVariant& v, bool with_pinv) {
  if (v.delays.empty())
    throw UsageError("variant '" + v.name + "' has no per-input delays");
  const double mean = std::accumulate(v.delays.begin(), v.delays.end(), 0.0) /
                      static_cast<double>(v.delays.size());
  return with_pinv ? mean + m.pinv_delay : mean;
}

} // namespace dslut
