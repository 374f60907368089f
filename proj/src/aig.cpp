#include "dslut/aig.hpp"

#include "dslut/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace dslut {

AigLit Aig::add_and(AigLit a, AigLit b) {
  const std::uint32_t id = num_nodes();
  if (a.node() >= id || b.node() >= id)
    throw UsageError("AND fanin refers to an undefined node");
  ands_.push_back({a, b});
  return AigLit(id, false);
}

void Aig::add_output(AigLit lit) {
  if (lit.node() >= num_nodes())
    throw UsageError("output refers to an undefined node");
  outputs_.push_back(lit);
}

bool operator==(const Aig& a, const Aig& b) {
  if (a.num_inputs_ != b.num_inputs_ || a.ands_.size() != b.ands_.size() ||
      a.outputs_ != b.outputs_)
    return false;
  for (std::size_t i = 0; i < a.ands_.size(); ++i)
    if (a.ands_[i].fanin0 != b.ands_[i].fanin0 || a.ands_[i].fanin1 != b.ands_[i].fanin1)
      return false;
  return true;
}

namespace {

class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size())
      return false;
    const auto end = text_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    pos_ = stop + 1;
    ++line_no_;
    return true;
  }

  std::string_view expect(const char* what) {
    std::string_view line;
    if (!next(line))
      throw ParseError(std::string("unexpected end of file, expected ") + what, line_no_ + 1);
    return line;
  }

  std::size_t line_no() const { return line_no_; }
  std::size_t offset() const { return pos_; }
  std::string_view rest() const { return pos_ < text_.size() ? text_.substr(pos_) : std::string_view{}; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      ++i;
    if (i >= line.size())
      break;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t'))
      throw ParseError("expected unsigned integer in '" + std::string(line) + "'", line_no);
    i = static_cast<std::size_t>(ptr - line.data());
    out.push_back(v);
  }
  return out;
}

struct Header {
  bool binary = false;
  std::uint64_t max_var = 0, inputs = 0, latches = 0, outputs = 0, ands = 0;
};

Header parse_header(LineReader& in) {
  std::string_view line;
  if (!in.next(line) || line.empty())
    throw ParseError("empty file, expected AIGER header", 1);
  Header h;
  std::string_view rest;
  if (line.starts_with("aag ")) {
    rest = line.substr(4);
  } else if (line.starts_with("aig ")) {
    h.binary = true;
    rest = line.substr(4);
  } else {
    throw ParseError("missing 'aag'/'aig' header", in.line_no());
  }
  const auto nums = parse_numbers(rest, in.line_no());
  if (nums.size() < 5 || nums.size() > 9)
    throw ParseError("header needs M I L O A", in.line_no());
  for (std::size_t i = 5; i < nums.size(); ++i)
    if (nums[i] != 0)
      throw ParseError("bad-state, constraint, justice and fairness sections are unsupported",
                       in.line_no());
  h.max_var = nums[0];
  h.inputs = nums[1];
  h.latches = nums[2];
  h.outputs = nums[3];
  h.ands = nums[4];
  if (h.max_var > std::numeric_limits<std::uint32_t>::max() / 2)
    throw ParseError("maximum variable index too large", in.line_no());
  if (h.inputs + h.latches + h.ands > h.max_var)
    throw ParseError("M is smaller than I + L + A", in.line_no());
  if (h.binary && h.inputs + h.latches + h.ands != h.max_var)
    throw ParseError("binary AIGER requires M = I + L + A", in.line_no());
  return h;
}

// Maps AIGER variables to internal node ids.
class VarMap {
public:
  explicit VarMap(std::uint64_t max_var) : ids_(max_var + 1, kUndefined) { ids_[0] = 0; }

  bool defined(std::uint64_t var) const { return var < ids_.size() && ids_[var] != kUndefined; }

  void define(std::uint64_t lit, std::uint32_t id, std::size_t line) {
    if (lit & 1u)
      throw ParseError("defined literal " + std::to_string(lit) + " must be even", line);
    const auto var = lit >> 1;
    if (var == 0 || var >= ids_.size())
      throw ParseError("literal " + std::to_string(lit) + " exceeds 2M or is constant", line);
    if (ids_[var] != kUndefined)
      throw ParseError("literal " + std::to_string(lit) + " defined twice", line);
    ids_[var] = id;
  }

  AigLit map(std::uint64_t lit, std::size_t line, const char* role) const {
    const auto var = lit >> 1;
    if (var >= ids_.size())
      throw ParseError(std::string(role) + " literal " + std::to_string(lit) + " exceeds 2M+1",
                       line);
    if (ids_[var] == kUndefined)
      throw ParseError(std::string(role) + " literal " + std::to_string(lit) +
                           " is not defined (dangling or out of order)",
                       line);
    return AigLit(ids_[var], lit & 1u);
  }

private:
  static constexpr std::uint32_t kUndefined = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> ids_;
};

std::uint64_t decode_varint(std::string_view data, std::size_t& pos) {
  std::uint64_t x = 0;
  unsigned shift = 0;
  while (true) {
    if (pos >= data.size())
      throw ParseError("truncated binary AND section");
    const auto ch = static_cast<unsigned char>(data[pos++]);
    x |= static_cast<std::uint64_t>(ch & 0x7fu) << shift;
    if (!(ch & 0x80u))
      return x;
    shift += 7;
    if (shift > 63)
      throw ParseError("malformed delta encoding in binary AND section");
  }
}

} // namespace

Aig parse_aiger(std::string_view text) {
  LineReader in(text);
  const Header h = parse_header(in);
  const auto num_cis = static_cast<std::uint32_t>(h.inputs + h.latches);
  Aig aig(num_cis);
  aig.set_num_latches(static_cast<std::uint32_t>(h.latches));
  VarMap vars(h.max_var);

  for (std::uint64_t i = 0; i < h.inputs; ++i) {
    if (h.binary) {
      vars.define(2 * (i + 1), static_cast<std::uint32_t>(1 + i), in.line_no());
      continue;
    }
    const auto line = in.expect("input");
    const auto nums = parse_numbers(line, in.line_no());
    if (nums.size() != 1)
      throw ParseError("input line needs one literal", in.line_no());
    vars.define(nums[0], static_cast<std::uint32_t>(1 + i), in.line_no());
  }

  struct Pending {
    std::uint64_t lit;
    std::size_t line;
    const char* role;
  };
  std::vector<Pending> next_states;
  for (std::uint64_t i = 0; i < h.latches; ++i) {
    const auto line = in.expect("latch");
    const auto nums = parse_numbers(line, in.line_no());
    const auto id = static_cast<std::uint32_t>(1 + h.inputs + i);
    if (h.binary) {
      if (nums.empty() || nums.size() > 2)
        throw ParseError("latch line needs 'next [init]'", in.line_no());
      vars.define(2 * (h.inputs + i + 1), id, in.line_no());
      next_states.push_back({nums[0], in.line_no(), "latch next-state"});
    } else {
      if (nums.size() < 2 || nums.size() > 3)
        throw ParseError("latch line needs 'lit next [init]'", in.line_no());
      vars.define(nums[0], id, in.line_no());
      next_states.push_back({nums[1], in.line_no(), "latch next-state"});
    }
  }

  std::vector<Pending> outputs;
  for (std::uint64_t i = 0; i < h.outputs; ++i) {
    const auto line = in.expect("output");
    const auto nums = parse_numbers(line, in.line_no());
    if (nums.size() != 1)
      throw ParseError("output line needs one literal", in.line_no());
    outputs.push_back({nums[0], in.line_no(), "output"});
  }

  if (h.binary) {
    const auto data = in.rest();
    std::size_t pos = 0;
    for (std::uint64_t i = 0; i < h.ands; ++i) {
      const std::uint64_t lhs = 2 * (num_cis + i + 1);
      const auto d0 = decode_varint(data, pos);
      const auto d1 = decode_varint(data, pos);
      if (d0 == 0 || d0 > lhs || d1 > lhs - d0)
        throw ParseError("invalid delta in binary AND " + std::to_string(i));
      const std::uint64_t rhs0 = lhs - d0;
      const std::uint64_t rhs1 = rhs0 - d1;
      const auto a = vars.map(rhs0, 0, "AND fanin");
      const auto b = vars.map(rhs1, 0, "AND fanin");
      vars.define(lhs, aig.add_and(a, b).node(), 0);
    }
  } else {
    for (std::uint64_t i = 0; i < h.ands; ++i) {
      const auto line = in.expect("AND gate");
      const auto nums = parse_numbers(line, in.line_no());
      if (nums.size() != 3)
        throw ParseError("AND line needs 'lhs rhs0 rhs1'", in.line_no());
      const auto a = vars.map(nums[1], in.line_no(), "AND fanin");
      const auto b = vars.map(nums[2], in.line_no(), "AND fanin");
      if (nums[0] & 1u)
        throw ParseError("AND output literal must be even", in.line_no());
      if (vars.defined(nums[0] >> 1))
        throw ParseError("literal " + std::to_string(nums[0]) + " defined twice", in.line_no());
      vars.define(nums[0], aig.num_nodes(), in.line_no());
      aig.add_and(a, b);
    }
  }

  for (const auto& o : outputs)
    aig.add_output(vars.map(o.lit, o.line, o.role));
  for (const auto& o : next_states)
    aig.add_output(vars.map(o.lit, o.line, o.role));
  return aig;
}

Aig read_aiger_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_aiger(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

std::string write_aiger(const Aig& aig) {
  std::ostringstream out;
  out << "aag " << aig.num_nodes() - 1 << ' ' << aig.num_inputs() << " 0 " << aig.outputs().size()
      << ' ' << aig.num_ands() << '\n';
  for (std::uint32_t i = 0; i < aig.num_inputs(); ++i)
    out << aig.input(i).raw() << '\n';
  for (auto o : aig.outputs())
    out << o.raw() << '\n';
  for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
    const auto& g = aig.and_node(n);
    out << AigLit(n, false).raw() << ' ' << g.fanin0.raw() << ' ' << g.fanin1.raw() << '\n';
  }
  return out.str();
}

std::vector<bool> simulate(const Aig& aig, const std::vector<bool>& inputs) {
  if (inputs.size() != aig.num_inputs())
    throw UsageError("simulate: expected " + std::to_string(aig.num_inputs()) +
                     " input values, got " + std::to_string(inputs.size()));
  std::vector<bool> value(aig.num_nodes(), false);
  for (std::uint32_t i = 0; i < aig.num_inputs(); ++i)
    value[1 + i] = inputs[i];
  auto lit_value = [&](AigLit l) { return value[l.node()] != l.complemented(); };
  for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
    const auto& g = aig.and_node(n);
    value[n] = lit_value(g.fanin0) && lit_value(g.fanin1);
  }
  std::vector<bool> out;
  out.reserve(aig.outputs().size());
  for (auto o : aig.outputs())
    out.push_back(lit_value(o));
  return out;
}

std::vector<std::uint64_t> simulate_words(const Aig& aig, std::span<const std::uint64_t> inputs) {
  if (inputs.size() != aig.num_inputs())
    throw UsageError("simulate_words: input count mismatch");
  std::vector<std::uint64_t> value(aig.num_nodes(), 0);
  std::copy(inputs.begin(), inputs.end(), value.begin() + 1);
  auto lit_value = [&](AigLit l) { return l.complemented() ? ~value[l.node()] : value[l.node()]; };
  for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
    const auto& g = aig.and_node(n);
    value[n] = lit_value(g.fanin0) & lit_value(g.fanin1);
  }
  return value;
}

std::vector<int> levels(const Aig& aig) {
  std::vector<int> depth(aig.num_nodes(), 0);
  for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
    const auto& g = aig.and_node(n);
    depth[n] = 1 + std::max(depth[g.fanin0.node()], depth[g.fanin1.node()]);
  }
  return depth;
}

} // namespace dslut
