#include "dslut/mapper.hpp"

#include "dslut/mux_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dslut {

MatchCache::MatchCache(BitAssignment ba) : ba_(std::move(ba)) {}

bool MatchCache::matches(const TruthTable& fn) {
  const auto shrunk = shrink_to_support(fn);
  const auto canon = npn_canonical(shrunk.table).first;
  {
    std::lock_guard<std::mutex> g(lock_);
    ++lookups_;
    if (const auto it = memo_.find(canon); it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  // Matching outside the lock; a race only repeats identical work.
  const bool ok = match(ba_, canon).has_value();
  std::lock_guard<std::mutex> g(lock_);
  memo_.emplace(canon, ok);
  return ok;
}

std::size_t MatchCache::size() const {
  std::lock_guard<std::mutex> g(lock_);
  return memo_.size();
}

std::size_t MatchCache::lookups() const {
  std::lock_guard<std::mutex> g(lock_);
  return lookups_;
}

std::size_t MatchCache::hits() const {
  std::lock_guard<std::mutex> g(lock_);
  return hits_;
}

std::string MatchCache::write() const {
  std::lock_guard<std::mutex> g(lock_);
  std::ostringstream out;
  for (const auto& [tt, ok] : memo_)
    out << tt.to_hex() << (ok ? " MATCH\n" : " NOMATCH\n");
  return out.str();
}

void MatchCache::load(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream fields(line);
    std::string hex, verdict, extra;
    if (!(fields >> hex >> verdict) || (fields >> extra))
      throw ParseError("expected '<hex> MATCH|NOMATCH'", line_no);
    if (verdict != "MATCH" && verdict != "NOMATCH")
      throw ParseError("verdict must be MATCH or NOMATCH, got '" + verdict + "'", line_no);
    TruthTable tt;
    try {
      tt = TruthTable::from_hex(hex);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    // The canonical form of a shrunk function need not itself be shrunk
    // (one variable canonicalizes to 0x3, which reads x1), so compare keys.
    if (tt.to_hex() != hex || npn_canonical(shrink_to_support(tt).table).first != tt)
      throw ParseError("'" + hex + "' is not the canonical key of its function", line_no);
    const bool ok = verdict == "MATCH";
    std::lock_guard<std::mutex> g(lock_);
    const auto [it, inserted] = memo_.emplace(tt, ok);
    if (!inserted && it->second != ok)
      throw ParseError("conflicting verdict for '" + hex + "'", line_no);
  }
}

Mapping map_netlist(const Aig& aig, const MapParams& params) {
  MatchCache* cache = params.cache;
  if (cache && cache->ba().num_inputs() != params.k)
    throw UsageError("bit assignment has " + std::to_string(cache->ba().num_inputs()) +
                     " inputs, mapping uses K=" + std::to_string(params.k));

  CutHooks hooks;
  if (cache)
    hooks.admissible = [cache](const Cut& c) { return cache->matches(c.table()); };
  const auto cuts = enumerate_cuts(aig, {params.k, params.max_cuts}, hooks);

  Mapping m;
  m.k = params.k;
  if (cache)
    m.ba = cache->ba();

  std::vector<char> needed(aig.num_nodes(), 0);
  std::vector<std::uint32_t> stack;
  for (const auto lit : aig.outputs()) {
    if (aig.is_and(lit.node()))
      stack.push_back(lit.node());
  }
  std::vector<const Cut*> chosen(aig.num_nodes(), nullptr);
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (needed[n])
      continue;
    needed[n] = 1;
    const auto& set = cuts.sets[n];
    if (set.size() < 2 || !set[1].admissible || cuts.labels[n] >= CutEnumeration::kUnmappable)
      throw UnmappableError("node " + std::to_string(n) + " has no admissible cut");
    chosen[n] = &set[1];
    for (const auto leaf : set[1].leaves)
      if (aig.is_and(leaf) && !needed[leaf])
        stack.push_back(leaf);
  }

  for (std::uint32_t n = 0; n < aig.num_nodes(); ++n) {
    if (!needed[n])
      continue;
    MappedCell cell;
    cell.node = n;
    cell.leaves = chosen[n]->leaves;
    cell.function = chosen[n]->table();
    cell.level = cuts.labels[n];
    if (cache) {
      cell.config = match(cache->ba(), cell.function);
      if (!cell.config)
        throw InternalError("cached verdict disagrees with match() for " + cell.function.to_hex());
    }
    m.cells.push_back(std::move(cell));
  }
  for (const auto lit : aig.outputs())
    m.max_level = std::max(m.max_level, cuts.labels[lit.node()]);
  return m;
}

std::vector<std::uint64_t> simulate_mapping(const Aig& aig, const Mapping& mapping,
                                            std::span<const std::uint64_t> inputs) {
  if (inputs.size() != aig.num_inputs())
    throw UsageError("simulate_mapping: expected " + std::to_string(aig.num_inputs()) +
                     " input words");
  std::vector<std::uint64_t> value(aig.num_nodes(), 0);
  for (std::uint32_t i = 0; i < aig.num_inputs(); ++i)
    value[1 + i] = inputs[i];

  std::optional<MuxTree> tree;
  if (mapping.ba)
    tree = build_mux_tree(*mapping.ba);

  for (const auto& cell : mapping.cells) {
    std::uint64_t out = 0;
    for (unsigned b = 0; b < 64; ++b) {
      std::uint32_t x = 0;
      for (std::size_t i = 0; i < cell.leaves.size(); ++i)
        x |= static_cast<std::uint32_t>((value[cell.leaves[i]] >> b) & 1u) << i;
      bool v;
      if (tree) {
        const auto& sol = *cell.config;
        std::uint32_t p = 0;
        for (std::size_t j = 0; j < sol.pin_vars.size(); ++j)
          p |= ((x >> sol.pin_vars[j]) & 1u) << j;
        v = tree_eval(*tree, sol.sram, p ^ sol.pinv);
      } else {
        v = cell.function.bit(x);
      }
      out |= static_cast<std::uint64_t>(v) << b;
    }
    value[cell.node] = out;
  }

  std::vector<std::uint64_t> outs;
  for (const auto lit : aig.outputs())
    outs.push_back(lit.complemented() ? ~value[lit.node()] : value[lit.node()]);
  return outs;
}

void check_mapping(const Aig& aig, const Mapping& mapping) {
  std::vector<int> level(aig.num_nodes(), -1);
  for (std::uint32_t n = 0; n <= aig.num_inputs(); ++n)
    level[n] = 0;
  for (const auto& cell : mapping.cells) {
    if (!aig.is_and(cell.node))
      throw InternalError("cell rooted at non-AND node " + std::to_string(cell.node));
    if (cell.leaves.empty() || cell.leaves.size() > static_cast<std::size_t>(mapping.k))
      throw InternalError("cell " + std::to_string(cell.node) + " has a bad leaf count");
    int depth = 0;
    for (const auto leaf : cell.leaves) {
      if (leaf >= aig.num_nodes() || level[leaf] < 0)
        throw InternalError("cell " + std::to_string(cell.node) + " reads uncovered node " +
                            std::to_string(leaf));
      depth = std::max(depth, level[leaf]);
    }
    if (cut_function(aig, cell.node, cell.leaves) != cell.function)
      throw InternalError("cell " + std::to_string(cell.node) + " has a wrong function");
    if (mapping.ba) {
      if (!cell.config)
        throw InternalError("DSLUT cell " + std::to_string(cell.node) + " lacks a configuration");
      for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(cell.function.num_bits()); ++x)
        if (evaluate_solution(*mapping.ba, *cell.config, x) != cell.function.bit(x))
          throw InternalError("DSLUT cell " + std::to_string(cell.node) + " is misconfigured");
    }
    level[cell.node] = depth + 1;
  }
  int max_level = 0;
  for (const auto lit : aig.outputs()) {
    if (level[lit.node()] < 0)
      throw InternalError("output node " + std::to_string(lit.node()) + " is not covered");
    max_level = std::max(max_level, level[lit.node()]);
  }
  if (max_level != mapping.max_level)
    throw InternalError("mapping reports maxLevel " + std::to_string(mapping.max_level) +
                        ", cover depth is " + std::to_string(max_level));
}

MapReport make_report(std::string name, const Mapping& mapping, double cell_area, double avg_delay) {
  MapReport r;
  r.name = std::move(name);
  r.max_level = mapping.max_level;
  r.nplb = static_cast<double>(mapping.nplb());
  r.area = r.nplb * cell_area;
  r.dap_level = r.max_level * r.area;
  r.dap_delay = r.max_level * avg_delay * r.area;
  return r;
}

MapReport geomean(std::span<const MapReport> rows, std::string name) {
  MapReport g;
  g.name = std::move(name);
  if (rows.empty())
    return g;
  auto column = [&](double MapReport::*field) {
    double log_sum = 0;
    for (const auto& r : rows) {
      if (r.*field <= 0)
        return 0.0;
      log_sum += std::log(r.*field);
    }
    return std::exp(log_sum / static_cast<double>(rows.size()));
  };
  g.max_level = column(&MapReport::max_level);
  g.nplb = column(&MapReport::nplb);
  g.area = column(&MapReport::area);
  g.dap_level = column(&MapReport::dap_level);
  g.dap_delay = column(&MapReport::dap_delay);
  return g;
}

} // namespace dslut
