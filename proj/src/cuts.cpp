#include "dslut/cuts.hpp"

#include "dslut/error.hpp"

#include <algorithm>
#include <array>

namespace dslut {

namespace {

std::uint64_t position_mask(std::size_t num_leaves) {
  return num_leaves >= 6 ? ~0ull : (1ull << (1u << num_leaves)) - 1;
}

std::uint64_t leaf_signature(std::uint32_t leaf) { return 1ull << (leaf % 64); }

Cut trivial_cut(std::uint32_t node) {
  Cut c;
  c.leaves = {node};
  c.signature = leaf_signature(node);
  c.function = 0x2; // f = leaf
  return c;
}

// Re-expresses `fn` over `from` as a function over the superset `to`.
std::uint64_t stretch(std::uint64_t fn, const std::vector<std::uint32_t>& from,
                      const std::vector<std::uint32_t>& to) {
  std::array<unsigned, 6> pos{};
  for (std::size_t i = 0, j = 0; i < from.size(); ++i) {
    while (to[j] != from[i])
      ++j;
    pos[i] = static_cast<unsigned>(j);
  }
  std::uint64_t out = 0;
  const unsigned n = 1u << to.size();
  for (unsigned p = 0; p < n; ++p) {
    unsigned q = 0;
    for (std::size_t i = 0; i < from.size(); ++i)
      q |= ((p >> pos[i]) & 1u) << i;
    out |= ((fn >> q) & 1u) << p;
  }
  return out;
}

bool merge_leaves(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                  std::size_t limit, std::vector<std::uint32_t>& out) {
  out.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint32_t next;
    if (j >= b.size() || (i < a.size() && a[i] < b[j]))
      next = a[i++];
    else if (i >= a.size() || b[j] < a[i])
      next = b[j++];
    else {
      next = a[i++];
      ++j;
    }
    if (out.size() == limit)
      return false;
    out.push_back(next);
  }
  return true;
}

} // namespace

TruthTable Cut::table() const {
  if (leaves.size() == 1) {
    const auto f = function & 0x3u; // replicate over the absent second variable
    return {TruthTable::kMinVars, f | f << 2};
  }
  const int k = std::max<int>(TruthTable::kMinVars, static_cast<int>(leaves.size()));
  return {k, function & position_mask(leaves.size())};
}

bool cut_subset(const Cut& a, const Cut& b) {
  if (a.leaves.size() > b.leaves.size() || (a.signature & ~b.signature))
    return false;
  return std::includes(b.leaves.begin(), b.leaves.end(), a.leaves.begin(), a.leaves.end());
}

CutEnumeration enumerate_cuts(const Aig& aig, const CutParams& params, const CutHooks& hooks) {
  if (params.max_leaves < 2 || params.max_leaves > TruthTable::kMaxVars)
    throw UsageError("cut size K must be in [2,6]");
  if (params.max_cuts < 1)
    throw UsageError("priority-cut limit C must be at least 1");
  const auto limit = static_cast<std::size_t>(params.max_leaves);

  CutEnumeration result;
  result.sets.resize(aig.num_nodes());
  result.labels.assign(aig.num_nodes(), 0);

  for (std::uint32_t n = 0; n <= aig.num_inputs(); ++n)
    result.sets[n].push_back(trivial_cut(n));

  std::vector<Cut> candidates;
  std::vector<std::uint32_t> merged;
  for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
    const auto& g = aig.and_node(n);
    const auto& set0 = result.sets[g.fanin0.node()];
    const auto& set1 = result.sets[g.fanin1.node()];
    candidates.clear();
    for (const auto& c0 : set0) {
      for (const auto& c1 : set1) {
        if (!merge_leaves(c0.leaves, c1.leaves, limit, merged))
          continue;
        Cut c;
        c.leaves = merged;
        c.signature = c0.signature | c1.signature;
        const auto m = position_mask(merged.size());
        std::uint64_t f0 = stretch(c0.function, c0.leaves, merged);
        std::uint64_t f1 = stretch(c1.function, c1.leaves, merged);
        if (g.fanin0.complemented())
          f0 = ~f0;
        if (g.fanin1.complemented())
          f1 = ~f1;
        c.function = f0 & f1 & m;
        if (hooks.on_candidate)
          hooks.on_candidate(n, c);
        candidates.push_back(std::move(c));
      }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Cut& a, const Cut& b) {
      if (a.size() != b.size())
        return a.size() < b.size();
      return a.leaves < b.leaves;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Cut& a, const Cut& b) { return a.leaves == b.leaves; }),
                     candidates.end());

    // Sorted by size, so any dominator precedes the cut it dominates.
    std::vector<Cut> kept;
    for (auto& c : candidates) {
      const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Cut& k) {
        return k.size() < c.size() && cut_subset(k, c);
      });
      if (dominated)
        continue;
      int depth = 0;
      for (auto leaf : c.leaves)
        depth = std::max(depth, result.labels[leaf]);
      c.depth = std::min(depth + 1, CutEnumeration::kUnmappable);
      c.admissible = !hooks.admissible || hooks.admissible(c);
      kept.push_back(std::move(c));
    }

    std::sort(kept.begin(), kept.end(), [](const Cut& a, const Cut& b) {
      if (a.admissible != b.admissible)
        return a.admissible;
      if (a.depth != b.depth)
        return a.depth < b.depth;
      if (a.size() != b.size())
        return a.size() < b.size();
      return a.leaves < b.leaves;
    });
    if (kept.size() > params.max_cuts)
      kept.resize(params.max_cuts);

    auto& set = result.sets[n];
    set.push_back(trivial_cut(n));
    result.labels[n] = CutEnumeration::kUnmappable;
    if (!kept.empty() && kept.front().admissible)
      result.labels[n] = kept.front().depth;
    for (auto& c : kept) {
      if (hooks.on_retained)
        hooks.on_retained(n, c);
      set.push_back(std::move(c));
    }
  }
  return result;
}

TruthTable cut_function(const Aig& aig, std::uint32_t node,
                        const std::vector<std::uint32_t>& leaves) {
  if (leaves.empty() || leaves.size() > static_cast<std::size_t>(TruthTable::kMaxVars))
    throw InternalError("cut_function: a cut needs 1..6 leaves");
  if (!std::is_sorted(leaves.begin(), leaves.end()) ||
      std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
    throw InternalError("cut_function: leaves must be sorted and distinct");
  if (node >= aig.num_nodes())
    throw InternalError("cut_function: node out of range");

  static constexpr std::array<std::uint64_t, 6> kProjections = {
      0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
      0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull};

  std::vector<std::uint64_t> value(node + 1, 0);
  std::vector<char> known(node + 1, 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] > node)
      throw InternalError("cut_function: leaf above the root");
    value[leaves[i]] = kProjections[i];
    known[leaves[i]] = 1;
  }
  known[0] = 1; // constant false, unless it is itself a leaf

  // Iterative post-order over the cone.
  std::vector<std::uint32_t> stack = {node};
  while (!stack.empty()) {
    const auto n = stack.back();
    if (known[n]) {
      stack.pop_back();
      continue;
    }
    if (!aig.is_and(n))
      throw InternalError("cut_function: primary input " + std::to_string(n) +
                          " reachable without crossing a leaf");
    const auto& g = aig.and_node(n);
    const auto a = g.fanin0.node(), b = g.fanin1.node();
    if (!known[a] || !known[b]) {
      if (!known[a])
        stack.push_back(a);
      if (!known[b])
        stack.push_back(b);
      continue;
    }
    const auto va = g.fanin0.complemented() ? ~value[a] : value[a];
    const auto vb = g.fanin1.complemented() ? ~value[b] : value[b];
    value[n] = va & vb;
    known[n] = 1;
    stack.pop_back();
  }
  const int k = std::max<int>(TruthTable::kMinVars, static_cast<int>(leaves.size()));
  return {k, value[node] & position_mask(static_cast<std::size_t>(k))};
}

} // namespace dslut
