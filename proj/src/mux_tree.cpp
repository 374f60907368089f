#include "dslut/mux_tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace dslut {

MuxTree build_mux_tree(const BitAssignment& ba, bool prune) {
  MuxTree tree;
  tree.num_inputs = ba.num_inputs();
  tree.num_bits = ba.num_bits();

  std::vector<MuxRef> level_refs;
  for (int p = 0; p < ba.num_positions(); ++p)
    level_refs.push_back({true, ba.bit(static_cast<unsigned>(p))});

  std::map<std::tuple<int, MuxRef, MuxRef>, std::uint32_t> strash;
  for (int level = 0; level < ba.num_inputs(); ++level) {
    std::vector<MuxRef> next;
    for (std::size_t q = 0; q < level_refs.size(); q += 2) {
      const auto c0 = level_refs[q], c1 = level_refs[q + 1];
      if (prune && c0 == c1) {
        ++tree.stats.pruned_identical;
        next.push_back(c0);
        continue;
      }
      if (prune) {
        const auto key = std::make_tuple(level, c0, c1);
        if (const auto it = strash.find(key); it != strash.end()) {
          ++tree.stats.pruned_strash;
          next.push_back({false, it->second});
          continue;
        }
        strash.emplace(key, static_cast<std::uint32_t>(tree.nodes.size()));
      }
      next.push_back({false, static_cast<std::uint32_t>(tree.nodes.size())});
      tree.nodes.push_back({level, c0, c1});
    }
    level_refs = std::move(next);
  }
  tree.root = level_refs.front();
  tree.stats.surviving = static_cast<int>(tree.nodes.size());
  return tree;
}

bool tree_eval(const MuxTree& tree, std::uint64_t sram, std::uint32_t minterm) {
  auto ref = tree.root;
  while (!ref.leaf) {
    const auto& n = tree.nodes[ref.id];
    ref = ((minterm >> n.level) & 1u) ? n.child1 : n.child0;
  }
  return (sram >> ref.id) & 1u;
}

std::vector<int> path_stages(const MuxTree& tree) {
  std::vector<int> depth(tree.nodes.size(), 0);
  std::vector<int> stages(static_cast<std::size_t>(tree.num_inputs), 0);
  if (tree.root.leaf)
    return stages;
  depth[tree.root.id] = 1;
  // Parents are stored after their children, so a reverse sweep is topological.
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    if (depth[i] == 0)
      continue;
    const auto& n = tree.nodes[i];
    for (const auto& c : {n.child0, n.child1})
      if (!c.leaf)
        depth[c.id] = std::max(depth[c.id], depth[i] + 1);
    auto& s = stages[static_cast<std::size_t>(n.level)];
    s = std::max(s, depth[i]);
  }
  return stages;
}

TransistorReport transistor_report(const MuxTree& tree) {
  TransistorReport r;
  r.transistors = tree.stats.transistors();
  r.pruned_identical = 2 * tree.stats.pruned_identical;
  r.pruned_strash = 2 * tree.stats.pruned_strash;
  r.full_tree = 2 * ((1 << tree.num_inputs) - 1);
  return r;
}

std::string to_dot(const MuxTree& tree) {
  std::ostringstream out;
  out << "digraph muxtree {\n  rankdir=BT;\n";
  auto name = [](const MuxRef& r) {
    return (r.leaf ? "b" : "m") + std::to_string(r.id);
  };
  for (int b = 0; b < tree.num_bits; ++b)
    out << "  b" << b << " [shape=box,label=\"B" << b << "\"];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    out << "  m" << i << " [shape=circle,label=\"x" << n.level << "\"];\n";
    out << "  " << name(n.child0) << " -> m" << i << " [label=\"0\"];\n";
    out << "  " << name(n.child1) << " -> m" << i << " [label=\"1\"];\n";
  }
  out << "  out [shape=plaintext];\n  " << name(tree.root) << " -> out;\n}\n";
  return out.str();
}

} // namespace dslut
