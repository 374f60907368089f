#include "dslut/cuts.hpp"
#include "dslut/funclib.hpp"
#include "dslut/mapper.hpp"
#include "dslut/parallel.hpp"

#include <unordered_map>

namespace dslut {

namespace {

FuncLib harvest_one(const Aig& aig, int max_leaves, std::size_t max_cuts) {
  FuncLib lib(max_leaves);
  // Raw cut function (leaf count, bits) -> library key; canonicalization dominates otherwise.
  std::unordered_map<std::uint64_t, FuncLibEntry*> memo[7];
  auto entry = [&](const TruthTable& fn, std::size_t leaves) -> FuncLibEntry& {
    auto& slot = memo[leaves][fn.bits()];
    if (!slot) {
      const auto [nvars, canon] = library_key(fn);
      slot = &lib.entry_canonical(nvars, canon);
    }
    return *slot;
  };

  CutHooks hooks;
  hooks.on_candidate = [&](std::uint32_t, const Cut& c) { ++entry(c.table(), c.size()).n_enum; };
  hooks.on_retained = [&](std::uint32_t, const Cut& c) { ++entry(c.table(), c.size()).n_cutset; };
  enumerate_cuts(aig, {max_leaves, max_cuts}, hooks);

  const auto mapping = map_netlist(aig, {max_leaves, max_cuts, nullptr});
  for (const auto& cell : mapping.cells)
    ++entry(cell.function, cell.leaves.size()).n_cutbest;
  return lib;
}

} // namespace

FuncLib harvest_library(const std::vector<Aig>& aigs, int max_leaves, std::size_t max_cuts, int jobs) {
  std::vector<FuncLib> parts(aigs.size(), FuncLib(max_leaves));
  parallel_for(aigs.size(), jobs,
               [&](std::size_t i) { parts[i] = harvest_one(aigs[i], max_leaves, max_cuts); });
  FuncLib lib(max_leaves);
  for (const auto& p : parts)
    lib.merge(p);
  return lib;
}

} // namespace dslut
