#include "dslut/match.hpp"

#include "dslut/error.hpp"
#include "dslut/parallel.hpp"

#include <sstream>

namespace dslut {

std::optional<SramConfig> implements_direct(const BitAssignment& ba, const TruthTable& tt,
                                            std::uint64_t care) {
  if (tt.num_vars() != ba.num_inputs())
    throw UsageError("implements_direct: truth table has " + std::to_string(tt.num_vars()) +
                     " variables, bit assignment has " + std::to_string(ba.num_inputs()));
  const auto t = tt.bits();
  care &= TruthTable::mask(ba.num_inputs());
  SramConfig sram = 0;
  const auto& classes = ba.class_masks();
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const auto c = care & classes[j];
    const auto v = t & c;
    if (v != 0 && v != c)
      return std::nullopt;
    if (v != 0)
      sram |= 1ull << j;
  }
  return sram;
}

std::string MatchSolution::to_string(const BitAssignment& ba) const {
  std::ostringstream out;
  out << "MATCH pins=";
  for (std::size_t j = 0; j < pin_vars.size(); ++j)
    out << (j ? "," : "") << pin_vars[j];
  out << " pinv=" << pinv << " sram=";
  for (int j = 0; j < ba.num_bits(); ++j)
    out << ((sram >> j) & 1u);
  return out.str();
}

bool evaluate_solution(const BitAssignment& ba, const MatchSolution& sol, std::uint32_t minterm) {
  unsigned p = 0;
  for (std::size_t j = 0; j < sol.pin_vars.size(); ++j)
    p |= ((minterm >> sol.pin_vars[j]) & 1u) << j;
  p ^= sol.pinv;
  return (sol.sram >> ba.bit(p)) & 1u;
}

PinTarget induce_pin_target(const TruthTable& shrunk, int num_support,
                            const std::vector<int>& pin_map, int num_pins) {
  PinTarget t;
  const unsigned n = 1u << num_pins;
  for (unsigned p = 0; p < n; ++p) {
    // Pin vector p is reachable iff pins wired to the same variable agree.
    unsigned y = 0, seen = 0;
    bool ok = true;
    for (int j = 0; j < num_pins && ok; ++j) {
      const int v = pin_map[static_cast<std::size_t>(j)];
      const unsigned bit = (p >> j) & 1u;
      if (seen >> v & 1u)
        ok = ((y >> v) & 1u) == bit;
      else {
        seen |= 1u << v;
        y |= bit << v;
      }
    }
    if (!ok)
      continue;
    t.care |= 1ull << p;
    if (num_support > 0 && shrunk.bit(y))
      t.table |= 1ull << p;
  }
  return t;
}

std::optional<MatchSolution> match(const BitAssignment& ba, const TruthTable& f) {
  const int k = ba.num_inputs();
  const auto shrunk = shrink_to_support(f);
  const int s = static_cast<int>(shrunk.vars.size());
  if (s > k)
    return std::nullopt;
  if (s == 0) {
    MatchSolution sol;
    sol.pin_vars.assign(static_cast<std::size_t>(k), 0);
    if (f.bit(0))
      sol.sram = ba.num_bits() == 64 ? ~0ull : (1ull << ba.num_bits()) - 1;
    return sol;
  }

  std::optional<MatchSolution> found;
  for_each_pin_map(k, s, [&](const std::vector<int>& pin_map) {
    const auto target = induce_pin_target(shrunk.table, s, pin_map, k);
    for (std::uint32_t pinv = 0; pinv < (1u << k); ++pinv) {
      auto t = target.table, c = target.care;
      for (int j = 0; j < k; ++j)
        if (pinv >> j & 1u) {
          t = flip_var(t, k, j);
          c = flip_var(c, k, j);
        }
      if (auto sram = implements_direct(ba, TruthTable(k, t), c)) {
        MatchSolution sol;
        for (int v : pin_map)
          sol.pin_vars.push_back(shrunk.vars[static_cast<std::size_t>(v)]);
        sol.pinv = pinv;
        sol.sram = *sram;
        found = std::move(sol);
        return true;
      }
    }
    return false;
  });
  return found;
}

std::vector<bool> match_entries(const BitAssignment& ba, const std::vector<FuncLibEntry>& entries,
                                int jobs) {
  std::vector<char> hit(entries.size(), 0);
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    hit[i] = match(ba, entries[i].canon).has_value();
  });
  return {hit.begin(), hit.end()};
}

CoverageReport coverage(const BitAssignment& ba, const FuncLib& lib, int nvars, bool weighted,
                        int jobs) {
  if (nvars > ba.num_inputs())
    throw UsageError("coverage: nvars " + std::to_string(nvars) + " exceeds K=" +
                     std::to_string(ba.num_inputs()));
  CoverageReport r;
  if (nvars < 1)
    return r;
  const auto entries = lib.entries(nvars);
  const auto hit = match_entries(ba, entries, jobs);
  std::uint64_t mass = 0, matched_mass = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ++r.total;
    mass += entries[i].n_cutbest;
    if (hit[i]) {
      ++r.matched;
      matched_mass += entries[i].n_cutbest;
    }
  }
  if (weighted && mass > 0)
    r.weighted_rate = static_cast<double>(matched_mass) / static_cast<double>(mass);
  else
    r.weighted_rate = r.rate();
  return r;
}

} // namespace dslut
