#include "dslut/gen.hpp"

#include "dslut/error.hpp"
#include "dslut/match.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace dslut {

namespace {

// Signature words of every position: bit i of word (i / 64) is table i at p.
std::vector<std::vector<std::uint64_t>> signatures(std::span<const TruthTable> tables) {
  const int k = tables.front().num_vars();
  const std::size_t words = (tables.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> sig(std::size_t{1} << k, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].num_vars() != k)
      throw UsageError("compute_cost: all truth tables must have the same variable count");
    for (std::size_t p = 0; p < sig.size(); ++p)
      if (tables[i].bit(static_cast<unsigned>(p)))
        sig[p][i / 64] |= 1ull << (i % 64);
  }
  return sig;
}

} // namespace

std::size_t compute_cost(std::span<const TruthTable> tables) {
  if (tables.empty())
    return 0;
  auto sig = signatures(tables);
  std::sort(sig.begin(), sig.end());
  return static_cast<std::size_t>(std::unique(sig.begin(), sig.end()) - sig.begin());
}

BitAssignment assignment_from_tables(std::span<const TruthTable> tables) {
  if (tables.empty())
    throw UsageError("assignment_from_tables: empty list");
  const auto sig = signatures(tables);
  std::map<std::vector<std::uint64_t>, int> ids;
  std::vector<int> labels;
  for (const auto& s : sig)
    labels.push_back(ids.try_emplace(s, static_cast<int>(ids.size())).first->second);
  return BitAssignment::from_labels(tables.front().num_vars(), labels);
}

InitResult heuristic_init(const FuncLib& lib, int k, std::size_t num_top) {
  if (num_top == 0)
    throw UsageError("heuristic_init: need at least one top function");
  auto entries = lib.entries(k);
  if (entries.empty())
    throw UsageError("library has no " + std::to_string(k) + "-input functions");
  std::stable_sort(entries.begin(), entries.end(), [](const FuncLibEntry& a, const FuncLibEntry& b) {
    return a.n_cutbest > b.n_cutbest;
  });
  entries.resize(std::min(num_top, entries.size()));

  InitResult r;
  r.chosen.push_back(entries.front().canon);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    std::size_t cost_min = std::numeric_limits<std::size_t>::max();
    TruthTable pick;
    r.chosen.emplace_back();
    for (const auto& cand : npn_enum_class(entries[i].canon)) {
      r.chosen.back() = cand;
      const auto cost = compute_cost(r.chosen);
      if (cost < cost_min) {
        cost_min = cost;
        pick = cand;
      }
    }
    r.chosen.back() = pick;
  }
  r.ba = assignment_from_tables(r.chosen);
  return r;
}

std::vector<int> DistinctionMap::splittable() const {
  std::map<int, int> size;
  for (int c : ext_class)
    ++size[c];
  std::vector<int> out;
  for (std::size_t p = 0; p < ext_class.size(); ++p)
    if (size[ext_class[p]] > 1)
      out.push_back(static_cast<int>(p));
  return out;
}

DistinctionMap identity_distinctions(const BitAssignment& ba) {
  DistinctionMap dm;
  for (auto b : ba.assign()) {
    dm.ext_class.push_back(b);
    dm.init_class.push_back(b);
  }
  return dm;
}

Extension extend_ba(const BitAssignment& ba) {
  Extension e;
  e.dm = identity_distinctions(ba);
  e.ba = ba;
  if (ba.num_inputs() < 4)
    return e;
  std::vector<int> labels(ba.assign().begin(), ba.assign().end());
  std::vector<bool> kept(static_cast<std::size_t>(ba.num_bits()), false);
  int fresh = ba.num_bits();
  for (int p = 0; p < 16; ++p) {
    auto& l = labels[static_cast<std::size_t>(p)];
    if (!kept[static_cast<std::size_t>(l)])
      kept[static_cast<std::size_t>(l)] = true;
    else
      l = fresh++;
  }
  e.ba = BitAssignment::from_labels(ba.num_inputs(), labels);
  e.dm.ext_class.assign(e.ba.assign().begin(), e.ba.assign().end());
  e.applied = true;
  return e;
}

namespace {

struct Objective {
  std::vector<FuncLibEntry> entries;
  bool use_weights = false;
  std::uint64_t mass = 0;

  Objective(const FuncLib& lib, int k, int min_nvars, bool weighted) {
    for (int n = std::max(1, min_nvars); n <= k; ++n)
      for (auto& e : lib.entries(n))
        entries.push_back(e);
    for (const auto& e : entries)
      mass += e.n_cutbest;
    use_weights = weighted && mass > 0;
  }

  double operator()(const BitAssignment& ba, int jobs, std::vector<bool>* hits = nullptr) const {
    if (entries.empty())
      return 1.0;
    auto hit = match_entries(ba, entries, jobs);
    std::uint64_t got = 0, count = 0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (hit[i]) {
        got += entries[i].n_cutbest;
        ++count;
      }
    if (hits)
      *hits = std::move(hit);
    return use_weights ? static_cast<double>(got) / static_cast<double>(mass)
                       : static_cast<double>(count) / static_cast<double>(entries.size());
  }
};

// Label vector -> assignment, applying the ownership repair.
class Decoder {
public:
  Decoder(const BitAssignment& ext, const DistinctionMap& dm)
      : k_(ext.num_inputs()), dm_(dm), splittable_(dm.splittable()) {}

  const std::vector<int>& splittable() const { return splittable_; }

  BitAssignment decode(const std::vector<int>& labels, std::vector<int>* owner_out = nullptr) const {
    const auto n = dm_.ext_class.size();
    std::vector<int> key(dm_.ext_class.begin(), dm_.ext_class.end());
    std::map<int, int> owner; // extra label -> ext class
    for (std::size_t i = 0; i < splittable_.size(); ++i) {
      const int e = labels[i];
      if (e == 0)
        continue;
      const auto p = static_cast<std::size_t>(splittable_[i]);
      const int c = dm_.ext_class[p];
      const auto [it, inserted] = owner.try_emplace(e, c);
      if (it->second == c)
        key[p] = static_cast<int>(n) + e;
    }
    if (owner_out) {
      owner_out->clear();
      for (const auto& [e, c] : owner)
        owner_out->push_back(e);
    }
    return BitAssignment::from_labels(k_, key);
  }

private:
  int k_;
  const DistinctionMap& dm_;
  std::vector<int> splittable_;
};

// Orientation of `f` with the fewest conflicted SRAM classes under `ba`.
struct Orientation {
  std::uint64_t table = 0, care = 0;
  int conflicts = std::numeric_limits<int>::max();
};

Orientation best_orientation(const BitAssignment& ba, const TruthTable& f) {
  const int k = ba.num_inputs();
  const auto shrunk = shrink_to_support(f);
  const int s = static_cast<int>(shrunk.vars.size());
  Orientation best;
  if (s == 0 || s > k)
    return best;
  for_each_pin_map(k, s, [&](const std::vector<int>& pin_map) {
    const auto target = induce_pin_target(shrunk.table, s, pin_map, k);
    for (std::uint32_t pinv = 0; pinv < (1u << k); ++pinv) {
      auto t = target.table, c = target.care;
      for (int j = 0; j < k; ++j)
        if (pinv >> j & 1u) {
          t = flip_var(t, k, j);
          c = flip_var(c, k, j);
        }
      int conflicts = 0;
      for (auto m : ba.class_masks()) {
        const auto v = t & c & m;
        if (v != 0 && v != (c & m) && ++conflicts >= best.conflicts)
          break;
      }
      if (conflicts < best.conflicts)
        best = {t, c, conflicts};
      if (best.conflicts == 0)
        return true;
    }
    return false;
  });
  return best;
}

} // namespace

double objective(const BitAssignment& ba, const FuncLib& lib, int min_nvars, bool weighted, int jobs) {
  return Objective(lib, ba.num_inputs(), min_nvars, weighted)(ba, jobs);
}

SearchResult search(const BitAssignment& ext, const DistinctionMap& dm, const FuncLib& lib,
                    const SearchParams& params) {
  const int k = ext.num_inputs();
  if (params.budget > ext.num_positions())
    throw UsageError("budget " + std::to_string(params.budget) + " exceeds 2^K = " +
                     std::to_string(ext.num_positions()));
  if (params.budget < ext.num_bits())
    throw UsageError("budget " + std::to_string(params.budget) + " is below the " +
                     std::to_string(ext.num_bits()) + " classes the extended assignment must keep apart");
  if (dm.ext_class.size() != static_cast<std::size_t>(ext.num_positions()))
    throw UsageError("distinction map does not match the assignment");

  const Objective obj(lib, k, params.min_nvars, params.weighted);
  SearchResult r;
  r.best = ext;
  if (params.evals == 0) {
    r.best_objective = r.initial_objective = obj(ext, params.jobs);
    return r;
  }

  if (params.budget == ext.num_positions()) {
    // Every refinement is allowed, and the full LUT refines all of them.
    r.best = BitAssignment::full_lut(k);
    r.initial_objective = obj(ext, params.jobs);
    r.best_objective = obj(r.best, params.jobs);
    r.evaluations = 2;
    return r;
  }

  const Decoder decoder(ext, dm);
  const auto& movable = decoder.splittable();
  const int extra = params.budget - ext.num_bits();
  std::mt19937_64 rng(params.seed);

  std::vector<int> best_labels(movable.size(), 0);
  std::vector<bool> best_hits;
  r.best_objective = r.initial_objective = obj(ext, params.jobs, &best_hits);
  r.evaluations = 1;
  std::map<std::vector<std::uint8_t>, double> seen;
  seen.emplace(std::vector<std::uint8_t>(ext.assign().begin(), ext.assign().end()), r.best_objective);

  auto report = [&] {
    if (params.progress && r.evaluations % 100 == 0)
      params.progress(r.evaluations, r.best_objective);
  };
  report();

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> any_label(0, std::max(0, extra));

  while (r.evaluations < params.evals) {
    std::vector<int> labels = best_labels;
    const bool guided = coin(rng) >= 0.25;
    if (extra > 0 && !movable.empty()) {
      if (!guided) {
        for (auto& l : labels)
          l = any_label(rng);
      } else {
        // Pick a failing function, weighted by occurrence.
        std::vector<double> weights;
        for (std::size_t i = 0; i < obj.entries.size(); ++i)
          weights.push_back(best_hits[i] ? 0.0 : 1.0 + static_cast<double>(obj.entries[i].n_cutbest));
        const bool any_fail = std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0; });
        if (any_fail) {
          std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
          const auto& f = obj.entries[pick(rng)].canon;
          const auto ori = best_orientation(r.best, f);
          std::vector<std::uint64_t> conflicted;
          for (auto m : r.best.class_masks()) {
            const auto v = ori.table & ori.care & m;
            if (v != 0 && v != (ori.care & m))
              conflicted.push_back(m);
          }
          if (!conflicted.empty()) {
            const auto m = conflicted[std::uniform_int_distribution<std::size_t>(0, conflicted.size() - 1)(rng)];
            const auto ones = ori.table & ori.care & m;
            const auto zeros = ~ori.table & ori.care & m;
            const auto minority = std::popcount(ones) <= std::popcount(zeros) ? ones : zeros;
            std::vector<int> owned;
            decoder.decode(best_labels, &owned);
            std::vector<int> free_labels;
            for (int e = 1; e <= extra; ++e)
              if (!std::binary_search(owned.begin(), owned.end(), e))
                free_labels.push_back(e);
            const int target =
                free_labels.empty()
                    ? std::uniform_int_distribution<int>(1, extra)(rng)
                    : free_labels[std::uniform_int_distribution<std::size_t>(0, free_labels.size() - 1)(rng)];
            for (std::size_t i = 0; i < movable.size(); ++i)
              if (minority >> movable[i] & 1u)
                labels[i] = target;
          }
        }
      }
    }
    const auto cand = decoder.decode(labels);
    std::vector<std::uint8_t> key(cand.assign().begin(), cand.assign().end());
    double value;
    std::vector<bool> hits;
    if (const auto it = seen.find(key); it != seen.end()) {
      value = it->second;
    } else {
      value = obj(cand, params.jobs, &hits);
      seen.emplace(std::move(key), value);
    }
    ++r.evaluations;
    if (value > r.best_objective) {
      r.best_objective = value;
      r.best = cand;
      best_labels = labels;
      best_hits = std::move(hits);
    }
    report();
  }
  return r;
}

GenResult generate(const FuncLib& lib, const GenParams& params) {
  const int k = params.k;
  if (k < 2 || k > TruthTable::kMaxVars)
    throw UsageError("K must be in [2,6]");
  if (params.bits < 1 || params.bits > (1 << k))
    throw UsageError("bits must be in [1, 2^K]");
  auto log = [&](const std::string& msg) {
    if (params.log)
      params.log(msg);
  };

  GenResult g;
  InitResult init;
  std::size_t top = std::min(params.top_funcs, lib.entries(k).size());
  if (top == 0)
    throw UsageError("library has no " + std::to_string(k) + "-input functions");
  while (true) {
    init = heuristic_init(lib, k, top);
    if (init.ba.num_bits() <= params.bits)
      break;
    if (top == 1)
      throw UsageError("budget of " + std::to_string(params.bits) +
                       " bits cannot hold even the most frequent function (" +
                       std::to_string(init.ba.num_bits()) + " bits)");
    log("warning: " + std::to_string(top) + " top functions need " +
        std::to_string(init.ba.num_bits()) + " bits; dropping the last one");
    --top;
  }
  g.top_used = top;
  g.init = init.ba;

  Extension ext{init.ba, identity_distinctions(init.ba), false};
  if (k < 4) {
    log("warning: K < 4, LUT4 extension skipped");
  } else {
    auto e = extend_ba(init.ba);
    if (e.ba.num_bits() <= params.bits)
      ext = std::move(e);
    else
      log("warning: LUT4 extension needs " + std::to_string(e.ba.num_bits()) + " bits, budget is " +
          std::to_string(params.bits) + "; extension skipped");
  }
  g.extended = ext.applied;
  g.ext = ext.ba;
  g.min_nvars = g.extended ? std::min(5, k) : 2;

  SearchParams sp;
  sp.budget = params.bits;
  sp.evals = params.evals;
  sp.seed = params.seed;
  sp.min_nvars = g.min_nvars;
  sp.weighted = params.weighted;
  sp.jobs = params.jobs;
  sp.progress = [&](std::size_t n, double best) {
    std::ostringstream m;
    m << "eval " << n << " best coverage " << best;
    log(m.str());
  };
  const auto res = search(ext.ba, ext.dm, lib, sp);
  g.best = res.best;
  g.ext_objective = res.initial_objective;
  g.best_objective = res.best_objective;
  return g;
}

} // namespace dslut
