#include "dslut/cegar.hpp"

#include "dslut/error.hpp"

#include <array>
#include <climits>
#include <span>
#include <unordered_map>

namespace dslut {

bool PlbCircuit::eval(const std::vector<bool>& config, std::uint32_t minterm) const {
  std::vector<char> v(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    switch (g.kind) {
    case PlbGate::Kind::Pin: v[i] = (minterm >> g.a) & 1u; break;
    case PlbGate::Kind::Config: v[i] = config[static_cast<std::size_t>(g.a)]; break;
    case PlbGate::Kind::Xor: v[i] = v[static_cast<std::size_t>(g.a)] ^ v[static_cast<std::size_t>(g.b)]; break;
    case PlbGate::Kind::Mux:
      v[i] = v[static_cast<std::size_t>(g.a)] ? v[static_cast<std::size_t>(g.c)] : v[static_cast<std::size_t>(g.b)];
      break;
    }
  }
  return v[static_cast<std::size_t>(output)];
}

std::uint64_t PlbCircuit::table(const std::vector<bool>& config) const {
  std::vector<std::uint64_t> v(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    const auto a = static_cast<std::size_t>(g.a), b = static_cast<std::size_t>(g.b),
               c = static_cast<std::size_t>(g.c);
    switch (g.kind) {
    case PlbGate::Kind::Pin: v[i] = TruthTable::var_mask(num_pins, g.a); break;
    case PlbGate::Kind::Config: v[i] = config[a] ? ~0ull : 0; break;
    case PlbGate::Kind::Xor: v[i] = v[a] ^ v[b]; break;
    case PlbGate::Kind::Mux: v[i] = (v[a] & v[c]) | (~v[a] & v[b]); break;
    }
  }
  return v[static_cast<std::size_t>(output)] & TruthTable::mask(num_pins);
}

PlbCircuit encode_plb(const BitAssignment& ba, const MuxTree& tree, bool with_pinv) {
  PlbCircuit plb;
  const int k = ba.num_inputs();
  plb.num_pins = k;
  const int sram_base = with_pinv ? k : 0;
  plb.num_config = sram_base + ba.num_bits();
  auto add = [&](PlbGate g) {
    plb.gates.push_back(g);
    return static_cast<int>(plb.gates.size()) - 1;
  };
  std::vector<int> select(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const int pin = add({PlbGate::Kind::Pin, j});
    select[static_cast<std::size_t>(j)] =
        with_pinv ? add({PlbGate::Kind::Xor, pin, add({PlbGate::Kind::Config, j})}) : pin;
  }
  std::vector<int> sram(static_cast<std::size_t>(ba.num_bits()));
  for (int b = 0; b < ba.num_bits(); ++b)
    sram[static_cast<std::size_t>(b)] = add({PlbGate::Kind::Config, sram_base + b});
  std::vector<int> node_gate(tree.nodes.size());
  auto gate_of = [&](const MuxRef& r) {
    return r.leaf ? sram[r.id] : node_gate[r.id];
  };
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    node_gate[i] = add({PlbGate::Kind::Mux, select[static_cast<std::size_t>(n.level)], gate_of(n.child0),
                        gate_of(n.child1)});
  }
  plb.output = gate_of(tree.root);
  return plb;
}

namespace {

constexpr int kTrue = INT_MAX;
constexpr int kFalse = -INT_MAX;

bool is_const(int lit) { return lit == kTrue || lit == kFalse; }

template <typename Sink>
void add_folded(Sink& cnf, std::initializer_list<int> lits) {
  std::array<int, 3> clause{};
  std::size_t n = 0;
  for (int l : lits) {
    if (l == kTrue)
      return;
    if (l != kFalse)
      clause[n++] = l;
  }
  cnf.add_clause(std::span<const int>(clause.data(), n));
}

struct GateKey {
  int kind, a, b, c;
  friend bool operator==(const GateKey&, const GateKey&) = default;
};

struct GateKeyHash {
  std::size_t operator()(const GateKey& k) const {
    std::uint64_t h = static_cast<std::uint32_t>(k.kind);
    for (int v : {k.a, k.b, k.c})
      h = (h ^ static_cast<std::uint32_t>(v)) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Aux variable already defined for a gate over the same operand literals.
// Minterms agreeing on the low select bits share their lower MUX levels.
using TseitinMemo = std::unordered_map<GateKey, int, GateKeyHash>;

// Sink is Cnf or DpllSolver: anything with new_var() and add_clause(span).
template <typename Sink>
void encode_minterm_into(const PlbCircuit& plb, std::uint32_t minterm, bool value, Sink& cnf,
                         std::vector<int>& lit, TseitinMemo* memo = nullptr) {
  auto reuse = [&](GateKey key, bool& fresh) {
    fresh = true;
    if (!memo)
      return cnf.new_var();
    auto [it, inserted] = memo->try_emplace(key, 0);
    if (inserted)
      it->second = cnf.new_var();
    fresh = inserted;
    return it->second;
  };
  lit.assign(plb.gates.size(), kFalse);
  for (std::size_t i = 0; i < plb.gates.size(); ++i) {
    const auto& g = plb.gates[i];
    switch (g.kind) {
    case PlbGate::Kind::Pin:
      lit[i] = ((minterm >> g.a) & 1u) ? kTrue : kFalse;
      break;
    case PlbGate::Kind::Config:
      lit[i] = g.a + 1;
      break;
    case PlbGate::Kind::Xor: {
      const int a = lit[static_cast<std::size_t>(g.a)], b = lit[static_cast<std::size_t>(g.b)];
      if (is_const(a))
        lit[i] = a == kTrue ? -b : b;
      else if (is_const(b))
        lit[i] = b == kTrue ? -a : a;
      else if (a == b)
        lit[i] = kFalse;
      else if (a == -b)
        lit[i] = kTrue;
      else {
        bool fresh;
        const int y = reuse({0, a, b, 0}, fresh);
        if (fresh) {
          add_folded(cnf, {-a, -b, -y});
          add_folded(cnf, {a, b, -y});
          add_folded(cnf, {a, -b, y});
          add_folded(cnf, {-a, b, y});
        }
        lit[i] = y;
      }
      break;
    }
    case PlbGate::Kind::Mux: {
      const int s = lit[static_cast<std::size_t>(g.a)];
      const int i0 = lit[static_cast<std::size_t>(g.b)], i1 = lit[static_cast<std::size_t>(g.c)];
      if (is_const(s))
        lit[i] = s == kTrue ? i1 : i0;
      else if (i0 == i1)
        lit[i] = i0;
      else if (i0 == kFalse && i1 == kTrue)
        lit[i] = s;
      else if (i0 == kTrue && i1 == kFalse)
        lit[i] = -s;
      else {
        bool fresh;
        const int y = reuse({1, s, i0, i1}, fresh);
        if (fresh) {
          add_folded(cnf, {s, -i0, y});
          add_folded(cnf, {s, i0, -y});
          add_folded(cnf, {-s, -i1, y});
          add_folded(cnf, {-s, i1, -y});
        }
        lit[i] = y;
      }
      break;
    }
    }
  }
  const int out = lit[static_cast<std::size_t>(plb.output)];
  add_folded(cnf, {value ? out : -out});
}

} // namespace

void encode_minterm(const PlbCircuit& plb, std::uint32_t minterm, bool value, Cnf& cnf) {
  if (cnf.num_vars < plb.num_config)
    throw InternalError("encode_minterm: CNF lacks the configuration variables");
  std::vector<int> scratch;
  encode_minterm_into(plb, minterm, value, cnf, scratch);
}

Cnf cegar_initial_cnf(const PlbCircuit& plb, std::uint64_t table, std::uint64_t care) {
  Cnf cnf;
  cnf.num_vars = plb.num_config;
  care &= TruthTable::mask(plb.num_pins);
  if (care != 0) {
    const auto m = static_cast<std::uint32_t>(__builtin_ctzll(care));
    encode_minterm(plb, m, (table >> m) & 1u, cnf);
  }
  return cnf;
}

std::optional<std::vector<bool>> cegar_match(const PlbCircuit& plb, std::uint64_t table,
                                             std::uint64_t care, CegarStats* stats) {
  care &= TruthTable::mask(plb.num_pins);
  thread_local DpllSolver solver;
  solver.reset();
  while (solver.num_vars() < plb.num_config)
    solver.new_var();
  thread_local std::vector<int> scratch;
  thread_local TseitinMemo memo;
  memo.clear();
  if (care != 0) {
    const auto m = static_cast<std::uint32_t>(__builtin_ctzll(care));
    encode_minterm_into(plb, m, (table >> m) & 1u, solver, scratch, &memo);
  }
  const int cap = (1 << plb.num_pins) + 1;
  std::vector<int> differs;
  for (int iter = 1; iter <= cap; ++iter) {
    const auto r = solver.solve();
    if (stats) {
      ++stats->iterations;
      stats->decisions += r.decisions;
    }
    if (!r.satisfiable)
      return std::nullopt;
    std::vector<bool> config(r.model.begin() + 1, r.model.begin() + 1 + plb.num_config);
    const auto wrong = (plb.table(config) ^ table) & care;
    if (wrong == 0)
      return config;
    const auto cex = static_cast<std::uint32_t>(__builtin_ctzll(wrong));
    encode_minterm_into(plb, cex, (table >> cex) & 1u, solver, scratch, &memo);
    // The solver returns the lexicographically least model, so every config
    // below this candidate was already refuted; adding minterms keeps it so.
    // Encoding that as clauses lets the next round skip the refuted prefix.
    differs.clear();
    for (int v = 1; v <= plb.num_config; ++v) {
      if (config[static_cast<std::size_t>(v - 1)]) {
        differs.push_back(v);
        solver.add_clause(differs);
        differs.back() = -v;
      } else {
        differs.push_back(v);
      }
    }
  }
  throw InternalError("CEGAR exceeded " + std::to_string(cap) + " iterations");
}

std::optional<MatchSolution> cegar_match_pins(const BitAssignment& ba, const TruthTable& f,
                                              CegarStats* stats) {
  const int k = ba.num_inputs();
  const auto shrunk = shrink_to_support(f);
  const int s = static_cast<int>(shrunk.vars.size());
  if (s > k)
    return std::nullopt;
  if (s == 0)
    return match(ba, f);
  const auto plb = encode_plb(ba, build_mux_tree(ba), true);
  std::optional<MatchSolution> found;
  for_each_pin_map(k, s, [&](const std::vector<int>& pin_map) {
    const auto target = induce_pin_target(shrunk.table, s, pin_map, k);
    const auto config = cegar_match(plb, target.table, target.care, stats);
    if (!config)
      return false;
    MatchSolution sol;
    for (int v : pin_map)
      sol.pin_vars.push_back(shrunk.vars[static_cast<std::size_t>(v)]);
    for (int j = 0; j < k; ++j)
      if ((*config)[static_cast<std::size_t>(j)])
        sol.pinv |= 1u << j;
    for (int b = 0; b < ba.num_bits(); ++b)
      if ((*config)[static_cast<std::size_t>(k + b)])
        sol.sram |= 1ull << b;
    found = std::move(sol);
    return true;
  });
  return found;
}

} // namespace dslut
