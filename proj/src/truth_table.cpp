#include "dslut/truth_table.hpp"

#include "dslut/error.hpp"

#include <algorithm>
#include <numeric>

namespace dslut {

namespace {

constexpr std::array<std::uint64_t, 6> kVarMasks = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull};

void check_vars(int num_vars) {
  if (num_vars < TruthTable::kMinVars || num_vars > TruthTable::kMaxVars)
    throw UsageError("truth table variable count must be in [2,6], got " +
                     std::to_string(num_vars));
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

// Table with source variable i moved to position perm[i].
std::uint64_t permute_bits(std::uint64_t bits, int num_vars, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  const unsigned n = 1u << num_vars;
  for (unsigned p = 0; p < n; ++p) {
    unsigned q = 0;
    for (int i = 0; i < num_vars; ++i)
      q |= ((p >> perm[i]) & 1u) << i;
    out |= ((bits >> q) & 1u) << p;
  }
  return out;
}

} // namespace

TruthTable::TruthTable(int num_vars, std::uint64_t bits) : num_vars_(num_vars) {
  check_vars(num_vars);
  bits_ = bits & mask(num_vars);
}

std::uint64_t TruthTable::mask(int num_vars) {
  return num_vars >= 6 ? ~0ull : (1ull << (1u << num_vars)) - 1;
}

std::uint64_t TruthTable::var_mask(int num_vars, int var) {
  return kVarMasks[static_cast<std::size_t>(var)] & mask(num_vars);
}

std::string TruthTable::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = std::max(1, num_bits() / 4);
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int d = 0; d < digits; ++d)
    out[static_cast<std::size_t>(digits - 1 - d)] = kDigits[(bits_ >> (4 * d)) & 0xf];
  return out;
}

TruthTable TruthTable::from_hex(std::string_view hex, int num_vars) {
  if (hex.starts_with("0x") || hex.starts_with("0X"))
    hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 16)
    throw UsageError("bad truth table '" + std::string(hex) + "'");
  if (num_vars == 0) {
    switch (hex.size()) {
    case 1: num_vars = 2; break;
    case 2: num_vars = 3; break;
    case 4: num_vars = 4; break;
    case 8: num_vars = 5; break;
    case 16: num_vars = 6; break;
    default:
      throw UsageError("cannot infer variable count from " + std::to_string(hex.size()) +
                       " hex digits");
    }
  }
  check_vars(num_vars);
  std::uint64_t bits = 0;
  for (char c : hex) {
    const int d = hex_digit(c);
    if (d < 0)
      throw UsageError("bad hex digit in truth table '" + std::string(hex) + "'");
    bits = (bits << 4) | static_cast<std::uint64_t>(d);
  }
  if (bits & ~mask(num_vars))
    throw UsageError("truth table '" + std::string(hex) + "' has bits beyond 2^" +
                     std::to_string(num_vars) + " positions");
  return {num_vars, bits};
}

NpnTransform NpnTransform::identity(int num_vars) {
  NpnTransform t;
  t.perm.resize(static_cast<std::size_t>(num_vars));
  std::iota(t.perm.begin(), t.perm.end(), 0);
  return t;
}

NpnTransform NpnTransform::inverse() const {
  NpnTransform inv;
  inv.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    inv.perm[j] = static_cast<int>(i);
    if ((input_mask >> i) & 1u)
      inv.input_mask |= 1u << j;
  }
  inv.output_negated = output_negated;
  return inv;
}

bool NpnTransform::valid_for(int num_vars) const {
  if (static_cast<int>(perm.size()) != num_vars)
    return false;
  if (input_mask >> num_vars)
    return false;
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= num_vars || seen[static_cast<std::size_t>(p)])
      return false;
    seen[static_cast<std::size_t>(p)] = true;
  }
  return true;
}

bool eval(const TruthTable& tt, std::uint32_t minterm) {
  if (minterm >= static_cast<std::uint32_t>(tt.num_bits()))
    throw UsageError("minterm " + std::to_string(minterm) + " out of range for " +
                     std::to_string(tt.num_vars()) + " variables");
  return tt.bit(minterm);
}

TruthTable apply_transform(const TruthTable& tt, const NpnTransform& t) {
  const int k = tt.num_vars();
  if (!t.valid_for(k))
    throw UsageError("NPN transform arity does not match a " + std::to_string(k) +
                     "-variable truth table");
  std::uint64_t out = 0;
  const unsigned n = 1u << k;
  for (unsigned p = 0; p < n; ++p) {
    unsigned q = 0;
    for (int i = 0; i < k; ++i)
      q |= (((p >> t.perm[static_cast<std::size_t>(i)]) & 1u) ^ ((t.input_mask >> i) & 1u)) << i;
    out |= static_cast<std::uint64_t>(tt.bit(q) ^ t.output_negated) << p;
  }
  return {k, out};
}

std::uint64_t flip_var(std::uint64_t bits, int num_vars, int var) {
  const std::uint64_t m = TruthTable::var_mask(num_vars, var);
  const unsigned shift = 1u << var;
  return ((bits & m) >> shift) | ((bits << shift) & m);
}

std::vector<int> support(const TruthTable& tt) {
  std::vector<int> vars;
  const int k = tt.num_vars();
  for (int i = 0; i < k; ++i) {
    const std::uint64_t m = TruthTable::var_mask(k, i);
    const std::uint64_t hi = (tt.bits() & m) >> (1u << i);
    const std::uint64_t lo = tt.bits() & ~m & TruthTable::mask(k);
    if (hi != lo)
      vars.push_back(i);
  }
  return vars;
}

ShrunkFunction shrink_to_support(const TruthTable& tt) {
  ShrunkFunction out;
  out.vars = support(tt);
  const int s = static_cast<int>(out.vars.size());
  const int k = std::max(TruthTable::kMinVars, s);
  std::uint64_t bits = 0;
  const unsigned n = 1u << k;
  for (unsigned p = 0; p < n; ++p) {
    unsigned q = 0;
    for (int i = 0; i < s; ++i)
      q |= ((p >> i) & 1u) << out.vars[static_cast<std::size_t>(i)];
    bits |= static_cast<std::uint64_t>(tt.bit(q)) << p;
  }
  // Variables beyond the support do not exist in the shrunk function; keep
  // the table independent of them.
  out.table = TruthTable(k, bits);
  return out;
}

namespace {

// Walks every transform of the group and reports each resulting table.
// Visitor signature: void(std::uint64_t bits, const std::vector<int>& perm,
// std::uint32_t result_mask, bool output_negated), where result_mask flips
// variables of the permuted table.
template <typename Visitor>
void for_each_npn_image(const TruthTable& tt, Visitor&& visit) {
  const int k = tt.num_vars();
  const std::uint64_t full = TruthTable::mask(k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::uint64_t g = permute_bits(tt.bits(), k, perm);
    std::uint32_t mask = 0;
    const std::uint32_t count = 1u << k;
    for (std::uint32_t step = 0; step < count; ++step) {
      if (step) {
        // Gray code: flip the variable of the lowest set bit of step.
        const int var = __builtin_ctz(step);
        g = flip_var(g, k, var);
        mask ^= 1u << var;
      }
      visit(g, perm, mask, false);
      visit(~g & full, perm, mask, true);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

std::pair<TruthTable, NpnTransform> npn_canonical(const TruthTable& tt) {
  const int k = tt.num_vars();
  std::uint64_t best = ~0ull;
  bool have = false;
  std::vector<int> best_perm;
  std::uint32_t best_mask = 0;
  bool best_neg = false;
  for_each_npn_image(tt, [&](std::uint64_t g, const std::vector<int>& perm, std::uint32_t mask,
                             bool neg) {
    if (!have || g < best) {
      have = true;
      best = g;
      best_perm = perm;
      best_mask = mask;
      best_neg = neg;
    }
  });
  NpnTransform t;
  t.perm = best_perm;
  // The flip mask acts on result variables; source variable i is read from
  // result variable perm[i].
  for (int i = 0; i < k; ++i)
    if ((best_mask >> best_perm[static_cast<std::size_t>(i)]) & 1u)
      t.input_mask |= 1u << i;
  t.output_negated = best_neg;
  return {TruthTable(k, best), t};
}

std::vector<TruthTable> npn_enum_class(const TruthTable& tt) {
  std::vector<std::uint64_t> images;
  for_each_npn_image(tt, [&](std::uint64_t g, const std::vector<int>&, std::uint32_t, bool) {
    images.push_back(g);
  });
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  std::vector<TruthTable> out;
  out.reserve(images.size());
  for (auto bits : images)
    out.emplace_back(tt.num_vars(), bits);
  return out;
}

std::uint64_t npn_group_size(int num_vars) {
  std::uint64_t fact = 1;
  for (int i = 2; i <= num_vars; ++i)
    fact *= static_cast<std::uint64_t>(i);
  return (std::uint64_t{1} << (num_vars + 1)) * fact;
}

std::uint64_t count_npn_classes(int num_vars, bool allow_long_running) {
  if (num_vars < TruthTable::kMinVars || num_vars > 5)
    throw UsageError("NPN class counting supports k in [2,4] (5 with the long-running flag)");
  if (num_vars == 5 && !allow_long_running)
    throw UsageError("k=5 enumerates 2^32 functions; pass the long-running flag to proceed");
  const std::uint64_t functions = std::uint64_t{1} << (1u << num_vars);
  // A function is a class representative iff it equals its own canonical form.
  std::uint64_t classes = 0;
  for (std::uint64_t f = 0; f < functions; ++f) {
    const TruthTable tt(num_vars, f);
    if (npn_canonical(tt).first == tt)
      ++classes;
  }
  return classes;
}

} // namespace dslut
