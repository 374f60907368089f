#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dslut {

/// Truth table of a single-output function over 2..6 variables.
///
/// Position p holds f(x) where x_i is bit i of p, so variable 0 toggles
/// fastest. For two variables the positions are (a'b', ab', a'b, ab).
/// Bits at positions >= 2^k are always zero.
class TruthTable {
public:
  static constexpr int kMinVars = 2;
  static constexpr int kMaxVars = 6;

  TruthTable() = default;
  TruthTable(int num_vars, std::uint64_t bits);

  int num_vars() const { return num_vars_; }
  int num_bits() const { return 1 << num_vars_; }
  std::uint64_t bits() const { return bits_; }

  /// All-ones word over the 2^k valid positions.
  static std::uint64_t mask(int num_vars);
  /// Positions where variable `var` is 1 (0xaaaa.. for var 0).
  static std::uint64_t var_mask(int num_vars, int var);

  bool bit(unsigned position) const { return (bits_ >> position) & 1u; }

  /// Lowercase hex, most significant position first, 2^k/4 digits (1 for k=2).
  std::string to_hex() const;
  /// Variable count is inferred from the digit count unless `num_vars` > 0.
  static TruthTable from_hex(std::string_view hex, int num_vars = 0);

  TruthTable operator~() const { return {num_vars_, ~bits_ & mask(num_vars_)}; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable& a, const TruthTable& b) {
    if (auto c = a.num_vars_ <=> b.num_vars_; c != 0)
      return c;
    return a.bits_ <=> b.bits_;
  }

private:
  int num_vars_ = 2;
  std::uint64_t bits_ = 0;
};

/// g(x) = f(y) ^ output_negated, where y_i = x_{perm[i]} ^ bit i of input_mask.
///
/// That is, variable i of the source function is driven by variable perm[i]
/// of the result, optionally inverted.
struct NpnTransform {
  std::vector<int> perm;
  std::uint32_t input_mask = 0;
  bool output_negated = false;

  static NpnTransform identity(int num_vars);
  NpnTransform inverse() const;
  bool valid_for(int num_vars) const;

  friend bool operator==(const NpnTransform&, const NpnTransform&) = default;
};

bool eval(const TruthTable& tt, std::uint32_t minterm);

TruthTable apply_transform(const TruthTable& tt, const NpnTransform& t);

/// Negates variable `var` (swaps the two cofactors).
std::uint64_t flip_var(std::uint64_t bits, int num_vars, int var);

/// Sorted indices of the variables the function depends on.
std::vector<int> support(const TruthTable& tt);

/// Function re-expressed over its support only. Support variables are packed
/// to the lowest indices preserving their order; the result has
/// max(2, |support|) variables and `vars[i]` is the original index of i.
struct ShrunkFunction {
  TruthTable table;
  std::vector<int> vars;
};
ShrunkFunction shrink_to_support(const TruthTable& tt);

/// Exact NPN canonical form: numerically smallest table over the whole
/// 2^(k+1)·k! transform group, plus a transform t with
/// apply_transform(tt, t) == canonical.
std::pair<TruthTable, NpnTransform> npn_canonical(const TruthTable& tt);

/// Every distinct function NPN-equivalent to `tt`, ascending.
std::vector<TruthTable> npn_enum_class(const TruthTable& tt);

/// Number of NPN classes over all 2^(2^k) functions of k variables, by
/// canonicalizing every function. k=5 requires `allow_long_running`.
std::uint64_t count_npn_classes(int num_vars, bool allow_long_running = false);

/// 2^(k+1)·k!
std::uint64_t npn_group_size(int num_vars);

} // namespace dslut
