#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dslut {

/// Connection pattern between the DSLUT's data SRAM bits and the 2^k data
/// inputs of its MUX tree. Position p is read when the (inverted) select
/// lines spell p; `bit(p)` names the SRAM bit driving it. Every input pin
/// carries a programmable inverter, so the configuration also has k PINV bits.
class BitAssignment {
public:
  BitAssignment() = default;
  /// Throws UsageError unless ids are contiguous from 0 and all used.
  BitAssignment(int num_inputs, std::vector<std::uint8_t> assign);

  /// Conventional LUT-k: every position has its own bit.
  static BitAssignment full_lut(int num_inputs);
  /// Ids renumbered by first occurrence; any labels are accepted.
  static BitAssignment from_labels(int num_inputs, std::span<const int> labels);

  int num_inputs() const { return num_inputs_; }
  int num_positions() const { return 1 << num_inputs_; }
  int num_bits() const { return num_bits_; }
  int num_pinv() const { return num_inputs_; }
  bool is_full_lut() const { return num_bits_ == num_positions(); }

  std::uint8_t bit(unsigned position) const { return assign_[position]; }
  std::span<const std::uint8_t> assign() const { return assign_; }

  /// Positions driven by each bit id, one word per id.
  const std::vector<std::uint64_t>& class_masks() const { return class_masks_; }

  friend bool operator==(const BitAssignment&, const BitAssignment&) = default;

private:
  int num_inputs_ = 0;
  int num_bits_ = 0;
  std::vector<std::uint8_t> assign_;
  std::vector<std::uint64_t> class_masks_;
};

/// True when every SRAM class of `fine` lies inside one class of `coarse`.
bool refines(const BitAssignment& fine, const BitAssignment& coarse);

/// `dslut v1` text format.
std::string write_bit_assignment(const BitAssignment& ba);
BitAssignment parse_bit_assignment(std::string_view text);
BitAssignment read_bit_assignment_file(const std::string& path);

} // namespace dslut
