#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dslut {

/// One PLB flavor (e.g. lut5, dslut6, lut6).
struct PlbVariant {
  std::string name;
  int num_sram = 0;
  double mux_tree_area = 0;     ///< um^2
  double input_buffer_area = 0; ///< um^2
  double other_buffer_area = 0; ///< um^2
  double crossbar_area = 0;     ///< um^2 per CLB
  std::vector<double> delays;   ///< ps, input[0] first

  int num_inputs() const { return static_cast<int>(delays.size()); }
};

/// Area/delay constants. Global keys apply to every variant.
struct ArchModel {
  double per_sram_area = 0; ///< um^2 per SRAM bit
  int plb_per_clb = 0;
  double ff_area = 0;       ///< all flip-flops of a CLB
  double out_mux_area = 0;
  double carry_area = 0;
  double pinv_delay = 0;    ///< ps added by a programmable inverter
  std::map<std::string, PlbVariant> variants;

  /// Throws UsageError for an unknown variant.
  const PlbVariant& variant(const std::string& name) const;
};

/// `key = value` lines; '#' starts a comment. Global keys: per_sram_area,
/// plb_per_clb, ff_area, out_mux_area, carry_area, pinv_delay. Per-variant
/// keys take a `.name` suffix: num_sram, mux_tree_area, input_buffer_area,
/// other_buffer_area, crossbar_area, delay (comma-separated). Unknown keys,
/// duplicates, negative values and incomplete variants are parse errors.
ArchModel parse_arch(std::string_view text);
ArchModel read_arch_file(const std::string& path);

/// num_sram * per_sram_area + MUX tree + input buffer + other buffer.
double plb_area(const ArchModel& m, const PlbVariant& v, int num_sram);
inline double plb_area(const ArchModel& m, const PlbVariant& v) { return plb_area(m, v, v.num_sram); }

/// plb_per_clb * plb + FF + crossbar + output MUX + carry.
double clb_area(const ArchModel& m, const PlbVariant& v, double plb);

/// Mean per-input delay, plus pinv_delay when `with_pinv`.
double avg_delay(const ArchModel& m, const PlbVariant& v, bool with_pinv = false);

} // namespace dslut
