#include "dslut/cli.hpp"

#include "dslut/aig.hpp"
#include "dslut/arch_model.hpp"
#include "dslut/bit_assignment.hpp"
#include "dslut/cegar.hpp"
#include "dslut/error.hpp"
#include "dslut/funclib.hpp"
#include "dslut/gen.hpp"
#include "dslut/mapper.hpp"
#include "dslut/match.hpp"
#include "dslut/mux_tree.hpp"
#include "dslut/parallel.hpp"
#include "dslut/truth_table.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef DSLUT_DEFAULT_ARCH
#define DSLUT_DEFAULT_ARCH "data/arch/table2.arch"
#endif

namespace dslut {

namespace {

struct Options {
  int k = 6;
  int nvars = 0;
  int bits = 26;
  int jobs = 1;
  int top = 20;
  std::size_t top_funcs = 8;
  std::size_t cuts = 8;
  std::size_t evals = 1000;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool unweighted = false;
  bool allow_long = false;
  bool dot = false;
  bool unpruned = false;
  std::string tt, ba, lib, arch = DSLUT_DEFAULT_ARCH, variant, output, method = "partition", dimacs,
                           cache;
  std::vector<std::string> netlists;
};

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f || !(f << text))
    throw UsageError("cannot write '" + path + "'");
}

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("DSLUT_SEED");
  if (!env || !*env)
    return flag;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("DSLUT_SEED must be an unsigned integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<Aig> read_netlists(const std::vector<std::string>& paths) {
  std::vector<Aig> aigs;
  for (const auto& p : paths)
    aigs.push_back(read_aiger_file(p));
  return aigs;
}

std::string percent(double rate) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * rate << '%';
  return s.str();
}

int cmd_npn_count(const Options& o, std::ostream& out) {
  out << count_npn_classes(o.k, o.allow_long) << '\n';
  return kExitOk;
}

int cmd_npn_canon(const Options& o, std::ostream& out) {
  const auto tt = TruthTable::from_hex(o.tt);
  const auto [canon, t] = npn_canonical(tt);
  out << canon.to_hex() << " perm=";
  for (std::size_t i = 0; i < t.perm.size(); ++i)
    out << (i ? "," : "") << t.perm[i];
  out << " mask=" << t.input_mask << " neg=" << (t.output_negated ? 1 : 0) << '\n';
  return kExitOk;
}

int cmd_npn_class(const Options& o, std::ostream& out) {
  const auto members = npn_enum_class(TruthTable::from_hex(o.tt));
  out << "size " << members.size() << '\n';
  for (const auto& m : members)
    out << m.to_hex() << '\n';
  return kExitOk;
}

int cmd_lib_build(const Options& o, std::ostream& out) {
  const auto aigs = read_netlists(o.netlists);
  const auto lib = harvest_library(aigs, o.k, o.exhaustive ? kUnlimitedCuts : o.cuts, o.jobs);
  const auto text = write_funclib(lib);
  if (o.output.empty()) {
    out << text;
  } else {
    write_text(o.output, text);
    out << "harvested " << aigs.size() << " netlists: " << lib.size() << " classes -> " << o.output
        << '\n';
  }
  return kExitOk;
}

int cmd_lib_report(const Options& o, std::ostream& out) {
  const auto lib = read_funclib_file(o.lib);
  std::optional<int> filter;
  if (o.nvars > 0)
    filter = o.nvars;
  if (o.top < 1)
    throw UsageError("--top must be at least 1");
  const auto rows = occurrence_report(lib, filter, static_cast<std::size_t>(o.top));
  out << "rank,tt,nvars,n_cutbest,rate,cumulative\n" << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << i + 1 << ',' << rows[i].entry.canon.to_hex() << ',' << rows[i].entry.nvars << ','
        << rows[i].entry.n_cutbest << ',' << rows[i].rate << ',' << rows[i].cumulative << '\n';
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const auto lib = read_funclib_file(o.lib);
  GenParams p;
  p.k = o.k;
  p.bits = o.bits;
  p.top_funcs = o.top_funcs;
  p.evals = o.evals;
  p.seed = effective_seed(o.seed);
  p.weighted = !o.unweighted;
  p.jobs = o.jobs;
  p.log = [&](const std::string& msg) { out << msg << '\n'; };
  out << "seed " << p.seed << '\n';
  const auto g = generate(lib, p);
  out << "top functions " << g.top_used << ", init " << g.init.num_bits() << " bits, extended "
      << (g.extended ? "yes" : "no") << " (" << g.ext.num_bits() << " bits), objective nvars "
      << g.min_nvars << ".." << o.k << '\n';
  out << "coverage ext " << percent(g.ext_objective) << " final " << percent(g.best_objective)
      << ", " << g.best.num_bits() << " data bits + " << g.best.num_pinv() << " PINV bits\n";
  const auto text = write_bit_assignment(g.best);
  if (o.output.empty())
    out << text;
  else
    write_text(o.output, text);
  return kExitOk;
}

int cmd_match(const Options& o, std::ostream& out) {
  const auto ba = read_bit_assignment_file(o.ba);
  const auto tt = TruthTable::from_hex(o.tt);
  if (support(tt).size() > static_cast<std::size_t>(ba.num_inputs()))
    throw UsageError("function support exceeds the DSLUT's " + std::to_string(ba.num_inputs()) +
                     " inputs");
  if (!o.dimacs.empty()) {
    // First CEGAR round for the lexicographically first pin map.
    const auto shrunk = shrink_to_support(tt);
    const int s = static_cast<int>(shrunk.vars.size());
    const auto plb = encode_plb(ba, build_mux_tree(ba), true);
    Cnf cnf;
    for_each_pin_map(ba.num_inputs(), s, [&](const std::vector<int>& map) {
      const auto t = induce_pin_target(shrunk.table, s, map, ba.num_inputs());
      cnf = cegar_initial_cnf(plb, t.table, t.care);
      return true;
    });
    write_text(o.dimacs, cnf.to_dimacs());
  }
  std::optional<MatchSolution> sol;
  if (o.method == "partition")
    sol = match(ba, tt);
  else if (o.method == "cegar")
    sol = cegar_match_pins(ba, tt);
  else
    throw UsageError("--method must be partition or cegar");
  if (!sol) {
    out << "NOMATCH\n";
    return kExitNoMatch;
  }
  out << sol->to_string(ba) << '\n';
  return kExitOk;
}

int cmd_coverage(const Options& o, std::ostream& out) {
  const auto ba = read_bit_assignment_file(o.ba);
  const auto lib = read_funclib_file(o.lib);
  const int nvars = o.nvars > 0 ? o.nvars : ba.num_inputs();
  const auto r = coverage(ba, lib, nvars, !o.unweighted, o.jobs);
  out << "nvars " << nvars << " matched " << r.matched << '/' << r.total << " coverage "
      << percent(r.rate()) << " weighted " << percent(r.weighted_rate) << '\n';
  return kExitOk;
}

int cmd_tree(const Options& o, std::ostream& out) {
  const auto ba = read_bit_assignment_file(o.ba);
  const auto tree = build_mux_tree(ba, !o.unpruned);
  if (o.dot) {
    out << to_dot(tree);
    return kExitOk;
  }
  const auto r = transistor_report(tree);
  out << "surviving " << tree.stats.surviving << " pruned_identical " << tree.stats.pruned_identical
      << " pruned_strash " << tree.stats.pruned_strash << '\n';
  out << "transistors " << r.transistors << " full_tree " << r.full_tree << '\n';
  const auto stages = path_stages(tree);
  out << "stages";
  for (std::size_t i = 0; i < stages.size(); ++i)
    out << " in" << i << '=' << stages[i];
  out << '\n';
  return kExitOk;
}

int pinv_bits(const PlbVariant& v) { return v.name.starts_with("dslut") ? v.num_inputs() : 0; }

void model_row(std::ostream& out, const ArchModel& m, const std::string& label, const PlbVariant& v,
               int data_bits, int pinv) {
  const double plb = plb_area(m, v, data_bits);
  out << label << ',' << data_bits << ',' << pinv << ',' << data_bits * m.per_sram_area << ','
      << plb << ',' << clb_area(m, v, plb) << ',' << avg_delay(m, v) << '\n';
}

void require_inputs(const PlbVariant& v, int k) {
  if (v.num_inputs() != k)
    throw UsageError("variant " + v.name + " has " + std::to_string(v.num_inputs()) + " inputs, the cell has " +
                     std::to_string(k));
}

int cmd_model(const Options& o, std::ostream& out) {
  const auto m = read_arch_file(o.arch);
  out << "variant,data_bits,pinv_bits,sram_area,plb_area,clb_area,avg_delay\n"
      << std::fixed << std::setprecision(3);
  if (o.ba.empty()) {
    for (const auto& [name, v] : m.variants)
      if (o.variant.empty() || o.variant == name)
        model_row(out, m, name, v, v.num_sram, pinv_bits(v));
    if (!o.variant.empty())
      m.variant(o.variant);
    return kExitOk;
  }
  const auto ba = read_bit_assignment_file(o.ba);
  const auto& v = m.variant(o.variant.empty() ? "dslut" + std::to_string(ba.num_inputs()) : o.variant);
  require_inputs(v, ba.num_inputs());
  model_row(out, m, v.name + ":" + std::filesystem::path(o.ba).filename().string(), v, ba.num_bits(),
            ba.num_pinv());
  return kExitOk;
}

// Per-netlist rows print integral level/PLB counts; the geomean row does not.
void report_row(std::ostream& out, const MapReport& r, bool have_area, bool integral) {
  out << r.name << ',';
  if (integral)
    out << static_cast<long>(r.max_level) << ',' << static_cast<long>(r.nplb) << ',';
  else
    out << r.max_level << ',' << r.nplb << ',';
  if (have_area)
    out << r.area << ',' << r.dap_level << ',' << r.dap_delay << '\n';
  else
    out << "na,na,na\n";
}

int cmd_map(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<BitAssignment> ba;
  if (!o.ba.empty())
    ba = read_bit_assignment_file(o.ba);
  const int k = ba ? ba->num_inputs() : o.k;
  if (ba && o.k != k)
    err << "note: K taken from the bit assignment (" << k << ")\n";

  // Cell area and delay from the architecture model, when it knows the variant.
  double cell_area = 0, delay = 0;
  bool have_area = false;
  const auto m = read_arch_file(o.arch);
  const std::string vname = !o.variant.empty() ? o.variant
                                                : (ba && !ba->is_full_lut() ? "dslut" : "lut") +
                                                      std::to_string(k);
  if (m.variants.contains(vname)) {
    const auto& v = m.variant(vname);
    require_inputs(v, k);
    cell_area = plb_area(m, v, ba ? ba->num_bits() : v.num_sram);
    delay = avg_delay(m, v);
    have_area = true;
  } else if (!o.variant.empty()) {
    m.variant(o.variant); // throws
  } else {
    err << "note: architecture has no variant '" << vname << "'; area columns are na\n";
  }

  std::optional<MatchCache> cache;
  if (ba) {
    cache.emplace(*ba);
    if (!o.cache.empty() && std::filesystem::exists(o.cache))
      cache->load(read_text(o.cache));
  }
  const auto aigs = read_netlists(o.netlists);
  std::vector<MapReport> rows(aigs.size());
  MapParams params{k, o.exhaustive ? kUnlimitedCuts : o.cuts, cache ? &*cache : nullptr};
  parallel_for(aigs.size(), o.jobs, [&](std::size_t i) {
    const auto mapping = map_netlist(aigs[i], params);
    rows[i] = make_report(std::filesystem::path(o.netlists[i]).stem().string(), mapping, cell_area, delay);
  });
  if (cache && !o.cache.empty())
    write_text(o.cache, cache->write());

  out << "netlist,max_level,nplb,area,dap_level_area,dap_delay_area\n"
      << std::fixed << std::setprecision(3);
  for (const auto& r : rows)
    report_row(out, r, have_area, true);
  report_row(out, geomean(rows), have_area, false);
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"DSLUT design toolkit: function libraries, bit assignments, matching, mapping"};
  app.name("dslut");
  app.require_subcommand(1);

  auto add_k = [&](CLI::App* c) { return c->add_option("--k", o.k, "LUT/DSLUT inputs")->check(CLI::Range(2, 6)); };
  auto add_jobs = [&](CLI::App* c) {
    c->add_option("--jobs", o.jobs, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  };
  auto add_cuts = [&](CLI::App* c) {
    c->add_option("--cuts", o.cuts, "priority cuts kept per node")->check(CLI::PositiveNumber);
    c->add_flag("--exhaustive-cuts", o.exhaustive, "keep every cut");
  };

  auto* npn = app.add_subcommand("npn", "NPN classification")->require_subcommand(1);
  auto* npn_count = npn->add_subcommand("count", "count NPN classes of K-input functions");
  add_k(npn_count)->required();
  npn_count->add_flag("--long", o.allow_long, "allow K=5 (long running)");
  auto* npn_canon = npn->add_subcommand("canon", "canonical form and transform");
  npn_canon->add_option("--tt", o.tt, "truth table, hex")->required();
  auto* npn_class = npn->add_subcommand("class", "every member of the NPN class");
  npn_class->add_option("--tt", o.tt, "truth table, hex")->required();

  auto* lib = app.add_subcommand("lib", "practical-function library")->require_subcommand(1);
  auto* lib_build = lib->add_subcommand("build", "harvest a library from netlists");
  add_k(lib_build);
  add_cuts(lib_build);
  add_jobs(lib_build);
  lib_build->add_option("-o,--output", o.output, "library file (default: stdout)");
  lib_build->add_option("netlists", o.netlists, "AIGER files")->check(CLI::ExistingFile);
  auto* lib_report = lib->add_subcommand("report", "occurrence-rate ranking");
  lib_report->add_option("--lib", o.lib, "library file")->required();
  lib_report->add_option("--nvars", o.nvars, "support size filter")->check(CLI::Range(0, 6));
  lib_report->add_option("--top", o.top, "rows");

  auto* gen = app.add_subcommand("gen", "generate a DSLUT bit assignment");
  add_k(gen);
  gen->add_option("--bits", o.bits, "data SRAM bit budget")->check(CLI::Range(1, 64));
  gen->add_option("--top-funcs", o.top_funcs, "functions forced in by initialization");
  gen->add_option("--evals", o.evals, "search evaluations");
  gen->add_option("--seed", o.seed, "search seed (DSLUT_SEED overrides)");
  gen->add_option("--lib", o.lib, "library file")->required();
  gen->add_flag("--unweighted", o.unweighted, "class-count objective instead of nOccurCutBest mass");
  add_jobs(gen);
  gen->add_option("-o,--output", o.output, "bit-assignment file (default: stdout)");

  auto* mt = app.add_subcommand("match", "match one function against a DSLUT");
  mt->add_option("--ba", o.ba, "bit-assignment file")->required();
  mt->add_option("--tt", o.tt, "truth table, hex")->required();
  mt->add_option("--method", o.method, "partition or cegar");
  mt->add_option("--dimacs", o.dimacs, "write the first CEGAR round as DIMACS");

  auto* cov = app.add_subcommand("coverage", "library coverage of a DSLUT");
  cov->add_option("--ba", o.ba, "bit-assignment file")->required();
  cov->add_option("--lib", o.lib, "library file")->required();
  cov->add_option("--nvars", o.nvars, "support size (default: K)")->check(CLI::Range(1, 6));
  cov->add_flag("--unweighted", o.unweighted, "class count only");
  add_jobs(cov);

  auto* tree = app.add_subcommand("tree", "pruned MUX tree statistics");
  tree->add_option("--ba", o.ba, "bit-assignment file")->required();
  tree->add_flag("--dot", o.dot, "emit Graphviz");
  tree->add_flag("--unpruned", o.unpruned, "keep the full tree");

  auto* model = app.add_subcommand("model", "PLB/CLB area and delay");
  model->add_option("--arch", o.arch, "architecture file");
  model->add_option("--variant", o.variant, "PLB variant");
  model->add_option("--ba", o.ba, "price this bit assignment");

  auto* map = app.add_subcommand("map", "depth-oriented technology mapping");
  add_k(map);
  map->add_option("--ba", o.ba, "DSLUT bit assignment (default: LUT-K)");
  map->add_option("--arch", o.arch, "architecture file");
  map->add_option("--variant", o.variant, "variant for cell area and delay");
  map->add_option("--match-cache", o.cache, "match-cache file, read if present and rewritten");
  add_cuts(map);
  add_jobs(map);
  map->add_option("netlists", o.netlists, "AIGER files")->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (npn_count->parsed())
      return cmd_npn_count(o, out);
    if (npn_canon->parsed())
      return cmd_npn_canon(o, out);
    if (npn_class->parsed())
      return cmd_npn_class(o, out);
    if (lib_build->parsed())
      return cmd_lib_build(o, out);
    if (lib_report->parsed())
      return cmd_lib_report(o, out);
    if (gen->parsed())
      return cmd_gen(o, out);
    if (mt->parsed())
      return cmd_match(o, out);
    if (cov->parsed())
      return cmd_coverage(o, out);
    if (tree->parsed())
      return cmd_tree(o, out);
    if (model->parsed())
      return cmd_model(o, out);
    if (map->parsed())
      return cmd_map(o, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnmappableError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitNoMatch;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNoMatch;
  }
  err << "no command\n";
  return kExitUsage;
}

} // namespace dslut
