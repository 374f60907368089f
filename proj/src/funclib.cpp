#include "dslut/funclib.hpp"

#include "dslut/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dslut {

FuncLib::FuncLib(int max_vars) : max_vars_(max_vars) {
  if (max_vars < 2 || max_vars > TruthTable::kMaxVars)
    throw UsageError("library K must be in [2,6]");
}

std::pair<int, TruthTable> library_key(const TruthTable& fn) {
  const auto shrunk = shrink_to_support(fn);
  return {static_cast<int>(shrunk.vars.size()), npn_canonical(shrunk.table).first};
}

FuncLibEntry& FuncLib::entry_for(const TruthTable& fn) {
  const auto [nvars, canon] = library_key(fn);
  return entry_canonical(nvars, canon);
}

FuncLibEntry& FuncLib::entry_canonical(int nvars, const TruthTable& canon) {
  if (nvars > max_vars_)
    throw UsageError("function with " + std::to_string(nvars) + " inputs exceeds library K=" +
                     std::to_string(max_vars_));
  auto [it, inserted] = entries_.try_emplace({nvars, canon.bits()});
  if (inserted) {
    it->second.canon = canon;
    it->second.nvars = nvars;
  }
  return it->second;
}

const FuncLibEntry* FuncLib::find(int nvars, const TruthTable& canon) const {
  const auto it = entries_.find({nvars, canon.bits()});
  return it == entries_.end() ? nullptr : &it->second;
}

void FuncLib::merge(const FuncLib& other) {
  max_vars_ = std::max(max_vars_, other.max_vars_);
  for (const auto& [key, e] : other.entries_) {
    auto& mine = entry_canonical(e.nvars, e.canon);
    mine.n_enum += e.n_enum;
    mine.n_cutset += e.n_cutset;
    mine.n_cutbest += e.n_cutbest;
  }
}

std::vector<FuncLibEntry> FuncLib::entries() const {
  std::vector<FuncLibEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, e] : entries_)
    out.push_back(e);
  return out;
}

std::vector<FuncLibEntry> FuncLib::entries(int nvars) const {
  std::vector<FuncLibEntry> out;
  for (auto it = entries_.lower_bound({nvars, 0}); it != entries_.end() && it->first.first == nvars; ++it)
    out.push_back(it->second);
  return out;
}

std::string write_funclib(const FuncLib& lib) {
  std::ostringstream out;
  out << "funclib v1 K=" << lib.max_vars() << '\n';
  for (const auto& e : lib.entries())
    out << e.canon.to_hex() << ' ' << e.nvars << ' ' << e.n_enum << ' ' << e.n_cutset << ' '
        << e.n_cutbest << '\n';
  return out.str();
}

namespace {

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a non-negative integer, got '" + s + "'", line);
  return v;
}

} // namespace

FuncLib parse_funclib(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<FuncLib> lib;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r')
      raw.pop_back();
    if (raw.empty() || raw.front() == '#')
      continue;
    std::istringstream fields(raw);
    if (!lib) {
      std::string magic, version, kfield;
      fields >> magic >> version >> kfield;
      if (magic != "funclib" || version != "v1" || kfield.rfind("K=", 0) != 0)
        throw ParseError("expected 'funclib v1 K=<K>' header", line_no);
      const int k = parse_number<int>(kfield.substr(2), line_no);
      if (k < 2 || k > TruthTable::kMaxVars)
        throw ParseError("library K must be in [2,6]", line_no);
      lib.emplace(k);
      continue;
    }
    std::string hex, nv, a, b, c, extra;
    if (!(fields >> hex >> nv >> a >> b >> c) || (fields >> extra))
      throw ParseError("expected '<hex> <nvars> <enum> <cutset> <cutbest>'", line_no);
    const int nvars = parse_number<int>(nv, line_no);
    if (nvars < 0 || nvars > lib->max_vars())
      throw ParseError("nvars out of range", line_no);
    TruthTable tt;
    try {
      tt = TruthTable::from_hex(hex, std::max(TruthTable::kMinVars, nvars));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    if (tt.to_hex() != hex)
      throw ParseError("'" + hex + "' is not " + std::to_string(tt.to_hex().size()) +
                           " lowercase hex digits",
                       line_no);
    if (static_cast<int>(support(tt).size()) != nvars)
      throw ParseError("support of " + hex + " does not have " + nv + " variables", line_no);
    if (npn_canonical(tt).first != tt)
      throw ParseError(hex + " is not NPN-canonical", line_no);
    if (lib->find(nvars, tt))
      throw ParseError("duplicate entry " + hex, line_no);
    auto& e = lib->entry_canonical(nvars, tt);
    e.n_enum = parse_number<std::uint64_t>(a, line_no);
    e.n_cutset = parse_number<std::uint64_t>(b, line_no);
    e.n_cutbest = parse_number<std::uint64_t>(c, line_no);
  }
  if (!lib)
    throw ParseError("empty library file", 1);
  return *lib;
}

FuncLib read_funclib_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_funclib(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

std::vector<OccurrenceRow> occurrence_report(const FuncLib& lib, std::optional<int> nvars,
                                             std::size_t top_n) {
  if (top_n == 0)
    throw UsageError("occurrence report needs topN >= 1");
  auto entries = nvars ? lib.entries(*nvars) : lib.entries();
  std::stable_sort(entries.begin(), entries.end(), [](const FuncLibEntry& a, const FuncLibEntry& b) {
    return a.n_cutbest > b.n_cutbest;
  });
  const auto total = std::accumulate(entries.begin(), entries.end(), std::uint64_t{0},
                                     [](std::uint64_t s, const FuncLibEntry& e) { return s + e.n_cutbest; });
  std::vector<OccurrenceRow> rows;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < entries.size() && i < top_n; ++i) {
    OccurrenceRow r;
    r.entry = entries[i];
    r.rate = total ? static_cast<double>(entries[i].n_cutbest) / static_cast<double>(total) : 0.0;
    cumulative += r.rate;
    r.cumulative = std::min(cumulative, 1.0);
    rows.push_back(r);
  }
  return rows;
}

} // namespace dslut
