// Copyright 2026 The stmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stmatch/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace stmatch {

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

bool is_comment(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '#';
  }
  return false;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      toks.push_back(cur);
      cur.clear();
    }
  };
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')') {
      flush();
      toks.push_back(std::string(1, c));
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return toks;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return v;
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  return v;
}

// Cursor over non-comment lines, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& text) : lines_(split_lines(text)) {}

  // Next line that is not a comment; blank lines are returned as-is when
  // keep_blank is set and skipped otherwise. Returns false at end of input.
  bool next(std::string& out, int& lineno, bool keep_blank) {
    while (pos_ < lines_.size()) {
      const std::string& l = lines_[pos_];
      ++pos_;
      if (is_comment(l)) continue;
      if (!keep_blank && is_blank(l)) continue;
      out = l;
      lineno = static_cast<int>(pos_);
      return true;
    }
    return false;
  }

  // True if only blank or comment lines remain.
  bool exhausted() const {
    for (std::size_t p = pos_; p < lines_.size(); ++p) {
      if (!is_comment(lines_[p]) && !is_blank(lines_[p])) return false;
    }
    return true;
  }

  int current_line() const { return static_cast<int>(pos_); }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

PreferenceList parse_list_line(const std::string& line, int lineno) {
  std::vector<std::vector<Index>> groups;
  std::vector<Index> open;
  bool in_group = false;
  for (const std::string& tok : tokenize(line)) {
    if (tok == "(") {
      if (in_group) throw ParseError("nested '(' in preference list", lineno);
      in_group = true;
      open.clear();
    } else if (tok == ")") {
      if (!in_group) throw ParseError("unmatched ')' in preference list", lineno);
      if (open.empty()) throw ParseError("empty tie group", lineno);
      groups.push_back(open);
      in_group = false;
    } else {
      Index v = parse_int(tok, lineno);
      if (in_group) {
        open.push_back(v);
      } else {
        groups.push_back({v});
      }
    }
  }
  if (in_group) throw ParseError("unclosed '(' in preference list", lineno);
  try {
    return PreferenceList(std::move(groups));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), lineno);
  }
}

std::vector<PreferenceList> parse_list_block(LineReader& reader, int count,
                                             const char* what) {
  std::vector<PreferenceList> lists;
  lists.reserve(static_cast<std::size_t>(count));
  std::string line;
  int lineno = 0;
  for (int i = 0; i < count; ++i) {
    if (!reader.next(line, lineno, /*keep_blank=*/true)) {
      throw ParseError(std::string("missing ") + what + " list " +
                       std::to_string(i + 1) + " of " + std::to_string(count));
    }
    if (is_blank(line)) {
      lists.emplace_back();
    } else {
      lists.push_back(parse_list_line(line, lineno));
    }
  }
  return lists;
}

void expect_exhausted(const LineReader& reader) {
  if (!reader.exhausted()) {
    throw ParseError("trailing content after instance data",
                     reader.current_line() + 1);
  }
}

}  // namespace

PreferenceList::PreferenceList(std::vector<std::vector<Index>> groups)
    : groups_(std::move(groups)) {
  for (auto& g : groups_) {
    if (g.empty()) throw ValidationError("empty tie group");
    std::sort(g.begin(), g.end());
  }
  int rank = 0;
  for (const auto& g : groups_) {
    ++rank;
    for (Index p : g) rank_.emplace_back(p, rank);
    entries_ += static_cast<int>(g.size());
  }
  std::sort(rank_.begin(), rank_.end());
  for (std::size_t k = 1; k < rank_.size(); ++k) {
    if (rank_[k].first == rank_[k - 1].first) {
      throw ValidationError("partner " + std::to_string(rank_[k].first) +
                            " listed more than once");
    }
  }
}

int PreferenceList::rank_of(Index partner) const {
  auto it = std::lower_bound(rank_.begin(), rank_.end(),
                             std::make_pair(partner, 0));
  if (it != rank_.end() && it->first == partner) return it->second;
  return 0;
}

std::vector<Index> PreferenceList::flatten() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(entries_));
  for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

long long Instance::num_pairs() const {
  long long total = 0;
  for (const auto& l : rows) total += l.num_entries();
  return total;
}

void validate_instance(const Instance& inst) {
  if (inst.n1 < 0 || inst.n2 < 0) throw ValidationError("negative side size");
  if (static_cast<int>(inst.rows.size()) != inst.n1 ||
      static_cast<int>(inst.cols.size()) != inst.n2) {
    throw ValidationError("list count does not match side size");
  }
  if (!inst.capacities.empty()) {
    if (static_cast<int>(inst.capacities.size()) != inst.n2) {
      throw ValidationError("capacity count does not match column count");
    }
    for (int j = 1; j <= inst.n2; ++j) {
      if (inst.capacity(j) < 1) {
        throw ValidationError("capacity of column " + std::to_string(j) +
                              " must be positive");
      }
    }
  }
  for (Index i = 1; i <= inst.n1; ++i) {
    for (const auto& g : inst.row(i).groups()) {
      for (Index j : g) {
        if (j < 1 || j > inst.n2) {
          throw ValidationError("row " + std::to_string(i) +
                                " lists out-of-range column " + std::to_string(j));
        }
        if (inst.col(j).rank_of(i) == 0) {
          throw ValidationError("row " + std::to_string(i) + " lists column " +
                                std::to_string(j) +
                                " but not the other way around");
        }
      }
    }
  }
  for (Index j = 1; j <= inst.n2; ++j) {
    for (const auto& g : inst.col(j).groups()) {
      for (Index i : g) {
        if (i < 1 || i > inst.n1) {
          throw ValidationError("column " + std::to_string(j) +
                                " lists out-of-range row " + std::to_string(i));
        }
        if (inst.row(i).rank_of(j) == 0) {
          throw ValidationError("column " + std::to_string(j) + " lists row " +
                                std::to_string(i) +
                                " but not the other way around");
        }
      }
    }
  }
}

std::optional<double> GrpInstance::weight_of(Index i, Index j) const {
  WeightedPair probe{i, j, 0.0};
  auto it = std::lower_bound(pairs.begin(), pairs.end(), probe,
                             [](const WeightedPair& a, const WeightedPair& b) {
                               return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                             });
  if (it != pairs.end() && it->row == i && it->col == j) return it->weight;
  return std::nullopt;
}

void validate_grp(const GrpInstance& grp) {
  if (grp.n1 < 0 || grp.n2 < 0) throw ValidationError("negative side size");
  for (std::size_t k = 0; k < grp.pairs.size(); ++k) {
    const WeightedPair& p = grp.pairs[k];
    if (p.row < 1 || p.row > grp.n1 || p.col < 1 || p.col > grp.n2) {
      throw ValidationError("pair (" + std::to_string(p.row) + ", " +
                            std::to_string(p.col) + ") out of range");
    }
    if (k > 0 && grp.pairs[k - 1].row == p.row && grp.pairs[k - 1].col == p.col) {
      throw ValidationError("pair (" + std::to_string(p.row) + ", " +
                            std::to_string(p.col) + ") appears more than once");
    }
  }
}

Matching make_matching(std::vector<std::pair<Index, Index>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k] == pairs[k - 1]) {
      throw ValidationError("pair (" + std::to_string(pairs[k].first) + ", " +
                            std::to_string(pairs[k].second) +
                            ") appears more than once");
    }
  }
  return Matching{std::move(pairs)};
}

InstanceKind sniff_kind(const std::string& text) {
  LineReader reader(text);
  std::string line;
  int lineno = 0;
  if (!reader.next(line, lineno, /*keep_blank=*/false)) {
    throw ParseError("empty instance file");
  }
  std::istringstream ss(line);
  std::string kw;
  ss >> kw;
  if (kw == "SMTI") return InstanceKind::kSmti;
  if (kw == "HRT") return InstanceKind::kHrt;
  if (kw == "GRP") return InstanceKind::kGrp;
  throw ParseError("unknown instance header '" + kw + "'", lineno);
}

Instance parse_instance(const std::string& text) {
  LineReader reader(text);
  std::string line;
  int lineno = 0;
  if (!reader.next(line, lineno, /*keep_blank=*/false)) {
    throw ParseError("empty instance file");
  }
  std::vector<std::string> head = tokenize(line);
  if (head.empty() || (head[0] != "SMTI" && head[0] != "HRT")) {
    throw ParseError("expected SMTI or HRT header", lineno);
  }
  if (head.size() != 3) {
    throw ParseError("header must be '" + head[0] + " <n1> <n2>'", lineno);
  }
  Instance inst;
  inst.n1 = parse_int(head[1], lineno);
  inst.n2 = parse_int(head[2], lineno);
  if (inst.n1 < 0 || inst.n2 < 0) throw ParseError("negative side size", lineno);

  if (head[0] == "HRT") {
    if (!reader.next(line, lineno, /*keep_blank=*/false)) {
      throw ParseError("missing capacity line");
    }
    std::vector<std::string> toks = tokenize(line);
    if (static_cast<int>(toks.size()) != inst.n2) {
      throw ParseError("expected " + std::to_string(inst.n2) + " capacities, got " +
                       std::to_string(toks.size()), lineno);
    }
    inst.capacities.reserve(toks.size());
    for (const std::string& t : toks) inst.capacities.push_back(parse_int(t, lineno));
  }
  inst.rows = parse_list_block(reader, inst.n1, "row");
  inst.cols = parse_list_block(reader, inst.n2, "column");
  expect_exhausted(reader);
  validate_instance(inst);
  return inst;
}

GrpInstance parse_grp(const std::string& text) {
  LineReader reader(text);
  std::string line;
  int lineno = 0;
  if (!reader.next(line, lineno, /*keep_blank=*/false)) {
    throw ParseError("empty instance file");
  }
  std::vector<std::string> head = tokenize(line);
  if (head.empty() || head[0] != "GRP") throw ParseError("expected GRP header", lineno);
  if (head.size() != 4) throw ParseError("header must be 'GRP <n1> <n2> <m>'", lineno);
  GrpInstance grp;
  grp.n1 = parse_int(head[1], lineno);
  grp.n2 = parse_int(head[2], lineno);
  int m = parse_int(head[3], lineno);
  if (m < 0) throw ParseError("negative pair count", lineno);
  grp.pairs.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    if (!reader.next(line, lineno, /*keep_blank=*/false)) {
      throw ParseError("missing pair " + std::to_string(k + 1) + " of " +
                       std::to_string(m));
    }
    std::vector<std::string> toks = tokenize(line);
    if (toks.size() != 3) {
      throw ParseError("expected '<row> <col> <weight>'", lineno);
    }
    WeightedPair p;
    p.row = parse_int(toks[0], lineno);
    p.col = parse_int(toks[1], lineno);
    p.weight = parse_double(toks[2], lineno);
    grp.pairs.push_back(p);
  }
  expect_exhausted(reader);
  std::sort(grp.pairs.begin(), grp.pairs.end(),
            [](const WeightedPair& a, const WeightedPair& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });
  validate_grp(grp);
  return grp;
}

Matching parse_matching(const std::string& text) {
  LineReader reader(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<Index, Index>> pairs;
  while (reader.next(line, lineno, /*keep_blank=*/false)) {
    std::vector<std::string> toks = tokenize(line);
    if (toks.size() != 2) throw ParseError("expected '<row> <col>'", lineno);
    pairs.emplace_back(parse_int(toks[0], lineno), parse_int(toks[1], lineno));
  }
  try {
    return make_matching(std::move(pairs));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

namespace {

void append_list(std::string& out, const PreferenceList& list) {
  bool first = true;
  for (const auto& g : list.groups()) {
    if (!first) out.push_back(' ');
    first = false;
    if (g.size() == 1) {
      out += std::to_string(g[0]);
    } else {
      out.push_back('(');
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (k > 0) out.push_back(' ');
        out += std::to_string(g[k]);
      }
      out.push_back(')');
    }
  }
  out.push_back('\n');
}

}  // namespace

std::string serialize(const Instance& inst) {
  std::string out;
  out += inst.one_to_many() ? "HRT " : "SMTI ";
  out += std::to_string(inst.n1) + " " + std::to_string(inst.n2) + "\n";
  if (inst.one_to_many()) {
    for (int j = 1; j <= inst.n2; ++j) {
      if (j > 1) out.push_back(' ');
      out += std::to_string(inst.capacity(j));
    }
    out.push_back('\n');
  }
  for (const auto& l : inst.rows) append_list(out, l);
  for (const auto& l : inst.cols) append_list(out, l);
  return out;
}

std::string serialize(const GrpInstance& grp) {
  std::string out = "GRP " + std::to_string(grp.n1) + " " + std::to_string(grp.n2) +
                    " " + std::to_string(grp.pairs.size()) + "\n";
  for (const WeightedPair& p : grp.pairs) {
    out += std::to_string(p.row) + " " + std::to_string(p.col) + " " +
           format_double(p.weight) + "\n";
  }
  return out;
}

std::string serialize(const Matching& m) {
  std::string out;
  for (const auto& [i, j] : m.pairs) {
    out += std::to_string(i) + " " + std::to_string(j) + "\n";
  }
  return out;
}

Instance derive_preferences(const GrpInstance& grp) {
  validate_grp(grp);
  Instance inst;
  inst.n1 = grp.n1;
  inst.n2 = grp.n2;
  // (partner, weight) per agent; stable weight-descending sort, then split
  // into groups at strict weight drops.
  std::vector<std::vector<std::pair<Index, double>>> by_row(
      static_cast<std::size_t>(grp.n1));
  std::vector<std::vector<std::pair<Index, double>>> by_col(
      static_cast<std::size_t>(grp.n2));
  for (const WeightedPair& p : grp.pairs) {
    by_row[static_cast<std::size_t>(p.row - 1)].emplace_back(p.col, p.weight);
    by_col[static_cast<std::size_t>(p.col - 1)].emplace_back(p.row, p.weight);
  }
  auto build = [](std::vector<std::pair<Index, double>>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
              });
    std::vector<std::vector<Index>> groups;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k == 0 || entries[k].second != entries[k - 1].second) {
        groups.emplace_back();
      }
      groups.back().push_back(entries[k].first);
    }
    return PreferenceList(std::move(groups));
  };
  inst.rows.reserve(by_row.size());
  for (auto& e : by_row) inst.rows.push_back(build(e));
  inst.cols.reserve(by_col.size());
  for (auto& e : by_col) inst.cols.push_back(build(e));
  return inst;
}

GrpInstance apply_threshold(const GrpInstance& grp, double t) {
  GrpInstance out;
  out.n1 = grp.n1;
  out.n2 = grp.n2;
  for (const WeightedPair& p : grp.pairs) {
    if (p.weight >= t) out.pairs.push_back(p);
  }
  return out;
}

TieDensity tie_density(const Instance& inst, Side side) {
  const std::vector<PreferenceList>& lists =
      side == Side::kRow ? inst.rows : inst.cols;
  long long groups = 0, entries = 0, nonempty = 0;
  for (const PreferenceList& l : lists) {
    if (l.empty()) continue;
    ++nonempty;
    groups += l.num_groups();
    entries += l.num_entries();
  }
  if (entries <= nonempty) return {0.0, true};
  TieDensity d;
  d.value = 1.0 - static_cast<double>(groups - nonempty) /
                      static_cast<double>(entries - nonempty);
  return d;
}

Instance transpose(const Instance& inst) {
  if (inst.one_to_many()) {
    throw ValidationError("cannot transpose an instance with capacities");
  }
  Instance out;
  out.n1 = inst.n2;
  out.n2 = inst.n1;
  out.rows = inst.cols;
  out.cols = inst.rows;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format numeric value");
  return std::string(buf, p);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace stmatch
