// Copyright 2026 The sdpresolve Authors
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

#include "sdpresolve/io_sdpa.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <tuple>

namespace sdpresolve {

namespace {

std::string kind_name(SdpaErrorKind kind) {
  switch (kind) {
    case SdpaErrorKind::Parse: return "parse error";
    case SdpaErrorKind::DuplicateEntry: return "duplicate entry";
    case SdpaErrorKind::BadIndex: return "bad index";
    case SdpaErrorKind::BadMatno: return "bad matrix number";
    case SdpaErrorKind::BadDiagonalBlockEntry: return "off-diagonal entry in diagonal block";
  }
  return "error";
}

}  // namespace

SdpaError::SdpaError(SdpaErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + kind_name(kind) +
                         (message.empty() ? "" : ": " + message)),
      kind_(kind),
      line_(line) {}

namespace {

// Header tokens may be separated by commas, parentheses, or braces in
// addition to whitespace.
bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '(' || c == ')' || c == '{' ||
         c == '}';
}

std::vector<std::string> split_header_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (is_separator(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

long parse_int(const std::string& tok, int line) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  long v = 0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw SdpaError(SdpaErrorKind::Parse, line, "expected integer, got '" + tok + "'");
  }
  return v;
}

double parse_double(const std::string& tok, int line) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  // Accept a trailing '.' ("1." is common in generated files).
  if (res.ec == std::errc{} && res.ptr + 1 == last && *res.ptr == '.') ++res.ptr;
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
    throw SdpaError(SdpaErrorKind::Parse, line, "expected number, got '" + tok + "'");
  }
  return v;
}

struct Line {
  std::string text;
  int number = 0;
};

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    lines.push_back(Line{std::move(raw), number});
  }
  return lines;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Validates one coordinate against the structure; returns the normalized
// (i, j) with i <= j.
std::pair<int, int> check_coordinate(const BlockStructure& structure, long block, long i, long j,
                                     int line) {
  if (block < 1 || block > structure.block_count()) {
    throw SdpaError(SdpaErrorKind::BadIndex, line,
                    "block " + std::to_string(block) + " out of range");
  }
  const int d = structure.block_dim(static_cast<int>(block));
  if (i < 1 || i > d || j < 1 || j > d) {
    throw SdpaError(SdpaErrorKind::BadIndex, line, "entry index out of block range");
  }
  if (i > j) std::swap(i, j);
  if (structure.diagonal_block(static_cast<int>(block)) && i != j) {
    throw SdpaError(SdpaErrorKind::BadDiagonalBlockEntry, line,
                    "diagonal block entries must have i == j");
  }
  return {static_cast<int>(i), static_cast<int>(j)};
}

}  // namespace

SdpInstance parse_instance(std::istream& in) {
  const std::vector<Line> lines = read_lines(in);
  size_t pos = 0;

  std::string label;
  bool have_label = false;
  while (pos < lines.size()) {
    const std::string t = trimmed(lines[pos].text);
    if (!t.empty() && (t[0] == '"' || t[0] == '*')) {
      if (!have_label) {
        label = trimmed(t.substr(1));
        have_label = true;
      }
      ++pos;
    } else {
      break;
    }
  }

  auto next_content_line = [&](const char* what) -> const Line& {
    if (pos >= lines.size()) {
      const int line = lines.empty() ? 1 : lines.back().number + 1;
      throw SdpaError(SdpaErrorKind::Parse, line, std::string("missing ") + what);
    }
    return lines[pos++];
  };

  // m
  const Line& m_line = next_content_line("constraint count");
  const auto m_tokens = split_header_tokens(m_line.text);
  if (m_tokens.size() != 1) {
    throw SdpaError(SdpaErrorKind::Parse, m_line.number, "expected the constraint count");
  }
  const long m = parse_int(m_tokens[0], m_line.number);
  if (m < 0) throw SdpaError(SdpaErrorKind::Parse, m_line.number, "negative constraint count");

  // nblocks
  const Line& nb_line = next_content_line("block count");
  const auto nb_tokens = split_header_tokens(nb_line.text);
  if (nb_tokens.size() != 1) {
    throw SdpaError(SdpaErrorKind::Parse, nb_line.number, "expected the block count");
  }
  const long nblocks = parse_int(nb_tokens[0], nb_line.number);
  if (nblocks < 0) throw SdpaError(SdpaErrorKind::Parse, nb_line.number, "negative block count");

  // block sizes
  const Line& sizes_line = next_content_line("block sizes");
  const auto size_tokens = split_header_tokens(sizes_line.text);
  if (static_cast<long>(size_tokens.size()) != nblocks) {
    throw SdpaError(SdpaErrorKind::Parse, sizes_line.number,
                    "expected " + std::to_string(nblocks) + " block sizes, got " +
                        std::to_string(size_tokens.size()));
  }
  std::vector<int> sizes;
  sizes.reserve(size_tokens.size());
  for (const auto& tok : size_tokens) {
    const long s = parse_int(tok, sizes_line.number);
    if (s == 0) throw SdpaError(SdpaErrorKind::Parse, sizes_line.number, "zero block size");
    sizes.push_back(static_cast<int>(s));
  }
  BlockStructure structure(std::move(sizes));

  // rhs
  const Line& rhs_line = next_content_line("right-hand sides");
  const auto rhs_tokens = split_header_tokens(rhs_line.text);
  if (static_cast<long>(rhs_tokens.size()) != m) {
    throw SdpaError(SdpaErrorKind::Parse, rhs_line.number,
                    "expected " + std::to_string(m) + " right-hand sides, got " +
                        std::to_string(rhs_tokens.size()));
  }
  std::vector<double> rhs;
  rhs.reserve(rhs_tokens.size());
  for (const auto& tok : rhs_tokens) rhs.push_back(parse_double(tok, rhs_line.number));

  // entries
  SdpInstance inst;
  inst.structure = structure;
  inst.objective = SymBlockMatrix(structure);
  inst.constraints.assign(m, SymBlockMatrix(structure));
  inst.rhs = std::move(rhs);
  inst.label = label;

  std::map<std::tuple<long, long, int, int>, int> seen;  // key -> first line
  for (; pos < lines.size(); ++pos) {
    const Line& line = lines[pos];
    if (blank(line.text)) continue;
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 5) {
      throw SdpaError(SdpaErrorKind::Parse, line.number,
                      "entry lines need 5 fields: matno block i j value");
    }
    const long matno = parse_int(tokens[0], line.number);
    const long block = parse_int(tokens[1], line.number);
    const long i = parse_int(tokens[2], line.number);
    const long j = parse_int(tokens[3], line.number);
    const double value = parse_double(tokens[4], line.number);

    if (matno < 0 || matno > m) {
      throw SdpaError(SdpaErrorKind::BadMatno, line.number,
                      "matrix number " + std::to_string(matno) + " outside [0, " +
                          std::to_string(m) + "]");
    }
    const auto [ni, nj] = check_coordinate(structure, block, i, j, line.number);

    const auto key = std::make_tuple(matno, block, ni, nj);
    auto [it, inserted] = seen.emplace(key, line.number);
    if (!inserted) {
      throw SdpaError(SdpaErrorKind::DuplicateEntry, line.number,
                      "coordinate already set on line " + std::to_string(it->second));
    }
    if (value == 0.0) continue;  // explicit zeros carry no support

    SymBlockMatrix& target =
        matno == 0 ? inst.objective : inst.constraints[static_cast<size_t>(matno - 1)];
    target.add(static_cast<int>(block), ni, nj, value);
  }

  return inst;
}

SdpInstance parse_instance_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string write_instance(const SdpInstance& inst) {
  inst.validate();
  std::string out;
  if (!inst.label.empty()) {
    std::string label = inst.label;
    std::replace(label.begin(), label.end(), '\n', ' ');
    out += "\"" + label + "\n";
  }
  out += std::to_string(inst.m()) + "\n";
  out += std::to_string(inst.structure.block_count()) + "\n";
  for (int b = 1; b <= inst.structure.block_count(); ++b) {
    if (b > 1) out += " ";
    out += std::to_string(inst.structure.sizes()[b - 1]);
  }
  out += "\n";
  for (int i = 0; i < inst.m(); ++i) {
    if (i > 0) out += " ";
    out += format_double(inst.rhs[i]);
  }
  out += "\n";

  auto emit = [&out](int matno, int block, const SymBlockMatrix& a) {
    for (const auto& e : a.block_entries(block)) {
      if (e.value == 0.0) continue;
      out += std::to_string(matno) + " " + std::to_string(block) + " " + std::to_string(e.i) +
             " " + std::to_string(e.j) + " " + format_double(e.value) + "\n";
    }
  };
  for (int b = 1; b <= inst.structure.block_count(); ++b) emit(0, b, inst.objective);
  for (int k = 0; k < inst.m(); ++k) {
    for (int b = 1; b <= inst.structure.block_count(); ++b) emit(k + 1, b, inst.constraints[k]);
  }
  return out;
}

SolutionFile parse_solution(std::istream& in, const BlockStructure& structure, int m) {
  SolutionFile sol;
  const std::vector<Line> lines = read_lines(in);

  std::map<std::tuple<char, int, int, int>, int> seen;
  std::vector<SolutionEntry> s_entries;
  bool have_s = false;

  for (const Line& line : lines) {
    const std::string t = trimmed(line.text);
    if (t.empty() || t[0] == '#') continue;
    const auto tokens = split_ws(t);
    if (tokens[0] == "y") {
      if (sol.y.has_value()) {
        throw SdpaError(SdpaErrorKind::Parse, line.number, "second y line");
      }
      if (static_cast<int>(tokens.size()) - 1 != m) {
        throw SdpaError(SdpaErrorKind::Parse, line.number,
                        "expected " + std::to_string(m) + " y values, got " +
                            std::to_string(tokens.size() - 1));
      }
      std::vector<double> y;
      y.reserve(m);
      for (size_t k = 1; k < tokens.size(); ++k) y.push_back(parse_double(tokens[k], line.number));
      sol.y = std::move(y);
      continue;
    }
    if (tokens[0] == "X" || tokens[0] == "S") {
      if (tokens.size() != 5) {
        throw SdpaError(SdpaErrorKind::Parse, line.number,
                        "matrix lines need 5 fields: X|S block i j value");
      }
      const long block = parse_int(tokens[1], line.number);
      const long i = parse_int(tokens[2], line.number);
      const long j = parse_int(tokens[3], line.number);
      const double value = parse_double(tokens[4], line.number);
      const auto [ni, nj] = check_coordinate(structure, block, i, j, line.number);

      const auto key = std::make_tuple(tokens[0][0], static_cast<int>(block), ni, nj);
      auto [it, inserted] = seen.emplace(key, line.number);
      if (!inserted) {
        throw SdpaError(SdpaErrorKind::DuplicateEntry, line.number,
                        "coordinate already set on line " + std::to_string(it->second));
      }
      if (tokens[0] == "S") have_s = true;
      if (value == 0.0) continue;
      SolutionEntry e{static_cast<int>(block), ni, nj, value};
      if (tokens[0] == "X") {
        sol.x_entries.push_back(e);
      } else {
        s_entries.push_back(e);
      }
      continue;
    }
    throw SdpaError(SdpaErrorKind::Parse, line.number, "unrecognized line '" + tokens[0] + "'");
  }

  if (have_s) sol.s_entries = std::move(s_entries);
  return sol;
}

SolutionFile parse_solution_text(const std::string& text, const BlockStructure& structure, int m) {
  std::istringstream ss(text);
  return parse_solution(ss, structure, m);
}

std::string write_solution(const SolutionFile& sol) {
  std::string out;
  if (sol.y.has_value()) {
    out += "y";
    for (double v : *sol.y) out += " " + format_double(v);
    out += "\n";
  }
  auto emit = [&out](const char* tag, const std::vector<SolutionEntry>& entries) {
    for (const auto& e : entries) {
      if (e.value == 0.0) continue;
      out += std::string(tag) + " " + std::to_string(e.block) + " " + std::to_string(e.i) + " " +
             std::to_string(e.j) + " " + format_double(e.value) + "\n";
    }
  };
  emit("X", sol.x_entries);
  if (sol.s_entries.has_value()) emit("S", *sol.s_entries);
  return out;
}

DenseBlockSym to_dense(const BlockStructure& structure, const std::vector<SolutionEntry>& entries) {
  DenseBlockSym x(structure);
  for (const auto& e : entries) x.set(e.block, e.i, e.j, e.value);
  return x;
}

}  // namespace sdpresolve
