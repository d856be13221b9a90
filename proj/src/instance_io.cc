// SPDX-License-Identifier: Apache-2.0

#include "efp/instance_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace efp {
namespace {

constexpr std::string_view kHeader = "EFP 1";

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    fields.push_back(line.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return fields;
}

long ParseInt(std::string_view field, int line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(line, "expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

double ParseDouble(std::string_view field, int line) {
  const std::string text(field);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw FormatError(line, "expected a number, got '" + text + "'");
  }
  return value;
}

}  // namespace

FormatError::FormatError(int line, const std::string& what)
    : Error("instance line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_valuation(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  std::string s(buf);
  const std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

std::string serialize_instance(const Instance& inst) {
  std::string out;
  out.reserve(32 + inst.num_edges() * 24);
  out += kHeader;
  out += "\nitems " + std::to_string(inst.num_items());
  out += "\nbidders " + std::to_string(inst.num_bidders());
  out += '\n';
  for (const Valuation& e : inst.edges()) {
    out += "edge ";
    out += std::to_string(e.item + 1);
    out += ' ';
    out += std::to_string(e.bidder + 1);
    out += ' ';
    out += format_valuation(e.value);
    out += '\n';
  }
  return out;
}

Instance parse_instance(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  if (lines.empty() || lines[0].substr(0, 4) != "EFP ") {
    throw FormatError(1, "missing 'EFP <version>' header");
  }
  if (lines[0] != kHeader) {
    throw FormatError(1, "unsupported format version '" + std::string(lines[0].substr(4)) + "'");
  }

  auto keyed = [&](std::size_t idx, std::string_view key) {
    const int line_no = static_cast<int>(idx) + 1;
    if (idx >= lines.size()) throw FormatError(line_no, "missing '" + std::string(key) + "' line");
    const auto fields = SplitFields(lines[idx]);
    if (fields.size() != 2 || fields[0] != key) {
      throw FormatError(line_no, "expected '" + std::string(key) + " <count>'");
    }
    const long count = ParseInt(fields[1], line_no);
    if (count < 1) throw FormatError(line_no, std::string(key) + " must be positive");
    return static_cast<int>(count);
  };
  const int m = keyed(1, "items");
  const int n = keyed(2, "bidders");

  std::vector<Valuation> edges;
  for (std::size_t idx = 3; idx < lines.size(); ++idx) {
    const int line_no = static_cast<int>(idx) + 1;
    if (lines[idx].empty()) {
      if (idx + 1 == lines.size()) break;
      throw FormatError(line_no, "empty line");
    }
    const auto fields = SplitFields(lines[idx]);
    if (fields.size() != 4 || fields[0] != "edge") {
      throw FormatError(line_no, "expected 'edge <item> <bidder> <value>'");
    }
    const long item = ParseInt(fields[1], line_no);
    const long bidder = ParseInt(fields[2], line_no);
    edges.push_back({static_cast<int>(item - 1), static_cast<int>(bidder - 1),
                     ParseDouble(fields[3], line_no)});
  }
  return Instance::FromEdges(m, n, edges);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << serialize_instance(inst);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace efp
