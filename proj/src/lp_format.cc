// SPDX-License-Identifier: Apache-2.0

#include "efp/lp_format.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace efp {
namespace {

constexpr int kTermsPerLine = 8;

std::string FormatNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Shortest text that parses back to the same double.
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof(buf), x).ptr;
  return std::string(buf, end);
}

void WriteTerms(std::ostringstream& out, std::span<const Term> terms,
                const MipModel& model) {
  if (terms.empty()) {
    // An empty linear part still needs a term to be well-formed.
    out << " 0 " << model.variable(0).name;
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
    const double c = terms[k].coef;
    if (k == 0) {
      out << (c < 0 ? " - " : " ");
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    out << FormatNumber(std::abs(c)) << ' ' << model.variable(terms[k].var).name;
  }
}

const char* RelationText(Relation r) {
  switch (r) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "=";
}

// ---------------------------------------------------------------------------
// Reader

enum class TokenKind { kName, kNumber, kSign, kRelation, kColon };

struct Token {
  TokenKind kind;
  std::string text;
  double number = 0.0;
  int line = 0;
};

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         std::string_view("_.!\"#$%&()/,;?@'`{}|~[]^").find(c) !=
             std::string_view::npos;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool IsInfinityWord(const std::string& s) {
  const std::string l = Lower(s);
  return l == "inf" || l == "infinity";
}

void Tokenize(std::string_view line, int line_no, std::vector<Token>& out) {
  std::size_t k = 0;
  while (k < line.size()) {
    const char c = line[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
    } else if (c == '+' || c == '-') {
      out.push_back({TokenKind::kSign, std::string(1, c), 0.0, line_no});
      ++k;
    } else if (c == ':') {
      out.push_back({TokenKind::kColon, ":", 0.0, line_no});
      ++k;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string rel(1, c);
      ++k;
      if (k < line.size() && (line[k] == '=' || line[k] == '<' || line[k] == '>')) {
        rel += line[k++];
      }
      std::string norm;
      if (rel.find('<') != std::string::npos) norm = "<=";
      else if (rel.find('>') != std::string::npos) norm = ">=";
      else norm = "=";
      out.push_back({TokenKind::kRelation, norm, 0.0, line_no});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(line.substr(k));
      char* end = nullptr;
      const double value = std::strtod(rest.c_str(), &end);
      const std::size_t used = static_cast<std::size_t>(end - rest.c_str());
      if (used == 0) throw LpParseError(line_no, "malformed number");
      out.push_back({TokenKind::kNumber, rest.substr(0, used), value, line_no});
      k += used;
    } else if (IsNameChar(c)) {
      std::size_t start = k;
      while (k < line.size() && IsNameChar(line[k])) ++k;
      std::string name(line.substr(start, k - start));
      if (IsInfinityWord(name)) {
        out.push_back({TokenKind::kNumber, name, kInfinity, line_no});
      } else {
        out.push_back({TokenKind::kName, name, 0.0, line_no});
      }
    } else {
      throw LpParseError(line_no, std::string("unexpected character '") + c + "'");
    }
  }
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

std::optional<std::pair<Section, Sense>> SectionHeader(std::string_view line) {
  std::string l = Lower(line);
  l.erase(0, l.find_first_not_of(" \t"));
  l.erase(l.find_last_not_of(" \t\r") + 1);
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max") {
    return std::pair{Section::kObjective, Sense::kMaximize};
  }
  if (l == "minimize" || l == "minimise" || l == "minimum" || l == "min") {
    return std::pair{Section::kObjective, Sense::kMinimize};
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") {
    return std::pair{Section::kConstraints, Sense::kMaximize};
  }
  if (l == "bounds" || l == "bound") return std::pair{Section::kBounds, Sense::kMaximize};
  if (l == "binaries" || l == "binary" || l == "bin") {
    return std::pair{Section::kBinaries, Sense::kMaximize};
  }
  if (l == "generals" || l == "general" || l == "gen") {
    return std::pair{Section::kGenerals, Sense::kMaximize};
  }
  if (l == "end") return std::pair{Section::kEnd, Sense::kMaximize};
  return std::nullopt;
}

struct NamedTerm {
  std::string var;
  double coef;
};

struct RawRow {
  std::string name;
  std::vector<NamedTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek(std::size_t ahead = 0) const { return tokens_[pos_ + ahead]; }
  bool has(std::size_t ahead) const { return pos_ + ahead < tokens_.size(); }
  const Token& take() { return tokens_[pos_++]; }
  int line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : peek().line; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Reads "[label:]" if present.
std::string ReadLabel(TokenStream& ts) {
  if (ts.has(1) && ts.peek().kind == TokenKind::kName &&
      ts.peek(1).kind == TokenKind::kColon) {
    std::string label = ts.take().text;
    ts.take();
    return label;
  }
  return {};
}

// Reads a linear expression until a relation, a label of the next row, or the
// end of the stream. Constants are accumulated into *constant.
std::vector<NamedTerm> ReadExpression(TokenStream& ts, double* constant) {
  std::vector<NamedTerm> terms;
  while (!ts.done()) {
    if (ts.peek().kind == TokenKind::kRelation) break;
    if (ts.has(1) && ts.peek().kind == TokenKind::kName &&
        ts.peek(1).kind == TokenKind::kColon) {
      break;
    }
    double sign = 1.0;
    bool any = false;
    while (!ts.done() && ts.peek().kind == TokenKind::kSign) {
      if (ts.take().text == "-") sign = -sign;
      any = true;
    }
    double coef = 1.0;
    bool has_coef = false;
    if (!ts.done() && ts.peek().kind == TokenKind::kNumber) {
      coef = ts.take().number;
      has_coef = true;
    }
    if (!ts.done() && ts.peek().kind == TokenKind::kName &&
        !(ts.has(1) && ts.peek(1).kind == TokenKind::kColon)) {
      terms.push_back({ts.take().text, sign * coef});
    } else if (has_coef) {
      if (!constant) throw LpParseError(ts.line(), "unexpected constant");
      *constant += sign * coef;
    } else if (any || !ts.done()) {
      throw LpParseError(ts.line(), "expected a term");
    }
  }
  return terms;
}

double ReadSignedNumber(TokenStream& ts) {
  double sign = 1.0;
  while (!ts.done() && ts.peek().kind == TokenKind::kSign) {
    if (ts.take().text == "-") sign = -sign;
  }
  if (ts.done() || ts.peek().kind != TokenKind::kNumber) {
    throw LpParseError(ts.line(), "expected a number");
  }
  return sign * ts.take().number;
}

Relation ToRelation(const std::string& text) {
  if (text == "<=") return Relation::kLessEqual;
  if (text == ">=") return Relation::kGreaterEqual;
  return Relation::kEqual;
}

}  // namespace

LpParseError::LpParseError(int line, const std::string& what)
    : Error("LP text line " + std::to_string(line) + ": " + what), line_(line) {}

std::string export_lp_text(const MipModel& model) {
  std::ostringstream out;
  out << (model.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  out << " obj:";
  WriteTerms(out, model.objective(), model);
  if (model.objective_offset() != 0.0) {
    out << (model.objective_offset() < 0 ? " - " : " + ")
        << FormatNumber(std::abs(model.objective_offset()));
  }
  out << "\nSubject To\n";
  for (const Constraint& c : model.constraints()) {
    out << ' ' << c.name << ':';
    WriteTerms(out, c.terms, model);
    out << ' ' << RelationText(c.relation) << ' ' << FormatNumber(c.rhs) << '\n';
  }

  out << "Bounds\n";
  std::vector<const Variable*> binaries;
  std::vector<const Variable*> generals;
  for (const Variable& v : model.variables()) {
    const bool binary = v.integer && v.lower == 0.0 && v.upper == 1.0;
    if (binary) {
      binaries.push_back(&v);
      continue;
    }
    if (v.integer) generals.push_back(&v);
    if (v.lower == v.upper) {
      out << ' ' << v.name << " = " << FormatNumber(v.lower) << '\n';
    } else if (std::isinf(v.upper)) {
      if (v.lower != 0.0) out << ' ' << v.name << " >= " << FormatNumber(v.lower) << '\n';
    } else {
      out << ' ' << FormatNumber(v.lower) << " <= " << v.name
          << " <= " << FormatNumber(v.upper) << '\n';
    }
  }
  auto write_names = [&](const char* header, const std::vector<const Variable*>& vars) {
    if (vars.empty()) return;
    out << header << '\n';
    for (std::size_t k = 0; k < vars.size(); ++k) {
      out << ' ' << vars[k]->name;
      if (k % kTermsPerLine == kTermsPerLine - 1 || k + 1 == vars.size()) out << '\n';
    }
  };
  write_names("Binaries", binaries);
  write_names("Generals", generals);
  out << "End\n";
  return out.str();
}

MipModel parse_lp_text(std::string_view text) {
  Section section = Section::kNone;
  Sense sense = Sense::kMaximize;
  bool seen_objective = false;
  std::vector<Token> objective_tokens;
  std::vector<Token> constraint_tokens;
  std::vector<std::vector<Token>> bound_lines;
  std::vector<std::string> binary_names;
  std::vector<std::string> general_names;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size() && section != Section::kEnd) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto cut = line.find('\\'); cut != std::string_view::npos) {
      line = line.substr(0, cut);
    }
    if (auto header = SectionHeader(line)) {
      section = header->first;
      if (section == Section::kObjective) {
        sense = header->second;
        seen_objective = true;
      }
      if (end == text.size()) break;
      continue;
    }
    std::vector<Token> tokens;
    Tokenize(line, line_no, tokens);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    switch (section) {
      case Section::kNone:
        throw LpParseError(line_no, "content before the objective section");
      case Section::kObjective:
        objective_tokens.insert(objective_tokens.end(), tokens.begin(), tokens.end());
        break;
      case Section::kConstraints:
        constraint_tokens.insert(constraint_tokens.end(), tokens.begin(), tokens.end());
        break;
      case Section::kBounds:
        bound_lines.push_back(std::move(tokens));
        break;
      case Section::kBinaries:
      case Section::kGenerals:
        for (const Token& t : tokens) {
          if (t.kind != TokenKind::kName) throw LpParseError(line_no, "expected a variable name");
          (section == Section::kBinaries ? binary_names : general_names).push_back(t.text);
        }
        break;
      case Section::kEnd:
        break;
    }
    if (end == text.size()) break;
  }
  if (!seen_objective) throw LpParseError(line_no, "missing objective section");

  // Variables are created in order of first appearance.
  std::vector<std::string> order;
  std::unordered_map<std::string, int> seen;
  auto note = [&](const std::string& name) {
    if (seen.emplace(name, static_cast<int>(order.size())).second) order.push_back(name);
  };

  TokenStream obj_ts(std::move(objective_tokens));
  ReadLabel(obj_ts);
  double offset = 0.0;
  std::vector<NamedTerm> objective = ReadExpression(obj_ts, &offset);
  if (!obj_ts.done()) throw LpParseError(obj_ts.line(), "trailing tokens in objective");
  for (const auto& t : objective) note(t.var);

  std::vector<RawRow> rows;
  TokenStream row_ts(std::move(constraint_tokens));
  while (!row_ts.done()) {
    RawRow row;
    row.name = ReadLabel(row_ts);
    if (row.name.empty()) row.name = "R" + std::to_string(rows.size() + 1);
    double lhs_constant = 0.0;
    row.terms = ReadExpression(row_ts, &lhs_constant);
    if (row_ts.done() || row_ts.peek().kind != TokenKind::kRelation) {
      throw LpParseError(row_ts.line(), "constraint " + row.name + " lacks a relation");
    }
    row.relation = ToRelation(row_ts.take().text);
    row.rhs = ReadSignedNumber(row_ts) - lhs_constant;
    for (const auto& t : row.terms) note(t.var);
    rows.push_back(std::move(row));
  }

  struct BoundSpec {
    std::optional<double> lower, upper;
  };
  std::unordered_map<std::string, BoundSpec> bounds;
  for (const auto& line_tokens : bound_lines) {
    const int ln = line_tokens.front().line;
    TokenStream ts(line_tokens);
    std::optional<double> leading;
    Relation leading_rel = Relation::kLessEqual;
    if (ts.peek().kind != TokenKind::kName) {
      leading = ReadSignedNumber(ts);
      if (ts.done() || ts.peek().kind != TokenKind::kRelation) throw LpParseError(ln, "malformed bound");
      leading_rel = ToRelation(ts.take().text);
    }
    if (ts.done() || ts.peek().kind != TokenKind::kName) throw LpParseError(ln, "bound without variable");
    const std::string var = ts.take().text;
    note(var);
    BoundSpec& spec = bounds[var];
    if (leading) {
      // "l <= x" sets a lower bound, "u >= x" an upper bound.
      if (leading_rel == Relation::kLessEqual) spec.lower = *leading;
      else if (leading_rel == Relation::kGreaterEqual) spec.upper = *leading;
      else spec.lower = spec.upper = *leading;
    }
    if (!ts.done() && ts.peek().kind == TokenKind::kName && Lower(ts.peek().text) == "free") {
      ts.take();
      spec.lower = -kInfinity;
      spec.upper = kInfinity;
    } else if (!ts.done()) {
      if (ts.peek().kind != TokenKind::kRelation) throw LpParseError(ln, "malformed bound");
      const Relation rel = ToRelation(ts.take().text);
      const double value = ReadSignedNumber(ts);
      if (rel == Relation::kLessEqual) spec.upper = value;
      else if (rel == Relation::kGreaterEqual) spec.lower = value;
      else spec.lower = spec.upper = value;
    }
    if (!ts.done()) throw LpParseError(ln, "trailing tokens in bound");
  }
  for (const auto& name : binary_names) note(name);
  for (const auto& name : general_names) note(name);
  const std::unordered_set<std::string> binary_set(binary_names.begin(), binary_names.end());
  const std::unordered_set<std::string> general_set(general_names.begin(), general_names.end());

  MipModel model(sense);
  for (const std::string& name : order) {
    double lower = 0.0, upper = kInfinity;
    if (auto it = bounds.find(name); it != bounds.end()) {
      if (it->second.lower) lower = *it->second.lower;
      if (it->second.upper) upper = *it->second.upper;
    }
    bool integer = false;
    if (binary_set.contains(name)) {
      lower = 0.0;
      upper = 1.0;
      integer = true;
    } else if (general_set.contains(name)) {
      integer = true;
    }
    if (!std::isfinite(lower)) {
      throw LpParseError(0, "free variable " + name + " is not supported");
    }
    model.add_variable(name, lower, upper, integer);
  }
  auto resolve = [&](const std::vector<NamedTerm>& named) {
    std::vector<Term> terms;
    terms.reserve(named.size());
    for (const auto& t : named) terms.push_back({model.find_variable(t.var), t.coef});
    return terms;
  };
  model.set_objective(resolve(objective), offset);
  for (const RawRow& row : rows) {
    model.add_constraint(row.name, resolve(row.terms), row.relation, row.rhs);
  }
  return model;
}

}  // namespace efp
