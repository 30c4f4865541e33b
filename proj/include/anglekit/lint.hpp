#pragma once

// Notation linter over the expression language.
//
// Input is line oriented. Besides plain expressions two declarations exist:
//   length <id>[, <id>...]        the identifiers denote lengths
//   angle <id> [= <expr>]         the identifier denotes an angle value
// `#` starts a comment.
//
// Rules:
//   RAD-IN-TRIG-ARG           an angle unit inside the argument of sin, cos or tan;
//                             their argument is the angular measure, a pure number.
//   MISSING-REFERENCE-SYMBOL  an angle identifier assigned a bare number or
//                             π-expression; the reference angle symbol is required.
//   MAGNITUDE-AS-QUOTIENT     an angle identifier equated to length/length
//                             (α = s/r instead of s = φ·r).

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "anglekit/errors.hpp"
#include "anglekit/textio.hpp"

namespace anglekit {

enum class LintRule { rad_in_trig_arg, missing_reference_symbol, magnitude_as_quotient };

inline std::string_view rule_id(LintRule r) {
  switch (r) {
    case LintRule::rad_in_trig_arg: return "RAD-IN-TRIG-ARG";
    case LintRule::missing_reference_symbol: return "MISSING-REFERENCE-SYMBOL";
    case LintRule::magnitude_as_quotient: return "MAGNITUDE-AS-QUOTIENT";
  }
  return "";
}

/// 1-based line and column; the column counts code points.
struct LintPosition {
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const LintPosition&, const LintPosition&) = default;
};

struct LintFinding {
  std::optional<LintRule> rule;  // nullopt: the line did not parse
  LintPosition position;
  std::string message;
  std::string excerpt;
};

namespace lint_detail {

inline std::size_t column_of(std::string_view line, std::size_t byte_offset) {
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte_offset && i < line.size(); ++i)
    if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80) ++col;
  return col;
}

inline bool is_trig_call(const ExpressionNode& n) {
  return n.kind == NodeKind::call && (n.text == "sin" || n.text == "cos" || n.text == "tan");
}

// Only numbers (π included) joined by arithmetic.
inline bool is_bare_numeric(const ExpressionNode& n) {
  switch (n.kind) {
    case NodeKind::number: return true;
    case NodeKind::sum:
    case NodeKind::product:
    case NodeKind::quotient:
      return std::all_of(n.children.begin(), n.children.end(), is_bare_numeric);
    default: return false;
  }
}

class Linter {
 public:
  std::vector<LintFinding> run(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty() || line_no == 0) {
      const std::size_t nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      line_ = line;
      line_no_ = line_no;
      statement();
      if (nl == std::string_view::npos) break;
    }
    return std::move(findings_);
  }

 private:
  void statement() {
    std::string_view code = line_.substr(0, line_.find('#'));
    textio_detail::Cursor c(code);
    c.skip_ws();
    if (c.at_end()) return;
    try {
      const std::size_t kw_at = c.pos();
      if (c.consume_word("length") && (c.peek() == ' ' || c.peek() == '\t')) {
        declare_lengths(c);
        return;
      }
      c.reset(kw_at);
      if (c.consume_word("angle") && (c.peek() == ' ' || c.peek() == '\t')) {
        declare_angle(c, code);
        return;
      }
      c.reset(kw_at);
      const ExpressionNode root = parse_expression(code);
      check_trig_args(root, 0);
      if (root.kind == NodeKind::equality) {
        const auto& lhs = root.children[0];
        const auto& rhs = root.children[1];
        if (is_angle(lhs)) check_angle_assignment(rhs, 0);
        else if (is_angle(rhs)) check_angle_assignment(lhs, 0);
      }
    } catch (const parse_error& e) {
      report(std::nullopt, e.position(), e.position(), std::string("syntax error: ") + e.what());
    }
  }

  void declare_lengths(textio_detail::Cursor& c) {
    for (;;) {
      c.skip_ws();
      const std::size_t at = c.pos();
      const auto id = c.take_identifier();
      if (id.empty()) throw parse_error("expected identifier", at);
      lengths_.insert(std::string(id));
      angles_.erase(std::string(id));
      c.skip_ws();
      if (c.at_end()) return;
      if (!c.consume(",")) throw parse_error("expected ','", c.pos());
    }
  }

  void declare_angle(textio_detail::Cursor& c, std::string_view code) {
    c.skip_ws();
    const std::size_t at = c.pos();
    const auto id = c.take_identifier();
    if (id.empty()) throw parse_error("expected identifier", at);
    angles_.insert(std::string(id));
    lengths_.erase(std::string(id));
    c.skip_ws();
    if (c.at_end()) return;
    if (c.peek() != '=') throw parse_error("expected '='", c.pos());
    const std::size_t base = c.pos() + 1;
    ExpressionNode rhs;
    try {
      rhs = parse_expression(code.substr(base));
    } catch (const parse_error& e) {
      throw parse_error("invalid expression", base + e.position());
    }
    if (rhs.kind == NodeKind::equality) throw parse_error("unexpected '='", base + rhs.children[1].begin);
    check_trig_args(rhs, base);
    check_angle_assignment(rhs, base);
  }

  bool is_angle(const ExpressionNode& n) const {
    return n.kind == NodeKind::identifier && angles_.count(n.text) != 0;
  }
  bool is_length(const ExpressionNode& n) const {
    return n.kind == NodeKind::identifier && lengths_.count(n.text) != 0;
  }

  void check_trig_args(const ExpressionNode& n, std::size_t base) {
    if (is_trig_call(n)) report_units_in(n.children[0], n.text, base);
    for (const auto& child : n.children) check_trig_args(child, base);
  }

  void report_units_in(const ExpressionNode& n, const std::string& fn, std::size_t base) {
    if (n.kind == NodeKind::quantity) {
      report(LintRule::rad_in_trig_arg, base + n.begin, base + n.end,
             "angle unit '" + n.text + "' in the argument of " + fn +
                 "; its argument is an angular measure, a pure number");
      return;
    }
    // nested trig calls are visited by check_trig_args on their own
    if (is_trig_call(n)) return;
    for (const auto& child : n.children) report_units_in(child, fn, base);
  }

  void check_angle_assignment(const ExpressionNode& value, std::size_t base) {
    if (value.kind == NodeKind::quotient && is_length(value.children[0]) && is_length(value.children[1])) {
      report(LintRule::magnitude_as_quotient, base + value.begin, base + value.end,
             "angle equated to a quotient of lengths; write s = φ·r with the angular measure φ");
      return;
    }
    if (is_bare_numeric(value)) {
      report(LintRule::missing_reference_symbol, base + value.begin, base + value.end,
             "angle value without the symbol of its reference angle");
    }
  }

  void report(std::optional<LintRule> rule, std::size_t begin, std::size_t end, std::string message) {
    begin = std::min(begin, line_.size());
    end = std::clamp(end, begin, line_.size());
    LintFinding f;
    f.rule = rule;
    f.position = {line_no_, column_of(line_, begin)};
    f.message = std::move(message);
    f.excerpt = std::string(end > begin ? line_.substr(begin, end - begin) : line_);
    findings_.push_back(std::move(f));
  }

  std::set<std::string> lengths_;
  std::set<std::string> angles_;
  std::vector<LintFinding> findings_;
  std::string_view line_;
  std::size_t line_no_ = 0;
};

}  // namespace lint_detail

/// Runs every rule over `text`. Lines that do not parse yield a finding
/// without a rule and are otherwise skipped.
inline std::vector<LintFinding> lint(std::string_view text) { return lint_detail::Linter{}.run(text); }

}  // namespace anglekit
