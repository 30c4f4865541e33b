#pragma once

// Command-line front end. `run` is kept separate from main() so the test
// suites can drive it in-process and compare transcripts byte for byte.
//
// Exit codes: 0 ok, 1 lint findings, 2 parse error, 3 unknown unit,
// 4 nonpositive radius, 5 value out of range, 6 domain error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "anglekit/anglekit.hpp"

namespace anglekit::cli {

enum ExitCode : int {
  ok = 0,
  lint_findings = 1,
  parse_failure = 2,
  unknown_unit = 3,
  bad_radius = 4,
  out_of_range = 5,
  domain_failure = 6,
};

struct Options {
  std::string format = "human";
  bool ascii = false;
  int digits = 17;

  bool records() const { return format == "records"; }
};

/// Error with a fixed exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

namespace detail {

// Ordered key=value pairs forming one record set.
using Record = std::vector<std::pair<std::string, std::string>>;

inline void print_record(std::ostream& out, const Record& r) {
  for (const auto& [k, v] : r) out << k << '=' << v << '\n';
}

inline std::string render_scalar(const ExactScalar& x, const Options& opt) {
  return x.is_exact() ? to_string(x, opt.ascii) : format_float(x.to_float(), opt.digits);
}

inline std::string render_angle(const AngleValue& v, const Options& opt) {
  return format_angle_auto(v, opt.digits, opt.ascii);
}

inline ReferenceAngle unit_or_fail(const std::string& symbol) {
  auto ref = find_reference(symbol);
  if (!ref) throw CommandError(unknown_unit, "unknown unit '" + symbol + "'");
  return *ref;
}

// An angle literal, or a bare number taken as an angular measure (radian).
inline AngleValue angle_or_measure(const std::string& text) {
  try {
    return parse_angle(text).parsed;
  } catch (const missing_reference_angle_error&) {
    return AngleValue{parse_number(text), radian()};
  }
}

inline double positive_radius(const std::string& text) {
  const double r = parse_number(text).to_float();
  if (!(r > 0.0) || !std::isfinite(r)) throw CommandError(bad_radius, "radius must be positive, got " + text);
  return r;
}

inline Magnitude magnitude_or_fail(const AngleValue& v) {
  const Measure m = measure_of(v);
  if (m.phi.sign() <= 0 || m.phi > two_pi())
    throw CommandError(out_of_range, "angular magnitude needs a measure in (0, 2π]");
  return Magnitude::from_measure(m);
}

inline std::string exact_flag(const ExactScalar& x) { return x.is_exact() ? "true" : "false"; }

}  // namespace detail

inline int cmd_convert(const std::string& literal, const std::string& unit, const Options& opt, std::ostream& out) {
  const AngleValue v = parse_angle(literal).parsed;
  const AngleValue r = convert(v, detail::unit_or_fail(unit));
  if (opt.records()) {
    detail::print_record(out, {{"command", "convert"},
                               {"value", detail::render_scalar(r.value, opt)},
                               {"unit", r.ref.symbol(opt.ascii)},
                               {"exact", detail::exact_flag(r.value)},
                               {"float", format_float(r.value.to_float(), opt.digits)}});
  } else {
    out << detail::render_angle(r, opt) << '\n';
  }
  return ok;
}

inline int cmd_measure(const std::string& literal, const Options& opt, std::ostream& out) {
  const Measure m = measure_of(parse_angle(literal).parsed);
  if (opt.records()) {
    detail::print_record(out, {{"command", "measure"},
                               {"value", detail::render_scalar(m.phi, opt)},
                               {"exact", detail::exact_flag(m.phi)},
                               {"float", format_float(m.phi.to_float(), opt.digits)}});
  } else {
    out << detail::render_scalar(m.phi, opt) << '\n';
  }
  return ok;
}

inline int cmd_arc(const std::string& angle, const std::string& radius, const Options& opt, std::ostream& out) {
  const Measure m = measure_of(detail::angle_or_measure(angle));
  const double r = detail::positive_radius(radius);
  if (m.phi.sign() <= 0 || m.phi > two_pi()) throw CommandError(out_of_range, "arc measure must lie in (0, 2π]");
  const double s = arc_length(ArcSpec(r, m));

  // symbolic s = φ·r when φ involves π
  std::optional<std::string> symbolic;
  std::optional<std::string> product;
  if (m.phi.is_exact() && m.phi.pi_exponent() != 0) {
    symbolic = detail::render_scalar(m.phi, opt) + (opt.ascii ? "*r" : "·r");
    const ExactScalar r_exact = parse_number(radius);
    if (r_exact.is_exact()) {
      try {
        product = detail::render_scalar(m.phi * r_exact, opt);
      } catch (const arithmetic_overflow&) {
      }
    }
  }
  if (opt.records()) {
    detail::Record rec{{"command", "arc"},
                       {"measure", detail::render_scalar(m.phi, opt)},
                       {"radius", format_float(r, opt.digits)},
                       {"length", format_float(s, opt.digits)}};
    if (product) rec.emplace_back("symbolic", *product);
    detail::print_record(out, rec);
  } else {
    out << format_float(s, opt.digits);
    if (symbolic) out << " (s = " << *symbolic << (product ? " = " + *product : "") << ")";
    out << '\n';
  }
  return ok;
}

inline int cmd_chord(const std::string& angle, const std::string& radius, const Options& opt, std::ostream& out) {
  const AngleValue v = detail::angle_or_measure(angle);
  const double r = detail::positive_radius(radius);
  const Measure m = measure_of(v);
  if (m.phi.sign() < 0 || m.phi > two_pi()) throw CommandError(out_of_range, "chord needs a measure in [0, 2π]");
  const double c = chord_length(v, r);
  if (opt.records()) {
    detail::print_record(out, {{"command", "chord"},
                               {"measure", detail::render_scalar(m.phi, opt)},
                               {"radius", format_float(r, opt.digits)},
                               {"length", format_float(c, opt.digits)}});
  } else {
    out << format_float(c, opt.digits) << '\n';
  }
  return ok;
}

inline int cmd_add(const std::string& a, const std::string& b, const Options& opt, std::ostream& out) {
  const AngleValue va = detail::angle_or_measure(a);
  const AngleValue vb = detail::angle_or_measure(b);
  const Magnitude sum = semigroup_add(detail::magnitude_or_fail(va), detail::magnitude_or_fail(vb));
  const AngleValue shown = value_from_measure(sum.measure(), va.ref);
  if (opt.records()) {
    detail::print_record(out, {{"command", "add"},
                               {"value", detail::render_scalar(shown.value, opt)},
                               {"unit", shown.ref.symbol(opt.ascii)},
                               {"measure", detail::render_scalar(sum.phi(), opt)},
                               {"exact", detail::exact_flag(sum.phi())}});
  } else {
    out << detail::render_angle(shown, opt) << '\n';
  }
  return ok;
}

inline int cmd_points(const std::vector<std::string>& coords, const std::optional<std::string>& unit,
                      const Options& opt, std::ostream& out) {
  if (coords.size() != 6) throw CommandError(parse_failure, "points needs six coordinates: px py ox oy qx qy");
  std::vector<double> c;
  for (const auto& s : coords) c.push_back(parse_number(s).to_float());
  const Magnitude m = angle_from_points({c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]});
  std::optional<AngleValue> shown;
  if (unit) shown = value_from_measure(m.measure(), detail::unit_or_fail(*unit));
  if (opt.records()) {
    detail::Record rec{{"command", "points"},
                       {"measure", detail::render_scalar(m.phi(), opt)},
                       {"exact", detail::exact_flag(m.phi())}};
    if (shown) {
      rec.emplace_back("value", detail::render_scalar(shown->value, opt));
      rec.emplace_back("unit", shown->ref.symbol(opt.ascii));
    }
    detail::print_record(out, rec);
  } else {
    out << (shown ? detail::render_angle(*shown, opt) : detail::render_scalar(m.phi(), opt)) << '\n';
  }
  return ok;
}

inline int cmd_trig(const std::string& fn, const std::string& argument, const std::string& period_text,
                    const Options& opt, std::ostream& out) {
  const ExactScalar period = parse_number(period_text);
  if (!period.is_exact() || period.sign() <= 0)
    throw CommandError(domain_failure, "period must be an exact positive number");

  if (fn == "arcsin" || fn == "arccos") {
    const double x = parse_number(argument).to_float();
    const AngleValue v =
        eval_inverse(fn == "arcsin" ? InverseTrigKind::arcsin : InverseTrigKind::arccos, period, x);
    if (opt.records()) {
      detail::print_record(out, {{"command", "trig"},
                                 {"function", fn},
                                 {"value", detail::render_scalar(v.value, opt)},
                                 {"unit", v.ref.symbol(opt.ascii)},
                                 {"exact", detail::exact_flag(v.value)}});
    } else {
      out << detail::render_angle(v, opt) << '\n';
    }
    return ok;
  }

  TrigKind kind;
  if (fn == "sin") kind = TrigKind::sin;
  else if (fn == "cos") kind = TrigKind::cos;
  else if (fn == "tan") kind = TrigKind::tan;
  else throw CommandError(parse_failure, "unknown function '" + fn + "'");

  // An angle unit on the argument is the notation error the linter reports.
  bool has_unit = false;
  try {
    parse_angle(argument);
    has_unit = true;
  } catch (const parse_error&) {
  }
  if (has_unit)
    throw CommandError(domain_failure, "RAD-IN-TRIG-ARG: the argument of " + fn +
                                           " is a pure number; drop the unit (use --period to choose p)");

  const double x = parse_number(argument).to_float();
  const double y = eval_periodized(PeriodizedFunction(kind, period), x);
  if (opt.records()) {
    detail::print_record(out, {{"command", "trig"},
                               {"function", fn},
                               {"period", detail::render_scalar(period, opt)},
                               {"value", format_float(y, opt.digits)}});
  } else {
    out << format_float(y, opt.digits) << '\n';
  }
  return ok;
}

inline int cmd_classify(const std::string& literal, const Options& opt, std::ostream& out) {
  const AngleValue v = parse_angle(literal).parsed;
  AngleClass c;
  try {
    c = classify(v);
  } catch (const domain_error& e) {
    throw CommandError(out_of_range, e.what());
  }
  if (opt.records()) {
    detail::print_record(out, {{"command", "classify"}, {"class", std::string(class_name(c))}});
  } else {
    out << class_name(c) << '\n';
  }
  return ok;
}

inline int cmd_table(const Options& opt, std::ostream& out) {
  const auto refs = builtin_references();
  if (opt.records()) {
    bool first = true;
    for (const auto& from : refs)
      for (const auto& to : refs) {
        if (!first) out << '\n';
        first = false;
        detail::print_record(out, {{"from", from.symbol(opt.ascii)},
                                   {"to", to.symbol(opt.ascii)},
                                   {"factor", detail::render_scalar(to.full_circle() / from.full_circle(), opt)}});
      }
    return ok;
  }
  // 1 <row unit> expressed in <column unit>
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"1 x ="});
  for (const auto& to : refs) cells[0].push_back(to.symbol(opt.ascii));
  for (const auto& from : refs) {
    std::vector<std::string> row{from.symbol(opt.ascii)};
    for (const auto& to : refs) row.push_back(detail::render_scalar(to.full_circle() / from.full_circle(), opt));
    cells.push_back(std::move(row));
  }
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i] + std::string(widths[i] - width(row[i]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return ok;
}

inline int cmd_lint(const std::optional<std::string>& path, const Options& opt, std::istream& in,
                    std::ostream& out) {
  std::string text;
  if (!path || *path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (in.bad()) throw CommandError(parse_failure, "cannot read standard input");
  } else {
    std::ifstream file(*path, std::ios::binary);
    if (!file) throw CommandError(parse_failure, "cannot read '" + *path + "'");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    if (file.bad()) throw CommandError(parse_failure, "cannot read '" + *path + "'");
  }
  const auto findings = lint(text);
  bool first = true;
  for (const auto& f : findings) {
    const std::string rule = f.rule ? std::string(rule_id(*f.rule)) : "SYNTAX";
    if (opt.records()) {
      if (!first) out << '\n';
      detail::print_record(out, {{"rule", rule},
                                 {"line", std::to_string(f.position.line)},
                                 {"column", std::to_string(f.position.column)},
                                 {"message", f.message},
                                 {"excerpt", f.excerpt}});
    } else {
      out << f.position.line << ':' << f.position.column << ": " << rule << ": " << f.message << " [" << f.excerpt
          << "]\n";
    }
    first = false;
  }
  return findings.empty() ? ok : lint_findings;
}

/// Parses `args` (without the program name), runs one subcommand and returns
/// the exit code. Diagnostics go to `err` prefixed with "error: ".
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Angle values, measures and reference angles", "anglekit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "records"}));
  app.add_flag("--ascii", opt.ascii, "ASCII symbols (pi, deg, arcmin, arcsec)");
  app.add_option("--digits", opt.digits, "Significant digits for inexact results")->check(CLI::Range(1, 17));

  std::string a, b, unit_name, fn, period = "2pi";
  std::vector<std::string> coords;
  std::optional<std::string> path, points_unit;
  std::function<int()> action;

  auto* convert_cmd = app.add_subcommand("convert", "Convert an angle value to another reference angle");
  convert_cmd->add_option("literal", a)->required();
  convert_cmd->add_option("unit", unit_name)->required();
  convert_cmd->callback([&] { action = [&] { return cmd_convert(a, unit_name, opt, out); }; });

  auto* measure_cmd = app.add_subcommand("measure", "Angular measure (a pure number) of an angle value");
  measure_cmd->add_option("literal", a)->required();
  measure_cmd->callback([&] { action = [&] { return cmd_measure(a, opt, out); }; });

  auto* arc_cmd = app.add_subcommand("arc", "Arc length s = φ·r");
  arc_cmd->add_option("angle", a, "Angle literal or bare angular measure")->required();
  arc_cmd->add_option("radius", b)->required();
  arc_cmd->callback([&] { action = [&] { return cmd_arc(a, b, opt, out); }; });

  auto* chord_cmd = app.add_subcommand("chord", "Chord length 2r·sin(φ/2)");
  chord_cmd->add_option("angle", a, "Angle literal or bare angular measure")->required();
  chord_cmd->add_option("radius", b)->required();
  chord_cmd->callback([&] { action = [&] { return cmd_chord(a, b, opt, out); }; });

  auto* add_cmd = app.add_subcommand("add", "Add two magnitudes modulo the straight angle");
  add_cmd->add_option("first", a)->required();
  add_cmd->add_option("second", b)->required();
  add_cmd->callback([&] { action = [&] { return cmd_add(a, b, opt, out); }; });

  auto* points_cmd = app.add_subcommand("points", "Magnitude of the angle POQ from coordinates px py ox oy qx qy");
  points_cmd->add_option("coords", coords)->required()->expected(6);
  points_cmd->add_option("--unit", points_unit, "Report as a value in this reference angle");
  points_cmd->callback([&] { action = [&] { return cmd_points(coords, points_unit, opt, out); }; });

  auto* trig_cmd = app.add_subcommand("trig", "Sin_p, Cos_p, Tan_p, Arcsin_p, Arccos_p");
  trig_cmd->add_option("function", fn)->required();
  trig_cmd->add_option("argument", a)->required();
  trig_cmd->add_option("--period", period, "Principal period p (default 2pi)");
  trig_cmd->callback([&] { action = [&] { return cmd_trig(fn, a, period, opt, out); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Classify a principal value (zero ... perigon)");
  classify_cmd->add_option("literal", a)->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(a, opt, out); }; });

  auto* table_cmd = app.add_subcommand("table", "Conversion factors between the builtin reference angles");
  table_cmd->callback([&] { action = [&] { return cmd_table(opt, out); }; });

  auto* lint_cmd = app.add_subcommand("lint", "Check angle notation in a file or standard input");
  lint_cmd->add_option("path", path, "Input file ('-' or absent: standard input)");
  lint_cmd->callback([&] { action = [&] { return cmd_lint(path, opt, in, out); }; });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return parse_failure;
  }

  try {
    return action ? action() : parse_failure;
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const unknown_unit_error& e) {
    err << "error: " << e.what() << '\n';
    return unknown_unit;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return parse_failure;
  } catch (const unsupported_form_error& e) {
    err << "error: " << e.what() << '\n';
    return parse_failure;
  } catch (const error& e) {
    // domain, pole, degenerate vertex, zero angle, overflow
    err << "error: " << e.what() << '\n';
    return domain_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return domain_failure;
  }
}

}  // namespace anglekit::cli
