#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voidviz/layout.hpp"
#include "voidviz/parser.hpp"
#include "voidviz/svg.hpp"
#include "voidviz/void_model.hpp"

// Command-line pipeline: read a VoID description, parse it, extract the
// diagram model, lay it out, emit SVG. Exit codes: 0 success, 1 usage
// error, 2 parse error, 3 empty model, 4 input/output failure.

namespace voidviz::cli {

inline constexpr const char* kVersion = "0.1.0";

struct CliOptions {
  std::string input = "-";
  std::optional<std::string> output;
  std::string format = "auto";
  std::optional<std::string> base;
  std::uint64_t seed = 42;
  int iterations = 500;
  int canvas_width = 1000;
  int canvas_height = 1000;
  double min_radius = 20;
  double max_radius = 80;
  double padding = 10;
  bool no_labels = false;
  bool stats = false;
  bool verbose = false;
};

struct ParsedArgs {
  std::optional<CliOptions> options;  // set only when the run should proceed
  int exit_code = 0;
};

namespace detail {

inline bool parse_canvas(const std::string& text, int& w, int& h) {
  std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size()) return false;
  try {
    std::size_t used = 0;
    int pw = std::stoi(text.substr(0, x), &used);
    if (used != x) return false;
    std::string rest = text.substr(x + 1);
    int ph = std::stoi(rest, &used);
    if (used != rest.size()) return false;
    if (pw <= 0 || ph <= 0) return false;
    w = pw;
    h = ph;
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace detail

inline ParsedArgs parse_args(const std::vector<std::string>& args,
                             std::ostream& out, std::ostream& err) {
  CliOptions opt;
  std::string canvas = "1000x1000";

  CLI::App app{"Render a VoID dataset description as an LOD-cloud-style SVG "
               "diagram.",
               "voidviz"};
  app.add_option("input", opt.input,
                 "Input file (Turtle or N-Triples), or '-' for stdin")
      ->capture_default_str();
  app.add_option("-o,--output", opt.output,
                 "Output SVG file (default: stdout)");
  app.add_option("-f,--format", opt.format, "Input format")
      ->check(CLI::IsMember({"auto", "turtle", "ntriples"}))
      ->capture_default_str();
  app.add_option("-b,--base", opt.base, "Base IRI for resolving relative IRIs");
  app.add_option("--seed", opt.seed, "Layout random seed")
      ->capture_default_str();
  app.add_option("--iterations", opt.iterations, "Force-directed iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--canvas", canvas, "Canvas size as WIDTHxHEIGHT")
      ->check(
          [](const std::string& v) -> std::string {
            int w = 0, h = 0;
            if (!detail::parse_canvas(v, w, h))
              return "expected WIDTHxHEIGHT with positive integers, got '" +
                     v + "'";
            return {};
          })
      ->capture_default_str();
  app.add_option("--min-radius", opt.min_radius, "Smallest circle radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-radius", opt.max_radius, "Largest circle radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--padding", opt.padding, "Minimum gap between circle rims")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_flag("--no-labels", opt.no_labels, "Omit text labels");
  app.add_flag("--stats", opt.stats, "Print model summary to stderr");
  app.add_flag("--verbose", opt.verbose, "Print warnings to stderr");
  app.set_version_flag("--version", std::string("voidviz ") + kVersion);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return {std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return {std::nullopt, 1};
  }

  if (opt.min_radius > opt.max_radius) {
    err << "error: --min-radius (" << opt.min_radius
        << ") must not exceed --max-radius (" << opt.max_radius << ")\n\n"
        << app.help();
    return {std::nullopt, 1};
  }
  detail::parse_canvas(canvas, opt.canvas_width, opt.canvas_height);
  return {opt, 0};
}

inline void print_stats(const DiagramModel& model, const CliOptions& opt,
                        std::ostream& err) {
  std::size_t implicit = 0;
  for (const DatasetNode& n : model.nodes)
    if (!n.declared) ++implicit;
  err << "datasets: " << model.nodes.size() << "\n";
  err << "linksets: " << model.edges.size() << "\n";
  err << "implicit: " << implicit << "\n";
  err << "canvas: " << opt.canvas_width << "x" << opt.canvas_height << "\n";
}

namespace detail {

inline void print_warnings(const std::vector<std::string>& warnings,
                           bool enabled, std::ostream& err) {
  if (!enabled) return;
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

}  // namespace detail

inline int run(const CliOptions& opt, std::istream& in, std::ostream& out,
               std::ostream& err) {
  const bool show_warnings = opt.verbose || opt.stats;

  std::string text;
  if (opt.input == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(opt.input, std::ios::binary);
    if (!file) {
      err << "error: cannot read input file '" << opt.input << "'\n";
      return 4;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (file.bad()) {
      err << "error: failed reading input file '" << opt.input << "'\n";
      return 4;
    }
    text = buffer.str();
  }

  Format format;
  if (opt.format == "turtle") {
    format = Format::Turtle;
  } else if (opt.format == "ntriples") {
    format = Format::NTriples;
  } else {
    format = opt.input == "-"
                 ? detect_format(text)
                 : detect_format(text, std::string_view(opt.input));
  }

  std::optional<std::string_view> base;
  if (opt.base) base = *opt.base;
  ParseResult parsed = parse(text, format, base);
  for (const Diagnostic& d : parsed.diagnostics) {
    if (d.severity == Severity::Error) {
      err << "error: line " << d.line << ", column " << d.column << ": "
          << d.message << "\n";
    } else if (show_warnings) {
      err << "warning: line " << d.line << ", column " << d.column << ": "
          << d.message << "\n";
    }
  }
  if (!parsed.ok()) return 2;

  DiagramModel model = extract_model(parsed.graph);
  detail::print_warnings(model.warnings, show_warnings, err);
  if (model.nodes.empty()) {
    err << "error: no datasets found\n";
    return 3;
  }

  LayoutConfig config;
  config.canvas_width = opt.canvas_width;
  config.canvas_height = opt.canvas_height;
  config.seed = opt.seed;
  config.iterations = opt.iterations;
  config.padding = opt.padding;
  config.r_min = opt.min_radius;
  config.r_max = opt.max_radius;
  LayoutResult layout = run_layout(model, config);
  detail::print_warnings(layout.warnings, show_warnings, err);

  Style style;
  style.labels = !opt.no_labels;
  EmitResult emitted = emit_svg(model, layout, style);
  detail::print_warnings(emitted.warnings, show_warnings, err);

  if (opt.stats) print_stats(model, opt, err);

  if (opt.output) {
    std::ofstream file(*opt.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write output file '" << *opt.output << "'\n";
      return 4;
    }
    file << emitted.document.text;
    file.flush();
    if (!file.good()) {
      err << "error: failed writing output file '" << *opt.output << "'\n";
      return 4;
    }
  } else {
    out << emitted.document.text;
  }
  return 0;
}

}  // namespace voidviz::cli
