#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gd3/algebra.hpp"
#include "gd3/io.hpp"
#include "gd3/moves.hpp"
#include "gd3/topology.hpp"
#include "gd3/tracing.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw gd3::DomainError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw gd3::DomainError("cannot write '" + path + "'");
  out << text;
}

gd3::ParseResult load(const std::string& path) { return gd3::parse(read_input(path)); }

std::string side_token(gd3::Side s) { return s == gd3::Side::Co ? "co" : "counter"; }

void print_info(const gd3::ParseResult& pr) {
  const auto& d = pr.diagram;
  const auto& deco = pr.deco;
  gd3::BoundaryReport rep = gd3::boundary_genera(d, deco);
  std::cout << "chords = " << rep.chord_count << "\n";
  std::cout << "cycles = " << rep.cycle_count << "\n";
  std::cout << "colors = " << deco.used_colors().size() << "\n";
  std::cout << "excess = " << rep.excess << "\n";
  std::cout << "genus = " << rep.genus_s << "\n";
  std::cout << "k+ = " << rep.k_plus << "\n";
  std::cout << "k- = " << rep.k_minus << "\n";
  std::cout << "bg+ = " << rep.bg_plus << "\n";
  std::cout << "bg- = " << rep.bg_minus << "\n";
  std::cout << "verdict = " << gd3::to_string(rep.verdict);
  if (rep.verdict == gd3::Verdict::Invalid) std::cout << " (" << rep.invalid_reason << ")";
  std::cout << "\n";
  std::cout << "r-connected = " << (gd3::r_connected(d, deco) ? "yes" : "no") << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Gauss diagrams of 3-manifolds: topology, algebra and the move calculus"};
  app.require_subcommand(1);

  std::string file, out_path, spec_text, script_path, script_out;
  bool general = false, as_dot = false, as_svg = false, as_heegaard = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
  validate_cmd->add_option("file", file)->required();

  auto* info_cmd = app.add_subcommand("info", "genus, boundary genera and classification");
  info_cmd->add_option("file", file)->required();

  auto* cycles_cmd = app.add_subcommand("cycles", "traced cycles and their colors");
  cycles_cmd->add_option("file", file)->required();

  auto* pi1_cmd = app.add_subcommand("pi1", "fundamental group presentation");
  pi1_cmd->add_option("file", file)->required();
  pi1_cmd->add_flag("--general", general, "use the spanning-tree presentation");

  auto* h1_cmd = app.add_subcommand("h1", "first homology group");
  h1_cmd->add_option("file", file)->required();

  auto* hs_cmd = app.add_subcommand("homology-sphere", "test |det| = 1");
  hs_cmd->add_option("file", file)->required();

  auto* matrix_cmd = app.add_subcommand("matrix", "intersection matrix");
  matrix_cmd->add_option("file", file)->required();

  auto* move_cmd = app.add_subcommand("move", "apply a move or a script");
  move_cmd->add_option("file", file)->required();
  move_cmd->add_option("--spec", spec_text, "one move, script-line syntax");
  move_cmd->add_option("--script", script_path, "script file to apply");
  move_cmd->add_option("-o,--out", out_path, "output diagram file");

  auto* norm_cmd = app.add_subcommand("normalize", "make every color cover one cycle");
  norm_cmd->add_option("file", file)->required();
  norm_cmd->add_option("-o,--out", out_path, "output diagram file");
  norm_cmd->add_option("--emit-script", script_out, "write the R-move script");

  auto* example_cmd = app.add_subcommand("example", "print a builtin example");
  std::string example_name;
  example_cmd->add_option("name", example_name)->required();
  example_cmd->add_option("-o,--out", out_path, "output file");

  auto* export_cmd = app.add_subcommand("export", "dot / svg / heegaard reconstruction");
  export_cmd->add_option("file", file)->required();
  export_cmd->add_flag("--dot", as_dot);
  export_cmd->add_flag("--svg", as_svg);
  export_cmd->add_flag("--heegaard", as_heegaard);
  export_cmd->add_option("-o,--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (validate_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    gd3::ValidationReport rep = gd3::validate(pr.diagram, pr.deco);
    if (rep.ok()) {
      std::cout << "valid\n";
      return 0;
    }
    for (const auto& p : rep.problems) std::cout << "invalid: " << p << "\n";
    return 1;
  }
  if (info_cmd->parsed()) {
    print_info(load(file));
    return 0;
  }
  if (cycles_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    std::map<gd3::ColorId, std::string> color_names;
    for (const auto& [n, id] : pr.names.colors) color_names[id] = n;
    for (std::size_t i = 0; i < pr.deco.cycles.size(); ++i) {
      std::cout << "cycle " << (i + 1) << " color ";
      auto it = color_names.find(pr.deco.colors[i]);
      if (it != color_names.end())
        std::cout << it->second;
      else
        std::cout << "#" << pr.deco.colors[i];
      std::cout << " =";
      for (const gd3::ArcSide& s : pr.deco.cycles[i]) {
        std::cout << " " << (s.arc.circle.family == gd3::Family::Plus ? "p" : "m")
                  << (s.arc.circle.index + 1) << ":"
                  << (s.arc.is_whole() ? "w" : std::to_string(s.arc.position)) << ":"
                  << side_token(s.side);
      }
      std::cout << "\n";
    }
    return 0;
  }
  if (pi1_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    gd3::Presentation p;
    if (general) {
      p = gd3::pi1_general(pr.diagram, pr.deco);
    } else {
      p = gd3::pi1_closed(pr.diagram);
      gd3::BoundaryReport rep =
          gd3::boundary_genera(pr.diagram, gd3::fresh_decoration(pr.diagram));
      if (rep.k_plus > 1 || rep.k_minus > 1)
        std::cerr << "warning: a family separates the surface (k+ = " << rep.k_plus
                  << ", k- = " << rep.k_minus << "); the presentation may not be faithful\n";
    }
    std::cout << p.to_text() << "\n";
    return 0;
  }
  if (h1_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    std::cout << gd3::h1(pr.diagram, pr.deco).to_text() << "\n";
    return 0;
  }
  if (hs_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    gd3::BoundaryReport rep = gd3::boundary_genera(pr.diagram, gd3::fresh_decoration(pr.diagram));
    if (rep.k_plus > 1 || rep.k_minus > 1)
      std::cerr << "warning: a family separates the surface (k+ = " << rep.k_plus
                << ", k- = " << rep.k_minus << ")\n";
    std::cout << (gd3::is_homology_sphere(pr.diagram) ? "yes" : "no") << "\n";
    return 0;
  }
  if (matrix_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    std::cout << gd3::intersection_matrix(pr.diagram).to_text();
    return 0;
  }
  if (move_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    gd3::Script script;
    if (!spec_text.empty() && !script_path.empty())
      throw gd3::DomainError("use either --spec or --script");
    if (!spec_text.empty()) {
      script = gd3::parse_script("gdscript v1\n" + spec_text + "\n", pr.diagram, pr.deco, pr.names);
    } else if (!script_path.empty()) {
      script = gd3::parse_script(read_input(script_path), pr.diagram, pr.deco, pr.names);
    } else {
      throw gd3::DomainError("move needs --spec or --script");
    }
    gd3::ScriptResult res = gd3::apply_script(pr.diagram, pr.deco, script);
    write_output(out_path, gd3::serialize(res.diagram, res.deco));
    return 0;
  }
  if (norm_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    gd3::ScriptResult res = gd3::normalize_colors(pr.diagram, pr.deco);
    if (!script_out.empty())
      write_output(script_out, gd3::serialize_script(res.script, pr.diagram, pr.deco, pr.names));
    write_output(out_path, gd3::serialize(res.diagram, res.deco));
    return 0;
  }
  if (example_cmd->parsed()) {
    gd3::ParseResult pr = gd3::builtin_example(example_name);
    write_output(out_path, gd3::serialize_raw(pr.diagram, pr.deco));
    return 0;
  }
  if (export_cmd->parsed()) {
    gd3::ParseResult pr = load(file);
    int chosen = (as_dot ? 1 : 0) + (as_svg ? 1 : 0) + (as_heegaard ? 1 : 0);
    if (chosen != 1) throw gd3::DomainError("choose exactly one of --dot, --svg, --heegaard");
    std::string text;
    if (as_dot) text = gd3::export_dot(pr.diagram);
    if (as_svg) text = gd3::export_svg(pr.diagram);
    if (as_heegaard) text = gd3::export_heegaard(pr.diagram);
    write_output(out_path, text);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gd3::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
