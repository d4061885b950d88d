#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tcanon/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms of tensors with free indices and permutation symmetries"};
  app.require_subcommand(1);

  tcanon::CliRequest req;
  std::string base_text;
  std::string format = "text";

  const std::map<std::string, tcanon::Subcommand> commands{
      {"canon", tcanon::Subcommand::canon},
      {"equiv", tcanon::Subcommand::equiv},
      {"transversal", tcanon::Subcommand::transversal},
      {"group-info", tcanon::Subcommand::group_info}};
  const std::map<std::string, std::string> help{
      {"canon", "Print the canonical form of an expression, or 0"},
      {"equiv", "Print every configuration equal to the expression"},
      {"transversal", "Print a maximal set of independent configurations"},
      {"group-info", "Print order, base and strong generators of a tensor's symmetry"}};

  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--spec", req.spec_path, "Symmetry spec file")->required();
    sub->add_option("--base", base_text, "Full point order, e.g. 1,3,2,4");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}));
    sub->add_option("--cap", req.cap, "Largest enumeration allowed");
    auto* expr = sub->add_option("expr", req.expression,
                                 name == "group-info"
                                     ? "Tensor name or expression"
                                     : "Expression such as -T[b,c,a,d]");
    if (name != "group-info") expr->required();
    sub->callback([&req, cmd = cmd] { req.subcommand = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tcanon::exit_code::invalid;
  }

  if (format == "json-lines") req.format = tcanon::OutputFormat::json_lines;
  if (!base_text.empty()) {
    try {
      req.base = tcanon::parse_point_list(base_text);
    } catch (const tcanon::Error& e) {
      std::cerr << "error: --base: " << e.what() << '\n';
      return tcanon::exit_code::invalid;
    }
  }
  return tcanon::run(req, std::cout, std::cerr);
}
