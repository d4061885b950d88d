#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli_process.hpp"
#include "fixtures.hpp"
#include "tcanon/cli.hpp"

using namespace tcanon;

TEST_CASE("parse_spec", "[cli][parse]") {
  auto specs = parse_spec("tensor T rank 4\ngen -(1,2)\ngen +(1,3)(2,4)\n");
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].name == "T");
  CHECK(specs[0].rank == 4);
  CHECK(specs[0].generators == fixtures::riemann_generators());

  auto anti = parse_spec("tensor A rank 3\nantisymmetric 1 2 3\n");
  CHECK(anti[0].generators == fixtures::sps({"-(1,2)", "-(2,3)"}, 3));
  CHECK(anti[0].provenance.size() == 1);
  CHECK(anti[0].provenance[0].kind == SymmetryDeclaration::Kind::antisymmetric);

  auto plain = parse_spec("tensor M rank 2\n");
  CHECK(plain[0].generators.empty());

  auto multi = parse_spec(
      "# two tensors\n\ntensor A rank 2   # trailing comment\n  symmetric 1 2\n"
      "tensor B rank 3\ngen - (1, 3)\n");
  REQUIRE(multi.size() == 2);
  CHECK(multi[1].generators == fixtures::sps({"-(1,3)"}, 3));
}

TEST_CASE("parse_spec errors carry line and column", "[cli][parse]") {
  auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_spec(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("tensor T rank 3\nsymmetric 1 4\n") == std::pair<std::size_t, std::size_t>{2, 13});
  CHECK(error_at("tensor T rank 3\nskew 1 2\n") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_at("tensor T rank 3\ntensor T rank 2\n") == std::pair<std::size_t, std::size_t>{2, 8});
  CHECK(error_at("gen -(1,2)\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("tensor T rank 3\ngen -(1,2)(2,3)\n") == std::pair<std::size_t, std::size_t>{2, 12});
  CHECK(error_at("tensor T rank 0\n").first == 1);
  CHECK(error_at("tensor T rank 3\nsymmetric 2 2\n").first == 2);
  CHECK(error_at("tensor T rank 3\nsymmetric 2\n").first == 2);
}

TEST_CASE("parse_expr", "[cli][parse]") {
  auto e = parse_expr("T[b,c,a,d]");
  CHECK(e.sign == Sign::plus);
  CHECK(e.name == "T");
  CHECK(e.labels == std::vector<std::string>{"b", "c", "a", "d"});
  auto n = parse_expr(" -T[ a , b ,c ] ");
  CHECK(n.sign == Sign::minus);
  CHECK(n.labels == std::vector<std::string>{"a", "b", "c"});
  CHECK_THROWS_AS(parse_expr("T[a,a,b]"), FreeIndexViolation);
  CHECK_THROWS_AS(parse_expr("T[a,b"), ParseError);
  CHECK_THROWS_AS(parse_expr("T a,b]"), ParseError);
  CHECK_THROWS_AS(parse_expr("T[]"), ParseError);
  CHECK_THROWS_AS(parse_expr("1T[a]"), ParseError);
  CHECK_THROWS_AS(parse_expr("T[a] x"), ParseError);
}

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome call(Subcommand cmd, const std::string& spec, const std::string& expr,
             std::optional<std::vector<Point>> base = std::nullopt,
             OutputFormat format = OutputFormat::text, std::size_t cap = default_cap) {
  CliRequest req;
  req.subcommand = cmd;
  req.spec_text = spec;
  req.expression = expr;
  req.base = std::move(base);
  req.format = format;
  req.cap = cap;
  std::ostringstream out, err;
  ChainCache cache;
  const int status = run(req, out, err, cache);
  return {status, out.str(), err.str()};
}

const std::string riemann = "tensor T rank 4\ngen -(1,2)\ngen +(1,3)(2,4)\n";

}  // namespace

TEST_CASE("run", "[cli]") {
  auto canon = call(Subcommand::canon, riemann, "T[b,c,a,d]", std::vector<Point>{1, 3, 2, 4});
  CHECK(canon.status == exit_code::ok);
  CHECK(canon.out == "-T[a,d,c,b]\n");

  auto equiv = call(Subcommand::equiv, riemann, "T[a,b,c,d]");
  CHECK(equiv.status == exit_code::ok);
  std::set<std::string> lines;
  std::istringstream in(equiv.out);
  for (std::string line; std::getline(in, line);) lines.insert(line);
  CHECK(lines == std::set<std::string>{"T[a,b,c,d]", "-T[b,a,c,d]", "-T[a,b,d,c]",
                                       "T[b,a,d,c]", "T[c,d,a,b]", "-T[c,d,b,a]",
                                       "-T[d,c,a,b]", "T[d,c,b,a]"});

  auto trans = call(Subcommand::transversal, riemann, "T[a,b,c,d]");
  CHECK(trans.out == "T[a,b,c,d]\nT[a,d,c,b]\nT[a,c,b,d]\n");

  auto info = call(Subcommand::group_info, riemann, "");
  CHECK(info.out ==
        "tensor: T\nrank: 4\norder: 8\nbase: 1,3\n"
        "strong generators: -(1,2) +(1,3)(2,4) -(3,4)\nidentically zero: no\n");

  const std::string zero = "tensor Z rank 2\nantisymmetric 1 2\nsymmetric 1 2\n";
  auto zinfo = call(Subcommand::group_info, zero, "Z");
  CHECK(zinfo.out.find("identically zero: yes\n") != std::string::npos);
  CHECK(call(Subcommand::canon, zero, "Z[a,b]").out == "0\n");
}

TEST_CASE("run reports errors with exit codes", "[cli]") {
  CHECK(call(Subcommand::canon, riemann, "T[a,a,b,c]").status == exit_code::invalid);
  CHECK(call(Subcommand::canon, riemann, "T[a,b,c]").status == exit_code::invalid);
  CHECK(call(Subcommand::canon, riemann, "U[a,b,c,d]").status == exit_code::invalid);
  CHECK(call(Subcommand::canon, "tensor T rank 3\nsymmetric 1 4\n", "T[a,b,c]").status ==
        exit_code::invalid);
  CHECK(call(Subcommand::canon, riemann, "T[a,b,c,d]", std::vector<Point>{1, 3}).status ==
        exit_code::invalid);
  auto capped = call(Subcommand::equiv, riemann, "T[a,b,c,d]", std::nullopt,
                     OutputFormat::text, 5);
  CHECK(capped.status == exit_code::cap_exceeded);
  CHECK(capped.err.find("cap") != std::string::npos);
  CHECK(call(Subcommand::transversal, riemann, "T[a,b,c,d]", std::nullopt,
             OutputFormat::text, 2)
            .status == exit_code::cap_exceeded);
}

TEST_CASE("json-lines output follows the schema", "[cli]") {
  auto check_schema = [](const std::string& text, std::size_t expected_lines) {
    std::istringstream in(text);
    std::size_t count = 0;
    for (std::string line; std::getline(in, line); ++count) {
      auto j = nlohmann::json::parse(line);
      REQUIRE(j.size() == 4);
      REQUIRE(j.at("sign").is_number_integer());
      REQUIRE((j["sign"] == 1 || j["sign"] == -1));
      REQUIRE(j.at("tensor").is_string());
      REQUIRE(j.at("indices").is_array());
      for (const auto& idx : j["indices"]) REQUIRE(idx.is_string());
      REQUIRE(j.at("zero").is_boolean());
    }
    CHECK(count == expected_lines);
  };
  auto canon = call(Subcommand::canon, riemann, "T[b,c,a,d]", std::nullopt,
                    OutputFormat::json_lines);
  check_schema(canon.out, 1);
  CHECK(canon.out ==
        "{\"indices\":[\"a\",\"d\",\"c\",\"b\"],\"sign\":-1,\"tensor\":\"T\",\"zero\":false}\n");
  check_schema(call(Subcommand::equiv, riemann, "T[a,b,c,d]", std::nullopt,
                    OutputFormat::json_lines)
                   .out,
               8);
  auto zero = call(Subcommand::canon, "tensor Z rank 2\nantisymmetric 1 2\nsymmetric 1 2\n",
                   "Z[a,b]", std::nullopt, OutputFormat::json_lines);
  check_schema(zero.out, 1);
  CHECK(nlohmann::json::parse(zero.out)["zero"] == true);
}

TEST_CASE("canon output is idempotent at the text level", "[cli][property]") {
  const std::string spec =
      "tensor T rank 4\ngen -(1,2)\ngen +(1,3)(2,4)\n"
      "tensor A rank 4\nantisymmetric 1 2 3 4\n";
  for (const char* e : {"T[b,c,a,d]", "-T[d,a,b,c]", "A[d,c,b,a]", "A[b,a,c,d]"}) {
    auto once = call(Subcommand::canon, spec, e);
    REQUIRE(once.status == 0);
    auto text = once.out.substr(0, once.out.size() - 1);
    auto twice = call(Subcommand::canon, spec, text);
    CHECK(twice.out == once.out);
  }
}

TEST_CASE("tcanon binary", "[cli][process]") {
  using cli_process::data;
  auto r = cli_process::run("canon --spec " + data("riemann.spec") +
                            " --base 1,3,2,4 'T[b,c,a,d]'");
  CHECK(r.status == 0);
  CHECK(r.out == "-T[a,d,c,b]\n");

  auto a = cli_process::run("canon --spec " + data("antisymmetric3.spec") + " 'T[c,b,a]'");
  CHECK(a.out == "-T[a,b,c]\n");

  auto z = cli_process::run("group-info --spec " + data("zero.spec"));
  CHECK(z.status == 0);
  CHECK(z.out.find("identically zero: yes") != std::string::npos);

  CHECK(cli_process::run("canon --spec " + data("riemann.spec") + " 'T[a,a,b,c]'").status == 1);
  CHECK(cli_process::run("canon --spec " + data("bad_slot.spec") + " 'T[a,b,c]'").status == 1);
  CHECK(cli_process::run("equiv --cap 3 --spec " + data("riemann.spec") + " 'T[a,b,c,d]'")
            .status == 2);
  CHECK(cli_process::run("canon --spec " + data("riemann.spec")).status == 1);
  CHECK(cli_process::run("canon --spec " + data("riemann.spec") + " --base 1,x 'T[a,b,c,d]'")
            .status == 1);
  CHECK(cli_process::run("canon --spec /nonexistent 'T[a]'").status == 1);
  CHECK(cli_process::run("frobnicate").status == 1);
}
