#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"
#include "tcanon/stabilizer_chain.hpp"
#include "tcanon/tensor.hpp"

namespace tcanon {

// Spec files are line oriented:
//
//   # Riemann without the cyclic identity
//   tensor R rank 4
//   antisymmetric 1 2
//   gen +(1,3)(2,4)
//
// `gen` takes a signed cycle string; `symmetric` and `antisymmetric` take
// two or more slots. `#` starts a comment.

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

struct Word {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> words;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k == line.size()) break;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    words.push_back({std::string(line.substr(start, k - start)), start + 1});
  }
  return words;
}

inline Point parse_slot(const Word& w, std::size_t line, std::size_t rank) {
  if (w.text.empty() || w.text.size() > 9 ||
      w.text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a slot number, got '" + w.text + "'", line,
                     w.column);
  }
  const auto slot = static_cast<Point>(std::stoul(w.text));
  if (slot < 1 || slot > rank) {
    throw ParseError("slot " + w.text + " outside 1.." + std::to_string(rank),
                     line, w.column);
  }
  return slot;
}

}  // namespace detail

/// Parses a spec file into one TensorSymmetrySpec per `tensor` line.
inline std::vector<TensorSymmetrySpec> parse_spec(std::string_view text) {
  std::vector<TensorSymmetrySpec> specs;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = detail::split_words(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const detail::Word& head = words[0];
    if (head.text == "tensor") {
      if (words.size() != 4 || words[2].text != "rank") {
        throw ParseError("expected 'tensor <name> rank <n>'", line_no,
                         head.column);
      }
      if (!detail::is_identifier(words[1].text)) {
        throw ParseError("invalid tensor name '" + words[1].text + "'",
                         line_no, words[1].column);
      }
      if (!names.insert(words[1].text).second) {
        throw ParseError("tensor '" + words[1].text + "' declared twice",
                         line_no, words[1].column);
      }
      const detail::Word& r = words[3];
      if (r.text.empty() || r.text.size() > 6 ||
          r.text.find_first_not_of("0123456789") != std::string::npos ||
          std::stoul(r.text) == 0) {
        throw ParseError("rank must be a positive integer", line_no, r.column);
      }
      TensorSymmetrySpec spec;
      spec.name = words[1].text;
      spec.rank = std::stoul(r.text);
      specs.push_back(std::move(spec));
    } else if (head.text == "gen" || head.text == "symmetric" ||
               head.text == "antisymmetric") {
      if (specs.empty()) {
        throw ParseError("'" + head.text + "' before any 'tensor' line", line_no,
                         head.column);
      }
      TensorSymmetrySpec& spec = specs.back();
      if (head.text == "gen") {
        if (words.size() < 2) {
          throw ParseError("'gen' needs a generator", line_no, head.column);
        }
        const std::size_t from = words[1].column - 1;
        std::string_view body = line.substr(from);
        try {
          spec.generators.push_back(parse_cycles(body, spec.rank));
        } catch (const ParseError& e) {
          const std::string msg = e.what();
          const auto colon = msg.find(": ");
          throw ParseError(msg.substr(colon + 2), line_no, from + e.column());
        }
        spec.provenance.push_back({SymmetryDeclaration::Kind::generator,
                                   {},
                                   to_cycle_string(spec.generators.back())});
      } else {
        std::vector<Point> slots;
        std::set<Point> seen;
        for (std::size_t w = 1; w < words.size(); ++w) {
          const Point slot = detail::parse_slot(words[w], line_no, spec.rank);
          if (!seen.insert(slot).second) {
            throw ParseError("slot " + words[w].text + " repeated", line_no,
                             words[w].column);
          }
          slots.push_back(slot);
        }
        if (slots.size() < 2) {
          throw ParseError("'" + head.text + "' needs at least 2 slots",
                           line_no, head.column);
        }
        const bool sym = head.text == "symmetric";
        auto gens = shortcut_generators(
            sym ? ShortcutKind::symmetric : ShortcutKind::antisymmetric, slots,
            spec.rank);
        spec.generators.insert(spec.generators.end(), gens.begin(), gens.end());
        spec.provenance.push_back(
            {sym ? SymmetryDeclaration::Kind::symmetric
                 : SymmetryDeclaration::Kind::antisymmetric,
             slots,
             {}});
      }
    } else {
      throw ParseError("unknown declaration '" + head.text + "'", line_no,
                       head.column);
    }
    if (end == text.size()) break;
  }
  return specs;
}

/// A parsed `-T[a,b,c]`.
struct ParsedExpr {
  Sign sign = Sign::plus;
  std::string name;
  std::vector<std::string> labels;

  TensorConfiguration config() const { return {name, labels, sign}; }
};

/// Grammar: `-`? identifier `[` label (`,` label)* `]`, whitespace allowed
/// between tokens.
inline ParsedExpr parse_expr(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(what, 0, pos + 1);
  };
  auto ident = [&](const char* what) {
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    std::string id(text.substr(start, pos - start));
    if (!detail::is_identifier(id)) {
      pos = start;
      throw fail(std::string("expected ") + what);
    }
    return id;
  };

  ParsedExpr expr;
  skip();
  if (pos < text.size() && text[pos] == '-') {
    expr.sign = Sign::minus;
    ++pos;
    skip();
  }
  expr.name = ident("a tensor name");
  skip();
  if (pos >= text.size() || text[pos] != '[') throw fail("expected '['");
  ++pos;
  while (true) {
    skip();
    expr.labels.push_back(ident("an index label"));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      break;
    }
    throw fail("expected ',' or ']'");
  }
  skip();
  if (pos != text.size()) throw fail("unexpected input after ']'");

  std::set<std::string> seen;
  for (const auto& label : expr.labels) {
    if (!seen.insert(label).second) {
      throw FreeIndexViolation("index '" + label +
                               "' is repeated; only free indices are supported");
    }
  }
  return expr;
}

enum class Subcommand { canon, equiv, transversal, group_info };
enum class OutputFormat { text, json_lines };

struct CliRequest {
  Subcommand subcommand = Subcommand::canon;
  std::string expression;  // for group-info: a tensor name or an expression
  std::string spec_path;
  std::string spec_text;  // used instead of spec_path when non-empty
  std::optional<std::vector<Point>> base;
  OutputFormat format = OutputFormat::text;
  std::size_t cap = default_cap;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid = 1;
inline constexpr int cap_exceeded = 2;
}  // namespace exit_code

/// Parses `p1,p2,...`.
inline std::vector<Point> parse_point_list(std::string_view text) {
  std::vector<Point> points;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (value > 0xffffffffULL) throw ParseError("point too large", 0, start + 1);
      ++pos;
    }
    if (pos == start) throw ParseError("expected a point", 0, pos + 1);
    if (value == 0) throw ParseError("points start at 1", 0, start + 1);
    points.push_back(static_cast<Point>(value));
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ','", 0, pos + 1);
    ++pos;
  }
  return points;
}

namespace detail {

inline nlohmann::json config_json(const TensorConfiguration& c) {
  return {{"sign", to_int(c.sign)},
          {"tensor", c.name},
          {"indices", c.labels},
          {"zero", false}};
}

inline nlohmann::json zero_json(const std::string& name) {
  return {{"sign", 1},
          {"tensor", name},
          {"indices", nlohmann::json::array()},
          {"zero", true}};
}

inline const TensorSymmetrySpec& find_spec(
    const std::vector<TensorSymmetrySpec>& specs, const std::string& name) {
  for (const auto& s : specs) {
    if (s.name == name) return s;
  }
  throw Error("tensor '" + name + "' is not declared in the spec file");
}

inline void emit_configs(std::ostream& out, OutputFormat format,
                         const std::vector<TensorConfiguration>& configs) {
  for (const auto& c : configs) {
    if (format == OutputFormat::text) {
      out << to_string(c) << '\n';
    } else {
      out << config_json(c).dump() << '\n';
    }
  }
}

inline void emit_zero(std::ostream& out, OutputFormat format,
                      const std::string& name) {
  if (format == OutputFormat::text) {
    out << "0\n";
  } else {
    out << zero_json(name).dump() << '\n';
  }
}

inline int run_unchecked(const CliRequest& req, std::ostream& out,
                         ChainCache& cache) {
  std::string spec_text = req.spec_text;
  if (spec_text.empty()) {
    std::ifstream in(req.spec_path, std::ios::binary);
    if (!in) throw Error("cannot read spec file '" + req.spec_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    spec_text = buf.str();
  }
  const auto specs = parse_spec(spec_text);

  if (req.subcommand == Subcommand::group_info) {
    std::string name = req.expression;
    if (name.empty()) {
      if (specs.size() != 1) {
        throw Error("group-info needs a tensor name when the spec declares " +
                    std::to_string(specs.size()) + " tensors");
      }
      name = specs.front().name;
    } else if (!is_identifier(name)) {
      name = parse_expr(name).name;
    }
    const auto& spec = find_spec(specs, name);
    auto [chain, order] = prepare(spec, req.base, cache);
    std::vector<std::string> strong;
    for (const auto& g : chain->strong_generators()) {
      strong.push_back(to_cycle_string(g));
    }
    if (req.format == OutputFormat::text) {
      out << "tensor: " << spec.name << '\n'
          << "rank: " << spec.rank << '\n'
          << "order: " << chain->order().str() << '\n'
          << "base:";
      for (std::size_t k = 0; k < chain->base().size(); ++k) {
        out << (k ? "," : " ") << chain->base()[k];
      }
      out << '\n' << "strong generators:";
      for (const auto& g : strong) out << ' ' << g;
      out << '\n'
          << "identically zero: " << (chain->sign_residue() ? "yes" : "no")
          << '\n';
    } else {
      nlohmann::json j = {{"tensor", spec.name},
                          {"rank", spec.rank},
                          {"order", chain->order().str()},
                          {"base", chain->base()},
                          {"strong_generators", strong},
                          {"zero", chain->sign_residue()}};
      out << j.dump() << '\n';
    }
    return exit_code::ok;
  }

  const ParsedExpr expr = parse_expr(req.expression);
  const auto& spec = find_spec(specs, expr.name);
  const TensorConfiguration config = expr.config();
  config_to_perm(spec, config);  // rank check before any group work

  switch (req.subcommand) {
    case Subcommand::canon: {
      const CanonicalForm form = canonicalize(spec, config, req.base, cache);
      if (form.is_zero()) {
        emit_zero(out, req.format, spec.name);
      } else {
        emit_configs(out, req.format, {form.config()});
      }
      return exit_code::ok;
    }
    case Subcommand::equiv: {
      auto [chain, order] = prepare(spec, req.base, cache);
      if (chain->sign_residue()) {
        emit_zero(out, req.format, spec.name);
        return exit_code::ok;
      }
      emit_configs(out, req.format,
                   equivalent_configs(spec, config, req.cap, req.base, cache));
      return exit_code::ok;
    }
    case Subcommand::transversal: {
      auto [chain, order] = prepare(spec, req.base, cache);
      if (chain->sign_residue()) {
        emit_zero(out, req.format, spec.name);
        return exit_code::ok;
      }
      emit_configs(out, req.format,
                   independent_configs(spec, config.labels, req.cap, req.base,
                                       cache));
      return exit_code::ok;
    }
    case Subcommand::group_info:
      break;
  }
  return exit_code::ok;
}

}  // namespace detail

/// Executes a request. Errors go to `err`; the return value is the exit
/// status (0 success, 1 invalid input, 2 cap exceeded).
inline int run(const CliRequest& req, std::ostream& out, std::ostream& err,
               ChainCache& cache = default_chain_cache()) {
  try {
    return detail::run_unchecked(req, out, cache);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::cap_exceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid;
  }
}

}  // namespace tcanon
