#pragma once

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/** Parse result before axiom validation. */
struct ParsedGroupoid {
  std::string name;
  RawTable table;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t line;  // 1-based
  std::size_t col;   // 1-based, byte offset of first char
};

// One logical line: comments stripped, CR dropped, split on blanks/tabs.
inline std::vector<Token> tokenize_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), lineno, start + 1});
  }
  return out;
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') {
      lines.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  if (start < text.size()) lines.emplace_back(text.substr(start));
  return lines;
}

}  // namespace detail

/**
 * Parses the table format:
 *
 *   groupoid <name>
 *   elements <tok> <tok> ...     (one or more lines, before any prod)
 *   prod <x> <y> <z>             (zero or more, each pair at most once)
 *   end
 *
 * '#' starts a comment anywhere; blank lines are fine; CRLF is accepted.
 * Diagnostics carry 1-based line:column of the offending token.
 */
inline ParsedGroupoid parse_grpd(std::string_view text) {
  const auto lines = detail::split_lines(text);
  ParsedGroupoid out;
  std::unordered_map<std::string, Elem> index;

  enum class Stage { want_header, want_elements, in_products, done };
  Stage stage = Stage::want_header;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto toks = detail::tokenize_line(lines[li], li + 1);
    if (toks.empty()) continue;
    const auto& head = toks.front();

    if (stage == Stage::done)
      throw ParseError(head.line, head.col, "content after 'end'");

    if (head.text == "groupoid") {
      if (stage != Stage::want_header)
        throw ParseError(head.line, head.col, "duplicate 'groupoid' header");
      if (toks.size() != 2)
        throw ParseError(head.line, head.col, "'groupoid' expects exactly one name");
      out.name = toks[1].text;
      stage = Stage::want_elements;
      continue;
    }

    if (stage == Stage::want_header)
      throw ParseError(head.line, head.col, "expected 'groupoid <name>' header first");

    if (head.text == "elements") {
      if (stage == Stage::in_products)
        throw ParseError(head.line, head.col, "'elements' lines must precede 'prod' lines");
      if (toks.size() < 2)
        throw ParseError(head.line, head.col, "'elements' expects at least one token");
      for (std::size_t k = 1; k < toks.size(); ++k) {
        if (!index.emplace(toks[k].text, out.table.elements.size()).second)
          throw DuplicateElement(toks[k].line, toks[k].col,
                                 "element '" + toks[k].text + "' declared twice");
        out.table.elements.push_back(toks[k].text);
      }
      continue;
    }

    if (head.text == "prod") {
      if (stage == Stage::want_elements && out.table.elements.empty())
        throw ParseError(head.line, head.col, "'prod' before any 'elements' line");
      stage = Stage::in_products;
      if (toks.size() != 4)
        throw ParseError(head.line, head.col, "'prod' expects exactly three tokens");
      Elem xyz[3];
      for (int k = 0; k < 3; ++k) {
        auto it = index.find(toks[k + 1].text);
        if (it == index.end())
          throw UndeclaredToken(toks[k + 1].line, toks[k + 1].col,
                                "token '" + toks[k + 1].text + "' was never declared");
        xyz[k] = it->second;
      }
      if (!out.table.products.emplace(std::make_pair(xyz[0], xyz[1]), xyz[2]).second)
        throw DuplicateProduct(head.line, head.col,
                               "product of '" + toks[1].text + "' and '" + toks[2].text +
                                   "' defined twice");
      continue;
    }

    if (head.text == "end") {
      if (toks.size() != 1) throw ParseError(head.line, head.col, "'end' takes no arguments");
      if (out.table.elements.empty())
        throw ParseError(head.line, head.col, "no 'elements' line before 'end'");
      stage = Stage::done;
      continue;
    }

    throw ParseError(head.line, head.col, "unknown directive '" + head.text + "'");
  }

  if (stage != Stage::done)
    throw ParseError(lines.size() + 1, 1,
                     stage == Stage::want_header ? "missing 'groupoid' header"
                                                 : "missing 'end' line");
  return out;
}

/** Parse then validate; the returned groupoid carries the file's name. */
inline Groupoid load_groupoid_text(std::string_view text) {
  ParsedGroupoid p = parse_grpd(text);
  return Groupoid(std::move(p.table), std::move(p.name));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Groupoid load_groupoid_file(const std::filesystem::path& path) {
  return load_groupoid_text(read_file(path));
}

/**
 * Canonical form: one header, one elements line in declaration order, prod
 * lines sorted by (x,y) index, one end line, LF endings.  parse(serialize(G))
 * reproduces G token for token.
 */
inline std::string serialize(const Groupoid& g) {
  std::string name = g.name().empty() ? "G" : g.name();
  for (char& c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') c = '_';
  std::string out = "groupoid " + name + "\n";
  out += "elements";
  for (const auto& tok : g.tokens()) {
    out += ' ';
    out += tok;
  }
  out += '\n';
  const std::size_t n = g.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (auto z = g.compose(x, y))
        out += "prod " + g.token(x) + " " + g.token(y) + " " + g.token(*z) + "\n";
  out += "end\n";
  return out;
}

inline void save_groupoid_file(const Groupoid& g, const std::filesystem::path& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw Error("cannot write file '" + path.string() + "'");
  outf << serialize(g);
  if (!outf) throw Error("write to '" + path.string() + "' failed");
}

/** Subset file: whitespace/newline separated tokens, '#' comments. */
inline std::vector<std::string> parse_subset(std::string_view text) {
  std::vector<std::string> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li)
    for (auto& tok : detail::tokenize_line(lines[li], li + 1)) out.push_back(std::move(tok.text));
  return out;
}

/**
 * Mapping file: one 'x -> y' per line.  Returns pairs in file order;
 * a source listed twice is rejected here, totality is the map check's job.
 */
inline std::vector<std::pair<std::string, std::string>> parse_mapping(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::unordered_map<std::string, std::size_t> seen;
  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto toks = detail::tokenize_line(lines[li], li + 1);
    if (toks.empty()) continue;
    if (toks.size() != 3 || toks[1].text != "->")
      throw ParseError(toks[0].line, toks[0].col, "expected '<source> -> <target>'");
    if (!seen.emplace(toks[0].text, li).second)
      throw ParseError(toks[0].line, toks[0].col,
                       "source '" + toks[0].text + "' mapped twice");
    out.emplace_back(toks[0].text, toks[2].text);
  }
  return out;
}

}  // namespace grpd
