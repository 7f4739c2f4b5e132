#pragma once

/**
 * @file diagram_dsl.hpp
 * @brief Line-oriented text format for diagrams.
 *
 *     diagram "name"                      # optional header
 *     inputs: add(1/2) mult(3, conorm=L) add(1/2)
 *     merge @0                            # one generator per line
 *     split @0 left=1/8 [right=3/8]
 *     mmerge @1 | vcross @1 | dot @0 | rdot @1
 *     mscale 2
 *     end
 *
 * `#` starts a comment. Positions are 0-based. Errors are collected per line
 * and reported together with 1-based line and column numbers.
 */

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "infodilog/diagram.hpp"

namespace infodilog {

struct Diagnostic {
  int line;
  int column;
  std::string message;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags)
      : std::runtime_error(join(diags)), diags_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;

  static std::string join(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
      if (!out.empty()) out += "\n";
      out += d.str();
    }
    return out;
  }
};

namespace detail {

enum class Tok { ident, number, string, at, lparen, rparen, comma, equals, colon, end };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

struct LineError {
  int column;
  std::string message;
};

inline std::vector<Token> lex_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t k) { return static_cast<int>(k) + 1; };
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(line.substr(start, i - start)), col(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      ++i;
      while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '/' ||
                                 line[i] == '.' || ((line[i] == '-' || line[i] == '+') && line[i - 1] == '/'))) {
        ++i;
      }
      out.push_back({Tok::number, std::string(line.substr(start, i - start)), col(start)});
    } else if (c == '"') {
      ++i;
      while (i < line.size() && line[i] != '"') ++i;
      if (i >= line.size()) throw LineError{col(start), "unterminated string"};
      out.push_back({Tok::string, std::string(line.substr(start + 1, i - start - 1)), col(start)});
      ++i;
    } else {
      Tok k;
      switch (c) {
        case '@': k = Tok::at; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case ',': k = Tok::comma; break;
        case '=': k = Tok::equals; break;
        case ':': k = Tok::colon; break;
        default: throw LineError{col(start), std::string("unexpected character '") + c + "'"};
      }
      out.push_back({k, std::string(1, c), col(start)});
      ++i;
    }
  }
  out.push_back({Tok::end, "", col(line.size())});
  return out;
}

inline const char* tok_name(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::string: return "string";
    case Tok::at: return "'@'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::colon: return "':'";
    case Tok::end: return "end of line";
  }
  return "token";
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }

  const Token& expect(Tok k, const char* what = nullptr) {
    const Token& t = peek();
    if (t.kind != k) {
      std::string found = t.kind == Tok::end ? "end of line" : "'" + t.text + "'";
      throw LineError{t.column, std::string("expected ") + (what ? what : tok_name(k)) + ", found " + found};
    }
    ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect_keyword(const char* kw) {
    const Token& t = expect(Tok::ident, kw);
    if (t.text != kw) throw LineError{t.column, std::string("expected '") + kw + "', found '" + t.text + "'"};
  }

  Rational rational() {
    const Token& t = expect(Tok::number, "rational number");
    try {
      return Rational::parse(t.text);
    } catch (const InputError& e) {
      throw LineError{t.column, e.what()};
    }
  }

  std::size_t position() {
    expect(Tok::at, "'@' position");
    const Token& t = expect(Tok::number, "position index");
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw LineError{t.column, "position must be a non-negative integer"};
    }
    return static_cast<std::size_t>(std::stoull(t.text));
  }

  void finish() { expect(Tok::end); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline StrandState parse_strand(LineParser& p) {
  const Token& kind = p.expect(Tok::ident, "'add' or 'mult'");
  if (kind.text == "add") {
    p.expect(Tok::lparen);
    Rational v = p.rational();
    p.expect(Tok::rparen);
    return StrandState::add(std::move(v));
  }
  if (kind.text == "mult") {
    p.expect(Tok::lparen);
    const int col = p.peek().column;
    Rational c = p.rational();
    if (c.is_zero()) throw LineError{col, "multiplicative weight must be nonzero"};
    Conorm k = Conorm::L;
    if (p.accept(Tok::comma)) {
      p.expect_keyword("conorm");
      p.expect(Tok::equals);
      const Token& side = p.expect(Tok::ident, "'L' or 'R'");
      if (side.text == "L") {
        k = Conorm::L;
      } else if (side.text == "R") {
        k = Conorm::R;
      } else {
        throw LineError{side.column, "conorm must be L or R, found '" + side.text + "'"};
      }
    }
    p.expect(Tok::rparen);
    return StrandState::mult(std::move(c), k);
  }
  throw LineError{kind.column, "unknown strand kind '" + kind.text + "'"};
}

inline Generator parse_generator(LineParser& p, const Token& op) {
  if (op.text == "merge") return gen::Merge{p.position()};
  if (op.text == "mmerge") return gen::MMerge{p.position()};
  if (op.text == "vcross") return gen::VCross{p.position()};
  if (op.text == "dot") return gen::Dot{p.position()};
  if (op.text == "rdot") return gen::RDot{p.position()};
  if (op.text == "mscale") {
    const int col = p.peek().column;
    Rational c = p.rational();
    if (c.is_zero()) throw LineError{col, "mscale factor must be nonzero"};
    return gen::MScale{std::move(c)};
  }
  if (op.text == "split") {
    gen::Split s{p.position(), Rational(), std::nullopt};
    p.expect_keyword("left");
    p.expect(Tok::equals);
    s.left = p.rational();
    if (p.peek().kind == Tok::ident) {
      p.expect_keyword("right");
      p.expect(Tok::equals);
      s.right = p.rational();
    }
    return s;
  }
  throw LineError{op.column, "unknown generator '" + op.text + "'"};
}

}  // namespace detail

/// Parses one diagram. Throws ParseError with every diagnostic found.
inline Diagram parse_diagram(std::string_view text) {
  using namespace detail;
  Diagram d;
  std::vector<Diagnostic> diags;
  bool seen_header = false;
  bool seen_inputs = false;
  bool seen_end = false;
  bool seen_content = false;
  int line_no = 0;
  int last_line = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    try {
      LineParser p(lex_line(line));
      if (p.peek().kind == Tok::end) continue;
      last_line = line_no;
      const Token head = p.expect(Tok::ident, "keyword");
      if (seen_end) throw LineError{head.column, "unexpected '" + head.text + "' after 'end'"};

      if (head.text == "diagram") {
        if (seen_content) throw LineError{head.column, "'diagram' header must come first"};
        d.name = p.expect(Tok::string, "quoted diagram name").text;
        p.finish();
        seen_header = true;
        seen_content = true;
      } else if (head.text == "inputs") {
        if (seen_inputs) throw LineError{head.column, "duplicate 'inputs' line"};
        seen_inputs = true;
        seen_content = true;
        p.expect(Tok::colon);
        while (p.peek().kind != Tok::end) d.inputs.push_back(parse_strand(p));
      } else if (head.text == "end") {
        p.finish();
        seen_end = true;
      } else {
        if (!seen_inputs) throw LineError{head.column, "expected 'inputs:' before the first generator"};
        seen_content = true;
        Generator g = parse_generator(p, head);
        p.finish();
        d.slices.push_back(std::move(g));
        d.lines.push_back(line_no);
      }
    } catch (const LineError& e) {
      diags.push_back({line_no, e.column, e.message});
    }
  }
  (void)seen_header;

  if (!seen_inputs && diags.empty()) diags.push_back({last_line + 1, 1, "expected 'inputs:' line"});
  if (!seen_end) diags.push_back({last_line + 1, 1, "expected 'end' before end of input"});
  if (!diags.empty()) throw ParseError(std::move(diags));
  return d;
}

/// Canonical text for a diagram; parse_diagram(print_diagram(d)) == d.
inline std::string print_diagram(const Diagram& d) {
  std::ostringstream os;
  if (!d.name.empty()) os << "diagram \"" << d.name << "\"\n";
  os << "inputs:";
  for (const auto& s : d.inputs) {
    if (s.is_additive()) {
      os << " add(" << s.value << ")";
    } else {
      os << " mult(" << s.value << ", conorm=" << (s.conorm == Conorm::L ? "L" : "R") << ")";
    }
  }
  os << "\n";
  for (const auto& g : d.slices) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, gen::Merge>) {
            os << "merge @" << op.pos;
          } else if constexpr (std::is_same_v<T, gen::Split>) {
            os << "split @" << op.pos << " left=" << op.left;
            if (op.right) os << " right=" << *op.right;
          } else if constexpr (std::is_same_v<T, gen::MMerge>) {
            os << "mmerge @" << op.pos;
          } else if constexpr (std::is_same_v<T, gen::VCross>) {
            os << "vcross @" << op.pos;
          } else if constexpr (std::is_same_v<T, gen::Dot>) {
            os << "dot @" << op.pos;
          } else if constexpr (std::is_same_v<T, gen::RDot>) {
            os << "rdot @" << op.pos;
          } else {
            os << "mscale " << op.c;
          }
        },
        g);
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

}  // namespace infodilog
