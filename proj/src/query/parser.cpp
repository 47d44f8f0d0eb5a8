#include "swq/query/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "swq/error.hpp"

namespace swq::query {

namespace {

enum class Tok { Ident, Keyword, Integer, Number, LParen, RParen, Comma, Semicolon, Star, End };

struct Token {
  Tok kind;
  std::string_view text;  // keywords are matched case-insensitively via `upper`
  std::size_t pos;
  std::string upper;
};

constexpr std::array<std::string_view, 7> kKeywords{"SELECT", "FROM",  "OVER",  "NEAREST",
                                                    "NEIGHBOR", "ON", "RADIUS"};

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < s.size() && is_ident(s[i])) ++i;
      const auto text = s.substr(start, i - start);
      std::string up = to_upper(text);
      const bool kw = std::find(kKeywords.begin(), kKeywords.end(), up) != kKeywords.end();
      out.push_back({kw ? Tok::Keyword : Tok::Ident, text, start, std::move(up)});
      continue;
    }
    if (is_digit(c)) {
      bool integral = true;
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i < s.size() && s[i] == '.') {
        integral = false;
        ++i;
        if (i >= s.size() || !is_digit(s[i])) throw SyntaxError(i, {"digit"}, "malformed number");
        while (i < s.size() && is_digit(s[i])) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        integral = false;
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (i >= s.size() || !is_digit(s[i])) throw SyntaxError(i, {"digit"}, "malformed number");
        while (i < s.size() && is_digit(s[i])) ++i;
      }
      if (i < s.size() && is_ident(s[i]))
        throw SyntaxError(i, {"delimiter"}, "'" + std::string(1, s[i]) + "' after number");
      out.push_back({integral ? Tok::Integer : Tok::Number, s.substr(start, i - start), start, {}});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      case '*': kind = Tok::Star; break;
      default:
        throw SyntaxError(start, {"token"}, "unexpected character '" + std::string(1, c) + "'");
    }
    ++i;
    out.push_back({kind, s.substr(start, 1), start, {}});
  }
  out.push_back({Tok::End, {}, s.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

  QueryAST query() {
    QueryAST ast;
    keyword("SELECT");
    ast.select_items.push_back(item());
    while (peek().kind == Tok::Comma) {
      next();
      ast.select_items.push_back(item());
    }
    if (!is_keyword(peek(), "FROM")) fail({"','", "FROM"});
    next();
    ast.from_table = std::string(expect(Tok::Ident, "table name").text);
    if (peek().kind == Tok::Semicolon) next();
    if (peek().kind != Tok::End) fail({"end of input"});
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(at_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().pos, std::move(expected), describe(peek()));
  }

  static bool is_keyword(const Token& t, std::string_view kw) {
    return t.kind == Tok::Keyword && t.upper == kw;
  }

  void keyword(std::string_view kw) {
    if (!is_keyword(peek(), kw)) fail({std::string(kw)});
    next();
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    return next();
  }

  SelectItem item() {
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LParen) return call();
    if (peek().kind == Tok::Ident) return ColumnRef{std::string(next().text)};
    fail({"column name", "analytic call"});
  }

  AnalyticCall call() {
    const Token& name = next();
    const std::size_t start = name.pos;
    const AggregateFunction func = lookup_function(name.text);
    next();  // '('

    std::vector<std::string> args;
    bool star = false;
    if (peek().kind == Tok::Star) {
      if (func != AggregateFunction::Count) fail({"column name"});
      next();
      star = true;
    } else if (peek().kind == Tok::Ident) {
      args.emplace_back(next().text);
      while (peek().kind == Tok::Comma) {
        next();
        args.emplace_back(expect(Tok::Ident, "column name").text);
      }
    }
    if (peek().kind != Tok::RParen) fail(star ? std::vector<std::string>{"')'"}
                                              : std::vector<std::string>{"','", "')'"});

    AnalyticCall out;
    out.kind.func = func;
    const std::size_t want = func == AggregateFunction::Count ? args.size()
                             : is_pairwise(func)               ? 2
                                                               : 1;
    if (args.size() < want) fail({"column name"});
    if (args.size() > want) throw SyntaxError(peek().pos, {"')'"}, "too many arguments");
    if (func == AggregateFunction::Count) {
      if (args.size() > 1) throw SyntaxError(peek().pos, {"')'"}, "too many arguments");
      if (args.size() == 1) out.kind.func = AggregateFunction::CountNonnull;
    }
    if (!args.empty()) out.kind.attr_a = args[0];
    if (args.size() > 1) out.kind.attr_b = args[1];
    next();  // ')'

    keyword("OVER");
    out.window = over();
    const std::size_t end = toks_[at_ - 1].pos + 1;
    out.label = std::string(text_.substr(start, end - start));
    return out;
  }

  WindowSpec over() {
    if (peek().kind == Tok::Ident) throw NamedWindowUnsupported(peek().pos, std::string(peek().text));
    if (peek().kind != Tok::LParen) fail({"'('", "window name"});
    next();
    if (peek().kind == Tok::Ident) throw NamedWindowUnsupported(peek().pos, std::string(peek().text));

    WindowSpec spec;
    if (peek().kind == Tok::Integer) {
      const Token& k = next();
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(k.text.data(), k.text.data() + k.text.size(), value);
      if (ec != std::errc{} || value == 0)
        throw SyntaxError(k.pos, {"positive integer"}, describe(k));
      keyword("NEAREST");
      keyword("NEIGHBOR");
      keyword("ON");
      spec = WindowSpec::knn(value, std::string(expect(Tok::Ident, "location column").text));
    } else if (is_keyword(peek(), "RADIUS")) {
      next();
      if (peek().kind != Tok::Integer && peek().kind != Tok::Number) fail({"nonnegative number"});
      const Token& r = next();
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(r.text.data(), r.text.data() + r.text.size(), value);
      if (ec != std::errc{} || !std::isfinite(value))
        throw SyntaxError(r.pos, {"finite number"}, describe(r));
      keyword("ON");
      spec = WindowSpec::radius(value, std::string(expect(Tok::Ident, "location column").text));
    } else if (peek().kind == Tok::Number) {
      throw SyntaxError(peek().pos, {"positive integer"}, describe(peek()));
    } else {
      fail({"k NEAREST NEIGHBOR", "RADIUS"});
    }
    expect(Tok::RParen, "')'");
    return spec;
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

}  // namespace

QueryAST parse(std::string_view text) { return Parser(text).query(); }

std::string unparse(const QueryAST& ast) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < ast.select_items.size(); ++i) {
    if (i) out += ", ";
    if (const auto* col = std::get_if<ColumnRef>(&ast.select_items[i])) {
      out += col->name;
    } else {
      const auto& call = std::get<AnalyticCall>(ast.select_items[i]);
      out += call.kind.call_text() + " OVER (" + frame_text(call.window) + ")";
    }
  }
  out += " FROM " + ast.from_table;
  return out;
}

}  // namespace swq::query
