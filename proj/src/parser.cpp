#include "reqcheck/parser.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

namespace reqcheck {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Ident, Number,
  LParen, RParen, Comma,
  Amp, Pipe, Bang, Implies,
  Lt, Le, Gt, Ge, Eq, Ne,
  Plus, Minus, Star, Slash,
  End, Bad
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  Span span;
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Diagnostic> diags;

  Span here(std::size_t begin, std::size_t end, int l, int c) const {
    return Span{begin, end, l, c};
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos < src.size() &&
             std::isspace(static_cast<unsigned char>(src[pos])))
        advance(1);
      if (pos >= src.size()) break;

      std::size_t begin = pos;
      int l = line, c = col;
      char ch = src[pos];
      auto push = [&](Tok kind, std::size_t len, std::string text = {}) {
        advance(len);
        out.push_back({kind, std::move(text), 0.0, here(begin, pos, l, c)});
      };

      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t end = pos;
        while (end < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[end])) ||
                src[end] == '_'))
          ++end;
        push(Tok::Ident, end - pos, std::string(src.substr(begin, end - begin)));
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t end = pos;
        while (end < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[end])))
          ++end;
        if (end < src.size() && src[end] == '.' && end + 1 < src.size() &&
            std::isdigit(static_cast<unsigned char>(src[end + 1]))) {
          ++end;
          while (end < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[end])))
            ++end;
        }
        if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
          std::size_t e = end + 1;
          if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
          if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
            while (e < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[e])))
              ++e;
            end = e;
          }
        }
        std::string text(src.substr(begin, end - begin));
        double value = std::strtod(text.c_str(), nullptr);
        advance(end - pos);
        Token t{Tok::Number, text, value, here(begin, pos, l, c)};
        out.push_back(std::move(t));
      } else {
        switch (ch) {
          case '(': push(Tok::LParen, 1); break;
          case ')': push(Tok::RParen, 1); break;
          case ',': push(Tok::Comma, 1); break;
          case '&': push(Tok::Amp, 1); break;
          case '|': push(Tok::Pipe, 1); break;
          case '+': push(Tok::Plus, 1); break;
          case '-': push(Tok::Minus, 1); break;
          case '*': push(Tok::Star, 1); break;
          case '/': push(Tok::Slash, 1); break;
          case '!':
            if (pos + 1 < src.size() && src[pos + 1] == '=')
              push(Tok::Ne, 2);
            else
              push(Tok::Bang, 1);
            break;
          case '=':
            if (pos + 1 < src.size() && src[pos + 1] == '>')
              push(Tok::Implies, 2);
            else
              push(Tok::Eq, 1);
            break;
          case '<':
            if (pos + 1 < src.size() && src[pos + 1] == '=')
              push(Tok::Le, 2);
            else
              push(Tok::Lt, 1);
            break;
          case '>':
            if (pos + 1 < src.size() && src[pos + 1] == '=')
              push(Tok::Ge, 2);
            else
              push(Tok::Gt, 1);
            break;
          default: {
            diags.push_back({Severity::Error, here(begin, begin + 1, l, c),
                             std::string("unexpected character '") +
                                 (std::isprint(static_cast<unsigned char>(ch))
                                      ? std::string(1, ch)
                                      : "\\x" + [&] {
                                          char buf[8];
                                          std::snprintf(buf, sizeof buf, "%02x",
                                                        static_cast<unsigned char>(ch));
                                          return std::string(buf);
                                        }()) +
                                 "'",
                             {}});
            advance(1);
            break;
          }
        }
      }
    }
    out.push_back({Tok::End, {}, 0.0,
                   Span{src.size(), src.size(), line, col}});
    return out;
  }
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

constexpr int kMaxDepth = 256;

const std::set<std::string>& structural_keywords() {
  static const std::set<std::string> kw = {
      "in",    "mode",   "when",       "if",    "shall", "always", "never",
      "eventually", "until", "within", "for",   "ticks", "satisfy"};
  return kw;
}

const std::set<std::string>& unsupported_timings() {
  // FRETISH constructs that exist in FRET but have no pinned semantics here.
  static const std::set<std::string> kw = {"upon", "before", "after", "at",
                                           "immediately", "only"};
  return kw;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  std::vector<Diagnostic> diags;
  int speculative = 0;  // >0: suppress diagnostics, callers will rewind
  int depth = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& cur() const { return peek(0); }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(std::string_view text) const {
    return cur().kind == Tok::Ident && cur().text == text;
  }
  Token take() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

  void error(const Span& span, std::string message) {
    if (!speculative)
      diags.push_back({Severity::Error, span, std::move(message), {}});
  }

  struct DepthGuard {
    Parser& p;
    bool ok;
    explicit DepthGuard(Parser& parser) : p(parser), ok(++p.depth <= kMaxDepth) {
      if (!ok) p.error(p.cur().span, "expression too deeply nested");
    }
    ~DepthGuard() { --p.depth; }
  };

  static bool is_cmp(Tok k) {
    return k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge ||
           k == Tok::Eq || k == Tok::Ne;
  }
  static bool is_arith(Tok k) {
    return k == Tok::Plus || k == Tok::Minus || k == Tok::Star ||
           k == Tok::Slash;
  }

  static Span join(const Span& a, const Span& b) {
    Span s = a;
    s.end = b.end;
    return s;
  }

  // ------------------------------------------------------------------ numeric

  NumExprPtr parse_num_factor() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;

    if (at(Tok::Number)) {
      Token t = take();
      return num_literal(t.number, t.span);
    }
    if (at(Tok::Minus) && peek(1).kind == Tok::Number) {
      Token minus = take();
      Token t = take();
      return num_literal(-t.number, join(minus.span, t.span));
    }
    if (at(Tok::LParen)) {
      Token open = take();
      NumExprPtr inner = parse_num_expr();
      if (!inner) return nullptr;
      if (!at(Tok::RParen)) {
        error(cur().span, "unbalanced parentheses: expected ')'");
        return nullptr;
      }
      Token close = take();
      return num_paren(inner, join(open.span, close.span));
    }
    if (at(Tok::Ident)) {
      Token name = take();
      if (name.text == "null" || name.text == "true" || name.text == "false") {
        error(name.span, "'" + name.text + "' is not a numeric value");
        return nullptr;
      }
      if (at(Tok::LParen)) {
        if (name.text == "diff") {
          take();
          NumExprPtr a = parse_num_expr();
          if (!a) return nullptr;
          if (!at(Tok::Comma)) {
            error(cur().span, "diff takes two comma-separated arguments");
            return nullptr;
          }
          take();
          NumExprPtr b = parse_num_expr();
          if (!b) return nullptr;
          if (!at(Tok::RParen)) {
            error(cur().span, "unbalanced parentheses: expected ')' after diff arguments");
            return nullptr;
          }
          Token close = take();
          return num_call("diff", {a, b}, join(name.span, close.span));
        }
        if (name.text == "sensorValue") {
          take();
          if (!at(Tok::Ident)) {
            error(cur().span, "sensorValue selector must be an identifier");
            return nullptr;
          }
          Token sel = take();
          if (!at(Tok::RParen)) {
            error(cur().span, "unbalanced parentheses: expected ')' after sensorValue selector");
            return nullptr;
          }
          Token close = take();
          return num_call("sensorValue", {num_name(sel.text, false, sel.span)},
                          join(name.span, close.span));
        }
        // `x(i)` is the current-step sampling suffix.
        if (peek(1).kind == Tok::Ident && peek(1).text == "i" &&
            peek(2).kind == Tok::RParen) {
          take();
          take();
          Token close = take();
          return num_name(name.text, true, join(name.span, close.span));
        }
        error(cur().span, "unknown function '" + name.text + "'");
        return nullptr;
      }
      return num_name(name.text, false, name.span);
    }
    error(cur().span, "expected a numeric expression");
    return nullptr;
  }

  NumExprPtr parse_num_term() {
    NumExprPtr lhs = parse_num_factor();
    if (!lhs) return nullptr;
    while (at(Tok::Star) || at(Tok::Slash)) {
      ArithOp op = at(Tok::Star) ? ArithOp::Mul : ArithOp::Div;
      take();
      NumExprPtr rhs = parse_num_factor();
      if (!rhs) return nullptr;
      Span s = join(lhs->span, rhs->span);
      lhs = num_binary(op, lhs, rhs, s);
    }
    return lhs;
  }

  NumExprPtr parse_num_expr() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;
    NumExprPtr lhs = parse_num_term();
    if (!lhs) return nullptr;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      ArithOp op = at(Tok::Plus) ? ArithOp::Add : ArithOp::Sub;
      take();
      NumExprPtr rhs = parse_num_term();
      if (!rhs) return nullptr;
      Span s = join(lhs->span, rhs->span);
      lhs = num_binary(op, lhs, rhs, s);
    }
    return lhs;
  }

  // ------------------------------------------------------------------ boolean

  BoolExprPtr parse_comparison() {
    NumExprPtr lhs = parse_num_expr();
    if (!lhs) return nullptr;
    if (is_cmp(cur().kind)) {
      Token op_tok = take();
      CmpOp op;
      switch (op_tok.kind) {
        case Tok::Lt: op = CmpOp::Lt; break;
        case Tok::Le: op = CmpOp::Le; break;
        case Tok::Gt: op = CmpOp::Gt; break;
        case Tok::Ge: op = CmpOp::Ge; break;
        case Tok::Eq: op = CmpOp::Eq; break;
        default: op = CmpOp::Ne; break;
      }
      if (at_ident("null")) {
        Token null_tok = take();
        if (op != CmpOp::Eq) {
          error(null_tok.span, "only the '= null' availability test is supported");
          return nullptr;
        }
        return bool_is_null(lhs, join(lhs->span, null_tok.span));
      }
      NumExprPtr rhs = parse_num_expr();
      if (!rhs) return nullptr;
      return bool_compare(op, lhs, rhs, join(lhs->span, rhs->span));
    }
    // No comparison operator: a bare identifier is a boolean atom.
    if (const auto* n = std::get_if<NumName>(&lhs->node)) {
      if (!n->sampled) return bool_atom(n->name, lhs->span);
      error(lhs->span, "sampled signal reference needs a comparison");
      return nullptr;
    }
    error(cur().span, "expected a comparison operator");
    return nullptr;
  }

  BoolExprPtr parse_bool_primary() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;

    if (at_ident("true") || at_ident("false")) {
      Token t = take();
      return bool_const(t.text == "true", t.span);
    }
    if (at(Tok::LParen)) {
      // Could open a boolean group or a parenthesized numeric operand.
      std::size_t save = pos;
      Token open = take();
      ++speculative;
      BoolExprPtr inner = parse_bool_expr();
      bool closed = inner && at(Tok::RParen);
      --speculative;
      if (closed) {
        Token close = take();
        if (!is_cmp(cur().kind) && !is_arith(cur().kind))
          return bool_paren(inner, join(open.span, close.span));
      }
      pos = save;
      return parse_comparison();
    }
    return parse_comparison();
  }

  BoolExprPtr parse_bool_unary() {
    if (at(Tok::Bang)) {
      Token bang = take();
      BoolExprPtr arg = parse_bool_unary();
      if (!arg) return nullptr;
      return bool_not(arg, join(bang.span, arg->span));
    }
    return parse_bool_primary();
  }

  BoolExprPtr parse_bool_and() {
    BoolExprPtr lhs = parse_bool_unary();
    if (!lhs) return nullptr;
    while (at(Tok::Amp)) {
      take();
      BoolExprPtr rhs = parse_bool_unary();
      if (!rhs) return nullptr;
      Span s = join(lhs->span, rhs->span);
      lhs = bool_and(lhs, rhs, s);
    }
    return lhs;
  }

  BoolExprPtr parse_bool_or() {
    BoolExprPtr lhs = parse_bool_and();
    if (!lhs) return nullptr;
    while (at(Tok::Pipe)) {
      take();
      BoolExprPtr rhs = parse_bool_and();
      if (!rhs) return nullptr;
      Span s = join(lhs->span, rhs->span);
      lhs = bool_or(lhs, rhs, s);
    }
    return lhs;
  }

  BoolExprPtr parse_bool_expr() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;
    BoolExprPtr lhs = parse_bool_or();
    if (!lhs) return nullptr;
    if (at(Tok::Implies)) {
      take();
      BoolExprPtr rhs = parse_bool_expr();  // right-associative
      if (!rhs) return nullptr;
      Span s = join(lhs->span, rhs->span);
      return bool_implies(lhs, rhs, s);
    }
    return lhs;
  }

  /// Clause expressions (condition, stop, response) must start with '('.
  BoolExprPtr parse_clause_expr(const char* what) {
    if (!at(Tok::LParen)) {
      error(cur().span, std::string("expected a parenthesized ") + what);
      return nullptr;
    }
    return parse_bool_expr();
  }

  // -------------------------------------------------------------- requirement

  std::optional<Requirement> parse_sentence(std::string_view source) {
    Requirement req;
    req.source_text = std::string(source);

    if (at_ident("in")) {
      take();
      if (!at(Tok::Ident) || structural_keywords().count(cur().text)) {
        error(cur().span, "expected a mode identifier after 'in'");
        return std::nullopt;
      }
      Token mode = take();
      if (!at_ident("mode")) {
        error(cur().span, "expected 'mode' after the mode identifier");
        return std::nullopt;
      }
      take();
      req.scope = ScopeSpec{mode.text};
    }

    while (at_ident("when") || at_ident("if")) {
      Token kw = take();
      BoolExprPtr expr = parse_clause_expr("condition");
      if (!expr) return std::nullopt;
      req.conditions.push_back(
          {kw.text == "when" ? ConditionKeyword::When : ConditionKeyword::If,
           expr});
    }

    if (!at(Tok::Ident) || structural_keywords().count(cur().text)) {
      error(cur().span, "expected a component name");
      return std::nullopt;
    }
    req.component = take().text;

    if (!at_ident("shall")) {
      error(cur().span, "missing 'shall' after the component name");
      return std::nullopt;
    }
    take();

    if (at_ident("always")) {
      take();
      req.timing.kind = TimingKind::Always;
    } else if (at_ident("never")) {
      take();
      req.timing.kind = TimingKind::Never;
    } else if (at_ident("eventually")) {
      take();
      req.timing.kind = TimingKind::Eventually;
    } else if (at_ident("until")) {
      take();
      BoolExprPtr stop = parse_clause_expr("stop condition");
      if (!stop) return std::nullopt;
      req.timing.kind = TimingKind::Until;
      req.timing.stop_expr = stop;
    } else if (at_ident("within") || at_ident("for")) {
      Token kw = take();
      if (!at(Tok::Number) || cur().number < 0 ||
          cur().number != static_cast<double>(static_cast<long long>(cur().number))) {
        error(cur().span, "expected a non-negative integer tick count after '" +
                              kw.text + "'");
        return std::nullopt;
      }
      Token n = take();
      if (!at_ident("ticks")) {
        error(cur().span, "expected 'ticks' after the tick count");
        return std::nullopt;
      }
      take();
      req.timing.kind =
          kw.text == "within" ? TimingKind::Within : TimingKind::For;
      req.timing.ticks = static_cast<int>(n.number);
    } else if (cur().kind == Tok::Ident &&
               unsupported_timings().count(cur().text)) {
      error(cur().span, "unsupported FRETISH feature: timing '" + cur().text +
                            "' has no pinned semantics");
      return std::nullopt;
    }

    if (!at_ident("satisfy")) {
      if (cur().kind == Tok::Ident && !structural_keywords().count(cur().text)) {
        error(cur().span, "unknown timing keyword '" + cur().text + "'");
      } else {
        error(cur().span, "missing response: expected 'satisfy (...)'");
      }
      return std::nullopt;
    }
    take();

    BoolExprPtr response = parse_clause_expr("response");
    if (!response) return std::nullopt;
    req.response = response;

    if (!at(Tok::End)) {
      error(cur().span, "unexpected trailing input after the response");
      return std::nullopt;
    }
    return req;
  }
};

}  // namespace

ParseResult parse_requirement(std::string_view source) {
  Lexer lexer{source, 0, 1, 1, {}};
  std::vector<Token> toks = lexer.run();
  if (!lexer.diags.empty()) return {std::nullopt, std::move(lexer.diags)};

  Parser parser{std::move(toks), 0, {}, 0, 0};
  auto req = parser.parse_sentence(source);
  if (!req && parser.diags.empty()) {
    // Guarantee at least one diagnostic on failure.
    parser.diags.push_back(
        {Severity::Error, Span{0, source.size(), 1, 1}, "malformed requirement", {}});
  }
  if (!req) return {std::nullopt, std::move(parser.diags)};
  return {std::move(req), std::move(parser.diags)};
}

// ---------------------------------------------------------------------------
// Project files
// ---------------------------------------------------------------------------

namespace {

struct Block {
  std::map<std::string, std::string> headers;
  std::string sentence;
  int first_line = 1;
  int sentence_line = 1;
};

}  // namespace

ProjectParseResult parse_project(std::string_view text,
                                 const std::string& filename) {
  ProjectParseResult result;
  auto diag = [&](int line, Severity sev, std::string msg) {
    result.diagnostics.push_back(
        {sev, Span{0, 0, line, 1}, std::move(msg), filename});
  };

  std::vector<Block> blocks;
  Block current;
  bool in_block = false;

  std::istringstream stream{std::string(text)};
  std::string line;
  int lineno = 0;
  auto flush = [&]() {
    if (in_block) blocks.push_back(current);
    current = Block{};
    in_block = false;
  };

  while (std::getline(stream, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[start])))
      ++start;
    trimmed = trimmed.substr(start);

    if (trimmed.empty()) {
      flush();
      continue;
    }
    if (trimmed.rfind("##", 0) == 0) continue;  // comment line
    if (!in_block) {
      in_block = true;
      current.first_line = lineno;
    }
    if (trimmed[0] == '#') {
      std::string body = trimmed.substr(1);
      std::size_t colon = body.find(':');
      if (colon == std::string::npos) {
        diag(lineno, Severity::Error,
             "malformed header line (expected '# key: value')");
        continue;
      }
      std::string key = body.substr(0, colon);
      std::string value = body.substr(colon + 1);
      auto strip = [](std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        s = s.substr(b, e - b);
      };
      strip(key);
      strip(value);
      if (key != "id" && key != "parent" && key != "project" &&
          key != "rationale") {
        diag(lineno, Severity::Error, "unknown header key '" + key + "'");
        continue;
      }
      if (!current.sentence.empty()) {
        diag(lineno, Severity::Error, "header line after the sentence started");
        continue;
      }
      current.headers[key] = value;
    } else {
      if (current.sentence.empty()) current.sentence_line = lineno;
      if (!current.sentence.empty()) current.sentence += ' ';
      current.sentence += trimmed;
    }
  }
  flush();

  std::set<std::string> seen_ids;
  for (const auto& block : blocks) {
    auto id_it = block.headers.find("id");
    if (id_it == block.headers.end() || id_it->second.empty()) {
      diag(block.first_line, Severity::Error, "requirement block has no '# id:' header");
      continue;
    }
    if (block.sentence.empty()) {
      diag(block.first_line, Severity::Error,
           "requirement '" + id_it->second + "' has no FRETISH sentence");
      continue;
    }
    if (!seen_ids.insert(id_it->second).second) {
      diag(block.first_line, Severity::Error,
           "duplicate requirement id '" + id_it->second + "'");
      continue;
    }

    ParseResult parsed = parse_requirement(block.sentence);
    if (!parsed.ok()) {
      for (auto d : parsed.diagnostics) {
        // The sentence was joined onto one line; rebase onto the file.
        d.file = filename;
        d.span.line = block.sentence_line;
        result.diagnostics.push_back(std::move(d));
      }
      continue;
    }
    Requirement req = std::move(*parsed.requirement);
    req.id = id_it->second;
    if (auto it = block.headers.find("parent");
        it != block.headers.end() && !it->second.empty())
      req.parent_id = it->second;
    if (auto it = block.headers.find("project"); it != block.headers.end())
      req.project = it->second;
    if (auto it = block.headers.find("rationale"); it != block.headers.end())
      req.rationale = it->second;
    result.requirements.push_back(std::move(req));
  }
  return result;
}

// ---------------------------------------------------------------------------
// FRETISH pretty-printer
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

int num_prec(const NumExpr& e) {
  if (const auto* b = std::get_if<NumBinary>(&e.node))
    return (b->op == ArithOp::Mul || b->op == ArithOp::Div) ? 2 : 1;
  return 3;
}

std::string print_num(const NumExprPtr& e);

std::string print_num_child(const NumExprPtr& child, int parent_prec,
                            bool right_side) {
  int prec = num_prec(*child);
  bool wrap = right_side ? prec <= parent_prec : prec < parent_prec;
  std::string s = print_num(child);
  return wrap ? "(" + s + ")" : s;
}

std::string print_num(const NumExprPtr& e) {
  if (!e) return "<null>";
  if (const auto* n = std::get_if<NumName>(&e->node))
    return n->sampled ? n->name + "(i)" : n->name;
  if (const auto* n = std::get_if<NumLiteral>(&e->node)) {
    if (n->value < 0) return "(" + format_double(n->value) + ")";
    return format_double(n->value);
  }
  if (const auto* n = std::get_if<NumCall>(&e->node)) {
    std::string out = n->fn + "(";
    for (std::size_t i = 0; i < n->args.size(); ++i) {
      if (i) out += ",";
      out += print_num(n->args[i]);
    }
    return out + ")";
  }
  if (const auto* n = std::get_if<NumBinary>(&e->node)) {
    int prec = num_prec(*e);
    const char* op = n->op == ArithOp::Add   ? " + "
                     : n->op == ArithOp::Sub ? " - "
                     : n->op == ArithOp::Mul ? " * "
                                             : " / ";
    return print_num_child(n->lhs, prec, false) + op +
           print_num_child(n->rhs, prec, true);
  }
  const auto& n = std::get<NumParen>(e->node);
  return "(" + print_num(n.inner) + ")";
}

// Boolean precedence: => 1, | 2, & 3, ! and comparisons 4, atoms 5.
int bool_prec(const BoolExpr& e) {
  if (const auto* b = std::get_if<BoolBinary>(&e.node)) {
    switch (b->kind) {
      case BoolBinary::Implies: return 1;
      case BoolBinary::Or: return 2;
      case BoolBinary::And: return 3;
    }
  }
  if (std::get_if<BoolNot>(&e.node)) return 4;
  if (std::get_if<BoolCompare>(&e.node)) return 4;
  if (std::get_if<BoolIsNull>(&e.node)) return 4;
  return 5;
}

std::string print_bool(const BoolExprPtr& e);

std::string print_bool_child(const BoolExprPtr& child, int parent_prec,
                             bool right_side) {
  int prec = bool_prec(*child);
  bool wrap = right_side ? prec <= parent_prec : prec < parent_prec;
  // => is right-associative: the right chain keeps its natural form, a
  // left-nested implication needs explicit parentheses.
  if (parent_prec == 1 && prec == 1) wrap = !right_side;
  std::string s = print_bool(child);
  return wrap ? "(" + s + ")" : s;
}

std::string print_bool(const BoolExprPtr& e) {
  if (!e) return "<null>";
  if (const auto* n = std::get_if<BoolAtom>(&e->node)) return n->name;
  if (const auto* n = std::get_if<BoolConst>(&e->node))
    return n->value ? "true" : "false";
  if (const auto* n = std::get_if<BoolNot>(&e->node)) {
    int prec = bool_prec(*n->arg);
    std::string arg = print_bool(n->arg);
    return prec < 4 ? "!(" + arg + ")" : "!" + arg;
  }
  if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
    int prec = bool_prec(*e);
    const char* op = n->kind == BoolBinary::And  ? " & "
                     : n->kind == BoolBinary::Or ? " | "
                                                 : " => ";
    return print_bool_child(n->lhs, prec, false) + op +
           print_bool_child(n->rhs, prec, true);
  }
  if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
    const char* op = nullptr;
    switch (n->op) {
      case CmpOp::Lt: op = " < "; break;
      case CmpOp::Le: op = " <= "; break;
      case CmpOp::Gt: op = " > "; break;
      case CmpOp::Ge: op = " >= "; break;
      case CmpOp::Eq: op = " = "; break;
      case CmpOp::Ne: op = " != "; break;
    }
    return print_num(n->lhs) + op + print_num(n->rhs);
  }
  if (const auto* n = std::get_if<BoolIsNull>(&e->node))
    return print_num(n->arg) + " = null";
  const auto& n = std::get<BoolParen>(e->node);
  return "(" + print_bool(n.inner) + ")";
}

}  // namespace

std::string print_fretish(const BoolExprPtr& e) { return print_bool(e); }
std::string print_fretish(const NumExprPtr& e) { return print_num(e); }

std::string pretty_print_requirement(const Requirement& req) {
  std::string out;
  if (req.scope) out += "in " + req.scope->mode + " mode ";
  for (const auto& c : req.conditions) {
    out += c.keyword == ConditionKeyword::When ? "when " : "if ";
    out += print_bool(c.expr);
    out += ' ';
  }
  out += req.component + " shall";
  switch (req.timing.kind) {
    case TimingKind::Default: break;
    case TimingKind::Always: out += " always"; break;
    case TimingKind::Never: out += " never"; break;
    case TimingKind::Eventually: out += " eventually"; break;
    case TimingKind::Until:
      out += " until " + print_bool(req.timing.stop_expr);
      break;
    case TimingKind::Within:
      out += " within " + std::to_string(req.timing.ticks.value_or(0)) + " ticks";
      break;
    case TimingKind::For:
      out += " for " + std::to_string(req.timing.ticks.value_or(0)) + " ticks";
      break;
  }
  out += " satisfy " + print_bool(req.response);
  return out;
}

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

namespace {

void collect_names(const NumExprPtr& e, std::set<std::string>& names);

void collect_names(const BoolExprPtr& e, std::set<std::string>& names) {
  if (!e) return;
  if (const auto* n = std::get_if<BoolAtom>(&e->node)) {
    names.insert(n->name);
  } else if (const auto* n = std::get_if<BoolNot>(&e->node)) {
    collect_names(n->arg, names);
  } else if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
    collect_names(n->lhs, names);
    collect_names(n->rhs, names);
  } else if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
    collect_names(n->lhs, names);
    collect_names(n->rhs, names);
  } else if (const auto* n = std::get_if<BoolIsNull>(&e->node)) {
    collect_names(n->arg, names);
  } else if (const auto* n = std::get_if<BoolParen>(&e->node)) {
    collect_names(n->inner, names);
  }
}

void collect_names(const NumExprPtr& e, std::set<std::string>& names) {
  if (!e) return;
  if (const auto* n = std::get_if<NumName>(&e->node)) {
    names.insert(n->name);
  } else if (const auto* n = std::get_if<NumCall>(&e->node)) {
    // The sensorValue selector is resolved through the signal map,
    // so it does not count as a signal/parameter reference.
    if (n->fn != "sensorValue")
      for (const auto& a : n->args) collect_names(a, names);
  } else if (const auto* n = std::get_if<NumBinary>(&e->node)) {
    collect_names(n->lhs, names);
    collect_names(n->rhs, names);
  } else if (const auto* n = std::get_if<NumParen>(&e->node)) {
    collect_names(n->inner, names);
  }
}

}  // namespace

std::vector<Diagnostic> lint(const std::vector<Requirement>& project,
                             const LintInputs& inputs) {
  std::vector<Diagnostic> diags;
  auto add = [&](Severity sev, std::string msg) {
    diags.push_back({sev, Span{}, std::move(msg), {}});
  };

  std::set<std::string> ids;
  for (const auto& req : project) {
    if (!ids.insert(req.id).second)
      add(Severity::Error, "duplicate requirement id '" + req.id + "'");
  }
  for (const auto& req : project) {
    if (req.parent_id && !ids.count(*req.parent_id))
      add(Severity::Error, "requirement '" + req.id +
                               "' has dangling parent id '" + *req.parent_id +
                               "'");
  }

  std::set<std::string> referenced;
  for (const auto& req : project) {
    for (const auto& c : req.conditions) collect_names(c.expr, referenced);
    collect_names(req.response, referenced);
    if (req.timing.stop_expr) collect_names(req.timing.stop_expr, referenced);
    if (req.scope) referenced.insert(req.scope->mode);
  }

  if (inputs.signals) {
    ParameterSet params = inputs.params.value_or(ParameterSet{});
    bool any_scoped = false;
    for (const auto& req : project) {
      auto run = [&](const BoolExprPtr& e) {
        if (!e) return;
        for (auto d : typecheck(e, *inputs.signals, params)) {
          d.message = "requirement '" + req.id + "': " + d.message;
          diags.push_back(std::move(d));
        }
      };
      for (const auto& c : req.conditions) run(c.expr);
      run(req.response);
      run(req.timing.stop_expr);
      if (req.scope) {
        any_scoped = true;
        if (!params.contains(req.scope->mode))
          add(Severity::Error, "requirement '" + req.id +
                                   "': unbound parameter or signal '" +
                                   req.scope->mode +
                                   "' (mode scope needs a bound mode code)");
      }
    }
    if (any_scoped) {
      auto it = inputs.signals->find("mode");
      if (it == inputs.signals->end() || it->second != SignalKind::Numeric)
        add(Severity::Error,
            "mode-scoped requirements need a numeric 'mode' signal");
    }
  }

  if (inputs.params) {
    for (const auto& [name, value] : inputs.params->entries()) {
      (void)value;
      if (name == "eq_tol") continue;  // consumed by '=' comparisons
      if (!referenced.count(name))
        add(Severity::Warning, "parameter '" + name +
                                   "' is never referenced by any requirement");
    }
    if (inputs.params->eq_tol() <= 0)
      add(Severity::Error, "eq_tol must be positive");
  }

  if (inputs.components) {
    std::set<std::string> seen;
    for (const auto& req : project) {
      if (!seen.insert(req.component).second) continue;
      if (!inputs.components->count(req.component))
        add(Severity::Warning, "component '" + req.component +
                                   "' is not mapped to any subsystem");
    }
  }

  return diags;
}

}  // namespace reqcheck
