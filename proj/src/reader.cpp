#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_set>
#include <utility>

#include "unfree/syntax.hpp"

namespace unfree::syntax {
namespace {

enum class Tok {
  LParen, RParen, LBracket, RBracket, LBrace, RBrace, LAngle, RAngle,
  Comma, At, Caret, Bar, Amp, Dollar, PatVar, Wildcard, Integer, Boolean, Ident, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '?' || c == '+' ||
         c == '*' || c == '/' || c == '=' || c == '!';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '?' || c == '\'' ||
         c == '+' || c == '*' || c == '/' || c == '=' || c == '!' || c == '_';
}

bool is_upper_start(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

bool is_lower_start(std::string_view s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s.front()));
}

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> k{
      "define", "lambda", "if", "let", "letrec", "match-all", "match", "match-lambda",
      "matcher", "pattern-function", "algebraic-data-matcher"};
  return k;
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek() {
    if (!lookahead_) lookahead_ = scan();
    return *lookahead_;
  }

  Token take() {
    Token t = peek();
    lookahead_.reset();
    last_end_ = t.end;
    return t;
  }

  [[nodiscard]] std::size_t last_end() const { return last_end_; }

private:
  [[nodiscard]] SourcePos here() const { return {line_, column_}; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++i_;
  }

  [[nodiscard]] bool at(std::size_t k) const { return i_ + k < text_.size(); }
  [[nodiscard]] char ch(std::size_t k = 0) const { return at(k) ? text_[i_ + k] : '\0'; }

  void skip_blank() {
    while (at(0)) {
      char c = ch();
      if (c == ';') {
        while (at(0) && ch() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token make(Tok kind, SourcePos pos, std::size_t begin) {
    return Token{kind, std::string(text_.substr(begin, i_ - begin)), pos, begin, i_};
  }

  Token single(Tok kind) {
    auto pos = here();
    auto begin = i_;
    advance();
    return make(kind, pos, begin);
  }

  std::string scan_ident_tail() {
    auto begin = i_;
    while (at(0) && is_ident_char(ch())) advance();
    return std::string(text_.substr(begin, i_ - begin));
  }

  Token scan() {
    skip_blank();
    auto pos = here();
    auto begin = i_;
    if (!at(0)) return Token{Tok::End, "", pos, i_, i_};
    char c = ch();
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '<': return single(Tok::LAngle);
      case '>': return single(Tok::RAngle);
      case ',': return single(Tok::Comma);
      case '@': return single(Tok::At);
      case '^': return single(Tok::Caret);
      case '|': return single(Tok::Bar);
      case '&': return single(Tok::Amp);
      default: break;
    }
    if (c == '$') {
      advance();
      if (std::isalpha(static_cast<unsigned char>(ch()))) {
        auto name = scan_ident_tail();
        Token t = make(Tok::PatVar, pos, begin);
        t.text = name;
        return t;
      }
      return make(Tok::Dollar, pos, begin);
    }
    if (c == '_') {
      advance();
      if (is_ident_char(ch())) throw SyntaxError("bad token starting with `_'", pos);
      return make(Tok::Wildcard, pos, begin);
    }
    if (c == '#') {
      advance();
      if ((ch() == 't' || ch() == 'f') && !is_ident_char(ch(1))) {
        advance();
        return make(Tok::Boolean, pos, begin);
      }
      throw SyntaxError("bad token starting with `#'", pos);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(ch(1))))) {
      advance();
      while (std::isdigit(static_cast<unsigned char>(ch()))) advance();
      if (is_ident_char(ch())) throw SyntaxError("malformed number", pos);
      return make(Tok::Integer, pos, begin);
    }
    if (is_ident_start(c)) {
      scan_ident_tail();
      return make(Tok::Ident, pos, begin);
    }
    throw SyntaxError(std::string("unexpected character `") + c + "'", pos);
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::optional<Token> lookahead_;
  std::size_t last_end_ = 0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::LParen: return "`('";
    case Tok::RParen: return "`)'";
    case Tok::LBracket: return "`['";
    case Tok::RBracket: return "`]'";
    case Tok::LBrace: return "`{'";
    case Tok::RBrace: return "`}'";
    case Tok::LAngle: return "`<'";
    case Tok::RAngle: return "`>'";
    case Tok::Comma: return "`,'";
    case Tok::At: return "`@'";
    case Tok::Caret: return "`^'";
    case Tok::Bar: return "`|'";
    case Tok::Amp: return "`&'";
    case Tok::Dollar: return "`$'";
    case Tok::PatVar: return "pattern variable";
    case Tok::Wildcard: return "`_'";
    case Tok::Integer: return "integer";
    case Tok::Boolean: return "boolean";
    case Tok::Ident: return "identifier";
    case Tok::End: return "end of input";
  }
  return "token";
}

template <class T>
ExprPtr expr_at(SourcePos pos, T node) {
  return std::make_shared<const Expr>(Expr{pos, Expr::Node{std::move(node)}});
}

template <class T>
PatternPtr pattern_at(SourcePos pos, T node) {
  return std::make_shared<const Pattern>(Pattern{pos, Pattern::Node{std::move(node)}});
}

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  bool at_end() { return lex_.peek().kind == Tok::End; }
  SourcePos next_pos() { return lex_.peek().pos; }
  std::size_t offset() const { return lex_.last_end(); }

  ExprPtr top_level_form() { return expr(true); }

  PatternPtr pattern(bool allow_variable_patterns) { return parse_pattern(allow_variable_patterns); }

private:
  [[noreturn]] void fail(const std::string& message, const Token& at) {
    throw SyntaxError(message, at.pos, at.kind == Tok::End);
  }

  Token expect(Tok kind, const char* context) {
    Token t = lex_.take();
    if (t.kind != kind) {
      fail(std::string("expected ") + describe(kind) + " " + context + ", found " +
               (t.kind == Tok::End ? std::string("end of input") : "`" + t.text + "'"),
           t);
    }
    return t;
  }

  bool accept(Tok kind) {
    if (lex_.peek().kind != kind) return false;
    lex_.take();
    return true;
  }

  Symbol binder(const char* context) {
    Token t = lex_.take();
    if (t.kind != Tok::PatVar) fail(std::string("expected `$name' ") + context, t);
    if (is_upper_start(t.text)) fail("bound variable `" + t.text + "' must not begin uppercase", t);
    return Symbol::intern(t.text);
  }

  std::vector<Symbol> binder_list(const char* context) {
    expect(Tok::LBracket, context);
    std::vector<Symbol> params;
    while (!accept(Tok::RBracket)) params.push_back(binder(context));
    return params;
  }

  Symbol lower_ident(const char* context) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident) fail(std::string("expected identifier ") + context, t);
    if (!is_lower_start(t.text)) fail("`" + t.text + "' must begin with a lowercase letter", t);
    return Symbol::intern(t.text);
  }

  Symbol upper_ident(const char* context) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident) fail(std::string("expected constructor ") + context, t);
    if (!is_upper_start(t.text)) fail("data constructor `" + t.text + "' must begin uppercase", t);
    return Symbol::intern(t.text);
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr expr(bool top_level = false) {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Integer:
        return expr_at(t.pos, IntegerLiteral{BigInt(t.text)});
      case Tok::Boolean:
        return expr_at(t.pos, BooleanLiteral{t.text == "#t"});
      case Tok::Ident: {
        if (is_upper_start(t.text)) fail("variable `" + t.text + "' must not begin uppercase", t);
        if (keywords().count(t.text)) fail("keyword `" + t.text + "' used as a variable", t);
        return expr_at(t.pos, Variable{Symbol::intern(t.text)});
      }
      case Tok::LAngle: {
        Symbol ctor = upper_ident("after `<'");
        std::vector<ExprPtr> args;
        while (!accept(Tok::RAngle)) args.push_back(expr());
        return expr_at(t.pos, InductiveExpr{ctor, std::move(args)});
      }
      case Tok::LBracket: {
        std::vector<ExprPtr> elements;
        while (!accept(Tok::RBracket)) elements.push_back(expr());
        return expr_at(t.pos, TupleExpr{std::move(elements)});
      }
      case Tok::LBrace: {
        std::vector<CollectionElement> elements;
        while (!accept(Tok::RBrace)) {
          bool splice = accept(Tok::At);
          elements.push_back({expr(), splice});
        }
        return expr_at(t.pos, CollectionExpr{std::move(elements)});
      }
      case Tok::LParen:
        return compound(t, top_level);
      case Tok::At:
        fail("`@' splice outside a collection", t);
      default:
        fail(std::string("unexpected ") +
                 (t.kind == Tok::End ? std::string("end of input") : "`" + t.text + "'"),
             t);
    }
  }

  ExprPtr compound(const Token& open, bool top_level) {
    const Token& head = lex_.peek();
    if (head.kind == Tok::RParen) fail("empty application `()'", head);
    if (head.kind == Tok::Ident && keywords().count(head.text)) {
      Token kw = lex_.take();
      return special_form(open, kw, top_level);
    }
    ExprPtr fn = expr();
    std::vector<ExprPtr> args;
    while (!accept(Tok::RParen)) args.push_back(expr());
    return expr_at(open.pos, ApplicationExpr{std::move(fn), std::move(args)});
  }

  MatchClause match_clause() {
    expect(Tok::LBracket, "to open a match clause");
    PatternPtr p = parse_pattern(false);
    ExprPtr body = expr();
    expect(Tok::RBracket, "to close a match clause");
    return {std::move(p), std::move(body)};
  }

  std::vector<MatchClause> match_clauses() {
    expect(Tok::LBrace, "to open match clauses");
    std::vector<MatchClause> clauses;
    while (!accept(Tok::RBrace)) clauses.push_back(match_clause());
    return clauses;
  }

  ExprPtr special_form(const Token& open, const Token& kw, bool top_level) {
    const std::string& k = kw.text;
    SourcePos pos = open.pos;
    ExprPtr result;
    if (k == "define") {
      if (!top_level) fail("`define' is only allowed at top level", kw);
      Symbol name = binder("after define");
      ExprPtr value = expr();
      result = expr_at(pos, DefineExpr{name, std::move(value)});
    } else if (k == "lambda") {
      auto params = binder_list("as lambda parameters");
      ExprPtr body = expr();
      result = expr_at(pos, LambdaExpr{std::move(params), std::move(body)});
    } else if (k == "if") {
      ExprPtr c = expr();
      ExprPtr a = expr();
      ExprPtr b = expr();
      result = expr_at(pos, IfExpr{std::move(c), std::move(a), std::move(b)});
    } else if (k == "let" || k == "letrec") {
      expect(Tok::LBrace, "to open bindings");
      std::vector<LetBinding> bindings;
      while (!accept(Tok::RBrace)) {
        expect(Tok::LBracket, "to open a binding");
        Symbol name = binder("in binding");
        ExprPtr value = expr();
        expect(Tok::RBracket, "to close a binding");
        bindings.push_back({name, std::move(value)});
      }
      ExprPtr body = expr();
      result = expr_at(pos, LetExpr{k == "letrec", std::move(bindings), std::move(body)});
    } else if (k == "match-all") {
      ExprPtr target = expr();
      ExprPtr matcher = expr();
      MatchClause clause = match_clause();
      result = expr_at(pos, MatchAllExpr{std::move(target), std::move(matcher), std::move(clause)});
    } else if (k == "match") {
      ExprPtr target = expr();
      ExprPtr matcher = expr();
      auto clauses = match_clauses();
      result = expr_at(pos, MatchExpr{std::move(target), std::move(matcher), std::move(clauses)});
    } else if (k == "match-lambda") {
      ExprPtr matcher = expr();
      auto clauses = match_clauses();
      Symbol param = Symbol::intern(" match-lambda-target");
      ExprPtr body = expr_at(pos, MatchExpr{expr_at(pos, Variable{param}), matcher, clauses});
      result = expr_at(pos, MatchLambdaExpr{std::move(matcher), std::move(clauses), param,
                                            std::move(body)});
    } else if (k == "matcher") {
      result = expr_at(pos, MatcherExpr{matcher_def()});
    } else if (k == "pattern-function") {
      auto params = binder_list("as pattern-function parameters");
      PatternPtr body = parse_pattern(true);
      check_variable_patterns(*body, params);
      result = expr_at(pos, PatternFunctionExpr{std::move(params), std::move(body)});
    } else {  // algebraic-data-matcher
      expect(Tok::LBrace, "to open constructor definitions");
      std::vector<ConstructorDef> ctors;
      while (!accept(Tok::RBrace)) {
        expect(Tok::LAngle, "to open a constructor definition");
        Symbol name = lower_ident("naming a constructor");
        std::vector<ExprPtr> matchers;
        while (!accept(Tok::RAngle)) matchers.push_back(expr());
        ctors.push_back({name, std::move(matchers)});
      }
      result = expr_at(pos, AlgebraicDataMatcherExpr{std::move(ctors)});
    }
    expect(Tok::RParen, ("to close `" + k + "'").c_str());
    return result;
  }

  // -- matcher definitions --------------------------------------------------

  std::shared_ptr<const MatcherDef> matcher_def() {
    expect(Tok::LBrace, "to open matcher clauses");
    MatcherDef def;
    while (!accept(Tok::RBrace)) {
      expect(Tok::LBracket, "to open a matcher clause");
      PatternMatchClause clause;
      clause.pattern = primitive_pattern();
      clause.next_matchers = expr();
      expect(Tok::LBrace, "to open primitive data clauses");
      while (!accept(Tok::RBrace)) {
        expect(Tok::LBracket, "to open a primitive data clause");
        DataMatchClause dc;
        dc.pattern = primitive_data();
        dc.body = expr();
        expect(Tok::RBracket, "to close a primitive data clause");
        clause.data_clauses.push_back(std::move(dc));
      }
      expect(Tok::RBracket, "to close a matcher clause");
      def.clauses.push_back(std::move(clause));
    }
    return std::make_shared<const MatcherDef>(std::move(def));
  }

  PrimitivePatternPtr primitive_pattern() {
    Token t = lex_.take();
    PrimitivePatternPattern pp;
    switch (t.kind) {
      case Tok::Dollar:
        pp.node = PrimitivePatternVariable{};
        break;
      case Tok::Comma: {
        Token v = lex_.take();
        if (v.kind != Tok::PatVar) fail("expected `,$name' value-pattern-pattern", v);
        pp.node = ValuePatternPattern{Symbol::intern(v.text)};
        break;
      }
      case Tok::LAngle: {
        Symbol ctor = lower_ident("naming a pattern constructor");
        std::vector<PrimitivePatternPtr> args;
        while (!accept(Tok::RAngle)) args.push_back(primitive_pattern());
        pp.node = PrimitiveInductivePattern{ctor, std::move(args)};
        break;
      }
      default:
        fail("malformed primitive-pattern-pattern", t);
    }
    return std::make_shared<const PrimitivePatternPattern>(std::move(pp));
  }

  PrimitiveDataPtr primitive_data() {
    Token t = lex_.take();
    PrimitiveDataPattern dp;
    switch (t.kind) {
      case Tok::Wildcard:
        dp.node = DataWildcard{};
        break;
      case Tok::PatVar:
        dp.node = DataVariable{Symbol::intern(t.text)};
        break;
      case Tok::LAngle: {
        Symbol ctor = upper_ident("in a primitive data pattern");
        std::vector<PrimitiveDataPtr> args;
        while (!accept(Tok::RAngle)) args.push_back(primitive_data());
        dp.node = DataInductive{ctor, std::move(args)};
        break;
      }
      case Tok::LBrace: {
        if (accept(Tok::RBrace)) {
          dp.node = DataEmptyCollection{};
        } else if (accept(Tok::At)) {
          auto init = primitive_data();
          auto last = primitive_data();
          expect(Tok::RBrace, "to close a snoc pattern");
          dp.node = DataSnoc{std::move(init), std::move(last)};
        } else {
          auto head = primitive_data();
          expect(Tok::At, "before the rest of a cons pattern");
          auto tail = primitive_data();
          expect(Tok::RBrace, "to close a cons pattern");
          dp.node = DataCons{std::move(head), std::move(tail)};
        }
        break;
      }
      default:
        fail("malformed primitive-data-pattern", t);
    }
    return std::make_shared<const PrimitiveDataPattern>(std::move(dp));
  }

  // -- patterns -------------------------------------------------------------

  PatternPtr parse_pattern(bool body) {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Wildcard:
        return pattern_at(t.pos, WildcardPattern{});
      case Tok::PatVar:
        if (is_upper_start(t.text)) fail("pattern variable `$" + t.text + "' must not begin uppercase", t);
        return pattern_at(t.pos, PatternVariable{Symbol::intern(t.text)});
      case Tok::Comma: {
        if (lex_.peek().kind == Tok::End || lex_.peek().kind == Tok::RParen ||
            lex_.peek().kind == Tok::RBracket || lex_.peek().kind == Tok::RAngle ||
            lex_.peek().kind == Tok::RBrace)
          fail("malformed value-pattern: `,' must be followed by an expression", lex_.peek());
        return pattern_at(t.pos, ValuePattern{expr()});
      }
      case Tok::LAngle: {
        Symbol ctor = lower_ident("naming a pattern constructor");
        std::vector<PatternPtr> args;
        while (!accept(Tok::RAngle)) args.push_back(parse_pattern(body));
        return pattern_at(t.pos, InductivePattern{ctor, std::move(args)});
      }
      case Tok::LBracket: {
        std::vector<PatternPtr> elements;
        while (!accept(Tok::RBracket)) elements.push_back(parse_pattern(body));
        return pattern_at(t.pos, TuplePattern{std::move(elements)});
      }
      case Tok::Caret:
        return pattern_at(t.pos, NotPattern{parse_pattern(body)});
      case Tok::LParen: {
        if (accept(Tok::Bar)) {
          std::vector<PatternPtr> alts;
          while (!accept(Tok::RParen)) alts.push_back(parse_pattern(body));
          return pattern_at(t.pos, OrPattern{std::move(alts)});
        }
        if (accept(Tok::Amp)) {
          std::vector<PatternPtr> conj;
          while (!accept(Tok::RParen)) conj.push_back(parse_pattern(body));
          return pattern_at(t.pos, AndPattern{std::move(conj)});
        }
        if (lex_.peek().kind == Tok::RParen) fail("empty pattern application `()'", lex_.peek());
        ExprPtr fn = expr();
        std::vector<PatternPtr> args;
        while (!accept(Tok::RParen)) args.push_back(parse_pattern(body));
        return pattern_at(t.pos, ApplicationPattern{std::move(fn), std::move(args)});
      }
      case Tok::Ident:
        if (!body) fail("variable-pattern `" + t.text + "' outside a pattern-function body", t);
        if (!is_lower_start(t.text)) fail("variable-pattern `" + t.text + "' must begin lowercase", t);
        return pattern_at(t.pos, VariablePattern{Symbol::intern(t.text)});
      case Tok::At:
        fail("`@' splice outside a collection", t);
      default:
        fail(std::string("unexpected ") +
                 (t.kind == Tok::End ? std::string("end of input") : "`" + t.text + "'") +
                 " in pattern",
             t);
    }
  }

  // Variable-patterns must name parameters of the enclosing pattern-function.
  void check_variable_patterns(const Pattern& p, const std::vector<Symbol>& params) {
    auto each = [&](const std::vector<PatternPtr>& ps) {
      for (const auto& q : ps) check_variable_patterns(*q, params);
    };
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VariablePattern>) {
            if (std::find(params.begin(), params.end(), n.name) == params.end())
              throw SyntaxError("variable-pattern `" + n.name.name() +
                                    "' is not a parameter of the pattern-function",
                                p.pos);
          } else if constexpr (std::is_same_v<T, InductivePattern> ||
                               std::is_same_v<T, ApplicationPattern>) {
            each(n.args);
          } else if constexpr (std::is_same_v<T, OrPattern>) {
            each(n.alternatives);
          } else if constexpr (std::is_same_v<T, AndPattern>) {
            each(n.conjuncts);
          } else if constexpr (std::is_same_v<T, TuplePattern>) {
            each(n.elements);
          } else if constexpr (std::is_same_v<T, NotPattern>) {
            check_variable_patterns(*n.pattern, params);
          }
        },
        p.node);
  }

  Lexer lex_;
};

} // namespace

struct FormReader::Impl {
  explicit Impl(std::string_view text) : parser(text) {}
  Parser parser;
};

FormReader::FormReader(std::string_view text) : impl_(std::make_unique<Impl>(text)) {}
FormReader::~FormReader() = default;
FormReader::FormReader(FormReader&&) noexcept = default;
FormReader& FormReader::operator=(FormReader&&) noexcept = default;

std::optional<ExprPtr> FormReader::next() {
  if (impl_->parser.at_end()) return std::nullopt;
  return impl_->parser.top_level_form();
}

std::size_t FormReader::offset() const { return impl_->parser.offset(); }

ExprPtr read_expr(std::string_view text) {
  Parser p(text);
  if (p.at_end()) throw SyntaxError("expected a form, found end of input", {1, 1}, true);
  ExprPtr e = p.top_level_form();
  if (!p.at_end()) throw SyntaxError("unexpected input after the form", p.next_pos());
  return e;
}

PatternPtr read_pattern(std::string_view text, bool in_pattern_function_body) {
  Parser p(text);
  PatternPtr pat = p.pattern(in_pattern_function_body);
  if (!p.at_end()) throw SyntaxError("unexpected input after the pattern", p.next_pos());
  return pat;
}

std::vector<ExprPtr> read_program(std::string_view text) {
  std::vector<ExprPtr> forms;
  FormReader reader(text);
  while (auto e = reader.next()) forms.push_back(std::move(*e));
  return forms;
}

ExprPtr make_expr(Expr::Node node, SourcePos pos) {
  return std::make_shared<const Expr>(Expr{pos, std::move(node)});
}

PatternPtr make_pattern(Pattern::Node node, SourcePos pos) {
  return std::make_shared<const Pattern>(Pattern{pos, std::move(node)});
}

} // namespace unfree::syntax
