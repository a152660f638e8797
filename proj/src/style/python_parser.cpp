// Recursive-descent parser for Python 3 producing a tree whose node kinds
// follow the standard library `ast` module.

#include <set>

#include "ast_builder.hpp"
#include "lexer.hpp"
#include "parsers.hpp"

namespace reco::style::detail {
namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "False", "None",   "True",    "and",      "as",   "assert", "async",  "await",
    "break", "class",  "continue", "def",     "del",  "elif",   "else",   "except",
    "finally", "for",  "from",    "global",   "if",   "import", "in",     "is",
    "lambda", "nonlocal", "not",  "or",       "pass", "raise",  "return", "try",
    "while", "with",   "yield"};

const char* binop_kind(std::string_view op) {
  if (op == "+") return "Add";
  if (op == "-") return "Sub";
  if (op == "*") return "Mult";
  if (op == "/") return "Div";
  if (op == "//") return "FloorDiv";
  if (op == "%") return "Mod";
  if (op == "**") return "Pow";
  if (op == "@") return "MatMult";
  if (op == "<<") return "LShift";
  if (op == ">>") return "RShift";
  if (op == "|") return "BitOr";
  if (op == "^") return "BitXor";
  if (op == "&") return "BitAnd";
  return nullptr;
}

class PythonParser {
 public:
  explicit PythonParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  PNode parse_module() {
    PNode mod("Module", 0, toks_.empty() ? 0 : toks_.back().end);
    while (!at(Tok::kEnd)) {
      if (at(Tok::kNewline)) {
        ++pos_;
        continue;
      }
      parse_statement(mod);
    }
    return mod;
  }

 private:
  // -- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    const auto i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok t) const { return peek().type == t; }
  bool at_op(std::string_view op, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.type == Tok::kOp && t.text == op;
  }
  bool at_kw(std::string_view kw, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.type == Tok::kName && t.text == kw;
  }
  bool at_name() const { return at(Tok::kName) && !kKeywords.contains(peek().text); }
  const Token& next() {
    const auto& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(std::string_view what) const {
    throw ParseFailure("python: " + std::string(what) + " near offset " +
                       std::to_string(peek().begin) + " ('" + peek().text + "')");
  }
  const Token& expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    return next();
  }
  const Token& expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail("expected '" + std::string(kw) + "'");
    return next();
  }
  const Token& expect_name() {
    if (!at_name()) fail("expected identifier");
    return next();
  }
  std::uint32_t prev_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

  // -- statements ----------------------------------------------------------
  void parse_statement(PNode& parent) {
    if (at_op("@")) return parent.children.push_back(parse_decorated());
    if (at_kw("def")) return parent.children.push_back(parse_funcdef({}, false));
    if (at_kw("class")) return parent.children.push_back(parse_classdef({}));
    if (at_kw("if")) return parent.children.push_back(parse_if());
    if (at_kw("while")) return parent.children.push_back(parse_while());
    if (at_kw("for")) return parent.children.push_back(parse_for(false));
    if (at_kw("try")) return parent.children.push_back(parse_try());
    if (at_kw("with")) return parent.children.push_back(parse_with(false));
    if (at_kw("async")) {
      const auto begin = next().begin;
      PNode n;
      if (at_kw("def")) n = parse_funcdef({}, true);
      else if (at_kw("for")) n = parse_for(true);
      else if (at_kw("with")) n = parse_with(true);
      else fail("expected def/for/with after async");
      n.begin = begin;
      return parent.children.push_back(std::move(n));
    }
    parse_simple_statements(parent);
  }

  void parse_simple_statements(PNode& parent) {
    parent.children.push_back(parse_small_statement());
    while (at_op(";")) {
      next();
      if (at(Tok::kNewline) || at(Tok::kEnd)) break;
      parent.children.push_back(parse_small_statement());
    }
    if (at(Tok::kEnd)) return;
    if (!at(Tok::kNewline)) fail("expected end of statement");
    next();
  }

  PNode parse_small_statement() {
    const auto begin = peek().begin;
    if (at_kw("pass")) return PNode("Pass", begin, next().end);
    if (at_kw("break")) return PNode("Break", begin, next().end);
    if (at_kw("continue")) return PNode("Continue", begin, next().end);
    if (at_kw("return")) {
      next();
      PNode n("Return", begin, prev_end());
      if (!statement_end()) n.add(parse_testlist_star_expr());
      n.end = prev_end();
      return n;
    }
    if (at_kw("raise")) {
      next();
      PNode n("Raise", begin, prev_end());
      if (!statement_end()) {
        n.add(parse_test());
        if (at_kw("from")) {
          next();
          n.add(parse_test());
        }
      }
      n.end = prev_end();
      return n;
    }
    if (at_kw("global") || at_kw("nonlocal")) {
      const char* kind = at_kw("global") ? "Global" : "Nonlocal";
      PNode n(kind, begin, next().end);
      do {
        const auto& name = expect_name();
        n.add(PNode("Name", name.begin, name.end, name.text));
      } while (at_op(",") && next().type == Tok::kOp);
      n.end = prev_end();
      return n;
    }
    if (at_kw("del")) {
      next();
      PNode n("Delete", begin, prev_end());
      auto targets = parse_exprlist();
      set_context(targets, NameContext::kDel);
      n.add(std::move(targets));
      n.end = prev_end();
      return n;
    }
    if (at_kw("assert")) {
      next();
      PNode n("Assert", begin, prev_end());
      n.add(parse_test());
      if (at_op(",")) {
        next();
        n.add(parse_test());
      }
      n.end = prev_end();
      return n;
    }
    if (at_kw("import")) return parse_import();
    if (at_kw("from")) return parse_from_import();
    return parse_expr_statement();
  }

  bool statement_end() const {
    return at(Tok::kNewline) || at(Tok::kEnd) || at_op(";");
  }

  PNode parse_import() {
    const auto begin = next().begin;
    PNode n("Import", begin, prev_end());
    do {
      n.add(parse_alias(true));
    } while (at_op(",") && next().type == Tok::kOp);
    n.end = prev_end();
    return n;
  }

  PNode parse_alias(bool dotted) {
    const auto& first = expect_name();
    std::string name = first.text;
    while (dotted && at_op(".")) {
      next();
      name += "." + expect_name().text;
    }
    PNode a("alias", first.begin, prev_end(), name);
    if (at_kw("as")) {
      next();
      const auto& as = expect_name();
      a.add(PNode("Name", as.begin, as.end, as.text));
    }
    a.end = prev_end();
    return a;
  }

  PNode parse_from_import() {
    const auto begin = next().begin;
    std::string module;
    while (at_op(".") || at_op("...")) module += next().text;
    if (!at_kw("import")) {
      module += expect_name().text;
      while (at_op(".")) {
        next();
        module += "." + expect_name().text;
      }
    }
    expect_kw("import");
    PNode n("ImportFrom", begin, prev_end(), module);
    if (at_op("*")) {
      const auto& star = next();
      n.add(PNode("alias", star.begin, star.end, "*"));
    } else {
      const bool paren = at_op("(");
      if (paren) next();
      do {
        if (paren && at_op(")")) break;
        n.add(parse_alias(false));
      } while (at_op(",") && next().type == Tok::kOp);
      if (paren) expect_op(")");
    }
    n.end = prev_end();
    return n;
  }

  static bool is_augassign(std::string_view op) {
    return op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "//=" || op == "%=" ||
           op == "**=" || op == ">>=" || op == "<<=" || op == "&=" || op == "|=" ||
           op == "^=" || op == "@=";
  }

  PNode parse_expr_statement() {
    const auto begin = peek().begin;
    PNode first = at_kw("yield") ? parse_yield() : parse_testlist_star_expr();
    if (at_op(":")) {
      // Annotated assignment.
      next();
      PNode n("AnnAssign", begin, prev_end());
      set_context(first, NameContext::kStore);
      n.add(std::move(first));
      n.add(parse_test());
      if (at_op("=")) {
        next();
        n.add(at_kw("yield") ? parse_yield() : parse_testlist_star_expr());
      }
      n.end = prev_end();
      return n;
    }
    if (peek().type == Tok::kOp && is_augassign(peek().text)) {
      const auto& op = next();
      PNode n("AugAssign", begin, prev_end());
      set_context(first, NameContext::kStore);
      n.add(std::move(first));
      std::string bin(op.text.substr(0, op.text.size() - 1));
      n.add(PNode(binop_kind(bin), op.begin, op.end, bin));
      n.add(at_kw("yield") ? parse_yield() : parse_testlist_star_expr());
      n.end = prev_end();
      return n;
    }
    if (at_op("=")) {
      PNode n("Assign", begin, prev_end());
      std::vector<PNode> parts;
      parts.push_back(std::move(first));
      while (at_op("=")) {
        next();
        parts.push_back(at_kw("yield") ? parse_yield() : parse_testlist_star_expr());
      }
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        set_context(parts[i], NameContext::kStore);
        n.add(std::move(parts[i]));
      }
      n.add(std::move(parts.back()));
      n.end = prev_end();
      return n;
    }
    PNode n("Expr", begin, prev_end());
    n.add(std::move(first));
    return n;
  }

  // Marks an assignment target; attribute/subscript values stay loads.
  static void set_context(PNode& target, NameContext ctx) {
    if (target.kind == "Name" || target.kind == "Attribute" || target.kind == "Subscript") {
      target.ctx = ctx;
      return;
    }
    if (target.kind == "Tuple" || target.kind == "List") {
      target.ctx = ctx;
      for (auto& c : target.children) set_context(c, ctx);
      return;
    }
    if (target.kind == "Starred") {
      target.ctx = ctx;
      if (!target.children.empty()) set_context(target.children.front(), ctx);
    }
  }

  void parse_block(PNode& parent) {
    expect_op(":");
    if (at(Tok::kNewline)) {
      next();
      if (!at(Tok::kIndent)) fail("expected an indented block");
      next();
      while (!at(Tok::kDedent) && !at(Tok::kEnd)) {
        if (at(Tok::kNewline)) {
          next();
          continue;
        }
        parse_statement(parent);
      }
      if (at(Tok::kDedent)) next();
    } else {
      parse_simple_statements(parent);
    }
    parent.end = std::max(parent.end, prev_end());
  }

  PNode parse_decorated() {
    std::vector<PNode> decorators;
    const auto begin = peek().begin;
    while (at_op("@")) {
      next();
      decorators.push_back(parse_namedexpr_test());
      if (!at(Tok::kNewline)) fail("expected newline after decorator");
      next();
    }
    PNode n;
    if (at_kw("def")) n = parse_funcdef(std::move(decorators), false);
    else if (at_kw("class")) n = parse_classdef(std::move(decorators));
    else if (at_kw("async") && at_kw("def", 1)) {
      next();
      n = parse_funcdef(std::move(decorators), true);
    } else fail("expected def or class after decorator");
    n.begin = begin;
    return n;
  }

  PNode parse_funcdef(std::vector<PNode> decorators, bool is_async) {
    const auto begin = expect_kw("def").begin;
    const auto& name = expect_name();
    PNode n(is_async ? "AsyncFunctionDef" : "FunctionDef", begin, name.end, name.text);
    expect_op("(");
    n.add(parse_parameters(")", true));
    expect_op(")");
    if (at_op("->")) {
      next();
      PNode ret("returns", peek().begin, peek().end);
      ret.add(parse_test());
      ret.end = prev_end();
      n.add(std::move(ret));
    }
    if (!decorators.empty()) {
      PNode decos("decorator_list", decorators.front().begin, decorators.back().end);
      for (auto& d : decorators) decos.add(std::move(d));
      n.add(std::move(decos));
    }
    parse_block(n);
    return n;
  }

  // Parameter list up to (not including) `closer`. Annotations only when `typed`.
  PNode parse_parameters(std::string_view closer, bool typed) {
    PNode args("arguments", peek().begin, peek().begin);
    while (!at_op(closer)) {
      const auto begin = peek().begin;
      if (at_op("/")) {
        next();
      } else if (at_op("*") || at_op("**")) {
        const std::string star = next().text;
        if (at_name()) {
          const auto& nm = next();
          PNode a(star == "*" ? "vararg" : "kwarg", begin, nm.end, nm.text);
          if (typed && at_op(":")) {
            next();
            a.add(parse_test());
          }
          a.end = prev_end();
          args.add(std::move(a));
        }
      } else {
        const auto& nm = expect_name();
        PNode a("arg", nm.begin, nm.end, nm.text);
        if (typed && at_op(":")) {
          next();
          a.add(parse_test());
        }
        if (at_op("=")) {
          next();
          PNode d("default", peek().begin, peek().end);
          d.add(parse_test());
          d.end = prev_end();
          a.add(std::move(d));
        }
        a.end = prev_end();
        args.add(std::move(a));
      }
      if (!at_op(",")) break;
      next();
    }
    args.end = std::max(args.begin, prev_end());
    return args;
  }

  PNode parse_classdef(std::vector<PNode> decorators) {
    const auto begin = expect_kw("class").begin;
    const auto& name = expect_name();
    PNode n("ClassDef", begin, name.end, name.text);
    if (at_op("(")) {
      next();
      PNode bases("bases", prev_end(), prev_end());
      parse_call_arguments(bases);
      expect_op(")");
      bases.end = prev_end();
      n.add(std::move(bases));
    }
    if (!decorators.empty()) {
      PNode decos("decorator_list", decorators.front().begin, decorators.back().end);
      for (auto& d : decorators) decos.add(std::move(d));
      n.add(std::move(decos));
    }
    parse_block(n);
    return n;
  }

  PNode parse_if() {
    const auto begin = next().begin;  // 'if' or 'elif'
    PNode n("If", begin, prev_end());
    n.add(parse_namedexpr_test());
    PNode body("body", peek().begin, peek().begin);
    parse_block(body);
    n.add(std::move(body));
    if (at_kw("elif")) {
      PNode orelse("orelse", peek().begin, peek().begin);
      orelse.add(parse_if());
      orelse.end = prev_end();
      n.add(std::move(orelse));
    } else if (at_kw("else")) {
      PNode orelse("orelse", next().begin, prev_end());
      parse_block(orelse);
      n.add(std::move(orelse));
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_while() {
    const auto begin = next().begin;
    PNode n("While", begin, prev_end());
    n.add(parse_namedexpr_test());
    PNode body("body", peek().begin, peek().begin);
    parse_block(body);
    n.add(std::move(body));
    if (at_kw("else")) {
      PNode orelse("orelse", next().begin, prev_end());
      parse_block(orelse);
      n.add(std::move(orelse));
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_for(bool is_async) {
    const auto begin = next().begin;
    PNode n(is_async ? "AsyncFor" : "For", begin, prev_end());
    auto target = parse_exprlist();
    set_context(target, NameContext::kStore);
    n.add(std::move(target));
    expect_kw("in");
    n.add(parse_testlist());
    PNode body("body", peek().begin, peek().begin);
    parse_block(body);
    n.add(std::move(body));
    if (at_kw("else")) {
      PNode orelse("orelse", next().begin, prev_end());
      parse_block(orelse);
      n.add(std::move(orelse));
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_try() {
    const auto begin = next().begin;
    PNode n("Try", begin, prev_end());
    PNode body("body", peek().begin, peek().begin);
    parse_block(body);
    n.add(std::move(body));
    bool any_handler = false;
    while (at_kw("except")) {
      any_handler = true;
      PNode h("ExceptHandler", next().begin, prev_end());
      if (at_op("*")) next();
      if (!at_op(":")) {
        h.add(parse_test());
        if (at_kw("as") || at_op(",")) {
          next();
          const auto& nm = expect_name();
          PNode bound("Name", nm.begin, nm.end, nm.text);
          bound.ctx = NameContext::kStore;
          h.add(std::move(bound));
        }
      }
      parse_block(h);
      n.add(std::move(h));
    }
    if (at_kw("else")) {
      PNode orelse("orelse", next().begin, prev_end());
      parse_block(orelse);
      n.add(std::move(orelse));
    }
    if (at_kw("finally")) {
      PNode fin("finalbody", next().begin, prev_end());
      parse_block(fin);
      n.add(std::move(fin));
      any_handler = true;
    }
    if (!any_handler) fail("try without except or finally");
    n.end = prev_end();
    return n;
  }

  PNode parse_with(bool is_async) {
    const auto begin = next().begin;
    PNode n(is_async ? "AsyncWith" : "With", begin, prev_end());
    const bool paren = at_op("(") && with_has_parenthesized_items();
    if (paren) next();
    do {
      if (paren && at_op(")")) break;
      PNode item("withitem", peek().begin, peek().begin);
      item.add(parse_test());
      if (at_kw("as")) {
        next();
        auto target = parse_expr();
        set_context(target, NameContext::kStore);
        item.add(std::move(target));
      }
      item.end = prev_end();
      n.add(std::move(item));
    } while (at_op(",") && next().type == Tok::kOp);
    if (paren) expect_op(")");
    PNode body("body", peek().begin, peek().begin);
    parse_block(body);
    n.add(std::move(body));
    n.end = prev_end();
    return n;
  }

  // `with (a as b, c):` versus `with (a + b):` -- scan to the matching paren.
  bool with_has_parenthesized_items() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const auto& t = toks_[i];
      if (t.type == Tok::kOp && (t.text == "(" || t.text == "[" || t.text == "{")) ++depth;
      if (t.type == Tok::kOp && (t.text == ")" || t.text == "]" || t.text == "}")) {
        if (--depth == 0) {
          return i + 1 < toks_.size() && toks_[i + 1].type == Tok::kOp && toks_[i + 1].text == ":";
        }
      }
      if (depth == 1 && t.type == Tok::kName && t.text == "as") return true;
    }
    return false;
  }

  // -- expressions ---------------------------------------------------------
  PNode parse_yield() {
    const auto begin = expect_kw("yield").begin;
    if (at_kw("from")) {
      next();
      PNode n("YieldFrom", begin, prev_end());
      n.add(parse_test());
      n.end = prev_end();
      return n;
    }
    PNode n("Yield", begin, prev_end());
    if (!statement_end() && !at_op(")") && !at_op("=")) n.add(parse_testlist_star_expr());
    n.end = prev_end();
    return n;
  }

  bool starts_expression() const {
    const auto& t = peek();
    if (t.type == Tok::kName) {
      return !kKeywords.contains(t.text) || t.text == "None" || t.text == "True" ||
             t.text == "False" || t.text == "not" || t.text == "lambda" || t.text == "await";
    }
    if (t.type == Tok::kNumber || t.type == Tok::kString) return true;
    if (t.type == Tok::kOp) {
      return t.text == "(" || t.text == "[" || t.text == "{" || t.text == "-" || t.text == "+" ||
             t.text == "~" || t.text == "*" || t.text == "...";
    }
    return false;
  }

  // Comma-separated tests (with starred items); a trailing comma or more than
  // one element makes a Tuple.
  PNode parse_sequence(bool allow_star, bool named) {
    const auto begin = peek().begin;
    auto item = [&]() -> PNode {
      if (allow_star && at_op("*")) return parse_star_expr();
      return named ? parse_namedexpr_test() : parse_test();
    };
    PNode first = item();
    if (!at_op(",")) return first;
    PNode tup("Tuple", begin, prev_end());
    tup.ctx = NameContext::kLoad;
    tup.add(std::move(first));
    while (at_op(",")) {
      next();
      if (!starts_expression()) break;
      tup.add(item());
    }
    tup.end = prev_end();
    return tup;
  }

  PNode parse_testlist_star_expr() { return parse_sequence(true, false); }
  PNode parse_testlist() { return parse_sequence(false, false); }

  // Targets of for/del/comprehensions: bitwise-or level expressions.
  PNode parse_exprlist() {
    const auto begin = peek().begin;
    auto item = [&]() -> PNode { return at_op("*") ? parse_star_expr() : parse_expr(); };
    PNode first = item();
    if (!at_op(",")) return first;
    PNode tup("Tuple", begin, prev_end());
    tup.add(std::move(first));
    while (at_op(",")) {
      next();
      if (at_kw("in") || at_op("=") || statement_end() || !starts_expression()) break;
      tup.add(item());
    }
    tup.end = prev_end();
    return tup;
  }

  PNode parse_star_expr() {
    const auto begin = expect_op("*").begin;
    PNode n("Starred", begin, prev_end());
    n.ctx = NameContext::kLoad;
    n.add(parse_expr());
    n.end = prev_end();
    return n;
  }

  PNode parse_namedexpr_test() {
    const auto begin = peek().begin;
    PNode t = parse_test();
    if (at_op(":=")) {
      next();
      PNode n("NamedExpr", begin, prev_end());
      set_context(t, NameContext::kStore);
      n.add(std::move(t));
      n.add(parse_test());
      n.end = prev_end();
      return n;
    }
    return t;
  }

  PNode parse_test() {
    if (at_kw("lambda")) return parse_lambda(false);
    const auto begin = peek().begin;
    PNode cond = parse_or_test();
    if (at_kw("if") ) {
      next();
      PNode n("IfExp", begin, prev_end());
      PNode test = parse_or_test();
      expect_kw("else");
      PNode orelse = parse_test();
      n.add(std::move(test));
      n.add(std::move(cond));
      n.add(std::move(orelse));
      n.end = prev_end();
      return n;
    }
    return cond;
  }

  PNode parse_test_nocond() {
    if (at_kw("lambda")) return parse_lambda(true);
    return parse_or_test();
  }

  PNode parse_lambda(bool nocond) {
    const auto begin = expect_kw("lambda").begin;
    PNode n("Lambda", begin, prev_end());
    n.add(parse_parameters(":", false));
    expect_op(":");
    n.add(nocond ? parse_test_nocond() : parse_test());
    n.end = prev_end();
    return n;
  }

  PNode parse_bool(std::string_view kw, PNode (PythonParser::*sub)()) {
    const auto begin = peek().begin;
    PNode first = (this->*sub)();
    if (!at_kw(kw)) return first;
    PNode n("BoolOp", begin, prev_end(), std::string(kw));
    n.add(PNode(kw == "or" ? "Or" : "And", peek().begin, peek().end));
    n.add(std::move(first));
    while (at_kw(kw)) {
      next();
      n.add((this->*sub)());
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_or_test() { return parse_bool("or", &PythonParser::parse_and_test); }
  PNode parse_and_test() { return parse_bool("and", &PythonParser::parse_not_test); }

  PNode parse_not_test() {
    if (at_kw("not")) {
      const auto& op = next();
      PNode n("UnaryOp", op.begin, op.end);
      n.add(PNode("Not", op.begin, op.end));
      n.add(parse_not_test());
      n.end = prev_end();
      return n;
    }
    return parse_comparison();
  }

  const char* comparison_op() {
    const auto& t = peek();
    if (t.type == Tok::kOp) {
      if (t.text == "<") return "Lt";
      if (t.text == ">") return "Gt";
      if (t.text == "==") return "Eq";
      if (t.text == ">=") return "GtE";
      if (t.text == "<=") return "LtE";
      if (t.text == "!=" || t.text == "<>") return "NotEq";
      return nullptr;
    }
    if (t.type == Tok::kName) {
      if (t.text == "in") return "In";
      if (t.text == "not" && at_kw("in", 1)) return "NotIn";
      if (t.text == "is") return at_kw("not", 1) ? "IsNot" : "Is";
    }
    return nullptr;
  }

  PNode parse_comparison() {
    const auto begin = peek().begin;
    PNode left = parse_expr();
    const char* op = comparison_op();
    if (!op) return left;
    PNode n("Compare", begin, prev_end());
    n.add(std::move(left));
    while ((op = comparison_op())) {
      const auto& t = next();
      if (std::string_view(op) == "NotIn" || std::string_view(op) == "IsNot") next();
      n.add(PNode(op, t.begin, prev_end()));
      n.add(parse_expr());
    }
    n.end = prev_end();
    return n;
  }

  // Left-associative binary levels, loosest first.
  PNode parse_binary(int level) {
    static const std::vector<std::vector<std::string_view>> kLevels = {
        {"|"}, {"^"}, {"&"}, {"<<", ">>"}, {"+", "-"}, {"*", "/", "//", "%", "@"}};
    if (level == static_cast<int>(kLevels.size())) return parse_factor();
    const auto begin = peek().begin;
    PNode left = parse_binary(level + 1);
    while (true) {
      const auto& t = peek();
      bool match = false;
      if (t.type == Tok::kOp) {
        for (auto op : kLevels[static_cast<std::size_t>(level)]) match = match || t.text == op;
      }
      if (!match) break;
      const auto& op = next();
      PNode n("BinOp", begin, prev_end());
      n.add(std::move(left));
      n.add(PNode(binop_kind(op.text), op.begin, op.end, op.text));
      n.add(parse_binary(level + 1));
      n.end = prev_end();
      left = std::move(n);
    }
    return left;
  }

  PNode parse_expr() { return parse_binary(0); }

  PNode parse_factor() {
    if (at_op("+") || at_op("-") || at_op("~")) {
      const auto& op = next();
      PNode n("UnaryOp", op.begin, op.end);
      n.add(PNode(op.text == "+" ? "UAdd" : op.text == "-" ? "USub" : "Invert", op.begin,
                  op.end));
      n.add(parse_factor());
      n.end = prev_end();
      return n;
    }
    return parse_power();
  }

  PNode parse_power() {
    const auto begin = peek().begin;
    PNode base;
    if (at_kw("await")) {
      next();
      base = PNode("Await", begin, prev_end());
      base.add(parse_primary());
      base.end = prev_end();
    } else {
      base = parse_primary();
    }
    if (at_op("**")) {
      const auto& op = next();
      PNode n("BinOp", begin, prev_end());
      n.add(std::move(base));
      n.add(PNode("Pow", op.begin, op.end, "**"));
      n.add(parse_factor());
      n.end = prev_end();
      return n;
    }
    return base;
  }

  PNode parse_primary() {
    const auto begin = peek().begin;
    PNode node = parse_atom();
    while (true) {
      if (at_op("(")) {
        next();
        PNode call("Call", begin, prev_end());
        call.add(std::move(node));
        parse_call_arguments(call);
        expect_op(")");
        call.end = prev_end();
        node = std::move(call);
      } else if (at_op("[")) {
        next();
        PNode sub("Subscript", begin, prev_end());
        sub.ctx = NameContext::kLoad;
        sub.add(std::move(node));
        sub.add(parse_subscript_list());
        expect_op("]");
        sub.end = prev_end();
        node = std::move(sub);
      } else if (at_op(".")) {
        next();
        const auto& attr = expect_any_name();
        PNode a("Attribute", begin, attr.end, attr.text);
        a.ctx = NameContext::kLoad;
        a.add(std::move(node));
        node = std::move(a);
      } else {
        break;
      }
    }
    return node;
  }

  // Attribute names may be soft keywords such as `match`, never hard keywords
  // except the ones Python allows after a dot (none) -- accept any NAME.
  const Token& expect_any_name() {
    if (!at(Tok::kName)) fail("expected attribute name");
    return next();
  }

  void parse_call_arguments(PNode& call) {
    while (!at_op(")")) {
      const auto begin = peek().begin;
      if (at_op("*")) {
        next();
        PNode s("Starred", begin, prev_end());
        s.ctx = NameContext::kLoad;
        s.add(parse_test());
        s.end = prev_end();
        call.add(std::move(s));
      } else if (at_op("**")) {
        next();
        PNode kw("keyword", begin, prev_end());
        kw.add(parse_test());
        kw.end = prev_end();
        call.add(std::move(kw));
      } else if (at(Tok::kName) && at_op("=", 1)) {
        const auto& name = next();
        next();
        PNode kw("keyword", begin, prev_end(), name.text);
        kw.add(parse_test());
        kw.end = prev_end();
        call.add(std::move(kw));
      } else {
        PNode arg = parse_namedexpr_test();
        if (at_kw("for") || at_kw("async")) {
          PNode gen("GeneratorExp", begin, prev_end());
          gen.add(std::move(arg));
          parse_comprehension_clauses(gen);
          gen.end = prev_end();
          arg = std::move(gen);
        }
        call.add(std::move(arg));
      }
      if (!at_op(",")) break;
      next();
    }
  }

  PNode parse_subscript_list() {
    const auto begin = peek().begin;
    PNode first = parse_subscript();
    if (!at_op(",")) return first;
    PNode tup("Tuple", begin, prev_end());
    tup.add(std::move(first));
    while (at_op(",")) {
      next();
      if (at_op("]")) break;
      tup.add(parse_subscript());
    }
    tup.end = prev_end();
    return tup;
  }

  PNode parse_subscript() {
    const auto begin = peek().begin;
    PNode lower;
    bool has_lower = false;
    if (!at_op(":")) {
      lower = at_op("*") ? parse_star_expr() : parse_namedexpr_test();
      has_lower = true;
      if (!at_op(":")) return lower;
    }
    PNode slice("Slice", begin, peek().end);
    if (has_lower) slice.add(std::move(lower));
    expect_op(":");
    if (!at_op("]") && !at_op(",") && !at_op(":")) slice.add(parse_test());
    if (at_op(":")) {
      next();
      if (!at_op("]") && !at_op(",")) slice.add(parse_test());
    }
    slice.end = prev_end();
    return slice;
  }

  void parse_comprehension_clauses(PNode& parent) {
    while (at_kw("for") || at_kw("async")) {
      const auto begin = peek().begin;
      if (at_kw("async")) next();
      expect_kw("for");
      PNode comp("comprehension", begin, prev_end());
      auto target = parse_exprlist();
      set_context(target, NameContext::kStore);
      comp.add(std::move(target));
      expect_kw("in");
      comp.add(parse_or_test());
      while (at_kw("if")) {
        next();
        comp.add(parse_test_nocond());
      }
      comp.end = prev_end();
      parent.add(std::move(comp));
    }
  }

  PNode parse_atom() {
    const auto& t = peek();
    const auto begin = t.begin;
    if (t.type == Tok::kNumber) {
      next();
      return PNode("Constant", t.begin, t.end, t.text);
    }
    if (t.type == Tok::kString) {
      bool fstring = false;
      std::string text;
      std::uint32_t end = t.end;
      while (at(Tok::kString)) {
        const auto& s = next();
        for (char c : s.text) {
          if (c == '\'' || c == '"') break;
          if (c == 'f' || c == 'F') fstring = true;
        }
        text += s.text;
        end = s.end;
      }
      return PNode(fstring ? "JoinedStr" : "Constant", begin, end, text);
    }
    if (t.type == Tok::kName) {
      if (t.text == "None" || t.text == "True" || t.text == "False") {
        next();
        return PNode("Constant", t.begin, t.end, t.text);
      }
      if (kKeywords.contains(t.text)) fail("unexpected keyword");
      next();
      PNode n("Name", t.begin, t.end, t.text);
      n.ctx = NameContext::kLoad;
      return n;
    }
    if (t.type != Tok::kOp) fail("unexpected token");
    if (t.text == "...") {
      next();
      return PNode("Constant", t.begin, t.end, "...");
    }
    if (t.text == "(") {
      next();
      if (at_op(")")) {
        PNode tup("Tuple", begin, next().end);
        tup.ctx = NameContext::kLoad;
        return tup;
      }
      if (at_kw("yield")) {
        PNode y = parse_yield();
        expect_op(")");
        return y;
      }
      PNode first = at_op("*") ? parse_star_expr() : parse_namedexpr_test();
      if (at_kw("for") || at_kw("async")) {
        PNode gen("GeneratorExp", begin, prev_end());
        gen.add(std::move(first));
        parse_comprehension_clauses(gen);
        expect_op(")");
        gen.end = prev_end();
        return gen;
      }
      if (at_op(")")) {
        next();
        return first;  // parenthesized expression
      }
      PNode tup("Tuple", begin, prev_end());
      tup.ctx = NameContext::kLoad;
      tup.add(std::move(first));
      while (at_op(",")) {
        next();
        if (at_op(")")) break;
        tup.add(at_op("*") ? parse_star_expr() : parse_namedexpr_test());
      }
      expect_op(")");
      tup.end = prev_end();
      return tup;
    }
    if (t.text == "[") {
      next();
      PNode list("List", begin, prev_end());
      list.ctx = NameContext::kLoad;
      if (at_op("]")) {
        list.end = next().end;
        return list;
      }
      PNode first = at_op("*") ? parse_star_expr() : parse_namedexpr_test();
      if (at_kw("for") || at_kw("async")) {
        PNode comp("ListComp", begin, prev_end());
        comp.add(std::move(first));
        parse_comprehension_clauses(comp);
        expect_op("]");
        comp.end = prev_end();
        return comp;
      }
      list.add(std::move(first));
      while (at_op(",")) {
        next();
        if (at_op("]")) break;
        list.add(at_op("*") ? parse_star_expr() : parse_namedexpr_test());
      }
      expect_op("]");
      list.end = prev_end();
      return list;
    }
    if (t.text == "{") return parse_brace();
    fail("unexpected operator");
  }

  PNode parse_brace() {
    const auto begin = expect_op("{").begin;
    if (at_op("}")) return PNode("Dict", begin, next().end);
    // Dict if the first item is `**x` or `k: v`.
    if (at_op("**")) return parse_dict_rest(begin, std::nullopt);
    PNode first = at_op("*") ? parse_star_expr() : parse_namedexpr_test();
    if (at_op(":")) {
      next();
      PNode value = parse_test();
      return parse_dict_rest(begin, std::make_pair(std::move(first), std::move(value)));
    }
    if (at_kw("for") || at_kw("async")) {
      PNode comp("SetComp", begin, prev_end());
      comp.add(std::move(first));
      parse_comprehension_clauses(comp);
      expect_op("}");
      comp.end = prev_end();
      return comp;
    }
    PNode set("Set", begin, prev_end());
    set.add(std::move(first));
    while (at_op(",")) {
      next();
      if (at_op("}")) break;
      set.add(at_op("*") ? parse_star_expr() : parse_namedexpr_test());
    }
    expect_op("}");
    set.end = prev_end();
    return set;
  }

  PNode parse_dict_rest(std::uint32_t begin, std::optional<std::pair<PNode, PNode>> first) {
    if (first && (at_kw("for") || at_kw("async"))) {
      PNode comp("DictComp", begin, prev_end());
      comp.add(std::move(first->first));
      comp.add(std::move(first->second));
      parse_comprehension_clauses(comp);
      expect_op("}");
      comp.end = prev_end();
      return comp;
    }
    PNode dict("Dict", begin, prev_end());
    bool need_item = !first.has_value();
    if (first) {
      dict.add(std::move(first->first));
      dict.add(std::move(first->second));
    }
    while (need_item || at_op(",")) {
      if (!need_item) next();
      need_item = false;
      if (at_op("}")) break;
      if (at_op("**")) {
        const auto b = next().begin;
        PNode unpack("DictUnpack", b, prev_end());
        unpack.add(parse_expr());
        unpack.end = prev_end();
        dict.add(std::move(unpack));
        continue;
      }
      dict.add(parse_test());
      expect_op(":");
      dict.add(parse_test());
    }
    expect_op("}");
    dict.end = prev_end();
    return dict;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

PNode parse_python_tree(std::string_view src) {
  PythonParser parser(lex_python(src));
  return parser.parse_module();
}

}  // namespace reco::style::detail
