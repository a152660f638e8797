// Recursive-descent parser for Java (through roughly Java 17) producing a tree
// whose node kinds follow JavaParser's naming.

#include <functional>
#include <set>

#include "ast_builder.hpp"
#include "lexer.hpp"
#include "parsers.hpp"

namespace reco::style::detail {
namespace {

const std::set<std::string, std::less<>> kPrimitives = {"boolean", "byte", "char", "short",
                                                        "int",     "long", "float", "double",
                                                        "void"};

const std::set<std::string, std::less<>> kModifiers = {
    "public", "protected", "private", "static",   "final",    "abstract",  "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed", "non-sealed"};

const std::set<std::string, std::less<>> kReserved = {
    "abstract", "assert",     "boolean",   "break",   "byte",     "case",       "catch",
    "char",     "class",      "const",     "continue", "default", "do",         "double",
    "else",     "enum",       "extends",   "final",   "finally",  "float",      "for",
    "goto",     "if",         "implements", "import", "instanceof", "int",      "interface",
    "long",     "native",     "new",       "package", "private",  "protected",  "public",
    "return",   "short",      "static",    "strictfp", "super",   "switch",     "synchronized",
    "this",     "throw",      "throws",    "transient", "try",    "void",       "volatile",
    "while",    "true",       "false",     "null"};

const std::set<std::string, std::less<>> kAssignOps = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                                       "&=", "|=", "^=", "<<=", ">>=", ">>>="};

class JavaParser {
 public:
  explicit JavaParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  PNode parse_compilation_unit() {
    PNode cu("CompilationUnit", 0, toks_.back().end);
    if (at_kw("package")) {
      const auto begin = next().begin;
      PNode pkg("PackageDeclaration", begin, begin, qualified_name());
      expect_op(";");
      pkg.end = prev_end();
      cu.add(std::move(pkg));
    }
    while (at_kw("import")) {
      const auto begin = next().begin;
      std::string text;
      if (at_kw("static")) {
        next();
        text = "static ";
      }
      text += qualified_name();
      if (at_op(".") && at_op("*", 1)) {
        next();
        next();
        text += ".*";
      }
      expect_op(";");
      cu.add(PNode("ImportDeclaration", begin, prev_end(), text));
    }
    while (!at(Tok::kEnd)) {
      if (at_op(";")) {
        next();
        continue;
      }
      cu.add(parse_type_declaration());
    }
    return cu;
  }

  // Bare class members (methods, fields) without an enclosing class.
  PNode parse_member_sequence() {
    PNode body("ClassBody", 0, toks_.back().end);
    while (!at(Tok::kEnd)) parse_member(body);
    if (body.children.empty()) fail("no members");
    return body;
  }

  // Bare block statements.
  PNode parse_statement_sequence() {
    PNode block("BlockStmt", 0, toks_.back().end);
    while (!at(Tok::kEnd)) block.add(parse_block_statement());
    return block;
  }

 private:
  // -- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
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
  bool at_identifier(std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.type == Tok::kName && !kReserved.contains(t.text);
  }
  const Token& next() {
    const auto& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(std::string_view what) const {
    throw ParseFailure("java: " + std::string(what) + " near offset " +
                       std::to_string(peek().begin) + " ('" + peek().text + "')");
  }
  const Token& expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    return next();
  }
  const Token& expect_identifier() {
    if (!at_identifier()) fail("expected identifier");
    return next();
  }
  std::uint32_t prev_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

  // Runs `fn`; on ParseFailure restores the position and returns nullopt.
  template <typename Fn>
  std::optional<PNode> attempt(Fn&& fn) {
    const auto saved = pos_;
    try {
      return fn();
    } catch (const ParseFailure&) {
      pos_ = saved;
      return std::nullopt;
    }
  }

  std::string qualified_name() {
    std::string name = expect_identifier().text;
    while (at_op(".") && at_identifier(1)) {
      next();
      name += "." + next().text;
    }
    return name;
  }

  // -- declarations --------------------------------------------------------
  void skip_annotation() {
    expect_op("@");
    qualified_name();
    if (at_op("(")) skip_balanced("(", ")");
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    do {
      if (at(Tok::kEnd)) fail("unbalanced brackets");
      if (at_op(open)) ++depth;
      if (at_op(close)) --depth;
      next();
    } while (depth > 0);
  }

  std::vector<PNode> parse_modifiers() {
    std::vector<PNode> mods;
    while (true) {
      if (at_op("@") && !at_kw("interface", 1)) {
        const auto begin = peek().begin;
        skip_annotation();
        mods.push_back(PNode("Annotation", begin, prev_end()));
      } else if (peek().type == Tok::kName && kModifiers.contains(peek().text) &&
                 !(peek().text == "default" && at_op(":", 1))) {
        const auto& t = next();
        mods.push_back(PNode("Modifier", t.begin, t.end, t.text));
      } else if (at_kw("non") && at_op("-", 1) && at_kw("sealed", 2)) {
        const auto begin = next().begin;
        next();
        next();
        mods.push_back(PNode("Modifier", begin, prev_end(), "non-sealed"));
      } else {
        return mods;
      }
    }
  }

  static void add_all(PNode& parent, std::vector<PNode>& nodes) {
    for (auto& n : nodes) parent.add(std::move(n));
    nodes.clear();
  }

  bool at_type_declaration_keyword() const {
    return at_kw("class") || at_kw("interface") || at_kw("enum") ||
           (at_kw("record") && at_identifier(1) && (at_op("(", 2) || at_op("<", 2))) ||
           (at_op("@") && at_kw("interface", 1));
  }

  PNode parse_type_declaration() {
    auto mods = parse_modifiers();
    if (!at_type_declaration_keyword()) fail("expected a type declaration");
    return parse_type_declaration_rest(mods);
  }

  PNode parse_type_declaration_rest(std::vector<PNode>& mods) {
    const auto begin = mods.empty() ? peek().begin : mods.front().begin;
    if (at_op("@")) {
      next();
      next();  // interface
      const auto& name = expect_identifier();
      PNode n("AnnotationDeclaration", begin, name.end, name.text);
      add_all(n, mods);
      skip_balanced("{", "}");
      n.end = prev_end();
      return n;
    }
    const std::string keyword = next().text;
    const auto& name = expect_identifier();
    std::string kind = keyword == "class"       ? "ClassDeclaration"
                       : keyword == "interface" ? "InterfaceDeclaration"
                       : keyword == "enum"      ? "EnumDeclaration"
                                                : "RecordDeclaration";
    PNode n(kind, begin, name.end, name.text);
    add_all(n, mods);
    if (at_op("<")) n.add(parse_type_parameters());
    if (keyword == "record") {
      expect_op("(");
      PNode params("Parameters", prev_end(), prev_end());
      while (!at_op(")")) {
        params.add(parse_parameter());
        if (!at_op(",")) break;
        next();
      }
      expect_op(")");
      params.end = prev_end();
      n.add(std::move(params));
    }
    for (const char* clause : {"extends", "implements", "permits"}) {
      if (at_kw(clause)) {
        const auto b = next().begin;
        PNode list(std::string(clause) == "extends" ? "ExtendedTypes"
                   : std::string(clause) == "implements" ? "ImplementedTypes"
                                                         : "PermittedTypes",
                   b, prev_end());
        do {
          list.add(parse_type());
        } while (at_op(",") && next().type == Tok::kOp);
        list.end = prev_end();
        n.add(std::move(list));
      }
    }
    if (keyword == "enum") {
      n.add(parse_enum_body());
    } else {
      n.add(parse_class_body());
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_type_parameters() {
    PNode tp("TypeParameters", expect_op("<").begin, prev_end());
    while (!at_op(">")) {
      while (at_op("@")) skip_annotation();
      const auto& name = expect_identifier();
      PNode p("TypeParameter", name.begin, name.end, name.text);
      if (at_kw("extends")) {
        next();
        p.add(parse_type());
        while (at_op("&")) {
          next();
          p.add(parse_type());
        }
      }
      p.end = prev_end();
      tp.add(std::move(p));
      if (!at_op(",")) break;
      next();
    }
    expect_op(">");
    tp.end = prev_end();
    return tp;
  }

  PNode parse_class_body() {
    PNode body("ClassBody", expect_op("{").begin, prev_end());
    while (!at_op("}")) {
      if (at(Tok::kEnd)) fail("unterminated class body");
      parse_member(body);
    }
    expect_op("}");
    body.end = prev_end();
    return body;
  }

  PNode parse_enum_body() {
    PNode body("ClassBody", expect_op("{").begin, prev_end());
    while (!at_op(";") && !at_op("}")) {
      parse_modifiers();
      const auto& name = expect_identifier();
      PNode c("EnumConstantDeclaration", name.begin, name.end, name.text);
      if (at_op("(")) c.add(parse_arguments());
      if (at_op("{")) c.add(parse_class_body());
      c.end = prev_end();
      body.add(std::move(c));
      if (!at_op(",")) break;
      next();
    }
    if (at_op(";")) {
      next();
      while (!at_op("}")) {
        if (at(Tok::kEnd)) fail("unterminated enum body");
        parse_member(body);
      }
    }
    expect_op("}");
    body.end = prev_end();
    return body;
  }

  void parse_member(PNode& body) {
    if (at_op(";")) {
      next();
      return;
    }
    const auto begin = peek().begin;
    auto mods = parse_modifiers();
    if (at_type_declaration_keyword()) {
      body.add(parse_type_declaration_rest(mods));
      return;
    }
    if (at_op("{")) {
      PNode init("InitializerDeclaration", begin, begin);
      add_all(init, mods);
      init.add(parse_block());
      init.end = prev_end();
      body.add(std::move(init));
      return;
    }
    std::optional<PNode> type_params;
    if (at_op("<")) type_params = parse_type_parameters();
    // Constructor: Name '('
    if (at_identifier() && at_op("(", 1)) {
      const auto& name = next();
      PNode ctor("ConstructorDeclaration", begin, name.end, name.text);
      add_all(ctor, mods);
      if (type_params) ctor.add(std::move(*type_params));
      parse_method_rest(ctor);
      body.add(std::move(ctor));
      return;
    }
    PNode type = parse_type();
    if (at_identifier() && at_op("(", 1)) {
      const auto& name = next();
      PNode m("MethodDeclaration", begin, name.end, name.text);
      add_all(m, mods);
      if (type_params) m.add(std::move(*type_params));
      m.add(std::move(type));
      parse_method_rest(m);
      body.add(std::move(m));
      return;
    }
    PNode field("FieldDeclaration", begin, begin);
    add_all(field, mods);
    field.add(std::move(type));
    parse_declarators(field);
    expect_op(";");
    field.end = prev_end();
    body.add(std::move(field));
  }

  void parse_method_rest(PNode& m) {
    expect_op("(");
    PNode params("Parameters", prev_end(), prev_end());
    while (!at_op(")")) {
      params.add(parse_parameter());
      if (!at_op(",")) break;
      next();
    }
    expect_op(")");
    params.end = prev_end();
    m.add(std::move(params));
    while (at_op("[")) {
      next();
      expect_op("]");
    }
    if (at_kw("throws")) {
      const auto b = next().begin;
      PNode thrown("ThrownExceptions", b, prev_end());
      do {
        thrown.add(parse_type());
      } while (at_op(",") && next().type == Tok::kOp);
      thrown.end = prev_end();
      m.add(std::move(thrown));
    }
    if (at_kw("default")) {
      // Annotation element default value.
      next();
      m.add(parse_expression());
    }
    if (at_op(";")) {
      next();
    } else {
      m.add(parse_block());
    }
    m.end = prev_end();
  }

  PNode parse_parameter() {
    const auto begin = peek().begin;
    auto mods = parse_modifiers();
    PNode type = parse_type();
    bool varargs = false;
    if (at_op("...")) {
      next();
      varargs = true;
    }
    const auto& name = expect_identifier();
    PNode p("Parameter", begin, name.end, name.text);
    add_all(p, mods);
    while (at_op("[")) {
      next();
      expect_op("]");
    }
    if (varargs) p.add(PNode("VarArgs", type.end, type.end));
    p.add(std::move(type));
    p.end = prev_end();
    return p;
  }

  void parse_declarators(PNode& parent) {
    do {
      const auto& name = expect_identifier();
      PNode d("VariableDeclarator", name.begin, name.end, name.text);
      while (at_op("[")) {
        next();
        expect_op("]");
      }
      if (at_op("=")) {
        next();
        d.add(at_op("{") ? parse_array_initializer() : parse_expression());
      }
      d.end = prev_end();
      parent.add(std::move(d));
    } while (at_op(",") && next().type == Tok::kOp);
  }

  // -- types ---------------------------------------------------------------
  PNode parse_type() {
    while (at_op("@")) skip_annotation();
    const auto begin = peek().begin;
    PNode type;
    if (peek().type == Tok::kName && kPrimitives.contains(peek().text)) {
      const auto& t = next();
      type = PNode("PrimitiveType", t.begin, t.end, t.text);
    } else if (at_op("?")) {
      next();
      type = PNode("WildcardType", begin, prev_end());
      if (at_kw("extends") || at_kw("super")) {
        next();
        type.add(parse_type());
      }
      type.end = prev_end();
      return type;
    } else {
      if (!at_identifier() && !at_kw("var")) fail("expected a type");
      std::string name = next().text;
      type = PNode("ClassOrInterfaceType", begin, prev_end(), name);
      if (at_op("<")) type.add(parse_type_arguments());
      while (at_op(".") && at_identifier(1)) {
        next();
        name += "." + next().text;
        type.text = name;
        if (at_op("<")) type.add(parse_type_arguments());
      }
      type.end = prev_end();
    }
    while (at_op("[") && at_op("]", 1)) {
      next();
      next();
      PNode arr("ArrayType", begin, prev_end());
      arr.add(std::move(type));
      type = std::move(arr);
    }
    return type;
  }

  PNode parse_type_arguments() {
    PNode args("TypeArguments", expect_op("<").begin, prev_end());
    while (!at_op(">")) {
      args.add(parse_type());
      if (!at_op(",")) break;
      next();
    }
    expect_op(">");
    args.end = prev_end();
    return args;
  }

  // -- statements ----------------------------------------------------------
  PNode parse_block() {
    PNode block("BlockStmt", expect_op("{").begin, prev_end());
    while (!at_op("}")) {
      if (at(Tok::kEnd)) fail("unterminated block");
      block.add(parse_block_statement());
    }
    expect_op("}");
    block.end = prev_end();
    return block;
  }

  bool looks_like_local_declaration() {
    const auto saved = pos_;
    bool ok = false;
    try {
      parse_modifiers();
      parse_type();
      ok = at_identifier() &&
           (at_op("=", 1) || at_op(";", 1) || at_op(",", 1) || at_op("[", 1) || at_op(":", 1));
    } catch (const ParseFailure&) {
      ok = false;
    }
    pos_ = saved;
    return ok;
  }

  PNode parse_block_statement() {
    const auto begin = peek().begin;
    // Local class / record / interface declarations.
    {
      const auto saved = pos_;
      auto mods = parse_modifiers();
      if (at_type_declaration_keyword()) {
        PNode n("LocalClassDeclarationStmt", begin, begin);
        n.add(parse_type_declaration_rest(mods));
        n.end = prev_end();
        return n;
      }
      pos_ = saved;
    }
    if (!at_kw("yield") && looks_like_local_declaration()) {
      PNode decl = parse_local_declaration();
      expect_op(";");
      decl.end = prev_end();
      return decl;
    }
    return parse_statement();
  }

  PNode parse_local_declaration() {
    const auto begin = peek().begin;
    PNode decl("VariableDeclarationExpr", begin, begin);
    auto mods = parse_modifiers();
    add_all(decl, mods);
    decl.add(parse_type());
    parse_declarators(decl);
    decl.end = prev_end();
    return decl;
  }

  PNode parse_statement() {
    const auto& t = peek();
    const auto begin = t.begin;
    if (at_op("{")) return parse_block();
    if (at_op(";")) return PNode("EmptyStmt", begin, next().end);
    if (t.type == Tok::kName) {
      if (t.text == "if") {
        next();
        PNode n("IfStmt", begin, begin);
        n.add(parse_paren_expression());
        n.add(parse_statement());
        if (at_kw("else")) {
          next();
          n.add(parse_statement());
        }
        n.end = prev_end();
        return n;
      }
      if (t.text == "while") {
        next();
        PNode n("WhileStmt", begin, begin);
        n.add(parse_paren_expression());
        n.add(parse_statement());
        n.end = prev_end();
        return n;
      }
      if (t.text == "do") {
        next();
        PNode n("DoStmt", begin, begin);
        n.add(parse_statement());
        if (!at_kw("while")) fail("expected while");
        next();
        n.add(parse_paren_expression());
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (t.text == "for") return parse_for();
      if (t.text == "try") return parse_try();
      if (t.text == "switch") {
        PNode sw = parse_switch("SwitchStmt");
        if (at_op(";")) next();
        return sw;
      }
      if (t.text == "return") {
        next();
        PNode n("ReturnStmt", begin, begin);
        if (!at_op(";")) n.add(parse_expression());
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (t.text == "throw") {
        next();
        PNode n("ThrowStmt", begin, begin);
        n.add(parse_expression());
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (t.text == "break" || t.text == "continue") {
        const bool is_break = next().text == "break";
        PNode n(is_break ? "BreakStmt" : "ContinueStmt", begin, begin);
        if (at_identifier()) n.text = next().text;
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (t.text == "yield" && !at_op("=", 1) && !at_op("(", 1) && !at_op(".", 1)) {
        next();
        PNode n("YieldStmt", begin, begin);
        n.add(parse_expression());
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (t.text == "synchronized") {
        next();
        PNode n("SynchronizedStmt", begin, begin);
        n.add(parse_paren_expression());
        n.add(parse_block());
        n.end = prev_end();
        return n;
      }
      if (t.text == "assert") {
        next();
        PNode n("AssertStmt", begin, begin);
        n.add(parse_expression());
        if (at_op(":")) {
          next();
          n.add(parse_expression());
        }
        expect_op(";");
        n.end = prev_end();
        return n;
      }
      if (at_identifier() && at_op(":", 1)) {
        const auto& label = next();
        next();
        PNode n("LabeledStmt", begin, begin, label.text);
        n.add(parse_statement());
        n.end = prev_end();
        return n;
      }
    }
    PNode n("ExpressionStmt", begin, begin);
    n.add(parse_expression());
    expect_op(";");
    n.end = prev_end();
    return n;
  }

  PNode parse_paren_expression() {
    expect_op("(");
    PNode e = parse_expression();
    expect_op(")");
    return e;
  }

  PNode parse_for() {
    const auto begin = next().begin;
    expect_op("(");
    // Enhanced for: [mods] Type name ':' expr
    {
      const auto saved = pos_;
      auto each = attempt([&]() -> PNode {
        PNode var("VariableDeclarationExpr", peek().begin, peek().begin);
        auto mods = parse_modifiers();
        add_all(var, mods);
        var.add(parse_type());
        const auto& name = expect_identifier();
        var.add(PNode("VariableDeclarator", name.begin, name.end, name.text));
        var.end = prev_end();
        expect_op(":");
        return var;
      });
      if (each) {
        PNode n("ForEachStmt", begin, begin);
        n.add(std::move(*each));
        n.add(parse_expression());
        expect_op(")");
        n.add(parse_statement());
        n.end = prev_end();
        return n;
      }
      pos_ = saved;
    }
    PNode n("ForStmt", begin, begin);
    PNode init("Initialization", peek().begin, peek().begin);
    if (!at_op(";")) {
      if (looks_like_local_declaration()) {
        init.add(parse_local_declaration());
      } else {
        do {
          init.add(parse_expression());
        } while (at_op(",") && next().type == Tok::kOp);
      }
    }
    init.end = std::max(init.begin, prev_end());
    n.add(std::move(init));
    expect_op(";");
    if (!at_op(";")) {
      PNode cmp("Compare", peek().begin, peek().begin);
      cmp.add(parse_expression());
      cmp.end = prev_end();
      n.add(std::move(cmp));
    }
    expect_op(";");
    PNode update("Update", peek().begin, peek().begin);
    while (!at_op(")")) {
      update.add(parse_expression());
      if (!at_op(",")) break;
      next();
    }
    update.end = std::max(update.begin, prev_end());
    n.add(std::move(update));
    expect_op(")");
    n.add(parse_statement());
    n.end = prev_end();
    return n;
  }

  PNode parse_try() {
    const auto begin = next().begin;
    PNode n("TryStmt", begin, begin);
    if (at_op("(")) {
      PNode resources("Resources", next().begin, prev_end());
      while (!at_op(")")) {
        if (looks_like_local_declaration()) {
          resources.add(parse_local_declaration());
        } else {
          resources.add(parse_expression());
        }
        if (!at_op(";")) break;
        next();
      }
      expect_op(")");
      resources.end = prev_end();
      n.add(std::move(resources));
    }
    n.add(parse_block());
    bool handlers = false;
    while (at_kw("catch")) {
      handlers = true;
      PNode c("CatchClause", next().begin, prev_end());
      expect_op("(");
      const auto pbegin = peek().begin;
      auto mods = parse_modifiers();
      PNode type = parse_type();
      if (at_op("|")) {
        PNode uni("UnionType", type.begin, type.end);
        uni.add(std::move(type));
        while (at_op("|")) {
          next();
          uni.add(parse_type());
        }
        uni.end = prev_end();
        type = std::move(uni);
      }
      const auto& name = expect_identifier();
      PNode param("Parameter", pbegin, name.end, name.text);
      add_all(param, mods);
      param.add(std::move(type));
      c.add(std::move(param));
      expect_op(")");
      c.add(parse_block());
      c.end = prev_end();
      n.add(std::move(c));
    }
    if (at_kw("finally")) {
      handlers = true;
      next();
      n.add(parse_block());
    }
    if (!handlers && n.children.size() < 2) fail("try without catch or finally");
    n.end = prev_end();
    return n;
  }

  PNode parse_switch(const char* kind) {
    const auto begin = next().begin;  // 'switch'
    PNode n(kind, begin, begin);
    n.add(parse_paren_expression());
    expect_op("{");
    while (!at_op("}")) {
      if (at(Tok::kEnd)) fail("unterminated switch");
      PNode entry("SwitchEntry", peek().begin, peek().begin);
      if (at_kw("default")) {
        next();
      } else if (at_kw("case")) {
        next();
        do {
          if (at_kw("default")) {
            next();
          } else {
            entry.add(parse_ternary());
          }
        } while (at_op(",") && next().type == Tok::kOp);
      } else {
        fail("expected case or default");
      }
      if (at_op("->")) {
        next();
        if (at_op("{")) {
          entry.add(parse_block());
        } else if (at_kw("throw")) {
          entry.add(parse_statement());
        } else {
          PNode e("ExpressionStmt", peek().begin, peek().begin);
          e.add(parse_expression());
          expect_op(";");
          e.end = prev_end();
          entry.add(std::move(e));
        }
      } else {
        expect_op(":");
        while (!at_kw("case") && !at_kw("default") && !at_op("}")) {
          if (at(Tok::kEnd)) fail("unterminated switch");
          entry.add(parse_block_statement());
        }
      }
      entry.end = prev_end();
      n.add(std::move(entry));
    }
    expect_op("}");
    n.end = prev_end();
    return n;
  }

  // -- expressions ---------------------------------------------------------
  bool lambda_ahead() const {
    if (at_identifier() && at_op("->", 1)) return true;
    if (!at_op("(")) return false;
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const auto& t = toks_[i];
      if (t.type == Tok::kOp && t.text == "(") ++depth;
      if (t.type == Tok::kOp && t.text == ")" && --depth == 0) {
        return i + 1 < toks_.size() && toks_[i + 1].type == Tok::kOp && toks_[i + 1].text == "->";
      }
      if (t.type == Tok::kEnd) return false;
    }
    return false;
  }

  PNode parse_lambda() {
    const auto begin = peek().begin;
    PNode n("LambdaExpr", begin, begin);
    if (at_identifier()) {
      const auto& p = next();
      n.add(PNode("Parameter", p.begin, p.end, p.text));
    } else {
      expect_op("(");
      while (!at_op(")")) {
        if (at_identifier() && (at_op(",", 1) || at_op(")", 1))) {
          const auto& p = next();
          n.add(PNode("Parameter", p.begin, p.end, p.text));
        } else {
          n.add(parse_parameter());
        }
        if (!at_op(",")) break;
        next();
      }
      expect_op(")");
    }
    expect_op("->");
    if (at_op("{")) {
      n.add(parse_block());
    } else {
      n.add(parse_expression());
    }
    n.end = prev_end();
    return n;
  }

  PNode parse_expression() {
    if (lambda_ahead()) return parse_lambda();
    const auto begin = peek().begin;
    PNode lhs = parse_ternary();
    if (peek().type == Tok::kOp && (kAssignOps.contains(peek().text) || shift_assign_ahead())) {
      std::string op = take_operator();
      PNode n("AssignExpr", begin, prev_end(), op);
      n.add(std::move(lhs));
      n.add(at_op("{") ? parse_array_initializer() : parse_expression());
      n.end = prev_end();
      return n;
    }
    return lhs;
  }

  // '>' '>=' written as adjacent tokens never occurs since ">>=" lexes whole.
  bool shift_assign_ahead() const { return false; }

  std::string take_operator() { return next().text; }

  PNode parse_ternary() {
    const auto begin = peek().begin;
    PNode cond = parse_binary(0);
    if (!at_op("?")) return cond;
    next();
    PNode n("ConditionalExpr", begin, begin);
    n.add(std::move(cond));
    n.add(lambda_ahead() ? parse_lambda() : parse_ternary());
    expect_op(":");
    n.add(lambda_ahead() ? parse_lambda() : parse_ternary());
    n.end = prev_end();
    return n;
  }

  // Operator at the cursor for binary level `level`, joining '>' '>' ['>']
  // into shift operators when the tokens are adjacent.
  std::optional<std::pair<std::string, std::size_t>> binary_operator(int level) const {
    const auto& t = peek();
    if (t.type != Tok::kOp && !(t.type == Tok::kName && t.text == "instanceof")) return std::nullopt;
    std::string op = t.text;
    std::size_t width = 1;
    if (op == ">" && at_op(">", 1) && peek(1).begin == t.end) {
      op = ">>";
      width = 2;
      if (at_op(">", 2) && peek(2).begin == peek(1).end) {
        op = ">>>";
        width = 3;
      }
    }
    static const std::vector<std::vector<std::string_view>> kLevels = {
        {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="}, {"<", ">", "<=", ">=", "instanceof"},
        {"<<", ">>", ">>>"}, {"+", "-"}, {"*", "/", "%"}};
    for (auto candidate : kLevels[static_cast<std::size_t>(level)]) {
      if (candidate == op) return std::make_pair(op, width);
    }
    return std::nullopt;
  }

  PNode parse_binary(int level) {
    if (level == 10) return parse_unary();
    const auto begin = peek().begin;
    PNode left = parse_binary(level + 1);
    while (auto op = binary_operator(level)) {
      for (std::size_t i = 0; i < op->second; ++i) next();
      if (op->first == "instanceof") {
        PNode n("InstanceOfExpr", begin, begin);
        n.add(std::move(left));
        if (at_kw("final")) next();
        n.add(parse_type());
        if (at_identifier()) {
          const auto& pv = next();
          n.add(PNode("PatternVariable", pv.begin, pv.end, pv.text));
        }
        n.end = prev_end();
        left = std::move(n);
        continue;
      }
      PNode n("BinaryExpr", begin, begin, op->first);
      n.add(std::move(left));
      n.add(parse_binary(level + 1));
      n.end = prev_end();
      left = std::move(n);
    }
    return left;
  }

  bool can_start_cast_operand() const {
    const auto& t = peek();
    if (t.type == Tok::kNumber || t.type == Tok::kString) return true;
    if (t.type == Tok::kName) return t.text != "instanceof";
    return t.type == Tok::kOp && (t.text == "(" || t.text == "!" || t.text == "~");
  }

  PNode parse_unary() {
    const auto& t = peek();
    const auto begin = t.begin;
    if (t.type == Tok::kOp &&
        (t.text == "+" || t.text == "-" || t.text == "++" || t.text == "--" || t.text == "!" ||
         t.text == "~")) {
      const std::string op = next().text;
      PNode n("UnaryExpr", begin, begin, op);
      n.add(parse_unary());
      n.end = prev_end();
      return n;
    }
    if (at_op("(") && !lambda_ahead()) {
      auto cast = attempt([&]() -> PNode {
        next();
        const bool primitive = peek().type == Tok::kName && kPrimitives.contains(peek().text);
        PNode type = parse_type();
        while (at_op("&")) {
          next();
          parse_type();
        }
        expect_op(")");
        if (!primitive && !can_start_cast_operand()) fail("not a cast");
        if (primitive && !(can_start_cast_operand() || at_op("-") || at_op("+"))) {
          fail("not a cast");
        }
        PNode n("CastExpr", begin, begin);
        n.add(std::move(type));
        n.add(lambda_ahead() ? parse_lambda() : parse_unary());
        n.end = prev_end();
        return n;
      });
      if (cast) return std::move(*cast);
    }
    PNode expr = parse_postfix();
    return expr;
  }

  PNode parse_postfix() {
    const auto begin = peek().begin;
    PNode expr = parse_primary();
    while (at_op("++") || at_op("--")) {
      const std::string op = next().text;
      PNode n("UnaryExpr", begin, prev_end(), "post" + op);
      n.add(std::move(expr));
      expr = std::move(n);
    }
    return expr;
  }

  PNode parse_arguments() {
    PNode args("Arguments", expect_op("(").begin, prev_end());
    while (!at_op(")")) {
      args.add(parse_expression());
      if (!at_op(",")) break;
      next();
    }
    expect_op(")");
    args.end = prev_end();
    return args;
  }

  PNode parse_array_initializer() {
    PNode init("ArrayInitializerExpr", expect_op("{").begin, prev_end());
    while (!at_op("}")) {
      init.add(at_op("{") ? parse_array_initializer() : parse_expression());
      if (!at_op(",")) break;
      next();
    }
    expect_op("}");
    init.end = prev_end();
    return init;
  }

  PNode parse_creator(std::uint32_t begin) {
    // after 'new'
    if (at_op("<")) parse_type_arguments();
    while (at_op("@")) skip_annotation();
    PNode type;
    if (peek().type == Tok::kName && kPrimitives.contains(peek().text)) {
      const auto& t = next();
      type = PNode("PrimitiveType", t.begin, t.end, t.text);
    } else {
      const auto tb = peek().begin;
      std::string name = expect_identifier().text;
      type = PNode("ClassOrInterfaceType", tb, prev_end(), name);
      if (at_op("<")) {
        if (at_op(">", 1)) {
          next();
          next();
          type.add(PNode("TypeArguments", prev_end() - 2, prev_end()));
        } else {
          type.add(parse_type_arguments());
        }
      }
      while (at_op(".") && at_identifier(1)) {
        next();
        name += "." + next().text;
        type.text = name;
        if (at_op("<")) type.add(parse_type_arguments());
      }
      type.end = prev_end();
    }
    if (at_op("[")) {
      PNode arr("ArrayCreationExpr", begin, begin);
      arr.add(std::move(type));
      while (at_op("[")) {
        next();
        if (at_op("]")) {
          next();
          arr.add(PNode("ArrayCreationLevel", prev_end() - 2, prev_end()));
        } else {
          PNode level("ArrayCreationLevel", peek().begin, peek().begin);
          level.add(parse_expression());
          expect_op("]");
          level.end = prev_end();
          arr.add(std::move(level));
        }
      }
      if (at_op("{")) arr.add(parse_array_initializer());
      arr.end = prev_end();
      return arr;
    }
    PNode obj("ObjectCreationExpr", begin, begin);
    obj.add(std::move(type));
    obj.add(parse_arguments());
    if (at_op("{")) obj.add(parse_class_body());
    obj.end = prev_end();
    return obj;
  }

  PNode parse_primary() {
    const auto& t = peek();
    const auto begin = t.begin;
    PNode expr;
    if (t.type == Tok::kNumber) {
      next();
      const bool floating = t.text.find_first_of(".eEfFdD") != std::string::npos &&
                            t.text.rfind("0x", 0) != 0 && t.text.rfind("0X", 0) != 0;
      const bool is_long = !t.text.empty() && (t.text.back() == 'L' || t.text.back() == 'l');
      expr = PNode(floating ? "DoubleLiteralExpr" : is_long ? "LongLiteralExpr" : "IntegerLiteralExpr",
                   t.begin, t.end, t.text);
    } else if (t.type == Tok::kString) {
      next();
      expr = PNode(t.text.front() == '\'' ? "CharLiteralExpr"
                   : t.text.rfind("\"\"\"", 0) == 0 ? "TextBlockLiteralExpr"
                                                    : "StringLiteralExpr",
                   t.begin, t.end, t.text);
    } else if (t.type == Tok::kName) {
      if (t.text == "true" || t.text == "false") {
        next();
        expr = PNode("BooleanLiteralExpr", t.begin, t.end, t.text);
      } else if (t.text == "null") {
        next();
        expr = PNode("NullLiteralExpr", t.begin, t.end, t.text);
      } else if (t.text == "this") {
        next();
        if (at_op("(")) {
          expr = PNode("ExplicitConstructorInvocationStmt", begin, begin, "this");
          expr.add(parse_arguments());
          expr.end = prev_end();
        } else {
          expr = PNode("ThisExpr", t.begin, t.end);
        }
      } else if (t.text == "super") {
        next();
        if (at_op("(")) {
          expr = PNode("ExplicitConstructorInvocationStmt", begin, begin, "super");
          expr.add(parse_arguments());
          expr.end = prev_end();
        } else {
          expr = PNode("SuperExpr", t.begin, t.end);
        }
      } else if (t.text == "new") {
        next();
        expr = parse_creator(begin);
      } else if (t.text == "switch") {
        expr = parse_switch("SwitchExpr");
      } else if (kPrimitives.contains(t.text)) {
        // int.class, int[].class, int[]::new
        PNode type = parse_type();
        if (at_op("::")) {
          expr = std::move(type);
        } else {
          expect_op(".");
          if (!at_kw("class")) fail("expected class");
          next();
          expr = PNode("ClassExpr", begin, prev_end());
          expr.add(std::move(type));
        }
      } else if (!kReserved.contains(t.text)) {
        next();
        if (at_op("(")) {
          expr = PNode("MethodCallExpr", begin, begin, t.text);
          expr.add(parse_arguments());
          expr.end = prev_end();
        } else {
          expr = PNode("NameExpr", t.begin, t.end, t.text);
          // Generic type followed by '::' (e.g. List<String>::size) or array type.
          if (at_op("[") && at_op("]", 1)) {
            auto rest = attempt([&]() -> PNode {
              PNode type("ClassOrInterfaceType", t.begin, t.end, t.text);
              while (at_op("[") && at_op("]", 1)) {
                next();
                next();
                PNode arr("ArrayType", begin, prev_end());
                arr.add(std::move(type));
                type = std::move(arr);
              }
              if (at_op("::")) return type;
              expect_op(".");
              if (!at_kw("class")) fail("expected class");
              next();
              PNode cls("ClassExpr", begin, prev_end());
              cls.add(std::move(type));
              return cls;
            });
            if (rest) expr = std::move(*rest);
          }
        }
      } else {
        fail("unexpected keyword");
      }
    } else if (at_op("(")) {
      next();
      expr = PNode("EnclosedExpr", begin, begin);
      expr.add(parse_expression());
      expect_op(")");
      expr.end = prev_end();
    } else if (at_op("@")) {
      skip_annotation();
      return parse_primary();
    } else {
      fail("unexpected token in expression");
    }
    return parse_selectors(std::move(expr), begin);
  }

  PNode parse_selectors(PNode expr, std::uint32_t begin) {
    while (true) {
      if (at_op(".")) {
        next();
        if (at_op("<")) parse_type_arguments();
        if (at_kw("new")) {
          next();
          PNode inner = parse_creator(begin);
          inner.add(std::move(expr));
          expr = std::move(inner);
          continue;
        }
        if (at_kw("class")) {
          next();
          PNode cls("ClassExpr", begin, prev_end());
          cls.add(std::move(expr));
          expr = std::move(cls);
          continue;
        }
        if (at_kw("this") || at_kw("super")) {
          const auto& kw = next();
          PNode n(kw.text == "this" ? "ThisExpr" : "SuperExpr", begin, prev_end());
          n.add(std::move(expr));
          expr = std::move(n);
          continue;
        }
        const auto& name = expect_identifier();
        if (at_op("(")) {
          PNode call("MethodCallExpr", begin, begin, name.text);
          call.add(std::move(expr));
          call.add(parse_arguments());
          call.end = prev_end();
          expr = std::move(call);
        } else {
          PNode field("FieldAccessExpr", begin, prev_end(), name.text);
          field.add(std::move(expr));
          expr = std::move(field);
        }
      } else if (at_op("[")) {
        next();
        PNode access("ArrayAccessExpr", begin, begin);
        access.add(std::move(expr));
        access.add(parse_expression());
        expect_op("]");
        access.end = prev_end();
        expr = std::move(access);
      } else if (at_op("::")) {
        next();
        std::string name = at_kw("new") ? next().text : expect_identifier().text;
        PNode ref("MethodReferenceExpr", begin, prev_end(), name);
        ref.add(std::move(expr));
        expr = std::move(ref);
      } else if (at_op("<") && generic_method_reference_ahead()) {
        // Type<Args>::method
        PNode args = parse_type_arguments();
        expect_op("::");
        std::string name = at_kw("new") ? next().text : expect_identifier().text;
        PNode ref("MethodReferenceExpr", begin, prev_end(), name);
        ref.add(std::move(expr));
        ref.add(std::move(args));
        expr = std::move(ref);
      } else {
        return expr;
      }
    }
  }

  bool generic_method_reference_ahead() {
    const auto saved = pos_;
    bool ok = false;
    try {
      parse_type_arguments();
      ok = at_op("::");
    } catch (const ParseFailure&) {
      ok = false;
    }
    pos_ = saved;
    return ok;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

PNode parse_java_tree(std::string_view src) {
  auto tokens = lex_java(src);
  // Whole compilation unit, then bare members, then bare statements.
  try {
    return JavaParser(tokens).parse_compilation_unit();
  } catch (const ParseFailure&) {
  }
  try {
    return JavaParser(tokens).parse_member_sequence();
  } catch (const ParseFailure&) {
  }
  return JavaParser(std::move(tokens)).parse_statement_sequence();
}

}  // namespace reco::style::detail
