#include "punip/parse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "punip/error.hpp"

namespace punip {

namespace {

enum class Tok { Ident, Number, Sym, String, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, col = 1;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&]() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        t.text += s[i];
        advance();
      }
      while (i < s.size() && s[i] == '\'') {
        t.text += s[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        t.text += s[i];
        advance();
      }
    } else if (c == '"') {
      t.kind = Tok::String;
      advance();
      while (i < s.size() && s[i] != '"' && s[i] != '\n') {
        t.text += s[i];
        advance();
      }
      if (i >= s.size() || s[i] != '"') throw ParseError("unterminated string", t.line, t.col);
      advance();
    } else if (std::string("+-*/^()=;,{}").find(c) != std::string::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool is_word(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.line, t.col); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End:
        return "end of input";
      case Tok::String:
        return "string \"" + t.text + "\"";
      default:
        return "'" + t.text + "'";
    }
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "', found " + describe(peek()));
    next();
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "', found " + describe(peek()));
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next().text;
  }
  std::uint64_t number(const char* what) {
    if (peek().kind != Tok::Number) fail(std::string("expected ") + what + ", found " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 18) fail("number too large", t);
    return std::stoull(t.text);
  }
  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }

  // exponent := nat ('^' exponent)? | '(' intexpr ')'
  std::uint64_t exponent() {
    std::uint64_t base;
    if (is_sym("(")) {
      next();
      base = int_expr();
      expect_sym(")");
    } else {
      base = number("an exponent");
    }
    if (is_sym("^")) {
      const Token& at = next();
      std::uint64_t e = exponent();
      base = checked_pow(base, e, at);
    }
    return base;
  }

  // Nonnegative integer arithmetic inside parenthesized exponents.
  std::uint64_t int_expr() {
    std::uint64_t v = int_term();
    while (is_sym("+")) {
      next();
      v += int_term();
    }
    return v;
  }
  std::uint64_t int_term() {
    std::uint64_t v = int_factor();
    while (is_sym("*")) {
      const Token& at = next();
      std::uint64_t w = int_factor();
      if (w && v > kMaxExponent / w) fail("exponent too large", at);
      v *= w;
    }
    return v;
  }
  std::uint64_t int_factor() {
    std::uint64_t b;
    if (is_sym("(")) {
      next();
      b = int_expr();
      expect_sym(")");
    } else {
      b = number("an integer");
    }
    if (is_sym("^")) {
      const Token& at = next();
      b = checked_pow(b, int_factor(), at);
    }
    return b;
  }

  std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e, const Token& at) const {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      if (b && r > kMaxExponent / b) fail("exponent too large", at);
      r *= b;
      if (b <= 1) break;
    }
    return b == 0 && e > 0 ? 0 : r;
  }

  static constexpr std::uint64_t kMaxExponent = 1u << 20;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Expressions evaluate to GPoly over a fixed variable list.
class ExprParser {
 public:
  ExprParser(Parser& ps, const Field& f, const std::vector<std::string>& vars) : ps_(ps), f_(f), n_(vars.size()) {
    for (std::size_t i = 0; i < vars.size(); ++i) index_[vars[i]] = i;
  }

  GPoly expr() {
    bool neg = false;
    if (ps_.is_sym("-") || ps_.is_sym("+")) neg = ps_.next().text == "-";
    GPoly acc = term();
    if (neg) acc = -acc;
    while (ps_.is_sym("+") || ps_.is_sym("-")) {
      bool minus = ps_.next().text == "-";
      GPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

 private:
  GPoly term() {
    GPoly acc = factor();
    while (ps_.is_sym("*") || ps_.is_sym("/")) {
      const Token& op = ps_.next();
      GPoly rhs = factor();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        RatFunc d = constant_of(rhs, op);
        if (d.is_zero()) ps_.fail("division by zero", op);
        acc = acc.scaled(d.inverse());
      }
    }
    return acc;
  }

  RatFunc constant_of(const GPoly& g, const Token& at) const {
    if (g.is_zero()) return RatFunc(f_);
    if (g.terms().size() != 1) ps_.fail("can only divide by field elements", at);
    const auto& [ex, c] = *g.terms().begin();
    for (auto e : ex)
      if (e) ps_.fail("can only divide by field elements", at);
    return c;
  }

  GPoly factor() {
    GPoly base = primary();
    if (ps_.is_sym("^")) {
      ps_.next();
      base = base.pow(ps_.exponent());
    }
    return base;
  }

  GPoly primary() {
    const Token& t = ps_.peek();
    if (t.kind == Tok::Number) {
      ps_.next();
      if (t.text.size() > 18) ps_.fail("number too large", t);
      auto v = static_cast<int>(std::stoull(t.text) % static_cast<std::uint64_t>(f_->p));
      return GPoly::constant(f_, n_, RatFunc(f_, v));
    }
    if (t.kind == Tok::Ident) {
      ps_.next();
      auto it = index_.find(t.text);
      if (it != index_.end()) return GPoly::var(f_, n_, it->second);
      int k = f_->index_of(t.text);
      if (k >= 0) return GPoly::constant(f_, n_, RatFunc::var(f_, static_cast<std::size_t>(k)));
      ps_.fail("unknown identifier '" + t.text + "'", t);
    }
    if (ps_.is_sym("(")) {
      ps_.next();
      GPoly e = expr();
      ps_.expect_sym(")");
      return e;
    }
    ps_.fail("expected a number, identifier or '(', found " + Parser::describe(t), t);
  }

  Parser& ps_;
  Field f_;
  std::size_t n_;
  std::map<std::string, std::size_t> index_;
};

Field field_from(Parser& ps, int max_degree) {
  const Token& at = ps.peek();
  ps.expect_word("GF");
  ps.expect_sym("(");
  std::uint64_t p = ps.number("a prime");
  ps.expect_sym(")");
  std::vector<std::string> vars;
  if (ps.is_sym("(")) {
    ps.next();
    if (!ps.is_sym(")")) {
      vars.push_back(ps.ident("an indeterminate"));
      while (ps.is_sym(",")) {
        ps.next();
        vars.push_back(ps.ident("an indeterminate"));
      }
    }
    ps.expect_sym(")");
  }
  try {
    return make_field(static_cast<int>(p), vars, max_degree);
  } catch (const DomainError& e) {
    ps.fail(e.what(), at);
  }
}

template <class T>
T parse_whole(const std::string& text, const std::function<T(Parser&)>& body) {
  Parser ps(lex(text));
  T v = body(ps);
  ps.expect_end();
  return v;
}

PPoly as_ppoly(Parser& ps, const GPoly& g, const Token& at, std::size_t arity) {
  if (g.is_zero()) return PPoly(g.field(), arity);
  auto pp = g.to_ppoly();
  if (!pp) ps.fail("expression is not an additive polynomial", at);
  return *pp;
}

std::vector<std::string> ident_list(Parser& ps, const char* what) {
  std::vector<std::string> out{ps.ident(what)};
  while (ps.is_sym(",")) {
    ps.next();
    out.push_back(ps.ident(what));
  }
  return out;
}

class DocParser {
 public:
  DocParser(const std::map<std::string, std::string>& imports, int depth, Field parent = nullptr)
      : imports_(imports), depth_(depth), parent_(std::move(parent)) {}

  Document run(const std::string& text) {
    Parser ps(lex(text));
    Document d;
    ps.expect_word("field");
    d.field = field_from(ps, 64);
    // Imported files share the importing file's field object.
    if (parent_ && parent_->header() == d.field->header()) d.field = parent_;
    if (ps.is_sym(";")) ps.next();
    while (!ps.at_end()) {
      if (ps.is_word("import")) {
        import(ps, d);
      } else if (ps.is_word("group")) {
        group(ps, d);
      } else if (ps.is_word("extension")) {
        extension(ps, d);
      } else {
        ps.fail("expected 'group', 'extension' or 'import', found " + Parser::describe(ps.peek()));
      }
    }
    return d;
  }

 private:
  void import(Parser& ps, Document& d) {
    ps.next();
    const Token& t = ps.peek();
    if (t.kind != Tok::String) ps.fail("expected a quoted file name");
    ps.next();
    ps.expect_sym(";");
    auto it = imports_.find(t.text);
    if (it == imports_.end()) ps.fail("cannot resolve import \"" + t.text + "\"", t);
    if (depth_ > 8) ps.fail("imports nested too deeply", t);
    Document sub;
    try {
      sub = DocParser(imports_, depth_ + 1, d.field).run(it->second);
    } catch (const ParseError& e) {
      ps.fail(std::string("in \"") + t.text + "\": " + e.what(), t);
    }
    if (sub.field->header() != d.field->header())
      ps.fail("imported file uses field " + sub.field->header() + ", expected " + d.field->header(), t);
    for (auto& g : sub.groups) add_group(ps, d, std::move(g), t);
    for (auto& e : sub.extensions) d.extensions.push_back(std::move(e));
  }

  void add_group(Parser& ps, Document& d, Presentation g, const Token& at) {
    for (const auto& h : d.groups)
      if (h.name() == g.name()) ps.fail("group '" + g.name() + "' defined twice", at);
    d.groups.push_back(std::move(g));
  }

  void group(Parser& ps, Document& d) {
    ps.next();
    const Token& name_tok = ps.peek();
    std::string name = ps.ident("a group name");
    ps.expect_sym("{");
    ps.expect_word("vars");
    std::vector<std::string> vars = ident_list(ps, "a variable name");
    ps.expect_sym(";");
    std::vector<PPoly> rels;
    std::vector<std::optional<std::pair<std::size_t, int>>> leads;
    while (ps.is_word("rel")) {
      ps.next();
      const Token& at = ps.peek();
      ExprParser ep(ps, d.field, vars);
      GPoly lhs = ep.expr();
      if (ps.is_sym("=")) {
        ps.next();
        lhs = lhs - ep.expr();
      }
      ps.expect_sym(";");
      rels.push_back(as_ppoly(ps, lhs, at, vars.size()));
      leads.emplace_back(std::nullopt);
      if (ps.is_word("lead")) {
        ps.next();
        const Token& vt = ps.peek();
        std::string v = ps.ident("a variable");
        auto it = std::find(vars.begin(), vars.end(), v);
        if (it == vars.end()) ps.fail("lead variable '" + v + "' is not declared", vt);
        int e = 0;
        if (ps.is_sym("^")) {
          const Token& et = ps.next();
          std::uint64_t pw = ps.exponent();
          std::uint64_t q = 1;
          while (q < pw) {
            q *= static_cast<std::uint64_t>(d.field->p);
            ++e;
          }
          if (q != pw) ps.fail("lead power must be a power of " + std::to_string(d.field->p), et);
        }
        ps.expect_sym(";");
        leads.back() = std::make_pair(static_cast<std::size_t>(it - vars.begin()), e);
      }
    }
    ps.expect_sym("}");
    try {
      add_group(ps, d, Presentation(name, d.field, vars, rels, leads), name_tok);
    } catch (const DomainError& e) {
      ps.fail(e.what(), name_tok);
    }
  }

  void extension(Parser& ps, Document& d) {
    ps.next();
    std::string name = ps.ident("an extension name");
    const Token& kind = ps.peek();
    std::string k = ps.ident("'twisted' or 'delta'");
    ps.expect_sym("{");
    ps.expect_word("base");
    const Token& bt = ps.peek();
    std::string base = ps.ident("a group name");
    ps.expect_sym(";");
    const Presentation* G = find(d, base);
    if (!G) ps.fail("unknown group '" + base + "'", bt);
    if (k == "twisted") {
      TwistedDecl t{name, base, "", {}};
      ps.expect_word("fiber");
      const Token& ft = ps.peek();
      t.fiber = ps.ident("a group name");
      ps.expect_sym(";");
      const Presentation* W = find(d, t.fiber);
      if (!W) ps.fail("unknown group '" + t.fiber + "'", ft);
      ps.expect_word("cocycle");
      ps.expect_sym("(");
      auto names = doubled_names(*G);
      ExprParser ep(ps, d.field, names);
      t.cocycle.push_back(ep.expr());
      while (ps.is_sym(",")) {
        ps.next();
        t.cocycle.push_back(ep.expr());
      }
      const Token& close = ps.peek();
      ps.expect_sym(")");
      ps.expect_sym(";");
      if (t.cocycle.size() != W->arity())
        ps.fail("cocycle has " + std::to_string(t.cocycle.size()) + " components, fiber '" + t.fiber + "' has " +
                    std::to_string(W->arity()) + " variables",
                close);
      d.extensions.emplace_back(std::move(t));
    } else if (k == "delta") {
      DeltaDecl t{name, base, {}, {}, {}};
      ps.expect_word("fiber_vars");
      t.fiber_vars = ident_list(ps, "a variable name");
      ps.expect_sym(";");
      ps.expect_word("relation");
      const Token& rt = ps.peek();
      t.relation = as_ppoly(ps, ExprParser(ps, d.field, t.fiber_vars).expr(), rt, t.fiber_vars.size());
      ps.expect_sym(";");
      ps.expect_word("chi");
      const Token& ct = ps.peek();
      t.chi = as_ppoly(ps, ExprParser(ps, d.field, G->vars()).expr(), ct, G->arity());
      ps.expect_sym(";");
      d.extensions.emplace_back(std::move(t));
    } else {
      ps.fail("extension kind must be 'twisted' or 'delta'", kind);
    }
    ps.expect_sym("}");
  }

  static const Presentation* find(const Document& d, const std::string& name) {
    for (const auto& g : d.groups)
      if (g.name() == name) return &g;
    return nullptr;
  }

  const std::map<std::string, std::string>& imports_;
  int depth_;
  Field parent_;
};

}  // namespace

Field parse_field(const std::string& header, int max_degree) {
  return parse_whole<Field>(header, [&](Parser& ps) { return field_from(ps, max_degree); });
}

RatFunc parse_ratfunc(const Field& f, const std::string& text) {
  GPoly g = parse_gpoly(f, {}, text);
  if (g.is_zero()) return RatFunc(f);
  return g.terms().begin()->second;
}

GPoly parse_gpoly(const Field& f, const std::vector<std::string>& vars, const std::string& text) {
  return parse_whole<GPoly>(text, [&](Parser& ps) { return ExprParser(ps, f, vars).expr(); });
}

PPoly parse_ppoly(const Field& f, const std::vector<std::string>& vars, const std::string& text) {
  return parse_whole<PPoly>(text, [&](Parser& ps) {
    const Token& at = ps.peek();
    return as_ppoly(ps, ExprParser(ps, f, vars).expr(), at, vars.size());
  });
}

PPoly parse_relation(const Field& f, const std::vector<std::string>& vars, const std::string& text) {
  return parse_whole<PPoly>(text, [&](Parser& ps) {
    const Token& at = ps.peek();
    ExprParser ep(ps, f, vars);
    GPoly g = ep.expr();
    if (ps.is_sym("=")) {
      ps.next();
      g = g - ep.expr();
    }
    return as_ppoly(ps, g, at, vars.size());
  });
}

const Presentation& Document::group(const std::string& name) const {
  for (const auto& g : groups)
    if (g.name() == name) return g;
  throw DomainError("no group named '" + name + "'");
}

Document parse_document(const std::string& text, const std::map<std::string, std::string>& imports) {
  return DocParser(imports, 0).run(text);
}

TwistedExtension build_twisted(const Document& d, const TwistedDecl& decl) {
  return twisted_group(d.group(decl.base), decl.cocycle, d.group(decl.fiber), decl.name);
}

ConnectingExtension build_delta(const Document& d, const DeltaDecl& decl) {
  return delta_extension(d.group(decl.base), decl.relation, decl.fiber_vars, decl.chi, decl.name);
}

std::string extension_to_string(const Document& d, const ExtensionDecl& e) {
  std::ostringstream os;
  if (const auto* t = std::get_if<TwistedDecl>(&e)) {
    auto names = doubled_names(d.group(t->base));
    os << "extension " << t->name << " twisted {\n  base " << t->base << ";\n  fiber " << t->fiber
       << ";\n  cocycle (";
    for (std::size_t i = 0; i < t->cocycle.size(); ++i) os << (i ? ", " : "") << t->cocycle[i].to_string(names);
    os << ");\n}\n";
  } else {
    const auto& x = std::get<DeltaDecl>(e);
    os << "extension " << x.name << " delta {\n  base " << x.base << ";\n  fiber_vars ";
    for (std::size_t i = 0; i < x.fiber_vars.size(); ++i) os << (i ? ", " : "") << x.fiber_vars[i];
    os << ";\n  relation " << x.relation.to_string(x.fiber_vars) << ";\n  chi "
       << x.chi.to_string(d.group(x.base).vars()) << ";\n}\n";
  }
  return os.str();
}

std::string Document::to_string() const {
  std::string s = "field " + field->header() + ";\n";
  for (const auto& g : groups) s += "\n" + g.to_string();
  for (const auto& e : extensions) s += "\n" + extension_to_string(*this, e);
  return s;
}

}  // namespace punip
