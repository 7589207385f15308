#include "contlog/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <type_traits>
#include <unordered_set>

namespace contlog {

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error("parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(const std::string& s) {
  return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin(), s.end(), is_ident_char);
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"neg", "half", "inf", "sup"};
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::string name;
  std::shared_ptr<const Node> a, b;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};

namespace {

template <class NodeT>
std::shared_ptr<const NodeT> finish(NodeT n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  h = mix(h, std::hash<std::string>{}(n.name));
  if (n.a) {
    h = mix(h, n.a->hash);
    n.size += n.a->size;
    n.depth = std::max(n.depth, n.a->depth + 1);
  }
  if (n.b) {
    h = mix(h, n.b->hash);
    n.size += n.b->size;
    n.depth = std::max(n.depth, n.b->depth + 1);
  }
  n.hash = h;
  return std::make_shared<const NodeT>(std::move(n));
}

}  // namespace

Formula::Formula() : node_(finish(Node{Kind::Zero, {}, nullptr, nullptr})) {}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw Error("invalid atom name '" + name + "'");
  return Formula(finish(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

Formula Formula::neg(const Formula& f) { return Formula(finish(Node{Kind::Neg, {}, f.node_, nullptr})); }
Formula Formula::half(const Formula& f) { return Formula(finish(Node{Kind::Half, {}, f.node_, nullptr})); }
Formula Formula::monus(const Formula& l, const Formula& r) {
  return Formula(finish(Node{Kind::Monus, {}, l.node_, r.node_}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
Formula Formula::arg() const { return Formula(node_->a); }
Formula Formula::lhs() const { return Formula(node_->a); }
Formula Formula::rhs() const { return Formula(node_->b); }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

bool operator==(const Formula& x, const Formula& y) {
  const Formula::Node* a = x.node_.get();
  const Formula::Node* b = y.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->size != b->size || a->name != b->name) return false;
  switch (a->kind) {
    case Formula::Kind::Zero:
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      return x.arg() == y.arg();
    case Formula::Kind::Monus:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

bool operator<(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return false;
  if (x.kind() != y.kind()) return x.kind() < y.kind();
  switch (x.kind()) {
    case Formula::Kind::Zero:
      return false;
    case Formula::Kind::Atom:
      return x.name() < y.name();
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      return x.arg() < y.arg();
    case Formula::Kind::Monus:
      if (x.lhs() == y.lhs()) return x.rhs() < y.rhs();
      return x.lhs() < y.lhs();
  }
  return false;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Zero:
      return;
    case Formula::Kind::Atom:
      out.insert(f.name());
      return;
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      collect_atoms(f.arg(), out);
      return;
    case Formula::Kind::Monus:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

template <class Fn>
Formula rebuild(const Formula& f, Fn&& leaf_or_self) {
  if (auto r = leaf_or_self(f)) return *r;
  switch (f.kind()) {
    case Formula::Kind::Zero:
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Neg:
      return Formula::neg(rebuild(f.arg(), leaf_or_self));
    case Formula::Kind::Half:
      return Formula::half(rebuild(f.arg(), leaf_or_self));
    case Formula::Kind::Monus:
      return Formula::monus(rebuild(f.lhs(), leaf_or_self), rebuild(f.rhs(), leaf_or_self));
  }
  return f;
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t count_monus(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Zero:
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      return count_monus(f.arg());
    case Formula::Kind::Monus:
      return 1 + count_monus(f.lhs()) + count_monus(f.rhs());
  }
  return 0;
}

std::size_t count_distinct_monus(const Formula& f) { return count_distinct_monus(std::vector<Formula>{f}); }

std::size_t count_distinct_monus(const std::vector<Formula>& fs) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::Zero:
      case Formula::Kind::Atom:
        return;
      case Formula::Kind::Neg:
      case Formula::Kind::Half:
        go(g.arg());
        return;
      case Formula::Kind::Monus:
        if (!seen.insert(g).second) return;
        go(g.lhs());
        go(g.rhs());
        return;
    }
  };
  for (const auto& f : fs) go(f);
  return seen.size();
}

bool contains_half(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Zero:
    case Formula::Kind::Atom:
      return false;
    case Formula::Kind::Half:
      return true;
    case Formula::Kind::Neg:
      return contains_half(f.arg());
    case Formula::Kind::Monus:
      return contains_half(f.lhs()) || contains_half(f.rhs());
  }
  return false;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst) {
  return rebuild(f, [&](const Formula& g) -> std::optional<Formula> {
    if (g.kind() != Formula::Kind::Atom) return std::nullopt;
    auto it = subst.find(g.name());
    if (it == subst.end()) return g;
    return it->second;
  });
}

Formula replace_all(const Formula& f, const Formula& target, const Formula& replacement) {
  return rebuild(f, [&](const Formula& g) -> std::optional<Formula> {
    if (g == target) return replacement;
    return std::nullopt;
  });
}

Formula dyadic_constant(const Integer& k, unsigned n) {
  Integer full = 1;
  full <<= n;
  if (k < 0 || k > full) throw Error("dyadic constant out of range");
  if (k == 0) return Formula::zero();
  if (k == full) return one<Formula>();
  std::optional<Formula> acc;
  for (unsigned j = 1; j <= n; ++j) {
    // bit of weight 2^-j in k / 2^n
    if (mpz_tstbit(k.get_mpz_t(), n - j)) {
      Formula term = dyadic_power<Formula>(j);
      acc = acc ? oplus(*acc, term) : term;
    }
  }
  return *acc;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Zero:
      out += '0';
      return;
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Neg:
      out += "neg ";
      print_into(f.arg(), out);
      return;
    case Formula::Kind::Half:
      out += "half ";
      print_into(f.arg(), out);
      return;
    case Formula::Kind::Monus:
      out += '(';
      print_into(f.lhs(), out);
      out += " - ";
      print_into(f.rhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// LTerm / LFormula

struct LTerm::Node {
  bool is_var;
  std::string name;
  std::vector<LTerm> args;
};

LTerm LTerm::var(std::string name) {
  if (!is_identifier(name)) throw Error("invalid variable name '" + name + "'");
  return LTerm(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

LTerm LTerm::apply(std::string function, std::vector<LTerm> args) {
  if (!is_identifier(function)) throw Error("invalid function name '" + function + "'");
  return LTerm(std::make_shared<const Node>(Node{false, std::move(function), std::move(args)}));
}

bool LTerm::is_var() const { return node_->is_var; }
const std::string& LTerm::name() const { return node_->name; }
const std::vector<LTerm>& LTerm::args() const { return node_->args; }

bool operator==(const LTerm& a, const LTerm& b) {
  if (a.node_ == b.node_) return true;
  return a.is_var() == b.is_var() && a.name() == b.name() && a.args() == b.args();
}

struct LFormula::Node {
  Kind kind;
  std::string name;
  std::vector<LTerm> args;
  std::shared_ptr<const Node> a, b;
  std::size_t depth = 0;
  std::size_t quantifiers = 0;
};

namespace {

template <class NodeT>
std::shared_ptr<const NodeT> make_lnode(NodeT n) {
  if (n.a) {
    n.depth = std::max(n.depth, n.a->depth + 1);
    n.quantifiers += n.a->quantifiers;
  }
  if (n.b) {
    n.depth = std::max(n.depth, n.b->depth + 1);
    n.quantifiers += n.b->quantifiers;
  }
  if (n.kind == LFormula::Kind::Inf || n.kind == LFormula::Kind::Sup) n.quantifiers += 1;
  return std::make_shared<const NodeT>(std::move(n));
}

}  // namespace

LFormula::LFormula() : node_(make_lnode(Node{Kind::Zero, {}, {}, nullptr, nullptr})) {}

LFormula LFormula::pred(std::string name, std::vector<LTerm> args) {
  if (!is_identifier(name)) throw Error("invalid predicate name '" + name + "'");
  return LFormula(make_lnode(Node{Kind::Pred, std::move(name), std::move(args), nullptr, nullptr}));
}
LFormula LFormula::neg(const LFormula& f) { return LFormula(make_lnode(Node{Kind::Neg, {}, {}, f.node_, nullptr})); }
LFormula LFormula::half(const LFormula& f) {
  return LFormula(make_lnode(Node{Kind::Half, {}, {}, f.node_, nullptr}));
}
LFormula LFormula::monus(const LFormula& l, const LFormula& r) {
  return LFormula(make_lnode(Node{Kind::Monus, {}, {}, l.node_, r.node_}));
}
LFormula LFormula::inf(std::string var, const LFormula& body) {
  if (!is_identifier(var)) throw Error("invalid variable name '" + var + "'");
  return LFormula(make_lnode(Node{Kind::Inf, std::move(var), {}, body.node_, nullptr}));
}
LFormula LFormula::sup(std::string var, const LFormula& body) {
  if (!is_identifier(var)) throw Error("invalid variable name '" + var + "'");
  return LFormula(make_lnode(Node{Kind::Sup, std::move(var), {}, body.node_, nullptr}));
}

LFormula::Kind LFormula::kind() const { return node_->kind; }
const std::string& LFormula::name() const { return node_->name; }
const std::vector<LTerm>& LFormula::args() const { return node_->args; }
LFormula LFormula::arg() const { return LFormula(node_->a); }
LFormula LFormula::lhs() const { return LFormula(node_->a); }
LFormula LFormula::rhs() const { return LFormula(node_->b); }
std::size_t LFormula::depth() const { return node_->depth; }
std::size_t LFormula::quantifier_count() const { return node_->quantifiers; }

bool operator==(const LFormula& x, const LFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind() || x.name() != y.name() || x.args() != y.args()) return false;
  switch (x.kind()) {
    case LFormula::Kind::Zero:
    case LFormula::Kind::Pred:
      return true;
    case LFormula::Kind::Neg:
    case LFormula::Kind::Half:
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup:
      return x.arg() == y.arg();
    case LFormula::Kind::Monus:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

namespace {

void term_vars(const LTerm& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) term_vars(a, out);
}

void lformula_free(const LFormula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case LFormula::Kind::Zero:
      return;
    case LFormula::Kind::Pred:
      for (const auto& a : f.args()) term_vars(a, out);
      return;
    case LFormula::Kind::Neg:
    case LFormula::Kind::Half:
      lformula_free(f.arg(), out);
      return;
    case LFormula::Kind::Monus:
      lformula_free(f.lhs(), out);
      lformula_free(f.rhs(), out);
      return;
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup: {
      std::set<std::string> inner;
      lformula_free(f.arg(), inner);
      inner.erase(f.name());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

void print_term(const LTerm& t, std::string& out) {
  out += t.name();
  if (t.is_var()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    print_term(t.args()[i], out);
  }
  out += ')';
}

void print_lformula(const LFormula& f, std::string& out) {
  switch (f.kind()) {
    case LFormula::Kind::Zero:
      out += '0';
      return;
    case LFormula::Kind::Pred:
      out += f.name();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ", ";
        print_term(f.args()[i], out);
      }
      out += ')';
      return;
    case LFormula::Kind::Neg:
      out += "neg ";
      print_lformula(f.arg(), out);
      return;
    case LFormula::Kind::Half:
      out += "half ";
      print_lformula(f.arg(), out);
      return;
    case LFormula::Kind::Monus:
      out += '(';
      print_lformula(f.lhs(), out);
      out += " - ";
      print_lformula(f.rhs(), out);
      out += ')';
      return;
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup:
      out += f.kind() == LFormula::Kind::Inf ? "inf " : "sup ";
      out += f.name();
      out += ". ";
      print_lformula(f.arg(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const LFormula& f) {
  std::set<std::string> out;
  lformula_free(f, out);
  return out;
}

std::string print(const LFormula& f) {
  std::string out;
  print_lformula(f, out);
  return out;
}

std::string print(const LTerm& t) {
  std::string out;
  print_term(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Number, Pow, LParen, RParen, Bar, Minus, Wedge, Vee, OPlus, Dot, Comma, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};
    char c = src_[pos_];
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, start, std::string(src_.substr(start, pos_ - start))};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string digits(src_.substr(start, pos_ - start));
      if (pos_ < src_.size() && src_[pos_] == '^') {
        if (digits != "2" || pos_ + 1 >= src_.size() || src_[pos_ + 1] != '-')
          throw ParseError(start, "unknown sugar '" + digits + "^'; only 2^-n is supported");
        pos_ += 2;
        std::size_t exp_start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (exp_start == pos_) throw ParseError(exp_start, "expected exponent after '2^-'");
        return {Tok::Pow, start, std::string(src_.substr(exp_start, pos_ - exp_start))};
      }
      return {Tok::Number, start, digits};
    }
    ++pos_;
    switch (c) {
      case '(':
        if (src_.substr(start, 3) == "(+)") {
          pos_ = start + 3;
          return {Tok::OPlus, start, "(+)"};
        }
        return {Tok::LParen, start, "("};
      case ')':
        return {Tok::RParen, start, ")"};
      case '|':
        return {Tok::Bar, start, "|"};
      case '-':
        return {Tok::Minus, start, "-"};
      case '.':
        return {Tok::Dot, start, "."};
      case ',':
        return {Tok::Comma, start, ","};
      case '/':
        if (pos_ < src_.size() && src_[pos_] == '\\') {
          ++pos_;
          return {Tok::Wedge, start, "/\\"};
        }
        break;
      case '\\':
        if (pos_ < src_.size() && src_[pos_] == '/') {
          ++pos_;
          return {Tok::Vee, start, "\\/"};
        }
        break;
      default:
        break;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

template <class F>
class Parser {
  static constexpr bool kFirstOrder = std::is_same_v<F, LFormula>;

 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  F parse_all() {
    F f = formula();
    if (cur_.kind != Tok::End) throw ParseError(cur_.offset, "trailing input '" + cur_.text + "'");
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw ParseError(cur_.offset, std::string("expected ") + what);
    advance();
  }

  F formula() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        if (t.text == "0") return F::zero();
        if (t.text == "1") return one<F>();
        throw ParseError(t.offset, "unknown constant '" + t.text + "'; use 0, 1 or 2^-n");
      case Tok::Pow: {
        advance();
        if (t.text.size() > 6) throw ParseError(t.offset, "exponent too large");
        return dyadic_power<F>(static_cast<unsigned>(std::stoul(t.text)));
      }
      case Tok::Bar: {
        advance();
        F a = formula();
        expect(Tok::Minus, "'-' inside |...|");
        F b = formula();
        expect(Tok::Bar, "closing '|'");
        return abs_diff(a, b);
      }
      case Tok::LParen: {
        advance();
        F a = formula();
        Token op = cur_;
        if (op.kind != Tok::Minus && op.kind != Tok::Wedge && op.kind != Tok::Vee && op.kind != Tok::OPlus)
          throw ParseError(op.offset, "expected binary operator '-', '/\\', '\\/' or '(+)'");
        advance();
        F b = formula();
        expect(Tok::RParen, "')'");
        if (op.kind == Tok::Wedge) return conj(a, b);
        if (op.kind == Tok::Vee) return disj(a, b);
        if (op.kind == Tok::OPlus) return oplus(a, b);
        return F::monus(a, b);
      }
      case Tok::Ident:
        return ident_formula();
      case Tok::End:
        throw ParseError(t.offset, "unexpected end of input");
      default:
        throw ParseError(t.offset, "unexpected '" + t.text + "'");
    }
  }

  F ident_formula() {
    Token t = cur_;
    advance();
    if (t.text == "neg") return F::neg(formula());
    if (t.text == "half") return F::half(formula());
    if (t.text == "inf" || t.text == "sup") {
      if constexpr (kFirstOrder) {
        if (cur_.kind != Tok::Ident || keywords().count(cur_.text))
          throw ParseError(cur_.offset, "expected bound variable");
        std::string var = cur_.text;
        advance();
        expect(Tok::Dot, "'.' after bound variable");
        F body = formula();
        return t.text == "inf" ? F::inf(var, body) : F::sup(var, body);
      } else {
        throw ParseError(t.offset, "quantifier in a propositional formula");
      }
    }
    if constexpr (kFirstOrder) {
      if (cur_.kind != Tok::LParen) throw ParseError(cur_.offset, "expected '(' after predicate '" + t.text + "'");
      return F::pred(t.text, term_list());
    } else {
      return F::atom(t.text);
    }
  }

  std::vector<LTerm> term_list() {
    expect(Tok::LParen, "'('");
    std::vector<LTerm> out;
    if (cur_.kind == Tok::RParen) {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(term());
      if (cur_.kind == Tok::Comma) {
        advance();
        continue;
      }
      expect(Tok::RParen, "')' or ',' in argument list");
      return out;
    }
  }

  LTerm term() {
    if (cur_.kind != Tok::Ident || keywords().count(cur_.text)) throw ParseError(cur_.offset, "expected term");
    std::string name = cur_.text;
    advance();
    if (cur_.kind == Tok::LParen) return LTerm::apply(name, term_list());
    return LTerm::var(name);
  }

  Lexer lex_;
  Token cur_{Tok::End, 0, {}};
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser<Formula>(text).parse_all(); }
LFormula parse_lformula(std::string_view text) { return Parser<LFormula>(text).parse_all(); }

// ---------------------------------------------------------------------------
// Signature

Signature::Signature() { predicates_["d"] = SymbolSpec{"d", 2, {Rational(1), Rational(1)}}; }

namespace {

void validate_spec(const SymbolSpec& s) {
  if (!is_identifier(s.name)) throw Error("invalid symbol name '" + s.name + "'");
  if (s.lipschitz.size() != s.arity)
    throw Error("symbol '" + s.name + "' needs one Lipschitz constant per argument");
  for (const auto& l : s.lipschitz)
    if (sgn(l) <= 0) throw Error("symbol '" + s.name + "' has a non-positive Lipschitz constant");
}

}  // namespace

void Signature::add_function(SymbolSpec spec) {
  validate_spec(spec);
  if (functions_.count(spec.name) || predicates_.count(spec.name))
    throw Error("duplicate symbol '" + spec.name + "'");
  functions_[spec.name] = std::move(spec);
}

void Signature::add_predicate(SymbolSpec spec) {
  validate_spec(spec);
  if (spec.name == "d") {
    if (spec.arity != 2 || spec.lipschitz[0] != 1 || spec.lipschitz[1] != 1)
      throw Error("the metric symbol d must be binary with Lipschitz constant 1");
    return;
  }
  if (functions_.count(spec.name) || predicates_.count(spec.name))
    throw Error("duplicate symbol '" + spec.name + "'");
  predicates_[spec.name] = std::move(spec);
}

const SymbolSpec* Signature::function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

const SymbolSpec* Signature::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

void Signature::check(const LTerm& t) const {
  if (t.is_var()) return;
  const SymbolSpec* s = function(t.name());
  if (!s) throw Error("unknown function symbol '" + t.name() + "'");
  if (s->arity != t.args().size())
    throw Error("function '" + t.name() + "' expects " + std::to_string(s->arity) + " arguments");
  for (const auto& a : t.args()) check(a);
}

void Signature::check(const LFormula& f) const {
  switch (f.kind()) {
    case LFormula::Kind::Zero:
      return;
    case LFormula::Kind::Pred: {
      const SymbolSpec* s = predicate(f.name());
      if (!s) throw Error("unknown predicate symbol '" + f.name() + "'");
      if (s->arity != f.args().size())
        throw Error("predicate '" + f.name() + "' expects " + std::to_string(s->arity) + " arguments");
      for (const auto& a : f.args()) check(a);
      return;
    }
    case LFormula::Kind::Neg:
    case LFormula::Kind::Half:
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup:
      check(f.arg());
      return;
    case LFormula::Kind::Monus:
      check(f.lhs());
      check(f.rhs());
      return;
  }
}

}  // namespace contlog
