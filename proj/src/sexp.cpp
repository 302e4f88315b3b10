#include "boxtt/sexp.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>

#include "boxtt/sugar.hpp"

namespace boxtt {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

std::string_view SExpr::head() const {
  if (!is_list || items.empty() || items.front().is_list) return {};
  return items.front().atom;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr one() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    const char c = text_[pos_];
    if (c == ')') throw ParseError(ParseErrorKind::Syntax, line_, col_, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip();
        if (pos_ >= text_.size()) {
          throw ParseError(ParseErrorKind::Syntax, e.line, e.column, "unclosed '('");
        }
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(one());
      }
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

[[noreturn]] void fail(ParseErrorKind kind, const SExpr& at, const std::string& what) {
  throw ParseError(kind, at.line, at.column, what);
}

constexpr std::array<std::string_view, 7> kReservedAtoms = {"star",   "true",    "false", "nat",
                                                            "noread", "nowrite", "pure"};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Nat nat_from(const SExpr& e) {
  if (e.is_list || !all_digits(e.atom)) fail(ParseErrorKind::Syntax, e, "expected a natural number");
  return Nat(e.atom);
}

std::uint64_t u64_from(const SExpr& e) {
  const Nat n = nat_from(e);
  if (n > std::numeric_limits<std::uint64_t>::max()) {
    fail(ParseErrorKind::Syntax, e, "choice name out of range");
  }
  return static_cast<std::uint64_t>(n);
}

std::string ident_from(const SExpr& e) {
  if (e.is_list || !valid_identifier(e.atom)) {
    fail(ParseErrorKind::Syntax, e, "expected a variable name");
  }
  return e.atom;
}

bool bool_from(const SExpr& e) {
  if (e.is_atom("true")) return true;
  if (e.is_atom("false")) return false;
  fail(ParseErrorKind::Syntax, e, "expected true or false");
}

using Builder = std::function<TermPtr(const SExpr&)>;

struct FormSpec {
  std::size_t arity;
  Builder build;
};

TermPtr t_at(const SExpr& e, std::size_t i) { return term_from_sexpr(e.items[i]); }

const std::map<std::string, FormSpec, std::less<>>& forms() {
  static const std::map<std::string, FormSpec, std::less<>> table = {
      {"lam", {2, [](const SExpr& e) { return lam(ident_from(e.items[1]), t_at(e, 2)); }}},
      {"pair", {2, [](const SExpr& e) { return pair(t_at(e, 1), t_at(e, 2)); }}},
      {"spread",
       {4,
        [](const SExpr& e) {
          return spread(t_at(e, 1), ident_from(e.items[2]), ident_from(e.items[3]), t_at(e, 4));
        }}},
      {"inl", {1, [](const SExpr& e) { return inl(t_at(e, 1)); }}},
      {"inr", {1, [](const SExpr& e) { return inr(t_at(e, 1)); }}},
      {"decide",
       {5,
        [](const SExpr& e) {
          return decide(t_at(e, 1), ident_from(e.items[2]), t_at(e, 3), ident_from(e.items[4]),
                        t_at(e, 5));
        }}},
      {"num", {1, [](const SExpr& e) { return num(nat_from(e.items[1])); }}},
      {"succ", {1, [](const SExpr& e) { return succ(t_at(e, 1)); }}},
      {"natrec", {3, [](const SExpr& e) { return natrec(t_at(e, 1), t_at(e, 2), t_at(e, 3)); }}},
      {"fix", {1, [](const SExpr& e) { return fix(t_at(e, 1)); }}},
      {"let", {3, [](const SExpr& e) { return let(ident_from(e.items[1]), t_at(e, 2), t_at(e, 3)); }}},
      {"name", {1, [](const SExpr& e) { return name(ChoiceName{u64_from(e.items[1])}); }}},
      {"read", {1, [](const SExpr& e) { return read(t_at(e, 1)); }}},
      {"choose", {2, [](const SExpr& e) { return choose(t_at(e, 1), t_at(e, 2)); }}},
      {"fresh", {2, [](const SExpr& e) { return fresh(ident_from(e.items[1]), t_at(e, 2)); }}},
      // Derived forms.
      {"ite", {3, [](const SExpr& e) { return ite(t_at(e, 1), t_at(e, 2), t_at(e, 3)); }}},
      {"seq", {2, [](const SExpr& e) { return seq(t_at(e, 1), t_at(e, 2)); }}},
      {"iflt",
       {4, [](const SExpr& e) { return iflt(t_at(e, 1), t_at(e, 2), t_at(e, 3), t_at(e, 4)); }}},
      {"neg", {1, [](const SExpr& e) { return neg(t_at(e, 1)); }}},
      {"iszero", {1, [](const SExpr& e) { return iszero(t_at(e, 1)); }}},
      {"pred", {1, [](const SExpr& e) { return pred(t_at(e, 1)); }}},
      {"sub", {2, [](const SExpr& e) { return sub(t_at(e, 1), t_at(e, 2)); }}},
      {"lt", {2, [](const SExpr& e) { return lt(t_at(e, 1), t_at(e, 2)); }}},
      // Type constructors.
      {"pi", {3, [](const SExpr& e) { return pi(ident_from(e.items[1]), t_at(e, 2), t_at(e, 3)); }}},
      {"sum", {3, [](const SExpr& e) { return sum(ident_from(e.items[1]), t_at(e, 2), t_at(e, 3)); }}},
      {"set", {3, [](const SExpr& e) { return set(ident_from(e.items[1]), t_at(e, 2), t_at(e, 3)); }}},
      {"union", {2, [](const SExpr& e) { return union_type(t_at(e, 1), t_at(e, 2)); }}},
      {"eq", {3, [](const SExpr& e) { return eq_type(t_at(e, 1), t_at(e, 2), t_at(e, 3)); }}},
      {"univ", {1, [](const SExpr& e) { return universe(nat_from(e.items[1])); }}},
      {"isect", {2, [](const SExpr& e) { return isect(t_at(e, 1), t_at(e, 2)); }}},
      {"qsquash", {1, [](const SExpr& e) { return qsquash(t_at(e, 1)); }}},
  };
  return table;
}

void print_into(const Term& t, std::string& out) {
  const auto open = [&](std::string_view head) {
    out += '(';
    out += head;
  };
  switch (t.kind()) {
    case Kind::Var:
      out += t.var();
      return;
    case Kind::Num:
      out += "(num ";
      out += to_string(t.number());
      out += ')';
      return;
    case Kind::Universe:
      out += "(univ ";
      out += to_string(t.number());
      out += ')';
      return;
    case Kind::Name:
      out += "(name ";
      out += std::to_string(t.choice_name().id);
      out += ')';
      return;
    case Kind::Star:
    case Kind::NatType:
    case Kind::NoRead:
    case Kind::NoWrite:
    case Kind::Pure:
      out += kind_name(t.kind());
      return;
    default:
      break;
  }
  open(kind_name(t.kind()));
  // Binder placement per form: lam/fresh x t, let x t u, spread t x y u,
  // decide t x a y b, pi/sum/set x A B.
  auto emit_var = [&](std::size_t j) {
    out += ' ';
    out += t.var(j);
  };
  auto emit_kid = [&](std::size_t i) {
    out += ' ';
    print_into(*t.kid(i), out);
  };
  switch (t.kind()) {
    case Kind::Lam:
    case Kind::Fresh:
      emit_var(0);
      emit_kid(0);
      break;
    case Kind::Let:
    case Kind::Pi:
    case Kind::Sum:
    case Kind::Set:
      emit_var(0);
      emit_kid(0);
      emit_kid(1);
      break;
    case Kind::Spread:
      emit_kid(0);
      emit_var(0);
      emit_var(1);
      emit_kid(1);
      break;
    case Kind::Decide:
      emit_kid(0);
      emit_var(0);
      emit_kid(1);
      emit_var(1);
      emit_kid(2);
      break;
    default:
      for (std::size_t i = 0; i < t.kids().size(); ++i) emit_kid(i);
      break;
  }
  out += ')';
}

}  // namespace

bool valid_identifier(std::string_view s) {
  if (s.empty() || (s[0] >= '0' && s[0] <= '9')) return false;
  if (std::find(kReservedAtoms.begin(), kReservedAtoms.end(), s) != kReservedAtoms.end()) {
    return false;
  }
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == '%' || c == '(' || c == ')' || c == ';' || c == '"' ||
           std::isspace(static_cast<unsigned char>(c));
  });
}

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).all(); }

TermPtr term_from_sexpr(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "star") return star();
    if (e.atom == "true") return btrue();
    if (e.atom == "false") return bfalse();
    if (e.atom == "nat") return nat_type();
    if (e.atom == "noread") return noread_type();
    if (e.atom == "nowrite") return nowrite_type();
    if (e.atom == "pure") return pure_type();
    return var(ident_from(e));
  }
  if (e.items.empty()) fail(ParseErrorKind::Syntax, e, "empty form");
  const std::string_view head = e.head();
  if (head.empty()) fail(ParseErrorKind::UnknownForm, e, "form must start with a keyword");
  if (head == "app") {
    if (e.items.size() < 3) fail(ParseErrorKind::Arity, e, "app expects at least 2 arguments");
    TermPtr acc = t_at(e, 1);
    for (std::size_t i = 2; i < e.items.size(); ++i) acc = app(acc, t_at(e, i));
    return acc;
  }
  const auto& table = forms();
  auto it = table.find(head);
  if (it == table.end()) fail(ParseErrorKind::UnknownForm, e, "unknown form '" + std::string(head) + "'");
  if (e.items.size() != it->second.arity + 1) {
    fail(ParseErrorKind::Arity, e,
         std::string(head) + " expects " + std::to_string(it->second.arity) + " argument(s), got " +
             std::to_string(e.items.size() - 1));
  }
  return it->second.build(e);
}

TermPtr parse_term(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.size() != 1) {
    throw ParseError(ParseErrorKind::Syntax, 1, 1,
                     "expected exactly one term, found " + std::to_string(all.size()));
  }
  return term_from_sexpr(all.front());
}

std::string print(const TermPtr& t) {
  std::string out;
  print_into(*t, out);
  return out;
}

RefWorld world_from_sexpr(const SExpr& e) {
  if (e.head() != "world") fail(ParseErrorKind::UnknownForm, e, "expected (world ...)");
  std::vector<Cell> cells;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& c = e.items[i];
    if (c.head() != "cell") fail(ParseErrorKind::UnknownForm, c, "expected (cell ...)");
    if (c.items.size() != 5) fail(ParseErrorKind::Arity, c, "cell expects 4 fields");
    if (!c.items[2].is_atom("nat")) fail(ParseErrorKind::Syntax, c.items[2], "unknown restriction");
    cells.push_back(Cell{ChoiceName{u64_from(c.items[1])}, nat_only(), nat_from(c.items[3]),
                         bool_from(c.items[4])});
  }
  try {
    return RefWorld(std::move(cells));
  } catch (const std::invalid_argument& ex) {
    fail(ParseErrorKind::Syntax, e, ex.what());
  }
}

RefWorld parse_world(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.size() != 1) throw ParseError(ParseErrorKind::Syntax, 1, 1, "expected one world literal");
  return world_from_sexpr(all.front());
}

std::string print_world(const RefWorld& w) {
  std::string out = "(world";
  for (const auto& c : w.cells()) {
    out += " (cell " + std::to_string(c.name.id) + " nat " + to_string(c.value) +
           (c.mutable_ ? " true)" : " false)");
  }
  out += ')';
  return out;
}

SourceProgram parse_program(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.empty()) throw ParseError(ParseErrorKind::Syntax, 1, 1, "empty program");
  if (all.size() > 2) fail(ParseErrorKind::Syntax, all[2], "trailing forms after program");
  SourceProgram p{term_from_sexpr(all[0]), std::nullopt};
  if (all.size() == 2) p.world = world_from_sexpr(all[1]);
  return p;
}

std::string to_string(const Nat& n) { return n.str(); }

}  // namespace boxtt
