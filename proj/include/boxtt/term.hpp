#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace boxtt {

/// Exact natural number. Never wraps; subtraction is only ever done through
/// the object language's `pred`, which bottoms out at zero.
using Nat = boost::multiprecision::cpp_int;

struct ChoiceName {
  std::uint64_t id = 0;
  friend auto operator<=>(const ChoiceName&, const ChoiceName&) = default;
};

enum class Kind : std::uint8_t {
  Var,
  Lam,
  App,
  Pair,
  Spread,
  Inl,
  Inr,
  Decide,
  Num,
  Succ,
  NatRec,
  Fix,
  Let,
  Star,
  Name,
  Read,
  Choose,
  Fresh,
  // Type constructors: inert values.
  Pi,
  Sum,
  Set,
  Union,
  Eq,
  Universe,
  NatType,
  Isect,
  QSquash,
  NoRead,
  NoWrite,
  Pure,
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term node.
///
/// Every production shares one node layout: a kind, up to two binder names,
/// up to three children, and a numeric payload (Num value, Universe level or
/// choice name). Which binders scope over which child is fixed per kind; see
/// `binds()`.
///
///   Lam(x, body)              vars {x}     kids {body}
///   Spread(t, x, y, u)        vars {x, y}  kids {t, u}
///   Decide(t, x, a, y, b)     vars {x, y}  kids {t, a, b}
///   Let(x, t, u)              vars {x}     kids {t, u}
///   Fresh(x, t)               vars {x}     kids {t}
///   Pi/Sum/Set(x, A, B)       vars {x}     kids {A, B}
///
/// Free variables and effect flags are computed once at construction.
class Term {
 public:
  Kind kind() const { return kind_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<TermPtr>& kids() const { return kids_; }
  const TermPtr& kid(std::size_t i) const { return kids_.at(i); }
  const std::string& var(std::size_t i = 0) const { return vars_.at(i); }

  /// Num value or Universe level.
  const Nat& number() const { return number_; }
  ChoiceName choice_name() const { return name_; }

  /// Sorted, deduplicated free variables.
  const std::vector<std::string>& free_vars() const { return free_; }
  bool closed() const { return free_.empty(); }
  bool is_free(std::string_view x) const;

  bool has_names() const { return has_names_; }
  bool has_read() const { return has_read_; }
  bool has_write() const { return has_write_; }

  bool is_value() const;
  bool is_type() const;

  /// True when the child at `kid` is in the scope of binder `var`.
  bool binds(std::size_t kid, std::size_t var) const;

  static TermPtr make(Kind kind, std::vector<std::string> vars, std::vector<TermPtr> kids,
                      Nat number = 0, ChoiceName name = {});

  /// Same kind and payload, new binders and children.
  TermPtr rebuild(std::vector<std::string> vars, std::vector<TermPtr> kids) const;

 private:
  struct Token {};

 public:
  Term(Token, Kind kind, std::vector<std::string> vars, std::vector<TermPtr> kids, Nat number,
       ChoiceName name);

 private:
  Kind kind_;
  std::vector<std::string> vars_;
  std::vector<TermPtr> kids_;
  Nat number_;
  ChoiceName name_;
  std::vector<std::string> free_;
  bool has_names_ = false;
  bool has_read_ = false;
  bool has_write_ = false;
};

std::string_view kind_name(Kind kind);

// Smart constructors, one per production.
TermPtr var(std::string name);
TermPtr lam(std::string x, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr app(TermPtr f, TermPtr a, TermPtr b);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr spread(TermPtr scrut, std::string x, std::string y, TermPtr body);
TermPtr inl(TermPtr t);
TermPtr inr(TermPtr t);
TermPtr decide(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right);
TermPtr num(Nat n);
TermPtr succ(TermPtr t);
TermPtr natrec(TermPtr scrut, TermPtr zero_case, TermPtr succ_case);
TermPtr fix(TermPtr t);
TermPtr let(std::string x, TermPtr bound, TermPtr body);
TermPtr star();
TermPtr name(ChoiceName k);
TermPtr read(TermPtr t);
TermPtr choose(TermPtr target, TermPtr value);
TermPtr fresh(std::string x, TermPtr body);
TermPtr pi(std::string x, TermPtr a, TermPtr b);
TermPtr sum(std::string x, TermPtr a, TermPtr b);
TermPtr set(std::string x, TermPtr a, TermPtr b);
TermPtr union_type(TermPtr a, TermPtr b);
TermPtr eq_type(TermPtr t, TermPtr a, TermPtr b);
TermPtr universe(Nat level);
TermPtr nat_type();
TermPtr isect(TermPtr a, TermPtr b);
TermPtr qsquash(TermPtr t);
TermPtr noread_type();
TermPtr nowrite_type();
TermPtr pure_type();

/// Exact structural equality, binder names included.
bool operator==(const Term& a, const Term& b);
bool same(const TermPtr& a, const TermPtr& b);

bool alpha_equivalent(const TermPtr& a, const TermPtr& b);

/// A variable name based on `base` that is not in `avoid`.
std::string fresh_var(std::string_view base, const std::vector<std::string>& avoid);

/// Capture-avoiding substitution t[x\u].
TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& u);

/// Simultaneous capture-avoiding substitution.
TermPtr subst(const TermPtr& t, const std::vector<std::pair<std::string, TermPtr>>& sigma);

/// No choice name and no fresh operator anywhere in t.
bool nonames(const TermPtr& t);
/// No read operator.
bool noread(const TermPtr& t);
/// No choose and no fresh operator.
bool nowrite(const TermPtr& t);

bool is_numeral(const TermPtr& t);

}  // namespace boxtt
