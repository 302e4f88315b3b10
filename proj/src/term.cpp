#include "boxtt/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxtt {

namespace {

// kid -> bitmask over vars (bit j set when vars[j] scopes over that kid).
std::uint8_t binder_mask(Kind kind, std::size_t kid) {
  switch (kind) {
    case Kind::Lam:
    case Kind::Fresh:
      return kid == 0 ? 0b01 : 0;
    case Kind::Spread:
      return kid == 1 ? 0b11 : 0;
    case Kind::Decide:
      return kid == 1 ? 0b01 : kid == 2 ? 0b10 : 0;
    case Kind::Let:
    case Kind::Pi:
    case Kind::Sum:
    case Kind::Set:
      return kid == 1 ? 0b01 : 0;
    default:
      return 0;
  }
}

struct Shape {
  std::size_t vars;
  std::size_t kids;
};

Shape shape_of(Kind kind) {
  switch (kind) {
    case Kind::Var: return {1, 0};
    case Kind::Lam: return {1, 1};
    case Kind::App: return {0, 2};
    case Kind::Pair: return {0, 2};
    case Kind::Spread: return {2, 2};
    case Kind::Inl:
    case Kind::Inr: return {0, 1};
    case Kind::Decide: return {2, 3};
    case Kind::Num: return {0, 0};
    case Kind::Succ: return {0, 1};
    case Kind::NatRec: return {0, 3};
    case Kind::Fix: return {0, 1};
    case Kind::Let: return {1, 2};
    case Kind::Star: return {0, 0};
    case Kind::Name: return {0, 0};
    case Kind::Read: return {0, 1};
    case Kind::Choose: return {0, 2};
    case Kind::Fresh: return {1, 1};
    case Kind::Pi:
    case Kind::Sum:
    case Kind::Set: return {1, 2};
    case Kind::Union: return {0, 2};
    case Kind::Eq: return {0, 3};
    case Kind::Universe:
    case Kind::NatType: return {0, 0};
    case Kind::Isect: return {0, 2};
    case Kind::QSquash: return {0, 1};
    case Kind::NoRead:
    case Kind::NoWrite:
    case Kind::Pure: return {0, 0};
  }
  return {0, 0};
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Term::Term(Token, Kind kind, std::vector<std::string> vars, std::vector<TermPtr> kids,
           Nat number, ChoiceName name)
    : kind_(kind),
      vars_(std::move(vars)),
      kids_(std::move(kids)),
      number_(std::move(number)),
      name_(name) {
  const Shape s = shape_of(kind_);
  if (vars_.size() != s.vars || kids_.size() != s.kids) {
    throw std::invalid_argument("malformed term node: " + std::string(kind_name(kind_)));
  }
  for (const auto& k : kids_) {
    if (!k) throw std::invalid_argument("null child in " + std::string(kind_name(kind_)));
  }

  has_names_ = kind_ == Kind::Name || kind_ == Kind::Fresh;
  has_read_ = kind_ == Kind::Read;
  has_write_ = kind_ == Kind::Choose || kind_ == Kind::Fresh;

  if (kind_ == Kind::Var) {
    free_.push_back(vars_[0]);
    return;
  }
  for (std::size_t i = 0; i < kids_.size(); ++i) {
    const Term& k = *kids_[i];
    has_names_ = has_names_ || k.has_names_;
    has_read_ = has_read_ || k.has_read_;
    has_write_ = has_write_ || k.has_write_;
    if (k.free_.empty()) continue;
    const std::uint8_t mask = binder_mask(kind_, i);
    if (mask == 0) {
      free_ = merge_sorted(free_, k.free_);
      continue;
    }
    std::vector<std::string> kept;
    for (const auto& v : k.free_) {
      bool bound = false;
      for (std::size_t j = 0; j < vars_.size(); ++j) {
        if ((mask >> j & 1) && vars_[j] == v) bound = true;
      }
      if (!bound) kept.push_back(v);
    }
    free_ = merge_sorted(free_, kept);
  }
}

TermPtr Term::make(Kind kind, std::vector<std::string> vars, std::vector<TermPtr> kids,
                   Nat number, ChoiceName name) {
  return std::make_shared<const Term>(Token{}, kind, std::move(vars), std::move(kids),
                                      std::move(number), name);
}

TermPtr Term::rebuild(std::vector<std::string> vars, std::vector<TermPtr> kids) const {
  return make(kind_, std::move(vars), std::move(kids), number_, name_);
}

bool Term::is_free(std::string_view x) const {
  return std::binary_search(free_.begin(), free_.end(), x);
}

bool Term::binds(std::size_t kid, std::size_t var) const {
  return (binder_mask(kind_, kid) >> var) & 1;
}

bool Term::is_type() const {
  switch (kind_) {
    case Kind::Pi:
    case Kind::Sum:
    case Kind::Set:
    case Kind::Union:
    case Kind::Eq:
    case Kind::Universe:
    case Kind::NatType:
    case Kind::Isect:
    case Kind::QSquash:
    case Kind::NoRead:
    case Kind::NoWrite:
    case Kind::Pure:
      return true;
    default:
      return false;
  }
}

bool Term::is_value() const {
  switch (kind_) {
    case Kind::Lam:
    case Kind::Star:
    case Kind::Num:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Pair:
    case Kind::Name:
      return true;
    default:
      return is_type();
  }
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Var: return "var";
    case Kind::Lam: return "lam";
    case Kind::App: return "app";
    case Kind::Pair: return "pair";
    case Kind::Spread: return "spread";
    case Kind::Inl: return "inl";
    case Kind::Inr: return "inr";
    case Kind::Decide: return "decide";
    case Kind::Num: return "num";
    case Kind::Succ: return "succ";
    case Kind::NatRec: return "natrec";
    case Kind::Fix: return "fix";
    case Kind::Let: return "let";
    case Kind::Star: return "star";
    case Kind::Name: return "name";
    case Kind::Read: return "read";
    case Kind::Choose: return "choose";
    case Kind::Fresh: return "fresh";
    case Kind::Pi: return "pi";
    case Kind::Sum: return "sum";
    case Kind::Set: return "set";
    case Kind::Union: return "union";
    case Kind::Eq: return "eq";
    case Kind::Universe: return "univ";
    case Kind::NatType: return "nat";
    case Kind::Isect: return "isect";
    case Kind::QSquash: return "qsquash";
    case Kind::NoRead: return "noread";
    case Kind::NoWrite: return "nowrite";
    case Kind::Pure: return "pure";
  }
  return "?";
}

TermPtr var(std::string name) { return Term::make(Kind::Var, {std::move(name)}, {}); }
TermPtr lam(std::string x, TermPtr body) {
  return Term::make(Kind::Lam, {std::move(x)}, {std::move(body)});
}
TermPtr app(TermPtr f, TermPtr a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
TermPtr app(TermPtr f, TermPtr a, TermPtr b) {
  return app(app(std::move(f), std::move(a)), std::move(b));
}
TermPtr pair(TermPtr a, TermPtr b) {
  return Term::make(Kind::Pair, {}, {std::move(a), std::move(b)});
}
TermPtr spread(TermPtr scrut, std::string x, std::string y, TermPtr body) {
  return Term::make(Kind::Spread, {std::move(x), std::move(y)}, {std::move(scrut), std::move(body)});
}
TermPtr inl(TermPtr t) { return Term::make(Kind::Inl, {}, {std::move(t)}); }
TermPtr inr(TermPtr t) { return Term::make(Kind::Inr, {}, {std::move(t)}); }
TermPtr decide(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right) {
  return Term::make(Kind::Decide, {std::move(x), std::move(y)},
                    {std::move(scrut), std::move(left), std::move(right)});
}
TermPtr num(Nat n) { return Term::make(Kind::Num, {}, {}, std::move(n)); }
TermPtr succ(TermPtr t) { return Term::make(Kind::Succ, {}, {std::move(t)}); }
TermPtr natrec(TermPtr scrut, TermPtr zero_case, TermPtr succ_case) {
  return Term::make(Kind::NatRec, {}, {std::move(scrut), std::move(zero_case), std::move(succ_case)});
}
TermPtr fix(TermPtr t) { return Term::make(Kind::Fix, {}, {std::move(t)}); }
TermPtr let(std::string x, TermPtr bound, TermPtr body) {
  return Term::make(Kind::Let, {std::move(x)}, {std::move(bound), std::move(body)});
}
TermPtr star() {
  static const TermPtr s = Term::make(Kind::Star, {}, {});
  return s;
}
TermPtr name(ChoiceName k) { return Term::make(Kind::Name, {}, {}, 0, k); }
TermPtr read(TermPtr t) { return Term::make(Kind::Read, {}, {std::move(t)}); }
TermPtr choose(TermPtr target, TermPtr value) {
  return Term::make(Kind::Choose, {}, {std::move(target), std::move(value)});
}
TermPtr fresh(std::string x, TermPtr body) {
  return Term::make(Kind::Fresh, {std::move(x)}, {std::move(body)});
}
TermPtr pi(std::string x, TermPtr a, TermPtr b) {
  return Term::make(Kind::Pi, {std::move(x)}, {std::move(a), std::move(b)});
}
TermPtr sum(std::string x, TermPtr a, TermPtr b) {
  return Term::make(Kind::Sum, {std::move(x)}, {std::move(a), std::move(b)});
}
TermPtr set(std::string x, TermPtr a, TermPtr b) {
  return Term::make(Kind::Set, {std::move(x)}, {std::move(a), std::move(b)});
}
TermPtr union_type(TermPtr a, TermPtr b) {
  return Term::make(Kind::Union, {}, {std::move(a), std::move(b)});
}
TermPtr eq_type(TermPtr t, TermPtr a, TermPtr b) {
  return Term::make(Kind::Eq, {}, {std::move(t), std::move(a), std::move(b)});
}
TermPtr universe(Nat level) { return Term::make(Kind::Universe, {}, {}, std::move(level)); }
TermPtr nat_type() { return Term::make(Kind::NatType, {}, {}); }
TermPtr isect(TermPtr a, TermPtr b) {
  return Term::make(Kind::Isect, {}, {std::move(a), std::move(b)});
}
TermPtr qsquash(TermPtr t) { return Term::make(Kind::QSquash, {}, {std::move(t)}); }
TermPtr noread_type() { return Term::make(Kind::NoRead, {}, {}); }
TermPtr nowrite_type() { return Term::make(Kind::NoWrite, {}, {}); }
TermPtr pure_type() { return Term::make(Kind::Pure, {}, {}); }

bool operator==(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.vars() != b.vars() || a.number() != b.number() ||
      a.choice_name() != b.choice_name()) {
    return false;
  }
  for (std::size_t i = 0; i < a.kids().size(); ++i) {
    if (!(*a.kids()[i] == *b.kids()[i])) return false;
  }
  return true;
}

bool same(const TermPtr& a, const TermPtr& b) { return *a == *b; }

namespace {

bool alpha_eq(const Term& a, const Term& b, std::vector<const std::string*>& env_a,
              std::vector<const std::string*>& env_b) {
  if (a.kind() != b.kind() || a.number() != b.number() || a.choice_name() != b.choice_name()) {
    return false;
  }
  if (a.kind() == Kind::Var) {
    auto index_of = [](const std::vector<const std::string*>& env, const std::string& x) {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (*env[i] == x) return static_cast<std::ptrdiff_t>(i);
      }
      return std::ptrdiff_t{-1};
    };
    const auto ia = index_of(env_a, a.var());
    const auto ib = index_of(env_b, b.var());
    if (ia != ib) return false;
    return ia >= 0 || a.var() == b.var();
  }
  for (std::size_t i = 0; i < a.kids().size(); ++i) {
    const std::size_t mark = env_a.size();
    for (std::size_t j = 0; j < a.vars().size(); ++j) {
      if (a.binds(i, j)) {
        env_a.push_back(&a.vars()[j]);
        env_b.push_back(&b.vars()[j]);
      }
    }
    const bool ok = alpha_eq(*a.kids()[i], *b.kids()[i], env_a, env_b);
    env_a.resize(mark);
    env_b.resize(mark);
    if (!ok) return false;
  }
  return true;
}

std::string_view root_of(std::string_view base) {
  const auto us = base.rfind('_');
  if (us == std::string_view::npos || us + 1 == base.size()) return base;
  for (std::size_t i = us + 1; i < base.size(); ++i) {
    if (base[i] < '0' || base[i] > '9') return base;
  }
  return base.substr(0, us);
}

}  // namespace

bool alpha_equivalent(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  std::vector<const std::string*> env_a, env_b;
  return alpha_eq(*a, *b, env_a, env_b);
}

std::string fresh_var(std::string_view base, const std::vector<std::string>& avoid) {
  auto taken = [&](const std::string& s) {
    return std::find(avoid.begin(), avoid.end(), s) != avoid.end();
  };
  std::string candidate(base);
  if (!candidate.empty() && !taken(candidate)) return candidate;
  const std::string root(root_of(base.empty() ? std::string_view("v") : base));
  for (std::size_t i = 1;; ++i) {
    candidate = root + "_" + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

TermPtr subst(const TermPtr& t, const std::vector<std::pair<std::string, TermPtr>>& sigma) {
  std::vector<std::pair<std::string, TermPtr>> live;
  for (const auto& entry : sigma) {
    if (t->is_free(entry.first)) live.push_back(entry);
  }
  if (live.empty()) return t;

  if (t->kind() == Kind::Var) return live.front().second;

  std::vector<std::string> vars = t->vars();
  std::vector<TermPtr> kids = t->kids();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    std::vector<std::pair<std::string, TermPtr>> local;
    for (const auto& entry : live) {
      bool shadowed = false;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (t->binds(i, j) && vars[j] == entry.first) shadowed = true;
      }
      if (!shadowed && kids[i]->is_free(entry.first)) local.push_back(entry);
    }
    if (local.empty()) continue;

    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (!t->binds(i, j)) continue;
      const bool captures = std::any_of(local.begin(), local.end(),
                                        [&](const auto& e) { return e.second->is_free(vars[j]); });
      if (!captures) continue;
      std::vector<std::string> avoid = kids[i]->free_vars();
      avoid.insert(avoid.end(), vars.begin(), vars.end());
      for (const auto& e : local) {
        avoid.push_back(e.first);
        avoid.insert(avoid.end(), e.second->free_vars().begin(), e.second->free_vars().end());
      }
      const std::string renamed = fresh_var(vars[j], avoid);
      // A later binder of the same name over the same child shadows this one.
      bool shadowed_later = false;
      for (std::size_t k = j + 1; k < vars.size(); ++k) {
        if (t->binds(i, k) && vars[k] == vars[j]) shadowed_later = true;
      }
      if (!shadowed_later) kids[i] = subst(kids[i], {{vars[j], var(renamed)}});
      vars[j] = renamed;
    }
    kids[i] = subst(kids[i], local);
  }
  return t->rebuild(std::move(vars), std::move(kids));
}

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& u) {
  return subst(t, std::vector<std::pair<std::string, TermPtr>>{{x, u}});
}

bool nonames(const TermPtr& t) { return !t->has_names(); }
bool noread(const TermPtr& t) { return !t->has_read(); }
bool nowrite(const TermPtr& t) { return !t->has_write(); }

bool is_numeral(const TermPtr& t) { return t->kind() == Kind::Num; }

}  // namespace boxtt
