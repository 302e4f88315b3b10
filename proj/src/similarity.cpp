#include "boxtt/similarity.hpp"

#include "boxtt/continuity.hpp"

namespace boxtt {

namespace {

bool related(const TermPtr& a, const TermPtr& b, const TermPtr& left, const TermPtr& right) {
  if (a->kind() == Kind::Lam && b->kind() == Kind::Lam && alpha_equivalent(a, left) &&
      alpha_equivalent(b, right)) {
    return true;
  }
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Kind::Name:
    case Kind::Fresh:
      return false;
    case Kind::Var:
      return a->var() == b->var();
    case Kind::Num:
    case Kind::Universe:
      return a->number() == b->number();
    default:
      break;
  }
  if (a->vars() != b->vars()) return false;
  for (std::size_t i = 0; i < a->kids().size(); ++i) {
    if (!related(a->kid(i), b->kid(i), left, right)) return false;
  }
  return true;
}

}  // namespace

bool sim_diff(const TermPtr& t1, const TermPtr& t2, ChoiceName k1, ChoiceName k2,
              const TermPtr& alpha) {
  return related(t1, t2, mk_upd(k1, alpha), mk_upd(k2, alpha));
}

bool sim_force(const TermPtr& t1, const TermPtr& t2, ChoiceName k, const TermPtr& alpha,
               const TermPtr& beta) {
  return related(t1, t2, mk_upd(k, alpha), mk_force(beta));
}

bool updterm(const TermPtr& t, ChoiceName k, const TermPtr& alpha) {
  return sim_diff(t, t, k, k, alpha);
}

}  // namespace boxtt
