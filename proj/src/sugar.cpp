#include "boxtt/sugar.hpp"

namespace boxtt {

namespace {

std::vector<std::string> free_of(std::initializer_list<const TermPtr*> terms) {
  std::vector<std::string> out;
  for (const TermPtr* t : terms) {
    out.insert(out.end(), (*t)->free_vars().begin(), (*t)->free_vars().end());
  }
  return out;
}

}  // namespace

TermPtr ite(TermPtr cond, TermPtr then_branch, TermPtr else_branch) {
  const std::string x = fresh_var("u", free_of({&then_branch, &else_branch}));
  return decide(std::move(cond), x, std::move(then_branch), x, std::move(else_branch));
}

TermPtr seq(TermPtr first, TermPtr second) {
  const std::string x = fresh_var("u", free_of({&second}));
  return let(x, std::move(first), std::move(second));
}

TermPtr btrue() { return inl(star()); }
TermPtr bfalse() { return inr(star()); }

TermPtr neg(TermPtr t) { return ite(std::move(t), bfalse(), btrue()); }

TermPtr iszero(TermPtr t) { return natrec(std::move(t), btrue(), lam("m", lam("r", bfalse()))); }

TermPtr pred(TermPtr t) { return natrec(std::move(t), num(0), lam("m", lam("r", var("m")))); }

TermPtr sub(TermPtr a, TermPtr b) {
  return natrec(std::move(b), std::move(a), lam("m", lam("r", pred(var("r")))));
}

TermPtr lt(TermPtr a, TermPtr b) { return neg(iszero(sub(std::move(b), std::move(a)))); }

TermPtr iflt(TermPtr a, TermPtr b, TermPtr c, TermPtr d) {
  return ite(lt(std::move(a), std::move(b)), std::move(c), std::move(d));
}

}  // namespace boxtt
