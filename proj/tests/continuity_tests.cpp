#include "doctest.h"

#include <algorithm>

#include "boxtt/continuity.hpp"
#include "boxtt/generators.hpp"
#include "boxtt/sugar.hpp"

using namespace boxtt;

namespace {

const ChoiceName k0{0};
const TermPtr succ_fn = lam("n", succ(var("n")));
const TermPtr id_fn = lam("n", var("n"));
const TermPtr nested = lam("a", app(var("a"), app(var("a"), num(2))));

Nat modulus_of(const TermPtr& f, const TermPtr& alpha, const RefWorld& w = {}) {
  const ModulusResult r = compute_modulus(f, alpha, w);
  REQUIRE(std::holds_alternative<ModulusReport>(r));
  return std::get<ModulusReport>(r).modulus;
}

Nat oracle_of(const TermPtr& f, const TermPtr& alpha, const RefWorld& w = {}) {
  const OracleResult o = oracle_modulus(f, alpha, w);
  REQUIRE(o.modulus.has_value());
  return *o.modulus;
}

}  // namespace

TEST_CASE("upd records arguments above the current record") {
  const EvalResult d_result = eval(app(mk_upd(k0, succ_fn), num(2)), single_cell_world(k0, 0));
  const Done* d = as_done(d_result);
  REQUIRE(d != nullptr);
  CHECK(same(d->value, num(3)));
  CHECK(d->world == single_cell_world(k0, 2));

  const EvalResult e_result = eval(app(mk_upd(k0, succ_fn), num(0)), single_cell_world(k0, 0));
  const Done* e = as_done(e_result);
  REQUIRE(e != nullptr);
  CHECK(same(e->value, num(1)));
  CHECK(e->world == single_cell_world(k0, 0));

  const EvalResult f_result = eval(app(mk_upd(k0, succ_fn), num(1)), single_cell_world(k0, 5));
  const Done* f = as_done(f_result);
  REQUIRE(f != nullptr);
  CHECK(f->world == single_cell_world(k0, 5));

  CHECK_FALSE(nonames(mk_upd(k0, succ_fn)));
}

TEST_CASE("upd has the expected shape") {
  const TermPtr expected =
      lam("x", let("y", var("x"),
                   seq(iflt(read(name(k0)), var("y"), choose(name(k0), var("y")), star()),
                       app(succ_fn, var("y")))));
  CHECK(alpha_equivalent(mk_upd(k0, succ_fn), expected));
  // Binders are renamed away from the free variables of alpha.
  const TermPtr open = mk_upd(var("y"), var("x"));
  CHECK(open->free_vars() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("force evaluates its argument first") {
  const ChoiceName gamma{0};
  const TermPtr arg = seq(choose(name(gamma), num(1)), num(1));
  const EvalResult d_result = eval(app(mk_force(lam("n", num(0))), arg), single_cell_world(gamma, 0));
  const Done* d = as_done(d_result);
  REQUIRE(d != nullptr);
  CHECK(same(d->value, num(0)));
  CHECK(d->world == single_cell_world(gamma, 1));

  const EvalResult lazy_result = eval(app(lam("n", num(0)), arg), single_cell_world(gamma, 0));
  const Done* lazy = as_done(lazy_result);
  REQUIRE(lazy != nullptr);
  CHECK(lazy->world == single_cell_world(gamma, 0));

  const EvalResult e_result = eval(app(mk_force(succ_fn), num(4)), RefWorld{});
  const Done* e = as_done(e_result);
  REQUIRE(e != nullptr);
  CHECK(same(e->value, num(5)));
  CHECK(e->world == RefWorld{});
}

TEST_CASE("force preserves results on numerals") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const TermPtr beta = gen_alpha(s);
    for (unsigned n = 0; n < 6; ++n) {
      CHECK(numeral_of(eval(app(mk_force(beta), num(n)), RefWorld{})) ==
            numeral_of(eval(app(beta, num(n)), RefWorld{})));
    }
  }
}

TEST_CASE("worked example: modulus 4") {
  CHECK(modulus_of(nested, succ_fn) == 4);
  const OracleResult o = oracle_modulus(nested, succ_fn, RefWorld{});
  CHECK(o.log == std::vector<Nat>{2, 3});
  CHECK(o.modulus == Nat(4));
}

TEST_CASE("modulus examples") {
  CHECK(modulus_of(lam("a", num(0)), succ_fn) == 1);
  CHECK(oracle_of(lam("a", num(0)), succ_fn) == 1);

  const TermPtr at5 = lam("a", app(var("a"), num(5)));
  CHECK(modulus_of(at5, id_fn) == 6);
  CHECK(oracle_of(at5, id_fn) == 6);

  const TermPtr rec = lam("a", natrec(app(var("a"), num(0)), app(var("a"), num(1)),
                                      lam("m", lam("r", app(var("a"), num(2))))));
  CHECK(modulus_of(rec, id_fn) == 2);
  CHECK(oracle_of(rec, id_fn) == 2);
}

TEST_CASE("modulus report contents") {
  const RefWorld w = RefWorld({Cell{ChoiceName{3}, nat_only(), 8, true}});
  const ModulusResult r = compute_modulus(nested, succ_fn, w, kDefaultFuel, true);
  REQUIRE(std::holds_alternative<ModulusReport>(r));
  const ModulusReport& rep = std::get<ModulusReport>(r);
  CHECK(rep.fresh_name == ChoiceName{4});
  CHECK(read(rep.final_world, rep.fresh_name) == Choice(3));
  REQUIRE(rep.trace.has_value());
  CHECK(rep.trace->steps() == rep.fuel_used);
  CHECK(read(rep.final_world, ChoiceName{3}) == Choice(8));
}

TEST_CASE("modulus rejects impure inputs") {
  const TermPtr impure = lam("n", read(name(k0)));
  const ModulusResult r = compute_modulus(nested, impure, single_cell_world(k0, 0));
  REQUIRE(std::holds_alternative<ModulusError>(r));
  CHECK(std::get<ModulusError>(r).kind == ModulusFailure::PurityViolation);

  const ModulusResult f = compute_modulus(lam("a", fresh("x", num(0))), id_fn, RefWorld{});
  REQUIRE(std::holds_alternative<ModulusError>(f));
  CHECK(std::get<ModulusError>(f).kind == ModulusFailure::PurityViolation);
}

TEST_CASE("modulus failure kinds") {
  // mod discards the value F computes, so a non-numeral F result still
  // yields a modulus.
  CHECK(modulus_of(lam("a", star()), id_fn) == 1);

  const ModulusResult to = compute_modulus(lam("a", fix(lam("x", var("x")))), id_fn, RefWorld{}, 200);
  REQUIRE(std::holds_alternative<ModulusError>(to));
  CHECK(std::get<ModulusError>(to).kind == ModulusFailure::Timeout);

  const ModulusResult st = compute_modulus(lam("a", app(var("a"), star())), id_fn, RefWorld{});
  REQUIRE(std::holds_alternative<ModulusError>(st));
  CHECK(std::get<ModulusError>(st).kind == ModulusFailure::Stuck);
}

TEST_CASE("impure arguments separate alpha from upd") {
  const ChoiceName gamma{0};
  const ChoiceName kappa{1};
  const RefWorld w({Cell{gamma, nat_only(), 0, true}, Cell{kappa, nat_only(), 0, true}});
  const TermPtr alpha = lam("n", iflt(read(name(gamma)), num(1), num(0), num(1)));
  const TermPtr arg = seq(choose(name(gamma), num(1)), num(1));
  CHECK(numeral_of(eval(app(alpha, arg), w)) == Nat(0));
  CHECK(numeral_of(eval(app(mk_upd(kappa, alpha), arg), w)) == Nat(1));
}

TEST_CASE("the realizer") {
  const TermPtr real = mk_cont_realizer();
  CHECK(real->closed());
  CHECK_FALSE(nonames(real));

  const EvalResult d_result = eval(app(app(real, nested), succ_fn), RefWorld{});
  const Done* d = as_done(d_result);
  REQUIRE(d != nullptr);
  REQUIRE(d->value->kind() == Kind::Pair);
  CHECK(numeral_of(eval(d->value->kid(0), d->world)) == Nat(4));
  const EvalResult e_result = eval(app(app(d->value->kid(1), id_fn), num(9)), d->world);
  const Done* e = as_done(e_result);
  REQUIRE(e != nullptr);
  CHECK(same(e->value, star()));
}

TEST_CASE("realizer contains no literal names") {
  std::vector<TermPtr> todo{mk_cont_realizer()};
  bool saw_fresh = false;
  while (!todo.empty()) {
    const TermPtr t = todo.back();
    todo.pop_back();
    CHECK(t->kind() != Kind::Name);
    saw_fresh = saw_fresh || t->kind() == Kind::Fresh;
    for (const auto& k : t->kids()) todo.push_back(k);
  }
  CHECK(saw_fresh);
}

TEST_CASE("mod is a pure builder") {
  CHECK(alpha_equivalent(mk_mod(nested, succ_fn), mk_mod(nested, succ_fn)));
  CHECK_FALSE(nonames(mk_mod(nested, succ_fn)));
}

TEST_CASE("oracle arguments stay below the modulus") {
  for (const CaseSpec& c : gen_cases(80, 5)) {
    const OracleResult o = oracle_modulus(c.functional, c.alpha, c.world);
    REQUIRE(o.modulus.has_value());
    for (const Nat& n : o.log) CHECK(n < *o.modulus);
    CHECK(modulus_of(c.functional, c.alpha, c.world) == *o.modulus);
  }
}

TEST_CASE("fresh name does not occur in the inputs") {
  for (const CaseSpec& c : gen_cases(30, 6)) {
    const ModulusResult r = compute_modulus(c.functional, c.alpha, c.world);
    REQUIRE(std::holds_alternative<ModulusReport>(r));
    const ChoiceName k = std::get<ModulusReport>(r).fresh_name;
    CHECK(c.world.find(k) == nullptr);
    CHECK(nonames(c.functional));
    CHECK(nonames(c.alpha));
  }
}
