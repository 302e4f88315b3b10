#include "boxtt/generators.hpp"

#include <algorithm>

#include "boxtt/continuity.hpp"
#include "boxtt/rng.hpp"
#include "boxtt/sugar.hpp"

namespace boxtt {

namespace {

TermPtr small_numeral(Rng& rng, std::uint64_t bound) { return num(rng.below(bound)); }

TermPtr pick(Rng& rng, const std::vector<std::string>& scope) {
  return var(scope[rng.below(scope.size())]);
}

/// Step function for natrec: λm.λr. one of {succ r, r, m, pred r}.
TermPtr natrec_step(Rng& rng, const std::string& m, const std::string& r) {
  switch (rng.below(4)) {
    case 0: return lam(m, lam(r, succ(var(r))));
    case 1: return lam(m, lam(r, var(r)));
    case 2: return lam(m, lam(r, var(m)));
    default: return lam(m, lam(r, pred(var(r))));
  }
}

class AlphaGen {
 public:
  explicit AlphaGen(std::uint64_t seed) : rng_(seed) {}

  // The argument is bound once with a strict let; under call-by-name every
  // use of a bare n would re-run the caller's computation of it.
  TermPtr build(std::size_t size) { return lam("n", let("v", var("n"), expr(size, false))); }

 private:
  TermPtr leaf() { return rng_.chance(1, 2) ? var("v") : small_numeral(rng_, 4); }

  // `counted` is set under a natrec that already iterates on n, so values stay
  // within n plus a constant proportional to size.
  TermPtr expr(std::size_t s, bool counted) {
    if (s <= 1) return leaf();
    switch (rng_.below(7)) {
      case 0: return leaf();
      case 1: return succ(expr(s - 1, counted));
      case 2: return pred(expr(s - 1, counted));
      case 3: return sub(expr(s / 2, counted), expr(s / 2, counted));
      case 4:
      case 5: {
        const bool on_n = !counted && rng_.chance(1, 2);
        TermPtr scrut = on_n ? var("v") : small_numeral(rng_, 4);
        return natrec(std::move(scrut), expr(s - 1, counted || on_n), natrec_step(rng_, "m", "r"));
      }
      default: {
        const std::size_t q = std::max<std::size_t>(1, s / 3);
        return iflt(expr(q, counted), expr(q, counted), expr(q, counted), expr(q, counted));
      }
    }
  }

  Rng rng_;
};

class FunctionalGen {
 public:
  explicit FunctionalGen(std::uint64_t seed) : rng_(seed) {}

  TermPtr build(std::size_t size) {
    std::vector<std::string> scope;
    return lam("a", expr(size, scope));
  }

 private:
  TermPtr leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && rng_.chance(1, 2)) return pick(rng_, scope);
    return small_numeral(rng_, 5);
  }

  TermPtr apply_alpha(TermPtr arg) { return app(var("a"), std::move(arg)); }

  std::string next_var(std::string_view base) { return std::string(base) + std::to_string(counter_++); }

  TermPtr expr(std::size_t s, std::vector<std::string>& scope) {
    if (s <= 1) {
      return rng_.chance(1, 2) ? apply_alpha(leaf(scope)) : leaf(scope);
    }
    switch (rng_.below(10)) {
      case 0:
      case 1:
      case 2:
        return apply_alpha(expr(s - 1, scope));
      case 3:
        return succ(expr(s - 1, scope));
      case 4:
        return pred(expr(s - 1, scope));
      case 5:
        return sub(expr(s / 2, scope), expr(s / 2, scope));
      case 6: {
        // Bounded recursion: a small numeral or α at a small numeral.
        TermPtr scrut = rng_.chance(1, 2) ? small_numeral(rng_, 4) : apply_alpha(small_numeral(rng_, 3));
        TermPtr base = expr(s / 2, scope);
        const std::string m = next_var("m");
        const std::string r = next_var("r");
        const std::string v = next_var("v");
        scope.push_back(m);
        scope.push_back(v);
        TermPtr body = expr(s / 2, scope);
        scope.resize(scope.size() - 2);
        return natrec(std::move(scrut), std::move(base),
                      lam(m, lam(r, let(v, var(r), std::move(body)))));
      }
      case 7: {
        const std::size_t q = std::max<std::size_t>(1, s / 4);
        TermPtr a = expr(q, scope);
        TermPtr b = expr(q, scope);
        TermPtr c = expr(q, scope);
        TermPtr d = expr(q, scope);
        return iflt(std::move(a), std::move(b), std::move(c), std::move(d));
      }
      case 8: {
        TermPtr bound = expr(s / 2, scope);
        const std::string y = next_var("y");
        scope.push_back(y);
        TermPtr body = expr(s / 2, scope);
        scope.pop_back();
        return let(y, std::move(bound), std::move(body));
      }
      default: {
        // α passed through a local higher-order function.
        const std::string g = next_var("g");
        return app(lam(g, app(var(g), expr(s - 1, scope))), var("a"));
      }
    }
  }

  Rng rng_;
  std::size_t counter_ = 0;
};

class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  TermPtr expr(std::size_t s) {
    static const std::vector<std::string> pool = {"a", "b", "x", "y", "f", "x_1"};
    if (s <= 1) {
      switch (rng_.below(9)) {
        case 0: return star();
        case 1: return num(rng_.below(1000));
        case 2: return name(ChoiceName{rng_.below(8)});
        case 3: return nat_type();
        case 4: return noread_type();
        case 5: return nowrite_type();
        case 6: return pure_type();
        case 7: return universe(rng_.below(3));
        default: return pick(rng_, pool);
      }
    }
    const std::size_t h = std::max<std::size_t>(1, s / 2);
    const std::size_t t = std::max<std::size_t>(1, s / 3);
    auto v = [&] { return pool[rng_.below(pool.size())]; };
    switch (rng_.below(26)) {
      case 0: return lam(v(), expr(s - 1));
      case 1: return app(expr(h), expr(h));
      case 2: return pair(expr(h), expr(h));
      case 3: return spread(expr(h), v(), v(), expr(h));
      case 4: return inl(expr(s - 1));
      case 5: return inr(expr(s - 1));
      case 6: return decide(expr(t), v(), expr(t), v(), expr(t));
      case 7: return succ(expr(s - 1));
      case 8: return natrec(expr(t), expr(t), expr(t));
      case 9: return fix(expr(s - 1));
      case 10: return let(v(), expr(h), expr(h));
      case 11: return read(expr(s - 1));
      case 12: return choose(expr(h), expr(h));
      case 13: return fresh(v(), expr(s - 1));
      case 14: return pi(v(), expr(h), expr(h));
      case 15: return sum(v(), expr(h), expr(h));
      case 16: return set(v(), expr(h), expr(h));
      case 17: return union_type(expr(h), expr(h));
      case 18: return eq_type(expr(t), expr(t), expr(t));
      case 19: return isect(expr(h), expr(h));
      case 20: return qsquash(expr(s - 1));
      case 21: return num(Nat("123456789012345678901234567890") + rng_.below(10));
      default: return expr(1);
    }
  }

 private:
  Rng rng_;
};

}  // namespace

TermPtr gen_alpha(std::uint64_t seed, std::size_t size) {
  return AlphaGen(seed).build(std::max<std::size_t>(1, size));
}

TermPtr gen_F(std::uint64_t seed, std::size_t size) {
  return FunctionalGen(seed).build(std::max<std::size_t>(1, size));
}

TermPtr gen_beta_agreeing(const TermPtr& alpha, const Nat& n, std::uint64_t seed,
                          std::uint64_t fuel) {
  Rng rng(seed);
  const std::string x = "x";
  const std::string y = "y";
  TermPtr patch;
  if (rng.chance(1, 2)) {
    patch = app(alpha, var(y));
    for (std::uint64_t i = 0, k = 1 + rng.below(3); i < k; ++i) patch = succ(patch);
  } else {
    const auto at_n = numeral_of(eval(app(alpha, num(n)), RefWorld{}, fuel));
    const Nat base = at_n.value_or(0);
    const Nat c = base == 0 ? Nat(1 + rng.below(3)) : Nat(rng.below(static_cast<std::uint64_t>(
                                                          std::min<Nat>(base, 1000))));
    patch = num(c);
  }
  return lam(x, let(y, var(x), iflt(var(y), num(n), app(alpha, var(y)), std::move(patch))));
}

RefWorld gen_world(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Cell> cells;
  const std::uint64_t count = rng.below(5);
  std::uint64_t id = rng.below(3);
  for (std::uint64_t i = 0; i < count; ++i) {
    cells.push_back(Cell{ChoiceName{id}, nat_only(), Choice(rng.below(10)), !rng.chance(1, 5)});
    id += 1 + rng.below(3);
  }
  return RefWorld(std::move(cells));
}

TermPtr gen_term(std::uint64_t seed, std::size_t size) { return TermGen(seed).expr(size); }

CaseSpec gen_case(std::uint64_t seed, std::uint64_t fuel, std::size_t size) {
  return CaseSpec{gen_F(mix_seed(seed, 1), size), gen_alpha(mix_seed(seed, 2), size),
                  gen_world(mix_seed(seed, 3)), seed, fuel};
}

std::vector<CaseSpec> gen_cases(std::size_t count, std::uint64_t seed, std::uint64_t fuel,
                                std::size_t size) {
  std::vector<CaseSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen_case(mix_seed(seed, i), fuel, size));
  return out;
}

}  // namespace boxtt
