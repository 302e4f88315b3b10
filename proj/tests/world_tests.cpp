#include "doctest.h"

#include <stdexcept>

#include "boxtt/generators.hpp"
#include "boxtt/rng.hpp"
#include "boxtt/world.hpp"

using namespace boxtt;

namespace {

Cell cell(std::uint64_t k, std::uint64_t v, bool mut = true) {
  return Cell{ChoiceName{k}, nat_only(), Choice(v), mut};
}

RefWorld world(std::vector<Cell> cells) { return RefWorld(std::move(cells)); }

}  // namespace

TEST_CASE("read looks up a cell") {
  CHECK(read(world({cell(1, 3)}), ChoiceName{1}) == Choice(3));
  CHECK_FALSE(read(RefWorld{}, ChoiceName{7}).has_value());
  CHECK_FALSE(read(world({cell(1, 3)}), ChoiceName{2}).has_value());
}

TEST_CASE("write updates mutable cells only") {
  CHECK(write(world({cell(1, 0)}), ChoiceName{1}, 4) == world({cell(1, 4)}));
  CHECK(write(RefWorld{}, ChoiceName{1}, 4) == RefWorld{});
  CHECK(write(world({cell(1, 0, false)}), ChoiceName{1}, 4) == world({cell(1, 0, false)}));
  const RefWorld w = world({cell(0, 1), cell(3, 2)});
  CHECK(read(write(w, ChoiceName{3}, 5), ChoiceName{3}) == Choice(5));
  CHECK(read(write(w, ChoiceName{3}, 5), ChoiceName{0}) == Choice(1));
}

TEST_CASE("worlds reject duplicate names") {
  CHECK_THROWS_AS(world({cell(1, 0), cell(1, 2)}), std::invalid_argument);
}

TEST_CASE("new_choice is one past the largest name") {
  CHECK(new_choice(RefWorld{}) == ChoiceName{0});
  CHECK(new_choice(world({cell(0, 0), cell(3, 0)})) == ChoiceName{4});
  CHECK(new_choice(world({cell(5, 0), cell(2, 0)})) == ChoiceName{6});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const RefWorld w = gen_world(s);
    CHECK(w.find(new_choice(w)) == nullptr);
  }
}

TEST_CASE("start_new_choice appends a default mutable cell") {
  CHECK(start_new_choice(RefWorld{}, nat_only()) == world({cell(0, 0)}));
  for (std::uint64_t s = 0; s < 200; ++s) {
    const RefWorld w = gen_world(s);
    const ChoiceName k = new_choice(w);
    const RefWorld w2 = start_new_choice(w, nat_only());
    CHECK(w2.size() == w.size() + 1);
    CHECK(read(w2, k) == nat_only().default_choice);
    CHECK(compatible(k, w2, nat_only()));
    CHECK(extends(w, w2));
    CHECK_FALSE(extends(w2, w));
    CHECK(w2.well_formed());
  }
}

TEST_CASE("compatible") {
  CHECK(compatible(ChoiceName{1}, world({cell(1, 3)}), nat_only()));
  CHECK_FALSE(compatible(ChoiceName{1}, RefWorld{}, nat_only()));
  CHECK_FALSE(compatible(ChoiceName{1}, world({cell(1, 3, false)}), nat_only()));
  const RefWorld w = world({cell(1, 3)});
  CHECK(compatible(ChoiceName{1}, write(w, ChoiceName{1}, 9), nat_only()));
}

TEST_CASE("extends examples") {
  const RefWorld w = world({cell(0, 1), cell(2, 5, false)});
  CHECK(extends(w, w));
  CHECK(extends(w, start_new_choice(w, nat_only())));
  CHECK(extends(w, write(w, ChoiceName{0}, 9)));
  CHECK_FALSE(extends(w, world({cell(0, 1), cell(2, 6, false)})));
  CHECK_FALSE(extends(w, world({cell(2, 5, false), cell(0, 1)})));
  CHECK_FALSE(extends(w, world({cell(0, 1)})));
  CHECK_FALSE(extends(w, world({cell(0, 1), cell(2, 5, true)})));
}

TEST_CASE("writes extend the world") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(s);
    const RefWorld w = gen_world(s);
    const ChoiceName k{rng.below(12)};
    CHECK(extends(w, write(w, k, Choice(rng.below(50)))));
  }
}

TEST_CASE("extends is reflexive and transitive over sampled chains") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RefWorld w0 = gen_world(s);
    CHECK(extends(w0, w0));
    for (const RefWorld& w1 : sample_extensions(w0, 3, 4, s)) {
      for (const RefWorld& w2 : sample_extensions(w1, 3, 4, s + 1)) {
        CHECK(extends(w0, w1));
        CHECK(extends(w1, w2));
        CHECK(extends(w0, w2));
      }
    }
  }
}

TEST_CASE("extends agrees with reachability on random pairs") {
  // A pair of unrelated random worlds is related only when the first is a
  // prefix-compatible ancestor, which the search below decides independently.
  for (std::uint64_t s = 0; s < 400; ++s) {
    const RefWorld a = gen_world(s);
    const RefWorld b = gen_world(s / 3);
    bool reachable = a.size() <= b.size();
    for (std::size_t i = 0; reachable && i < a.size(); ++i) {
      const Cell& x = a.cells()[i];
      const Cell& y = b.cells()[i];
      reachable = x.name == y.name && x.mutable_ == y.mutable_ && x.restriction == y.restriction &&
                  (x.mutable_ || x.value == y.value);
    }
    for (std::size_t i = a.size(); reachable && i < b.size(); ++i) {
      reachable = b.cells()[i].mutable_;
    }
    CHECK(extends(a, b) == reachable);
  }
}

TEST_CASE("coerce") {
  CHECK(coerce(num(7)) == Choice(7));
  CHECK(coerce(lam("x", var("x"))) == Choice(0));
  CHECK(coerce(star()) == Choice(0));
  CHECK(coerce(succ(num(3))) == Choice(0));
}

TEST_CASE("sample_extensions") {
  const RefWorld w = world({cell(0, 2), cell(1, 4, false)});
  CHECK(sample_extensions(w, 0, 1, 9) == std::vector<RefWorld>{w});
  const auto a = sample_extensions(w, 4, 16, 123);
  const auto b = sample_extensions(w, 4, 16, 123);
  CHECK(a == b);
  REQUIRE(a.size() == 16);
  CHECK(a.front() == w);
  for (const RefWorld& x : a) {
    CHECK(extends(w, x));
    CHECK(x.well_formed());
  }
  CHECK(sample_extensions(w, 4, 16, 124) != a);
}

TEST_CASE("read after write across extensions") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(s);
    RefWorld w = start_new_choice(gen_world(s), nat_only());
    const ChoiceName k = w.cells()[rng.below(w.size())].name;
    const Choice c(rng.below(1000));
    const RefWorld w2 = write(w, k, c);
    if (!compatible(k, w, nat_only())) continue;
    CHECK(read(w2, k) == c);
    for (const RefWorld& x : sample_extensions(w2, 4, 8, s)) {
      CHECK(read(x, k).has_value());
      CHECK(compatible(k, x, nat_only()));
    }
  }
}
