#include "boxtt/world.hpp"

#include <algorithm>
#include <stdexcept>

#include "boxtt/rng.hpp"

namespace boxtt {

bool Restriction::admits(const Choice& c) const {
  switch (kind) {
    case RestrictionKind::NatOnly:
      return c >= 0;
  }
  return false;
}

Restriction nat_only() { return Restriction{RestrictionKind::NatOnly, 0}; }

RefWorld::RefWorld(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (!well_formed()) throw std::invalid_argument("ill-formed world: duplicate or invalid cell");
}

const Cell* RefWorld::find(ChoiceName k) const {
  for (const auto& c : cells_) {
    if (c.name == k) return &c;
  }
  return nullptr;
}

bool RefWorld::well_formed() const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!cells_[i].restriction.admits(cells_[i].value)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (cells_[i].name == cells_[j].name) return false;
    }
  }
  return true;
}

std::optional<Choice> read(const RefWorld& w, ChoiceName k) {
  if (const Cell* c = w.find(k)) return c->value;
  return std::nullopt;
}

RefWorld write(const RefWorld& w, ChoiceName k, const Choice& c) {
  RefWorld out = w;
  for (auto& cell : out.cells_) {
    if (cell.name == k) {
      if (cell.mutable_ && cell.restriction.admits(c)) cell.value = c;
      break;
    }
  }
  return out;
}

ChoiceName new_choice(const RefWorld& w) {
  if (w.empty()) return ChoiceName{0};
  std::uint64_t top = 0;
  for (const auto& c : w.cells()) top = std::max(top, c.name.id);
  return ChoiceName{top + 1};
}

RefWorld start_new_choice(const RefWorld& w, const Restriction& r) {
  RefWorld out = w;
  out.cells_.push_back(Cell{new_choice(w), r, r.default_choice, true});
  return out;
}

bool compatible(ChoiceName k, const RefWorld& w, const Restriction& r) {
  const Cell* c = w.find(k);
  return c != nullptr && c->mutable_ && c->restriction == r && r.admits(c->value);
}

bool extends(const RefWorld& w1, const RefWorld& w2) {
  const auto& a = w1.cells();
  const auto& b = w2.cells();
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].restriction != b[i].restriction ||
        a[i].mutable_ != b[i].mutable_) {
      return false;
    }
    if (a[i].value != b[i].value && !(b[i].mutable_ && b[i].restriction.admits(b[i].value))) {
      return false;
    }
  }
  for (std::size_t i = a.size(); i < b.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (b[j].name == b[i].name) return false;
    }
    if (!b[i].restriction.admits(b[i].value)) return false;
    if (!b[i].mutable_ && b[i].value != b[i].restriction.default_choice) return false;
  }
  return true;
}

Choice coerce(const TermPtr& t) {
  if (t->kind() == Kind::Num) return t->number();
  return 0;
}

namespace {

constexpr std::uint64_t kSampledChoiceBound = 16;

}  // namespace

std::vector<RefWorld> sample_extensions(const RefWorld& w, std::size_t depth, std::size_t count,
                                        std::uint64_t seed) {
  std::vector<RefWorld> out;
  if (count == 0) return out;
  out.push_back(w);
  Rng rng(seed);
  while (out.size() < count) {
    RefWorld cur = w;
    const std::size_t ops = depth == 0 ? 0 : 1 + rng.below(depth);
    for (std::size_t i = 0; i < ops; ++i) {
      std::vector<ChoiceName> writable;
      for (const auto& c : cur.cells()) {
        if (c.mutable_) writable.push_back(c.name);
      }
      if (!writable.empty() && rng.chance(3, 4)) {
        const ChoiceName k = writable[rng.below(writable.size())];
        cur = write(cur, k, Choice(rng.below(kSampledChoiceBound)));
      } else {
        cur = start_new_choice(cur, nat_only());
      }
    }
    out.push_back(std::move(cur));
  }
  return out;
}

RefWorld single_cell_world(ChoiceName k, const Choice& value) {
  return RefWorld({Cell{k, nat_only(), value, true}});
}

}  // namespace boxtt
