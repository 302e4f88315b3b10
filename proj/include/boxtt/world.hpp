#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boxtt/term.hpp"

namespace boxtt {

/// Choices of the reference instance are natural numbers.
using Choice = Nat;

enum class RestrictionKind : std::uint8_t { NatOnly };

/// A predicate on choices together with a default that satisfies it.
struct Restriction {
  RestrictionKind kind = RestrictionKind::NatOnly;
  Choice default_choice = 0;

  bool admits(const Choice& c) const;
  friend bool operator==(const Restriction&, const Restriction&) = default;
};

/// The restriction used by `fresh`: choices are numbers, default 0.
Restriction nat_only();

struct Cell {
  ChoiceName name;
  Restriction restriction;
  Choice value = 0;
  bool mutable_ = true;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A world of the reference-cell instance: an ordered list of cells with
/// pairwise distinct names, each holding a value admitted by its restriction.
class RefWorld {
 public:
  RefWorld() = default;
  /// Throws std::invalid_argument if the cells violate the world invariants.
  explicit RefWorld(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const Cell* find(ChoiceName k) const;
  bool well_formed() const;

  friend bool operator==(const RefWorld&, const RefWorld&) = default;

 private:
  friend RefWorld write(const RefWorld&, ChoiceName, const Choice&);
  friend RefWorld start_new_choice(const RefWorld&, const Restriction&);
  std::vector<Cell> cells_;
};

/// Last choice made for k, if the world has a k cell.
std::optional<Choice> read(const RefWorld& w, ChoiceName k);

/// Updates k's cell when it exists and is mutable; otherwise returns w.
/// A choice the cell's restriction rejects also leaves w unchanged.
RefWorld write(const RefWorld& w, ChoiceName k, const Choice& c);

/// 1 + the largest name in w, or 0 for the empty world.
ChoiceName new_choice(const RefWorld& w);

RefWorld start_new_choice(const RefWorld& w, const Restriction& r);

/// A mutable k cell created with restriction r whose value r admits. Cells
/// created by start_new_choice are always mutable.
bool compatible(ChoiceName k, const RefWorld& w, const Restriction& r);

/// w1 ⊑ w2: w2 is reachable from w1 by creating cells and updating mutable ones.
bool extends(const RefWorld& w1, const RefWorld& w2);

/// Term-to-choice coercion: numerals map to their value, everything else to 0.
Choice coerce(const TermPtr& t);

struct SamplingParams {
  std::size_t depth = 4;
  std::size_t count = 16;
  std::uint64_t seed = 0;
};

/// Finite stand-in for "every extension of w": `count` worlds, the first of
/// which is w itself, each reached from w by at most `depth` random cell
/// creations or mutable-cell writes. Deterministic in the seed.
std::vector<RefWorld> sample_extensions(const RefWorld& w, std::size_t depth, std::size_t count,
                                        std::uint64_t seed);
inline std::vector<RefWorld> sample_extensions(const RefWorld& w, const SamplingParams& p) {
  return sample_extensions(w, p.depth, p.count, p.seed);
}

/// A world with a single mutable NatOnly cell holding `value`.
RefWorld single_cell_world(ChoiceName k, const Choice& value);

}  // namespace boxtt
