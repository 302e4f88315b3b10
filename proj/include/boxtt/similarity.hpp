#pragma once

#include "boxtt/term.hpp"

namespace boxtt {

/// t1 ∼ t2 relative to two recording names: the terms agree everywhere except
/// that t1 may use upd(k1, alpha) exactly where t2 uses upd(k2, alpha). Any
/// other choice name or fresh operator breaks the relation.
bool sim_diff(const TermPtr& t1, const TermPtr& t2, ChoiceName k1, ChoiceName k2,
              const TermPtr& alpha);

/// As sim_diff, but pairing upd(k, alpha) in t1 with force(beta) in t2.
bool sim_force(const TermPtr& t1, const TermPtr& t2, ChoiceName k, const TermPtr& alpha,
               const TermPtr& beta);

/// The only occurrences of k in t sit inside upd(k, alpha).
bool updterm(const TermPtr& t, ChoiceName k, const TermPtr& alpha);

}  // namespace boxtt
