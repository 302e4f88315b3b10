#pragma once

#include "boxtt/term.hpp"

namespace boxtt {

// Derived forms. Bound variables introduced here are chosen so they do not
// occur free in the branches they scope over.

TermPtr ite(TermPtr cond, TermPtr then_branch, TermPtr else_branch);
TermPtr seq(TermPtr first, TermPtr second);
TermPtr btrue();
TermPtr bfalse();
TermPtr neg(TermPtr t);
TermPtr iszero(TermPtr t);
TermPtr pred(TermPtr t);
/// Truncated subtraction a - b.
TermPtr sub(TermPtr a, TermPtr b);
/// a < b
TermPtr lt(TermPtr a, TermPtr b);
/// if a < b then c else d
TermPtr iflt(TermPtr a, TermPtr b, TermPtr c, TermPtr d);

}  // namespace boxtt
