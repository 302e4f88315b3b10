#pragma once

#include "boxtt/eval.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

/// Sampled approximations of membership in the effect types. Quantifiers
/// over world extensions range over `sample_extensions`; a timeout anywhere
/// counts as non-membership, a stuck computation has no value to constrain.
struct MembershipParams {
  SamplingParams sampling;
  std::uint64_t fuel = kDefaultFuel;
};

/// t computes to one and the same numeral from every sampled extension of w.
bool member_nat_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p = {});

/// Whenever t ⇓ v from a sampled w', t ⇓ v from every sampled extension of w'.
bool member_noread_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p = {});

/// From every sampled extension w', t computes to a value and ends in w'.
bool member_nowrite_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p = {});

/// t is name-free and computes, without touching the world, to the same
/// name-free value from w and from every sampled extension.
bool member_pure(const TermPtr& t, const RefWorld& w, const MembershipParams& p = {});

}  // namespace boxtt
