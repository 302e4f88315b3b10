#include "boxtt/membership.hpp"

#include "boxtt/rng.hpp"

namespace boxtt {

namespace {

std::vector<RefWorld> samples(const RefWorld& w, const SamplingParams& s, std::uint64_t salt) {
  return sample_extensions(w, s.depth, s.count, mix_seed(s.seed, salt));
}

}  // namespace

bool member_nat_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p) {
  std::optional<Nat> expected;
  for (const auto& wx : samples(w, p.sampling, 0)) {
    const auto n = numeral_of(eval(t, wx, p.fuel));
    if (!n) return false;
    if (!expected) expected = n;
    if (*expected != *n) return false;
  }
  return true;
}

bool member_noread_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p) {
  std::uint64_t salt = 0;
  for (const auto& wx : samples(w, p.sampling, salt++)) {
    const EvalResult r = eval(t, wx, p.fuel);
    if (std::holds_alternative<Timeout>(r)) return false;
    const Done* d = as_done(r);
    if (d == nullptr) continue;
    for (const auto& wy : samples(wx, p.sampling, salt++)) {
      const EvalResult again = eval(t, wy, p.fuel);
      const Done* e = as_done(again);
      if (e == nullptr || !alpha_equivalent(d->value, e->value)) return false;
    }
  }
  return true;
}

bool member_nowrite_sampled(const TermPtr& t, const RefWorld& w, const MembershipParams& p) {
  for (const auto& wx : samples(w, p.sampling, 0)) {
    const EvalResult r = eval(t, wx, p.fuel);
    if (std::holds_alternative<Timeout>(r)) return false;
    const Done* d = as_done(r);
    if (d != nullptr && !(d->world == wx)) return false;
  }
  return true;
}

bool member_pure(const TermPtr& t, const RefWorld& w, const MembershipParams& p) {
  if (!nonames(t)) return false;
  TermPtr expected;
  for (const auto& wx : samples(w, p.sampling, 0)) {
    const EvalResult r = eval(t, wx, p.fuel);
    const Done* d = as_done(r);
    if (d == nullptr || !nonames(d->value) || !(d->world == wx)) return false;
    if (!expected) expected = d->value;
    if (!alpha_equivalent(expected, d->value)) return false;
  }
  return true;
}

}  // namespace boxtt
