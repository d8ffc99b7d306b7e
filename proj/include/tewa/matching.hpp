#pragma once

// Deferred acceptance with weighted proposals and acceptor capacities.
//
// Preferences on both sides come from one weight per allowed pair: a
// proposer prefers acceptors with higher weight, an acceptor prefers
// proposers with higher weight. Equal weights are ordered by list position
// (earlier proposer / acceptor wins), which makes every preference strict
// and the result reproducible. Pairs without a weight may never match.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tewa {

class MatchInstance {
 public:
  MatchInstance() = default;
  MatchInstance(std::size_t proposers, std::size_t acceptors)
      : proposers_(proposers), acceptors_(acceptors), weights_(proposers * acceptors), capacity_(acceptors, 1) {}

  std::size_t proposer_count() const { return proposers_; }
  std::size_t acceptor_count() const { return acceptors_; }

  void allow(std::size_t p, std::size_t a, double weight) {
    if (!std::isfinite(weight)) throw std::invalid_argument("match weight must be finite");
    weights_.at(p * acceptors_ + a) = weight;
  }
  void forbid(std::size_t p, std::size_t a) { weights_.at(p * acceptors_ + a).reset(); }

  std::optional<double> weight(std::size_t p, std::size_t a) const { return weights_.at(p * acceptors_ + a); }
  bool allowed(std::size_t p, std::size_t a) const { return weight(p, a).has_value(); }

  void set_capacity(std::size_t a, int cap) {
    if (cap < 1) throw std::invalid_argument("acceptor capacity must be at least 1");
    capacity_.at(a) = cap;
  }
  int capacity(std::size_t a) const { return capacity_.at(a); }

  std::size_t allowed_pair_count() const {
    return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](auto& w) { return w.has_value(); }));
  }

  /// Strict proposer preference: true when p ranks a1 above a2.
  bool proposer_prefers(std::size_t p, std::size_t a1, std::size_t a2) const {
    const double w1 = *weight(p, a1);
    const double w2 = *weight(p, a2);
    if (w1 != w2) return w1 > w2;
    return a1 < a2;
  }

  /// Strict acceptor preference: true when a ranks p1 above p2.
  bool acceptor_prefers(std::size_t a, std::size_t p1, std::size_t p2) const {
    const double w1 = *weight(p1, a);
    const double w2 = *weight(p2, a);
    if (w1 != w2) return w1 > w2;
    return p1 < p2;
  }

  /// Allowed acceptors of p, most preferred first.
  std::vector<std::size_t> preference_order(std::size_t p) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < acceptors_; ++a)
      if (allowed(p, a)) out.push_back(a);
    std::sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) { return proposer_prefers(p, x, y); });
    return out;
  }

 private:
  std::size_t proposers_ = 0;
  std::size_t acceptors_ = 0;
  std::vector<std::optional<double>> weights_;
  std::vector<int> capacity_;
};

struct Matching {
  std::vector<std::optional<std::size_t>> partner;  // indexed by proposer

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t p = 0; p < partner.size(); ++p)
      if (partner[p]) out.emplace_back(p, *partner[p]);
    return out;
  }

  std::vector<std::size_t> unmatched() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < partner.size(); ++p)
      if (!partner[p]) out.push_back(p);
    return out;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// No-op hook; instrumented callers supply their own type with the same members.
struct NullMatchObserver {
  void on_propose(std::size_t, std::size_t) {}
  void on_accept(std::size_t, std::size_t) {}
  void on_reject(std::size_t, std::size_t) {}
  void on_evict(std::size_t, std::size_t) {}
  void on_holdings(std::size_t, std::size_t) {}  // acceptor, tentative count after a step
};

/// Proposer-optimal stable matching. Each proposer proposes to every allowed
/// acceptor at most once; a full acceptor evicts its weakest tentative
/// partner when a better proposal arrives.
template <class Observer = NullMatchObserver>
Matching deferred_acceptance(const MatchInstance& inst, Observer&& observer = {}) {
  const std::size_t np = inst.proposer_count();
  const std::size_t na = inst.acceptor_count();
  std::vector<std::vector<std::size_t>> prefs(np);
  for (std::size_t p = 0; p < np; ++p) prefs[p] = inst.preference_order(p);

  std::vector<std::size_t> next(np, 0);
  std::vector<std::vector<std::size_t>> held(na);
  Matching m;
  m.partner.assign(np, std::nullopt);

  std::deque<std::size_t> free;
  for (std::size_t p = 0; p < np; ++p) free.push_back(p);

  while (!free.empty()) {
    const std::size_t p = free.front();
    free.pop_front();
    if (next[p] >= prefs[p].size()) continue;  // exhausted: stays unmatched
    const std::size_t a = prefs[p][next[p]++];
    observer.on_propose(p, a);
    auto& h = held[a];
    if (static_cast<int>(h.size()) < inst.capacity(a)) {
      h.push_back(p);
      m.partner[p] = a;
      observer.on_accept(p, a);
    } else {
      auto weakest = std::min_element(h.begin(), h.end(), [&](std::size_t x, std::size_t y) {
        return inst.acceptor_prefers(a, y, x);
      });
      if (inst.acceptor_prefers(a, p, *weakest)) {
        const std::size_t evicted = *weakest;
        *weakest = p;
        m.partner[p] = a;
        m.partner[evicted].reset();
        observer.on_evict(evicted, a);
        observer.on_accept(p, a);
        free.push_front(evicted);
      } else {
        observer.on_reject(p, a);
        free.push_front(p);
      }
    }
    observer.on_holdings(a, h.size());
  }
  return m;
}

struct StabilityReport {
  bool stable = true;
  std::vector<std::pair<std::size_t, std::size_t>> blocking;
};

/// Blocking pairs of a matching. Throws std::invalid_argument when the
/// matching does not fit the instance.
inline StabilityReport is_stable(const MatchInstance& inst, const Matching& m) {
  const std::size_t np = inst.proposer_count();
  const std::size_t na = inst.acceptor_count();
  if (m.partner.size() != np) throw std::invalid_argument("matching size differs from proposer count");
  std::vector<std::vector<std::size_t>> held(na);
  for (std::size_t p = 0; p < np; ++p) {
    if (!m.partner[p]) continue;
    const std::size_t a = *m.partner[p];
    if (a >= na) throw std::invalid_argument("matching references an unknown acceptor");
    if (!inst.allowed(p, a)) throw std::invalid_argument("matching contains a forbidden pair");
    held[a].push_back(p);
  }
  for (std::size_t a = 0; a < na; ++a)
    if (static_cast<int>(held[a].size()) > inst.capacity(a))
      throw std::invalid_argument("matching exceeds an acceptor's capacity");

  StabilityReport rep;
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t a = 0; a < na; ++a) {
      if (!inst.allowed(p, a) || m.partner[p] == a) continue;
      if (m.partner[p] && !inst.proposer_prefers(p, a, *m.partner[p])) continue;
      bool acceptor_wants = static_cast<int>(held[a].size()) < inst.capacity(a);
      for (std::size_t q : held[a])
        if (inst.acceptor_prefers(a, p, q)) acceptor_wants = true;
      if (acceptor_wants) rep.blocking.emplace_back(p, a);
    }
  }
  rep.stable = rep.blocking.empty();
  return rep;
}

}  // namespace tewa
