#pragma once

#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace trianglecount {

// A finite permutation group with a deterministic base and strong generating
// set.  Immutable once built; every query is read-only.  Element ranking
// (mixed-radix over transversal indices) gives each element a stable index
// in [0, |G|), which the conjugacy-class machinery uses for visited bitmaps.
class PermGroup {
 public:
  PermGroup() : degree_(0) {}
  explicit PermGroup(int degree) : degree_(degree) {}

  static PermGroup from_generators(int degree, std::vector<Permutation> gens) {
    PermGroup g(degree);
    for (const Permutation& p : gens) {
      if (p.degree() != degree)
        throw domain_error("generator degree " + std::to_string(p.degree()) +
                           " does not match group degree " + std::to_string(degree));
      if (!p.is_identity()) g.gens_.push_back(p);
    }
    g.build();
    return g;
  }

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  unsigned long long order() const {
    unsigned long long n = 1;
    for (const Level& lv : levels_) n *= lv.orbit.size();
    return n;
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).is_identity();
  }

  bool is_trivial() const { return levels_.empty(); }

  // Mixed-radix rank of a group element; throws if g is not a member.
  unsigned long long rank(const Permutation& g) const {
    Permutation r = g;
    unsigned long long value = 0;
    for (const Level& lv : levels_) {
      int p = r[lv.point];
      int pos = lv.pos[p];
      if (pos < 0) throw domain_error("rank of element outside the group");
      value = value * lv.orbit.size() + pos;
      r = r * lv.inv_transversal[pos];
    }
    if (!r.is_identity()) throw domain_error("rank of element outside the group");
    return value;
  }

  Permutation unrank(unsigned long long value) const {
    Permutation g = Permutation::identity(degree_);
    for (size_t i = levels_.size(); i-- > 0;) {
      const Level& lv = levels_[i];
      size_t pos = value % lv.orbit.size();
      value /= lv.orbit.size();
      g = g * lv.transversal[pos];
    }
    if (value != 0) throw domain_error("unrank argument exceeds group order");
    return g;
  }

  // Uniformly random element: independent uniform transversal picks along
  // the unique factorization g = u_(k-1) * ... * u_(0).
  Permutation random_element(std::mt19937& rng) const {
    Permutation g = Permutation::identity(degree_);
    for (size_t i = levels_.size(); i-- > 0;) {
      const Level& lv = levels_[i];
      std::uniform_int_distribution<size_t> pick(0, lv.orbit.size() - 1);
      g = g * lv.transversal[pick(rng)];
    }
    return g;
  }

  // Exhaustive closure count, the test-time cross-check for BSGS orders.
  unsigned long long closure_order(unsigned long long limit = 200000) const {
    std::unordered_set<Permutation, PermutationHash> seen;
    std::vector<Permutation> queue{Permutation::identity(degree_)};
    seen.insert(queue[0]);
    for (size_t head = 0; head < queue.size(); ++head) {
      Permutation g = queue[head];
      for (const Permutation& s : gens_) {
        Permutation h = g * s;
        if (seen.insert(h).second) {
          if (seen.size() > limit)
            throw resource_limit_error("closure enumeration limit exceeded");
          queue.push_back(std::move(h));
        }
      }
    }
    return seen.size();
  }

  const std::vector<int>& base() const { return base_; }

 private:
  struct Level {
    int point = 0;
    std::vector<Permutation> gens;       // strong generators acting here
    std::vector<int> orbit;              // discovery order, orbit[0] = point
    std::vector<int> pos;                // point -> orbit position, -1 if out
    std::vector<Permutation> transversal;      // u with point^u = orbit[i]
    std::vector<Permutation> inv_transversal;  // u^-1
  };

  int degree_;
  std::vector<Permutation> gens_;
  std::vector<int> base_;
  std::vector<Level> levels_;

  // Strips g through the transversals; the residue is the identity exactly
  // when g is a member.
  Permutation sift(const Permutation& g) const {
    Permutation r = g;
    for (const Level& lv : levels_) {
      int pos = lv.pos[r[lv.point]];
      if (pos < 0) return r;
      r = r * lv.inv_transversal[pos];
    }
    return r;
  }

  // Orbit of level i under every strong generator stored at levels >= i;
  // those are exactly the generators fixing the first i base points.
  void recompute_orbit(size_t idx) {
    Level& lv = levels_[idx];
    lv.orbit.assign(1, lv.point);
    lv.pos.assign(degree_, -1);
    lv.pos[lv.point] = 0;
    lv.transversal.assign(1, Permutation::identity(degree_));
    lv.inv_transversal.assign(1, Permutation::identity(degree_));
    for (size_t head = 0; head < lv.orbit.size(); ++head) {
      for (size_t j = idx; j < levels_.size(); ++j) {
        for (const Permutation& s : levels_[j].gens) {
          int q = s[lv.orbit[head]];
          if (lv.pos[q] >= 0) continue;
          lv.pos[q] = static_cast<int>(lv.orbit.size());
          lv.orbit.push_back(q);
          Permutation u = lv.transversal[head] * s;
          lv.inv_transversal.push_back(u.inverse());
          lv.transversal.push_back(std::move(u));
        }
      }
    }
  }

  void add_strong_generator(size_t level, const Permutation& g) {
    if (level == levels_.size()) {
      // New base point: the smallest point g moves.
      int b = -1;
      for (int x = 0; x < degree_; ++x)
        if (g[x] != x) {
          b = x;
          break;
        }
      Level lv;
      lv.point = b;
      levels_.push_back(std::move(lv));
      base_.push_back(b);
    }
    levels_[level].gens.push_back(g);
    // The new generator acts at every level up to its own.
    for (size_t j = 0; j <= level; ++j) recompute_orbit(j);
  }

  void build() {
    levels_.clear();
    base_.clear();
    for (const Permutation& g : gens_) {
      // Place g at the first level whose earlier base points it fixes.
      size_t level = 0;
      Permutation r = g;
      while (level < levels_.size() && r[levels_[level].point] == levels_[level].point)
        ++level;
      if (!r.is_identity()) add_strong_generator(level, r);
    }
    // Close under Schreier generators until every level verifies.
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < levels_.size() && !changed; ++i) {
        for (size_t oi = 0; !changed && oi < levels_[i].orbit.size(); ++oi) {
          // Schreier generators range over every generator acting at this
          // level, i.e. those stored at levels >= i.
          for (size_t j = i; j < levels_.size() && !changed; ++j) {
            for (size_t si = 0; si < levels_[j].gens.size(); ++si) {
              const Level& lv = levels_[i];
              const Permutation& s = levels_[j].gens[si];
              int q = s[lv.orbit[oi]];
              Permutation schreier =
                  lv.transversal[oi] * s * lv.inv_transversal[lv.pos[q]];
              // Strip from the next level down.
              Permutation r = schreier;
              size_t level = i + 1;
              while (level < levels_.size()) {
                int pos = levels_[level].pos[r[levels_[level].point]];
                if (pos < 0) break;
                r = r * levels_[level].inv_transversal[pos];
                ++level;
              }
              if (!r.is_identity()) {
                add_strong_generator(level, r);
                changed = true;
                break;
              }
            }
          }
        }
      }
    }
  }
};

// True iff every generator of h lies in g.
inline bool is_subgroup(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree()) return false;
  for (const Permutation& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

}  // namespace trianglecount
