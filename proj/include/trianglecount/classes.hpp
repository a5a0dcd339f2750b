#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "permgroup.hpp"

namespace trianglecount {

// Hard ceiling for full conjugacy-class computations; desk-scale groups top
// out near 10^7 and the visited bitmaps are sized from the group order.
inline constexpr unsigned long long kClassOrderLimit = 10000000ULL;
// Subgroups are fingerprinted by their sorted element lists up to this size.
inline constexpr unsigned long long kFingerprintLimit = 10000ULL;

struct ConjClass {
  Permutation representative;  // lexicographically least element of the class
  unsigned long long size = 0;
  int element_order = 1;
  std::map<int, int> power_map;  // prime -> class index of rep^p
  int inverse_class = 0;
  std::string label;  // ATLAS-style: order, then decreasing centralizer size
};

// Complete class data for one group, plus a rank-indexed lookup table that
// answers "which class is this element in" in O(base length) time.
class ClassTable {
 public:
  // Builds the table by conjugation-orbit sweeps over element ranks.
  static ClassTable compute(const PermGroup& g) {
    unsigned long long n = g.order();
    if (n > kClassOrderLimit)
      throw resource_limit_error("group order " + std::to_string(n) +
                                 " exceeds the class-computation limit");
    ClassTable table;
    table.group_ = g;
    std::vector<Permutation> gens = g.generators();
    table.class_of_rank_.assign(n, kUnassigned);

    std::vector<ConjClass> classes;
    for (unsigned long long r = 0; r < n; ++r) {
      if (table.class_of_rank_[r] != kUnassigned) continue;
      uint16_t id = static_cast<uint16_t>(classes.size());
      if (classes.size() >= kUnassigned)
        throw resource_limit_error("too many conjugacy classes");
      // Conjugation-orbit breadth-first sweep from this representative.
      std::vector<unsigned long long> queue{r};
      table.class_of_rank_[r] = id;
      Permutation least = g.unrank(r);
      unsigned long long size = 0;
      for (size_t head = 0; head < queue.size(); ++head) {
        Permutation x = g.unrank(queue[head]);
        ++size;
        if (x < least) least = x;
        for (const Permutation& s : gens) {
          unsigned long long cr = g.rank(x.conjugated_by(s));
          if (table.class_of_rank_[cr] == kUnassigned) {
            table.class_of_rank_[cr] = id;
            queue.push_back(cr);
          }
        }
      }
      ConjClass c;
      c.representative = std::move(least);
      c.size = size;
      c.element_order = c.representative.order();
      classes.push_back(std::move(c));
    }

    // ATLAS ordering: element order ascending, centralizer size descending
    // (= class size ascending), then least representative image array.
    std::vector<uint16_t> by_order(classes.size());
    for (size_t i = 0; i < by_order.size(); ++i) by_order[i] = static_cast<uint16_t>(i);
    std::sort(by_order.begin(), by_order.end(), [&](uint16_t a, uint16_t b) {
      const ConjClass &x = classes[a], &y = classes[b];
      if (x.element_order != y.element_order) return x.element_order < y.element_order;
      if (x.size != y.size) return x.size < y.size;
      return x.representative < y.representative;
    });
    std::vector<uint16_t> new_id(classes.size());
    for (size_t i = 0; i < by_order.size(); ++i) new_id[by_order[i]] = static_cast<uint16_t>(i);
    for (auto& id : table.class_of_rank_) id = new_id[id];
    std::vector<ConjClass> ordered(classes.size());
    for (size_t i = 0; i < classes.size(); ++i)
      ordered[new_id[i]] = std::move(classes[i]);
    table.classes_ = std::move(ordered);

    // Labels: alphabetic suffix within each element order.
    int last_order = 0, suffix = 0;
    for (ConjClass& c : table.classes_) {
      if (c.element_order != last_order) {
        last_order = c.element_order;
        suffix = 0;
      }
      if (suffix >= 26) throw resource_limit_error("class label suffix overflow");
      c.label = std::to_string(c.element_order) + static_cast<char>('A' + suffix);
      ++suffix;
    }

    // Inverse classes and power maps for every prime dividing the exponent.
    long long exponent = 1;
    for (const ConjClass& c : table.classes_)
      exponent = std::lcm<long long>(exponent, c.element_order);
    std::vector<int> primes;
    for (long long p = 2, e = exponent; e > 1; ++p)
      if (e % p == 0) {
        primes.push_back(static_cast<int>(p));
        while (e % p == 0) e /= p;
      }
    for (ConjClass& c : table.classes_) {
      c.inverse_class = table.index_of(c.representative.inverse());
      for (int p : primes) {
        Permutation q = c.representative;
        Permutation acc = Permutation::identity(g.degree());
        for (int t = 0; t < p; ++t) acc = acc * q;
        c.power_map[p] = table.index_of(acc);
      }
    }
    return table;
  }

  const std::vector<ConjClass>& classes() const { return classes_; }
  const PermGroup& group() const { return group_; }
  unsigned long long group_order() const { return group_.order(); }

  int index_of(const Permutation& x) const {
    return class_of_rank_[group_.rank(x)];
  }

  int index_by_label(const std::string& label) const {
    for (size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].label == label) return static_cast<int>(i);
    throw domain_error("unknown class label '" + label + "'");
  }

  // Streams every element of one class through fn, in deterministic
  // (breadth-first from the representative) order.
  template <typename Fn>
  void for_each_in_class(int index, Fn&& fn) const {
    const PermGroup& g = group_;
    std::vector<bool> seen(g.order(), false);
    std::vector<unsigned long long> queue{g.rank(classes_[index].representative)};
    seen[queue[0]] = true;
    for (size_t head = 0; head < queue.size(); ++head) {
      Permutation x = g.unrank(queue[head]);
      for (const Permutation& s : g.generators()) {
        unsigned long long cr = g.rank(x.conjugated_by(s));
        if (!seen[cr]) {
          seen[cr] = true;
          queue.push_back(cr);
        }
      }
      fn(x);
    }
  }

 private:
  static constexpr uint16_t kUnassigned = 0xFFFF;
  PermGroup group_;
  std::vector<ConjClass> classes_;
  std::vector<uint16_t> class_of_rank_;
};

// |C_G(x)| by orbit-stabilizer: the conjugation orbit of x is its class.
inline unsigned long long centralizer_order(const PermGroup& g, const Permutation& x) {
  if (!g.contains(x)) throw domain_error("centralizer of an element outside the group");
  if (g.order() > kClassOrderLimit)
    throw resource_limit_error("group too large for centralizer computation");
  std::vector<bool> seen(g.order(), false);
  std::vector<unsigned long long> queue{g.rank(x)};
  seen[queue[0]] = true;
  unsigned long long orbit = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    Permutation y = g.unrank(queue[head]);
    ++orbit;
    for (const Permutation& s : g.generators()) {
      unsigned long long cr = g.rank(y.conjugated_by(s));
      if (!seen[cr]) {
        seen[cr] = true;
        queue.push_back(cr);
      }
    }
  }
  return g.order() / orbit;
}

// The centralizer subgroup, via Schreier generators on the conjugation
// orbit of x.  Stops collecting once the orbit-stabilizer order is reached.
inline PermGroup centralizer(const PermGroup& g, const Permutation& x) {
  if (!g.contains(x)) throw domain_error("centralizer of an element outside the group");
  std::unordered_map<Permutation, size_t, PermutationHash> index;
  std::vector<Permutation> orbit{x};
  std::vector<Permutation> witness{Permutation::identity(g.degree())};
  index.emplace(x, 0);
  std::vector<Permutation> stab_gens;
  PermGroup stab(g.degree());
  for (size_t head = 0; head < orbit.size(); ++head) {
    for (const Permutation& s : g.generators()) {
      Permutation y = orbit[head].conjugated_by(s);
      auto it = index.find(y);
      if (it == index.end()) {
        index.emplace(y, orbit.size());
        witness.push_back(witness[head] * s);
        orbit.push_back(std::move(y));
      } else {
        Permutation schreier = witness[head] * s * witness[it->second].inverse();
        if (!schreier.is_identity() && !stab.contains(schreier)) {
          stab_gens.push_back(std::move(schreier));
          stab = PermGroup::from_generators(g.degree(), stab_gens);
        }
      }
    }
  }
  if (stab.order() * orbit.size() != g.order())
    throw integrity_error("orbit-stabilizer mismatch in centralizer");
  return stab;
}

// A conjugating element w with x^w = y, if one exists.
inline std::optional<Permutation> conjugating_element(const PermGroup& g,
                                                      const Permutation& x,
                                                      const Permutation& y) {
  std::unordered_map<Permutation, Permutation, PermutationHash> witness;
  std::vector<Permutation> queue{x};
  witness.emplace(x, Permutation::identity(g.degree()));
  for (size_t head = 0; head < queue.size(); ++head) {
    Permutation z = queue[head];
    Permutation w = witness.at(z);
    if (z == y) return w;
    for (const Permutation& s : g.generators()) {
      Permutation c = z.conjugated_by(s);
      if (witness.emplace(c, w * s).second) queue.push_back(std::move(c));
    }
  }
  return std::nullopt;
}

namespace detail {

// Sorted element list of the group generated by gens; the exactness-first
// subgroup fingerprint.  Only for subgroups up to kFingerprintLimit.
inline std::vector<Permutation> element_list(int degree, const std::vector<Permutation>& gens) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(degree)};
  seen.insert(queue[0]);
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const Permutation& s : gens) {
      Permutation h = queue[head] * s;
      if (seen.insert(h).second) {
        if (seen.size() > kFingerprintLimit)
          throw resource_limit_error("subgroup too large to fingerprint");
        queue.push_back(std::move(h));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline std::string fingerprint_of_list(const std::vector<Permutation>& elements) {
  std::string key;
  key.reserve(elements.size() * elements[0].degree());
  for (const Permutation& p : elements)
    for (int v : p.images()) key.push_back(static_cast<char>(v));
  return key;
}

inline std::vector<Permutation> conjugate_list(const std::vector<Permutation>& elements,
                                               const Permutation& w) {
  std::vector<Permutation> out;
  out.reserve(elements.size());
  for (const Permutation& p : elements) out.push_back(p.conjugated_by(w));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// N_G(H) by orbit-stabilizer on the conjugation action over subgroup
// fingerprints.  H must be contained in G.
inline PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
  if (!is_subgroup(g, h)) throw domain_error("normalizer argument is not a subgroup");
  if (h.order() == g.order()) return g;  // N_G(G) = G
  if (h.order() > kFingerprintLimit)
    throw resource_limit_error("subgroup too large to fingerprint");

  std::vector<Permutation> base_list = detail::element_list(g.degree(), h.generators());
  std::unordered_map<std::string, size_t> index;
  std::vector<Permutation> witness{Permutation::identity(g.degree())};
  index.emplace(detail::fingerprint_of_list(base_list), 0);

  std::vector<Permutation> norm_gens = h.generators();  // H normalizes itself
  PermGroup norm = PermGroup::from_generators(g.degree(), norm_gens);

  for (size_t head = 0; head < witness.size(); ++head) {
    for (const Permutation& s : g.generators()) {
      Permutation w = witness[head] * s;
      std::string key =
          detail::fingerprint_of_list(detail::conjugate_list(base_list, w));
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(std::move(key), witness.size());
        witness.push_back(std::move(w));
      } else {
        Permutation schreier = w * witness[it->second].inverse();
        if (!schreier.is_identity() && !norm.contains(schreier)) {
          norm_gens.push_back(std::move(schreier));
          norm = PermGroup::from_generators(g.degree(), norm_gens);
        }
      }
    }
  }
  if (norm.order() * index.size() != g.order())
    throw integrity_error("orbit-stabilizer mismatch in normalizer");
  return norm;
}

// Whether H1 and H2 are conjugate in G; returns the witness on success.
// Subgroups of different orders are never conjugate (fast false).
inline std::pair<bool, Permutation> subgroups_conjugate(const PermGroup& g,
                                                        const PermGroup& h1,
                                                        const PermGroup& h2) {
  if (!is_subgroup(g, h1) || !is_subgroup(g, h2))
    throw domain_error("subgroups_conjugate arguments must lie inside the group");
  if (h1.order() != h2.order()) return {false, Permutation::identity(g.degree())};
  if (h1.order() > kFingerprintLimit)
    throw resource_limit_error("subgroup too large to fingerprint");
  std::vector<Permutation> list1 = detail::element_list(g.degree(), h1.generators());
  std::vector<Permutation> list2 = detail::element_list(g.degree(), h2.generators());
  std::string target = detail::fingerprint_of_list(list2);

  std::unordered_map<std::string, Permutation> witness;
  std::string start = detail::fingerprint_of_list(list1);
  if (start == target) return {true, Permutation::identity(g.degree())};
  std::vector<Permutation> queue{Permutation::identity(g.degree())};
  witness.emplace(std::move(start), queue[0]);
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const Permutation& s : g.generators()) {
      Permutation w = queue[head] * s;
      std::string key = detail::fingerprint_of_list(detail::conjugate_list(list1, w));
      if (key == target) return {true, w};
      if (witness.emplace(std::move(key), w).second) queue.push_back(std::move(w));
    }
  }
  return {false, Permutation::identity(g.degree())};
}

// Exact census of element orders; the isomorphism-type fingerprint.
inline std::map<int, unsigned long long> element_order_histogram(const PermGroup& g) {
  if (g.order() > 1000000ULL)
    throw resource_limit_error("group too large for an element-order census");
  std::map<int, unsigned long long> hist;
  for (unsigned long long r = 0; r < g.order(); ++r) ++hist[g.unrank(r).order()];
  return hist;
}

}  // namespace trianglecount
