#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "trianglecount/classes.hpp"
#include "trianglecount/constructions.hpp"
#include "trianglecount/perm.hpp"
#include "trianglecount/permgroup.hpp"

using namespace trianglecount;

namespace {

PermGroup symmetric(int n) {
  std::vector<int> cycle(n), swap01(n);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n, swap01[i] = i;
  swap01[0] = 1;
  swap01[1] = 0;
  return PermGroup::from_generators(
      n, {Permutation(std::move(swap01)), Permutation(std::move(cycle))});
}

PermGroup cyclic(int n) {
  std::vector<int> cycle(n);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return PermGroup::from_generators(n, {Permutation(std::move(cycle))});
}

// Deterministic search for an S4 subgroup of psl2(7): an order-4 element
// together with an involution generating a subgroup of order 24.
PermGroup s4_in_psl27(const PermGroup& g, const ClassTable& classes) {
  const Permutation& a = classes.classes()[classes.index_by_label("4A")].representative;
  PermGroup found;
  classes.for_each_in_class(classes.index_by_label("2A"), [&](const Permutation& b) {
    if (found.order() == 24) return;
    PermGroup h = PermGroup::from_generators(g.degree(), {a, b});
    if (h.order() == 24) found = h;
  });
  REQUIRE(found.order() == 24);
  return found;
}

}  // namespace

TEST_CASE("permutation basics") {
  Permutation p = Permutation::parse_cycles("(1,2,3)(4,5)", 6);
  CHECK(p[0] == 1);
  CHECK(p[3] == 4);
  CHECK(p[5] == 5);
  CHECK(p.order() == 6);
  CHECK(p.cycle_str() == "(1,2,3)(4,5)");
  CHECK((p * p.inverse()).is_identity());
  Permutation q = Permutation::parse_cycles("(1,6)", 6);
  CHECK(p.conjugated_by(q) == q.inverse() * p * q);
  CHECK(Permutation::parse_cycles("()", 4) == Permutation::identity(4));
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,2)(2,3)", 4), parse_error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,7)", 4), parse_error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,2", 4), parse_error);
}

TEST_CASE("bsgs order and membership") {
  CHECK(symmetric(3).order() == 6);
  CHECK(symmetric(6).order() == 720);
  CHECK(PermGroup::from_generators(5, {}).order() == 1);
  CHECK_THROWS_AS(PermGroup::from_generators(
                      4, {Permutation::identity(4), Permutation::identity(5)}),
                  domain_error);

  PermGroup g = psl2(7);
  CHECK(g.order() == 168);
  CHECK(g.closure_order() == 168);  // exhaustive cross-check of the BSGS
  CHECK(g.degree() == 8);

  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    Permutation x = g.random_element(rng);
    CHECK(g.contains(x));
    CHECK(g.unrank(g.rank(x)) == x);
  }
  CHECK_FALSE(g.contains(Permutation::parse_cycles("(1,2)", 8)));

  // Ranking is a bijection onto [0, |G|).
  PermGroup s4 = symmetric(4);
  std::set<unsigned long long> ranks;
  for (unsigned long long r = 0; r < 24; ++r) {
    Permutation x = s4.unrank(r);
    CHECK(s4.rank(x) == r);
    ranks.insert(r);
  }
  CHECK(ranks.size() == 24);
}

TEST_CASE("psl2 constructor") {
  CHECK(psl2(2).order() == 6);
  CHECK(psl2(3).order() == 12);
  CHECK(psl2(4).order() == 60);
  CHECK(psl2(5).order() == 60);
  CHECK(psl2(8).order() == 504);
  CHECK(psl2(8).closure_order() == 504);
  CHECK(psl2(9).order() == 360);
  CHECK(psl2(11).order() == 660);
  CHECK(psl2(16).order() == 4080);
  CHECK(psl2(32).order() == 32736);
  CHECK_THROWS_AS(psl2(6), domain_error);
  CHECK_THROWS_AS(psl2(12), domain_error);
  CHECK_THROWS_AS(psl2(64), domain_error);
}

TEST_CASE("conjugacy classes of psl2(7)") {
  PermGroup g = psl2(7);
  ClassTable t = ClassTable::compute(g);
  REQUIRE(t.classes().size() == 6);
  std::multiset<unsigned long long> sizes;
  for (const ConjClass& c : t.classes()) sizes.insert(c.size);
  CHECK(sizes == std::multiset<unsigned long long>{1, 21, 42, 56, 24, 24});
  CHECK(t.classes()[0].label == "1A");
  CHECK(t.index_by_label("7A") != t.index_by_label("7B"));
  CHECK_THROWS_AS(t.index_by_label("9Z"), domain_error);

  unsigned long long total = 0;
  for (const ConjClass& c : t.classes()) {
    total += c.size;
    // Orbit-stabilizer: size * |centralizer| = |G|.
    CHECK(c.size * centralizer_order(g, c.representative) == g.order());
    // Power-map coherence from an arbitrary class element, not just the rep.
    for (const auto& [p, target] : c.power_map) {
      Permutation acc = Permutation::identity(g.degree());
      for (int i = 0; i < p; ++i) acc = acc * c.representative;
      CHECK(t.index_of(acc) == target);
    }
    // Inverse-class is an involution of the class list.
    CHECK(t.classes()[c.inverse_class].inverse_class ==
          t.index_of(c.representative));
  }
  CHECK(total == g.order());

  // 7A and 7B are mutually inverse in L2(7); 4A squares into 2A.
  CHECK(t.classes()[t.index_by_label("7A")].inverse_class == t.index_by_label("7B"));
  CHECK(t.classes()[t.index_by_label("4A")].power_map.at(2) == t.index_by_label("2A"));
}

TEST_CASE("conjugacy classes of small groups") {
  ClassTable c2 = ClassTable::compute(cyclic(2));
  REQUIRE(c2.classes().size() == 2);
  CHECK(c2.classes()[0].size == 1);
  CHECK(c2.classes()[1].size == 1);

  ClassTable t8 = ClassTable::compute(psl2(8));
  REQUIRE(t8.classes().size() == 9);
  int sevens = 0, nines = 0;
  for (const ConjClass& c : t8.classes()) {
    sevens += c.element_order == 7;
    nines += c.element_order == 9;
  }
  CHECK(sevens == 3);
  CHECK(nines == 3);
  // The three 7-classes are permuted cyclically by squaring.
  int a7 = t8.index_by_label("7A");
  int sq = t8.classes()[a7].power_map.at(2);
  CHECK(sq != a7);
  CHECK(t8.classes()[t8.classes()[sq].power_map.at(2)].power_map.at(2) == a7);
}

TEST_CASE("element order histograms") {
  std::map<int, unsigned long long> h7 = element_order_histogram(psl2(7));
  std::map<int, unsigned long long> expect7{{1, 1}, {2, 21}, {3, 56}, {4, 42}, {7, 48}};
  CHECK(h7 == expect7);

  std::map<int, unsigned long long> hc = element_order_histogram(cyclic(7));
  std::map<int, unsigned long long> expectc{{1, 1}, {7, 6}};
  CHECK(hc == expectc);

  // Independent oracle for the L2(8) census: brute-force closure walk.
  PermGroup g8 = psl2(8);
  std::unordered_set<Permutation, PermutationHash> all{Permutation::identity(9)};
  std::vector<Permutation> queue{Permutation::identity(9)};
  for (size_t head = 0; head < queue.size(); ++head)
    for (const Permutation& s : g8.generators()) {
      Permutation h = queue[head] * s;
      if (all.insert(h).second) queue.push_back(h);
    }
  std::map<int, unsigned long long> oracle;
  for (const Permutation& p : all) ++oracle[p.order()];
  CHECK(element_order_histogram(g8) == oracle);
  std::map<int, unsigned long long> expect8{
      {1, 1}, {2, 63}, {3, 56}, {7, 216}, {9, 168}};
  CHECK(oracle == expect8);
}

TEST_CASE("centralizers") {
  PermGroup g = psl2(7);
  ClassTable t = ClassTable::compute(g);
  CHECK(centralizer_order(g, Permutation::identity(8)) == 168);
  CHECK(centralizer_order(g, t.classes()[t.index_by_label("7A")].representative) == 7);
  PermGroup s4 = symmetric(4);
  CHECK(centralizer_order(s4, Permutation::parse_cycles("(1,2)", 4)) == 4);
  CHECK_THROWS_AS(centralizer_order(g, Permutation::parse_cycles("(1,2)", 8)),
                  domain_error);
  // The centralizer subgroup has the matching order and centralizes.
  Permutation z = t.classes()[t.index_by_label("7A")].representative;
  PermGroup c = centralizer(g, z);
  CHECK(c.order() == 7);
  for (const Permutation& x : c.generators()) CHECK(x * z == z * x);
}

TEST_CASE("normalizers in psl2(7)") {
  PermGroup g = psl2(7);
  ClassTable t = ClassTable::compute(g);
  Permutation z = t.classes()[t.index_by_label("7A")].representative;
  PermGroup sylow7 = PermGroup::from_generators(8, {z});
  PermGroup n = normalizer(g, sylow7);
  CHECK(n.order() == 21);
  CHECK(is_subgroup(n, sylow7));
  // N(7:3) is itself (7:3 is maximal in L2(7) among overgroups of N).
  PermGroup frob21 = n;
  CHECK(normalizer(g, frob21).order() == 21);
  CHECK(normalizer(g, g).order() == g.order());
  CHECK_THROWS_AS(normalizer(g, symmetric(8)), domain_error);
}

TEST_CASE("subgroup conjugacy") {
  PermGroup g = psl2(7);
  ClassTable t = ClassTable::compute(g);
  int i7a = t.index_by_label("7A");
  Permutation z1 = t.classes()[i7a].representative;
  // A second Sylow-7 from a different class element's cyclic group.
  Permutation z2;
  t.for_each_in_class(i7a, [&](const Permutation& x) {
    if (z2.degree() == 0 && !(x == z1) && !PermGroup::from_generators(8, {z1}).contains(x))
      z2 = x;
  });
  REQUIRE(z2.degree() == 8);
  PermGroup s1 = PermGroup::from_generators(8, {z1});
  PermGroup s2 = PermGroup::from_generators(8, {z2});
  auto [conj, w] = subgroups_conjugate(g, s1, s2);
  CHECK(conj);
  for (const Permutation& x : s1.generators()) CHECK(s2.contains(x.conjugated_by(w)));

  auto [self, id] = subgroups_conjugate(g, s1, s1);
  CHECK(self);
  CHECK(id.is_identity());

  // Order mismatch short-circuits to false: S4 (order 24) vs 7:3 (order 21).
  PermGroup s4 = s4_in_psl27(g, t);
  PermGroup frob21 = normalizer(g, s1);
  CHECK_FALSE(subgroups_conjugate(g, s4, frob21).first);
  CHECK_THROWS_AS(subgroups_conjugate(s4, s1, s2), domain_error);
}

TEST_CASE("product with cycler") {
  PermGroup k = psl2(7);
  PermGroup big = product_with_cycler(k);
  CHECK(big.order() == 168ULL * 168 * 168 * 3);
  CHECK(big.degree() == 24);

  PermGroup trivial_k(1);
  CHECK(product_with_cycler(PermGroup::from_generators(1, {})).order() == 3);

  PermGroup base = product_base(k);
  CHECK(base.order() == 168ULL * 168 * 168);
  CHECK(is_subgroup(big, base));
  CHECK_FALSE(base.contains(block_cycler(8, 3)));
  CHECK(big.contains(block_cycler(8, 3)));

  // Support counts: factor copy 1, diagonal 3, trivial 0, two-factor 2.
  std::vector<Permutation> diag_gens, first_gens, two_gens;
  for (const Permutation& g : k.generators()) {
    Permutation d =
        embed_in_block(g, 0, 3) * embed_in_block(g, 1, 3) * embed_in_block(g, 2, 3);
    diag_gens.push_back(d);
    first_gens.push_back(embed_in_block(g, 0, 3));
    two_gens.push_back(embed_in_block(g, 0, 3) * embed_in_block(g, 1, 3));
  }
  CHECK(projection_support(PermGroup::from_generators(24, first_gens), 3) == 1);
  CHECK(projection_support(PermGroup::from_generators(24, diag_gens), 3) == 3);
  CHECK(projection_support(PermGroup::from_generators(24, two_gens), 3) == 2);
  CHECK(projection_support(PermGroup::from_generators(24, {}), 3) == 0);
  CHECK_THROWS_AS(
      projection_support(PermGroup::from_generators(24, {block_cycler(8, 3)}), 3),
      domain_error);
}

TEST_CASE("bundled group files") {
  auto load = [](const std::string& stem) {
    std::ifstream in(std::string(TC_DATA_DIR) + "/" + stem + ".grp");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    GroupFile f = parse_grp(buf.str());
    return PermGroup::from_generators(f.degree, f.generators);
  };
  PermGroup l27 = load("psl2_7");
  PermGroup l28 = load("psl2_8");
  PermGroup c7 = load("cyclic7");
  PermGroup ext = load("2e3_l32");
  CHECK(l27.order() == 168);
  CHECK(l28.order() == 504);
  CHECK(c7.order() == 7);
  CHECK(ext.order() == 1344);
  // Exhaustive cross-check of every bundled BSGS order.
  CHECK(l27.closure_order() == 168);
  CHECK(l28.closure_order() == 504);
  CHECK(c7.closure_order() == 7);
  CHECK(ext.closure_order() == 1344);

  // The extension is certified nonsplit by its order-8 elements; the split
  // extension AGL(3,2) has none.
  std::map<int, unsigned long long> hist = element_order_histogram(ext);
  std::map<int, unsigned long long> expect{{1, 1},  {2, 91},  {3, 224}, {4, 84},
                                           {6, 224}, {7, 384}, {8, 336}};
  CHECK(hist == expect);
  // Its generating pair is already a Hurwitz pair.
  CHECK(ext.generators().size() == 2);
  CHECK(ext.generators()[0].order() == 2);
  CHECK(ext.generators()[1].order() == 3);
  CHECK((ext.generators()[0] * ext.generators()[1]).order() == 7);
}

TEST_CASE("grp format round trip") {
  PermGroup g = psl2(7);
  std::string text = print_grp("psl2_7", g);
  GroupFile f = parse_grp(text);
  CHECK(f.name == "psl2_7");
  CHECK(f.degree == 8);
  PermGroup back = PermGroup::from_generators(f.degree, f.generators);
  CHECK(back.order() == 168);

  GroupFile c = parse_grp("# a comment\nname c7\n\ndegree 7 # trailing\n(1,2,3,4,5,6,7)\n");
  CHECK(c.name == "c7");
  CHECK(PermGroup::from_generators(c.degree, c.generators).order() == 7);

  CHECK_THROWS_AS(parse_grp("degree 4\n(1,2)\n"), parse_error);
  CHECK_THROWS_AS(parse_grp("name x\n"), parse_error);
  CHECK_THROWS_AS(parse_grp("name x\ndegree 3\n(1,4)\n"), parse_error);
  CHECK_THROWS_AS(parse_grp(""), parse_error);
}
