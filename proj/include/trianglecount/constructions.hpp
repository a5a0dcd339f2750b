#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "permgroup.hpp"

namespace trianglecount {

// Arithmetic in GF(p^e) for small prime powers.  Elements are integers in
// [0, q): the base-p digit expansions of polynomials over GF(p) reduced
// modulo a fixed monic irreducible of degree e.
class GaloisField {
 public:
  explicit GaloisField(int q) : q_(q) {
    int m = q;
    for (int d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        if (p_ && p_ != d) throw domain_error(std::to_string(q) + " is not a prime power");
        p_ = d;
        ++e_;
        m /= d;
      }
    if (m > 1) {
      if (p_ && p_ != m) throw domain_error(std::to_string(q) + " is not a prime power");
      if (!p_) {
        p_ = m;
        e_ = 1;
      } else {
        ++e_;
      }
    }
    if (q < 2 || !p_) throw domain_error(std::to_string(q) + " is not a prime power");
    build_tables();
  }

  int size() const { return q_; }
  int characteristic() const { return p_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const {
    if (a == 0) throw domain_error("inverse of zero in GF(q)");
    return inv_[a];
  }
  // A generator of the multiplicative group.
  int primitive() const { return primitive_; }

 private:
  int q_, p_ = 0, e_ = 0;
  std::vector<int> add_, neg_, mul_, inv_;
  int primitive_ = 0;

  std::vector<int> digits(int a) const {
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  int undigits(const std::vector<int>& d) const {
    int a = 0;
    for (int i = e_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
  }

  // Polynomial product of the digit expansions of a and b, reduced modulo
  // the monic irreducible with coefficient vector irr (degree e).
  int poly_mul(int a, int b, const std::vector<int>& irr) const {
    std::vector<int> prod(2 * e_ - 1, 0);
    std::vector<int> da = digits(a), db = digits(b);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (int i = 2 * e_ - 2; i >= e_; --i) {
      int c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (int j = 0; j < e_; ++j)
        prod[i - e_ + j] = ((prod[i - e_ + j] - c * irr[j]) % p_ + p_) % p_;
    }
    prod.resize(e_);
    return undigits(prod);
  }

  void build_tables() {
    // Find a monic irreducible of degree e: no product of two lower-degree
    // monic polynomials equals it.  For e = 1 use x itself (unused).
    std::vector<int> irr(e_, 0);
    if (e_ > 1) {
      bool found = false;
      for (int cand = 0; cand < q_ && !found; ++cand) {
        irr = digits(cand);
        // Reducibility test: some monic factor of degree 1..e/2 divides.
        bool reducible = false;
        for (int df = 1; 2 * df <= e_ && !reducible; ++df) {
          int qf = 1;
          for (int i = 0; i < df; ++i) qf *= p_;
          for (int f = 0; f < qf && !reducible; ++f) {
            // Divide x^e + irr by the monic factor x^df + digits(f).
            std::vector<int> rem(e_ + 1, 0);
            for (int i = 0; i < e_; ++i) rem[i] = irr[i];
            rem[e_] = 1;
            std::vector<int> fac = digits(f);
            fac.resize(df);
            for (int i = e_; i >= df; --i) {
              int c = rem[i];
              if (c == 0) continue;
              rem[i] = 0;
              for (int j = 0; j < df; ++j)
                rem[i - df + j] = ((rem[i - df + j] - c * fac[j]) % p_ + p_) % p_;
            }
            reducible =
                std::all_of(rem.begin(), rem.end(), [](int r) { return r == 0; });
            if (reducible) break;
          }
        }
        if (!reducible) found = true;
      }
      if (!found) throw integrity_error("no irreducible polynomial found");
    }

    add_.resize(q_ * q_);
    neg_.resize(q_);
    mul_.resize(q_ * q_);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
      std::vector<int> da = digits(a);
      for (int i = 0; i < e_; ++i) da[i] = (p_ - da[i]) % p_;
      neg_[a] = undigits(da);
      for (int b = 0; b < q_; ++b) {
        std::vector<int> s = digits(a), db = digits(b);
        for (int i = 0; i < e_; ++i) s[i] = (s[i] + db[i]) % p_;
        add_[a * q_ + b] = undigits(s);
        mul_[a * q_ + b] = e_ == 1 ? (a * b) % p_ : poly_mul(a, b, irr);
      }
    }
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) inv_[a] = b;

    for (int g = 2; g < q_; ++g) {
      int x = g, steps = 1;
      while (x != 1) {
        x = mul_[x * q_ + g];
        ++steps;
      }
      if (steps == q_ - 1) {
        primitive_ = g;
        break;
      }
    }
    if (q_ == 2) primitive_ = 1;
  }
};

// The natural action of PSL(2, q) on the q+1 points of the projective line:
// field elements 0..q-1 plus infinity at index q.  Generators: x -> x+1,
// x -> cx (c generating the squares), x -> -1/x.
inline PermGroup psl2(int q) {
  if (q > 32) throw domain_error("psl2 supports prime powers up to 32");
  GaloisField f(q);
  int inf = q;
  std::vector<int> translate(q + 1), scale(q + 1), invert(q + 1);
  int c = f.characteristic() == 2 ? f.primitive() : f.mul(f.primitive(), f.primitive());
  for (int x = 0; x < q; ++x) {
    translate[x] = f.add(x, 1);
    scale[x] = f.mul(c, x);
    invert[x] = x == 0 ? inf : f.neg(f.inv(x));
  }
  translate[inf] = inf;
  scale[inf] = inf;
  invert[inf] = 0;
  return PermGroup::from_generators(
      q + 1, {Permutation(std::move(translate)), Permutation(std::move(scale)),
              Permutation(std::move(invert))});
}

// Embeds a degree-d permutation into block `block` of `blocks` blocks.
inline Permutation embed_in_block(const Permutation& p, int block, int blocks) {
  int d = p.degree();
  std::vector<int> img(d * blocks);
  for (int x = 0; x < d * blocks; ++x) img[x] = x;
  for (int x = 0; x < d; ++x) img[block * d + x] = block * d + p[x];
  return Permutation(std::move(img));
}

// The permutation cycling blocks 0 -> 1 -> 2 -> 0.
inline Permutation block_cycler(int d, int blocks) {
  std::vector<int> img(d * blocks);
  for (int x = 0; x < d * blocks; ++x) img[x] = (x + d) % (d * blocks);
  return Permutation(std::move(img));
}

// K x K x K on three disjoint copies of K's domain, extended by the block
// 3-cycle.  Order |K|^3 * 3.
inline PermGroup product_with_cycler(const PermGroup& k) {
  unsigned long long n = k.order();
  if (n * n * n > 100000000ULL / 3ULL)
    throw resource_limit_error("product_with_cycler result exceeds the size limit");
  std::vector<Permutation> gens;
  for (const Permutation& g : k.generators()) gens.push_back(embed_in_block(g, 0, 3));
  gens.push_back(block_cycler(k.degree(), 3));
  return PermGroup::from_generators(k.degree() * 3, std::move(gens));
}

// The base subgroup K x K x K of the same construction.
inline PermGroup product_base(const PermGroup& k) {
  std::vector<Permutation> gens;
  for (int b = 0; b < 3; ++b)
    for (const Permutation& g : k.generators()) gens.push_back(embed_in_block(g, b, 3));
  return PermGroup::from_generators(k.degree() * 3, std::move(gens));
}

// Number of factors onto which H projects nontrivially; H must preserve
// every block pointwise-as-a-set (i.e. lie inside the base group).
inline int projection_support(const PermGroup& h, int blocks) {
  int total = h.degree();
  if (blocks <= 0 || total % blocks != 0)
    throw domain_error("degree is not divisible into blocks");
  int d = total / blocks;
  std::vector<bool> moved(blocks, false);
  for (const Permutation& g : h.generators())
    for (int x = 0; x < total; ++x) {
      if (g[x] / d != x / d)
        throw domain_error("subgroup is not inside the base group");
      if (g[x] != x) moved[x / d] = true;
    }
  int support = 0;
  for (bool m : moved) support += m;
  return support;
}

// ----- .grp file format -----------------------------------------------
// name <id>
// degree <d>
// one generator per line, disjoint cycles, 1-based points; '#' comments.

struct GroupFile {
  std::string name;
  int degree = 0;
  std::vector<Permutation> generators;
};

inline GroupFile parse_grp(std::string_view text) {
  GroupFile out;
  int lineno = 0;
  bool have_name = false, have_degree = false;
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [&](const std::string& why) -> void {
    throw parse_error(".grp line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string body = line.substr(a, b - a + 1);
    if (!have_name) {
      if (body.rfind("name ", 0) != 0) fail("expected 'name <id>'");
      out.name = body.substr(5);
      have_name = true;
    } else if (!have_degree) {
      if (body.rfind("degree ", 0) != 0) fail("expected 'degree <d>'");
      try {
        out.degree = std::stoi(body.substr(7));
      } catch (...) {
        fail("bad degree");
      }
      if (out.degree < 1 || out.degree > 100000) fail("degree out of range");
      have_degree = true;
    } else {
      try {
        out.generators.push_back(Permutation::parse_cycles(body, out.degree));
      } catch (const parse_error& e) {
        fail(e.what());
      }
    }
  }
  if (!have_name || !have_degree) {
    lineno = 0;
    fail("missing name or degree header");
  }
  return out;
}

inline std::string print_grp(const std::string& name, const PermGroup& g) {
  std::string out = "name " + name + "\ndegree " + std::to_string(g.degree()) + "\n";
  for (const Permutation& p : g.generators()) out += p.cycle_str() + "\n";
  return out;
}

}  // namespace trianglecount
