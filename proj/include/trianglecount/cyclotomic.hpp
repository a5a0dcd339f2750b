#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace trianglecount {

namespace detail {

inline int totient(int n) {
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) result -= result / m;
  return result;
}

inline std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::vector<int> divisors(int n) {
  std::vector<int> ds;
  for (int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Coefficients of the n-th cyclotomic polynomial, constant term first,
// leading coefficient 1.  Built once per conductor by exact division of
// x^n - 1 by all lower cyclotomic polynomials.
inline const std::vector<Integer>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<Integer>> cache = {{1, {-1, 1}}};
  static std::mutex lock;
  std::scoped_lock guard(lock);
  auto hit = cache.find(n);
  if (hit != cache.end()) return hit->second;
  for (int m : divisors(n)) {
    if (cache.count(m)) continue;
    std::vector<Integer> poly(m + 1);
    poly[0] = -1;
    poly[m] = 1;
    for (int d : divisors(m)) {
      if (d == m) continue;
      // Divide poly by the (monic) d-th cyclotomic polynomial, in place.
      const std::vector<Integer>& div = cache.at(d);
      std::vector<Integer> quot(poly.size() - div.size() + 1);
      for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
        Integer c = poly[i + div.size() - 1];
        quot[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < div.size(); ++j) poly[i + j] -= c * div[j];
      }
      poly = std::move(quot);
    }
    cache.emplace(m, std::move(poly));
  }
  return cache.at(n);
}

}  // namespace detail

// An exact element of a cyclotomic field Q(zeta_n), kept in a canonical form:
// coordinates over the power basis zeta_n^0 .. zeta_n^{phi(n)-1} (reduced
// modulo the n-th cyclotomic polynomial) at the smallest possible conductor
// n with n != 2 (mod 4).  Canonical form makes equality a plain comparison,
// rational values always sit at conductor 1, and no floating point appears
// anywhere.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{Rational(0)} {}
  Cyclotomic(const Rational& r) : n_(1), c_{r} {}
  Cyclotomic(const Integer& i) : n_(1), c_{Rational(i)} {}
  Cyclotomic(int i) : n_(1), c_{Rational(i)} {}

  // coeff * E(n)^k where E(n) = exp(2*pi*i/n); k is taken mod n.
  static Cyclotomic root(int n, long long k, const Rational& coeff = Rational(1)) {
    if (n <= 0) throw domain_error("cyclotomic conductor must be positive");
    long long e = k % n;
    if (e < 0) e += n;
    std::vector<Rational> dense(n);
    dense[static_cast<size_t>(e)] = coeff;
    return Cyclotomic(n, std::move(dense));
  }

  int conductor() const { return n_; }
  bool is_zero() const { return n_ == 1 && c_[0] == 0; }
  bool is_rational() const { return n_ == 1; }

  // The rational value, or nullopt when the reduced form is irrational.
  std::optional<Rational> to_rational() const {
    if (n_ == 1) return c_[0];
    return std::nullopt;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    int l = std::lcm(a.n_, b.n_);
    std::vector<Rational> dense(l);
    a.spread_into(dense, l);
    b.spread_into(dense, l);
    return Cyclotomic(l, std::move(dense));
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return a + (-b);
  }

  Cyclotomic operator-() const {
    Cyclotomic r(*this);
    for (auto& c : r.c_) c = -c;
    return r;  // negation never changes the minimal conductor
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    int l = std::lcm(a.n_, b.n_);
    int sa = l / a.n_, sb = l / b.n_;
    std::vector<Rational> dense(l);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        size_t e = (i * sa + j * sb) % l;
        dense[e] += a.c_[i] * b.c_[j];
      }
    }
    return Cyclotomic(l, std::move(dense));
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  // Galois automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1.
  Cyclotomic galois(long long k) const {
    long long e = k % n_;
    if (e < 0) e += n_;
    if (n_ == 1) return *this;
    if (std::gcd(static_cast<long long>(n_), e) != 1)
      throw domain_error("galois exponent not coprime to conductor");
    std::vector<Rational> dense(n_);
    for (size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) dense[(j * e) % n_] += c_[j];
    return Cyclotomic(n_, std::move(dense));
  }

  // Complex conjugation zeta_n -> zeta_n^{-1}; fixes rational values.
  Cyclotomic conjugate() const { return galois(-1); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  // Printed in the same grammar parse() accepts, terms in increasing
  // exponent order: "-1-E(7)-E(7)^2-E(7)^4", "1/2", "2*E(4)".
  std::string str() const {
    if (n_ == 1) return rat_str(c_[0]);
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      Rational c = c_[k];
      bool negative = c < 0;
      if (negative) c = -c;
      if (!out.empty() && !negative) out += "+";
      if (negative) out += "-";
      if (k == 0) {
        out += rat_str(c);
        continue;
      }
      if (c != 1) out += rat_str(c) + "*";
      out += "E(" + std::to_string(n_) + ")";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

  // Grammar: expr := term (('+'|'-') term)*
  //          term := rational | rational? '*'? 'E(' int ')' ('^' int)?
  // Whitespace-insensitive.  Errors carry the byte offset.
  static Cyclotomic parse(std::string_view text);

 private:
  int n_;
  std::vector<Rational> c_;

  // Canonicalising constructor: takes a dense exponent-indexed vector of
  // length n and reduces it to minimal-conductor power-basis form.
  Cyclotomic(int n, std::vector<Rational> dense) {
    canonicalize(n, std::move(dense));
  }

  void spread_into(std::vector<Rational>& dense, int l) const {
    int s = l / n_;
    for (size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) dense[j * s] += c_[j];
  }

  // Polynomial remainder modulo the n-th cyclotomic polynomial; returns
  // power-basis coordinates of length phi(n).
  static std::vector<Rational> mod_phi(int n, std::vector<Rational> v) {
    int phi = detail::totient(n);
    const std::vector<Integer>& poly = detail::cyclotomic_polynomial(n);
    if (static_cast<int>(v.size()) < phi) v.resize(phi);
    for (int i = static_cast<int>(v.size()) - 1; i >= phi; --i) {
      if (v[i] == 0) continue;
      Rational c = v[i];
      for (int j = 0; j <= phi; ++j) v[i - phi + j] -= c * Rational(poly[j]);
    }
    v.resize(phi);
    return v;
  }

  void canonicalize(int n, std::vector<Rational> dense) {
    // Fold zeta_{2m} = -zeta_m^{(m+1)/2} while n = 2 mod 4; the canonical
    // conductor convention excludes those n.
    while (n % 4 == 2) {
      int m = n / 2;
      std::vector<Rational> folded(m);
      for (int e = 0; e < n; ++e) {
        if (dense[e] == 0) continue;
        int e2 = static_cast<int>((static_cast<long long>(e) * ((m + 1) / 2)) % m);
        if (e % 2 == 0)
          folded[e2] += dense[e];
        else
          folded[e2] -= dense[e];
      }
      n = m;
      dense = std::move(folded);
    }
    if (n == 1) {
      n_ = 1;
      c_ = {dense.empty() ? Rational(0) : dense[0]};
      return;
    }
    std::vector<Rational> coords = mod_phi(n, std::move(dense));

    // Conductor descent: drop to n/p whenever the value is fixed by
    // Gal(Q(zeta_n)/Q(zeta_{n/p})), i.e. by every sigma_k with k = 1 mod n/p.
    bool descended = true;
    while (descended && n > 1) {
      descended = false;
      for (int p : detail::prime_factors(n)) {
        int d = n / p;
        if (!invariant_over(n, coords, d)) continue;
        if (d == 1) {
          // Rational value: the unique power-basis form is the constant.
          n_ = 1;
          c_ = {coords[0]};
          return;
        }
        coords = reexpress(n, coords, d);
        if (d % 4 == 2) {
          // Re-enter the fold above via the dense representation.
          std::vector<Rational> dense2(d);
          for (size_t j = 0; j < coords.size(); ++j) dense2[j] = coords[j];
          canonicalize(d, std::move(dense2));
          return;
        }
        n = d;
        descended = true;
        break;
      }
    }
    n_ = n;
    c_ = std::move(coords);
  }

  // True iff the value with power-basis coordinates `coords` at conductor n
  // is fixed by every Galois automorphism sigma_k with k = 1 (mod d).
  static bool invariant_over(int n, const std::vector<Rational>& coords, int d) {
    for (int k = 1 + d; k < n; k += d) {
      if (std::gcd(k, n) != 1) continue;
      std::vector<Rational> dense(n);
      for (size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0) dense[(j * static_cast<long long>(k)) % n] += coords[j];
      if (mod_phi(n, std::move(dense)) != coords) return false;
    }
    return true;
  }

  // Solves for coordinates over the power basis of Q(zeta_d) embedded in
  // Q(zeta_n), d | n; caller guarantees the value lies in the subfield.
  static std::vector<Rational> reexpress(int n, const std::vector<Rational>& coords, int d) {
    int phi_n = detail::totient(n);
    int phi_d = detail::totient(d);
    int stride = n / d;
    // Column j is the reduction of zeta_n^{j*stride}; augmented with coords.
    std::vector<std::vector<Rational>> m(phi_n, std::vector<Rational>(phi_d + 1));
    for (int j = 0; j < phi_d; ++j) {
      std::vector<Rational> dense(n);
      dense[(static_cast<long long>(j) * stride) % n] = 1;
      std::vector<Rational> col = mod_phi(n, std::move(dense));
      for (int i = 0; i < phi_n; ++i) m[i][j] = col[i];
    }
    for (int i = 0; i < phi_n; ++i) m[i][phi_d] = coords[i];

    std::vector<int> pivot_row(phi_d, -1);
    int row = 0;
    for (int col = 0; col < phi_d && row < phi_n; ++col) {
      int pr = -1;
      for (int i = row; i < phi_n; ++i)
        if (m[i][col] != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      std::swap(m[row], m[pr]);
      Rational inv = m[row][col];
      for (int j = col; j <= phi_d; ++j) m[row][j] /= inv;
      for (int i = 0; i < phi_n; ++i) {
        if (i == row || m[i][col] == 0) continue;
        Rational f = m[i][col];
        for (int j = col; j <= phi_d; ++j) m[i][j] -= f * m[row][j];
      }
      pivot_row[col] = row;
      ++row;
    }
    std::vector<Rational> out(phi_d);
    for (int col = 0; col < phi_d; ++col)
      if (pivot_row[col] >= 0) out[col] = m[pivot_row[col]][phi_d];
    return out;
  }
};

inline Cyclotomic Cyclotomic::parse(std::string_view text) {
  size_t pos = 0;
  auto fail = [&](size_t at, const std::string& why) -> void {
    throw parse_error("cyclotomic parse error at byte " + std::to_string(at) +
                      ": " + why);
  };
  auto skip_ws = [&]() {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto more = [&]() { return pos < text.size(); };
  auto parse_uint = [&](const char* what) -> long long {
    skip_ws();
    size_t at = pos;
    if (!more() || !isdigit(static_cast<unsigned char>(text[pos])))
      fail(pos, std::string("expected ") + what);
    long long v = 0;
    while (more() && isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000000) fail(at, std::string(what) + " out of range");
      ++pos;
    }
    return v;
  };
  // term := rational | rational? '*'? 'E(' int ')' ('^' int)?
  auto parse_term = [&]() -> Cyclotomic {
    skip_ws();
    if (!more()) fail(pos, "expected term");
    Rational coeff = 1;
    bool saw_coeff = false;
    if (isdigit(static_cast<unsigned char>(text[pos]))) {
      long long num = parse_uint("numerator");
      long long den = 1;
      skip_ws();
      if (more() && text[pos] == '/') {
        ++pos;
        size_t at = pos;
        den = parse_uint("denominator");
        if (den == 0) fail(at, "zero denominator");
      }
      coeff = Rational(num, den);
      saw_coeff = true;
      skip_ws();
      if (more() && text[pos] == '*') {
        ++pos;
        skip_ws();
        if (!more() || text[pos] != 'E') fail(pos, "expected E(...) after '*'");
      }
    }
    skip_ws();
    if (more() && text[pos] == 'E') {
      ++pos;
      skip_ws();
      if (!more() || text[pos] != '(') fail(pos, "expected '(' after E");
      ++pos;
      skip_ws();
      size_t at = pos;
      bool neg = false;
      if (more() && text[pos] == '-') {
        neg = true;
        ++pos;
      }
      long long n = parse_uint("conductor");
      if (neg || n <= 0) fail(at, "conductor must be a positive integer");
      skip_ws();
      if (!more() || text[pos] != ')') fail(pos, "expected ')'");
      ++pos;
      long long k = 1;
      skip_ws();
      if (more() && text[pos] == '^') {
        ++pos;
        skip_ws();
        bool kneg = false;
        if (more() && text[pos] == '-') {
          kneg = true;
          ++pos;
        }
        k = parse_uint("exponent");
        if (kneg) k = -k;
      }
      return Cyclotomic::root(static_cast<int>(n), k, coeff);
    }
    if (!saw_coeff) fail(pos, "expected rational or E(...)");
    return Cyclotomic(coeff);
  };

  Cyclotomic total;
  skip_ws();
  if (!more()) fail(pos, "empty expression");
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  while (true) {
    Cyclotomic term = parse_term();
    total += negative ? -term : term;
    skip_ws();
    if (!more()) break;
    if (text[pos] == '+')
      negative = false;
    else if (text[pos] == '-')
      negative = true;
    else
      fail(pos, "expected '+', '-', or end of expression");
    ++pos;
  }
  return total;
}

}  // namespace trianglecount
