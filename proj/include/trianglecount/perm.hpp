#pragma once

#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace trianglecount {

// A permutation of {0..d-1}, stored as its image array.  Composition is
// left-to-right: (a * b) maps x to b[a[x]], i.e. apply a first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {}

  static Permutation identity(int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int x = 0; x < degree(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<int> img(a.img_.size());
    for (size_t x = 0; x < a.img_.size(); ++x) img[x] = b.img_[a.img_[x]];
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) img[img_[x]] = static_cast<int>(x);
    return Permutation(std::move(img));
  }

  // this^h = h^-1 * this * h, computed without forming h^-1.
  Permutation conjugated_by(const Permutation& h) const {
    std::vector<int> img(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) img[h.img_[x]] = h.img_[img_[x]];
    return Permutation(std::move(img));
  }

  int order() const {
    long long ord = 1;
    std::vector<bool> seen(img_.size(), false);
    for (int x = 0; x < degree(); ++x) {
      if (seen[x]) continue;
      int len = 0, y = x;
      while (!seen[y]) {
        seen[y] = true;
        y = img_[y];
        ++len;
      }
      ord = std::lcm<long long>(ord, len);
    }
    return static_cast<int>(ord);
  }

  // Disjoint-cycle notation with 1-based points: "(1,2,3)(4,5)"; "()" for
  // the identity.  Fixed points are omitted.
  std::string cycle_str() const {
    std::string out;
    std::vector<bool> seen(img_.size(), false);
    for (int x = 0; x < degree(); ++x) {
      if (seen[x] || img_[x] == x) continue;
      out += "(";
      int y = x;
      bool first = true;
      while (!seen[y]) {
        seen[y] = true;
        if (!first) out += ",";
        out += std::to_string(y + 1);
        first = false;
        y = img_[y];
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  // Parses disjoint-cycle notation ("(1,2,3)(4,5)", "()") onto a fixed
  // degree.  Points are 1-based in the text.
  static Permutation parse_cycles(std::string_view text, int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(degree, false);
    size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
      throw parse_error("bad permutation '" + std::string(text) + "': " + why);
    };
    auto skip_ws = [&]() {
      while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= text.size()) fail("empty");
    while (pos < text.size()) {
      if (text[pos] != '(') fail("expected '('");
      ++pos;
      std::vector<int> cycle;
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        if (!cycle.empty()) {
          if (text[pos] != ',') fail("expected ',' or ')'");
          ++pos;
          skip_ws();
        }
        if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
          fail("expected point number");
        int p = 0;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
          p = p * 10 + (text[pos] - '0');
          if (p > 1000000) fail("point out of range");
          ++pos;
        }
        if (p < 1 || p > degree) fail("point " + std::to_string(p) + " outside degree");
        if (used[p - 1]) fail("point " + std::to_string(p) + " repeated");
        used[p - 1] = true;
        cycle.push_back(p - 1);
        skip_ws();
      }
      if (pos >= text.size()) fail("unterminated cycle");
      ++pos;  // ')'
      for (size_t i = 0; i < cycle.size(); ++i)
        img[cycle[i]] = cycle[(i + 1) % cycle.size()];
      skip_ws();
    }
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }
  // Lexicographic order on image arrays; used for canonical representatives.
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.img_ < b.img_;
  }

 private:
  std::vector<int> img_;
};

struct PermutationHash {
  size_t operator()(const Permutation& p) const {
    size_t h = p.degree();
    for (int x : p.images()) h = h * 1000003u + static_cast<size_t>(x);
    return h;
  }
};

}  // namespace trianglecount
