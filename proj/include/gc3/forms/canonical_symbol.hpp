#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace gc3 {

/// Exterior monomial β^{4k₁+1} ∧ … ∧ β^{4k_r+1} with k₁ < … < k_r, all k ≥ 1.
class CanonicalFormSymbol {
 public:
  CanonicalFormSymbol() = default;

  explicit CanonicalFormSymbol(std::vector<unsigned> ks) : ks_(std::move(ks)) {
    for (unsigned k : ks_)
      if (k == 0) throw std::invalid_argument("canonical generators need k >= 1");
    for (std::size_t i = 1; i < ks_.size(); ++i)
      if (ks_[i] <= ks_[i - 1]) throw std::invalid_argument("canonical generators must be distinct and increasing");
  }

  static CanonicalFormSymbol one() { return {}; }
  static CanonicalFormSymbol beta(unsigned k) { return CanonicalFormSymbol({k}); }

  const std::vector<unsigned>& generators() const { return ks_; }
  bool is_one() const { return ks_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (unsigned k : ks_) d += 4 * k + 1;
    return d;
  }

  /// Exponents 4k+1 in order.
  std::vector<unsigned> exponents() const {
    std::vector<unsigned> r;
    for (unsigned k : ks_) r.push_back(4 * k + 1);
    return r;
  }

  std::string to_string() const {
    if (ks_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < ks_.size(); ++i) {
      if (i) s += "^";
      s += "b" + std::to_string(4 * ks_[i] + 1);
    }
    return s;
  }

  /// Parses "1", "b5", "b5^b9".
  static CanonicalFormSymbol parse(const std::string& text) {
    if (text == "1" || text.empty()) return one();
    std::vector<unsigned> ks;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('^', pos);
      if (end == std::string::npos) end = text.size();
      std::string tok = text.substr(pos, end - pos);
      if (tok.size() < 2 || tok[0] != 'b') throw std::invalid_argument("bad canonical form: " + text);
      unsigned r = unsigned(std::stoul(tok.substr(1)));
      if (r % 4 != 1 || r < 5) throw std::invalid_argument("bad canonical form: " + text);
      ks.push_back((r - 1) / 4);
      pos = end + 1;
    }
    return CanonicalFormSymbol(ks);
  }

  friend bool operator==(const CanonicalFormSymbol& a, const CanonicalFormSymbol& b) { return a.ks_ == b.ks_; }
  friend bool operator<(const CanonicalFormSymbol& a, const CanonicalFormSymbol& b) { return a.ks_ < b.ks_; }

 private:
  std::vector<unsigned> ks_;
};

struct CoproductTerm {
  int sign = 1;
  CanonicalFormSymbol left, right;
};

/// Δω with primitive generators, expanded multiplicatively with Koszul signs.
inline std::vector<CoproductTerm> coproduct(const CanonicalFormSymbol& w) {
  const auto& ks = w.generators();
  std::size_t r = ks.size();
  std::vector<CoproductTerm> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    std::vector<unsigned> left, right;
    int inversions = 0;
    // factor i goes left if its bit is set; a right factor before a left one costs (−1)^{odd·odd}
    std::size_t rights_so_far = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask & (1u << i)) {
        left.push_back(ks[i]);
        inversions += int(rights_so_far);
      } else {
        right.push_back(ks[i]);
        ++rights_so_far;
      }
    }
    out.push_back({(inversions % 2) ? -1 : 1, CanonicalFormSymbol(left), CanonicalFormSymbol(right)});
  }
  return out;
}

}  // namespace gc3
