#pragma once

#include "gc3/exact/exterior.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>
#include <vector>

namespace gc3 {

/// Exterior-algebra element over a field, stored as a mask-sorted vector.
/// Same role as ExteriorElement but tuned for many small products at a point.
template <class F>
class FlatForm {
 public:
  using Term = std::pair<GeneratorSet, F>;
  using scalar_type = F;

  FlatForm() = default;

  static FlatForm scalar(const F& c) {
    FlatForm f;
    if (!is_zero(c)) f.terms_.emplace_back(0, c);
    return f;
  }

  static FlatForm generator(unsigned i, const F& c = F(1)) {
    FlatForm f;
    if (!is_zero(c)) f.terms_.emplace_back(GeneratorSet(1) << i, c);
    return f;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  F coefficient(GeneratorSet s) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                               [](const Term& t, GeneratorSet key) { return t.first < key; });
    return (it != terms_.end() && it->first == s) ? it->second : F(0);
  }

  GeneratorSet support() const {
    GeneratorSet s = 0;
    for (const auto& t : terms_) s |= t.first;
    return s;
  }

  FlatForm scaled(const F& c) const {
    FlatForm r;
    if (is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [s, v] : terms_) {
      F w = v * c;
      if (!is_zero(w)) r.terms_.emplace_back(s, w);
    }
    return r;
  }

  FlatForm& operator+=(const FlatForm& o) { return *this = merge(*this, o, false); }
  FlatForm& operator-=(const FlatForm& o) { return *this = merge(*this, o, true); }
  friend FlatForm operator+(const FlatForm& a, const FlatForm& b) { return merge(a, b, false); }
  friend FlatForm operator-(const FlatForm& a, const FlatForm& b) { return merge(a, b, true); }
  friend FlatForm operator-(const FlatForm& a) { return a.scaled(F(-1)); }

  friend FlatForm operator*(const FlatForm& a, const FlatForm& b) {
    if (a.zero() || b.zero()) return {};
    Accumulator acc(a.support() | b.support());
    for (const auto& [sa, ca] : a.terms_)
      for (const auto& [sb, cb] : b.terms_) {
        int sg = wedge_sign(sa, sb);
        if (!sg) continue;
        F prod = ca * cb;
        if (sg < 0) prod = -prod;
        acc.add(sa | sb, prod);
      }
    return acc.take();
  }

  friend bool operator==(const FlatForm& a, const FlatForm& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const FlatForm& a, const FlatForm& b) { return !(a == b); }

  /// Accumulates terms in arbitrary order and returns a normalized form.
  class Accumulator {
   public:
    explicit Accumulator(GeneratorSet support) {
      unsigned bits = support ? 32 - std::countl_zero(support) : 0;
      dense_ = bits <= 16;
      if (dense_) {
        auto& buf = buffer();
        if (buf.size() < (std::size_t(1) << bits)) {
          buf.resize(std::size_t(1) << bits, F(0));
          marks().resize(buf.size(), 0);
        }
      }
    }

    void add(GeneratorSet s, const F& c) {
      if (dense_) {
        auto& buf = buffer();
        auto& mk = marks();
        if (!mk[s]) {
          mk[s] = 1;
          touched_.push_back(s);
          buf[s] = c;
        } else {
          buf[s] += c;
        }
      } else {
        auto [it, fresh] = sparse_.try_emplace(s, c);
        if (!fresh) it->second += c;
      }
    }

    FlatForm take() {
      FlatForm r;
      if (dense_) {
        std::sort(touched_.begin(), touched_.end());
        auto& buf = buffer();
        auto& mk = marks();
        r.terms_.reserve(touched_.size());
        for (GeneratorSet s : touched_) {
          if (!is_zero(buf[s])) r.terms_.emplace_back(s, buf[s]);
          buf[s] = F(0);
          mk[s] = 0;
        }
        touched_.clear();
      } else {
        for (auto& [s, c] : sparse_)
          if (!is_zero(c)) r.terms_.emplace_back(s, c);
        sparse_.clear();
      }
      return r;
    }

   private:
    static std::vector<F>& buffer() {
      thread_local std::vector<F> buf;
      return buf;
    }
    static std::vector<char>& marks() {
      thread_local std::vector<char> mk;
      return mk;
    }

    bool dense_ = true;
    std::vector<GeneratorSet> touched_;
    std::map<GeneratorSet, F> sparse_;
  };

 private:
  static FlatForm merge(const FlatForm& a, const FlatForm& b, bool subtract) {
    FlatForm r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, subtract ? F(-j->second) : j->second);
        ++j;
      } else {
        F c = subtract ? F(i->second - j->second) : F(i->second + j->second);
        if (!is_zero(c)) r.terms_.emplace_back(i->first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

template <class F>
bool is_zero(const FlatForm<F>& f) {
  return f.zero();
}

template <class F>
struct Ring<FlatForm<F>> {
  static FlatForm<F> zero() { return FlatForm<F>(); }
  static FlatForm<F> one() { return FlatForm<F>::scalar(F(1)); }
};

}  // namespace gc3
