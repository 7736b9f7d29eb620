#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcx/rational.hpp"

namespace hcx {

/// Point or direction in Q^n.
class RVec {
 public:
  RVec() = default;
  explicit RVec(std::size_t dim) : entries_(dim) {}
  RVec(std::initializer_list<Rat> entries) : entries_(entries) {}
  explicit RVec(std::vector<Rat> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Rat& operator[](std::size_t i) { return entries_[i]; }
  const Rat& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const std::vector<Rat>& entries() const { return entries_; }
  std::span<const Rat> span() const { return entries_; }

  bool is_zero() const;

  RVec& operator+=(const RVec& o);
  RVec& operator-=(const RVec& o);
  RVec& operator*=(const Rat& s);

  friend RVec operator+(RVec a, const RVec& b) { return a += b; }
  friend RVec operator-(RVec a, const RVec& b) { return a -= b; }
  friend RVec operator*(RVec a, const Rat& s) { return a *= s; }
  friend RVec operator*(const Rat& s, RVec a) { return a *= s; }
  RVec operator-() const;

  friend bool operator==(const RVec&, const RVec&) = default;
  friend auto operator<=>(const RVec& a, const RVec& b) { return a.entries_ <=> b.entries_; }

  /// `(a, b, c)` with canonical rationals.
  std::string str() const;

  /// Parses a comma- or whitespace-separated list of rational literals.
  static RVec parse(std::string_view text);

 private:
  std::vector<Rat> entries_;
};

std::ostream& operator<<(std::ostream& os, const RVec& v);

Rat dot(std::span<const Rat> a, std::span<const Rat> b);
inline Rat dot(const RVec& a, const RVec& b) { return dot(a.span(), b.span()); }

struct Norms {
  Rat l1;
  Rat linf;
};

Norms norms(const RVec& v);
Rat linf_norm(const RVec& v);
Rat linf_distance(const RVec& a, const RVec& b);

RVec unit_vector(std::size_t dim, std::size_t i);

/// result[k] = signs[k] * v[perm[k]] (0-based permutation, signs in {+1,-1}).
/// Throws MalformedPermutation.
RVec apply_signed_permutation(const RVec& v, std::span<const std::size_t> perm,
                              std::span<const int> signs);

/// Drops coordinate i (0-based). Requires dim >= 2.
RVec coord_delete(const RVec& v, std::size_t i);

/// Inverse of coord_delete: inserts `value` at position i.
RVec coord_insert(const RVec& v, std::size_t i, const Rat& value);

}  // namespace hcx
