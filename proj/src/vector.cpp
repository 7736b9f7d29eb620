#include "hcx/vector.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hcx/error.hpp"

namespace hcx {

namespace {

void require_same_dim(const RVec& a, const RVec& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ: " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

bool RVec::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rat& r) { return r.is_zero(); });
}

RVec& RVec::operator+=(const RVec& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

RVec& RVec::operator-=(const RVec& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

RVec& RVec::operator*=(const Rat& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

RVec RVec::operator-() const {
  RVec r = *this;
  for (auto& e : r.entries_) e = -e;
  return r;
}

std::string RVec::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].str();
  }
  return out + ")";
}

RVec RVec::parse(std::string_view text) {
  std::string buf(text);
  if (const auto l = buf.find_first_not_of(" \t"); l != std::string::npos && buf[l] == '(') {
    const auto r = buf.find_last_not_of(" \t");
    if (buf[r] != ')') throw Error(ErrorCode::SyntaxError, "unbalanced parenthesis in vector literal");
    buf = buf.substr(l + 1, r - l - 1);
  }
  std::vector<Rat> entries;
  auto field = [&](const std::string& f) {
    std::istringstream in(f);
    std::string tok, extra;
    if (!(in >> tok) || (in >> extra)) {
      throw Error(ErrorCode::SyntaxError, "malformed vector literal '" + std::string(text) + "'");
    }
    entries.push_back(Rat::parse(tok));
  };
  if (buf.find(',') != std::string::npos) {
    std::size_t start = 0;
    for (std::size_t pos; (pos = buf.find(',', start)) != std::string::npos; start = pos + 1) {
      field(buf.substr(start, pos - start));
    }
    field(buf.substr(start));
  } else {
    std::istringstream in(buf);
    for (std::string tok; in >> tok;) entries.push_back(Rat::parse(tok));
  }
  if (entries.empty()) throw Error(ErrorCode::SyntaxError, "empty vector literal");
  return RVec(std::move(entries));
}

std::ostream& operator<<(std::ostream& os, const RVec& v) { return os << v.str(); }

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot: dimension mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

Norms norms(const RVec& v) {
  Norms n;
  for (const auto& e : v) {
    const Rat a = e.abs();
    n.l1 += a;
    if (n.linf < a) n.linf = a;
  }
  return n;
}

Rat linf_norm(const RVec& v) { return norms(v).linf; }

Rat linf_distance(const RVec& a, const RVec& b) {
  require_same_dim(a, b);
  Rat d;
  for (std::size_t i = 0; i < a.dim(); ++i) d = max(d, (a[i] - b[i]).abs());
  return d;
}

RVec unit_vector(std::size_t dim, std::size_t i) {
  RVec e(dim);
  e[i] = 1;
  return e;
}

RVec apply_signed_permutation(const RVec& v, std::span<const std::size_t> perm,
                              std::span<const int> signs) {
  const std::size_t n = v.dim();
  if (perm.size() != n || signs.size() != n) {
    throw Error(ErrorCode::MalformedPermutation, "permutation/sign length differs from dimension");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (perm[k] >= n || seen[perm[k]]) {
      throw Error(ErrorCode::MalformedPermutation, "not a bijection on coordinates");
    }
    seen[perm[k]] = true;
    if (signs[k] != 1 && signs[k] != -1) {
      throw Error(ErrorCode::MalformedPermutation, "signs must be +1 or -1");
    }
  }
  RVec out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = signs[k] < 0 ? -v[perm[k]] : v[perm[k]];
  return out;
}

RVec coord_delete(const RVec& v, std::size_t i) {
  if (v.dim() < 2) throw Error(ErrorCode::IndexOutOfRange, "coord_delete needs dimension >= 2");
  if (i >= v.dim()) throw Error(ErrorCode::IndexOutOfRange, "coordinate index out of range");
  std::vector<Rat> out;
  out.reserve(v.dim() - 1);
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (k != i) out.push_back(v[k]);
  }
  return RVec(std::move(out));
}

RVec coord_insert(const RVec& v, std::size_t i, const Rat& value) {
  if (i > v.dim()) throw Error(ErrorCode::IndexOutOfRange, "coordinate index out of range");
  std::vector<Rat> out(v.begin(), v.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), value);
  return RVec(std::move(out));
}

}  // namespace hcx
