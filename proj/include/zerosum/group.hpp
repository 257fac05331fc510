#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zerosum/error.hpp"

namespace zerosum {

// Position of an element in the lexicographic order of coordinate vectors.
using ElementId = std::uint32_t;

// Coordinates of an element with respect to the standard basis e_1, ..., e_r
// of the invariant-factor decomposition.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::string t = trim(text);
  std::int64_t value = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && t.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("invalid integer in " + std::string(what) + ": '" + t + "'");
  }
  return value;
}

}  // namespace detail

/// A finite Abelian group C_{n_1} + ... + C_{n_r} in invariant-factor form
/// (n_1 | n_2 | ... | n_r, every n_i >= 2).
///
/// Elements are addressed either by coordinate vectors or by their ElementId,
/// the mixed-radix index with the first coordinate most significant, so that
/// id order coincides with lexicographic order of coordinates.
class FiniteAbelianGroup {
 public:
  static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 31;

  /// Reduces an arbitrary cyclic decomposition to invariant factors by
  /// replacing out-of-chain pairs with (gcd, lcm) until the chain holds.
  static FiniteAbelianGroup canonicalize(std::vector<std::int64_t> factors) {
    if (factors.empty()) {
      throw PreconditionError("trivial group: empty factor list");
    }
    std::int64_t order = 1;
    for (std::int64_t f : factors) {
      if (f < 2) {
        throw PreconditionError("cyclic factor must be >= 2, got " + std::to_string(f));
      }
      if (order > kMaxOrder / f) {
        throw PreconditionError("group order exceeds 2^31");
      }
      order *= f;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::sort(factors.begin(), factors.end());
      for (std::size_t i = 0; i < factors.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
          if (factors[j] % factors[i] != 0) {
            std::int64_t g = std::gcd(factors[i], factors[j]);
            std::int64_t l = factors[i] / g * factors[j];
            factors[i] = g;
            factors[j] = l;
            changed = true;
            break;
          }
        }
      }
    }
    std::erase(factors, 1);
    return FiniteAbelianGroup(std::move(factors));
  }

  /// Parses `C3xC6` style literals (`C2^3` is shorthand for `C2xC2xC2`).
  static FiniteAbelianGroup parse(std::string_view literal) {
    std::string text = detail::trim(literal);
    if (text.empty()) throw ParseError("empty group literal");
    std::vector<std::int64_t> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find_first_of("xX", pos);
      std::string token = detail::trim(
          std::string_view(text).substr(pos, next == std::string::npos ? std::string::npos : next - pos));
      if (token.size() < 2 || (token[0] != 'C' && token[0] != 'c')) {
        throw ParseError("invalid cyclic factor '" + token + "' in group literal '" + text + "'");
      }
      std::string_view body = std::string_view(token).substr(1);
      std::int64_t power = 1;
      if (auto caret = body.find('^'); caret != std::string_view::npos) {
        power = detail::parse_int(body.substr(caret + 1), "group literal");
        body = body.substr(0, caret);
        if (power < 1 || power > 64) throw ParseError("invalid power in group literal '" + text + "'");
      }
      std::int64_t n = detail::parse_int(body, "group literal");
      for (std::int64_t k = 0; k < power; ++k) factors.push_back(n);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return canonicalize(std::move(factors));
  }

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  std::int64_t order() const noexcept { return order_; }
  std::int64_t exponent() const noexcept { return factors_.back(); }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::int64_t factor(std::size_t i) const { return factors_.at(i); }

  /// The prime p when the group is a p-group.
  std::optional<std::int64_t> prime() const {
    std::int64_t e = exponent();
    for (std::int64_t p = 2; p * p <= e; ++p) {
      if (e % p == 0) {
        while (e % p == 0) e /= p;
        return e == 1 ? std::optional<std::int64_t>(p) : std::nullopt;
      }
    }
    return e;  // exponent itself is prime
  }

  bool is_p_group() const { return prime().has_value(); }
  bool is_elementary() const { return is_p_group() && prime() == exponent(); }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

  /// e_j, 0-based j.
  GroupElement basis_element(std::size_t j) const {
    GroupElement e = zero();
    e.coords.at(j) = 1;
    return e;
  }

  /// Builds an element, reducing each coordinate modulo its factor.
  GroupElement element(std::vector<std::int64_t> coords) const {
    if (coords.size() != rank()) {
      throw DimensionError("element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                           std::to_string(rank()));
    }
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = detail::mod(coords[i], factors_[i]);
    return GroupElement{std::move(coords)};
  }

  bool contains(const GroupElement& g) const {
    if (g.coords.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
    }
    return true;
  }

  void check(const GroupElement& g) const {
    if (!contains(g)) throw DimensionError("element " + format(g, true) + " does not belong to " + to_string());
  }

  GroupElement add(const GroupElement& g, const GroupElement& h) const {
    check(g);
    check(h);
    GroupElement out = g;
    for (std::size_t i = 0; i < rank(); ++i) {
      out.coords[i] += h.coords[i];
      if (out.coords[i] >= factors_[i]) out.coords[i] -= factors_[i];
    }
    return out;
  }

  GroupElement neg(const GroupElement& g) const {
    check(g);
    GroupElement out = g;
    for (std::size_t i = 0; i < rank(); ++i) out.coords[i] = out.coords[i] == 0 ? 0 : factors_[i] - out.coords[i];
    return out;
  }

  GroupElement scalar_mul(std::int64_t k, const GroupElement& g) const {
    check(g);
    GroupElement out = g;
    for (std::size_t i = 0; i < rank(); ++i) {
      // (k mod n) * c fits comfortably: both factors are below 2^31.
      out.coords[i] = detail::mod(detail::mod(k, factors_[i]) * g.coords[i], factors_[i]);
    }
    return out;
  }

  std::int64_t element_order(const GroupElement& g) const {
    check(g);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t local = factors_[i] / std::gcd(g.coords[i], factors_[i]);
      ord = std::lcm(ord, local);
    }
    return ord;
  }

  bool is_zero(const GroupElement& g) const {
    return std::all_of(g.coords.begin(), g.coords.end(), [](std::int64_t c) { return c == 0; });
  }

  ElementId id_of(const GroupElement& g) const {
    check(g);
    std::int64_t id = 0;
    for (std::size_t i = 0; i < rank(); ++i) id = id * factors_[i] + g.coords[i];
    return static_cast<ElementId>(id);
  }

  GroupElement element_at(ElementId id) const {
    if (static_cast<std::int64_t>(id) >= order_) {
      throw DimensionError("element id " + std::to_string(id) + " out of range for " + to_string());
    }
    GroupElement g = zero();
    std::int64_t rest = id;
    for (std::size_t i = rank(); i-- > 0;) {
      g.coords[i] = rest % factors_[i];
      rest /= factors_[i];
    }
    return g;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (std::int64_t id = 0; id < order_; ++id) out.push_back(element_at(static_cast<ElementId>(id)));
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) out += 'x';
      out += 'C' + std::to_string(factors_[i]);
    }
    return out;
  }

  /// Element literal: a bare integer for cyclic groups, `(a,b,...)` otherwise.
  /// `force_tuple` always uses the parenthesized form.
  std::string format(const GroupElement& g, bool force_tuple = false) const {
    if (g.coords.size() == 1 && !force_tuple) return std::to_string(g.coords[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.coords[i]);
    }
    return out + ")";
  }

  /// Accepts `(a,b)`, a bare integer when the group is cyclic, and `0` for
  /// the identity of any group. Coordinates are reduced modulo the factors.
  GroupElement parse_element(std::string_view literal) const {
    std::string text = detail::trim(literal);
    if (text.empty()) throw ParseError("empty element literal");
    if (text.front() != '(') {
      std::int64_t v = detail::parse_int(text, "element literal");
      if (rank() == 1) return element({v});
      if (v == 0) return zero();
      throw ParseError("bare integer '" + text + "' is only valid in cyclic groups (or as 0)");
    }
    if (text.back() != ')') throw ParseError("unbalanced element literal '" + text + "'");
    std::string_view body = std::string_view(text).substr(1, text.size() - 2);
    std::vector<std::int64_t> coords;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = body.find(',', pos);
      coords.push_back(detail::parse_int(body.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                           : comma - pos),
                                         "element literal"));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (coords.size() != rank()) {
      throw DimensionError("element literal '" + text + "' has " + std::to_string(coords.size()) +
                           " coordinates, group rank is " + std::to_string(rank()));
    }
    return element(std::move(coords));
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    order_ = 1;
    for (std::int64_t f : factors_) order_ *= f;
  }

  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
};

/// Fast id-level arithmetic, precomputing the mixed-radix strides.
class IdArithmetic {
 public:
  explicit IdArithmetic(const FiniteAbelianGroup& group)
      : factors_(group.invariant_factors()), order_(static_cast<ElementId>(group.order())) {
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * factors_[i];
  }

  ElementId order() const noexcept { return order_; }

  ElementId add(ElementId a, ElementId b) const {
    std::int64_t id = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::int64_t n = factors_[i];
      std::int64_t c = (a / strides_[i]) % n + (b / strides_[i]) % n;
      if (c >= n) c -= n;
      id += c * strides_[i];
    }
    return static_cast<ElementId>(id);
  }

  ElementId neg(ElementId a) const {
    std::int64_t id = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::int64_t n = factors_[i];
      std::int64_t c = (a / strides_[i]) % n;
      id += (c == 0 ? 0 : n - c) * strides_[i];
    }
    return static_cast<ElementId>(id);
  }

  ElementId scalar_mul(std::int64_t k, ElementId a) const {
    std::int64_t id = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::int64_t n = factors_[i];
      std::int64_t c = (a / strides_[i]) % n;
      id += detail::mod(detail::mod(k, n) * c, n) * strides_[i];
    }
    return static_cast<ElementId>(id);
  }

  /// perm[h] = h + g for every element h.
  std::vector<ElementId> translation(ElementId g) const {
    std::vector<ElementId> perm(order_);
    for (ElementId h = 0; h < order_; ++h) perm[h] = add(h, g);
    return perm;
  }

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::int64_t> strides_;
  ElementId order_;
};

}  // namespace zerosum
