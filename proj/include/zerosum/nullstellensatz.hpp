#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/profile.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/// The polynomial over F_p attached to a sequence g_1 ... g_m over C_p^r and
/// a residue set A:
///
///   P(x) = prod_h prod_{j=1}^{p-1} (sum_i a_{i,h} x_i^{p-1} - j)
///          * prod_{j in A} (sum_i x_i^{p-1} - j)
///          - delta * prod_i (x_i^{p-1} - 1)
///
/// with delta fixed by P(0) = 0. Stored as the coefficient matrix plus the
/// symbolic facts the argument needs: the total degree and the coefficient
/// of prod_i x_i^{p-1}.
class PrimeFieldPoly {
 public:
  std::int64_t p() const noexcept { return p_; }
  std::size_t variables() const noexcept { return coeffs_.size(); }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<std::vector<std::int64_t>>& coefficients() const noexcept { return coeffs_; }
  const std::set<std::int64_t>& residues() const noexcept { return a_; }
  std::int64_t delta() const noexcept { return delta_; }
  std::int64_t top_coefficient() const noexcept { return detail::mod(-delta_, p_); }
  std::int64_t total_degree() const noexcept { return static_cast<std::int64_t>(variables()) * (p_ - 1); }
  // Degree of the product part; strictly below total_degree().
  std::int64_t product_degree() const noexcept {
    return (static_cast<std::int64_t>(rank_) * (p_ - 1) + static_cast<std::int64_t>(a_.size())) * (p_ - 1);
  }

  /// Raw evaluation at a point of F_p^m.
  std::int64_t evaluate(const std::vector<std::int64_t>& x) const {
    if (x.size() != variables()) throw DimensionError("point has the wrong number of coordinates");
    std::vector<std::int64_t> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = pow_mod(detail::mod(x[i], p_), p_ - 1);
    return evaluate_powers(y);
  }

  /// Evaluation on a support pattern: x_i^{p-1} is 1 on the support and 0
  /// elsewhere, so the value only depends on the support.
  std::int64_t evaluate_support(std::uint64_t support) const {
    std::vector<std::int64_t> y(variables());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (support >> i) & 1U;
    return evaluate_powers(y);
  }

  /// Evaluation with y_i = x_i^{p-1} already substituted (any y in F_p).
  std::int64_t evaluate_powers(const std::vector<std::int64_t>& y) const {
    std::int64_t prod = 1;
    for (std::size_t h = 0; h < rank_; ++h) {
      std::int64_t lin = 0;
      for (std::size_t i = 0; i < y.size(); ++i) lin += coeffs_[i][h] * y[i];
      for (std::int64_t j = 1; j < p_; ++j) prod = detail::mod(prod * (lin - j), p_);
    }
    std::int64_t count = 0;
    for (std::int64_t v : y) count += v;
    for (std::int64_t j : a_) prod = detail::mod(prod * (count - j), p_);
    std::int64_t tail = 1;
    for (std::int64_t v : y) tail = detail::mod(tail * (v - 1), p_);
    return detail::mod(prod - delta_ * tail, p_);
  }

  std::int64_t pow_mod(std::int64_t base, std::int64_t e) const {
    std::int64_t r = 1;
    for (; e > 0; --e) r = detail::mod(r * base, p_);
    return r;
  }

 private:
  friend PrimeFieldPoly build_P(const Sequence&, const std::set<std::int64_t>&, std::optional<std::int64_t>);

  std::int64_t p_ = 2;
  std::size_t rank_ = 0;
  std::vector<std::vector<std::int64_t>> coeffs_;  // coeffs_[i][h] = a_{i,h}
  std::set<std::int64_t> a_;
  std::int64_t delta_ = 0;
};

/// Builds P for S over C_p^r with |S| = D + k - 1 (k in [1, p]) and A a
/// (k-1)-subset of [1, p-1]. D defaults to r(p-1) + 1.
inline PrimeFieldPoly build_P(const Sequence& s, const std::set<std::int64_t>& a,
                              std::optional<std::int64_t> davenport_value = {}) {
  const auto& group = s.group();
  if (!group.is_elementary()) throw PreconditionError("polynomial construction needs C_p^r, got " + group.to_string());
  const std::int64_t p = *group.prime();
  const auto r = static_cast<std::int64_t>(group.rank());
  const std::int64_t d = davenport_value ? *davenport_value : r * (p - 1) + 1;
  const auto m = static_cast<std::int64_t>(s.length());
  const std::int64_t k = m - d + 1;
  if (k < 1 || k > p) {
    throw PreconditionError("|S| must be D + k - 1 with k in [1, " + std::to_string(p) + "], got |S| = " +
                            std::to_string(m));
  }
  if (static_cast<std::int64_t>(a.size()) != k - 1) {
    throw PreconditionError("A must have exactly k - 1 = " + std::to_string(k - 1) + " element(s)");
  }
  for (std::int64_t b : a) {
    if (b < 1 || b > p - 1) throw PreconditionError("elements of A must lie in [1, p-1]");
  }

  PrimeFieldPoly poly;
  poly.p_ = p;
  poly.rank_ = static_cast<std::size_t>(r);
  poly.a_ = a;
  for (std::size_t i = 0; i < s.length(); ++i) poly.coeffs_.push_back(s.element(i).coords);

  if (poly.product_degree() >= poly.total_degree()) {
    throw SoundnessAlarm("degree bound fails: product part has degree " + std::to_string(poly.product_degree()) +
                         " >= " + std::to_string(poly.total_degree()));
  }

  // P(0) = prod0 - delta * (-1)^m = 0.
  std::int64_t prod0 = 1;
  for (std::int64_t h = 0; h < r; ++h) {
    for (std::int64_t j = 1; j < p; ++j) prod0 = detail::mod(prod0 * -j, p);
  }
  for (std::int64_t j : a) prod0 = detail::mod(prod0 * -j, p);
  const std::int64_t sign_m = m % 2 == 0 ? 1 : p - 1;
  poly.delta_ = detail::mod(prod0 * sign_m, p);

  // Closed form: prod_{j=1}^{p-1}(-j) = (-1)^{p-1} (p-1)! = (-1)^p by Wilson.
  std::int64_t closed = 1;
  for (std::int64_t h = 0; h < r; ++h) closed = detail::mod(closed * (p % 2 == 0 ? 1 : -1), p);
  for (std::int64_t j : a) closed = detail::mod(closed * -j, p);
  closed = detail::mod(closed * sign_m, p);
  if (closed != poly.delta_) throw SoundnessAlarm("delta disagrees with its closed form");
  if (poly.delta_ == 0) throw SoundnessAlarm("delta vanishes");
  if (poly.evaluate_support(0) != 0) throw SoundnessAlarm("P does not vanish at the origin");
  return poly;
}

/// Non-zero point of F_p^m with P != 0, returned as its support (positions
/// in the canonical order of S): the smallest support, lexicographically
/// first among equal sizes.
inline std::vector<std::size_t> find_witness(const PrimeFieldPoly& poly, std::size_t max_variables = 24) {
  const std::size_t m = poly.variables();
  if (m > max_variables) {
    throw ResourceError("support search over " + std::to_string(m) + " variables exceeds the ceiling " +
                        std::to_string(max_variables));
  }
  for (std::size_t size = 1; size <= m; ++size) {
    // index sets of this size in lexicographic order
    std::vector<std::size_t> pick(size);
    for (std::size_t t = 0; t < size; ++t) pick[t] = t;
    while (true) {
      std::uint64_t mask = 0;
      for (std::size_t i : pick) mask |= std::uint64_t{1} << i;
      if (poly.evaluate_support(mask) != 0) return pick;
      std::size_t t = size;
      while (t > 0 && pick[t - 1] == m - size + t - 1) --t;
      if (t == 0) break;
      ++pick[t - 1];
      for (std::size_t u = t; u < size; ++u) pick[u] = pick[u - 1] + 1;
    }
  }
  throw SoundnessAlarm("P vanishes on every non-zero point although its top coefficient is -delta != 0");
}

/// The subsequence indexed by a witness support, checked to be a non-empty
/// zero-sum subsequence whose length avoids A and appears in the profile.
inline Sequence extract_subsequence(const Sequence& s, const std::vector<std::size_t>& support,
                                    const PrimeFieldPoly& poly) {
  if (support.empty()) throw SoundnessAlarm("empty support");
  std::vector<ElementId> ids;
  for (std::size_t i : support) ids.push_back(s.ids()[i]);
  Sequence sub(s.group(), std::move(ids));
  const auto len = static_cast<std::int64_t>(sub.length());
  if (!is_zero_sum(sub)) throw SoundnessAlarm("extracted " + sub.to_string() + " is not zero-sum");
  if (poly.residues().contains(len % poly.p())) {
    throw SoundnessAlarm("extracted length " + std::to_string(len) + " hits A");
  }
  if (!zero_sum_profile(s).has_length(len)) throw SoundnessAlarm("extracted length missing from the profile");
  return sub;
}

struct CnAudit {
  std::int64_t p = 0;
  std::size_t r = 0;
  std::int64_t k = 0;
  std::set<std::int64_t> a;
  std::int64_t delta = 0;
  std::vector<std::size_t> witness_support;
  Sequence extracted;
};

inline CnAudit cn_witness(const Sequence& s, const std::set<std::int64_t>& a) {
  const auto poly = build_P(s, a);
  auto support = find_witness(poly);
  auto sub = extract_subsequence(s, support, poly);
  return CnAudit{poly.p(), poly.rank(), static_cast<std::int64_t>(a.size()) + 1, a, poly.delta(), std::move(support),
                 std::move(sub)};
}

inline nlohmann::json to_json(const CnAudit& audit) {
  return {{"p", audit.p},
          {"r", audit.r},
          {"k", audit.k},
          {"A", std::vector<std::int64_t>(audit.a.begin(), audit.a.end())},
          {"delta", audit.delta},
          {"witness_support", audit.witness_support},
          {"extracted", audit.extracted.to_string()},
          {"extracted_length", audit.extracted.length()},
          {"version", 1}};
}

}  // namespace zerosum
