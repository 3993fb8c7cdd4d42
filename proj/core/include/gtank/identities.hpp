#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "gtank/rational.hpp"

namespace gtank {

/// Hockey-stick generalisations behind the order-statistic closed forms.
/// Parameters are passed as an explicit tuple in this order:
///
///   I    (N, k, b, c)  sum_{m=k}^{N} C(m-b, k-c) = C(N-b+1, k-c+1) - C(k-b, k-c+1)
///                      legal: N >= k >= 0, 0 <= b <= k, 0 <= c <= k
///   II   (N, k, a)     sum_m m * C(m-1,k-a) C(N-m,a-1) / C(N,k) = (N+1)(k-a+1)/(k+1)
///                      legal: 1 <= a <= k <= N
///   III  (N, k, a)     same weights with m^2; closed form in identities.cpp
///                      legal: 1 <= a <= k <= N
///   IV   (a, b, k)     sum_{i=0}^{k} C(a+i, a) C(b+k-i, b) = C(a+b+k+1, a+b+1)
///                      legal: a, b, k >= 0
enum class Identity { I, II, III, IV };

struct IdentitySides {
  Rational lhs;  // exact summation
  Rational rhs;  // closed form
  bool holds() const { return lhs == rhs; }
};

std::size_t parameter_count(Identity id);
std::string_view to_string(Identity id);
Identity parse_identity(std::string_view name);

/// Throws DomainError when the tuple has the wrong arity or is out of range.
IdentitySides evaluate_identity(Identity id, std::span<const long> params);
bool check_identity(Identity id, std::span<const long> params);

}  // namespace gtank
