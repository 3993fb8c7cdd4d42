#include "gtank/identities.hpp"

#include <string>

#include "gtank/binomial.hpp"
#include "gtank/errors.hpp"

namespace gtank {
namespace {

std::string describe(Identity id, std::span<const long> p) {
  std::string s = "identity " + std::string(to_string(id)) + " (";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p[i]);
  return s + ")";
}

void require(bool ok, Identity id, std::span<const long> p) {
  if (!ok) throw DomainError(describe(id, p) + ": parameters out of range");
}

IdentitySides identity_one(long N, long k, long b, long c) {
  BigInt lhs = 0;
  for (long m = k; m <= N; ++m) lhs += binomial(m - b, k - c);
  const BigInt rhs = binomial(N - b + 1, k - c + 1) - binomial(k - b, k - c + 1);
  return {Rational(lhs), Rational(rhs)};
}

// Shared weights of identities II and III: the pmf of the a-th largest of k
// draws from {1..N}, summed against m^power.
Rational order_stat_weighted_sum(long N, long k, long a, unsigned power) {
  BigInt total = 0;
  for (long m = k - a + 1; m <= N - a + 1; ++m) {
    total += pow(BigInt(m), power) * binomial(m - 1, k - a) * binomial(N - m, a - 1);
  }
  return Rational(total, binomial(N, k));
}

IdentitySides identity_two(long N, long k, long a) {
  return {order_stat_weighted_sum(N, k, a, 1), Rational((N + 1) * (k - a + 1), k + 1)};
}

IdentitySides identity_three(long N, long k, long a) {
  const Rational first = Rational(BigInt((k - a + 1) * (k - a + 2)) * (N + 2) * (N + 1),
                                  BigInt((k + 2) * (k + 1)));
  return {order_stat_weighted_sum(N, k, a, 2), first - Rational((N + 1) * (k - a + 1), k + 1)};
}

IdentitySides identity_four(long a, long b, long k) {
  BigInt lhs = 0;
  for (long i = 0; i <= k; ++i) lhs += binomial(a + i, a) * binomial(b + k - i, b);
  return {Rational(lhs), Rational(binomial(a + b + k + 1, a + b + 1))};
}

}  // namespace

std::size_t parameter_count(Identity id) {
  switch (id) {
    case Identity::I: return 4;
    case Identity::II:
    case Identity::III:
    case Identity::IV: return 3;
  }
  return 0;
}

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::I: return "I";
    case Identity::II: return "II";
    case Identity::III: return "III";
    case Identity::IV: return "IV";
  }
  return "?";
}

Identity parse_identity(std::string_view name) {
  if (name == "I") return Identity::I;
  if (name == "II") return Identity::II;
  if (name == "III") return Identity::III;
  if (name == "IV") return Identity::IV;
  throw DomainError("unknown identity '" + std::string(name) + "'");
}

IdentitySides evaluate_identity(Identity id, std::span<const long> p) {
  if (p.size() != parameter_count(id)) {
    throw DomainError(describe(id, p) + ": expected " + std::to_string(parameter_count(id)) +
                      " parameters");
  }
  switch (id) {
    case Identity::I: {
      const long N = p[0], k = p[1], b = p[2], c = p[3];
      require(N >= k && k >= 0 && b >= 0 && b <= k && c >= 0 && c <= k, id, p);
      return identity_one(N, k, b, c);
    }
    case Identity::II:
    case Identity::III: {
      const long N = p[0], k = p[1], a = p[2];
      require(a >= 1 && a <= k && k <= N, id, p);
      return id == Identity::II ? identity_two(N, k, a) : identity_three(N, k, a);
    }
    case Identity::IV: {
      const long a = p[0], b = p[1], k = p[2];
      require(a >= 0 && b >= 0 && k >= 0, id, p);
      return identity_four(a, b, k);
    }
  }
  throw DomainError("unknown identity");
}

bool check_identity(Identity id, std::span<const long> params) {
  return evaluate_identity(id, params).holds();
}

}  // namespace gtank
