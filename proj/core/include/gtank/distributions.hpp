#pragma once

#include "gtank/oracle.hpp"
#include "gtank/rational.hpp"

namespace gtank {

// Order statistics of a uniform k-subset of {1..N}. Every pmf returns 0
// outside its support instead of throwing, so summation loops can run over
// any range; only invalid (N, k, L) combinations throw DomainError.

/// P(M_k = m) = C(m-1, k-1) / C(N, k) for k <= m <= N.
Rational pmf_largest(long N, long k, long m);

/// P(M_{k-L+1} = m) = C(m-1, k-L) C(N-m, L-1) / C(N, k) for
/// k-L+1 <= m <= N-L+1. L = 1 is the largest, L = 2 the second largest.
Rational pmf_lth_largest(long N, long k, long L, long m);

/// P(M_k = m_top, M_{k-1} = m_second) = C(m_second-1, k-2) / C(N, k) for
/// k-1 <= m_second < m_top <= N.
Rational joint_pmf_top_two(long N, long k, long m_top, long m_second);

/// E[M_k] = k(N+1)/(k+1), Var(M_k) = k(N-k)(N+1) / ((k+1)^2 (k+2)).
MomentReport closed_moments_largest(long N, long k);

/// E[M_{k-L+1}] = (N+1)(k-L+1)/(k+1). The variance has a closed form for
/// L = 1 and L = 2 only; for L > 2 it comes from `oracle_moments` and the
/// report is marked Provenance::oracle (which can throw ResourceError).
MomentReport closed_moments_lth(long N, long k, long L, const OracleOptions& options = {});

/// Cov(X_k, X_{k-1}) = (N+1)(N-k) / (k(k+2)) for the unbiased rescalings
/// X_k = M_k (k+1)/k - 1 and X_{k-1} = M_{k-1} (k+1)/(k-1) - 1.
Rational closed_covariance_top_two(long N, long k);

/// Largest coordinate of k distinct points drawn from the grid {1..N}^L:
/// P(M = m) = (C(m^L, k) - C((m-1)^L, k)) / C(N^L, k).
Rational pmf_square_max(long N, long k, long L, long m);

}  // namespace gtank
