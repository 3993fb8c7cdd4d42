#include "gtank/estimators.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "gtank/binomial.hpp"
#include "gtank/distributions.hpp"
#include "gtank/errors.hpp"
#include "gtank/lattice.hpp"

namespace gtank {
namespace {

constexpr std::array<EstimatorInfo, 11> kInfo{{
    {"d1_max", "gtp.1d.discrete.max", "m(k+1)/k - 1", false, ""},
    {"d1_spread", "gtp.1d.discrete.spread", "s(k+1)/(k-1) - 1", false, ""},
    {"d1_lth", "gtp.1d.discrete.lth", "m(k+1)/(k-L+1) - 1", false, ""},
    {"d1_cont_max", "gtp.1d.continuous.max", "m(k+1)/k", false, ""},
    {"d1_cont_second", "gtp.1d.continuous.second", "m(k+1)/(k-1)", false, ""},
    {"weighted", "gtp.1d.weighted", "alpha X_k + (1-alpha) X_{k-1}", false, ""},
    {"square_discrete", "gtp.square.discrete.max", "(Lk+1)/(Lk) (m-1)", true, "O(1/N)"},
    {"square_continuous", "gtp.square.continuous.max", "(Lk+1)/(Lk) m", false, ""},
    {"ball_discrete", "gtp.ball.discrete.sumsq", "sqrt((k+1)/k (m1-1))", true, "O(1/r^2)"},
    {"ball_continuous", "gtp.ball.continuous.norm", "(Lk+1)/(Lk) m2", false, ""},
    {"square_recursive", "gtp.square.discrete.recursive",
     "N <- sqrt((maxX + N(maxY-1))(k+1)/k - 1)", true, "O(1/N)"},
}};

std::string num(long v) { return std::to_string(v); }

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

EstimateResult make(EstimatorKind kind, double estimate,
                    std::vector<std::pair<std::string, double>> inputs) {
  EstimateResult r;
  r.estimate = estimate;
  r.estimator.kind = kind;
  r.inputs = std::move(inputs);
  r.approximate = estimator_info(kind).approximate;
  return r;
}

// m * p / q without first rounding p / q.
double scale(double m, const Rational& factor) {
  return m * factor.numerator().get_d() / factor.denominator().get_d();
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

const EstimatorInfo& estimator_info(EstimatorKind kind) {
  return kInfo[static_cast<std::size_t>(kind)];
}

std::string EstimatorId::name() const {
  std::string out(estimator_info(kind).name);
  if (kind == EstimatorKind::d1_lth) out += ":" + num(rank);
  if (kind == EstimatorKind::weighted) out += ":" + format_double(alpha);
  return out;
}

EstimatorId EstimatorId::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  for (std::size_t i = 0; i < kInfo.size(); ++i) {
    if (kInfo[i].name != head) continue;
    EstimatorId id;
    id.kind = static_cast<EstimatorKind>(i);
    if (id.kind == EstimatorKind::d1_lth) {
      if (arg.empty()) throw DomainError("d1_lth needs a rank, e.g. d1_lth:2");
      auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), id.rank);
      if (ec != std::errc() || p != arg.data() + arg.size()) throw DomainError("bad rank in '" + std::string(text) + "'");
    } else if (id.kind == EstimatorKind::weighted) {
      if (arg.empty()) throw DomainError("weighted needs alpha, e.g. weighted:0.5");
      auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), id.alpha);
      if (ec != std::errc() || p != arg.data() + arg.size()) throw DomainError("bad alpha in '" + std::string(text) + "'");
      if (!(id.alpha >= 0.0 && id.alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    } else if (!arg.empty()) {
      throw DomainError("estimator '" + std::string(head) + "' takes no argument");
    }
    return id;
  }
  throw DomainError("unknown estimator '" + std::string(text) + "'");
}

Rational scaling_factor(EstimatorKind kind, long k, long L) {
  switch (kind) {
    case EstimatorKind::d1_max:
    case EstimatorKind::d1_cont_max:
    case EstimatorKind::ball_discrete:
      return Rational(k + 1, k);
    case EstimatorKind::d1_spread:
    case EstimatorKind::d1_cont_second:
      return Rational(k + 1, k - 1);
    case EstimatorKind::d1_lth:
      return Rational(k + 1, k - L + 1);
    case EstimatorKind::square_discrete:
    case EstimatorKind::square_continuous:
    case EstimatorKind::ball_continuous:
      return Rational(L * k + 1, L * k);
    case EstimatorKind::weighted:
    case EstimatorKind::square_recursive:
      break;
  }
  throw DomainError("estimator has no single scaling factor");
}

EstimateResult est_d1_max(long m, long k) {
  require(k >= 1, "d1_max needs k >= 1");
  require(m >= k, "impossible observation: largest serial " + num(m) + " < k = " + num(k));
  const Rational value = Rational(m) * scaling_factor(EstimatorKind::d1_max, k) - 1;
  return make(EstimatorKind::d1_max, value.to_double(), {{"m", m}, {"k", k}});
}

EstimateResult est_d1_spread(long s, long k) {
  require(k >= 2, "d1_spread needs k >= 2");
  require(s >= k - 1, "impossible observation: spread " + num(s) + " < k - 1");
  const Rational value = Rational(s) * scaling_factor(EstimatorKind::d1_spread, k) - 1;
  return make(EstimatorKind::d1_spread, value.to_double(), {{"s", s}, {"k", k}});
}

EstimateResult est_d1_lth(long m, long k, long L) {
  require(L >= 1 && L <= k, "d1_lth needs 1 <= L <= k");
  require(m >= k - L + 1, "impossible observation: rank-" + num(L) + " value " + num(m) +
                              " < k - L + 1");
  const Rational value = Rational(m) * scaling_factor(EstimatorKind::d1_lth, k, L) - 1;
  EstimateResult r = make(EstimatorKind::d1_lth, value.to_double(), {{"m", m}, {"k", k}, {"L", L}});
  r.estimator.rank = L;
  return r;
}

EstimateResult est_d1_cont(double m, long k) {
  require(k >= 1, "d1_cont_max needs k >= 1");
  require(m > 0 && std::isfinite(m), "continuous observation must be positive");
  return make(EstimatorKind::d1_cont_max, scale(m, scaling_factor(EstimatorKind::d1_cont_max, k)),
              {{"m", m}, {"k", k}});
}

EstimateResult est_d1_cont_second(double m, long k) {
  require(k >= 2, "d1_cont_second needs k >= 2");
  require(m > 0 && std::isfinite(m), "continuous observation must be positive");
  return make(EstimatorKind::d1_cont_second,
              scale(m, scaling_factor(EstimatorKind::d1_cont_second, k)), {{"m", m}, {"k", k}});
}

VarianceFormulas var_formulas(long N, long k) {
  require(k >= 2 && k <= N, "variance formulas need 2 <= k <= N");
  VarianceFormulas v;
  v.var_Xk = Rational((N - k) * (N + 1), k * (k + 2));
  v.var_Xk1 = Rational(2 * (N - k) * (N + 1), (k + 2) * (k - 1));
  v.cov = Rational((N + 1) * (N - k), k * (k + 2));
  const BigInt n2 = BigInt(N) * N;
  v.var_Xk_cont = Rational(n2, BigInt(k * (k + 2)));
  v.var_Xk1_cont = Rational(2 * n2, BigInt((k + 2) * (k - 1)));
  v.cov_cont = Rational(n2, BigInt(k * (k + 2)));
  return v;
}

Rational weighted_variance(const Rational& alpha, const Rational& var_a, const Rational& var_b,
                           const Rational& cov) {
  const Rational beta = Rational(1) - alpha;
  return alpha * alpha * var_a + beta * beta * var_b + Rational(2) * alpha * beta * cov;
}

AlphaResult optimal_alpha(const Rational& var_a, const Rational& var_b, const Rational& cov) {
  AlphaResult out;
  const Rational denom = var_a + var_b - Rational(2) * cov;
  const Rational slope = Rational(2) * (cov - var_b);  // linear coefficient in alpha

  if (denom.sign() == 0) {
    if (slope.sign() == 0) {
      out.any_alpha = true;
      out.alpha = 1;
      out.variance = var_b;
      return out;
    }
    out.alpha = slope.sign() < 0 ? Rational(1) : Rational(0);
    out.variance = weighted_variance(out.alpha, var_a, var_b, cov);
    return out;
  }

  out.has_critical_point = true;
  out.critical = (var_b - cov) / denom;

  std::vector<Rational> candidates;
  if (out.critical >= Rational(0) && out.critical <= Rational(1)) candidates.push_back(out.critical);
  candidates.emplace_back(1);
  candidates.emplace_back(0);

  out.alpha = candidates.front();
  out.variance = weighted_variance(out.alpha, var_a, var_b, cov);
  for (const Rational& a : candidates) {
    const Rational v = weighted_variance(a, var_a, var_b, cov);
    if (v < out.variance) {
      out.alpha = a;
      out.variance = v;
    }
  }
  return out;
}

double weighted_estimate(double alpha, double x_a, double x_b) {
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  if (alpha == 1.0) return x_a;
  if (alpha == 0.0) return x_b;
  return alpha * x_a + (1.0 - alpha) * x_b;
}

EstimateResult est_square_discrete(long m, long k, long L) {
  require(k >= 1 && L >= 1, "square_discrete needs k >= 1 and L >= 1");
  require(m >= 1, "square_discrete needs m >= 1");
  const Rational value = Rational(m - 1) * scaling_factor(EstimatorKind::square_discrete, k, L);
  EstimateResult r = make(EstimatorKind::square_discrete, value.to_double(),
                          {{"m", m}, {"k", k}, {"L", L}});
  r.degenerate = m == 1;
  r.below_observation = value < Rational(m);
  return r;
}

EstimateResult est_square_continuous(double m, long k, long L) {
  require(k >= 1 && L >= 1, "square_continuous needs k >= 1 and L >= 1");
  require(m > 0 && std::isfinite(m), "continuous observation must be positive");
  return make(EstimatorKind::square_continuous,
              scale(m, scaling_factor(EstimatorKind::square_continuous, k, L)),
              {{"m", m}, {"k", k}, {"L", static_cast<double>(L)}});
}

EstimateResult est_ball_discrete(long m1, long k) {
  require(k >= 1, "ball_discrete needs k >= 1");
  require(m1 >= 1, "ball_discrete needs m1 >= 1");
  const Rational radicand = Rational(m1 - 1) * scaling_factor(EstimatorKind::ball_discrete, k);
  EstimateResult r = make(EstimatorKind::ball_discrete, std::sqrt(radicand.to_double()),
                          {{"m1", m1}, {"k", k}});
  r.degenerate = m1 == 1;
  r.below_observation = radicand < Rational(m1);
  return r;
}

EstimateResult est_ball_continuous(double m2, long k, long L) {
  require(k >= 1 && L >= 1, "ball_continuous needs k >= 1 and L >= 1");
  require(m2 > 0 && std::isfinite(m2), "continuous observation must be positive");
  return make(EstimatorKind::ball_continuous,
              scale(m2, scaling_factor(EstimatorKind::ball_continuous, k, L)),
              {{"m2", m2}, {"k", k}, {"L", static_cast<double>(L)}});
}

RecursiveResult est_square_recursive(long max_x, long max_y, long k, double n0,
                                     const RecursiveOptions& options) {
  require(max_x >= 1 && max_y >= 1, "recursive estimator needs maxX, maxY >= 1");
  require(k >= 1, "recursive estimator needs k >= 1");
  require(n0 >= static_cast<double>(std::max(max_x, max_y)), "N0 must be >= max(maxX, maxY)");
  require(options.tol > 0 && options.max_iter >= 1, "need tol > 0 and max_iter >= 1");

  const double factor = static_cast<double>(k + 1) / static_cast<double>(k);
  RecursiveResult out;
  double current = n0;
  for (int step = 1; step <= options.max_iter; ++step) {
    const double radicand =
        (static_cast<double>(max_x) + current * static_cast<double>(max_y - 1)) * factor - 1.0;
    if (radicand < 0) {
      throw IterationError("recursive estimator: negative radicand at step " + std::to_string(step),
                           step);
    }
    const double next = std::sqrt(radicand);
    out.iterations = step;
    if (std::abs(next - current) < options.tol) {
      out.estimate = next;
      out.converged = true;
      return out;
    }
    current = next;
  }
  out.estimate = current;
  out.converged = false;
  return out;
}

double square_recursive_fixed_point(long max_x, long max_y, long k) {
  require(max_x >= 1 && max_y >= 1 && k >= 1, "need maxX, maxY, k >= 1");
  const long double c = static_cast<long double>(k + 1) / static_cast<long double>(k);
  const long double b = c * static_cast<long double>(max_y - 1);
  const long double c0 = c * static_cast<long double>(max_x) - 1.0L;
  return static_cast<double>((b + std::sqrt(b * b + 4.0L * c0)) / 2.0L);
}

void require_compatible(const EstimatorId& id, const GeometryDomain& g, long k) {
  const auto fail = [&](const char* why) {
    throw ConfigError("estimator " + id.name() + " cannot be used on " + g.describe() + ": " + why);
  };
  const bool discrete = g.mode == Mode::discrete;
  switch (id.kind) {
    case EstimatorKind::d1_max:
    case EstimatorKind::d1_spread:
    case EstimatorKind::d1_lth:
      if (!(discrete && g.shape == Shape::interval)) fail("needs the discrete interval");
      if (id.kind == EstimatorKind::d1_spread && k < 2) fail("needs k >= 2");
      if (id.kind == EstimatorKind::d1_lth && (id.rank < 1 || id.rank > k)) fail("rank outside [1, k]");
      break;
    case EstimatorKind::d1_cont_max:
    case EstimatorKind::d1_cont_second:
      if (!(!discrete && g.shape == Shape::interval)) fail("needs the continuous interval");
      if (id.kind == EstimatorKind::d1_cont_second && k < 2) fail("needs k >= 2");
      break;
    case EstimatorKind::weighted:
      if (g.shape != Shape::interval) fail("needs an interval");
      if (k < 2) fail("needs k >= 2");
      break;
    case EstimatorKind::square_discrete:
      if (!(discrete && g.shape != Shape::ball)) fail("needs a discrete square or interval");
      break;
    case EstimatorKind::square_continuous:
      if (!(!discrete && g.shape != Shape::ball)) fail("needs a continuous square or interval");
      break;
    case EstimatorKind::ball_discrete:
      if (!(discrete && g.shape == Shape::ball)) fail("needs the discrete ball");
      break;
    case EstimatorKind::ball_continuous:
      if (!(!discrete && g.shape == Shape::ball)) fail("needs the continuous ball");
      break;
    case EstimatorKind::square_recursive:
      if (!(discrete && g.shape == Shape::square && g.dim == 2)) fail("needs the discrete 2D square");
      break;
  }
}

EstimateResult apply_estimator(const EstimatorId& id, const ObservationSet& obs,
                               const GeometryDomain& g) {
  const long k = static_cast<long>(obs.size());
  require_compatible(id, g, k);
  if (obs.dim() != g.dim) throw ConfigError("observation dimension does not match geometry");
  const auto as_long = [](double v) { return static_cast<long>(std::llround(v)); };

  EstimateResult r;
  switch (id.kind) {
    case EstimatorKind::d1_max:
      return est_d1_max(as_long(obs.max_component()), k);
    case EstimatorKind::d1_spread:
      return est_d1_spread(as_long(obs.spread()), k);
    case EstimatorKind::d1_lth:
      return est_d1_lth(as_long(obs.lth_largest(id.rank)), k, id.rank);
    case EstimatorKind::d1_cont_max:
      return est_d1_cont(obs.max_component(), k);
    case EstimatorKind::d1_cont_second:
      return est_d1_cont_second(obs.lth_largest(2), k);
    case EstimatorKind::weighted: {
      const bool discrete = g.mode == Mode::discrete;
      const EstimateResult a = discrete ? est_d1_max(as_long(obs.lth_largest(1)), k)
                                        : est_d1_cont(obs.lth_largest(1), k);
      const EstimateResult b = discrete ? est_d1_lth(as_long(obs.lth_largest(2)), k, 2)
                                        : est_d1_cont_second(obs.lth_largest(2), k);
      r = make(EstimatorKind::weighted, weighted_estimate(id.alpha, a.estimate, b.estimate),
               {{"x_k", a.estimate}, {"x_k1", b.estimate}, {"alpha", id.alpha}});
      r.estimator = id;
      return r;
    }
    case EstimatorKind::square_discrete:
      return est_square_discrete(as_long(obs.max_component()), k, g.dim);
    case EstimatorKind::square_continuous:
      return est_square_continuous(obs.max_component(), k, g.dim);
    case EstimatorKind::ball_discrete:
      return est_ball_discrete(as_long(obs.max_sum_squares()), k);
    case EstimatorKind::ball_continuous:
      return est_ball_continuous(obs.max_norm(), k, g.dim);
    case EstimatorKind::square_recursive: {
      const long mx = as_long(obs.max_along(0));
      const long my = as_long(obs.max_along(1));
      const RecursiveResult rec = est_square_recursive(mx, my, k, static_cast<double>(std::max(mx, my)));
      r = make(EstimatorKind::square_recursive, rec.estimate,
               {{"max_x", mx}, {"max_y", my}, {"k", k}, {"iterations", rec.iterations}});
      r.converged = rec.converged;
      return r;
    }
  }
  throw ConfigError("unhandled estimator");
}

std::vector<EstimatorId> default_estimators(const GeometryDomain& g) {
  const bool discrete = g.mode == Mode::discrete;
  switch (g.shape) {
    case Shape::interval:
      return {EstimatorId{discrete ? EstimatorKind::d1_max : EstimatorKind::d1_cont_max}};
    case Shape::square:
      return {EstimatorId{discrete ? EstimatorKind::square_discrete : EstimatorKind::square_continuous}};
    case Shape::ball:
      return {EstimatorId{discrete ? EstimatorKind::ball_discrete : EstimatorKind::ball_continuous}};
  }
  return {};
}

Rational expected_square_discrete(long N, long k, long L) {
  require(N >= 1 && k >= 1 && L >= 1, "expected_square_discrete needs N, k, L >= 1");
  const auto cells = [L](long side) { return pow(BigInt(side), static_cast<unsigned long>(L)).get_si(); };
  const BigInt total = binomial(cells(N), k);
  require(total > 0, "k exceeds the N^L grid");
  const Rational factor = scaling_factor(EstimatorKind::square_discrete, k, L);

  // sum_m P(M = m) (m - 1), with P(M <= m) = C(m^L, k) / C(N^L, k)
  BigInt weighted = 0;
  BigInt previous = 0;
  for (long m = 1; m <= N; ++m) {
    const BigInt at_most = binomial(cells(m), k);
    weighted += (at_most - previous) * (m - 1);
    previous = at_most;
  }
  return Rational(weighted, total) * factor;
}

double expected_ball_discrete(long r_sq, int L, long k) {
  require(r_sq >= 0 && L >= 1 && k >= 1, "expected_ball_discrete needs r_sq >= 0, L >= 1, k >= 1");
  const std::vector<std::uint64_t> shell = ball_shell_counts(r_sq, L);
  long population = 0;
  for (auto c : shell) population += static_cast<long>(c);
  const BigInt total = binomial(population, k);
  require(total > 0, "k exceeds the number of lattice points");

  const double factor = static_cast<double>(k + 1) / static_cast<double>(k);
  double expectation = 0;
  long cumulative = 0;
  BigInt previous = 0;
  for (std::size_t s = 0; s < shell.size(); ++s) {
    cumulative += static_cast<long>(shell[s]);
    const BigInt at_most = binomial(cumulative, k);
    if (s >= 1 && at_most != previous) {
      const double p = Rational(at_most - previous, total).to_double();
      expectation += p * std::sqrt(static_cast<double>(s - 1) * factor);
    }
    previous = at_most;
  }
  return expectation;
}

}  // namespace gtank
