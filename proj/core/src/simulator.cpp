#include "cvqkd/simulator.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/info_units.hpp"
#include "cvqkd/key_rates.hpp"
#include "cvqkd/parallel.hpp"
#include "cvqkd/rng.hpp"

#include <fmt/core.h>

#include <cmath>
#include <numbers>
#include <random>

namespace cvqkd {

namespace {

constexpr std::uint64_t kMinSamples = 1000;
// Residual variances below this fraction of V(X_B) count as zero.
constexpr double kResidualFloor = 1e-12;

struct Quad {
  double q = 0.0;
  double p = 0.0;
};

class Sampler {
 public:
  explicit Sampler(SplitMix64 gen) : gen_(gen) {}

  double normal(double variance) { return std::sqrt(variance) * draw(); }

  Quad vacuum() { return {draw(), draw()}; }

  // Wigner sample of epr_cm(V): Q correlated, P anticorrelated.
  std::pair<Quad, Quad> epr(double v) {
    const double c = std::sqrt(v * v - 1.0);
    const double plus = std::sqrt(0.5 * (v + c));
    const double minus = std::sqrt(0.5 / (v + c));  // sqrt((V - c) / 2), cancellation-free
    const double uq = draw(), vq = draw(), up = draw(), vp = draw();
    return {{plus * uq + minus * vq, plus * up + minus * vp},
            {plus * uq - minus * vq, -plus * up + minus * vp}};
  }

 private:
  double draw() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  SplitMix64 gen_;
};

// Cloner output modes (transmitted, reflected).
std::pair<Quad, Quad> mix(const Quad& s, const Quad& e, double t) {
  const double a = std::sqrt(t);
  const double b = std::sqrt(1.0 - t);
  return {{a * s.q + b * e.q, a * s.p + b * e.p}, {-b * s.q + a * e.q, -b * s.p + a * e.p}};
}

// One protocol run; writes X_A and X_B (1 or 2 entries each).
void run_once(const SimConfig& cfg, std::uint64_t index, double* xa, double* xb) {
  Sampler s(sample_stream(cfg.seed, index));
  const double t = cfg.params.transmission;
  const double w = cfg.params.eve_variance;
  const double v = cfg.modulation;
  const double h = 1.0 / std::sqrt(2.0);
  const Quad alice{s.normal(v - 1.0), s.normal(v - 1.0)};
  xa[0] = alice.q;
  xa[1] = alice.p;

  switch (cfg.protocol) {
    case Protocol::Hom:
    case Protocol::Het: {
      const Quad vac = s.vacuum();
      const Quad signal{alice.q + vac.q, alice.p + vac.p};
      const auto [e, e_spectator] = s.epr(w);
      const Quad b = mix(signal, e, t).first;
      if (cfg.protocol == Protocol::Hom) {
        xb[0] = b.q;
      } else {
        const Quad v0 = s.vacuum();
        xb[0] = h * (b.q + v0.q);
        xb[1] = h * (b.p - v0.p);
      }
      break;
    }
    case Protocol::Hom2:
    case Protocol::Het2: {
      const auto [b1, c1] = s.epr(v);
      const auto [e1, e1_spectator] = s.epr(w);
      const auto [e2, e2_spectator] = s.epr(w);
      const Quad a1 = mix(c1, e1, t).first;
      const Quad a2{a1.q + alice.q, a1.p + alice.p};
      const Quad b2 = mix(a2, e2, t).first;
      if (cfg.protocol == Protocol::Hom2) {
        xb[0] = b2.q - t * b1.q;
      } else {
        const Quad v0 = s.vacuum();
        const Quad v1 = s.vacuum();
        const double q_minus = h * (b1.q - v0.q);
        const double p_plus = h * (b1.p + v0.p);
        xb[0] = h * (b2.q - v1.q) - t * q_minus;
        xb[1] = h * (b2.p + v1.p) + t * p_plus;
      }
      break;
    }
    default: break;
  }
}

struct Regression {
  double variance = 0.0;
  double residual = 0.0;
  double correlation = 0.0;
};

// Least squares of column d of x_b on column d of x_a (with intercept).
Regression regress(std::span<const double> x_a, std::span<const double> x_b, int dims, int d) {
  const std::size_t n = x_a.size() / static_cast<std::size_t>(dims);
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += x_a[i * dims + d];
    mb += x_b[i * dims + d];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x_a[i * dims + d] - ma;
    const double b = x_b[i * dims + d] - mb;
    saa += a * a;
    sbb += b * b;
    sab += a * b;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw NumericError("empirical_mi: singular sample covariance (zero variance)");
  }
  Regression r;
  const double denom = static_cast<double>(n - 1);
  r.variance = sbb / denom;
  r.residual = std::max(0.0, (sbb - sab * sab / saa) / denom);
  r.correlation = sab / std::sqrt(saa * sbb);
  return r;
}

}  // namespace

MiEstimate empirical_mi(std::span<const double> x_a, std::span<const double> x_b, int dims) {
  if (dims < 1 || x_a.size() != x_b.size() || x_a.size() % static_cast<std::size_t>(dims) != 0) {
    throw DomainError("empirical_mi: sample arrays do not match the dimension");
  }
  const std::size_t n = x_a.size() / static_cast<std::size_t>(dims);
  if (n < kMinSamples) {
    throw DomainError(fmt::format("empirical_mi: need at least {} samples, got {}", kMinSamples, n));
  }
  MiEstimate out;
  double var_nats = 0.0;
  for (int d = 0; d < dims; ++d) {
    const Regression r = regress(x_a, x_b, dims, d);
    double ratio = r.variance / r.residual;
    if (!(r.residual > kResidualFloor * r.variance)) {
      out.capped = true;
      ratio = 1.0 / kResidualFloor;
    }
    out.value += 0.5 * info_log(ratio);
    const double se = std::max(std::abs(r.correlation), 1.0 / std::sqrt(static_cast<double>(n))) /
                      std::sqrt(static_cast<double>(n));
    var_nats += se * se;
  }
  // Convert the nat-valued standard error into the active unit.
  out.sigma = std::sqrt(var_nats) * info_log(std::numbers::e);
  return out;
}

SimRun simulate(const SimConfig& cfg) {
  if (is_collective(cfg.protocol)) {
    throw DomainError(fmt::format("simulate: {} has no classical output to sample",
                                  to_string(cfg.protocol)));
  }
  if (!(cfg.modulation > 1.0) || !std::isfinite(cfg.modulation)) {
    throw DomainError(fmt::format("simulate: modulation V={} must be finite and > 1", cfg.modulation));
  }
  if (cfg.n_samples < kMinSamples) {
    throw DomainError(fmt::format("simulate: need n >= {} samples", kMinSamples));
  }

  SimRun run;
  run.config = cfg;
  run.dimensions = is_joint(cfg.protocol) ? 2 : 1;
  const auto dims = static_cast<std::size_t>(run.dimensions);
  const std::size_t n = cfg.n_samples;
  run.x_a.resize(n * dims);
  run.x_b.resize(n * dims);

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
          double xa[2], xb[2];
          run_once(cfg, i, xa, xb);
          for (std::size_t d = 0; d < dims; ++d) {
            run.x_a[i * dims + d] = xa[d];
            run.x_b[i * dims + d] = xb[d];
          }
        }
      },
      cfg.threads);

  for (int d = 0; d < run.dimensions; ++d) {
    const Regression r = regress(run.x_a, run.x_b, run.dimensions, d);
    run.variance.push_back(r.variance);
    run.conditional_variance.push_back(r.residual);
  }
  run.empirical_mi = empirical_mi(run.x_a, run.x_b, run.dimensions);

  const OutputStatistics analytic = exact_output_statistics(cfg.protocol, cfg.modulation, cfg.params);
  run.analytic_variance = analytic.variance;
  run.analytic_conditional_variance = analytic.conditional_variance;
  run.analytic_mi = analytic.mutual_information;
  return run;
}

}  // namespace cvqkd
