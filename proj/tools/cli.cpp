#include "cli.hpp"

#include "cvqkd/attacks.hpp"
#include "cvqkd/csv.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/key_rates.hpp"
#include "cvqkd/rng.hpp"
#include "cvqkd/simulator.hpp"
#include "cvqkd/tomography.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cvqkd::cli {

namespace {

Protocol to_protocol(const std::string& text) {
  if (auto p = parse_protocol(text)) return *p;
  throw DomainError("unknown protocol '" + text +
                    "' (expected hom, het, coll_hom, coll_het, hom2, het2, coll_hom2, coll_het2)");
}

Reconciliation to_recon(const std::string& text) {
  if (auto r = parse_reconciliation(text)) return *r;
  throw DomainError("unknown reconciliation '" + text + "' (expected dr or rr)");
}

Method to_method(const std::string& text) {
  if (text == "asymptotic") return Method::Asymptotic;
  if (text == "exact") return Method::ExactFiniteV;
  throw DomainError("unknown method '" + text + "' (expected asymptotic or exact)");
}

LogBase to_log_base(const std::string& text) {
  if (text == "2") return LogBase::Bits;
  if (text == "e") return LogBase::Nats;
  throw DomainError("unknown log base '" + text + "' (expected 2 or e)");
}

// Flag values collected by CLI11 before conversion.
struct RawFlags {
  std::string protocol, recon, method = "asymptotic", log_base = "2", grid;
  std::optional<double> t, w, n_excess, t_back, v, tol;
  std::optional<std::uint64_t> samples, seed;
  std::optional<std::string> out, dump, forward, backward, round_trip, save_prefix;
  double c = 0.0;
  unsigned threads = 0;
};

void add_attack(CLI::App* sub, RawFlags& f, bool t_required) {
  auto* t = sub->add_option("--T", f.t, "channel transmission T");
  if (t_required) t->required();
  auto* w = sub->add_option("--W", f.w, "Eve's EPR variance W >= 1");
  auto* n = sub->add_option("--N", f.n_excess, "excess noise N >= 0 (shot-noise units)");
  w->excludes(n);
  n->excludes(w);
}

void add_rate_flags(CLI::App* sub, RawFlags& f) {
  sub->add_option("--method", f.method, "asymptotic (V -> infinity) or exact (finite --V)");
  sub->add_option("--V", f.v, "modulation variance for --method exact (default 1e6)");
}

AttackParams attack_from(const Command& c) {
  if (c.eve_variance) return AttackParams(c.transmission, *c.eve_variance);
  if (c.excess_noise) return AttackParams::from_excess_noise(c.transmission, *c.excess_noise);
  throw DomainError("one of --W or --N is required");
}

std::string excess_or_nan(const AttackParams& a) {
  return a.transmission > 0.0 ? format_number(excess_noise(a)) : "nan";
}

void require_finite_rate(Protocol p, Reconciliation r) {
  if (auto reason = divergence_reason(p, r)) {
    throw DomainError(std::string(to_string(p)) + " " + std::string(to_string(r)) + ": " +
                      std::string(*reason));
  }
}

ThresholdOptions threshold_options(const Command& c) {
  ThresholdOptions o;
  o.method = c.method;
  o.modulation = c.modulation;
  o.threads = c.threads;
  return o;
}

std::string rate_column() { return log_base() == LogBase::Bits ? "rate_bits" : "rate_nats"; }

void run_rate(const Command& c, std::ostream& out) {
  require_finite_rate(c.protocol, c.recon);
  const AttackParams a = attack_from(c);
  const RateResult r = c.method == Method::ExactFiniteV
                           ? exact_rate(c.protocol, c.recon, c.modulation, a)
                           : asymptotic_rate(c.protocol, c.recon, a);
  out << "protocol,recon,T,W,N," << rate_column() << ",method\n"
      << to_string(c.protocol) << ',' << to_string(c.recon) << ',' << format_number(a.transmission)
      << ',' << format_number(a.eve_variance) << ',' << excess_or_nan(a) << ','
      << format_number(r.rate()) << ',' << to_string(r.method) << '\n';
}

void run_threshold(const Command& c, std::ostream& out) {
  require_finite_rate(c.protocol, c.recon);
  const double n = solve_threshold(c.protocol, c.recon, c.transmission, threshold_options(c));
  out << "protocol,recon,T,N_threshold,method\n"
      << to_string(c.protocol) << ',' << to_string(c.recon) << ',' << format_number(c.transmission)
      << ',' << format_number(n) << ',' << to_string(c.method) << '\n';
}

std::string threshold_cell(const ThresholdPoint& p) {
  return p.excess_noise ? format_number(*p.excess_noise) : "nan";
}

void write_errors(const ThresholdCurve& curve, std::ostream& out) {
  for (const auto& p : curve.points) {
    if (!p.error.empty()) {
      out << "# error,protocol=" << to_string(curve.protocol) << ",T=" << format_number(p.transmission)
          << ",message=" << p.error << '\n';
    }
  }
}

void run_sweep(const Command& c, std::ostream& out) {
  require_finite_rate(c.protocol, c.recon);
  const ThresholdOptions o = threshold_options(c);
  const ThresholdCurve curve = sweep_curve(c.protocol, c.recon, c.grid, o);
  std::optional<ThresholdCurve> partner;
  if (is_two_way(c.protocol) && !divergence_reason(one_way_counterpart(c.protocol), c.recon)) {
    partner = sweep_curve(one_way_counterpart(c.protocol), c.recon, c.grid, o);
  }
  out << "T," << to_string(c.protocol);
  if (partner) out << ',' << to_string(partner->protocol);
  out << '\n';
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    out << format_number(curve.points[i].transmission) << ',' << threshold_cell(curve.points[i]);
    if (partner) out << ',' << threshold_cell(partner->points[i]);
    out << '\n';
  }
  if (partner) {
    for (double t : crossover(curve, *partner)) out << "# crossover,T=" << format_number(t) << '\n';
  }
  write_errors(curve, out);
  if (partner) write_errors(*partner, out);
}

void run_bundle(const Command& c, std::ostream& out) {
  static constexpr std::array kDr = {Protocol::Hom,  Protocol::Het,      Protocol::CollHet,
                                     Protocol::Hom2, Protocol::Het2,     Protocol::CollHom2,
                                     Protocol::CollHet2};
  static constexpr std::array kRr = {Protocol::Hom, Protocol::Het, Protocol::Hom2, Protocol::Het2};
  const std::vector<Protocol> protocols = c.recon == Reconciliation::DR
                                              ? std::vector<Protocol>(kDr.begin(), kDr.end())
                                              : std::vector<Protocol>(kRr.begin(), kRr.end());
  const ThresholdOptions o = threshold_options(c);
  std::vector<ThresholdCurve> curves;
  for (Protocol p : protocols) curves.push_back(sweep_curve(p, c.recon, c.grid, o));

  out << 'T';
  for (Protocol p : protocols) out << ',' << to_string(p);
  out << '\n';
  const std::vector<double> ts = c.grid.points();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << format_number(ts[i]);
    for (const auto& curve : curves) out << ',' << threshold_cell(curve.points[i]);
    out << '\n';
  }
  for (const auto& curve : curves) write_errors(curve, out);
}

void write_samples(const SimRun& run, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write sample dump '" + path.string() + "'");
  const bool joint = run.dimensions == 2;
  f << (joint ? "x_a_q,x_a_p,x_b_q,x_b_p\n" : "x_a_q,x_b_q\n");
  const auto d = static_cast<std::size_t>(run.dimensions);
  for (std::size_t i = 0; i < run.x_a.size() / d; ++i) {
    for (std::size_t k = 0; k < d; ++k) f << format_number(run.x_a[i * d + k]) << ',';
    for (std::size_t k = 0; k < d; ++k) f << format_number(run.x_b[i * d + k]) << (k + 1 < d ? "," : "\n");
  }
  if (!f) throw IoError("failed writing sample dump '" + path.string() + "'");
}

void run_simulate(const Command& c, std::ostream& out) {
  if (!c.seed) throw DomainError("simulate requires --seed");
  SimConfig cfg;
  cfg.protocol = c.protocol;
  cfg.modulation = c.modulation;
  cfg.params = attack_from(c);
  cfg.n_samples = c.samples;
  cfg.seed = *c.seed;
  cfg.threads = c.threads;
  const SimRun run = simulate(cfg);
  if (c.dump) write_samples(run, *c.dump);

  static constexpr std::array kAxis = {"q", "p"};
  out << "protocol=" << to_string(cfg.protocol) << '\n'
      << "T=" << format_number(cfg.params.transmission) << '\n'
      << "W=" << format_number(cfg.params.eve_variance) << '\n'
      << "N=" << excess_or_nan(cfg.params) << '\n'
      << "V=" << format_number(cfg.modulation) << '\n'
      << "n=" << cfg.n_samples << '\n'
      << "seed=" << cfg.seed << '\n'
      << "unit=" << to_string(log_base()) << '\n'
      << "dimensions=" << run.dimensions << '\n';
  for (int d = 0; d < run.dimensions; ++d) {
    const std::string axis = kAxis[static_cast<std::size_t>(d)];
    const auto k = static_cast<std::size_t>(d);
    out << "var_xb_" << axis << '=' << format_number(run.variance[k]) << '\n'
        << "var_xb_" << axis << "_analytic=" << format_number(run.analytic_variance[k]) << '\n'
        << "cond_var_xb_" << axis << '=' << format_number(run.conditional_variance[k]) << '\n'
        << "cond_var_xb_" << axis << "_analytic="
        << format_number(run.analytic_conditional_variance[k]) << '\n';
  }
  const double dev = (run.empirical_mi.value - run.analytic_mi) / run.empirical_mi.sigma;
  out << "mi_empirical=" << format_number(run.empirical_mi.value) << '\n'
      << "mi_sigma=" << format_number(run.empirical_mi.sigma) << '\n'
      << "mi_capped=" << (run.empirical_mi.capped ? "true" : "false") << '\n'
      << "mi_analytic=" << format_number(run.analytic_mi) << '\n'
      << "mi_deviation_sigmas=" << format_number(dev) << '\n';
}

void save_dataset(const TomographyDataset& d, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write dataset '" + path + "'");
  write_dataset_csv(f, d);
  if (!f) throw IoError("failed writing dataset '" + path + "'");
}

void run_tomo_check(const Command& c, std::ostream& out) {
  const bool files = c.forward_csv || c.backward_csv || c.round_trip_csv;
  TomographyDataset fwd, bwd, rt;
  if (files) {
    if (!(c.forward_csv && c.backward_csv && c.round_trip_csv)) {
      throw DomainError("tomo-check needs all of --forward, --backward, --round-trip");
    }
    fwd = read_dataset_csv(*c.forward_csv);
    bwd = read_dataset_csv(*c.backward_csv);
    rt = read_dataset_csv(*c.round_trip_csv);
  } else {
    if (!c.seed) throw DomainError("tomo-check in synthetic mode requires --seed");
    CorrelatedAttackParams attack;
    attack.forward = attack_from(c);
    attack.backward = AttackParams(c.backward_transmission.value_or(attack.forward.transmission),
                                   attack.forward.eve_variance);
    attack.correlation = c.correlation;
    const TwoModeAttackChannels ch = correlated_two_mode_channels(attack);
    const auto probes = default_probe_displacements();
    fwd = synthesize_dataset(ch.forward, probes, c.samples, SplitMix64::mix(*c.seed));
    bwd = synthesize_dataset(ch.backward, probes, c.samples, SplitMix64::mix(*c.seed + 1));
    rt = synthesize_dataset(ch.round_trip, probes, c.samples, SplitMix64::mix(*c.seed + 2));
  }
  if (c.dump) {
    const std::string prefix = c.dump->string();
    save_dataset(fwd, prefix + "forward.csv");
    save_dataset(bwd, prefix + "backward.csv");
    save_dataset(rt, prefix + "round_trip.csv");
  }
  const double tol = c.tolerance.value_or(statistical_tolerance(fwd, bwd, rt));
  const ReducibilityReport report =
      check_reducibility(estimate_channel(fwd), estimate_channel(bwd), estimate_channel(rt), tol);
  out << "mode=" << (files ? "files" : "synthetic") << '\n'
      << "verdict=" << to_string(report.verdict) << '\n'
      << "symmetry_deviation=" << format_number(report.symmetry_deviation) << '\n'
      << "composition_deviation=" << format_number(report.composition_deviation) << '\n'
      << "tolerance=" << format_number(report.tolerance) << '\n'
      << "tolerance_mode=" << (c.tolerance ? "fixed" : "statistical") << '\n';
}

}  // namespace

std::optional<Command> parse(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Key rates, security thresholds, simulation and channel checks for one-way and "
               "two-way CV-QKD under entangling-cloner attacks.",
               "cvqkd"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  RawFlags f;
  app.add_option("--log-base", f.log_base, "information unit: 2 (bits, default) or e (nats)");
  app.add_option("--threads", f.threads, "worker threads (default: CVQKD_THREADS or all cores)");
  app.add_option("--out", f.out, "write output to this file instead of stdout");

  auto* rate = app.add_subcommand("rate", "secret-key rate at one (T, W)");
  rate->add_option("--protocol", f.protocol)->required();
  rate->add_option("--recon", f.recon)->required();
  add_attack(rate, f, true);
  add_rate_flags(rate, f);

  auto* threshold = app.add_subcommand("threshold", "tolerable excess noise at one T");
  threshold->add_option("--protocol", f.protocol)->required();
  threshold->add_option("--recon", f.recon)->required();
  threshold->add_option("--T", f.t)->required();
  add_rate_flags(threshold, f);

  auto* sweep = app.add_subcommand("sweep", "threshold curve N(T) over a grid");
  sweep->add_option("--protocol", f.protocol)->required();
  sweep->add_option("--recon", f.recon)->required();
  sweep->add_option("--grid", f.grid, "lo:hi:steps (default 0.02:0.98:193)");
  add_rate_flags(sweep, f);

  auto* bundle = app.add_subcommand("bundle", "threshold curves of every protocol, one column each");
  bundle->add_option("--recon", f.recon)->required();
  bundle->add_option("--grid", f.grid, "lo:hi:steps (default 0.02:0.98:193)");
  add_rate_flags(bundle, f);

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo run of an individual protocol");
  sim->add_option("--protocol", f.protocol)->required();
  add_attack(sim, f, true);
  sim->add_option("--V", f.v, "modulation variance (default 1e3)");
  sim->add_option("--n", f.samples, "number of protocol runs (default 1e5)");
  sim->add_option("--seed", f.seed, "64-bit seed")->required();
  sim->add_option("--dump", f.dump, "write raw (X_A, X_B) samples to this CSV");

  auto* tomo = app.add_subcommand("tomo-check", "reducibility test of a round-trip attack");
  add_attack(tomo, f, false);
  tomo->add_option("--c", f.c, "ancilla correlation in [-1, 1] (synthetic mode)");
  tomo->add_option("--T-back", f.t_back, "backward-path transmission (default: --T)");
  tomo->add_option("--n", f.samples, "samples per probe (default 1e4)");
  tomo->add_option("--seed", f.seed, "64-bit seed (synthetic mode)");
  tomo->add_option("--forward", f.forward, "forward-path dataset CSV");
  tomo->add_option("--backward", f.backward, "backward-path dataset CSV");
  tomo->add_option("--round-trip", f.round_trip, "round-trip dataset CSV");
  tomo->add_option("--tol", f.tol, "fixed tolerance (default: 5 sigma of the datasets)");
  tomo->add_option("--dump", f.save_prefix, "write the three datasets as <prefix>{forward,backward,round_trip}.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw DomainError(e.what());
  }

  Command c;
  c.log_base = to_log_base(f.log_base);
  c.threads = f.threads;
  if (f.out) c.out = *f.out;
  c.method = to_method(f.method);
  if (f.v) c.modulation = *f.v;
  if (!f.grid.empty()) c.grid = TGrid::parse(f.grid);
  if (f.t) c.transmission = *f.t;
  c.eve_variance = f.w;
  c.excess_noise = f.n_excess;
  c.seed = f.seed;

  if (*rate) {
    c.kind = CommandKind::Rate;
  } else if (*threshold) {
    c.kind = CommandKind::Threshold;
  } else if (*sweep) {
    c.kind = CommandKind::Sweep;
  } else if (*bundle) {
    c.kind = CommandKind::FigureBundle;
  } else if (*sim) {
    c.kind = CommandKind::Simulate;
    if (!f.v) c.modulation = 1e3;
    if (f.samples) c.samples = *f.samples;
    if (f.dump) c.dump = *f.dump;
  } else {
    c.kind = CommandKind::TomoCheck;
    c.samples = f.samples.value_or(10000);
    c.correlation = f.c;
    c.backward_transmission = f.t_back;
    if (f.forward) c.forward_csv = *f.forward;
    if (f.backward) c.backward_csv = *f.backward;
    if (f.round_trip) c.round_trip_csv = *f.round_trip;
    c.tolerance = f.tol;
    if (f.save_prefix) c.dump = *f.save_prefix;
  }
  if (!f.protocol.empty()) c.protocol = to_protocol(f.protocol);
  if (!f.recon.empty()) c.recon = to_recon(f.recon);
  return c;
}

void run(const Command& c, std::ostream& out) {
  const ScopedLogBase unit(c.log_base);
  std::ofstream file;
  std::ostream* sink = &out;
  if (c.out) {
    file.open(*c.out);
    if (!file) throw IoError("cannot open output file '" + c.out->string() + "'");
    sink = &file;
  }
  // Buffer so a failing command leaves no partial output behind.
  std::ostringstream buffer;
  switch (c.kind) {
    case CommandKind::Rate: run_rate(c, buffer); break;
    case CommandKind::Threshold: run_threshold(c, buffer); break;
    case CommandKind::Sweep: run_sweep(c, buffer); break;
    case CommandKind::FigureBundle: run_bundle(c, buffer); break;
    case CommandKind::Simulate: run_simulate(c, buffer); break;
    case CommandKind::TomoCheck: run_tomo_check(c, buffer); break;
  }
  *sink << buffer.str();
  sink->flush();
  if (!*sink) throw IoError("failed writing output");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto fail = [&](std::string_view kind, int code, std::string message) {
    for (char& ch : message) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    err << "error=" << kind << " exit=" << code << " message=" << message << '\n';
    return code;
  };
  try {
    const std::optional<Command> command = parse(argc, argv, out);
    if (!command) return kOk;
    run(*command, out);
    return kOk;
  } catch (const DomainError& e) {
    return fail("domain", kFlagError, e.what());
  } catch (const NumericError& e) {
    return fail("numeric", kNumericError, e.what());
  } catch (const IoError& e) {
    return fail("io", kIoError, e.what());
  } catch (const std::exception& e) {
    return fail("internal", kNumericError, e.what());
  }
}

}  // namespace cvqkd::cli
