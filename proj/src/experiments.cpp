#include "plpf/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "plpf/analytic.hpp"
#include "plpf/csv.hpp"
#include "plpf/error.hpp"
#include "plpf/fading.hpp"
#include "plpf/geometry.hpp"
#include "plpf/mc.hpp"
#include "plpf/validation.hpp"

namespace plpf::experiments {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "gain-surface", "opt-rates",        "transport-capacity", "max-distance",
      "retrans-densities", "reach-probability", "sample",       "validate"};
  return names;
}

namespace {

const std::vector<std::string> kGridKeys{"d", "alpha", "delta", "Delta", "m",
                                         "s", "eps",   "n",     "k",     "x"};

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

double parse_number(std::string_view text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "none" || t == "+inf") return INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw DomainError("invalid number '" + t + "'");
  }
  return v;
}

template <class Int>
Int parse_integer(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw DomainError(key + ": expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

std::vector<double> values(const ExperimentSpec& spec, const std::string& key,
                           std::vector<double> fallback) {
  const auto it = spec.grid.find(key);
  return it == spec.grid.end() ? fallback : it->second;
}

double single(const ExperimentSpec& spec, const std::string& key, double fallback) {
  const auto v = values(spec, key, {fallback});
  if (v.size() != 1) throw DomainError(spec.name + ": '" + key + "' takes a single value");
  return v.front();
}

int as_int(double v, const char* key) {
  if (v != std::floor(v) || v < 0.0 || v > 1e9) {
    throw DomainError(std::string(key) + ": expected a non-negative integer");
  }
  return static_cast<int>(v);
}

FadingSpec fading_for(double m) {
  return std::isinf(m) ? FadingSpec::none() : FadingSpec::nakagami(m);
}

std::string fmt(double v) { return csv::format(v); }

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "nan"; }

void header(std::ostream& out, const ExperimentSpec& spec,
            const std::vector<std::string>& notes) {
  std::vector<std::string> lines{"experiment: " + spec.name};
  for (const auto& [key, vals] : spec.grid) {
    std::string line = key + " =";
    for (double v : vals) line += " " + fmt(v);
    lines.push_back(line);
  }
  lines.insert(lines.end(), notes.begin(), notes.end());
  csv::write_comments(out, lines);
}

std::vector<double> steps(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

void gain_surface(const ExperimentSpec& spec, std::ostream& out) {
  const auto deltas = values(spec, "delta", steps(0.0, 1.5, 0.05));
  const auto ms = values(spec, "m", steps(1.0, 5.0, 0.5));
  header(out, spec, {"gain = E[f^delta], the connectivity fading gain",
                     "columns: delta, m, gain"});
  csv::write_row(out, {"delta", "m", "gain"});
  for (double delta : deltas) {
    if (delta < 0.0) throw DomainError("gain-surface: delta must be >= 0");
    for (double m : ms) {
      const auto fading = fading_for(m);
      const double gain =
          delta == 0.0 ? 1.0
                       : analytic::connectivity_gain(NetworkConfig(2, 2.0 / delta), fading).gain;
      csv::write_row(out, {fmt(delta), fmt(m), fmt(gain)});
    }
  }
}

NetworkConfig config_for_big_delta(int d, double big_delta) {
  if (!(big_delta > 0.0)) throw DomainError("Delta must be > 0");
  return NetworkConfig(d, (d + 1) / big_delta);
}

void opt_rates(const ExperimentSpec& spec, std::ostream& out) {
  const auto bigs = values(spec, "Delta", steps(0.5, 1.0, 0.01));
  const int d = as_int(single(spec, "d", 2.0), "d");
  header(out, spec, {"optimum broadcast rate R_opt (bits) and its lower bound (1/Delta - Delta)/ln 2",
                     "columns: Delta, r_opt, r_opt_lower_bound, s_opt, s_opt_lower_bound"});
  csv::write_row(out, {"Delta", "r_opt", "r_opt_lower_bound", "s_opt", "s_opt_lower_bound"});
  for (double big : bigs) {
    const auto c = analytic::broadcast_transport_capacity(config_for_big_delta(d, big),
                                                          FadingSpec::none());
    const double r_lb = big < 1.0 ? (1.0 / big - big) / std::log(2.0) : NAN;
    csv::write_row(out, {fmt(big), c.bounded ? fmt(c.r_opt) : "nan", fmt(r_lb),
                         c.bounded ? fmt(c.s_opt) : "nan", fmt_opt(c.s_opt_lower_bound)});
  }
}

void transport_capacity(const ExperimentSpec& spec, std::ostream& out) {
  const auto ds = values(spec, "d", {2.0});
  const auto bigs = values(spec, "Delta", steps(0.5, 1.0, 0.01));
  const auto ms = values(spec, "m", {1.0, INFINITY});
  header(out, spec, {"broadcast transport capacity maximized over the rate",
                     "lower_bound is defined for Delta < 1 only (nan otherwise)",
                     "columns: d, Delta, m, capacity, lower_bound, r_opt"});
  csv::write_row(out, {"d", "Delta", "m", "capacity", "lower_bound", "r_opt"});
  for (double dv : ds) {
    const int d = as_int(dv, "d");
    for (double big : bigs) {
      for (double m : ms) {
        const auto fading = fading_for(m);
        const auto c = analytic::broadcast_transport_capacity(config_for_big_delta(d, big), fading);
        if (!c.bounded) {
          csv::write_row(out, {fmt(dv), fmt(big), fmt(m), "unbounded", "unbounded", "unbounded"});
          continue;
        }
        std::optional<double> lb;
        if (c.lower_bound && *c.capacity > 0.0) lb = c.lower_bound;
        csv::write_row(out, {fmt(dv), fmt(big), fmt(m), fmt_opt(c.capacity), fmt_opt(lb),
                             fmt(c.r_opt)});
      }
    }
  }
}

NetworkConfig network_config(const ExperimentSpec& spec) {
  const int d = as_int(single(spec, "d", 2.0), "d");
  if (spec.grid.count("delta")) {
    if (spec.grid.count("alpha")) throw DomainError("give either alpha or delta, not both");
    return NetworkConfig(d, d / single(spec, "delta", 1.0));
  }
  return NetworkConfig(d, single(spec, "alpha", 2.0));
}

void max_distance(const ExperimentSpec& spec, std::ostream& out) {
  const NetworkConfig cfg = network_config(spec);
  const auto fading = fading_for(single(spec, "m", 1.0));
  const auto ss = values(spec, "s", steps(0.05, 1.0, 0.05));
  header(out, spec, {"largest distance to a connected node (0 when isolated)",
                     "jensen_bound is nan outside delta = 1 with Rayleigh fading",
                     "columns: s, mc_mean, mc_se, n, exact_mean, jensen_bound"});
  csv::write_row(out, {"s", "mc_mean", "mc_se", "n", "exact_mean", "jensen_bound"});
  std::uint64_t index = 0;
  for (double s : ss) {
    const mc::McOptions opts{spec.trials, derive_seed(spec.seed, index++), spec.threads};
    const auto est = mc::estimate(
        [s](const PlpfRealization& real, RandomStream&) {
          double best = 0.0;
          for (auto i : connected_set(real, s).indices) best = std::max(best, real.r[i]);
          return best;
        },
        mc::NetworkScenario{cfg, fading, s}, opts);
    double bound = NAN;
    if (cfg.d() == cfg.alpha() && !fading.is_degenerate() && fading.m() == 1.0) {
      bound = analytic::max_distance_bound(cfg, fading, s);
    }
    csv::write_row(out, {fmt(s), fmt(est.mean), fmt(est.std_error),
                         csv::format(static_cast<long long>(est.n_trials)),
                         fmt(analytic::mean_max_distance(cfg, fading, s)), fmt(bound)});
  }
}

void retrans_densities(const ExperimentSpec& spec, std::ostream& out) {
  const NetworkConfig cfg = network_config(spec);
  const double s = single(spec, "s", 1.0);
  const int n = as_int(single(spec, "n", 6.0), "n");
  if (n < 1) throw DomainError("retrans-densities: n must be >= 1");
  std::vector<double> all_k;
  for (int k = 1; k <= n; ++k) all_k.push_back(k);
  const auto ks = values(spec, "k", all_k);
  const auto xs = values(spec, "x", steps(0.01, 3.0, 0.01));
  header(out, spec, {"densities of nodes receiving exactly k of n packets, block Rayleigh fading",
                     "total is the density of nodes receiving at least one packet",
                     "columns: x, lambda_k for each k, total"});
  std::vector<std::string> cols{"x"};
  for (double k : ks) cols.push_back("lambda_" + std::to_string(as_int(k, "k")));
  cols.push_back("total");
  csv::write_row(out, cols);
  const auto rayleigh = FadingSpec::rayleigh();
  for (double x : xs) {
    std::vector<std::string> row{fmt(x)};
    for (double k : ks) {
      row.push_back(fmt(analytic::received_k_density(cfg, s, as_int(k, "k"), n, x)));
    }
    row.push_back(fmt(analytic::retransmission_density(cfg, rayleigh, s, n, x)));
    csv::write_row(out, row);
  }
}

void reach_probability(const ExperimentSpec& spec, std::ostream& out) {
  const auto ms = values(spec, "m", {1.0, 2.0, 3.0, 5.0, 10.0});
  if (spec.grid.count("eps")) {
    header(out, spec, {"largest normalized threshold s~ with reach probability >= 1 - eps",
                       "quadratic is nan for m > 1",
                       "columns: m, eps, sufficient, exact, quadratic"});
    csv::write_row(out, {"m", "eps", "sufficient", "exact", "quadratic"});
    for (double m : ms) {
      for (double eps : spec.grid.at("eps")) {
        const auto t = analytic::epsilon_reachability_threshold(as_int(m, "m"), eps);
        csv::write_row(out, {fmt(m), fmt(eps), fmt(t.sufficient), fmt(t.exact),
                             fmt_opt(t.quadratic)});
      }
    }
    return;
  }
  const auto ss = values(spec, "s", steps(0.0, 5.0, 0.05));
  header(out, spec, {"probability that a uniform node in [0, a) decodes, s~ = a s",
                     "columns: m, s_tilde, p, lower, upper"});
  csv::write_row(out, {"m", "s_tilde", "p", "lower", "upper"});
  for (double m : ms) {
    const int mi = as_int(m, "m");
    for (double st : ss) {
      const auto b = analytic::broadcast_reach_bounds(mi, st);
      csv::write_row(out, {fmt(m), fmt(st), fmt(analytic::broadcast_reach_probability(mi, st)),
                           fmt(b.lower), fmt(b.upper)});
    }
  }
}

void sample(const ExperimentSpec& spec, std::ostream& out) {
  const auto fading = fading_for(single(spec, "m", 1.0));
  const double s = single(spec, "s", 0.1);
  RandomStream rng = RandomStream::for_trial(spec.seed, 0);
  if (spec.toy) {
    const int n = as_int(single(spec, "n", 20.0), "n");
    const double upper = single(spec, "x", 5.0);
    header(out, spec, {"uniform toy placement on [0, " + fmt(upper) + "], not a Poisson process"});
    write_realization_csv(out, sample_uniform_toy(n, upper, fading, rng), s);
    return;
  }
  const NetworkConfig cfg = network_config(spec);
  const auto real = sample_network(cfg, fading, s, rng);
  header(out, spec, {"window loss bound " + fmt(real.window_loss_bound),
                     "connected = 1 when xi < 1/s"});
  write_realization_csv(out, real, s);
}

bool validate(const ExperimentSpec& spec, std::ostream& out) {
  validation::ValidationOptions opts;
  opts.seed = spec.seed;
  opts.trials = spec.trials;
  opts.threads = spec.threads;
  const auto report = validation::run_validation(opts);
  validation::write_report(out, report);
  return report.all_passed();
}

}  // namespace

Settings parse_config(std::istream& in) {
  Settings out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw DomainError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

Settings load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  return parse_config(in);
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                         : comma - start);
    const std::string t = trim(item);
    if (t.empty()) throw DomainError("empty grid entry in '" + std::string(text) + "'");
    if (t.find(':') != std::string::npos) {
      const auto c1 = t.find(':');
      const auto c2 = t.find(':', c1 + 1);
      if (c2 == std::string::npos || t.find(':', c2 + 1) != std::string::npos) {
        throw DomainError("range '" + t + "' must be start:stop:step");
      }
      const double lo = parse_number(t.substr(0, c1));
      const double hi = parse_number(t.substr(c1 + 1, c2 - c1 - 1));
      const double step = parse_number(t.substr(c2 + 1));
      if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || hi < lo) {
        throw DomainError("range '" + t + "' needs finite start <= stop and step > 0");
      }
      if ((hi - lo) / step > 1e6) throw DomainError("range '" + t + "' is too long");
      const auto pts = steps(lo, hi, step);
      out.insert(out.end(), pts.begin(), pts.end());
    } else {
      out.push_back(parse_number(t));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ExperimentSpec make_spec(const std::string& name, const Settings& settings) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw DomainError("unknown experiment '" + name + "'");
  }
  ExperimentSpec spec;
  spec.name = name;
  for (const auto& [key, value] : settings) {
    if (std::find(kGridKeys.begin(), kGridKeys.end(), key) != kGridKeys.end()) {
      auto grid = parse_grid(value);
      spec.grid[key] = std::move(grid);
    } else if (key == "fading") {
      const auto f = FadingSpec::parse(value);
      spec.grid["m"] = {f.is_degenerate() ? INFINITY : f.m()};
    } else if (key == "trials") {
      spec.trials = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
      spec.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "threads") {
      spec.threads = std::max(1u, parse_integer<unsigned>(key, value));
    } else if (key == "out") {
      spec.out = value;
    } else if (key == "toy") {
      const std::string t = trim(value);
      if (t != "true" && t != "false" && t != "1" && t != "0") {
        throw DomainError("toy: expected true or false");
      }
      spec.toy = t == "true" || t == "1";
    } else {
      throw DomainError("unknown setting '" + key + "'");
    }
  }
  if (spec.trials < mc::kMinTrials) {
    throw DomainError("trials must be at least " + std::to_string(mc::kMinTrials));
  }
  return spec;
}

bool run(const ExperimentSpec& spec, std::ostream& out) {
  for (const auto& [key, vals] : spec.grid) {
    if (vals.empty()) throw DomainError("grid '" + key + "' is empty");
  }
  const std::string& n = spec.name;
  if (n == "gain-surface") {
    gain_surface(spec, out);
  } else if (n == "opt-rates") {
    opt_rates(spec, out);
  } else if (n == "transport-capacity") {
    transport_capacity(spec, out);
  } else if (n == "max-distance") {
    max_distance(spec, out);
  } else if (n == "retrans-densities") {
    retrans_densities(spec, out);
  } else if (n == "reach-probability") {
    reach_probability(spec, out);
  } else if (n == "sample") {
    sample(spec, out);
  } else if (n == "validate") {
    return validate(spec, out);
  } else {
    throw DomainError("unknown experiment '" + n + "'");
  }
  return true;
}

bool run(const ExperimentSpec& spec) {
  if (spec.out.empty() || spec.out == "-") return run(spec, std::cout);
  std::ofstream file(spec.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write output file '" + spec.out + "'");
  std::ostringstream buffer;
  const bool ok = run(spec, buffer);
  file << buffer.str();
  if (!file) throw std::runtime_error("failed writing output file '" + spec.out + "'");
  return ok;
}

}  // namespace plpf::experiments
