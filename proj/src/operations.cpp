#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "plpf/analytic.hpp"
#include "plpf/csv.hpp"
#include "plpf/error.hpp"
#include "plpf/experiments.hpp"

namespace plpf::experiments {

namespace {

namespace an = plpf::analytic;

struct Cell {
  std::optional<double> value;
  const char* missing = "nan";
};

/// Parameter values for one evaluation point.
class Args {
 public:
  explicit Args(std::map<std::string, double> v) : v_(std::move(v)) {}

  double get(const std::string& key) const {
    const auto it = v_.find(key);
    if (it == v_.end()) throw DomainError("missing parameter '" + key + "'");
    return it->second;
  }
  double get(const std::string& key, double fallback) const {
    const auto it = v_.find(key);
    return it == v_.end() ? fallback : it->second;
  }
  int integer(const std::string& key) const {
    const double v = get(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw DomainError("parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
  }
  NetworkConfig config() const {
    const int d = static_cast<int>(get("d", 2.0));
    if (v_.count("delta")) return NetworkConfig(d, d / get("delta"));
    return NetworkConfig(d, get("alpha", 2.0));
  }
  FadingSpec fading() const {
    const double m = get("m", 1.0);
    return std::isinf(m) ? FadingSpec::none() : FadingSpec::nakagami(m);
  }

 private:
  std::map<std::string, double> v_;
};

struct Operation {
  std::vector<std::string> keys;
  std::vector<std::string> outputs;
  std::function<std::vector<Cell>(const Args&)> eval;
};

std::vector<Cell> one(double v) { return {Cell{v}}; }

std::vector<Cell> moments(const an::Moments& m) {
  return {Cell{m.mean, "diverges"}, Cell{m.variance, "diverges"}};
}

std::vector<Cell> gain(const an::GainReport& g) {
  return {Cell{g.with_fading}, Cell{g.without_fading}, Cell{g.gain}};
}

// d, alpha (or delta) and m are accepted by every operation.
const std::vector<std::string> kNet{"d", "alpha", "delta", "m"};

std::vector<std::string> with_net(std::vector<std::string> keys) {
  keys.insert(keys.begin(), kNet.begin(), kNet.end());
  return keys;
}

const std::map<std::string, Operation>& registry() {
  static const std::map<std::string, Operation> ops = [] {
    std::map<std::string, Operation> r;
    const std::vector<std::string> gain_cols{"with_fading", "without_fading", "gain"};
    r["mean_measure"] = {with_net({"x"}), {"value"},
                         [](const Args& a) { return one(an::mean_measure(a.config(), a.get("x"))); }};
    r["mean_density"] = {with_net({"x"}), {"value"},
                         [](const Args& a) { return one(an::mean_density(a.config(), a.get("x"))); }};
    r["distance_pdf"] = {with_net({"i", "r"}), {"value"}, [](const Args& a) {
                           return one(an::distance_pdf(a.config(), a.integer("i"), a.get("r")));
                         }};
    r["expected_distance"] = {with_net({"i"}), {"value"}, [](const Args& a) {
                                return one(an::expected_distance(a.config(), a.integer("i")));
                              }};
    r["plp_cdf"] = {with_net({"i", "x"}), {"value"}, [](const Args& a) {
                      return one(an::plp_cdf(a.config(), a.integer("i"), a.get("x")));
                    }};
    r["plp_pdf"] = {with_net({"i", "x"}), {"value"}, [](const Args& a) {
                      return one(an::plp_pdf(a.config(), a.integer("i"), a.get("x")));
                    }};
    r["plp_mean"] = {with_net({"i"}), {"value"},
                     [](const Args& a) { return one(an::plp_mean(a.config(), a.integer("i"))); }};
    r["plpf_cdf"] = {with_net({"i", "x"}), {"value"}, [](const Args& a) {
                       return one(an::plpf_cdf(a.config(), a.fading(), a.integer("i"), a.get("x")));
                     }};
    r["plpf_cdf_integral"] = {with_net({"i", "x"}), {"value"}, [](const Args& a) {
                                return one(an::plpf_cdf_integral(a.config(), a.fading(),
                                                                 a.integer("i"), a.get("x")));
                              }};
    r["plpf_pdf"] = {with_net({"i", "x"}), {"value"}, [](const Args& a) {
                       return one(an::plpf_pdf(a.config(), a.fading(), a.integer("i"), a.get("x")));
                     }};
    r["plpf_moments"] = {with_net({"i"}), {"mean", "variance"}, [](const Args& a) {
                           return moments(an::plpf_moments(a.config(), a.fading(), a.integer("i")));
                         }};
    r["path_gain_moments"] = {with_net({"i"}), {"mean", "second_moment", "variance"},
                              [](const Args& a) {
                                const auto g = an::path_gain_moments(a.config(), a.fading(),
                                                                     a.integer("i"));
                                return std::vector<Cell>{Cell{g.mean, "diverges"},
                                                         Cell{g.second_moment, "diverges"},
                                                         Cell{g.variance, "diverges"}};
                              }};
    r["plpf_entropy"] = {with_net({"i"}), {"value"}, [](const Args& a) {
                           return one(an::plpf_entropy(a.config(), a.fading(), a.integer("i")));
                         }};
    r["path_gain_entropy"] = {with_net({"i"}), {"value"}, [](const Args& a) {
                                return one(an::path_gain_entropy(a.config(), a.fading(),
                                                                 a.integer("i")));
                              }};
    r["reorder_probability"] = {{"i", "j"}, {"value"}, [](const Args& a) {
                                  return one(an::reorder_probability(a.integer("i"),
                                                                     a.integer("j")));
                                }};
    r["conditioned_plpf_cdf"] = {with_net({"a", "x"}), {"value"}, [](const Args& a) {
                                   return one(an::conditioned_plpf_cdf(a.config(), a.fading(),
                                                                       a.get("a"), a.get("x")));
                                 }};
    r["expected_connected"] = {with_net({"s"}), {"value"}, [](const Args& a) {
                                 return one(an::expected_connected(a.config(), a.fading(), a.get("s")));
                               }};
    r["connectivity_gain"] = {with_net({}), gain_cols, [](const Args& a) {
                                return gain(an::connectivity_gain(a.config(), a.fading()));
                              }};
    r["isolation_probability"] = {with_net({"s"}), {"value"}, [](const Args& a) {
                                    return one(an::isolation_probability(a.config(), a.fading(),
                                                                         a.get("s")));
                                  }};
    r["expected_connected_within"] = {with_net({"s", "a"}), {"value"}, [](const Args& a) {
                                        return one(an::expected_connected_within(
                                            a.config(), a.fading(), a.get("s"), a.get("a")));
                                      }};
    r["mean_connected_node"] = {with_net({"s"}), gain_cols, [](const Args& a) {
                                  return gain(an::mean_connected_node(a.config(), a.fading(),
                                                                      a.get("s")));
                                }};
    r["retransmission_density"] = {with_net({"s", "n", "x"}), {"value"}, [](const Args& a) {
                                     return one(an::retransmission_density(
                                         a.config(), a.fading(), a.get("s"), a.integer("n"),
                                         a.get("x")));
                                   }};
    r["expected_connected_retransmissions"] = {
        with_net({"s", "n"}), {"value"}, [](const Args& a) {
          return one(an::expected_connected_retransmissions(a.config(), a.fading(), a.get("s"),
                                                            a.integer("n")));
        }};
    r["expected_reached_decreasing_thresholds"] = {
        with_net({"s", "n"}), {"value"}, [](const Args& a) {
          return one(an::expected_reached_decreasing_thresholds(a.config(), a.fading(),
                                                                a.get("s"), a.integer("n")));
        }};
    r["broadcast_reach_probability"] = {{"m", "s_tilde"}, {"value", "lower", "upper"},
                                        [](const Args& a) {
                                          const int m = a.integer("m");
                                          const double st = a.get("s_tilde");
                                          const auto b = an::broadcast_reach_bounds(m, st);
                                          return std::vector<Cell>{
                                              Cell{an::broadcast_reach_probability(m, st)},
                                              Cell{b.lower}, Cell{b.upper}};
                                        }};
    r["epsilon_reachability_threshold"] = {
        {"m", "eps"}, {"sufficient", "exact", "quadratic"}, [](const Args& a) {
          const auto t = an::epsilon_reachability_threshold(a.integer("m"), a.get("eps"));
          return std::vector<Cell>{Cell{t.sufficient}, Cell{t.exact}, Cell{t.quadratic}};
        }};
    r["broadcast_sum_distance"] = {with_net({"s"}), gain_cols, [](const Args& a) {
                                     return gain(an::broadcast_sum_distance(a.config(), a.fading(),
                                                                            a.get("s")));
                                   }};
    r["broadcast_transport_capacity"] = {
        with_net({}), {"r_opt", "s_opt", "capacity", "lower_bound"}, [](const Args& a) {
          const auto c = an::broadcast_transport_capacity(a.config(), a.fading());
          if (!c.bounded) {
            return std::vector<Cell>{Cell{std::nullopt, "unbounded"},
                                     Cell{std::nullopt, "unbounded"},
                                     Cell{std::nullopt, "unbounded"}, Cell{}};
          }
          return std::vector<Cell>{Cell{c.r_opt}, Cell{c.s_opt}, Cell{c.capacity},
                                   Cell{c.lower_bound}};
        }};
    r["capacity_at_rate"] = {with_net({"rate"}), {"value"}, [](const Args& a) {
                               return one(an::capacity_at_rate(a.config(), a.fading(),
                                                               a.get("rate")));
                             }};
    r["superposition_capacity_lower_bound"] = {
        {"d", "alpha", "delta"}, {"lower_bound", "near_field"}, [](const Args& a) {
          const auto b = an::superposition_capacity_lower_bound(a.config());
          return std::vector<Cell>{Cell{b.lower_bound, "unbounded"}, Cell{b.near_field}};
        }};
    r["max_loss_cdf"] = {with_net({"s", "x"}), {"value"}, [](const Args& a) {
                           return one(an::max_loss_cdf(a.config(), a.fading(), a.get("s"),
                                                       a.get("x")));
                         }};
    r["mean_max_distance"] = {with_net({"s"}), {"value"}, [](const Args& a) {
                                return one(an::mean_max_distance(a.config(), a.fading(),
                                                                 a.get("s")));
                              }};
    r["max_distance_bound"] = {with_net({"s"}), {"value"}, [](const Args& a) {
                                 return one(an::max_distance_bound(a.config(), a.fading(),
                                                                   a.get("s")));
                               }};
    r["discrete_progress"] = {with_net({"s", "i"}), {"value"}, [](const Args& a) {
                                return one(an::discrete_progress(a.config(), a.fading(),
                                                                 a.get("s"), a.integer("i")));
                              }};
    r["probabilistic_progress"] = {
        with_net({"s"}),
        {"continuous_optimum", "i_opt_scan", "i_opt_rounded", "i_opt_continuous"},
        [](const Args& a) {
          const auto p = an::probabilistic_progress(a.config(), a.fading(), a.get("s"));
          std::optional<double> rounded;
          if (p.i_opt_rounded) rounded = *p.i_opt_rounded;
          return std::vector<Cell>{Cell{p.continuous_optimum},
                                   Cell{static_cast<double>(p.i_opt_scan)}, Cell{rounded},
                                   Cell{p.i_opt_continuous}};
        }};
    r["received_k_density"] = {{"d", "alpha", "delta", "s", "k", "n", "x"}, {"value"},
                               [](const Args& a) {
                                 return one(an::received_k_density(a.config(), a.get("s"),
                                                                   a.integer("k"),
                                                                   a.integer("n"), a.get("x")));
                               }};
    r["expected_received_k"] = {{"d", "alpha", "delta", "s", "k", "n"}, {"value"},
                                [](const Args& a) {
                                  return std::vector<Cell>{
                                      Cell{an::expected_received_k(a.config(), a.get("s"),
                                                                   a.integer("k"), a.integer("n")),
                                           "inf"}};
                                }};
    r["received_k_pdf"] = {{"d", "alpha", "delta", "s", "k", "n", "x"}, {"value"},
                           [](const Args& a) {
                             return one(an::received_k_pdf(a.config(), a.get("s"), a.integer("k"),
                                                           a.integer("n"), a.get("x")));
                           }};
    r["received_k_moments"] = {{"d", "alpha", "delta", "s", "k", "n"}, {"mean", "variance"},
                               [](const Args& a) {
                                 return moments(an::received_k_moments(
                                     a.config(), a.get("s"), a.integer("k"), a.integer("n")));
                               }};
    r["localize"] = {with_net({"loss", "gain"}), {"index"}, [](const Args& a) {
                       const double loss = a.get("loss", NAN);
                       const int i = std::isnan(loss)
                                         ? an::localize(a.config(), a.fading(),
                                                        an::PathGain{a.get("gain")})
                                         : an::localize(a.config(), a.fading(), an::PathLoss{loss});
                       return one(i);
                     }};
    return r;
  }();
  return ops;
}

}  // namespace

std::vector<std::string> operation_names() {
  std::vector<std::string> out;
  for (const auto& [name, op] : registry()) out.push_back(name);
  return out;
}

void evaluate_operation(const std::string& name, const Settings& params, std::ostream& out) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown operation '" + name + "'");
  const Operation& op = it->second;
  std::vector<std::string> keys;
  std::vector<std::vector<double>> grids;
  for (const auto& [key, text] : params) {
    if (std::find(op.keys.begin(), op.keys.end(), key) == op.keys.end()) {
      throw DomainError(name + ": unknown parameter '" + key + "'");
    }
    keys.push_back(key);
    grids.push_back(parse_grid(text));
  }
  std::vector<std::string> cols = keys;
  cols.insert(cols.end(), op.outputs.begin(), op.outputs.end());
  csv::write_comments(out, {"operation: " + name});
  csv::write_row(out, cols);

  // Cartesian product over the parameter grids, last key varying fastest.
  std::vector<std::size_t> idx(keys.size(), 0);
  while (true) {
    std::map<std::string, double> point;
    std::vector<std::string> row;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      point[keys[k]] = grids[k][idx[k]];
      row.push_back(csv::format(grids[k][idx[k]]));
    }
    for (const auto& cell : op.eval(Args(std::move(point)))) {
      row.push_back(cell.value ? csv::format(*cell.value) : cell.missing);
    }
    csv::write_row(out, row);
    std::size_t k = keys.size();
    while (k > 0 && ++idx[k - 1] == grids[k - 1].size()) {
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

}  // namespace plpf::experiments
