#include "gliders/entry_time.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "gliders/error.hpp"
#include "gliders/parallel.hpp"

namespace gliders {

std::string to_string(Side side) { return side == Side::minus ? "minus" : "plus"; }

Side parse_side(const std::string& text) {
  if (text == "minus" || text == "-") return Side::minus;
  if (text == "plus" || text == "+") return Side::plus;
  throw ContractError("side must be 'minus' or 'plus', got '" + text + "'");
}

namespace {

void check_times(Index n, Index horizon) {
  if (n < 0) throw ContractError("n must be nonnegative");
  if (horizon < 0) throw ContractError("horizon must be nonnegative");
}

void check_side(const GlidersRule& rule, Side side) {
  if (side == Side::plus && rule.v_plus() == 0)
    throw ContractError("entry times of speed-0 particles are not defined (side=plus, v_plus=0)");
}

std::string range_text(Index lo, Index hi) {
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

Index minus_side_rmq(const WalkPath& walk, const GlidersRule& rule, Index n, Index horizon) {
  const Index width = -rule.v_minus();
  for (Index k = 0; k <= horizon; ++k) {
    const Index t = n + k;
    const Index left = -rule.v_plus() * t;
    const Index right = -rule.v_minus() * t;
    for (Index i = 0; i < width; ++i)
      if (walk(i + right + 1) < walk.min(i + left, i + right)) return k;
  }
  return -1;
}

}  // namespace

IndexRange entry_walk_domain(const GlidersRule& rule, Index n, Index horizon, Side side) {
  check_times(n, horizon);
  check_side(rule, side);
  const Index t = n + horizon;
  if (side == Side::minus)
    return {std::min<Index>(0, -rule.v_plus() * t), -rule.v_minus() * t - rule.v_minus()};
  return {-rule.v_plus() * t, rule.v_plus() - rule.v_minus() * t};
}

IndexRange entry_cell_window(const GlidersRule& rule, Index n, Index horizon, Side side) {
  const IndexRange d = entry_walk_domain(rule, n, horizon, side);
  return {d.lo, d.hi - 1};
}

EntryTimeResult entry_time(const WalkPath& walk, const GlidersRule& rule, Index n, Index horizon,
                           Side side) {
  const IndexRange need = entry_walk_domain(rule, n, horizon, side);
  if (!walk.covers(need.lo, need.hi))
    throw DomainError("entry time needs walk domain " + range_text(need.lo, need.hi) +
                      ", have " + range_text(walk.lo(), walk.hi()));
  Index k;
  if (side == Side::minus) {
    k = minus_side_rmq(walk, rule, n, horizon);
  } else {
    const WalkPath mirror = walk.mirrored(rule.v_plus());
    k = minus_side_rmq(mirror, rule.mirrored(), n, horizon);
  }
  EntryTimeResult r;
  r.horizon = horizon;
  r.n = n;
  r.side = side;
  if (k >= 0) r.value = k;
  return r;
}

EntryTimeResult entry_time_by_simulation(const ConfigurationWindow& config,
                                         const GlidersRule& rule, Index n, Index horizon,
                                         Side side) {
  const IndexRange cone = entry_cell_window(rule, n, horizon, side);
  if (config.alphabet_size() != kGlidersAlphabet)
    throw ContractError("entry time needs a gliders-alphabet configuration");
  if (!config.contains(cone.lo) || !config.contains(cone.hi))
    throw DomainError("entry time needs cells " + range_text(cone.lo, cone.hi) + ", have " +
                      range_text(config.offset(), config.end() - 1));

  const Index width = side == Side::minus ? -rule.v_minus() : rule.v_plus();
  const int target = side == Side::minus ? -1 : 1;
  const Index reach = static_cast<Index>(rule.radius()) * (n + horizon);
  const Index lo = -reach;
  const Index hi = width - 1 + reach;
  std::vector<State> cells(static_cast<std::size_t>(hi - lo + 1), encode_sign(0));
  for (Index x = std::max(lo, config.offset()); x <= std::min(hi, config.end() - 1); ++x)
    cells[static_cast<std::size_t>(x - lo)] = config.at(x);

  const LocalRule local = make_local_rule(rule);
  ConfigurationWindow current(lo, std::move(cells), kGlidersAlphabet);
  EntryTimeResult r;
  r.horizon = horizon;
  r.n = n;
  r.side = side;
  for (Index t = 0; t <= n + horizon; ++t) {
    if (t >= n) {
      for (Index i = 0; i < width; ++i) {
        if (decode_sign(current.at(i)) == target) {
          r.value = t - n;
          return r;
        }
      }
    }
    if (t < n + horizon) current = step(current, local);
  }
  return r;
}

Index scan_entry_time(std::span<const std::int32_t> walk, Index walk_lo, const GlidersRule& rule,
                      Index n, Index horizon) {
  const IndexRange need = entry_walk_domain(rule, n, horizon, Side::minus);
  const Index walk_hi = walk_lo + static_cast<Index>(walk.size()) - 1;
  if (need.lo < walk_lo || need.hi > walk_hi)
    throw DomainError("entry time needs walk domain " + range_text(need.lo, need.hi) +
                      ", have " + range_text(walk_lo, walk_hi));

  const Index vp = rule.v_plus();
  const Index vm = rule.v_minus();
  const Index width = -vm;
  const std::int32_t* M = walk.data() - walk_lo;  // M[k] is the walk at k

  std::vector<std::int32_t> running(static_cast<std::size_t>(width));
  for (Index i = 0; i < width; ++i) {
    std::int32_t m = M[i - vp * n];
    for (Index k = i - vp * n + 1; k <= i - vm * n; ++k) m = std::min(m, M[k]);
    running[static_cast<std::size_t>(i)] = m;
  }
  for (Index t = n;; ++t) {
    for (Index i = 0; i < width; ++i)
      if (M[i - vm * t + 1] < running[static_cast<std::size_t>(i)]) return t - n;
    if (t == n + horizon) return -1;
    for (Index i = 0; i < width; ++i) {
      std::int32_t m = running[static_cast<std::size_t>(i)];
      for (Index k = i - vp * (t + 1); k < i - vp * t; ++k) m = std::min(m, M[k]);
      for (Index k = i - vm * t + 1; k <= i - vm * (t + 1); ++k) m = std::min(m, M[k]);
      running[static_cast<std::size_t>(i)] = m;
    }
  }
}

double theoretical_cdf(const GlidersRule& rule, double x, Side side) {
  if (!(x >= 0.0)) throw ContractError("theoretical_cdf needs x >= 0");
  check_side(rule, side);
  const double vm = rule.v_minus();
  const double vp = rule.v_plus();
  double ratio;
  if (std::isinf(x)) {
    if (side == Side::minus)
      ratio = vp == 0 ? INFINITY : -vm / vp;
    else
      ratio = vp / -vm;
  } else if (side == Side::minus) {
    ratio = -vm * x / (vp - vm + vp * x);
  } else {
    ratio = vp * x / (vp - vm - vm * x);
  }
  return 2.0 / std::numbers::pi * std::atan(std::sqrt(ratio));
}

std::vector<Index> sample_entry_times(const WindowSource& source, const GlidersRule& rule,
                                      Index n, Index horizon, Side side, Index trials,
                                      const RunOptions& options) {
  if (trials < 1) throw ContractError("trials must be >= 1");
  if (!source) throw ContractError("missing window source");
  const IndexRange cone = entry_cell_window(rule, n, horizon, side);
  const std::size_t length = static_cast<std::size_t>(cone.hi - cone.lo + 1);
  std::vector<Index> times(static_cast<std::size_t>(trials), -1);

  if (options.kernel == Kernel::serial_reference) {
    std::vector<State> cells(length);
    for (Index trial = 0; trial < trials; ++trial) {
      source(static_cast<std::uint64_t>(trial), cone.lo, cells);
      const WalkPath walk = partial_sums(ConfigurationWindow(cone.lo, cells, kGlidersAlphabet));
      const EntryTimeResult r = entry_time(walk, rule, n, horizon, side);
      times[static_cast<std::size_t>(trial)] = r.value.value_or(-1);
    }
    return times;
  }

  const GlidersRule scan_rule = side == Side::minus ? rule : rule.mirrored();
  // The plus side runs on b_x = -a_{c-x}, c = v_plus - 1, whose cells are
  // [c - hi, c - lo]: the sampled cells reversed and negated.
  const Index walk_lo = side == Side::minus ? cone.lo : rule.v_plus() - 1 - cone.hi;

  struct Scratch {
    std::vector<State> cells;
    std::vector<std::int32_t> walk;
  };
  parallel_trials(
      trials, options.workers,
      [length] { return Scratch{std::vector<State>(length), std::vector<std::int32_t>(length + 1)}; },
      [&](Scratch& s, Index trial) {
        source(static_cast<std::uint64_t>(trial), cone.lo, s.cells);
        auto& w = s.walk;
        w[0] = 0;
        if (side == Side::minus) {
          for (std::size_t i = 0; i < length; ++i) w[i + 1] = w[i] + decode_sign(s.cells[i]);
        } else {
          for (std::size_t i = 0; i < length; ++i)
            w[i + 1] = w[i] - decode_sign(s.cells[length - 1 - i]);
        }
        const std::int32_t anchor = w[static_cast<std::size_t>(-walk_lo)];
        for (auto& v : w) v -= anchor;
        times[static_cast<std::size_t>(trial)] = scan_entry_time(w, walk_lo, scan_rule, n, horizon);
      });
  return times;
}

std::vector<double> EmpiricalCDF::theoretical() const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(theoretical_cdf(rule, x, side));
  return out;
}

Index horizon_for(Index n, std::span<const double> xs) {
  if (xs.empty()) throw ContractError("x grid is empty");
  double top = 0;
  for (double x : xs) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw ContractError("x grid values must be finite and nonnegative");
    top = std::max(top, x);
  }
  return static_cast<Index>(std::ceil(static_cast<double>(n) * top));
}

EmpiricalCDF tabulate_cdf(std::span<const Index> times, std::vector<double> xs, Index n,
                          const GlidersRule& rule, Side side, std::string sampler_digest) {
  if (times.empty()) throw ContractError("no trials to tabulate");
  EmpiricalCDF cdf;
  cdf.trials = static_cast<Index>(times.size());
  cdf.n = n;
  cdf.rule = rule;
  cdf.side = side;
  cdf.sampler_digest = std::move(sampler_digest);
  for (double x : xs) {
    const double limit = static_cast<double>(n) * x;
    Index hits = 0;
    for (Index t : times)
      if (t >= 0 && static_cast<double>(t) <= limit) ++hits;
    const double p = static_cast<double>(hits) / static_cast<double>(cdf.trials);
    cdf.estimates.push_back(p);
    cdf.standard_errors.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(cdf.trials)));
  }
  cdf.xs = std::move(xs);
  return cdf;
}

EmpiricalCDF run_cdf_experiment(const SamplerSpec& sampler, const GlidersRule& rule, Index n,
                                std::vector<double> xs, Index trials, Side side,
                                const RunOptions& options) {
  if (sampler.alphabet_size() != kGlidersAlphabet)
    throw ContractError("gliders experiments need a 3-state sampler");
  const Index horizon = horizon_for(n, xs);
  const WindowSource source = [&sampler](std::uint64_t trial, Index lo, std::span<State> out) {
    sampler.sample_into(lo, trial, out);
  };
  const auto times = sample_entry_times(source, rule, n, horizon, side, trials, options);
  return tabulate_cdf(times, std::move(xs), n, rule, side, sampler.digest());
}

BirkhoffEstimates birkhoff_asymmetry_check(const SamplerSpec& sampler, const GlidersRule& rule,
                                           Index n, double x, Index trials,
                                           const RunOptions& options) {
  if (sampler.alphabet_size() != kGlidersAlphabet)
    throw ContractError("gliders experiments need a 3-state sampler");
  const auto marginal = sampler.marginal();
  if (!(marginal[0] > marginal[2] + 1e-12))
    throw ContractError("asymmetry check needs p(-1) > p(+1); marginal is balanced or favours +1");
  const double grid[] = {x};
  const Index horizon = horizon_for(n, grid);
  const WindowSource source = [&sampler](std::uint64_t trial, Index lo, std::span<State> out) {
    sampler.sample_into(lo, trial, out);
  };
  const auto minus = sample_entry_times(source, rule, n, horizon, Side::minus, trials, options);
  const auto plus = sample_entry_times(source, rule, n, horizon, Side::plus, trials, options);
  BirkhoffEstimates b;
  b.trials = trials;
  const double limit = static_cast<double>(n) * x;
  b.plus_exceeds_fraction =
      static_cast<double>(std::count(plus.begin(), plus.end(), Index{-1})) / trials;
  b.minus_within_fraction =
      static_cast<double>(std::count_if(minus.begin(), minus.end(), [&](Index t) {
        return t >= 0 && static_cast<double>(t) <= limit;
      })) /
      trials;
  return b;
}

std::string format_g6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_csv(std::ostream& out, const EmpiricalCDF& cdf) {
  const bool lifted = !cdf.factor_name.empty();
  out << "x,empirical,theoretical,stderr,trials,n,v_minus,v_plus,side,sampler_digest";
  if (lifted) out << ",factor_name";
  out << '\n';
  const auto theory = cdf.theoretical();
  for (std::size_t i = 0; i < cdf.xs.size(); ++i) {
    out << format_g6(cdf.xs[i]) << ',' << format_g6(cdf.estimates[i]) << ','
        << format_g6(theory[i]) << ',' << format_g6(cdf.standard_errors[i]) << ',' << cdf.trials
        << ',' << cdf.n << ',' << cdf.rule.v_minus() << ',' << cdf.rule.v_plus() << ','
        << to_string(cdf.side) << ',' << cdf.sampler_digest;
    if (lifted) out << ',' << cdf.factor_name;
    out << '\n';
  }
}

std::string to_csv(const EmpiricalCDF& cdf) {
  std::ostringstream out;
  write_csv(out, cdf);
  return out.str();
}

}  // namespace gliders
