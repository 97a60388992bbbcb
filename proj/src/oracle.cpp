#include "gliders/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "gliders/error.hpp"
#include "gliders/parallel.hpp"

namespace gliders {

void MinimaComparisonParams::validate() const {
  if (!(y > 0) || !(z > 0) || !std::isfinite(y) || !std::isfinite(z))
    throw ContractError("interval lengths y and z must be positive and finite");
  if (!(epsilon >= 0) || !std::isfinite(epsilon))
    throw ContractError("epsilon must be nonnegative and finite");
}

double minima_comparison_probability(const MinimaComparisonParams& params) {
  params.validate();
  if (params.epsilon != 0)
    throw ContractError(
        "no closed form for epsilon > 0; use simulate_minima_comparison for the offset case");
  return 2.0 / std::numbers::pi * std::atan(std::sqrt(params.y / params.z));
}

double brownian_min_density(double m) {
  if (!(m <= 0)) throw ContractError("the minimum of a Brownian path from 0 is <= 0");
  return 2.0 * std::exp(-0.5 * m * m) / std::sqrt(2.0 * std::numbers::pi);
}

void IncrementSpec::validate() const {
  if (!(p > 0)) throw ContractError("degenerate increment law: zero variance");
  if (!(p <= 0.5)) throw ContractError("increment law needs p <= 1/2");
}

namespace {

// Per byte of random bits: net displacement and lowest prefix sum (<= 0).
struct ByteStep {
  std::int8_t delta;
  std::int8_t low;
};

template <int kBitsPerStep>
constexpr std::array<ByteStep, 256> make_table() {
  std::array<ByteStep, 256> table{};
  for (int byte = 0; byte < 256; ++byte) {
    int s = 0, low = 0;
    for (int i = 0; i < 8 / kBitsPerStep; ++i) {
      const int bits = (byte >> (i * kBitsPerStep)) & ((1 << kBitsPerStep) - 1);
      if constexpr (kBitsPerStep == 1)
        s += bits ? 1 : -1;
      else
        s += bits == 0 ? -1 : bits == 3 ? 1 : 0;
      low = low < s ? low : s;
    }
    table[static_cast<std::size_t>(byte)] = {static_cast<std::int8_t>(s),
                                             static_cast<std::int8_t>(low)};
  }
  return table;
}

constexpr auto kFairTable = make_table<1>();
constexpr auto kQuarterTable = make_table<2>();

template <int kBitsPerStep>
std::int64_t table_walk(CounterStream::Cursor& cursor, Index steps,
                        const std::array<ByteStep, 256>& table) {
  constexpr Index kStepsPerWord = 32 / kBitsPerStep;
  constexpr Index kStepsPerByte = 8 / kBitsPerStep;
  std::int64_t s = 0, low = 0;
  Index done = 0;
  for (; done + kStepsPerWord <= steps; done += kStepsPerWord) {
    std::uint32_t w = cursor.next();
    for (int b = 0; b < 4; ++b, w >>= 8) {
      const ByteStep& e = table[w & 0xFF];
      low = std::min<std::int64_t>(low, s + e.low);
      s += e.delta;
    }
  }
  if (done < steps) {
    std::uint32_t w = cursor.next();
    for (; done + kStepsPerByte <= steps; done += kStepsPerByte, w >>= 8) {
      const ByteStep& e = table[w & 0xFF];
      low = std::min<std::int64_t>(low, s + e.low);
      s += e.delta;
    }
    for (; done < steps; ++done, w >>= kBitsPerStep) {
      const std::uint32_t bits = w & ((1u << kBitsPerStep) - 1);
      if constexpr (kBitsPerStep == 1)
        s += bits ? 1 : -1;
      else
        s += bits == 0 ? -1 : bits == 3 ? 1 : 0;
      low = std::min(low, s);
    }
  }
  return low;
}

}  // namespace

std::int64_t walk_minimum(CounterStream::Cursor& cursor, Index steps, const IncrementSpec& inc) {
  if (steps < 0) throw ContractError("walk length must be nonnegative");
  if (inc.p == 0.5) return table_walk<1>(cursor, steps, kFairTable);
  if (inc.p == 0.25) return table_walk<2>(cursor, steps, kQuarterTable);
  const auto cut = static_cast<std::uint64_t>(std::llround(inc.p * 0x1.0p32));
  std::int64_t s = 0, low = 0;
  for (Index i = 0; i < steps; ++i) {
    const std::uint64_t u = cursor.next();
    if (u < cut)
      --s;
    else if (u >= (std::uint64_t{1} << 32) - cut)
      ++s;
    low = std::min(low, s);
  }
  return low;
}

MinimaEstimate simulate_minima_comparison(const MinimaComparisonParams& params, Index walk_steps,
                                          Index trials, std::uint64_t seed,
                                          const IncrementSpec& increments,
                                          const RunOptions& options) {
  params.validate();
  increments.validate();
  if (walk_steps < 1000) throw ContractError("walk_steps must be at least 1000");
  if (trials < 1) throw ContractError("trials must be >= 1");
  const Index left_steps = static_cast<Index>(std::ceil(params.y * static_cast<double>(walk_steps)));
  const Index right_steps = static_cast<Index>(std::ceil(params.z * static_cast<double>(walk_steps)));
  const double offset = params.epsilon * std::sqrt(static_cast<double>(walk_steps));

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  const int workers = options.kernel == Kernel::serial_reference ? 1 : options.workers;
  parallel_trials(
      trials, workers, [] { return 0; },
      [&](int&, Index trial) {
        const CounterStream stream(seed, static_cast<std::uint64_t>(trial));
        // The right walk starts far enough along the stream to never overlap.
        auto left_cursor = stream.cursor(0);
        auto right_cursor = stream.cursor(std::uint64_t{1} << 40);
        const double left = static_cast<double>(walk_minimum(left_cursor, left_steps, increments));
        const double right =
            static_cast<double>(walk_minimum(right_cursor, right_steps, increments));
        hit[static_cast<std::size_t>(trial)] = left - offset < right ? 1 : 0;
      });

  Index count = 0;
  for (auto h : hit) count += h;
  MinimaEstimate e;
  e.trials = trials;
  e.walk_steps = walk_steps;
  e.probability = static_cast<double>(count) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.probability * (1 - e.probability) / static_cast<double>(trials));
  return e;
}

void write_oracle_csv_header(std::ostream& out) {
  out << "y,z,epsilon,closed_form,empirical,stderr,walk_steps,trials\n";
}

void write_oracle_csv_row(std::ostream& out, const MinimaComparisonParams& params,
                          const MinimaEstimate& estimate) {
  const double closed =
      2.0 / std::numbers::pi * std::atan(std::sqrt(params.y / params.z));
  out << format_g6(params.y) << ',' << format_g6(params.z) << ',' << format_g6(params.epsilon)
      << ',' << format_g6(closed) << ',' << format_g6(estimate.probability) << ','
      << format_g6(estimate.standard_error) << ',' << estimate.walk_steps << ',' << estimate.trials
      << '\n';
}

}  // namespace gliders
