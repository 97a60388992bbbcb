#include "gliders/ca.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gliders/error.hpp"

namespace gliders {

ConfigurationWindow::ConfigurationWindow(Index offset, std::vector<State> cells,
                                         int alphabet_size)
    : offset_(offset), cells_(std::move(cells)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 1 || alphabet_size_ > 256)
    throw ContractError("alphabet size must be in [1, 256]");
  if (cells_.empty()) throw ContractError("configuration window must be nonempty");
  for (State s : cells_)
    if (s >= alphabet_size_) throw ContractError("cell state outside the alphabet");
}

ConfigurationWindow ConfigurationWindow::from_signs(Index offset,
                                                    std::span<const int> signs) {
  std::vector<State> cells;
  cells.reserve(signs.size());
  for (int v : signs) {
    if (v < -1 || v > 1) throw ContractError("gliders values must be -1, 0 or +1");
    cells.push_back(encode_sign(v));
  }
  return {offset, std::move(cells), kGlidersAlphabet};
}

ConfigurationWindow ConfigurationWindow::from_signs(Index offset,
                                                    std::initializer_list<int> signs) {
  return from_signs(offset, std::span<const int>(signs.begin(), signs.size()));
}

State ConfigurationWindow::at(Index x) const {
  if (!contains(x))
    throw DomainError("cell " + std::to_string(x) + " outside window [" +
                      std::to_string(offset_) + ", " + std::to_string(end()) + ")");
  return cells_[static_cast<std::size_t>(x - offset_)];
}

std::vector<int> ConfigurationWindow::signs() const {
  std::vector<int> out(cells_.size());
  std::transform(cells_.begin(), cells_.end(), out.begin(), decode_sign);
  return out;
}

ConfigurationWindow ConfigurationWindow::slice(Index lo, Index hi) const {
  if (lo >= hi || lo < offset_ || hi > end())
    throw DomainError("slice [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      ") not inside window");
  auto first = cells_.begin() + (lo - offset_);
  return {lo, std::vector<State>(first, first + (hi - lo)), alphabet_size_};
}

GlidersRule::GlidersRule(int v_minus, int v_plus) : v_minus_(v_minus), v_plus_(v_plus) {
  if (v_minus_ >= 0)
    throw ContractError("gliders rule needs v_minus < 0 (got " + std::to_string(v_minus_) +
                        ")");
  if (v_plus_ < 0)
    throw ContractError("gliders rule needs v_plus >= 0 (got " + std::to_string(v_plus_) +
                        ")");
}

int GlidersRule::radius() const { return std::max(-v_minus_, v_plus_); }

GlidersRule GlidersRule::mirrored() const {
  if (v_plus_ == 0) throw ContractError("cannot mirror a rule with v_plus = 0");
  return {-v_plus_, -v_minus_};
}

LocalRule::LocalRule(int radius, int alphabet_size, Function f, std::string name)
    : radius_(radius), alphabet_size_(alphabet_size), f_(std::move(f)), name_(std::move(name)) {
  if (radius_ < 0) throw ContractError("local rule radius must be nonnegative");
  if (alphabet_size_ < 1 || alphabet_size_ > 256)
    throw ContractError("alphabet size must be in [1, 256]");
  if (!f_) throw ContractError("local rule needs a function");

  const std::size_t len = window_length();
  std::size_t entries = 1;
  for (std::size_t i = 0; i < len; ++i) {
    entries *= static_cast<std::size_t>(alphabet_size_);
    if (entries > kMaxTableEntries) return;
  }
  table_.resize(entries);
  std::vector<State> window(len, 0);
  for (std::size_t code = 0; code < entries; ++code) {
    std::size_t rest = code;
    for (std::size_t i = len; i-- > 0;) {
      window[i] = static_cast<State>(rest % alphabet_size_);
      rest /= alphabet_size_;
    }
    const State out = f_(window);
    if (out >= alphabet_size_) throw ContractError("local rule output outside the alphabet");
    table_[code] = out;
  }
}

State LocalRule::apply(std::span<const State> window) const {
  if (window.size() != window_length())
    throw ContractError("local rule window has length " + std::to_string(window.size()) +
                        ", expected " + std::to_string(window_length()));
  if (tabulated()) {
    std::size_t code = 0;
    for (State s : window) code = code * alphabet_size_ + s;
    return table_[code];
  }
  const State out = f_(window);
  if (out >= alphabet_size_) throw ContractError("local rule output outside the alphabet");
  return out;
}

int gliders_local_rule(const GlidersRule& rule, std::span<const int> window) {
  const int r = rule.radius();
  if (window.size() != static_cast<std::size_t>(2 * r + 1))
    throw ContractError("gliders window has length " + std::to_string(window.size()) +
                        ", expected " + std::to_string(2 * r + 1));
  const int vm = rule.v_minus();
  const int vp = rule.v_plus();
  auto a = [&](int t) { return window[static_cast<std::size_t>(t + r)]; };

  if (a(-vp) == 1) {
    bool ok = true;
    int sum = 0;
    for (int N = -vp + 1; N <= -vm && ok; ++N) {
      sum += a(N);
      ok = sum >= 0;
    }
    if (ok) return 1;
  }
  if (a(-vm) == -1) {
    bool ok = true;
    int sum = 0;
    for (int N = -vm - 1; N >= -vp && ok; --N) {
      sum += a(N);
      ok = sum <= 0;
    }
    if (ok) return -1;
  }
  return 0;
}

LocalRule make_local_rule(const GlidersRule& rule) {
  auto f = [rule](std::span<const State> window) {
    std::vector<int> signs(window.size());
    std::transform(window.begin(), window.end(), signs.begin(), decode_sign);
    return encode_sign(gliders_local_rule(rule, signs));
  };
  return {rule.radius(), kGlidersAlphabet, f,
          "gliders(" + std::to_string(rule.v_minus()) + "," + std::to_string(rule.v_plus()) + ")"};
}

ConfigurationWindow step(const ConfigurationWindow& config, const LocalRule& rule) {
  if (config.alphabet_size() != rule.alphabet_size())
    throw ContractError("configuration and rule use different alphabets");
  const std::size_t len = rule.window_length();
  if (config.size() < len)
    throw ContractError("window of " + std::to_string(config.size()) +
                        " cells is too short for one step of a radius-" +
                        std::to_string(rule.radius()) + " rule (need " + std::to_string(len) +
                        ")");
  const auto cells = config.cells();
  const std::size_t out_len = cells.size() - len + 1;
  std::vector<State> out(out_len);

  if (rule.tabulated()) {
    const std::size_t k = static_cast<std::size_t>(rule.alphabet_size());
    std::size_t top = 1;
    for (std::size_t i = 0; i + 1 < len; ++i) top *= k;
    std::size_t code = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) code = code * k + cells[i];
    for (std::size_t j = 0; j < out_len; ++j) {
      code = (code % top) * k + cells[j + len - 1];
      out[j] = rule.lookup(code);
    }
  } else {
    for (std::size_t j = 0; j < out_len; ++j) out[j] = rule.apply(cells.subspan(j, len));
  }
  return {config.offset() + rule.radius(), std::move(out), config.alphabet_size()};
}

std::vector<ConfigurationWindow> simulate(const ConfigurationWindow& config,
                                          const LocalRule& rule, Index steps) {
  if (steps < 0) throw ContractError("steps must be nonnegative");
  const Index need = 2 * static_cast<Index>(rule.radius()) * steps + 1;
  if (static_cast<Index>(config.size()) < need)
    throw ContractError("simulating " + std::to_string(steps) + " steps of a radius-" +
                        std::to_string(rule.radius()) + " rule needs a window of at least " +
                        std::to_string(need) + " cells (got " + std::to_string(config.size()) +
                        ")");
  std::vector<ConfigurationWindow> diagram;
  diagram.reserve(static_cast<std::size_t>(steps) + 1);
  diagram.push_back(config);
  for (Index t = 0; t < steps; ++t) diagram.push_back(step(diagram.back(), rule));
  return diagram;
}

namespace {

struct Crop {
  Index lo;
  Index hi;
};

Crop crop_of(std::span<const ConfigurationWindow> diagram) {
  if (diagram.empty()) throw ContractError("empty space-time diagram");
  Crop c{diagram.front().offset(), diagram.front().end()};
  for (const auto& row : diagram) {
    c.lo = std::max(c.lo, row.offset());
    c.hi = std::min(c.hi, row.end());
  }
  if (c.lo >= c.hi) throw ContractError("space-time diagram rows do not overlap");
  return c;
}

}  // namespace

std::string render_ascii(std::span<const ConfigurationWindow> diagram, Glyphs glyphs) {
  const Crop c = crop_of(diagram);
  std::string out;
  out.reserve(static_cast<std::size_t>((c.hi - c.lo + 1)) * diagram.size());
  for (auto it = diagram.rbegin(); it != diagram.rend(); ++it) {
    const bool signed_alphabet = it->alphabet_size() == kGlidersAlphabet;
    for (Index x = c.lo; x < c.hi; ++x) {
      const State s = it->at(x);
      if (signed_alphabet) {
        const int v = decode_sign(s);
        out.push_back(v < 0 ? glyphs.minus : v > 0 ? glyphs.plus : glyphs.zero);
      } else {
        out.push_back(s < 10 ? static_cast<char>('0' + s) : '#');
      }
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_pgm(std::span<const ConfigurationWindow> diagram) {
  const Crop c = crop_of(diagram);
  const Index width = c.hi - c.lo;
  std::ostringstream header;
  header << "P5\n" << width << ' ' << diagram.size() << "\n255\n";
  std::string out = header.str();
  for (auto it = diagram.rbegin(); it != diagram.rend(); ++it) {
    const int k = it->alphabet_size();
    for (Index x = c.lo; x < c.hi; ++x) {
      const State s = it->at(x);
      const long gray = k <= 1 ? 0 : std::lround(255.0 * s / (k - 1));
      out.push_back(static_cast<char>(static_cast<unsigned char>(gray)));
    }
  }
  return out;
}

}  // namespace gliders
