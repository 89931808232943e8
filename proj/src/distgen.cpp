#include "uaeval/distgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "uaeval/error.hpp"
#include "uaeval/random.hpp"

namespace uaeval {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::normal: return "normal";
    case Family::exponential: return "exponential";
    case Family::lognormal: return "lognormal";
    case Family::uniform: return "uniform";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::normal, Family::exponential, Family::lognormal, Family::uniform}) {
    if (name == to_string(f)) return f;
  }
  throw InputError("unknown distribution family '" + std::string(name) +
                   "' (expected normal, exponential, lognormal or uniform)");
}

DistSpec::DistSpec(Family family, double first, double second)
    : family_(family), first_(first), second_(second) {
  if (!std::isfinite(first) || !std::isfinite(second))
    throw InputError("distribution parameters must be finite");
  switch (family) {
    case Family::normal:
    case Family::lognormal:
      if (!(second > 0.0)) throw InputError(std::string(to_string(family)) + ": stddev must be > 0");
      break;
    case Family::exponential:
      if (!(first > 0.0)) throw InputError("exponential: rate must be > 0");
      break;
    case Family::uniform:
      if (!(first < second)) throw InputError("uniform: lower bound must be below upper bound");
      break;
  }
}

DistSpec DistSpec::normal(double mean, double stddev) { return {Family::normal, mean, stddev}; }
DistSpec DistSpec::exponential(double rate) { return {Family::exponential, rate, 0.0}; }
DistSpec DistSpec::lognormal(double log_mean, double log_stddev) {
  return {Family::lognormal, log_mean, log_stddev};
}
DistSpec DistSpec::uniform(double lower, double upper) { return {Family::uniform, lower, upper}; }

DistSpec DistSpec::from_params(Family family, std::span<const double> p) {
  const std::size_t expected = family == Family::exponential ? 1 : 2;
  if (p.empty()) {
    switch (family) {
      case Family::normal: return normal();
      case Family::exponential: return exponential();
      case Family::lognormal: return lognormal();
      case Family::uniform: return uniform();
    }
  }
  if (p.size() != expected)
    throw InputError(std::string(to_string(family)) + " takes " + std::to_string(expected) + " parameter(s), got " +
                     std::to_string(p.size()));
  return family == Family::exponential ? exponential(p[0]) : DistSpec(family, p[0], p[1]);
}

std::vector<double> DistSpec::params() const {
  if (family_ == Family::exponential) return {first_};
  return {first_, second_};
}

std::string DistSpec::describe() const {
  std::string out(to_string(family_));
  out += '(';
  const auto p = params();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, p[i]);
    out.append(buf, res.ptr);
  }
  out += ')';
  return out;
}

ErrorVector gen_errors(const DistSpec& spec, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InputError("count must be at least 1");
  random::PhiloxStream rng(seed);
  std::vector<double> out(count);

  auto box_muller = [&](std::size_t i) {
    const double radius = std::sqrt(-2.0 * std::log(1.0 - rng.uniform01()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform01();
    out[i] = radius * std::cos(angle);
    if (i + 1 < count) out[i + 1] = radius * std::sin(angle);
  };

  switch (spec.family()) {
    case Family::normal:
      for (std::size_t i = 0; i < count; i += 2) box_muller(i);
      for (double& x : out) x = spec.first() + spec.second() * x;
      break;
    case Family::lognormal:
      for (std::size_t i = 0; i < count; i += 2) box_muller(i);
      for (double& x : out) x = std::exp(spec.first() + spec.second() * x);
      break;
    case Family::exponential:
      for (double& x : out) x = -std::log(1.0 - rng.uniform01()) / spec.first();
      break;
    case Family::uniform: {
      const double lo = spec.first();
      const double hi = spec.second();
      for (double& x : out) {
        x = lo + (hi - lo) * rng.uniform01();
        if (x >= hi) x = std::nextafter(hi, lo);
      }
      break;
    }
  }
  return ErrorVector(std::move(out));
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw InputError("histogram of an empty vector");
  if (bins == 0) throw InputError("histogram needs at least one bin");
  for (double x : values) {
    if (!std::isfinite(x)) throw InputError("histogram input contains a non-finite value");
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;

  Histogram h;
  if (lo == hi) {
    h.edges = {lo - 0.5, lo + 0.5};
    h.counts = {values.size()};
    return h;
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges[bins] = hi;
  for (std::size_t i = 1; i <= bins; ++i) {
    if (!(h.edges[i - 1] < h.edges[i])) throw InputError("value range too narrow for the requested bin count");
  }

  h.counts.assign(bins, 0);
  for (double x : values) {
    auto idx = static_cast<std::size_t>(std::min((x - lo) / width, static_cast<double>(bins - 1)));
    // Reconcile the arithmetic guess with the stored edges.
    while (idx > 0 && x < h.edges[idx]) --idx;
    while (idx + 1 < bins && x >= h.edges[idx + 1]) ++idx;
    ++h.counts[idx];
  }
  return h;
}

Transform parse_transform(std::string_view name) {
  if (name == "identity") return Transform::identity;
  if (name == "absolute") return Transform::absolute;
  if (name == "squared") return Transform::squared;
  throw InputError("unknown transform '" + std::string(name) + "'");
}

ErrorVector transform_errors(const ErrorVector& e, Transform kind) {
  std::vector<double> out(e.begin(), e.end());
  switch (kind) {
    case Transform::identity: break;
    case Transform::absolute:
      for (double& x : out) x = std::fabs(x);
      break;
    case Transform::squared:
      for (double& x : out) x = x * x;
      break;
  }
  return ErrorVector(std::move(out));
}

}  // namespace uaeval
