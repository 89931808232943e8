#include "uaeval/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "uaeval/error.hpp"
#include "uaeval/exact_sum.hpp"

namespace uaeval {

std::string_view to_string(Aggregation a) noexcept { return a == Aggregation::mean ? "mean" : "median"; }

std::string_view to_string(Replacement r) noexcept { return r == Replacement::without ? "without" : "with"; }

Aggregation parse_aggregation(std::string_view name) {
  if (name == "mean") return Aggregation::mean;
  if (name == "median") return Aggregation::median;
  throw InputError("unknown aggregation '" + std::string(name) + "' (expected mean or median)");
}

Replacement parse_replacement(std::string_view name) {
  if (name == "without") return Replacement::without;
  if (name == "with") return Replacement::with;
  throw InputError("unknown replacement mode '" + std::string(name) + "' (expected without or with)");
}

double aggregate(std::span<const double> values, Aggregation mode) {
  if (values.empty()) throw InputError("cannot aggregate an empty sequence");
  if (mode == Aggregation::median) return median(values);
  detail::ExactSum sum;
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("cannot aggregate non-finite values");
    sum.add(v);
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return std::clamp(sum.value() / static_cast<double>(values.size()), *lo, *hi);
}

namespace {

// Draws subsets into a reusable buffer. The index permutation is restored to
// the identity after every draw, so each draw depends only on its stream.
class Sampler {
 public:
  explicit Sampler(std::span<const double> data) : data_(data) {}

  std::span<const double> draw(std::size_t size, random::PhiloxStream& rng, Replacement replacement) {
    const std::size_t n = data_.size();
    out_.resize(size);
    if (replacement == Replacement::with) {
      for (std::size_t i = 0; i < size; ++i) out_[i] = data_[rng.below(n)];
      return out_;
    }
    if (perm_.size() != n) {
      perm_.resize(n);
      std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    }
    swaps_.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(perm_[i], perm_[j]);
      swaps_[i] = j;
      out_[i] = data_[perm_[i]];
    }
    for (std::size_t i = size; i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
    return out_;
  }

 private:
  std::span<const double> data_;
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> swaps_;
  std::vector<double> out_;
};

void validate(const SweepConfig& cfg, std::size_t dataset_size, std::size_t n_max) {
  if (cfg.n_min < 1) throw InputError("n_min must be at least 1");
  if (cfg.n_step < 1) throw InputError("n_step must be at least 1");
  if (cfg.reps < 1) throw InputError("reps must be at least 1");
  if (cfg.n_min > n_max) throw InputError("n_min exceeds n_max");
  if (cfg.replacement == Replacement::without && n_max > dataset_size)
    throw InputError("n_max (" + std::to_string(n_max) + ") exceeds the dataset size (" +
                     std::to_string(dataset_size) + ") for sampling without replacement");
  constexpr auto kStreamLimit = std::numeric_limits<std::uint32_t>::max();
  if (n_max > kStreamLimit || cfg.reps > kStreamLimit) throw InputError("n_max and reps must fit in 32 bits");
}

struct CellSpread {
  double value;
  double min;
  double max;
  double sd;
};

CellSpread spread(std::span<const double> values, Aggregation mode) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  CellSpread s{aggregate(values, mode), *lo, *hi, 0.0};
  if (values.size() > 1 && *lo != *hi) {
    detail::ExactSum sum;
    sum.add(values);
    const double mean = sum.value() / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

void resize(MetricCurve& c, std::size_t n) {
  c.value.resize(n);
  c.min.resize(n);
  c.max.resize(n);
  c.sd.resize(n);
}

void store(MetricCurve& c, std::size_t i, const CellSpread& s) {
  c.value[i] = s.value;
  c.min[i] = s.min;
  c.max[i] = s.max;
  c.sd[i] = s.sd;
}

bool within_ulps(double lhs, double rhs) {
  // lhs <= rhs allowing a few units of rounding in either operand.
  return lhs <= rhs + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(rhs);
}

}  // namespace

ErrorVector subsample(const ErrorVector& e, std::size_t size, random::PhiloxStream& stream,
                      Replacement replacement) {
  if (size < 1) throw InputError("subset size must be at least 1");
  if (replacement == Replacement::without && size > e.size())
    throw InputError("subset size " + std::to_string(size) + " exceeds dataset size " + std::to_string(e.size()));
  Sampler sampler(e.values());
  const auto drawn = sampler.draw(size, stream, replacement);
  return ErrorVector(std::vector<double>(drawn.begin(), drawn.end()));
}

SweepResult run_sweep(const ErrorVector& e, const SweepConfig& cfg, unsigned workers) {
  const std::size_t n_max = cfg.n_max.value_or(e.size());
  validate(cfg, e.size(), n_max);

  SweepResult result;
  result.config = cfg;
  result.config.n_max = n_max;
  result.dataset_size = e.size();
  for (std::size_t n = cfg.n_min; n <= n_max; n += cfg.n_step) result.sizes.push_back(n);
  const std::size_t cells = result.sizes.size();
  resize(result.mae, cells);
  resize(result.rmse, cells);
  resize(result.u_a, cells);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));

  auto work = [&](std::size_t first) {
    Sampler sampler(e.values());
    std::vector<double> maes(cfg.reps), rmses(cfg.reps), uas(cfg.reps);
    for (std::size_t idx = first; idx < cells; idx += workers) {
      const std::size_t n = result.sizes[idx];
      const double root_n = std::sqrt(static_cast<double>(n));
      for (std::size_t r = 0; r < cfg.reps; ++r) {
        random::PhiloxStream rng(cfg.seed, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(r));
        const CoreMetrics m = core_metrics(sampler.draw(n, rng, cfg.replacement));
        if (!within_ulps(m.mae, m.rmse) || !within_ulps(m.rmse, root_n * m.mae))
          throw InvariantError("subset at n = " + std::to_string(n) + " violates MAE <= RMSE <= sqrt(n) MAE");
        maes[r] = m.mae;
        rmses[r] = m.rmse;
        uas[r] = m.u_a;
      }
      store(result.mae, idx, spread(maes, cfg.aggregation));
      store(result.rmse, idx, spread(rmses, cfg.aggregation));
      store(result.u_a, idx, spread(uas, cfg.aggregation));
    }
  };

  if (workers <= 1) {
    work(0);
    return result;
  }

  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return result;
}

}  // namespace uaeval
