#pragma once

// Bernoulli numbers in the x/(e^x - 1) convention (B_1 = -1/2).

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "mzv/rational.hpp"

namespace mzv {

/// Growable table of B_0, B_1, ... filled by the convolution recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1). Safe for concurrent readers;
/// extension happens under an exclusive lock.
class BernoulliCache {
public:
  BernoulliCache() { table_.emplace_back(1); }

  Rational operator()(std::size_t m) const {
    {
      std::shared_lock lock(mutex_);
      if (m < table_.size()) {
        return table_[m];
      }
    }
    std::unique_lock lock(mutex_);
    extend_locked(m);
    return table_[m];
  }

  /// Fills the table through index m.
  void reserve(std::size_t m) const {
    std::unique_lock lock(mutex_);
    extend_locked(m);
  }

  /// Test hook: overwrite one cached entry. Entries beyond m are computed
  /// first, so later values stay the genuine ones and only B_m is wrong.
  void inject_fault(std::size_t m, const Rational& value, std::size_t fill_through = 64) {
    std::unique_lock lock(mutex_);
    extend_locked(std::max(m, fill_through));
    table_[m] = value;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

private:
  void extend_locked(std::size_t m) const {
    while (table_.size() <= m) {
      const std::size_t n = table_.size();
      Rational acc;
      for (std::size_t j = 0; j < n; ++j) {
        if (!table_[j].is_zero()) {
          acc += Rational(binomial(static_cast<long>(n + 1), static_cast<long>(j))) * table_[j];
        }
      }
      table_.push_back(-acc / Rational(static_cast<long>(n + 1)));
    }
  }

  mutable std::shared_mutex mutex_;
  mutable std::vector<Rational> table_;
};

/// Process-wide cache.
inline const BernoulliCache& default_bernoulli() {
  static const BernoulliCache cache;
  return cache;
}

inline Rational bernoulli(std::size_t m) { return default_bernoulli()(m); }

} // namespace mzv
