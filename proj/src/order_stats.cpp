#include "vaxnet/order_stats.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kDirectRanks = 3;

void check_continuous(const WeightModel& m) {
    if (!m.is_continuous())
        throw UnsupportedKindError("order statistics need a continuous weight law, got " + m.describe());
}

struct DensityPoint {
    double f = 0.0;
    double F = 0.0;
};

// Tanh-sinh evaluates every integral over a segment at the same abscissas, so
// density and CDF values are cached per thread for the law last integrated.
class DensityCache {
public:
    DensityPoint at(const WeightModel& m, const std::string& key, double x) {
        if (key != key_ || points_.size() > kMaxPoints) {
            key_ = key;
            points_.clear();
        }
        auto [it, inserted] = points_.try_emplace(x);
        if (inserted) {
            it->second.f = m.pdf(x);
            it->second.F = it->second.f == 0.0 ? 0.0 : m.cdf(x);
        }
        return it->second;
    }

private:
    static constexpr std::size_t kMaxPoints = 1 << 20;
    std::string key_;
    std::unordered_map<double, DensityPoint> points_;
};

// Integrates integrand(x, f(x), F(x)) over [0,1] split at the law's
// breakpoints. Tanh-sinh copes with the integrable endpoint singularities of
// Beta densities with a or b below 1, where adaptive Gauss-Kronrod stalls.
template <class F>
double integrate_unit(const WeightModel& m, F&& integrand) {
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    thread_local DensityCache density;
    const std::string key = m.describe();
    const auto wrapped = [&](double x) {
        const DensityPoint p = density.at(m, key, x);
        return p.f == 0.0 ? 0.0 : integrand(x, p.f, p.F);
    };
    const std::vector<double> cuts = m.breakpoints();
    double total = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        double error = 0.0;
        total += rule.integrate(wrapped, cuts[i - 1], cuts[i], kRelTol, &error);
    }
    return total;
}

// x f_{k,j}(x), with the Gamma-function coefficient taken in log space so
// that k in the thousands does not overflow.
double order_stat_integral(const WeightModel& m, int k, int j) {
    const double log_coef = std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(j)) -
                            std::lgamma(static_cast<double>(k + 1 - j));
    return integrate_unit(m, [&](double x, double f, double F) {
        double log_body = log_coef;
        if (j > 1) {
            if (F <= 0.0)
                return 0.0;
            log_body += (j - 1) * std::log(F);
        }
        if (k > j) {
            if (F >= 1.0)
                return 0.0;
            log_body += (k - j) * std::log1p(-F);
        }
        return x * f * std::exp(log_body);
    });
}

// sum_{j<=upto} f_{k,j}(x) = k f(x) P(Bin(k-1, F(x)) <= upto-1), one integral.
double partial_sum_integral(const WeightModel& m, int k, int upto) {
    const double value = integrate_unit(m, [&](double x, double f, double F) {
        return x * f * boost::math::ibetac(static_cast<double>(upto), static_cast<double>(k - upto), F);
    });
    return k * value;
}

enum class Quantity { Single, Partial };

using CacheKey = std::tuple<std::string, Quantity, int, int>;

struct Cache {
    std::mutex mutex;
    std::map<CacheKey, double> values;
};

Cache& cache() {
    static Cache instance;
    return instance;
}

template <class Compute>
double memoized(CacheKey key, Compute&& compute) {
    Cache& c = cache();
    {
        std::lock_guard lock(c.mutex);
        if (auto it = c.values.find(key); it != c.values.end())
            return it->second;
    }
    // Computed outside the lock; a concurrent duplicate computes the same value.
    const double value = compute();
    std::lock_guard lock(c.mutex);
    c.values.emplace(std::move(key), value);
    return value;
}

} // namespace

double order_stat_mean_quadrature(const WeightModel& m, int k, int j) {
    check_continuous(m);
    if (k < 1 || j < 1 || j > k)
        throw ParameterError("order statistic rank out of range: k=" + std::to_string(k) + ", j=" + std::to_string(j));
    return order_stat_integral(m, k, j);
}

double order_stat_mean(const WeightModel& m, int k, int j) {
    check_continuous(m);
    if (k < 1 || j < 1 || j > k)
        throw ParameterError("order statistic rank out of range: k=" + std::to_string(k) + ", j=" + std::to_string(j));
    if (std::holds_alternative<UniformWeights>(m.law()))
        return static_cast<double>(j) / (k + 1);
    if (k == 1)
        return mean_weight(m);
    return memoized({m.describe(), Quantity::Single, k, j}, [&] { return order_stat_integral(m, k, j); });
}

double partial_sum_order_means(const WeightModel& m, int k, int upto) {
    check_continuous(m);
    if (k < 1 || upto < 0 || upto > k)
        throw ParameterError("partial order-statistic sum out of range: k=" + std::to_string(k) +
                             ", upto=" + std::to_string(upto));
    if (upto == 0)
        return 0.0;
    if (std::holds_alternative<UniformWeights>(m.law()))
        return static_cast<double>(upto) * (upto + 1) / (2.0 * (k + 1));
    if (upto == k)
        return k * mean_weight(m);
    // A few ranks from either end are cheaper as single order statistics than
    // the binomial-tail integral, whose cost grows with k.
    if (k - upto <= kDirectRanks) {
        double top = 0.0;
        for (int j = upto + 1; j <= k; ++j)
            top += order_stat_mean(m, k, j);
        return k * mean_weight(m) - top;
    }
    if (upto <= kDirectRanks) {
        double bottom = 0.0;
        for (int j = 1; j <= upto; ++j)
            bottom += order_stat_mean(m, k, j);
        return bottom;
    }
    return memoized({m.describe(), Quantity::Partial, k, upto}, [&] { return partial_sum_integral(m, k, upto); });
}

void clear_order_stat_cache() {
    Cache& c = cache();
    std::lock_guard lock(c.mutex);
    c.values.clear();
}

} // namespace vaxnet
