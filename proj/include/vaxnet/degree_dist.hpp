#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vaxnet/rng.hpp"

namespace vaxnet {

/// Residual tail mass below which infinite-support laws are cut off.
inline constexpr double kTailMass = 1e-10;

/// Probability mass function on {0, ..., cutoff}.
///
/// The table is normalized at construction and immutable afterwards, so a
/// single instance can be shared by any number of sampling threads.
class DegreeDist {
public:
    DegreeDist() = default;
    DegreeDist(Eigen::ArrayXd pmf, std::string label);

    const Eigen::ArrayXd& pmf() const noexcept { return pmf_; }
    const std::string& label() const noexcept { return label_; }
    int cutoff() const noexcept { return static_cast<int>(pmf_.size()) - 1; }

    /// p_k, zero outside the support.
    double operator[](int k) const noexcept {
        return (k < 0 || k > cutoff()) ? 0.0 : pmf_[k];
    }

    double mean() const;
    double second_moment() const;
    double variance() const;
    double prob_at_least(int k) const;

    /// Degrees 0..cutoff as a double array, for vectorized moment sums.
    Eigen::ArrayXd support() const;

private:
    Eigen::ArrayXd pmf_;
    std::string label_;
};

/// Degree law of a vertex reached by following a uniformly random edge.
struct SizeBiasedDist {
    Eigen::ArrayXd pmf;

    double operator[](int k) const noexcept {
        return (k < 0 || k >= pmf.size()) ? 0.0 : pmf[k];
    }
    int cutoff() const noexcept { return static_cast<int>(pmf.size()) - 1; }
    double mean() const;
};

DegreeDist poisson(double mu);

/// Power law p_k ~ k^-exponent on k >= 1, shifted by an independent offset C in
/// {floor(d), floor(d)+1} so that the mean is exactly `target_mean`.
DegreeDist power_law(double exponent, double target_mean);

/// Mean of the truncated, unshifted power law (the smallest achievable mean).
double power_law_raw_mean(double exponent);

DegreeDist point_mass(int k);
DegreeDist empirical(std::span<const std::pair<int, double>> counts);

/// Reads a `degree,prob` CSV (header row required).
DegreeDist empirical_from_csv(const std::filesystem::path& path);

SizeBiasedDist size_bias(const DegreeDist& d);

/// E[D~] - 1, the mean number of onward edges of a vertex reached by an edge.
double excess_mean(const DegreeDist& d);

/// Inverse-CDF sampler over a cumulative table.
class DegreeSampler {
public:
    explicit DegreeSampler(const DegreeDist& d);
    int operator()(Rng& rng) const;

private:
    std::vector<double> cdf_;
};

std::vector<int> sample_degrees(const DegreeDist& d, std::size_t n, std::uint64_t seed);

} // namespace vaxnet
