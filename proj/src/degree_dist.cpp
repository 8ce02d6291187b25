#include "vaxnet/degree_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

std::string format_number(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

DegreeDist::DegreeDist(Eigen::ArrayXd pmf, std::string label) : label_(std::move(label)) {
    if (pmf.size() == 0)
        throw ParameterError("degree distribution needs a non-empty support");
    if ((pmf < 0.0).any() || !pmf.allFinite())
        throw ParameterError("degree probabilities must be finite and non-negative");
    const double total = pmf.sum();
    if (!(total > 0.0))
        throw ParameterError("degree probabilities sum to zero");
    // Trailing zeros carry no mass; keep the cutoff tight.
    Eigen::Index last = pmf.size() - 1;
    while (last > 0 && pmf[last] == 0.0)
        --last;
    pmf_ = pmf.head(last + 1) / total;
}

Eigen::ArrayXd DegreeDist::support() const {
    return Eigen::ArrayXd::LinSpaced(pmf_.size(), 0.0, static_cast<double>(pmf_.size() - 1));
}

double DegreeDist::mean() const { return (support() * pmf_).sum(); }

double DegreeDist::second_moment() const { return (support().square() * pmf_).sum(); }

double DegreeDist::variance() const {
    const double m = mean();
    return ((support() - m).square() * pmf_).sum();
}

double DegreeDist::prob_at_least(int k) const {
    if (k <= 0)
        return 1.0;
    if (k > cutoff())
        return 0.0;
    return pmf_.tail(pmf_.size() - k).sum();
}

double SizeBiasedDist::mean() const {
    const Eigen::ArrayXd k = Eigen::ArrayXd::LinSpaced(pmf.size(), 0.0, static_cast<double>(pmf.size() - 1));
    return (k * pmf).sum();
}

DegreeDist poisson(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ParameterError("poisson: mean must be positive, got " + format_number(mu));
    // Terms in log space; the cutoff is the first K whose upper tail P(D > K)
    // drops below kTailMass, and whose second-moment tail is negligible too
    // (the reproduction numbers weight p_k by k^2). The tail is bounded by the
    // geometric series of the next term once k > mu.
    std::vector<double> terms;
    double log_term = -mu;
    double cumulative = 0.0;
    for (int k = 0;; ++k) {
        if (k > 0)
            log_term += std::log(mu) - std::log(static_cast<double>(k));
        const double term = std::exp(log_term);
        terms.push_back(term);
        cumulative += term;
        if (k > mu) {
            const double next = term * mu / (k + 1);
            const double ratio = mu / (k + 2);
            const double tail_bound = next / (1.0 - ratio);
            if (tail_bound < kTailMass && tail_bound * (k + 2.0) * (k + 2.0) < 1e-16 && 1.0 - cumulative < 1e-6)
                break;
        }
    }
    Eigen::ArrayXd pmf = Eigen::Map<Eigen::ArrayXd>(terms.data(), static_cast<Eigen::Index>(terms.size()));
    return DegreeDist(std::move(pmf), "poisson(" + format_number(mu) + ")");
}

namespace {

// k^-s on k = 1..K with K chosen so that the integral bound on the discarded
// tail, K^(1-s)/(s-1), is below kTailMass (the normalizer is at least 1).
Eigen::ArrayXd raw_power_law(double exponent) {
    const double s = exponent;
    const double cutoff = std::pow(kTailMass * (s - 1.0), 1.0 / (1.0 - s));
    const auto K = static_cast<Eigen::Index>(std::ceil(cutoff));
    Eigen::ArrayXd pmf = Eigen::ArrayXd::Zero(K + 1);
    for (Eigen::Index k = 1; k <= K; ++k)
        pmf[k] = std::pow(static_cast<double>(k), -s);
    return pmf / pmf.sum();
}

void check_exponent(double exponent) {
    if (!(exponent > 3.0) || !std::isfinite(exponent))
        throw ParameterError("power law exponent must exceed 3 for a finite second moment, got " +
                             format_number(exponent));
}

} // namespace

double power_law_raw_mean(double exponent) {
    check_exponent(exponent);
    const Eigen::ArrayXd pmf = raw_power_law(exponent);
    const Eigen::ArrayXd k = Eigen::ArrayXd::LinSpaced(pmf.size(), 0.0, static_cast<double>(pmf.size() - 1));
    return (k * pmf).sum();
}

DegreeDist power_law(double exponent, double target_mean) {
    check_exponent(exponent);
    const Eigen::ArrayXd raw = raw_power_law(exponent);
    const Eigen::ArrayXd k = Eigen::ArrayXd::LinSpaced(raw.size(), 0.0, static_cast<double>(raw.size() - 1));
    const double raw_mean = (k * raw).sum();
    const double shift = target_mean - raw_mean;
    if (!std::isfinite(target_mean) || shift < -1e-12)
        throw ParameterError("power law target mean " + format_number(target_mean) +
                             " is below the unshifted mean " + format_number(raw_mean));
    const double base = std::floor(std::max(shift, 0.0));
    const double frac = std::max(shift, 0.0) - base;
    const auto c = static_cast<Eigen::Index>(base);

    Eigen::ArrayXd pmf = Eigen::ArrayXd::Zero(raw.size() + c + 1);
    pmf.segment(c, raw.size()) += (1.0 - frac) * raw;
    pmf.segment(c + 1, raw.size()) += frac * raw;
    return DegreeDist(std::move(pmf),
                      "powerlaw(" + format_number(exponent) + ",mean=" + format_number(target_mean) + ")");
}

DegreeDist point_mass(int k) {
    if (k < 0)
        throw ParameterError("point mass degree must be non-negative");
    Eigen::ArrayXd pmf = Eigen::ArrayXd::Zero(k + 1);
    pmf[k] = 1.0;
    return DegreeDist(std::move(pmf), "fixed(" + std::to_string(k) + ")");
}

DegreeDist empirical(std::span<const std::pair<int, double>> counts) {
    if (counts.empty())
        throw ParameterError("empirical degree distribution needs at least one entry");
    int max_degree = 0;
    for (const auto& [degree, weight] : counts) {
        if (degree < 0)
            throw ParameterError("empirical degrees must be non-negative");
        if (!(weight >= 0.0) || !std::isfinite(weight))
            throw ParameterError("empirical weights must be finite and non-negative");
        max_degree = std::max(max_degree, degree);
    }
    Eigen::ArrayXd pmf = Eigen::ArrayXd::Zero(max_degree + 1);
    for (const auto& [degree, weight] : counts)
        pmf[degree] += weight;
    return DegreeDist(std::move(pmf), "empirical");
}

DegreeDist empirical_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open degree table " + path.string());
    std::vector<std::pair<int, double>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream fields(line);
        std::string degree, prob;
        if (!std::getline(fields, degree, ',') || !std::getline(fields, prob))
            throw ParameterError("malformed degree table row: " + line);
        rows.emplace_back(std::stoi(degree), std::stod(prob));
    }
    DegreeDist d = empirical(rows);
    return DegreeDist(d.pmf(), "empirical(" + path.string() + ")");
}

SizeBiasedDist size_bias(const DegreeDist& d) {
    const double mu = d.mean();
    if (!(mu > 0.0))
        throw ParameterError("size biasing needs a positive mean degree");
    return SizeBiasedDist{d.support() * d.pmf() / mu};
}

double excess_mean(const DegreeDist& d) {
    const double mu = d.mean();
    if (!(mu > 0.0))
        throw ParameterError("excess mean needs a positive mean degree");
    const double via_pmf = size_bias(d).mean() - 1.0;
    const double via_moments = mu + (d.variance() - mu) / mu;
    if (std::abs(via_pmf - via_moments) > 1e-9 * std::max(1.0, std::abs(via_pmf)))
        throw std::logic_error("excess mean: size-biased and moment routes disagree");
    return via_pmf;
}

DegreeSampler::DegreeSampler(const DegreeDist& d) {
    cdf_.resize(static_cast<std::size_t>(d.pmf().size()));
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d.pmf().size(); ++k) {
        acc += d.pmf()[k];
        cdf_[static_cast<std::size_t>(k)] = acc;
    }
    cdf_.back() = 1.0;
}

int DegreeSampler::operator()(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                     static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

std::vector<int> sample_degrees(const DegreeDist& d, std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw ParameterError("sample_degrees: n must be at least 1");
    const DegreeSampler sampler(d);
    Rng rng(seed);
    std::vector<int> out(n);
    for (auto& k : out)
        k = sampler(rng);
    return out;
}

} // namespace vaxnet
