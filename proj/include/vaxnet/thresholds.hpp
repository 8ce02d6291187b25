#pragma once

#include <span>
#include <string>
#include <vector>

#include "vaxnet/degree_dist.hpp"
#include "vaxnet/weight_model.hpp"

namespace vaxnet {

enum class Regime { IidWeights, DegreeDep, DegreeDepH1, DegreeDepH2 };

std::string to_string(Regime r);

struct ThresholdReport {
    double r0 = 0.0;
    Regime regime = Regime::IidWeights;
    std::string degree_spec;
    std::string weight_spec;
};

/// gamma E[D~ - 1] for i.i.d. weights with mean gamma.
double r0_iid(const DegreeDist& d, double gamma);

/// E[(D~ - 1) g(D~)] for W_(u,v) = g(D_u).
double r0_degree_dep(const DegreeDist& d, const WeightFunctionG& g);

/// E[g(D~)] E[D~ - 1]: homogeneous epidemic at the mean half-edge weight.
double r0_h1(const DegreeDist& d, const WeightFunctionG& g);

/// E[D~ - 1] E[g(D)]: homogeneous epidemic at the mean vertex weight.
double r0_h2(const DegreeDist& d, const WeightFunctionG& g);

/// R0 for an arbitrary weight model: iid formula, or r0_degree_dep for g weights.
ThresholdReport threshold_report(const DegreeDist& d, const WeightModel& m);

struct TauRow {
    double tau = 0.0;
    double r0_h2 = 0.0;
    double r0_h1 = 0.0;
    double r0_deg = 0.0;
};

/// The three reproduction numbers for g(x) = x^-tau across `taus`.
std::vector<TauRow> sweep_tau(const DegreeDist& d, std::span<const double> taus);

} // namespace vaxnet
