#pragma once

#include "vaxnet/weight_model.hpp"

namespace vaxnet {

/// E[W_j^(k)], the mean of the j:th smallest of k i.i.d. weights.
///
/// Uniform weights use the closed form j/(k+1); every other continuous law
/// integrates x f_{k,j}(x) by tanh-sinh quadrature. Results are
/// memoized per (law, k, j) in a process-wide table that is safe to use from
/// several threads.
double order_stat_mean(const WeightModel& m, int k, int j);

/// Quadrature route for every continuous law, bypassing closed forms and the memo.
double order_stat_mean_quadrature(const WeightModel& m, int k, int j);

/// sum_{j=1}^{upto} E[W_j^(k)].
double partial_sum_order_means(const WeightModel& m, int k, int upto);

/// Drops every memoized value (tests and benchmarks).
void clear_order_stat_cache();

} // namespace vaxnet
