#pragma once

#include <span>
#include <vector>

namespace qmsel {

/// Linear-interpolation sample quantile (R type 7). Throws on empty input.
double quantile(std::span<const double> values, double q);
double median(std::span<const double> values);
/// Robust standard deviation IQR / 1.349 (normal-consistent).
double robust_sd(std::span<const double> values);

double normal_cdf(double x);

/// Two-sided one-sample Kolmogorov-Smirnov statistic against N(0, 1).
double ks_statistic_normal(std::vector<double> sample);

/// P(K > t) for the limiting Kolmogorov distribution; the asymptotic
/// p-value of a KS statistic D on m points is kolmogorov_survival(sqrt(m) D).
double kolmogorov_survival(double t);

}  // namespace qmsel
