#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mis/census.hpp"

namespace mis {

// Per-instance hardness census row.
struct HardnessRecord {
    std::string instance_id;
    int n = 0;
    int mis_size = 0;
    BigInt d_mis;
    BigInt d_mis_m1;
    double hardness = 0.0;
};

// d_mis_m1 / (mis_size * d_mis), evaluated exactly as a big rational and
// converted to double at the end so huge degeneracies cannot overflow.
double hardness(int mis_size, const BigInt& d_mis, const BigInt& d_mis_m1);

// Number of repetitions for 99% success: log(1 - 0.99)/log(1 - p).
// p >= 1 returns 1 by continuity; p <= 0 raises CensoredError.
double r99(double p);

// tau * r99(p): expected time to 99% success from single-run time tau.
double tts99(double tau_s, double p);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::string kind;       // "loglinear" | "powerlaw" | "tts-hardness"
    double alpha = 0.0;     // power-law fits only
    double c = 0.0;         // power-law fits only
    int points_used = 0;
    int points_excluded = 0;
};

// Within each size group keeps the (1 - top_fraction) tail by value, then
// fits log10(tts) = slope * n + intercept over the pooled survivors.
FitResult fit_loglinear_top(const std::vector<std::pair<double, double>>& n_tts,
                            double top_fraction);

// Fits p = 1 - exp(-C * h^-alpha) by regressing log(-log(1-p)) on log h.
// Saturated points (p in {0, 1}) are excluded and counted.
FitResult fit_pmis_powerlaw(const std::vector<std::pair<double, double>>& h_p);

// log-log fit of tts against hardness over points with h >= min_h; the
// slope estimates the same alpha as the success-probability fit.
FitResult tts_hardness_scaling(const std::vector<std::pair<double, double>>& h_tts,
                               double min_h = 10.0);

struct CorrResult {
    double pearson = 0.0;
    std::optional<double> partial;  // set when a control variable is given
    bool degenerate = false;        // residual variance vanished
};

// Pearson correlation, plus the partial correlation given a control
// variable (correlation of the least-squares residuals).
CorrResult correlations(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>* control = nullptr);

// Percentiles of log10(values), linear interpolation between order
// statistics (rank q * (k - 1)).
struct QuantileSummary {
    double p2 = 0, p16 = 0, p50 = 0, p84 = 0, p98 = 0;
};
QuantileSummary quantile_summary(const std::vector<double>& values);

// Plain quantile with the same interpolation convention, in linear units.
double quantile(std::vector<double> values, double q);

}  // namespace mis
