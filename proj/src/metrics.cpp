#include "mis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "mis/errors.hpp"

namespace mis {

namespace {

struct LineFit {
    double slope = 0, intercept = 0, r_squared = 0;
    int n = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw InvalidInputError("least squares needs at least 2 points");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw InvalidInputError("least squares undefined: x has zero variance");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.n = n;
    if (syy == 0) {
        f.r_squared = 1.0;  // constant y fitted exactly by a flat line
    } else {
        double ssres = 0;
        for (int i = 0; i < n; ++i) {
            const double e = y[i] - (f.intercept + f.slope * x[i]);
            ssres += e * e;
        }
        f.r_squared = 1.0 - ssres / syy;
    }
    return f;
}

}  // namespace

double hardness(int mis_size, const BigInt& d_mis, const BigInt& d_mis_m1) {
    if (mis_size < 1 || d_mis < 1)
        throw InvalidInputError("hardness undefined for mis_size = 0 or d_mis = 0");
    const boost::multiprecision::cpp_rational ratio(d_mis_m1, BigInt(mis_size) * d_mis);
    return ratio.convert_to<double>();
}

double r99(double p) {
    if (p <= 0.0) throw CensoredError("success probability <= 0: estimate censored");
    if (p >= 1.0) return 1.0;
    return std::log(1.0 - 0.99) / std::log(1.0 - p);
}

double tts99(double tau_s, double p) {
    if (tau_s <= 0.0) throw InvalidInputError("tau must be positive");
    return tau_s * r99(p);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidInputError("quantile of empty set");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    if (lo == hi) return values[lo];
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

QuantileSummary quantile_summary(const std::vector<double>& values) {
    if (values.empty()) throw InvalidInputError("summary of empty set");
    std::vector<double> logs;
    logs.reserve(values.size());
    for (double v : values) {
        if (!(v > 0)) throw InvalidInputError("summary requires positive values");
        logs.push_back(std::log10(v));
    }
    QuantileSummary s;
    s.p2 = quantile(logs, 0.02);
    s.p16 = quantile(logs, 0.16);
    s.p50 = quantile(logs, 0.50);
    s.p84 = quantile(logs, 0.84);
    s.p98 = quantile(logs, 0.98);
    return s;
}

FitResult fit_loglinear_top(const std::vector<std::pair<double, double>>& n_tts,
                            double top_fraction) {
    if (!(top_fraction > 0.0 && top_fraction <= 1.0))
        throw InvalidInputError("top fraction must be in (0, 1]");
    std::map<double, std::vector<double>> groups;
    for (const auto& [n, tts] : n_tts) {
        if (!(tts > 0)) throw InvalidInputError("tts values must be positive");
        groups[n].push_back(tts);
    }

    std::vector<double> xs, ys;
    for (const auto& [n, vals] : groups) {
        const double cut = quantile(vals, 1.0 - top_fraction);
        for (double t : vals)
            if (t >= cut) {
                xs.push_back(n);
                ys.push_back(std::log10(t));
            }
    }
    if (xs.size() < 2) throw InvalidInputError("too few points survive top filtering");

    const LineFit f = least_squares(xs, ys);
    FitResult r;
    r.kind = "loglinear";
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.r_squared = f.r_squared;
    r.points_used = f.n;
    r.points_excluded = static_cast<int>(n_tts.size()) - f.n;
    return r;
}

FitResult fit_pmis_powerlaw(const std::vector<std::pair<double, double>>& h_p) {
    std::vector<double> xs, ys;
    int excluded = 0;
    for (const auto& [h, p] : h_p) {
        if (!(h > 0)) throw InvalidInputError("hardness must be positive");
        if (p <= 0.0 || p >= 1.0) {
            ++excluded;
            continue;
        }
        xs.push_back(std::log(h));
        ys.push_back(std::log(-std::log1p(-p)));
    }
    if (xs.size() < 2)
        throw InvalidInputError("too few usable points (" + std::to_string(excluded) +
                                " saturated estimates excluded)");
    const LineFit f = least_squares(xs, ys);
    FitResult r;
    r.kind = "powerlaw";
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.r_squared = f.r_squared;
    r.alpha = -f.slope;
    r.c = std::exp(f.intercept);
    r.points_used = f.n;
    r.points_excluded = excluded;
    return r;
}

FitResult tts_hardness_scaling(const std::vector<std::pair<double, double>>& h_tts,
                               double min_h) {
    std::vector<double> xs, ys;
    int excluded = 0;
    for (const auto& [h, tts] : h_tts) {
        if (!(h > 0) || !(tts > 0)) throw InvalidInputError("values must be positive");
        if (h < min_h) {
            ++excluded;
            continue;
        }
        xs.push_back(std::log(h));
        ys.push_back(std::log(tts));
    }
    if (xs.size() < 2) throw InvalidInputError("too few points above the hardness threshold");
    const LineFit f = least_squares(xs, ys);
    FitResult r;
    r.kind = "tts-hardness";
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.r_squared = f.r_squared;
    r.alpha = f.slope;
    r.c = std::exp(f.intercept);
    r.points_used = f.n;
    r.points_excluded = excluded;
    return r;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y, bool* degenerate) {
    const int n = static_cast<int>(x.size());
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        if (!degenerate) throw InvalidInputError("correlation undefined: zero variance");
        *degenerate = true;
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> residuals(const std::vector<double>& y, const std::vector<double>& x) {
    const LineFit f = least_squares(x, y);
    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - (f.intercept + f.slope * x[i]);
    return r;
}

}  // namespace

CorrResult correlations(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>* control) {
    if (x.size() != y.size() || x.size() < 3)
        throw InvalidInputError("correlation needs equal-length series of >= 3 points");
    CorrResult out;
    out.pearson = pearson(x, y, nullptr);
    if (control) {
        if (control->size() != x.size())
            throw InvalidInputError("control series length mismatch");
        const auto rx = residuals(x, *control);
        const auto ry = residuals(y, *control);
        bool degenerate = false;
        const double pr = pearson(rx, ry, &degenerate);
        out.partial = degenerate ? 0.0 : pr;
        out.degenerate = degenerate;
    }
    return out;
}

}  // namespace mis
