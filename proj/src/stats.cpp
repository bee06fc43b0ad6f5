#include "stylo/stats.hpp"

#include "stylo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stylo {

std::string_view adjustment_name(PAdjustment a) {
    switch (a) {
        case PAdjustment::bonferroni: return "bonferroni";
        case PAdjustment::holm: return "holm";
        case PAdjustment::none: return "none";
    }
    return "unknown";
}

std::optional<PAdjustment> parse_adjustment(std::string_view name) {
    if (name == "bonferroni") return PAdjustment::bonferroni;
    if (name == "holm") return PAdjustment::holm;
    if (name == "none") return PAdjustment::none;
    return std::nullopt;
}

std::vector<double> rank_with_ties(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // Positions i..j-1 hold ranks i+1..j.
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
        i = j;
    }
    return ranks;
}

namespace {

struct Pooled {
    std::vector<double> ranks;
    std::vector<std::size_t> sizes;
    std::vector<double> rank_sums;
    double N = 0.0;
    double tie_sum = 0.0;  // sum of t^3 - t over tie groups
};

Pooled pool(const GroupedSamples& samples) {
    if (samples.groups.size() < 2) {
        throw InputError("feature " + samples.feature_id + ": at least two groups are required");
    }
    std::vector<double> all;
    Pooled p;
    for (const auto& [label, values] : samples.groups) {
        if (values.empty()) throw InputError("feature " + samples.feature_id + ": group " + label + " is empty");
        for (double v : values) {
            if (!std::isfinite(v)) throw InputError("feature " + samples.feature_id + ": non-finite value");
            all.push_back(v);
        }
        p.sizes.push_back(values.size());
    }
    if (all.size() < 3) throw InputError("feature " + samples.feature_id + ": need at least 3 observations");
    p.ranks = rank_with_ties(all);
    p.N = static_cast<double>(all.size());

    std::size_t offset = 0;
    for (std::size_t g = 0; g < p.sizes.size(); ++g) {
        double s = 0.0;
        for (std::size_t k = 0; k < p.sizes[g]; ++k) s += p.ranks[offset + k];
        p.rank_sums.push_back(s);
        offset += p.sizes[g];
    }

    std::vector<double> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        p.tie_sum += t * t * t - t;
        i = j;
    }
    return p;
}

}  // namespace

KruskalWallisResult kruskal_wallis(const GroupedSamples& samples) {
    const Pooled p = pool(samples);
    KruskalWallisResult r;
    r.df = static_cast<int>(p.sizes.size()) - 1;
    const double N = p.N;
    r.tie_correction = 1.0 - p.tie_sum / (N * N * N - N);
    if (r.tie_correction <= 0.0) {
        r.tie_correction = 0.0;
        r.H = 0.0;
        r.p_value = 1.0;
        return r;
    }
    double s = 0.0;
    for (std::size_t g = 0; g < p.sizes.size(); ++g) {
        s += p.rank_sums[g] * p.rank_sums[g] / static_cast<double>(p.sizes[g]);
    }
    const double h0 = 12.0 / (N * (N + 1.0)) * s - 3.0 * (N + 1.0);
    r.H = std::max(0.0, h0 / r.tie_correction);
    r.p_value = chi_square_sf(r.H, r.df);
    return r;
}

DunnResult dunn_test(const GroupedSamples& samples, PAdjustment adjustment) {
    const Pooled p = pool(samples);
    const std::size_t k = p.sizes.size();
    DunnResult r;
    r.adjustment = adjustment;
    for (const auto& g : samples.groups) r.labels.push_back(g.first);
    r.z.assign(k, std::vector<double>(k, 0.0));
    r.p_raw.assign(k, std::vector<double>(k, 1.0));
    r.p_adjusted.assign(k, std::vector<double>(k, 1.0));

    const double N = p.N;
    const double variance_base = N * (N + 1.0) / 12.0 - p.tie_sum / (12.0 * (N - 1.0));
    if (!(variance_base > 0.0)) return r;  // everything tied

    struct Pair {
        std::size_t i, j;
        double p;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double ni = static_cast<double>(p.sizes[i]);
            const double nj = static_cast<double>(p.sizes[j]);
            const double diff = p.rank_sums[i] / ni - p.rank_sums[j] / nj;
            const double z = diff / std::sqrt(variance_base * (1.0 / ni + 1.0 / nj));
            const double praw = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
            r.z[i][j] = z;
            r.z[j][i] = -z;
            r.p_raw[i][j] = r.p_raw[j][i] = praw;
            pairs.push_back({i, j, praw});
        }
    }

    const double m = static_cast<double>(pairs.size());
    std::vector<double> adjusted(pairs.size());
    switch (adjustment) {
        case PAdjustment::none:
            for (std::size_t q = 0; q < pairs.size(); ++q) adjusted[q] = pairs[q].p;
            break;
        case PAdjustment::bonferroni:
            for (std::size_t q = 0; q < pairs.size(); ++q) adjusted[q] = std::min(1.0, m * pairs[q].p);
            break;
        case PAdjustment::holm: {
            std::vector<std::size_t> order(pairs.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return pairs[a].p < pairs[b].p; });
            double running = 0.0;
            for (std::size_t rank = 0; rank < order.size(); ++rank) {
                const double v = std::min(1.0, (m - static_cast<double>(rank)) * pairs[order[rank]].p);
                running = std::max(running, v);
                adjusted[order[rank]] = running;
            }
            break;
        }
    }
    for (std::size_t q = 0; q < pairs.size(); ++q) {
        r.p_adjusted[pairs[q].i][pairs[q].j] = r.p_adjusted[pairs[q].j][pairs[q].i] = adjusted[q];
    }
    return r;
}

double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    constexpr int kMaxIter = 10000;
    constexpr double kEps = 1e-16;
    const double log_prefix = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // P(a, x) = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < kMaxIter; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * kEps) break;
        }
        return std::clamp(1.0 - sum * std::exp(log_prefix), 0.0, 1.0);
    }
    // Modified Lentz evaluation of the continued fraction for Q.
    constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double dd = 1.0 / b;
    double h = dd;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        dd = an * dd + b;
        if (std::fabs(dd) < kTiny) dd = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        dd = 1.0 / dd;
        const double delta = dd * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::clamp(std::exp(log_prefix) * h, 0.0, 1.0);
}

double chi_square_sf(double x, int df) {
    if (df <= 0) throw InputError("chi-square degrees of freedom must be positive");
    if (std::isnan(x)) throw InputError("chi-square statistic is NaN");
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

Descriptive descriptive(std::span<const double> values) {
    if (values.empty()) throw InputError("descriptive statistics need at least one value");
    Descriptive d;
    d.n = values.size();
    const double n = static_cast<double>(d.n);
    d.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (d.n >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - d.mean) * (v - d.mean);
        d.variance = ss / (n - 1.0);
        d.sd = std::sqrt(*d.variance);
        d.standard_error = *d.sd / std::sqrt(n);
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double p) {
        const double pos = (n - 1.0) * p;
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };
    d.min = sorted.front();
    d.max = sorted.back();
    d.q1 = quantile(0.25);
    d.median = quantile(0.5);
    d.q3 = quantile(0.75);
    return d;
}

}  // namespace stylo
