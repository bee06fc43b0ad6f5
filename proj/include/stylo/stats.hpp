#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stylo {

struct GroupedSamples {
    std::string feature_id;
    std::vector<std::pair<std::string, std::vector<double>>> groups;
};

struct KruskalWallisResult {
    double H = 0.0;
    int df = 0;
    double p_value = 1.0;
    double tie_correction = 1.0;
};

enum class PAdjustment { bonferroni, holm, none };

std::string_view adjustment_name(PAdjustment a);
std::optional<PAdjustment> parse_adjustment(std::string_view name);

struct DunnResult {
    std::vector<std::string> labels;
    /// k x k matrices indexed [i][j]; z is antisymmetric, p matrices symmetric.
    std::vector<std::vector<double>> z;
    std::vector<std::vector<double>> p_raw;
    std::vector<std::vector<double>> p_adjusted;
    PAdjustment adjustment = PAdjustment::bonferroni;
};

struct Descriptive {
    std::size_t n = 0;
    double mean = 0.0;
    std::optional<double> variance;  // n - 1 denominator
    std::optional<double> sd;
    std::optional<double> standard_error;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Midranks (1-based); tied values share the mean of the ranks they span.
std::vector<double> rank_with_ties(std::span<const double> values);

/// Throws InputError with fewer than two groups, an empty group, N < 3 or a
/// non-finite value.
KruskalWallisResult kruskal_wallis(const GroupedSamples& samples);

DunnResult dunn_test(const GroupedSamples& samples, PAdjustment adjustment = PAdjustment::bonferroni);

/// Upper tail of the chi-square distribution, Q(df/2, x/2), by the power
/// series of P when x < df + 1 and Lentz's continued fraction for Q
/// otherwise.
double chi_square_sf(double x, int df);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// 1 - Phi(z) = erfc(z / sqrt 2) / 2, using the C library erfc.
double normal_sf(double z);

/// Quartiles interpolate linearly between order statistics at position
/// (n - 1) p (the "type 7" rule). Throws InputError on empty input.
Descriptive descriptive(std::span<const double> values);

}  // namespace stylo
