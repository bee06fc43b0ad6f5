#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stylo {

/// Row-major dense matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
};

/// Feature matrix with per-cell missing flags (documents x features).
struct FeatureTable {
    std::vector<std::string> feature_ids;
    Matrix values;
    std::vector<std::vector<bool>> missing;  // [row][col]; empty means nothing missing

    bool is_missing(std::size_t r, std::size_t c) const {
        return !missing.empty() && missing[r][c];
    }
};

/// Per-feature centering and scaling with population (n) standard deviations.
/// Missing cells are imputed with the feature mean before scaling; constant
/// features are dropped.
struct StandardizationModel {
    std::vector<std::string> feature_ids;  // retained, in input order
    std::vector<std::size_t> source_columns;
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<std::string> dropped;

    /// Maps a full input row (with missing flags) onto the retained,
    /// standardized columns.
    std::vector<double> transform_row(std::span<const double> row, const std::vector<bool>* missing = nullptr) const;
    Matrix transform(const FeatureTable& table) const;
};

/// Throws InputError with fewer than 2 rows or when every feature is constant.
StandardizationModel standardize_fit(const FeatureTable& table);

struct PcaModel {
    std::vector<std::array<double, 2>> loadings;  // d rows, one column per component
    std::array<double, 2> eigenvalues{};
    double total_variance = 0.0;
    std::array<double, 2> explained_variance_ratio{};
    std::size_t sweeps = 0;

    std::size_t dimension() const noexcept { return loadings.size(); }
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
struct EigenResult {
    std::vector<double> values;  // descending
    Matrix vectors;              // column j pairs with values[j]
    std::size_t sweeps = 0;
};

inline constexpr std::size_t kJacobiMaxSweeps = 100;

/// Throws NumericalError with the remaining off-diagonal norm when
/// kJacobiMaxSweeps sweeps do not converge.
EigenResult jacobi_eigen(const Matrix& symmetric);

/// Correlation matrix of standardized columns (divides by n, so the diagonal
/// is 1 and the trace is d).
Matrix correlation_of_standardized(const Matrix& z);

/// Top-2 eigenpairs of the correlation matrix. Each loading vector is signed
/// so that its largest-magnitude entry (lowest index on ties) is positive.
/// Requires d >= 2 and n >= 3.
PcaModel pca_fit(const Matrix& standardized);

/// Throws InputError on a length mismatch.
std::array<double, 2> project(const PcaModel& model, std::span<const double> standardized);

enum class VariabilityMode { mean_squared, mean_absolute };

struct GroupKey {
    std::string label;
    std::string domain;

    auto operator<=>(const GroupKey&) const = default;
};

struct GroupVariability {
    GroupKey key;
    std::array<double, 2> centroid{};
    double variability = 0.0;
    std::size_t n = 0;
};

/// Groups by (label, domain) in ascending key order. Variability is the mean
/// squared (or mean) Euclidean distance from the group centroid.
std::vector<GroupVariability> group_variability(std::span<const std::array<double, 2>> points,
                                                std::span<const GroupKey> keys,
                                                VariabilityMode mode = VariabilityMode::mean_squared);

}  // namespace stylo
