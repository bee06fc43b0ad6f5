#include "stylo/decomp.hpp"

#include "stylo/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace stylo {

StandardizationModel standardize_fit(const FeatureTable& table) {
    const std::size_t n = table.values.rows;
    const std::size_t d = table.values.cols;
    if (n < 2) throw InputError("standardization needs at least 2 documents");
    StandardizationModel m;
    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0;
        std::size_t present = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (table.is_missing(r, c)) continue;
            sum += table.values(r, c);
            ++present;
        }
        const std::string& id = c < table.feature_ids.size() ? table.feature_ids[c] : std::to_string(c);
        if (present == 0) {
            m.dropped.push_back(id);
            continue;
        }
        const double mean = sum / static_cast<double>(present);
        // Imputed cells sit at the mean, so they add nothing to the squared deviations.
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (table.is_missing(r, c)) continue;
            const double dv = table.values(r, c) - mean;
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        if (!(sd > 0.0) || sd <= 1e-12 * std::max(1.0, std::fabs(mean))) {
            m.dropped.push_back(id);
            continue;
        }
        m.feature_ids.push_back(id);
        m.source_columns.push_back(c);
        m.mean.push_back(mean);
        m.sd.push_back(sd);
    }
    if (m.feature_ids.empty()) throw InputError("all features are constant; nothing to standardize");
    return m;
}

std::vector<double> StandardizationModel::transform_row(std::span<const double> row,
                                                        const std::vector<bool>* missing) const {
    std::vector<double> out(source_columns.size());
    for (std::size_t k = 0; k < source_columns.size(); ++k) {
        const std::size_t c = source_columns[k];
        if (c >= row.size()) throw InputError("row is shorter than the fitted feature set");
        const bool miss = missing && (*missing)[c];
        out[k] = miss ? 0.0 : (row[c] - mean[k]) / sd[k];
    }
    return out;
}

Matrix StandardizationModel::transform(const FeatureTable& table) const {
    Matrix z(table.values.rows, source_columns.size());
    for (std::size_t r = 0; r < table.values.rows; ++r) {
        const auto row = transform_row(table.values.row(r), table.missing.empty() ? nullptr : &table.missing[r]);
        std::copy(row.begin(), row.end(), z.row(r).begin());
    }
    return z;
}

EigenResult jacobi_eigen(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows;
    if (symmetric.cols != n) throw InputError("jacobi_eigen needs a square matrix");
    Matrix a = symmetric;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    double scale = 0.0;
    for (double x : a.data) scale += x * x;
    scale = std::sqrt(scale);
    const double target = 1e-15 * std::max(scale, 1e-300);

    EigenResult result;
    std::size_t sweep = 0;
    for (; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Rotation angle zeroing a(p,q): tan(2 theta) = 2 apq / (aqq - app).
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    const double residual = off_norm();
    if (residual > target && residual > 1e-12 * std::max(scale, 1.0)) {
        std::ostringstream msg;
        msg << "Jacobi eigensolver did not converge after " << kJacobiMaxSweeps
            << " sweeps (off-diagonal norm " << residual << ")";
        throw NumericalError(msg.str());
    }
    result.sweeps = sweep;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) result.vectors(i, j) = v(i, order[j]);
    }
    return result;
}

Matrix correlation_of_standardized(const Matrix& z) {
    const std::size_t n = z.rows;
    const std::size_t d = z.cols;
    Matrix c(d, d);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = z.row(r);
        for (std::size_t i = 0; i < d; ++i) {
            const double zi = row[i];
            if (zi == 0.0) continue;
            for (std::size_t j = i; j < d; ++j) c(i, j) += zi * row[j];
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            c(i, j) /= static_cast<double>(n);
            c(j, i) = c(i, j);
        }
    }
    return c;
}

PcaModel pca_fit(const Matrix& standardized) {
    const std::size_t n = standardized.rows;
    const std::size_t d = standardized.cols;
    if (d < 2) throw InputError("PCA needs at least 2 features");
    if (n < 3) throw InputError("PCA needs at least 3 documents");

    const Matrix corr = correlation_of_standardized(standardized);
    const EigenResult eig = jacobi_eigen(corr);

    PcaModel m;
    m.sweeps = eig.sweeps;
    m.total_variance = 0.0;
    for (std::size_t i = 0; i < d; ++i) m.total_variance += corr(i, i);
    m.loadings.assign(d, {0.0, 0.0});
    for (std::size_t comp = 0; comp < 2; ++comp) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i) {
            if (std::fabs(eig.vectors(i, comp)) > std::fabs(eig.vectors(arg, comp))) arg = i;
        }
        const double sign = eig.vectors(arg, comp) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) m.loadings[i][comp] = sign * eig.vectors(i, comp);
        m.eigenvalues[comp] = std::max(0.0, eig.values[comp]);
        m.explained_variance_ratio[comp] = m.eigenvalues[comp] / m.total_variance;
    }
    return m;
}

std::array<double, 2> project(const PcaModel& model, std::span<const double> standardized) {
    if (standardized.size() != model.dimension()) {
        throw InputError("projection expects " + std::to_string(model.dimension()) + " values, got " +
                         std::to_string(standardized.size()));
    }
    std::array<double, 2> out{0.0, 0.0};
    for (std::size_t i = 0; i < standardized.size(); ++i) {
        out[0] += standardized[i] * model.loadings[i][0];
        out[1] += standardized[i] * model.loadings[i][1];
    }
    return out;
}

std::vector<GroupVariability> group_variability(std::span<const std::array<double, 2>> points,
                                                std::span<const GroupKey> keys, VariabilityMode mode) {
    if (points.size() != keys.size()) throw InputError("points and group keys differ in length");
    std::map<GroupKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);

    std::vector<GroupVariability> out;
    for (const auto& [key, rows] : groups) {
        GroupVariability g;
        g.key = key;
        g.n = rows.size();
        for (auto r : rows) {
            g.centroid[0] += points[r][0];
            g.centroid[1] += points[r][1];
        }
        g.centroid[0] /= static_cast<double>(g.n);
        g.centroid[1] /= static_cast<double>(g.n);
        double s = 0.0;
        for (auto r : rows) {
            const double dx = points[r][0] - g.centroid[0];
            const double dy = points[r][1] - g.centroid[1];
            const double sq = dx * dx + dy * dy;
            s += mode == VariabilityMode::mean_squared ? sq : std::sqrt(sq);
        }
        g.variability = s / static_cast<double>(g.n);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace stylo
