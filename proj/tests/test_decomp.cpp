#include "stylo/decomp.hpp"
#include "stylo/error.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace stylo;

namespace {

FeatureTable table_of(const std::vector<std::vector<double>>& rows, std::vector<std::vector<bool>> missing = {}) {
    FeatureTable t;
    const std::size_t d = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < d; ++c) t.feature_ids.push_back("f" + std::to_string(c));
    t.values = Matrix(rows.size(), d);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) t.values(r, c) = rows[r][c];
    }
    t.missing = std::move(missing);
    return t;
}

Matrix noisy_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::normal_distribution<double> norm(0.0, 1.0);
    Matrix m(n, d);
    for (std::size_t r = 0; r < n; ++r) {
        const double shared = norm(rng);
        for (std::size_t c = 0; c < d; ++c) m(r, c) = norm(rng) * (1.0 + c) + shared * 0.7 * c + 5.0 * c;
    }
    return m;
}

Matrix standardized(const Matrix& m) {
    FeatureTable t;
    for (std::size_t c = 0; c < m.cols; ++c) t.feature_ids.push_back("f" + std::to_string(c));
    t.values = m;
    return standardize_fit(t).transform(t);
}

// Two columns whose sample correlation is exactly rho.
Matrix correlated_pair(std::mt19937_64& rng, std::size_t n, double rho) {
    std::normal_distribution<double> norm(0.0, 1.0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = norm(rng);
        y[i] = norm(rng);
    }
    auto centre_scale = [n](std::vector<double>& v) {
        double mean = 0.0;
        for (double a : v) mean += a;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double& a : v) {
            a -= mean;
            ss += a * a;
        }
        for (double& a : v) a /= std::sqrt(ss);
    };
    centre_scale(x);
    centre_scale(y);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * y[i];
    for (std::size_t i = 0; i < n; ++i) y[i] -= dot * x[i];
    centre_scale(y);
    Matrix m(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, 0) = 3.0 * x[i] + 10.0;
        m(i, 1) = 0.5 * (rho * x[i] + std::sqrt(1.0 - rho * rho) * y[i]) - 4.0;
    }
    return m;
}

}  // namespace

TEST_CASE("standardize examples") {
    const auto t = table_of({{1.0, 5.0, 1.0}, {3.0, 5.0, 2.0}});
    const auto model = standardize_fit(t);
    CHECK(model.feature_ids == std::vector<std::string>{"f0", "f2"});
    CHECK(model.dropped == std::vector<std::string>{"f1"});
    CHECK(model.mean[0] == 2.0);
    CHECK(model.sd[0] == 1.0);
    const auto z = model.transform(t);
    REQUIRE(z.cols == 2);
    CHECK(z(0, 0) == -1.0);
    CHECK(z(1, 0) == 1.0);
}

TEST_CASE("standardize imputes missing with the mean") {
    const auto t = table_of({{1.0, 0.0}, {99.0, 1.0}, {3.0, 2.0}}, {{false, false}, {true, false}, {false, false}});
    const auto model = standardize_fit(t);
    CHECK(model.mean[0] == 2.0);
    const auto z = model.transform(t);
    CHECK(z(1, 0) == 0.0);
    // Population sd of [1, 2, 3] after imputation.
    CHECK(model.sd[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(z(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("standardize errors") {
    CHECK_THROWS_AS(standardize_fit(table_of({{1.0, 2.0}})), InputError);
    CHECK_THROWS_AS(standardize_fit(table_of({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}})), InputError);
}

TEST_CASE("standardized columns have mean 0 and sd 1") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto z = standardized(noisy_matrix(rng, 5 + rng() % 40, 2 + rng() % 10));
        for (std::size_t c = 0; c < z.cols; ++c) {
            double mean = 0.0;
            for (std::size_t r = 0; r < z.rows; ++r) mean += z(r, c);
            mean /= static_cast<double>(z.rows);
            double var = 0.0;
            for (std::size_t r = 0; r < z.rows; ++r) var += (z(r, c) - mean) * (z(r, c) - mean);
            var /= static_cast<double>(z.rows);
            CHECK(std::fabs(mean) < 1e-9);
            CHECK(std::fabs(std::sqrt(var) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("jacobi agrees with a dense eigen solver") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 12;
        Matrix a(d, d);
        Eigen::MatrixXd e(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                const double v = u(rng) * 3.0;
                a(i, j) = a(j, i) = v;
                e(i, j) = e(j, i) = v;
            }
        }
        const auto mine = jacobi_eigen(a);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e);
        REQUIRE(solver.info() == Eigen::Success);
        for (std::size_t k = 0; k < d; ++k) {
            // Eigen sorts ascending.
            const auto ek = static_cast<Eigen::Index>(d - 1 - k);
            CHECK(std::fabs(mine.values[k] - solver.eigenvalues()(ek)) < 1e-8);
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) dot += mine.vectors(i, k) * solver.eigenvectors()(static_cast<Eigen::Index>(i), ek);
            CHECK(std::fabs(std::fabs(dot) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("pca on correlated pairs") {
    std::mt19937_64 rng(8);
    for (double rho : {0.0, 0.5, 0.8}) {
        const auto m = pca_fit(standardized(correlated_pair(rng, 200, rho)));
        CHECK(std::fabs(m.eigenvalues[0] - (1.0 + rho)) < 1e-10);
        CHECK(std::fabs(m.eigenvalues[1] - (1.0 - rho)) < 1e-10);
        CHECK(std::fabs(m.explained_variance_ratio[0] - (1.0 + rho) / 2.0) < 1e-6);
        CHECK(std::fabs(m.explained_variance_ratio[1] - (1.0 - rho) / 2.0) < 1e-6);
        CHECK(m.total_variance == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("pca on perfectly correlated features") {
    const auto m = pca_fit(standardized(table_of({{1, 2}, {2, 4}, {3, 6}, {5, 10}}).values));
    CHECK(m.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::fabs(m.eigenvalues[1]) < 1e-12);
    CHECK(m.explained_variance_ratio[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(m.explained_variance_ratio[1]) < 1e-12);
}

TEST_CASE("pca invariants") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 10 + rng() % 50;
        const std::size_t d = 2 + rng() % 10;
        const auto z = standardized(noisy_matrix(rng, n, d));
        const auto m = pca_fit(z);
        REQUIRE(m.dimension() == z.cols);
        double n0 = 0.0, n1 = 0.0, dot = 0.0;
        for (const auto& l : m.loadings) {
            n0 += l[0] * l[0];
            n1 += l[1] * l[1];
            dot += l[0] * l[1];
        }
        CHECK(std::fabs(n0 - 1.0) < 1e-9);
        CHECK(std::fabs(n1 - 1.0) < 1e-9);
        CHECK(std::fabs(dot) < 1e-9);
        CHECK(m.eigenvalues[0] >= m.eigenvalues[1]);
        CHECK(m.eigenvalues[1] >= -1e-12);
        CHECK(m.explained_variance_ratio[0] + m.explained_variance_ratio[1] <= 1.0 + 1e-12);

        // Sign convention: largest-magnitude entry positive.
        for (int k = 0; k < 2; ++k) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < m.loadings.size(); ++i) {
                if (std::fabs(m.loadings[i][k]) > std::fabs(m.loadings[best][k])) best = i;
            }
            CHECK(m.loadings[best][k] > 0.0);
        }

        // Projection variance (n denominator, matching the standardization) is the eigenvalue.
        double mean = 0.0;
        std::vector<double> pc1(n);
        for (std::size_t r = 0; r < n; ++r) {
            pc1[r] = project(m, z.row(r))[0];
            mean += pc1[r];
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : pc1) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n);
        CHECK(std::fabs(mean) < 1e-9);
        CHECK(var == doctest::Approx(m.eigenvalues[0]).epsilon(1e-6));

        // All eigenvalues of the correlation matrix sum to d.
        const auto all = jacobi_eigen(correlation_of_standardized(z));
        double sum = 0.0;
        for (double v : all.values) sum += v;
        CHECK(sum == doctest::Approx(static_cast<double>(d)).epsilon(1e-10));
    }
}

TEST_CASE("pca is deterministic") {
    std::mt19937_64 rng(31);
    const auto z = standardized(noisy_matrix(rng, 40, 9));
    const auto a = pca_fit(z);
    const auto b = pca_fit(z);
    CHECK(a.loadings == b.loadings);
    CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("pca preconditions") {
    CHECK_THROWS_AS(pca_fit(standardized(table_of({{1, 2}, {2, 1}}).values)), InputError);
    Matrix one_col(5, 1);
    for (std::size_t r = 0; r < 5; ++r) one_col(r, 0) = static_cast<double>(r) - 2.0;
    CHECK_THROWS_AS(pca_fit(one_col), InputError);
}

TEST_CASE("projection examples") {
    std::mt19937_64 rng(2);
    const auto m = pca_fit(standardized(noisy_matrix(rng, 30, 5)));
    const std::vector<double> zero(5, 0.0);
    const auto p0 = project(m, zero);
    CHECK(p0[0] == 0.0);
    CHECK(p0[1] == 0.0);

    std::vector<double> l1(5), combo(5);
    for (std::size_t i = 0; i < 5; ++i) {
        l1[i] = m.loadings[i][0];
        combo[i] = 2.0 * m.loadings[i][0] + 3.0 * m.loadings[i][1];
    }
    const auto p1 = project(m, l1);
    CHECK(p1[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(p1[1]) < 1e-12);
    const auto p2 = project(m, combo);
    CHECK(p2[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p2[1] == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(project(m, std::vector<double>(4, 0.0)), InputError);
}

TEST_CASE("group variability examples") {
    const std::vector<std::array<double, 2>> pts = {{0, 0}, {2, 0}, {5, 5}};
    const std::vector<GroupKey> keys = {{"human", "wiki"}, {"human", "wiki"}, {"gpt", "wiki"}};
    const auto g = group_variability(pts, keys);
    REQUIRE(g.size() == 2);
    CHECK(g[0].key.label == "gpt");
    CHECK(g[0].variability == 0.0);
    CHECK(g[0].n == 1);
    CHECK(g[1].key.label == "human");
    CHECK(g[1].centroid[0] == 1.0);
    CHECK(g[1].centroid[1] == 0.0);
    CHECK(g[1].variability == 1.0);
    CHECK(g[1].n == 2);

    const auto abs = group_variability(pts, keys, VariabilityMode::mean_absolute);
    CHECK(abs[1].variability == 1.0);
}

TEST_CASE("group variability is translation invariant and non-negative") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> norm(0.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<std::array<double, 2>> pts(n), moved(n);
        std::vector<GroupKey> keys(n);
        const double dx = norm(rng) * 10.0;
        const double dy = norm(rng) * 10.0;
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = {norm(rng), norm(rng)};
            moved[i] = {pts[i][0] + dx, pts[i][1] + dy};
            keys[i] = {"m" + std::to_string(rng() % 3), "d" + std::to_string(rng() % 2)};
        }
        for (auto mode : {VariabilityMode::mean_squared, VariabilityMode::mean_absolute}) {
            const auto a = group_variability(pts, keys, mode);
            const auto b = group_variability(moved, keys, mode);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].key == b[i].key);
                CHECK(a[i].variability >= 0.0);
                CHECK(a[i].variability == doctest::Approx(b[i].variability).epsilon(1e-9));
            }
        }
    }
}
