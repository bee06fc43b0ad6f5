#include "stylo/annotate.hpp"
#include "stylo/error.hpp"
#include "stylo/semantics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace stylo;

namespace {

SentenceVector dense(const std::vector<double>& v) { return SentenceVector::dense(v); }

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t dim, bool non_negative) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(dim);
    for (auto& x : v) x = non_negative ? std::fabs(n(rng)) : n(rng);
    if (rng() % 5 == 0) v[rng() % dim] = 0.0;
    return v;
}

// Pair mean computed directly on dense arrays.
std::optional<double> brute_force(const std::vector<std::vector<double>>& vs) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            double dot = 0, ni = 0, nj = 0;
            for (std::size_t k = 0; k < vs[i].size(); ++k) {
                dot += vs[i][k] * vs[j][k];
                ni += vs[i][k] * vs[i][k];
                nj += vs[j][k] * vs[j][k];
            }
            if (ni == 0 || nj == 0) continue;
            sum += std::clamp(dot / (std::sqrt(ni) * std::sqrt(nj)), -1.0, 1.0);
            ++pairs;
        }
    }
    if (pairs == 0) return std::nullopt;
    return sum / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("tf-idf idf values") {
    auto one = fit_tfidf({{"a", "b"}});
    CHECK(one.idf()[*one.index_of("a")] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.idf()[*one.index_of("b")] == doctest::Approx(1.0).epsilon(1e-15));

    auto three = fit_tfidf({{"x", "y"}, {"x"}, {"x", "z"}});
    CHECK(three.sentence_count() == 3);
    CHECK(three.idf()[*three.index_of("x")] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(three.idf()[*three.index_of("y")] == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-15));
    CHECK(*three.index_of("x") == 0);
    CHECK(*three.index_of("y") == 1);
    CHECK(*three.index_of("z") == 2);
    CHECK_THROWS_AS(fit_tfidf({}), InputError);
}

TEST_CASE("vectorize examples") {
    const auto m = fit_tfidf({{"a", "b"}});
    const std::vector<std::string> s = {"a", "b"};
    CHECK(vectorize(m, s).norm() == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<std::string> oov = {"q", "r"};
    CHECK(vectorize(m, oov).is_zero());
    const std::vector<std::string> aab = {"a", "a", "b"};
    const auto vec = vectorize(m, aab);
    const auto& e = vec.entries();
    REQUIRE(e.size() == 2);
    CHECK(e[0].second == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(e[1].second == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("cosine examples and properties") {
    CHECK(*cosine(dense({1, 2}), dense({1, 2})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*cosine(dense({1, 0}), dense({0, 1})) == 0.0);
    CHECK(*cosine(dense({1, 0}), dense({1, 1})) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK_FALSE(cosine(dense({0, 0}), dense({1, 1})).has_value());

    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_vec(rng, 5, false);
        const auto b = random_vec(rng, 5, false);
        const auto ab = cosine(dense(a), dense(b));
        const auto ba = cosine(dense(b), dense(a));
        REQUIRE(ab.has_value());
        CHECK(*ab == doctest::Approx(*ba).epsilon(1e-15));
        CHECK(*ab >= -1.0);
        CHECK(*ab <= 1.0);
        CHECK(*cosine(dense(a).scaled(3.5), dense(b)) == doctest::Approx(*ab).epsilon(1e-12));
    }
}

TEST_CASE("sentence vector norm matches recomputation") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto a = random_vec(rng, 7, false);
        double s = 0;
        for (double x : a) s += x * x;
        CHECK(std::fabs(dense(a).norm() - std::sqrt(s)) < 1e-9);
    }
}

TEST_CASE("consistency examples") {
    const std::vector<SentenceVector> same = {dense({1, 2}), dense({1, 2}), dense({1, 2})};
    CHECK(*doc_semantic_consistency(same) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<SentenceVector> disjoint = {dense({1, 0}), dense({0, 1})};
    CHECK(*doc_semantic_consistency(disjoint) == 0.0);
    const std::vector<SentenceVector> mixed = {dense({1, 0}), dense({1, 0}), dense({0, 1})};
    CHECK(*doc_semantic_consistency(mixed) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const std::vector<SentenceVector> single = {dense({1, 0})};
    CHECK_FALSE(doc_semantic_consistency(single).has_value());
    const std::vector<SentenceVector> with_zero = {dense({1, 0}), dense({0, 0})};
    CHECK_FALSE(doc_semantic_consistency(with_zero).has_value());
}

TEST_CASE("consistency equals the brute-force pair mean and ignores order") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const bool nonneg = t % 2 == 0;
        std::vector<std::vector<double>> raw;
        std::vector<SentenceVector> vs;
        for (std::size_t i = 0; i < n; ++i) {
            raw.push_back(random_vec(rng, 4, nonneg));
            vs.push_back(dense(raw.back()));
        }
        const auto expect = brute_force(raw);
        const auto got = doc_semantic_consistency(vs);
        REQUIRE(expect.has_value() == got.has_value());
        if (!got) continue;
        CHECK(std::fabs(*got - *expect) <= 1e-12);
        if (nonneg) {
            CHECK(*got >= 0.0);
            CHECK(*got <= 1.0);
        }
        std::shuffle(vs.begin(), vs.end(), rng);
        CHECK(std::fabs(*doc_semantic_consistency(vs) - *got) <= 1e-12);
    }
}

TEST_CASE("tf-idf consistency of repeated sentences is one") {
    const auto doc = annotate_text("d", "The cat sat. The cat sat. The cat sat.");
    std::vector<std::vector<std::string>> sents;
    for (const auto& s : doc.sentences) sents.push_back(sentence_terms(s));
    const auto model = fit_tfidf(sents);
    std::vector<SentenceVector> vs;
    for (const auto& s : sents) vs.push_back(vectorize(model, s));
    CHECK(*doc_semantic_consistency(vs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sents[0] == std::vector<std::string>{"the", "cat", "sat"});
}

TEST_CASE("incremental builder agrees with fit_tfidf") {
    const std::vector<std::vector<std::string>> sents = {{"a", "b"}, {"b", "c", "c"}, {"d"}};
    TfidfBuilder b;
    for (const auto& s : sents) b.add_sentence(s);
    const auto m1 = b.build();
    const auto m2 = fit_tfidf(sents);
    CHECK(m1.idf() == m2.idf());
    CHECK(m1.vocabulary() == m2.vocabulary());
}

TEST_CASE("external vectors") {
    const auto ev = parse_external_vectors(
        "{\"id\":\"a\",\"vectors\":[[1,0],[0,1]]}\n"
        "{\"id\":\"b\",\"vectors\":[[3,4]]}\n"
        "{\"id\":\"c\",\"vectors\":[[1,0],[1,0],[0,1]]}\n");
    CHECK(*doc_semantic_consistency(ev.at("a")) == 0.0);
    CHECK_FALSE(doc_semantic_consistency(ev.at("b")).has_value());
    CHECK(ev.at("b")[0].norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*doc_semantic_consistency(ev.at("c")) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    try {
        parse_external_vectors("{\"id\":\"r\",\"vectors\":[[1,0],[1,0,0]]}\n");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("r") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_external_vectors("{\"id\":\"x\",\"vectors\":[[1e999]]}\n"), InputError);
    CHECK_THROWS_AS(parse_external_vectors("not json\n"), ParseError);
}
