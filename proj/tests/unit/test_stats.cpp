#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "../support/reference_results.hpp"
#include "../support/temp_dir.hpp"
#include "albench/errors.hpp"
#include "albench/rng.hpp"
#include "albench/stats.hpp"

using namespace albench;
using albench::testing::TempDir;

namespace {

ResultTable two_methods(std::vector<double> a, std::vector<double> b) {
    ResultTable t;
    t.methods = {"A", "B"};
    for (std::size_t d = 0; d < a.size(); ++d) t.datasets.push_back("d" + std::to_string(d));
    t.aulc = {std::move(a), std::move(b)};
    return t;
}

std::size_t method_index(const ResultTable& t, const std::string& name) {
    for (std::size_t m = 0; m < t.methods.size(); ++m) {
        if (t.methods[m] == name) return m;
    }
    FAIL("no method " << name);
    return 0;
}

}  // namespace

TEST_CASE("mid ranks") {
    const std::vector<double> v = {3.0, 1.0, 3.0, 2.0, 3.0};
    CHECK(mid_ranks(v) == std::vector<double>{4.0, 1.0, 4.0, 2.0, 4.0});
    CHECK(mid_ranks(std::vector<double>{}).empty());
}

TEST_CASE("average ranks of a dominant method") {
    const auto t = two_methods(std::vector<double>(8, 0.9), std::vector<double>(8, 0.8));
    CHECK(average_ranks(t) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("exact ties share the mid-rank") {
    auto t = two_methods({0.9, 0.7, 0.5}, {0.8, 0.7, 0.6});
    const auto ranks = dataset_ranks(t);
    CHECK(ranks[0] == std::vector<double>{1.0, 1.5, 2.0});
    CHECK(ranks[1] == std::vector<double>{2.0, 1.5, 1.0});
}

TEST_CASE("table validation") {
    auto t = two_methods({0.9, 1.2}, {0.5, 0.5});
    CHECK_THROWS_AS(t.validate(), ArgumentError);
    t = two_methods({0.9, 0.8}, {0.5});
    CHECK_THROWS_AS(average_ranks(t), ArgumentError);
}

TEST_CASE("wilcoxon: eight positive differences") {
    const std::vector<double> a = {0.9, 0.8, 0.85, 0.7, 0.95, 0.6, 0.75, 0.65};
    std::vector<double> b;
    for (std::size_t i = 0; i < a.size(); ++i) b.push_back(a[i] - 0.01 * (i + 1));
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(r.exact);
    CHECK(r.n_used == 8);
    CHECK(r.w_plus == 36.0);
    CHECK(std::abs(r.p_value - 2.0 / 256.0) < 1e-15);
    CHECK(std::abs(r.p_value - albench::testing::wilcoxon_enumerated_p(a, b)) < 1e-12);
}

TEST_CASE("wilcoxon: identical samples") {
    const std::vector<double> a = {0.1, 0.2, 0.3, 0.4, 0.5};
    const auto r = wilcoxon_signed_rank(a, a);
    CHECK(r.p_value == 1.0);
    CHECK(r.degenerate);
    CHECK(r.n_used == 0);
}

TEST_CASE("wilcoxon: alternating +-eps is near the null centre") {
    std::vector<double> a(8, 0.5), b;
    for (int i = 0; i < 8; ++i) b.push_back(0.5 + (i % 2 ? 1e-3 : -1e-3));
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(std::abs(r.p_value - albench::testing::wilcoxon_enumerated_p(a, b)) < 1e-12);
    CHECK(r.p_value > 0.9);
}

TEST_CASE("wilcoxon: zeros dropped, ties mid-ranked, matches enumeration") {
    const std::vector<double> a = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<double> b = {1, 1, 4, 2, 5, 5, 8, 6, 8, 12};
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(r.n_used == 8);
    CHECK(std::abs(r.p_value - albench::testing::wilcoxon_enumerated_p(a, b)) < 1e-12);
}

TEST_CASE("wilcoxon: normal approximation beyond the exact range") {
    const std::size_t n = 30;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<double>(i);
        b[i] = a[i] + (i < 20 ? -1.0 : 1.0) * static_cast<double>(i + 1) * 0.01;
    }
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK_FALSE(r.exact);
    // W+ = 1 + ... + 20 = 210; mean 232.5, var n(n+1)(2n+1)/24.
    const double mu = n * (n + 1) / 4.0;
    const double sigma = std::sqrt(n * (n + 1) * (2.0 * n + 1) / 24.0);
    const double z = (std::abs(210.0 - mu) - 0.5) / sigma;
    CHECK(r.w_plus == 210.0);
    CHECK(r.p_value == doctest::Approx(std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("wilcoxon: length mismatch") {
    const std::vector<double> a = {1, 2, 3}, b = {1, 2};
    CHECK_THROWS_AS(wilcoxon_signed_rank(a, b), ArgumentError);
}

TEST_CASE("comparison against itself is all draws") {
    auto t = two_methods({0.9, 0.8, 0.7, 0.6, 0.5}, {0.1, 0.1, 0.1, 0.1, 0.1});
    const auto c = compare_methods(t, 0, 0);
    CHECK(c.wins == 0);
    CHECK(c.draws == 5);
    CHECK(c.losses == 0);
    REQUIRE(c.p_value.has_value());
    CHECK(*c.p_value == 1.0);
    CHECK(c.degenerate);
}

TEST_CASE("win/draw/loss uses three decimals") {
    auto t = two_methods({0.9001, 0.8, 0.7, 0.6, 0.5}, {0.9004, 0.7, 0.8, 0.5, 0.4});
    const auto c = compare_methods(t, 0, 1);
    CHECK(c.wins == 3);
    CHECK(c.draws == 1);
    CHECK(c.losses == 1);
    CHECK_FALSE(c.degenerate);
}

TEST_CASE("p-value needs five datasets") {
    auto t = two_methods({0.9, 0.8, 0.7, 0.6}, {0.8, 0.7, 0.6, 0.5});
    CHECK_FALSE(compare_methods(t, 0, 1).p_value.has_value());
    const auto pairs = pairwise_table(t);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].method_a == "A");
    CHECK(pairs[0].wins == 4);
}

TEST_CASE("published comparisons under QBC") {
    const auto t = albench::testing::reference_table();
    const auto bert_tf = compare_methods(t, method_index(t, "BERT+QBC"), method_index(t, "TF+QBC"));
    CHECK(bert_tf.wins == 8);
    CHECK(bert_tf.draws == 0);
    CHECK(bert_tf.losses == 0);
    CHECK(*bert_tf.p_value == doctest::Approx(2.0 / 256.0));
    const auto ft = compare_methods(t, method_index(t, "FT+QBC"), method_index(t, "FT_T+QBC"));
    CHECK(ft.wins == 3);
    CHECK(ft.draws == 1);
    CHECK(ft.losses == 4);
}

TEST_CASE("published average ranks") {
    const auto t = albench::testing::reference_table();
    const auto avg = average_ranks(t);
    const auto& rows = albench::testing::reference_rows();
    for (std::size_t m = 0; m < rows.size(); ++m) {
        CAPTURE(t.methods[m]);
        CHECK(std::abs(avg[m] - rows[m].average_rank) <= 0.01);
    }
    CHECK(avg[method_index(t, "BERT+uncertainty")] == doctest::Approx(2.8125));
}

TEST_CASE("restored order keeps every published value at three decimals") {
    const auto plain = albench::testing::reference_table(false);
    const auto restored = albench::testing::reference_table(true);
    for (std::size_t m = 0; m < plain.methods.size(); ++m) {
        for (std::size_t d = 0; d < plain.datasets.size(); ++d) {
            CHECK(std::llround(restored.aulc[m][d] * 1000) == std::llround(plain.aulc[m][d] * 1000));
        }
    }
}

TEST_CASE("result table CSV round trip") {
    TempDir dir;
    auto t = two_methods({0.9, 0.8}, {0.123456, 0.5});
    const auto path = dir.write("t.csv", "# comment\n" + result_table_csv(t));
    const auto back = read_result_table_csv(path);
    CHECK(back.methods == t.methods);
    CHECK(back.datasets == t.datasets);
    CHECK(back.aulc == t.aulc);
    CHECK_THROWS_AS(read_result_table_csv(dir.write("bad.csv", "method,a\nx,0.5,0.6\n")), FormatError);
    CHECK_THROWS_AS(read_result_table_csv(dir.write("nan.csv", "method,a\nx,abc\n")), FormatError);
}

TEST_CASE("rank and pairwise outputs") {
    auto t = two_methods({0.9, 0.8, 0.7, 0.6, 0.5}, {0.8, 0.7, 0.6, 0.5, 0.4});
    const auto csv = ranks_csv(t);
    CHECK(csv.find("method,d0,d1,d2,d3,d4,average_rank") == 0);
    CHECK(csv.find("A,1,1,1,1,1,1") != std::string::npos);
    const auto j = ranks_json(t);
    CHECK(j.at(0).at("method") == "A");
    const auto pairs = pairwise_table(t);
    const auto pj = pairwise_json(pairs);
    CHECK(pj.at(0).at("wins") == 5);
    CHECK(pairwise_csv(pairs).find("A,B,5,0,0,") != std::string::npos);
}
