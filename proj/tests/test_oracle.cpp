#include "corpus.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/families.hpp"
#include "qtoric/oracle.hpp"

#include <gtest/gtest.h>

using namespace qtoric;
using qtoric::testing::small_corpus;

namespace {

Int oracle_pair(const QuasitoricPair &q, std::initializer_list<int> facets) {
    return integrate_oracle(q, Monomial::from_facets(q.facet_count(), std::vector<int>(facets)));
}

} // namespace

TEST(IntegrateOracle, Examples) {
    const auto cp2 = projective_space(2);
    EXPECT_EQ(oracle_pair(cp2, {0, 1}), 1);
    EXPECT_EQ(oracle_pair(cp2, {2, 2}), 1);
    EXPECT_EQ(oracle_pair(hirzebruch(0), {0, 2}), 0);
    EXPECT_EQ(oracle_pair(hirzebruch(1), {1, 1}), -1);
    EXPECT_EQ(oracle_pair(hirzebruch(1), {3, 3}), 1);
}

TEST(BettiOracle, Examples) {
    EXPECT_EQ(betti_oracle(projective_space(2)), (std::vector<std::int64_t>{1, 1, 1}));
    EXPECT_EQ(betti_oracle(product_family({1, 2})), (std::vector<std::int64_t>{1, 2, 2, 1}));
    EXPECT_EQ(betti_oracle(prism_family(3, 2)), (std::vector<std::int64_t>{1, 2, 2, 1}));
    EXPECT_EQ(betti_oracle(prism_family(2, 1)), (std::vector<std::int64_t>{1, 2, 1}));
    EXPECT_EQ(betti_oracle(product_family({2, 2})), (std::vector<std::int64_t>{1, 2, 3, 2, 1}));
}

TEST(BettiOracle, EqualsHVector) {
    auto corpus = small_corpus();
    corpus.push_back({"cp2xcp2", product_family({2, 2})});
    corpus.push_back({"cp1^3", product_family({1, 1, 1})});
    corpus.push_back({"prism4_1", prism_family(4, 1)});
    for (const auto &[name, q] : corpus)
        EXPECT_EQ(betti_oracle(q), f_h_vectors(q.polytope()).h) << name;
}

TEST(IntegrateOracle, AgreesWithLocalizationOnEveryMonomial) {
    auto corpus = small_corpus();
    corpus.push_back({"cp1^3", product_family({1, 1, 1})});
    corpus.push_back({"prism4_2", prism_family(4, 2)});
    for (const auto &[name, q] : corpus) {
        ASSERT_LE(q.facet_count(), 7) << name;
        for (const auto &[mon, val] : char_numbers(q))
            ASSERT_EQ(integrate_oracle(q, mon), val) << name;
    }
}

TEST(IntegrateOracle, WrongDegreeIsZero) {
    EXPECT_EQ(oracle_pair(projective_space(3), {0, 1}), 0);
}
