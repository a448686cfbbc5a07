#include "corpus.hpp"
#include "qtoric/families.hpp"
#include "qtoric/gkm.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qtoric;
using qtoric::testing::small_corpus;

namespace {

bool columns_equal_up_to_sign(const IntMatrix &a, const IntMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (sign_normalized(a.column(j)) != sign_normalized(b.column(j)))
            return false;
    return true;
}

const GkmEdge &edge_with_support(const GkmGraph &g, FacetList support) {
    for (const auto &e : g.edges)
        if (e.support == support)
            return e;
    throw std::runtime_error("no such edge");
}

GkmGraph permute_vertices(const GkmGraph &g, std::mt19937 &rng) {
    std::vector<int> perm(static_cast<std::size_t>(g.vertex_count));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    GkmGraph h = g;
    for (std::size_t v = 0; v < perm.size(); ++v)
        (*h.vertex_facets)[static_cast<std::size_t>(perm[v])] = (*g.vertex_facets)[v];
    for (auto &e : h.edges) {
        e.a = perm[static_cast<std::size_t>(e.a)];
        e.b = perm[static_cast<std::size_t>(e.b)];
    }
    std::shuffle(h.edges.begin(), h.edges.end(), rng);
    return h;
}

} // namespace

TEST(BuildGkm, Examples) {
    const auto tri = build_gkm(projective_space(2));
    ASSERT_EQ(tri.edges.size(), 3u);
    EXPECT_EQ(edge_with_support(tri, {0}).label, (IntVector{0, 1}));
    EXPECT_EQ(edge_with_support(tri, {1}).label, (IntVector{1, 0}));
    EXPECT_EQ(edge_with_support(tri, {2}).label, (IntVector{1, -1}));

    const auto sq = build_gkm(product_family({1, 1}));
    ASSERT_EQ(sq.edges.size(), 4u);
    std::vector<IntVector> labels;
    for (const auto &e : sq.edges)
        labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(labels, (std::vector<IntVector>{{0, 1}, {0, 1}, {1, 0}, {1, 0}}));

    const auto seg = build_gkm(projective_space(1));
    ASSERT_EQ(seg.edges.size(), 1u);
    EXPECT_EQ(seg.edges[0].label, (IntVector{1}));
}

TEST(BuildGkm, RegularWithIndependentLabels) {
    for (const auto &[name, q] : small_corpus()) {
        const auto g = build_gkm(q);
        std::vector<std::vector<IntVector>> at(static_cast<std::size_t>(g.vertex_count));
        for (const auto &e : g.edges) {
            EXPECT_TRUE(is_primitive(e.label));
            EXPECT_EQ(sign_normalized(e.label), e.label);
            at[static_cast<std::size_t>(e.a)].push_back(e.label);
            at[static_cast<std::size_t>(e.b)].push_back(e.label);
        }
        for (const auto &ls : at) {
            ASSERT_EQ(static_cast<int>(ls.size()), g.dim) << name;
            EXPECT_NE(det(IntMatrix::from_rows(ls)), 0) << name;
        }
    }
}

TEST(ReconstructLambda, Examples) {
    const auto tri = build_gkm(projective_space(2));
    const IntMatrix l = reconstruct_lambda(tri);
    EXPECT_EQ(l.column(0), (IntVector{1, 0}));
    const auto h2 = hirzebruch(2);
    EXPECT_TRUE(columns_equal_up_to_sign(reconstruct_lambda(build_gkm(h2)), h2.lambda()));
}

TEST(ReconstructLambda, RankNotOneWhenLabelsAreMissing) {
    auto g = build_gkm(hirzebruch(1));
    for (auto &e : g.edges)
        if (e.support == FacetList{0})
            e.label = IntVector{0, 0};
    try {
        reconstruct_lambda(g);
        FAIL() << "expected RankNotOne";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RankNotOne);
    }
}

TEST(ReconstructLambda, RoundTripOnTwists) {
    std::mt19937 rng(41);
    for (const auto &[name, q] : small_corpus())
        for (int t = 0; t < 10; ++t) {
            const auto tq = random_twist(q, rng);
            EXPECT_TRUE(columns_equal_up_to_sign(reconstruct_lambda(build_gkm(tq)), tq.lambda())) << name;
        }
}

TEST(GkmEquiv, Examples) {
    std::mt19937 rng(43);
    for (const auto &[name, q] : small_corpus()) {
        const auto g = build_gkm(q);
        const auto w = gkm_equiv(g, permute_vertices(g, rng));
        EXPECT_TRUE(w) << name;
    }
    EXPECT_FALSE(gkm_equiv(build_gkm(product_family({1, 1})), build_gkm(hirzebruch(2))));
}

TEST(GkmEquiv, WitnessMapsLabelledEdges) {
    std::mt19937 rng(47);
    const auto q = prism_family(3, 1);
    const auto g = build_gkm(q);
    const auto h = permute_vertices(g, rng);
    const auto w = gkm_equiv(g, h);
    ASSERT_TRUE(w);
    for (const auto &e : g.edges) {
        const int a = w->vertex_map[static_cast<std::size_t>(e.a)];
        const int b = w->vertex_map[static_cast<std::size_t>(e.b)];
        const auto it = std::find_if(h.edges.begin(), h.edges.end(), [&](const GkmEdge &f) {
            return (f.a == a && f.b == b) || (f.a == b && f.b == a);
        });
        ASSERT_NE(it, h.edges.end());
        EXPECT_EQ(it->label, e.label);
    }
}

TEST(GkmEquiv, RefusesGraphsWithoutFacets) {
    auto g = build_gkm(projective_space(2));
    g.vertex_facets.reset();
    try {
        gkm_equiv(g, g);
        FAIL() << "expected InvalidDocument";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDocument);
    }
}

TEST(GkmEquiv, AgreesWithStrongEquivalenceOnSmallPairs) {
    std::vector<qtoric::testing::NamedPair> corpus;
    for (auto &np : small_corpus())
        if (np.pair.facet_count() <= 6)
            corpus.push_back(np);
    std::mt19937 rng(53);
    const std::size_t base = corpus.size();
    for (std::size_t i = 0; i < base; ++i) {
        auto t = random_twist_data(corpus[i].pair, rng);
        corpus.push_back({corpus[i].name + "-twisted", twist(corpus[i].pair, t.pi, t.matrix, t.signs)});
        t.matrix = IntMatrix::identity(static_cast<std::size_t>(corpus[i].pair.dim()));
        corpus.push_back({corpus[i].name + "-relabeled", twist(corpus[i].pair, t.pi, t.matrix, t.signs)});
    }
    for (const auto &a : corpus)
        for (const auto &b : corpus)
            EXPECT_EQ(gkm_equiv(build_gkm(a.pair), build_gkm(b.pair)).has_value(),
                      strong_equiv(a.pair, b.pair).has_value())
                << a.name << " vs " << b.name;
}
