#include "qtoric/cohomology.hpp"
#include "qtoric/families.hpp"
#include "qtoric/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtoric;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::Overflow;
}

} // namespace

TEST(Constructors, ProjectiveSpace) {
    const auto cp1 = projective_space(1);
    EXPECT_EQ(cp1.lambda(), IntMatrix::from_rows({{1, -1}}));
    const auto cp2 = projective_space(2);
    EXPECT_EQ(cp2.lambda(), IntMatrix::from_columns({{1, 0}, {0, 1}, {-1, -1}}));
    for (int n = 1; n <= 4; ++n) {
        const auto q = projective_space(n);
        std::vector<int> f(static_cast<std::size_t>(n), n);
        EXPECT_EQ(integrate_oracle(q, Monomial::from_facets(n + 1, f)), 1);
    }
}

TEST(Constructors, Products) {
    EXPECT_TRUE(weak_equiv(product_family({1, 1}), hirzebruch(0)));
    EXPECT_EQ(betti_oracle(product_family({2, 2})), (std::vector<std::int64_t>{1, 2, 3, 2, 1}));
    EXPECT_EQ(product_family({1}), projective_space(1));
}

TEST(Constructors, Prisms) {
    const auto q = prism_family(3, 1);
    EXPECT_EQ(q.lambda().column(0), (IntVector{1, 1, 1}));
    EXPECT_EQ(q.lambda().column(1), (IntVector{-1, 1, 1}));
    EXPECT_EQ(q.lambda().column(3), (IntVector{0, -1, 0}));
    EXPECT_EQ(minimal_nonfaces(q.polytope()), (std::vector<FacetList>{{0, 1}, {2, 3, 4}}));
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            EXPECT_NO_THROW(prism_family(n, k));
}

TEST(Constructors, Hirzebruch) {
    EXPECT_TRUE(weak_equiv(hirzebruch(1), hirzebruch(-1)));
    EXPECT_FALSE(weak_equiv(hirzebruch(1), hirzebruch(3)));
}

TEST(Constructors, FamilyInstancesHaveBettiEqualToH) {
    std::vector<QuasitoricPair> qs;
    for (int n = 1; n <= 4; ++n)
        qs.push_back(projective_space(n));
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k <= n; ++k)
            qs.push_back(prism_family(n, k));
    qs.push_back(product_family({1, 2}));
    qs.push_back(product_family({2, 2}));
    for (Int a = -3; a <= 3; ++a)
        qs.push_back(hirzebruch(a));
    for (const auto &q : qs)
        EXPECT_EQ(betti_oracle(q), f_h_vectors(q.polytope()).h);
}

TEST(PrismK, Examples) {
    EXPECT_EQ(prism_k_invariant(prism_family(5, 3)), 3);
    EXPECT_EQ(prism_k_invariant(prism_family(4, 3)), 1);
    EXPECT_EQ(kind_of([] { prism_k_invariant(hirzebruch(1)); }), ErrorKind::WrongPolytope);
    // CP^1 x CP^2 sits over the same prism but u_E0 = u_E1
    EXPECT_EQ(kind_of([] { prism_k_invariant(product_family({1, 2})); }), ErrorKind::NotConnectedSumCohomology);
}

TEST(PrismK, InvariantUnderTwists) {
    std::mt19937 rng(61);
    for (int n = 3; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            const int expect = n % 2 == 1 ? (k % 2 == 1 ? k : n - k) : std::min(k, n - k);
            const auto q = prism_family(n, k);
            EXPECT_EQ(prism_k_invariant(q), expect);
            for (int t = 0; t < 5; ++t)
                EXPECT_EQ(prism_k_invariant(random_twist(q, rng)), expect) << n << "," << k;
        }
}

TEST(PrismK, NotConnectedSumCohomology) {
    // sides e1, e2, (1,1,2) over ends e3, (1,0,1): u_S3 = -(u_E0 + u_E1) / 2
    const auto q = validate_characteristic(
        prism(3), IntMatrix::from_columns({{0, 0, 1}, {1, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
    EXPECT_EQ(kind_of([&] { prism_k_invariant(q); }), ErrorKind::NotConnectedSumCohomology);
}

TEST(Enumerate, Examples) {
    const auto tri = enumerate_classes(simplex(2), 1);
    EXPECT_EQ(tri.classes.size(), 1u);
    EXPECT_TRUE(weak_equiv(tri.instances[0], projective_space(2)));
    for (const auto &q : tri.instances)
        EXPECT_TRUE(weak_equiv(q, projective_space(2)));
    const auto seg = enumerate_classes(simplex(1), 1);
    EXPECT_EQ(seg.classes.size(), 1u);
    EXPECT_EQ(seg.total, 1);
}

TEST(Enumerate, SquareBoundTwoMatchesNamedFamilies) {
    const auto rep = enumerate_classes(square(), 2);
    std::int64_t sum = 0;
    for (const auto &c : rep.classes)
        sum += c.multiplicity;
    EXPECT_EQ(sum, rep.total);
    EXPECT_EQ(static_cast<std::size_t>(rep.total), rep.instances.size());

    std::vector<QuasitoricPair> named;
    for (Int a = 0; a <= 6; ++a)
        named.push_back(hirzebruch(a));
    named.push_back(prism_family(2, 1));
    std::set<std::size_t> hit;
    for (const auto &c : rep.classes) {
        int matches = 0;
        for (std::size_t i = 0; i < named.size(); ++i)
            if (weak_equiv(rep.instances[c.representative], named[i])) {
                ++matches;
                hit.insert(i);
            }
        EXPECT_EQ(matches, 1);
    }
    EXPECT_EQ(hit.size(), rep.classes.size());
    // every instance lies in the class of its representative
    for (std::size_t i = 0; i < rep.instances.size(); ++i)
        EXPECT_TRUE(weak_equiv(rep.instances[i], rep.instances[rep.classes[rep.class_of[i]].representative]));
}

TEST(Enumerate, CapIsEnforced) {
    EXPECT_EQ(kind_of([] { enumerate_classes(prism(4), 3, 1e6); }), ErrorKind::SearchSpaceTooLarge);
}

TEST(CountAlpha, Examples) {
    EXPECT_EQ(count_alpha(5, false), 3);
    EXPECT_EQ(count_alpha(4, false), 1);
    EXPECT_EQ(count_alpha(4, true), 2);
    EXPECT_EQ(count_alpha(6, false), 2);
}

TEST(CountAlpha, ClosedForms) {
    const std::vector<int> alpha{2, 1, 3, 2, 4, 2};
    const std::vector<int> alpha_bar{2, 2, 3, 2, 4, 3};
    for (int n = 3; n <= 8; ++n) {
        EXPECT_EQ(alpha_closed_form(n, false), alpha[static_cast<std::size_t>(n - 3)]);
        EXPECT_EQ(alpha_closed_form(n, true), alpha_bar[static_cast<std::size_t>(n - 3)]);
    }
    for (int n = 3; n <= 6; ++n) {
        EXPECT_EQ(count_alpha(n, false), alpha_closed_form(n, false)) << n;
        EXPECT_EQ(count_alpha(n, true), alpha_closed_form(n, true)) << n;
    }
}

TEST(PrismForms, MirrorPairsAndSeparation) {
    for (int n = 3; n <= 6; ++n) {
        std::vector<CanonicalForm> f;
        for (int k = 0; k <= n; ++k)
            f.push_back(canonical_form(prism_family(n, k)));
        for (int k = 0; k <= n; ++k)
            for (int k2 = 0; k2 <= n; ++k2) {
                const bool mirror = k2 == k || k2 == n - k;
                if (n % 2 == 0 && k2 == n - k) {
                    EXPECT_EQ(f[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k2)]);
                }
                if (!mirror && k % 2 == k2 % 2) {
                    EXPECT_NE(f[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k2)]) << n << ": " << k << " " << k2;
                }
            }
    }
}

TEST(Products, TwistsCanonicalizeToTheUntwistedForm) {
    std::mt19937 rng(67);
    for (const auto &dims : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 2}, {1, 1, 1}}) {
        const auto q = product_family(dims);
        const auto form = canonical_form(q);
        for (int t = 0; t < 10; ++t)
            EXPECT_EQ(canonical_form(random_twist(q, rng)), form);
    }
}

TEST(Omniorientation, OrientationFlipNegatesEveryNumber) {
    const auto q = prism_family(2, 1);
    const auto flipped = apply_omniorientation(q, std::vector<int>{1, 1, 1, 1}, -1);
    const auto a = char_numbers(q);
    const auto b = char_numbers(flipped);
    for (const auto &[mon, val] : a)
        EXPECT_EQ(b.at(mon), -val);
    EXPECT_EQ(*classical_numbers(flipped).signature, -2);
}
