#include "qtoric/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtoric;

namespace {

Int cofactor_det(const IntMatrix &m) {
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j)
                    minor(i - 1, cc++) = m(i, c);
        const Int term = m(0, j) * cofactor_det(minor);
        s += (j % 2 == 0) ? term : -term;
    }
    return s;
}

IntMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937 &rng, Int lo = -4, Int hi = 4) {
    std::uniform_int_distribution<Int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937 &rng) {
    IntMatrix a = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<Int> f(-3, 3);
    std::uniform_int_distribution<int> steps(1, 20);
    const int s = steps(rng);
    for (int k = 0; k < s; ++k) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i != j)
            a.add_row_multiple(i, j, f(rng));
    }
    return a;
}

} // namespace

TEST(Det, Examples) {
    EXPECT_EQ(det(IntMatrix::identity(3)), 1);
    EXPECT_EQ(det(IntMatrix::from_rows({{1, -1}, {1, 0}})), 1);
    EXPECT_EQ(det(IntMatrix::from_rows({{0, 2}, {1, 1}})), -2);
}

TEST(Det, NonSquareRejected) {
    try {
        det(IntMatrix(2, 3));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonSquare);
    }
}

TEST(Det, AgreesWithCofactorExpansion) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        const IntMatrix m = random_matrix(n, n, rng);
        ASSERT_EQ(det(m), cofactor_det(m)) << m.to_string();
    }
}

TEST(Det, ZeroPivotNeedsRowSwap) {
    EXPECT_EQ(det(IntMatrix::from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})), -1);
    EXPECT_EQ(det(IntMatrix::from_rows({{0, 1}, {0, 3}})), 0);
}

TEST(Det, OverflowIsReported) {
    const Int big = Int{1} << 40;
    try {
        det(IntMatrix::from_rows({{big, 0}, {0, big}}));
        FAIL() << "expected an overflow";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Overflow);
    }
}

TEST(UnimodularInverse, Examples) {
    EXPECT_EQ(unimodular_inverse(IntMatrix::identity(3)), IntMatrix::identity(3));
    const IntMatrix m = IntMatrix::from_rows({{1, -1}, {0, -1}});
    EXPECT_EQ(unimodular_inverse(m), m);
    try {
        unimodular_inverse(IntMatrix::from_rows({{2, 0}, {0, 1}}));
        FAIL() << "expected NotUnimodular";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
    }
}

TEST(UnimodularInverse, RandomProductsOfElementaryOperations) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        const IntMatrix m = random_unimodular(n, rng);
        const Int d = det(m);
        ASSERT_TRUE(d == 1 || d == -1);
        ASSERT_EQ(unimodular_inverse(m) * m, IntMatrix::identity(n)) << m.to_string();
        ASSERT_EQ(m * unimodular_inverse(m), IntMatrix::identity(n));
    }
}

TEST(SmithNormalForm, TransformsAndDivisibility) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t r = 1 + static_cast<std::size_t>(trial % 4);
        const std::size_t c = 1 + static_cast<std::size_t>((trial / 4) % 4);
        const IntMatrix m = random_matrix(r, c, rng, -6, 6);
        const SmithForm s = smith_normal_form(m);
        ASSERT_EQ(s.U * m * s.V, s.D);
        ASSERT_TRUE(det(s.U) == 1 || det(s.U) == -1);
        ASSERT_TRUE(det(s.V) == 1 || det(s.V) == -1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) {
                    ASSERT_EQ(s.D(i, j), 0);
                }
        for (std::size_t i = 0; i < s.rank; ++i) {
            ASSERT_GT(s.D(i, i), 0);
            if (i + 1 < s.rank) {
                ASSERT_EQ(s.D(i + 1, i + 1) % s.D(i, i), 0);
            }
        }
        for (std::size_t i = s.rank; i < std::min(r, c); ++i)
            ASSERT_EQ(s.D(i, i), 0);
    }
}

TEST(IntegerKernel, Examples) {
    EXPECT_EQ(integer_kernel({{0, 1}}, 2), (std::vector<IntVector>{{1, 0}}));
    EXPECT_TRUE(integer_kernel({{1, 0}, {0, 1}}, 2).empty());
    const auto k = integer_kernel({{1, -1}}, 2);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(primitive_generator(k), (IntVector{1, 1}));
    EXPECT_EQ(integer_kernel({}, 2).size(), 2u);
}

TEST(IntegerKernel, SaturatedAgainstBruteForce) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t r = 2 + static_cast<std::size_t>(trial % 2);
        const std::size_t rows = 1 + static_cast<std::size_t>(trial % 2);
        const IntMatrix w = random_matrix(rows, r, rng, -3, 3);
        std::vector<IntVector> cov;
        for (std::size_t i = 0; i < rows; ++i)
            cov.push_back(w.row(i));
        const auto basis = integer_kernel(cov, r);
        for (const auto &v : basis)
            for (const auto &c : cov)
                ASSERT_EQ(dot(c, v), 0);

        // every orthogonal vector in a box is an integer combination of the basis
        const IntMatrix b = basis.empty() ? IntMatrix(r, 0) : IntMatrix::from_columns(basis);
        const Int box = 4;
        IntVector v(r, -box);
        for (;;) {
            bool orth = true;
            for (const auto &c : cov)
                orth = orth && dot(c, v) == 0;
            if (orth) {
                // solve b x = v over Z via SNF of b
                if (basis.empty()) {
                    for (Int x : v)
                        ASSERT_EQ(x, 0);
                } else {
                    const SmithForm s = smith_normal_form(b);
                    const IntVector uv = s.U * v;
                    for (std::size_t i = 0; i < r; ++i) {
                        const Int d = i < s.rank ? s.D(i, i) : 0;
                        if (d == 0)
                            ASSERT_EQ(uv[i], 0);
                        else
                            ASSERT_EQ(uv[i] % d, 0) << "kernel basis is not saturated";
                    }
                }
            }
            std::size_t i = r;
            while (i > 0 && v[i - 1] == box)
                v[--i] = -box;
            if (i == 0)
                break;
            ++v[i - 1];
        }
    }
}

TEST(PrimitiveGenerator, Examples) {
    EXPECT_EQ(primitive_generator({{2, 2}}), (IntVector{1, 1}));
    EXPECT_EQ(primitive_generator({{0, -3}}), (IntVector{0, 1}));
    for (const auto &bad : std::vector<std::vector<IntVector>>{{}, {{1, 0}, {0, 1}}, {{0, 0}}}) {
        try {
            primitive_generator(bad);
            FAIL() << "expected RankNotOne";
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::RankNotOne);
        }
    }
}

TEST(SignNormalize, FirstNonzeroBecomesPositive) {
    IntVector v{0, -2, 3};
    EXPECT_EQ(sign_normalize(v), -1);
    EXPECT_EQ(v, (IntVector{0, 2, -3}));
    EXPECT_EQ(sign_normalize(v), 1);
}
