#pragma once

// Exact rational arithmetic and dense elimination over Q.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace qtoric {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// num/den with the sign moved to the numerator (the two-argument constructor
/// of older Boost releases rejects negative denominators).
inline Rational make_rational(BigInt num, BigInt den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline bool is_integral(const Rational &r) { return boost::multiprecision::denominator(r) == 1; }

inline Int to_int(const BigInt &v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw Error(ErrorKind::Overflow, "value exceeds 64-bit range");
    return static_cast<Int>(v);
}

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row (rows beyond the rank are cleared to zero and dropped).
inline std::vector<std::size_t> rref(RationalMatrix &a) {
    std::vector<std::size_t> pivots;
    if (a.empty())
        return pivots;
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[r], a[p]);
        const Rational inv = 1 / a[r][c];
        for (auto &x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    return pivots;
}

/// Reduce v modulo the row space of an RREF matrix.
inline void reduce_by(std::vector<Rational> &v, const RationalMatrix &rref_rows, const std::vector<std::size_t> &pivots) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Rational f = v[pivots[i]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] -= f * rref_rows[i][j];
    }
}

/// Unique solution of the square system a x = b, or nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(const RationalMatrix &a, const std::vector<Rational> &b) {
    const std::size_t n = a.size();
    RationalMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i)
        aug[i].push_back(b[i]);
    const auto pivots = rref(aug);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
        return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = aug[i][n];
    return x;
}

/// Signature (positive minus negative inertia) of a symmetric rational matrix,
/// by congruence diagonalization.
inline int signature(RationalMatrix s) {
    const std::size_t n = s.size();
    int sig = 0;
    std::vector<char> done(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && s[i][i] != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonal entries vanish; mix in an off-diagonal pair
            std::size_t a = n, b = n;
            for (std::size_t i = 0; i < n && a == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && s[i][j] != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a == n)
                break; // remaining block is zero
            // row/col a += row/col b
            for (std::size_t k = 0; k < n; ++k)
                s[a][k] += s[b][k];
            for (std::size_t k = 0; k < n; ++k)
                s[k][a] += s[k][b];
            p = a;
        }
        const Rational d = s[p][p];
        sig += d > 0 ? 1 : -1;
        done[p] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || s[i][p] == 0)
                continue;
            const Rational f = s[i][p] / d;
            for (std::size_t j = 0; j < n; ++j)
                s[i][j] -= f * s[p][j];
            for (std::size_t j = 0; j < n; ++j)
                s[j][i] -= f * s[j][p];
        }
    }
    return sig;
}

} // namespace qtoric
