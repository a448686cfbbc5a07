#pragma once

// Exact integer linear algebra over Z: determinants, unimodular inverses,
// Smith normal form with transforms, saturated kernels, primitive vectors.
// Every operation is checked; overflow raises ErrorKind::Overflow.

#include "qtoric/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

namespace detail {

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer addition overflow");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer subtraction overflow");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer multiplication overflow");
    return r;
}

inline Int narrow(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw Error(ErrorKind::Overflow, "integer result out of 64-bit range");
    return static_cast<Int>(v);
}

inline Int abs_checked(Int a) {
    if (a == INT64_MIN)
        throw Error(ErrorKind::Overflow, "abs of INT64_MIN");
    return a < 0 ? -a : a;
}

} // namespace detail

/// Dense row-major integer matrix.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows*cols");
    }

    /// Build from nested rows; all rows must have equal length.
    static IntMatrix from_rows(const std::vector<IntVector> &rows) {
        if (rows.empty())
            return {};
        IntMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<IntVector> &cols) {
        if (cols.empty())
            return {};
        IntMatrix m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_)
                throw Error(ErrorKind::DimensionMismatch, "ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Int> entries() const noexcept { return data_; }

    IntVector row(std::size_t i) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntVector column(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, std::span<const Int> c) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = c[i];
    }

    /// Submatrix made of the given columns, in the given order.
    IntMatrix select_columns(std::span<const int> which) const {
        IntMatrix m(rows_, which.size());
        for (std::size_t k = 0; k < which.size(); ++k)
            for (std::size_t i = 0; i < rows_; ++i)
                m(i, k) = (*this)(i, static_cast<std::size_t>(which[k]));
        return m;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, Int factor) {
        if (factor == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(target, j) = detail::checked_add((*this)(target, j), detail::checked_mul(factor, (*this)(source, j)));
    }

    /// col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, Int factor) {
        if (factor == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, target) = detail::checked_add((*this)(i, target), detail::checked_mul(factor, (*this)(i, source)));
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = detail::checked_sub(0, (*this)(i, j));
    }

    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = detail::checked_sub(0, (*this)(i, j));
    }

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? "," : "") << (*this)(i, j);
            os << ']';
        }
        os << ']';
        return os.str();
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = detail::checked_add(c(i, j), detail::checked_mul(aik, b(k, j)));
        }
    return c;
}

inline IntVector operator*(const IntMatrix &a, std::span<const Int> v) {
    if (a.cols() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    IntVector r(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r[i] = detail::checked_add(r[i], detail::checked_mul(a(i, j), v[j]));
    return r;
}

inline IntVector operator*(const IntMatrix &a, const IntVector &v) { return a * std::span<const Int>(v); }

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "dot product length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = detail::checked_add(s, detail::checked_mul(a[i], b[i]));
    return s;
}

inline Int gcd_of(std::span<const Int> v) {
    Int g = 0;
    for (Int x : v)
        g = std::gcd(g, detail::abs_checked(x));
    return g;
}

inline bool is_primitive(std::span<const Int> v) { return gcd_of(v) == 1; }

/// Flip v so that its first nonzero entry is positive. Returns the sign applied.
inline int sign_normalize(std::span<Int> v) {
    for (Int x : v) {
        if (x == 0)
            continue;
        if (x > 0)
            return 1;
        for (Int &y : v)
            y = detail::checked_sub(0, y);
        return -1;
    }
    return 1;
}

inline IntVector sign_normalized(IntVector v) {
    sign_normalize(v);
    return v;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix &m) {
    if (!m.square())
        throw Error(ErrorKind::NonSquare, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                const __int128 num = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
                a(i, j) = detail::narrow(num / prev);
            }
        prev = a(k, k);
    }
    return detail::checked_mul(sign, a(n - 1, n - 1));
}

/// Smith normal form: U * M * V = D with U, V unimodular, D diagonal with
/// nonnegative entries each dividing the next.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix &m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    SmithForm s{IntMatrix::identity(r), m, IntMatrix::identity(c), 0};
    IntMatrix &D = s.D;
    IntMatrix &U = s.U;
    IntMatrix &V = s.V;

    auto row_op = [&](std::size_t target, std::size_t source, Int f) {
        D.add_row_multiple(target, source, f);
        U.add_row_multiple(target, source, f);
    };
    auto col_op = [&](std::size_t target, std::size_t source, Int f) {
        D.add_col_multiple(target, source, f);
        V.add_col_multiple(target, source, f);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        U.swap_rows(a, b);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        V.swap_cols(a, b);
    };

    const std::size_t lim = std::min(r, c);
    std::size_t t = 0;
    for (; t < lim; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = r, pj = c;
        Int best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (D(i, j) != 0 && (best == 0 || detail::abs_checked(D(i, j)) < best)) {
                    best = detail::abs_checked(D(i, j));
                    pi = i;
                    pj = j;
                }
        if (best == 0)
            break;
        row_swap(t, pi);
        col_swap(t, pj);

        for (;;) {
            bool swapped = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D(i, t) == 0)
                    continue;
                row_op(i, t, -(D(i, t) / D(t, t)));
                if (D(i, t) != 0) {
                    row_swap(t, i);
                    swapped = true;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D(t, j) == 0)
                    continue;
                col_op(j, t, -(D(t, j) / D(t, t)));
                if (D(t, j) != 0) {
                    col_swap(t, j);
                    swapped = true;
                }
            }
            if (swapped)
                continue;
            // divisibility: pivot must divide the whole trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_op(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed)
                break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    s.rank = t;
    return s;
}

/// Integral inverse of a matrix with determinant +-1.
inline IntMatrix unimodular_inverse(const IntMatrix &m) {
    if (!m.square())
        throw Error(ErrorKind::NonSquare, "inverse of a non-square matrix");
    const Int d = det(m);
    if (d != 1 && d != -1)
        throw Error(ErrorKind::NotUnimodular, "determinant " + std::to_string(d) + " is not +-1");
    // U M V = I  =>  M^{-1} = V U
    const SmithForm s = smith_normal_form(m);
    return s.V * s.U;
}

/// Basis of the saturated sublattice {v in Z^r : <w, v> = 0 for every w}.
inline std::vector<IntVector> integer_kernel(const std::vector<IntVector> &covectors, std::size_t rank) {
    std::vector<IntVector> basis;
    if (covectors.empty()) {
        for (std::size_t i = 0; i < rank; ++i) {
            IntVector e(rank, 0);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    for (const auto &w : covectors)
        if (w.size() != rank)
            throw Error(ErrorKind::DimensionMismatch, "covector length differs from ambient rank");
    const SmithForm s = smith_normal_form(IntMatrix::from_rows(covectors));
    for (std::size_t j = s.rank; j < rank; ++j)
        basis.push_back(s.V.column(j));
    return basis;
}

/// The primitive generator of a rank-one lattice, first nonzero entry positive.
inline IntVector primitive_generator(const std::vector<IntVector> &basis) {
    if (basis.size() != 1)
        throw Error(ErrorKind::RankNotOne, "expected a rank-1 basis, got " + std::to_string(basis.size()) + " vectors");
    IntVector v = basis.front();
    const Int g = gcd_of(v);
    if (g == 0)
        throw Error(ErrorKind::RankNotOne, "zero vector does not span a rank-1 lattice");
    for (Int &x : v)
        x /= g;
    sign_normalize(v);
    return v;
}

} // namespace qtoric
