#pragma once

// Cohomology presentations, top-degree pairings by fixed-point localization,
// and characteristic-number vectors with a facet-alignment matcher.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quasitoric.hpp"
#include "qtoric/rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

/// Monomial in the degree-2 generators u_0..u_{m-1}, as an exponent vector.
struct Monomial {
    std::vector<int> exponents;

    static Monomial from_facets(int m, std::span<const int> facets) {
        Monomial mon{std::vector<int>(static_cast<std::size_t>(m), 0)};
        for (int f : facets) {
            if (f < 0 || f >= m)
                throw Error(ErrorKind::DimensionMismatch, "facet index " + std::to_string(f) + " out of range");
            ++mon.exponents[static_cast<std::size_t>(f)];
        }
        return mon;
    }

    int degree() const {
        int d = 0;
        for (int e : exponents)
            d += e;
        return d;
    }

    FacetSet support() const {
        FacetSet s = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] > 0)
                s |= FacetSet{1} << i;
        return s;
    }

    /// Facet indices with repetition, ascending.
    FacetList facets() const {
        FacetList out;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            for (int k = 0; k < exponents[i]; ++k)
                out.push_back(static_cast<int>(i));
        return out;
    }

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

/// All monomials of the given degree in m variables, in lexicographic order
/// of their exponent vectors.
inline std::vector<Monomial> monomials_of_degree(int m, int degree) {
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m - 1) {
            e[static_cast<std::size_t>(i)] = left;
            out.push_back(Monomial{e});
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[static_cast<std::size_t>(i)] = k;
            rec(i + 1, left - k);
        }
        e[static_cast<std::size_t>(i)] = 0;
    };
    if (m > 0)
        rec(0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

struct CohomologyPresentation {
    int generators = 0; // m
    int dim = 0;        // n
    std::vector<FacetList> monomial_relations;
    FacetList base;     // facets of the base vertex, refined to the identity block
    FacetList free;     // the remaining facets; their u's form a basis of H^2
    IntMatrix refined;  // row k: -u_{base[k]} = sum_{j in free} refined(k, j) u_j
    std::vector<std::int64_t> betti; // b_0, b_2, ..., b_2n

    /// u_i written in the free generators (coefficients indexed like `free`).
    IntVector linear_form(int i) const {
        IntVector c(free.size(), 0);
        for (std::size_t a = 0; a < free.size(); ++a)
            if (free[a] == i) {
                c[a] = 1;
                return c;
            }
        for (std::size_t k = 0; k < base.size(); ++k)
            if (base[k] == i) {
                for (std::size_t a = 0; a < free.size(); ++a)
                    c[a] = -refined(k, static_cast<std::size_t>(free[a]));
                return c;
            }
        throw Error(ErrorKind::DimensionMismatch, "generator index out of range");
    }
};

inline CohomologyPresentation presentation(const QuasitoricPair &q) {
    CohomologyPresentation p;
    p.generators = q.facet_count();
    p.dim = q.dim();
    p.monomial_relations = minimal_nonfaces(q.polytope());
    p.base = q.polytope().vertex(0);
    for (int j = 0; j < q.facet_count(); ++j)
        if (std::find(p.base.begin(), p.base.end(), j) == p.base.end())
            p.free.push_back(j);
    p.refined = refine_at_vertex(q, p.base);
    p.betti = f_h_vectors(q.polytope()).h;
    return p;
}

/// Exact localization integrator. Each fixed point contributes
/// prod r(i,v) / e(v) with e(v) = sigma(v) * prod of tangent weights, all
/// evaluated at generic integer points t = (1, s, s^2, ...).
class Localizer {
  public:
    static constexpr int kPointCount = 2;

    explicit Localizer(const QuasitoricPair &q) : q_(&q) {
        const int nv = q.polytope().vertex_count();
        frames_.reserve(static_cast<std::size_t>(nv));
        for (int v = 0; v < nv; ++v)
            frames_.push_back(vertex_frame(q, v));
        choose_points();
    }

    const std::vector<VertexFrame> &frames() const noexcept { return frames_; }
    const std::vector<Int> &point_parameters() const noexcept { return params_; }

    /// <mon, [M]>; zero unless deg(mon) = n.
    Int integrate(const Monomial &mon) const {
        if (static_cast<int>(mon.exponents.size()) != q_->facet_count())
            throw Error(ErrorKind::DimensionMismatch, "monomial has wrong number of variables");
        if (mon.degree() != q_->dim())
            return 0;
        std::array<Rational, kPointCount> totals;
        const FacetSet supp = mon.support();
        for (std::size_t v = 0; v < frames_.size(); ++v) {
            if ((q_->polytope().vertex_mask(static_cast<int>(v)) & supp) != supp)
                continue;
            const auto &f = frames_[v];
            for (int t = 0; t < kPointCount; ++t) {
                BigInt num = 1;
                for (std::size_t k = 0; k < f.ordering.size(); ++k) {
                    const int e = mon.exponents[static_cast<std::size_t>(f.ordering[k])];
                    for (int r = 0; r < e; ++r)
                        num *= values_[static_cast<std::size_t>(t)][v][k];
                }
                totals[static_cast<std::size_t>(t)] += make_rational(num, euler_[static_cast<std::size_t>(t)][v]);
            }
        }
        if (totals[0] != totals[1] || !is_integral(totals[0]))
            throw Error(ErrorKind::NonIntegralResult, "localization sum is not a constant integer");
        return to_int(boost::multiprecision::numerator(totals[0]));
    }

    /// sum_v 1/e(v) at evaluation point t; vanishes for n >= 1.
    Rational inverse_euler_sum(int t) const {
        Rational s = 0;
        for (std::size_t v = 0; v < frames_.size(); ++v)
            s += make_rational(BigInt(1), euler_[static_cast<std::size_t>(t)][v]);
        return s;
    }

  private:
    void choose_points() {
        const auto n = static_cast<std::size_t>(q_->dim());
        constexpr Int kMaxTries = 10000;
        for (Int s = 2; static_cast<int>(params_.size()) < kPointCount; ++s) {
            if (s > kMaxTries)
                throw Error(ErrorKind::GenericPointOnHyperplane, "no generic evaluation point found");
            std::vector<BigInt> t(n);
            BigInt pw = 1;
            for (std::size_t i = 0; i < n; ++i) {
                t[i] = pw;
                pw *= s;
            }
            std::vector<std::vector<BigInt>> vals;
            std::vector<BigInt> eul;
            bool generic = true;
            for (const auto &f : frames_) {
                std::vector<BigInt> wv(n);
                BigInt e = f.sigma;
                for (std::size_t k = 0; k < n && generic; ++k) {
                    BigInt x = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        x += BigInt(f.weights(k, i)) * t[i];
                    if (x == 0)
                        generic = false; // on a weight hyperplane; try the next point
                    wv[k] = x;
                    e *= x;
                }
                if (!generic)
                    break;
                vals.push_back(std::move(wv));
                eul.push_back(std::move(e));
            }
            if (!generic)
                continue;
            params_.push_back(s);
            values_.push_back(std::move(vals));
            euler_.push_back(std::move(eul));
        }
    }

    const QuasitoricPair *q_;
    std::vector<VertexFrame> frames_;
    std::vector<Int> params_;
    std::vector<std::vector<std::vector<BigInt>>> values_; // [point][vertex][k]
    std::vector<std::vector<BigInt>> euler_;               // [point][vertex]
};

inline Int integrate(const QuasitoricPair &q, const Monomial &mon) { return Localizer(q).integrate(mon); }

/// Pairings of every degree-n monomial, keyed by exponent vector.
using CharNumberVector = std::map<Monomial, Int>;

inline CharNumberVector char_numbers(const QuasitoricPair &q) {
    const Localizer loc(q);
    CharNumberVector out;
    for (auto &mon : monomials_of_degree(q.facet_count(), q.dim()))
        out.emplace(mon, loc.integrate(mon));
    return out;
}

namespace detail {

inline Monomial permute(const Monomial &mon, std::span<const int> pi) {
    Monomial out{std::vector<int>(mon.exponents.size(), 0)};
    for (std::size_t i = 0; i < mon.exponents.size(); ++i)
        out.exponents[static_cast<std::size_t>(pi[i])] = mon.exponents[i];
    return out;
}

/// Backtracking facet alignment of two characteristic-number vectors. When
/// `signed_match` is set, numbers may also differ by an orientation sign eta
/// and per-facet signs eps, entry mon scaling by eta * prod eps_i^{e_i}.
struct CharNumberMatcher {
    const CharNumberVector &a;
    const CharNumberVector &b;
    int m;
    bool signed_match;

    FacetBijection pi;
    std::vector<int> eps;
    int eta = 1;
    std::vector<std::vector<std::pair<const Monomial *, Int>>> checks; // by the facet completing them
    std::vector<std::multiset<std::pair<int, Int>>> profile_a, profile_b;

    CharNumberMatcher(const CharNumberVector &a_, const CharNumberVector &b_, int m_, bool s)
        : a(a_), b(b_), m(m_), signed_match(s) {
        checks.resize(static_cast<std::size_t>(m));
        for (const auto &[mon, val] : a) {
            int last = 0;
            for (int i = 0; i < m; ++i)
                if (mon.exponents[static_cast<std::size_t>(i)] > 0)
                    last = i;
            checks[static_cast<std::size_t>(last)].emplace_back(&mon, val);
        }
        profile_a = profiles(a);
        profile_b = profiles(b);
    }

    std::vector<std::multiset<std::pair<int, Int>>> profiles(const CharNumberVector &v) const {
        std::vector<std::multiset<std::pair<int, Int>>> out(static_cast<std::size_t>(m));
        for (const auto &[mon, val] : v)
            for (int i = 0; i < m; ++i) {
                const int e = mon.exponents[static_cast<std::size_t>(i)];
                if (e > 0)
                    out[static_cast<std::size_t>(i)].emplace(e, signed_match ? (val < 0 ? -val : val) : val);
            }
        return out;
    }

    bool entry_ok(const Monomial &mon, Int val) const {
        Monomial img{std::vector<int>(static_cast<std::size_t>(m), 0)};
        int sign = eta;
        for (int i = 0; i < m; ++i) {
            const int e = mon.exponents[static_cast<std::size_t>(i)];
            if (e == 0)
                continue; // pi is only assigned up to the last facet of the support
            img.exponents[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = e;
            if (e % 2 == 1)
                sign *= eps[static_cast<std::size_t>(i)];
        }
        return b.at(img) == sign * val;
    }

    bool rec(int i, FacetSet used) {
        if (i == m)
            return true;
        for (int g = 0; g < m; ++g) {
            if (used >> g & 1)
                continue;
            if (profile_a[static_cast<std::size_t>(i)] != profile_b[static_cast<std::size_t>(g)])
                continue;
            pi[static_cast<std::size_t>(i)] = g;
            for (int s : {1, -1}) {
                if (s == -1 && !signed_match)
                    break;
                eps[static_cast<std::size_t>(i)] = s;
                bool ok = true;
                for (const auto &[mon, val] : checks[static_cast<std::size_t>(i)])
                    if (!entry_ok(*mon, val)) {
                        ok = false;
                        break;
                    }
                if (ok && rec(i + 1, used | (FacetSet{1} << g)))
                    return true;
            }
        }
        return false;
    }

    bool run() {
        if (a.size() != b.size())
            return false;
        pi.assign(static_cast<std::size_t>(m), -1);
        eps.assign(static_cast<std::size_t>(m), 1);
        for (int e : {1, -1}) {
            if (e == -1 && !signed_match)
                break;
            eta = e;
            if (rec(0, 0))
                return true;
        }
        return false;
    }
};

} // namespace detail

/// Facet bijection pi with numbers(Q)[mon] = numbers(Q')[pi(mon)] for all mon.
inline std::optional<FacetBijection> char_numbers_match(const CharNumberVector &a, const CharNumberVector &b, int m) {
    detail::CharNumberMatcher matcher(a, b, m, false);
    if (!matcher.run())
        return std::nullopt;
    return matcher.pi;
}

inline std::optional<FacetBijection> char_numbers_match(const QuasitoricPair &q, const QuasitoricPair &q2) {
    if (q.dim() != q2.dim() || q.facet_count() != q2.facet_count())
        return std::nullopt;
    return char_numbers_match(char_numbers(q), char_numbers(q2), q.facet_count());
}

/// Alignment up to a change of omniorientation: facet signs eps and an
/// orientation sign eta with numbers'(pi(mon)) = eta * prod eps_i^{e_i} * numbers(mon).
struct SignedCharMatch {
    FacetBijection bijection;
    std::vector<int> facet_signs;
    int orientation_sign = 1;
};

inline std::optional<SignedCharMatch> char_numbers_match_signed(const CharNumberVector &a, const CharNumberVector &b,
                                                                int m) {
    detail::CharNumberMatcher matcher(a, b, m, true);
    if (!matcher.run())
        return std::nullopt;
    return SignedCharMatch{matcher.pi, matcher.eps, matcher.eta};
}

inline std::optional<SignedCharMatch> char_numbers_match_signed(const QuasitoricPair &q, const QuasitoricPair &q2) {
    if (q.dim() != q2.dim() || q.facet_count() != q2.facet_count())
        return std::nullopt;
    return char_numbers_match_signed(char_numbers(q), char_numbers(q2), q.facet_count());
}

/// Symmetric pairing matrix <u_a u_b> on the free generators (n = 2 only).
inline std::vector<std::vector<Int>> intersection_form(const QuasitoricPair &q) {
    if (q.dim() != 2)
        throw Error(ErrorKind::DimensionUnsupported, "intersection form on H^2 needs real dimension 4");
    const auto pres = presentation(q);
    const Localizer loc(q);
    const std::size_t k = pres.free.size();
    std::vector<std::vector<Int>> s(k, std::vector<Int>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            const std::array<int, 2> f{pres.free[a], pres.free[b]};
            s[a][b] = loc.integrate(Monomial::from_facets(q.facet_count(), f));
        }
    return s;
}

inline int signature(const QuasitoricPair &q) {
    const auto form = intersection_form(q);
    RationalMatrix s(form.size());
    for (std::size_t a = 0; a < form.size(); ++a)
        for (Int x : form[a])
            s[a].emplace_back(x);
    return signature(std::move(s));
}

struct ClassicalNumbers {
    Int p1_pair = 0;          // sum_i <u_i^2, [M]>
    Int c_top_pair = 0;       // sum over square-free degree-n monomials
    std::optional<int> signature; // present for n = 2 only
};

inline ClassicalNumbers classical_numbers(const CharNumberVector &numbers, int n) {
    ClassicalNumbers c;
    for (const auto &[mon, val] : numbers) {
        bool square_free = true;
        int squares = 0;
        for (int e : mon.exponents) {
            if (e > 1)
                square_free = false;
            if (e == 2)
                ++squares;
        }
        if (square_free)
            c.c_top_pair = detail::checked_add(c.c_top_pair, val);
        // <u_i^2, [M]> vanishes for degree reasons unless n = 2
        if (n == 2 && squares == 1)
            c.p1_pair = detail::checked_add(c.p1_pair, val);
    }
    return c;
}

inline ClassicalNumbers classical_numbers(const QuasitoricPair &q) {
    ClassicalNumbers c = classical_numbers(char_numbers(q), q.dim());
    if (q.dim() == 2)
        c.signature = signature(q);
    return c;
}

} // namespace qtoric
