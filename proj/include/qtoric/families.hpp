#pragma once

// Standard examples (projective spaces, products, prisms, Hirzebruch
// surfaces), the k invariant of prism manifolds, bounded enumeration of
// characteristic matrices over a fixed polytope, and class counting.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quasitoric.hpp"
#include "qtoric/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qtoric {

// ---------------------------------------------------------------- polytopes

/// Delta^n with facets 0..n; every n-subset is a vertex.
inline SimplePolytope simplex(int n) {
    if (n < 1)
        throw Error(ErrorKind::DimensionMismatch, "simplex dimension must be at least 1");
    std::vector<FacetList> vs;
    for (int skip = n; skip >= 0; --skip) {
        FacetList v;
        for (int j = 0; j <= n; ++j)
            if (j != skip)
                v.push_back(j);
        vs.push_back(std::move(v));
    }
    return validate_polytope(std::move(vs), n, n + 1);
}

/// Product of simplices; block i owns facets offset_i .. offset_i + n_i.
inline SimplePolytope simplex_product(std::span<const int> dims) {
    std::vector<FacetList> vs{{}};
    int offset = 0;
    int n = 0;
    for (int d : dims) {
        if (d < 1)
            throw Error(ErrorKind::DimensionMismatch, "product factor dimension must be at least 1");
        std::vector<FacetList> next;
        for (const auto &v : vs)
            for (int skip = 0; skip <= d; ++skip) {
                FacetList w = v;
                for (int j = 0; j <= d; ++j)
                    if (j != skip)
                        w.push_back(offset + j);
                next.push_back(std::move(w));
            }
        vs = std::move(next);
        offset += d + 1;
        n += d;
    }
    return validate_polytope(std::move(vs), n, offset);
}

/// Delta^1 x Delta^{n-1} with ends E0 = 0, E1 = 1 and sides S_i = 1 + i.
inline SimplePolytope prism(int n) {
    if (n < 2)
        throw Error(ErrorKind::DimensionMismatch, "prism dimension must be at least 2");
    std::vector<FacetList> vs;
    for (int end = 0; end < 2; ++end)
        for (int skip = 1; skip <= n; ++skip) {
            FacetList v{end};
            for (int i = 1; i <= n; ++i)
                if (i != skip)
                    v.push_back(1 + i);
            vs.push_back(std::move(v));
        }
    return validate_polytope(std::move(vs), n, n + 2);
}

/// The square with facets 0,1,2,3 in cyclic order.
inline SimplePolytope square() { return validate_polytope({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 2, 4); }

// ---------------------------------------------------------------- manifolds

inline QuasitoricPair projective_space(int n) {
    const auto un = static_cast<std::size_t>(n < 1 ? 1 : n);
    IntMatrix l(un, un + 1);
    for (std::size_t i = 0; i < un; ++i) {
        l(i, i) = 1;
        l(i, un) = -1;
    }
    return validate_characteristic(simplex(n), std::move(l));
}

inline QuasitoricPair product_family(std::span<const int> dims) {
    SimplePolytope p = simplex_product(dims);
    IntMatrix l(static_cast<std::size_t>(p.dim()), static_cast<std::size_t>(p.facet_count()));
    std::size_t row = 0, col = 0;
    for (int d : dims) {
        const auto ud = static_cast<std::size_t>(d);
        for (std::size_t i = 0; i < ud; ++i) {
            l(row + i, col + i) = 1;
            l(row + i, col + ud) = -1;
        }
        row += ud;
        col += ud + 1;
    }
    return validate_characteristic(std::move(p), std::move(l));
}

inline QuasitoricPair product_family(std::initializer_list<int> dims) {
    return product_family(std::span<const int>(dims.begin(), dims.size()));
}

/// lambda(E0) = (1..1), lambda(E1) = (-1 x k, 1 x (n-k)), lambda(S_i) = -e_i.
inline QuasitoricPair prism_family(int n, int k) {
    if (n < 2 || k < 0 || k > n)
        throw Error(ErrorKind::DimensionMismatch, "prism family needs n >= 2 and 0 <= k <= n");
    const auto un = static_cast<std::size_t>(n);
    IntMatrix l(un, un + 2);
    for (std::size_t i = 0; i < un; ++i) {
        l(i, 0) = 1;
        l(i, 1) = static_cast<Int>(i) < k ? -1 : 1;
        l(i, 2 + i) = -1;
    }
    return validate_characteristic(prism(n), std::move(l));
}

/// Columns (1,0), (0,1), (-1,a), (0,-1) over the square.
inline QuasitoricPair hirzebruch(Int a) {
    return validate_characteristic(square(), IntMatrix::from_columns({{1, 0}, {0, 1}, {-1, a}, {0, -1}}));
}

// ---------------------------------------------------------------- twists

/// Product of random elementary operations, sign flips and swaps.
template <class Rng>
IntMatrix random_unimodular(std::size_t n, Rng &rng, int steps = 12) {
    IntMatrix a = IntMatrix::identity(n);
    if (n == 0)
        return a;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<Int> factor(-2, 2);
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pick(rng), j = pick(rng);
        switch (kind(rng)) {
        case 0:
        case 1:
            if (i != j)
                a.add_row_multiple(i, j, factor(rng));
            break;
        case 2:
            a.negate_row(i);
            break;
        default:
            a.swap_rows(i, j);
        }
    }
    return a;
}

struct TwistData {
    FacetBijection pi;
    IntMatrix matrix;
    std::vector<int> signs;
};

template <class Rng>
TwistData random_twist_data(const QuasitoricPair &q, Rng &rng) {
    TwistData t;
    t.pi.resize(static_cast<std::size_t>(q.facet_count()));
    std::iota(t.pi.begin(), t.pi.end(), 0);
    std::shuffle(t.pi.begin(), t.pi.end(), rng);
    t.matrix = random_unimodular(static_cast<std::size_t>(q.dim()), rng);
    std::bernoulli_distribution coin(0.5);
    for (int j = 0; j < q.facet_count(); ++j)
        t.signs.push_back(coin(rng) ? 1 : -1);
    return t;
}

template <class Rng>
QuasitoricPair random_twist(const QuasitoricPair &q, Rng &rng) {
    const TwistData t = random_twist_data(q, rng);
    return twist(q, t.pi, t.matrix, t.signs);
}

/// A change of omniorientation: facet signs and a global orientation sign.
/// The orientation flip is realized by a reflection of the lattice, which
/// negates every local sign while leaving the pairings otherwise unchanged.
inline QuasitoricPair apply_omniorientation(const QuasitoricPair &q, std::span<const int> facet_signs, int orientation) {
    FacetBijection id(static_cast<std::size_t>(q.facet_count()));
    std::iota(id.begin(), id.end(), 0);
    IntMatrix a = IntMatrix::identity(static_cast<std::size_t>(q.dim()));
    if (orientation < 0)
        a(0, 0) = -1;
    return twist(q, id, a, facet_signs);
}

// ---------------------------------------------------------------- k invariant

/// The invariant k of a manifold over Delta^1 x Delta^{n-1}, n >= 3. Writing
/// each side class as u_j = alpha_j u_E0 + beta_j u_E1 in H^2, k counts sides
/// with alpha_j beta_j = -1. Sign changes of the end classes swap k and n-k,
/// so the result is normalized: the odd member of {k, n-k} for n odd, the
/// smaller one for n even.
inline int prism_k_invariant(const QuasitoricPair &q) {
    const int n = q.dim();
    const int m = q.facet_count();
    if (n < 3 || m != n + 2)
        throw Error(ErrorKind::WrongPolytope, "expected Delta^1 x Delta^{n-1} with n >= 3");
    const SimplePolytope &p = q.polytope();
    if (isomorphisms(p, prism(n)).empty())
        throw Error(ErrorKind::WrongPolytope, "polytope is not combinatorially a prism over a simplex");

    int e0 = -1, e1 = -1;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (!(p.neighbours(a) >> b & 1)) {
                if (e0 != -1)
                    throw Error(ErrorKind::WrongPolytope, "more than one disjoint facet pair");
                e0 = a;
                e1 = b;
            }
    if (e0 == -1)
        throw Error(ErrorKind::WrongPolytope, "no disjoint facet pair");

    // columns: Lambda^T (n of them), then e_E0, e_E1; solve for each side u_j
    const auto um = static_cast<std::size_t>(m);
    RationalMatrix sys(um, std::vector<Rational>(um));
    for (std::size_t j = 0; j < um; ++j)
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            sys[j][i] = q.lambda()(i, j);
    sys[static_cast<std::size_t>(e0)][um - 2] = 1;
    sys[static_cast<std::size_t>(e1)][um - 1] = 1;

    int k = 0;
    for (int j = 0; j < m; ++j) {
        if (j == e0 || j == e1)
            continue;
        std::vector<Rational> rhs(um);
        rhs[static_cast<std::size_t>(j)] = 1;
        const auto x = solve_square(sys, rhs);
        if (!x)
            throw Error(ErrorKind::NotConnectedSumCohomology, "end classes do not span H^2");
        const Rational &alpha = (*x)[um - 2];
        const Rational &beta = (*x)[um - 1];
        if (abs(alpha) != 1 || abs(beta) != 1)
            throw Error(ErrorKind::NotConnectedSumCohomology,
                        "side class is not +-u_E0 +- u_E1 (facet " + std::to_string(j) + ")");
        if (alpha * beta == -1)
            ++k;
    }
    if (n % 2 == 1)
        return k % 2 == 1 ? k : n - k;
    return std::min(k, n - k);
}

// ---------------------------------------------------------------- enumeration

struct ClassEntry {
    CanonicalForm form;
    std::int64_t multiplicity = 0;
    std::size_t representative = 0; // index into instances
};

struct ClassificationReport {
    std::vector<ClassEntry> classes;        // sorted by canonical form
    std::vector<QuasitoricPair> instances;  // enumeration order
    std::vector<std::size_t> class_of;      // instance -> class index
    std::int64_t total = 0;
};

namespace detail {

/// Sign-normalized primitive vectors in [-B, B]^n, lexicographic.
inline std::vector<IntVector> bounded_primitive_vectors(int n, Int bound) {
    std::vector<IntVector> out;
    IntVector v(static_cast<std::size_t>(n), -bound);
    for (;;) {
        IntVector w = v;
        if (gcd_of(w) == 1 && sign_normalize(w) == 1)
            out.push_back(w);
        std::size_t i = v.size();
        while (i > 0 && v[i - 1] == bound)
            v[--i] = -bound;
        if (i == 0)
            break;
        ++v[i - 1];
    }
    return out;
}

} // namespace detail

inline constexpr double kDefaultEnumerationCap = 1e9;

/// Every characteristic matrix over P with entries in [-B, B] and
/// sign-normalized columns, grouped by canonical form.
inline ClassificationReport enumerate_classes(const SimplePolytope &p, Int bound, double cap = kDefaultEnumerationCap) {
    if (bound < 1)
        throw Error(ErrorKind::DimensionMismatch, "bound must be at least 1");
    const int n = p.dim();
    const int m = p.facet_count();
    const auto cands = detail::bounded_primitive_vectors(n, bound);
    if (std::pow(static_cast<double>(cands.size()), m) > cap)
        throw Error(ErrorKind::SearchSpaceTooLarge,
                    std::to_string(cands.size()) + "^" + std::to_string(m) + " candidate matrices exceed the cap");

    // vertices checked once their largest facet is assigned
    std::vector<std::vector<int>> check_at(static_cast<std::size_t>(m));
    for (int v = 0; v < p.vertex_count(); ++v)
        check_at[static_cast<std::size_t>(p.vertex(v).back())].push_back(v);

    ClassificationReport rep;
    IntMatrix l(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    std::function<void(int)> rec = [&](int j) {
        if (j == m) {
            rep.instances.push_back(validate_characteristic(p, l));
            return;
        }
        for (const auto &c : cands) {
            l.set_column(static_cast<std::size_t>(j), c);
            bool ok = true;
            for (int v : check_at[static_cast<std::size_t>(j)]) {
                const Int d = det(l.select_columns(p.vertex(v)));
                if (d != 1 && d != -1) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                rec(j + 1);
        }
    };
    rec(0);

    std::map<CanonicalForm, std::size_t> index;
    std::vector<CanonicalForm> forms;
    forms.reserve(rep.instances.size());
    for (std::size_t i = 0; i < rep.instances.size(); ++i) {
        forms.push_back(canonical_form(rep.instances[i]));
        index.emplace(forms.back(), i);
    }
    std::size_t c = 0;
    std::map<CanonicalForm, std::size_t> class_index;
    for (auto &[form, first] : index) {
        class_index.emplace(form, c++);
        rep.classes.push_back(ClassEntry{form, 0, first});
    }
    rep.class_of.resize(rep.instances.size());
    for (std::size_t i = 0; i < rep.instances.size(); ++i) {
        const std::size_t k = class_index.at(forms[i]);
        rep.class_of[i] = k;
        ++rep.classes[k].multiplicity;
    }
    rep.total = static_cast<std::int64_t>(rep.instances.size());
    return rep;
}

// ---------------------------------------------------------------- counting

/// Weak-equivalence classes among prism_family(n, k) for k odd (bar = false)
/// or k even (bar = true).
inline int count_alpha(int n, bool bar) {
    if (n < 3)
        throw Error(ErrorKind::DimensionMismatch, "count_alpha needs n >= 3");
    std::set<CanonicalForm> forms;
    for (int k = bar ? 0 : 1; k <= n; k += 2)
        forms.insert(canonical_form(prism_family(n, k)));
    return static_cast<int>(forms.size());
}

inline int alpha_closed_form(int n, bool bar) {
    if (n % 2 == 1)
        return (n + 1) / 2;
    if (n % 4 == 0)
        return bar ? n / 4 + 1 : n / 4;
    return (n + 2) / 4;
}

} // namespace qtoric
