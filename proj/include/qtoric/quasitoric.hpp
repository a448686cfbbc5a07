#pragma once

// Characteristic matrices over simple polytopes: validation, refined form,
// vertex frames, canonical forms and weak/strong equivalence.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

/// A validated (polytope, characteristic matrix) pair. Column j of the
/// matrix is the signed primitive vector of facet j.
class QuasitoricPair {
  public:
    const SimplePolytope &polytope() const noexcept { return polytope_; }
    const IntMatrix &lambda() const noexcept { return lambda_; }
    const OrientationAssignment &orientation() const noexcept { return orientation_; }
    int dim() const noexcept { return polytope_.dim(); }
    int facet_count() const noexcept { return polytope_.facet_count(); }

    IntVector column(int j) const { return lambda_.column(static_cast<std::size_t>(j)); }

    friend bool operator==(const QuasitoricPair &a, const QuasitoricPair &b) {
        return a.polytope_ == b.polytope_ && a.lambda_ == b.lambda_;
    }

  private:
    friend QuasitoricPair validate_characteristic(SimplePolytope p, IntMatrix lambda);
    QuasitoricPair(SimplePolytope p, IntMatrix l, OrientationAssignment o)
        : polytope_(std::move(p)), lambda_(std::move(l)), orientation_(std::move(o)) {}

    SimplePolytope polytope_;
    IntMatrix lambda_;
    OrientationAssignment orientation_;
};

/// Checks primitivity of every column and |det| = 1 at every vertex.
inline QuasitoricPair validate_characteristic(SimplePolytope p, IntMatrix lambda) {
    const auto n = static_cast<std::size_t>(p.dim());
    const auto m = static_cast<std::size_t>(p.facet_count());
    if (lambda.rows() != n || lambda.cols() != m)
        throw Error(ErrorKind::DimensionMismatch, "characteristic matrix must be " + std::to_string(n) + "x" +
                                                      std::to_string(m));
    for (std::size_t j = 0; j < m; ++j)
        if (!is_primitive(lambda.column(j)))
            throw Error(ErrorKind::NonPrimitiveColumn, "column " + std::to_string(j) + " is not primitive");
    for (int v = 0; v < p.vertex_count(); ++v) {
        const Int d = det(lambda.select_columns(p.vertex(v)));
        if (d != 1 && d != -1) {
            std::string facets;
            for (int f : p.vertex(v))
                facets += (facets.empty() ? "" : ",") + std::to_string(f);
            throw Error(ErrorKind::SingularVertex, "vertex {" + facets + "} has determinant " + std::to_string(d));
        }
    }
    OrientationAssignment o = orientation_assignment(p);
    return QuasitoricPair(std::move(p), std::move(lambda), std::move(o));
}

/// Left-multiply by the inverse of the ordered vertex columns, turning them
/// into the identity block.
inline IntMatrix refine_at_vertex(const QuasitoricPair &q, std::span<const int> ordering) {
    const IntMatrix a = unimodular_inverse(q.lambda().select_columns(ordering));
    return a * q.lambda();
}

struct VertexFrame {
    int vertex = 0;
    FacetList ordering;  // facets of the vertex in the order used
    IntMatrix weights;   // row k is dual to the column of ordering[k]
    int sigma = 1;       // local sign, independent of the ordering
};

/// Weights and local sign at a vertex, for a given ordering of its facets.
inline VertexFrame vertex_frame(const QuasitoricPair &q, int v, std::span<const int> ordering) {
    VertexFrame f;
    f.vertex = v;
    f.ordering.assign(ordering.begin(), ordering.end());
    const IntMatrix lv = q.lambda().select_columns(ordering);
    f.weights = unimodular_inverse(lv);
    const int orient = q.orientation().sign[static_cast<std::size_t>(v)] * ordering_sign(ordering);
    f.sigma = orient * static_cast<int>(det(lv));
    return f;
}

inline VertexFrame vertex_frame(const QuasitoricPair &q, int v) { return vertex_frame(q, v, q.polytope().vertex(v)); }

/// Relabel facets by pi, act by A on the left, and flip column signs:
/// the result has column pi(j) = signs[j] * A * lambda_j.
inline QuasitoricPair twist(const QuasitoricPair &q, std::span<const int> pi, const IntMatrix &a,
                            std::span<const int> signs) {
    const IntMatrix al = a * q.lambda();
    IntMatrix out(al.rows(), al.cols());
    for (std::size_t j = 0; j < al.cols(); ++j)
        for (std::size_t i = 0; i < al.rows(); ++i)
            out(i, static_cast<std::size_t>(pi[j])) = detail::checked_mul(signs[j], al(i, j));
    return validate_characteristic(relabel(q.polytope(), pi), std::move(out));
}

/// Byte-comparable normal form of a pair under facet relabeling, GL(n,Z) and
/// column signs.
struct CanonicalForm {
    std::string bytes;
    friend auto operator<=>(const CanonicalForm &, const CanonicalForm &) = default;
};

namespace detail {

/// Everything needed to rebuild a witness from a canonical form:
/// canonical = transform * (lambda relabeled by labeling) * diag(col_signs).
struct CanonicalSearch {
    CanonicalForm form;
    IntMatrix matrix;
    SimplePolytope reference;
    FacetBijection labeling; // facet of input -> canonical label
    IntMatrix transform;
    std::vector<int> col_signs; // indexed by canonical label
};

inline std::string encode(const SimplePolytope &p, const IntMatrix &m) {
    std::ostringstream os;
    os << p.dim() << ';' << p.facet_count() << ';';
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
        os << (v ? "|" : "");
        for (std::size_t k = 0; k < p.vertices()[v].size(); ++k)
            os << (k ? "," : "") << p.vertices()[v][k];
    }
    os << ';';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "|" : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
    }
    return os.str();
}

/// Minimizes over row signs D the row-major matrix normalize(D * r), where
/// normalize makes each column's first nonzero entry positive. Row 0 does
/// not depend on D; row i only on D_i and earlier signs.
inline void best_row_signs(const IntMatrix &r, std::vector<Int> &best, std::vector<int> &best_d) {
    const std::size_t n = r.rows();
    const std::size_t m = r.cols();
    std::vector<std::size_t> lead(m);
    std::vector<Int> lead_sign(m);
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t i = 0;
        while (r(i, c) == 0)
            ++i;
        lead[c] = i;
        lead_sign[c] = r(i, c) > 0 ? 1 : -1;
    }
    std::vector<int> d(n, 1);
    std::vector<Int> cur(n * m, 0);
    bool have = false;

    auto fill_row = [&](std::size_t i, Int *out) {
        for (std::size_t c = 0; c < m; ++c)
            out[c] = lead[c] <= i ? d[i] * d[lead[c]] * lead_sign[c] * r(i, c) : 0;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (!have || std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) {
                best = cur;
                best_d = d;
                have = true;
            }
            return;
        }
        if (i == 0) {
            fill_row(0, cur.data());
            rec(1);
            return;
        }
        std::vector<Int> plus(m), minus(m);
        d[i] = 1;
        fill_row(i, plus.data());
        d[i] = -1;
        fill_row(i, minus.data());
        const bool tie = plus == minus;
        const bool plus_first = !tie && std::lexicographical_compare(plus.begin(), plus.end(), minus.begin(), minus.end());
        for (int choice : {1, -1}) {
            if (!tie && ((choice == 1) != plus_first))
                continue;
            d[i] = choice;
            std::copy(choice == 1 ? plus.begin() : minus.begin(), choice == 1 ? plus.end() : minus.end(),
                      cur.begin() + static_cast<std::ptrdiff_t>(i * m));
            rec(i + 1);
        }
        d[i] = 1;
    };
    rec(0);
}

inline CanonicalSearch canonical_search(const QuasitoricPair &q) {
    const CanonicalLabeling cl = canonical_labeling(q.polytope());
    const auto n = static_cast<std::size_t>(q.dim());
    const auto m = static_cast<std::size_t>(q.facet_count());
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0); // {0..n-1} is always the first canonical vertex

    CanonicalSearch out{CanonicalForm{}, IntMatrix(), cl.reference, {}, IntMatrix(), {}};
    std::vector<Int> best;
    bool have = false;
    IntMatrix relabeled(n, m);
    for (const auto &pi : cl.maps) {
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                relabeled(i, static_cast<std::size_t>(pi[j])) = q.lambda()(i, j);
        const IntMatrix a = unimodular_inverse(relabeled.select_columns(base));
        const IntMatrix r = a * relabeled;
        // row 0 is independent of row signs: cheap rejection
        if (have) {
            bool worse = false;
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t i = 0;
                while (r(i, c) == 0)
                    ++i;
                const Int e = i == 0 ? detail::abs_checked(r(0, c)) : 0;
                if (e != best[c]) {
                    worse = e > best[c];
                    break;
                }
            }
            if (worse)
                continue;
        }
        std::vector<Int> cand;
        std::vector<int> d;
        best_row_signs(r, cand, d);
        if (have && !std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
            continue;
        best = std::move(cand);
        have = true;
        out.labeling = pi;
        IntMatrix t = a;
        for (std::size_t i = 0; i < n; ++i)
            if (d[i] < 0)
                t.negate_row(i);
        out.transform = std::move(t);
        const IntMatrix tr = out.transform * relabeled;
        out.col_signs.assign(m, 1);
        for (std::size_t c = 0; c < m; ++c) {
            IntVector col = tr.column(c);
            out.col_signs[c] = sign_normalize(col);
        }
    }
    out.matrix = IntMatrix(n, m, best);
    out.form.bytes = encode(out.reference, out.matrix);
    return out;
}

} // namespace detail

inline CanonicalForm canonical_form(const QuasitoricPair &q) { return detail::canonical_search(q).form; }

/// Witness of weak equivalence: column bijection(j) of the target equals
/// signs[j] * matrix * column j of the source, and bijection carries
/// vertices onto vertices.
struct WeakWitness {
    FacetBijection bijection;
    IntMatrix matrix;
    std::vector<int> signs;
};

struct StrongWitness {
    FacetBijection bijection;
    std::vector<int> signs;
};

inline bool maps_vertices(const SimplePolytope &p, const SimplePolytope &q, std::span<const int> pi) {
    if (p.dim() != q.dim() || p.facet_count() != q.facet_count() || p.vertex_count() != q.vertex_count())
        return false;
    for (const auto &v : p.vertices()) {
        FacetSet img = 0;
        for (int f : v)
            img |= FacetSet{1} << pi[static_cast<std::size_t>(f)];
        if (!q.find_vertex(img))
            return false;
    }
    return true;
}

inline bool verify_weak_witness(const QuasitoricPair &q, const QuasitoricPair &q2, const WeakWitness &w) {
    const auto m = static_cast<std::size_t>(q.facet_count());
    if (w.bijection.size() != m || w.signs.size() != m)
        return false;
    if (!maps_vertices(q.polytope(), q2.polytope(), w.bijection))
        return false;
    const Int d = det(w.matrix);
    if (d != 1 && d != -1)
        return false;
    for (std::size_t j = 0; j < m; ++j) {
        IntVector img = w.matrix * q.column(static_cast<int>(j));
        for (Int &x : img)
            x *= w.signs[j];
        if (img != q2.column(w.bijection[j]))
            return false;
    }
    return true;
}

inline bool verify_strong_witness(const QuasitoricPair &q, const QuasitoricPair &q2, const StrongWitness &w) {
    return verify_weak_witness(q, q2, WeakWitness{w.bijection, IntMatrix::identity(static_cast<std::size_t>(q.dim())), w.signs});
}

inline std::optional<WeakWitness> weak_equiv(const QuasitoricPair &q, const QuasitoricPair &q2) {
    if (q.dim() != q2.dim() || q.facet_count() != q2.facet_count() ||
        q.polytope().vertex_count() != q2.polytope().vertex_count())
        return std::nullopt;
    const auto s1 = detail::canonical_search(q);
    const auto s2 = detail::canonical_search(q2);
    if (s1.form != s2.form)
        return std::nullopt;
    // T1 L1 P1 E1 = T2 L2 P2 E2  =>  L2 column = (T2^-1 T1) L1 column * E1 E2
    const auto m = static_cast<std::size_t>(q.facet_count());
    WeakWitness w;
    w.matrix = unimodular_inverse(s2.transform) * s1.transform;
    std::vector<int> inverse2(m);
    for (std::size_t j = 0; j < m; ++j)
        inverse2[static_cast<std::size_t>(s2.labeling[j])] = static_cast<int>(j);
    w.bijection.resize(m);
    w.signs.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto c = static_cast<std::size_t>(s1.labeling[j]);
        w.bijection[j] = inverse2[c];
        w.signs[j] = s1.col_signs[c] * s2.col_signs[c];
    }
    if (!verify_weak_witness(q, q2, w))
        throw Error(ErrorKind::InconsistentWeights, "canonical forms agree but the derived witness does not verify");
    return w;
}

/// Equivalence with the torus fixed: a facet bijection with columns equal up
/// to sign.
inline std::optional<StrongWitness> strong_equiv(const QuasitoricPair &q, const QuasitoricPair &q2) {
    if (q.dim() != q2.dim() || q.facet_count() != q2.facet_count())
        return std::nullopt;
    auto same_up_to_sign = [&](int a, int b) {
        return sign_normalized(q.column(a)) == sign_normalized(q2.column(b));
    };
    std::optional<StrongWitness> found;
    for_each_isomorphism(
        q.polytope(), q2.polytope(),
        [&](const FacetBijection &pi) {
            StrongWitness w{pi, std::vector<int>(pi.size(), 1)};
            for (std::size_t j = 0; j < pi.size(); ++j)
                w.signs[j] = q.column(static_cast<int>(j)) == q2.column(pi[j]) ? 1 : -1;
            found = std::move(w);
            return false;
        },
        same_up_to_sign);
    return found;
}

} // namespace qtoric
