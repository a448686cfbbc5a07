#pragma once

// Combinatorial simple polytopes given by vertex-facet incidence.
//
// Facets are indexed 0..m-1 and each vertex is the sorted set of the n facets
// containing it. Facet sets are stored as 64-bit masks, so m <= 63.

#include "qtoric/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qtoric {

using FacetSet = std::uint64_t;
using FacetList = std::vector<int>;

/// Facet relabeling: map[j] is the image of facet j.
using FacetBijection = std::vector<int>;

inline FacetSet to_mask(std::span<const int> facets) {
    FacetSet s = 0;
    for (int f : facets)
        s |= FacetSet{1} << f;
    return s;
}

inline FacetList to_list(FacetSet s) {
    FacetList out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

inline int popcount(FacetSet s) { return std::popcount(s); }

struct PolytopeEdge {
    int a = 0;          // vertex index
    int b = 0;          // vertex index
    int dropped_a = 0;  // facet in a but not in b
    int dropped_b = 0;  // facet in b but not in a
    FacetSet support = 0; // the n-1 facets containing the edge
};

class SimplePolytope;
SimplePolytope validate_polytope(std::vector<FacetList> raw, int n, int m);

class SimplePolytope {
  public:
    int dim() const noexcept { return dim_; }
    int facet_count() const noexcept { return facets_; }
    int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }

    /// Vertices sorted lexicographically; vertex 0 is the base vertex.
    const std::vector<FacetList> &vertices() const noexcept { return vertices_; }
    const FacetList &vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    FacetSet vertex_mask(int i) const { return masks_[static_cast<std::size_t>(i)]; }
    const std::vector<FacetSet> &vertex_masks() const noexcept { return masks_; }

    /// Index of the vertex with exactly these facets, if any.
    std::optional<int> find_vertex(FacetSet s) const {
        auto it = index_.find(s);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    const std::vector<PolytopeEdge> &edges() const noexcept { return edges_; }
    const std::vector<int> &incident_edges(int v) const { return incident_[static_cast<std::size_t>(v)]; }

    /// Number of vertices on facet j.
    int facet_degree(int j) const { return degree_[static_cast<std::size_t>(j)]; }

    /// Facets meeting facet j in a nonempty face (j excluded).
    FacetSet neighbours(int j) const { return adjacent_[static_cast<std::size_t>(j)]; }

    friend bool operator==(const SimplePolytope &a, const SimplePolytope &b) {
        return a.dim_ == b.dim_ && a.facets_ == b.facets_ && a.vertices_ == b.vertices_;
    }

  private:
    friend SimplePolytope validate_polytope(std::vector<FacetList> raw, int n, int m);

    int dim_ = 0;
    int facets_ = 0;
    std::vector<FacetList> vertices_;
    std::vector<FacetSet> masks_;
    std::unordered_map<FacetSet, int> index_;
    std::vector<PolytopeEdge> edges_;
    std::vector<std::vector<int>> incident_;
    std::vector<int> degree_;
    std::vector<FacetSet> adjacent_;
};

/// Checks the local simple-polytope conditions (vertex size, unique edge
/// partner per facet, ridges in at most two vertices, connectivity) and
/// returns the normalized polytope. Polytopality itself is not decided.
inline SimplePolytope validate_polytope(std::vector<FacetList> raw, int n, int m) {
    if (n < 1)
        throw Error(ErrorKind::NotSimple, "dimension must be positive");
    if (m < n + 1 || m > 63)
        throw Error(ErrorKind::NotSimple, "facet count " + std::to_string(m) + " out of range");
    SimplePolytope p;
    p.dim_ = n;
    p.facets_ = m;
    for (auto &v : raw) {
        std::sort(v.begin(), v.end());
        if (static_cast<int>(v.size()) != n)
            throw Error(ErrorKind::NotSimple, "vertex with " + std::to_string(v.size()) + " facets in dimension " +
                                                  std::to_string(n));
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw Error(ErrorKind::NotSimple, "vertex lists a facet twice");
        if (v.front() < 0 || v.back() >= m)
            throw Error(ErrorKind::NotSimple, "facet index out of range");
    }
    std::sort(raw.begin(), raw.end());
    if (std::adjacent_find(raw.begin(), raw.end()) != raw.end())
        throw Error(ErrorKind::NotSimple, "duplicate vertex");
    if (raw.empty())
        throw Error(ErrorKind::NotSimple, "no vertices");
    p.vertices_ = std::move(raw);

    const auto nv = p.vertices_.size();
    p.masks_.resize(nv);
    p.degree_.assign(static_cast<std::size_t>(m), 0);
    p.adjacent_.assign(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < nv; ++i) {
        p.masks_[i] = to_mask(p.vertices_[i]);
        p.index_.emplace(p.masks_[i], static_cast<int>(i));
        for (int f : p.vertices_[i]) {
            ++p.degree_[static_cast<std::size_t>(f)];
            p.adjacent_[static_cast<std::size_t>(f)] |= p.masks_[i] & ~(FacetSet{1} << f);
        }
    }
    for (int j = 0; j < m; ++j)
        if (p.degree_[static_cast<std::size_t>(j)] == 0)
            throw Error(ErrorKind::NotSimple, "facet " + std::to_string(j) + " lies on no vertex");

    // ridge -> vertices containing it
    std::unordered_map<FacetSet, std::vector<int>> ridges;
    for (std::size_t i = 0; i < nv; ++i)
        for (int f : p.vertices_[i])
            ridges[p.masks_[i] & ~(FacetSet{1} << f)].push_back(static_cast<int>(i));

    p.incident_.assign(nv, {});
    for (std::size_t i = 0; i < nv; ++i) {
        for (int f : p.vertices_[i]) {
            const FacetSet ridge = p.masks_[i] & ~(FacetSet{1} << f);
            const auto &owners = ridges[ridge];
            if (owners.size() != 2)
                throw Error(ErrorKind::NotSimple, "facet " + std::to_string(f) + " at vertex " + std::to_string(i) +
                                                      " has " + std::to_string(owners.size() - 1) + " edge partners");
            const int other = owners[0] == static_cast<int>(i) ? owners[1] : owners[0];
            if (other < static_cast<int>(i))
                continue;
            PolytopeEdge e;
            e.a = static_cast<int>(i);
            e.b = other;
            e.dropped_a = f;
            e.dropped_b = std::countr_zero(p.masks_[static_cast<std::size_t>(other)] & ~ridge);
            e.support = ridge;
            p.edges_.push_back(e);
        }
    }
    for (std::size_t k = 0; k < p.edges_.size(); ++k) {
        p.incident_[static_cast<std::size_t>(p.edges_[k].a)].push_back(static_cast<int>(k));
        p.incident_[static_cast<std::size_t>(p.edges_[k].b)].push_back(static_cast<int>(k));
    }

    std::vector<char> seen(nv, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int k : p.incident_[static_cast<std::size_t>(v)]) {
            const auto &e = p.edges_[static_cast<std::size_t>(k)];
            const int w = e.a == v ? e.b : e.a;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != nv)
        throw Error(ErrorKind::Disconnected, "edge graph is disconnected");
    return p;
}

/// True iff the facets in s have a common vertex.
inline bool nonempty_face(const SimplePolytope &p, FacetSet s) {
    for (FacetSet v : p.vertex_masks())
        if ((v & s) == s)
            return true;
    return false;
}

inline bool nonempty_face(const SimplePolytope &p, std::span<const int> s) { return nonempty_face(p, to_mask(s)); }

/// Every nonempty face, as the set of facets containing it (P itself is 0).
inline std::vector<FacetSet> all_faces(const SimplePolytope &p) {
    std::unordered_set<FacetSet> faces;
    for (FacetSet v : p.vertex_masks()) {
        // enumerate submasks of v
        for (FacetSet s = v;; s = (s - 1) & v) {
            faces.insert(s);
            if (s == 0)
                break;
        }
    }
    std::vector<FacetSet> out(faces.begin(), faces.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Inclusion-minimal facet sets with empty intersection, sorted by size then
/// lexicographically.
inline std::vector<FacetList> minimal_nonfaces(const SimplePolytope &p) {
    const auto faces = all_faces(p);
    const std::unordered_set<FacetSet> is_face(faces.begin(), faces.end());
    std::set<FacetSet> found;
    const FacetSet all = (FacetSet{1} << p.facet_count()) - 1;
    for (FacetSet f : faces) {
        for (FacetSet rest = all & ~f; rest; rest &= rest - 1) {
            const FacetSet s = f | (rest & (~rest + 1));
            if (is_face.contains(s) || found.contains(s))
                continue;
            bool minimal = true;
            for (FacetSet t = s; t; t &= t - 1)
                if (!is_face.contains(s & ~(t & (~t + 1)))) {
                    minimal = false;
                    break;
                }
            if (minimal)
                found.insert(s);
        }
    }
    std::vector<FacetList> out;
    for (FacetSet s : found)
        out.push_back(to_list(s));
    std::sort(out.begin(), out.end(), [](const FacetList &a, const FacetList &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

struct FaceNumbers {
    std::vector<std::int64_t> f; // f[k] = number of codimension-k faces
    std::vector<std::int64_t> h;
};

inline FaceNumbers f_h_vectors(const SimplePolytope &p) {
    const int n = p.dim();
    FaceNumbers out;
    out.f.assign(static_cast<std::size_t>(n + 1), 0);
    for (FacetSet s : all_faces(p))
        ++out.f[static_cast<std::size_t>(popcount(s))];
    auto binom = [](std::int64_t a, std::int64_t b) {
        std::int64_t r = 1;
        for (std::int64_t i = 1; i <= b; ++i)
            r = r * (a - b + i) / i;
        return r;
    };
    out.h.assign(static_cast<std::size_t>(n + 1), 0);
    for (int i = 0; i <= n; ++i) {
        std::int64_t hi = 0;
        for (int k = 0; k <= i; ++k) {
            const std::int64_t term = binom(n - k, i - k) * out.f[static_cast<std::size_t>(k)];
            hi += ((i - k) % 2 == 0) ? term : -term;
        }
        out.h[static_cast<std::size_t>(i)] = hi;
    }
    return out;
}

inline const std::vector<PolytopeEdge> &edge_graph(const SimplePolytope &p) { return p.edges(); }

/// Apply a facet relabeling; the result is re-validated and re-sorted.
inline SimplePolytope relabel(const SimplePolytope &p, std::span<const int> perm) {
    std::vector<FacetList> vs;
    vs.reserve(p.vertices().size());
    for (const auto &v : p.vertices()) {
        FacetList w;
        for (int f : v)
            w.push_back(perm[static_cast<std::size_t>(f)]);
        vs.push_back(std::move(w));
    }
    return validate_polytope(std::move(vs), p.dim(), p.facet_count());
}

/// Per-facet admissibility filter for isomorphism searches: may facet a of
/// the source map to facet b of the target?
using FacetFilter = std::function<bool(int, int)>;

/// Enumerates every facet bijection P -> Q carrying vertices onto vertices.
/// The visitor returns false to stop early. Pruning uses facet degrees,
/// pairwise adjacency (ridge/face structure) and completed vertices.
template <class Visitor>
void for_each_isomorphism(const SimplePolytope &p, const SimplePolytope &q, Visitor &&visit,
                          const FacetFilter &filter = {}) {
    if (p.dim() != q.dim() || p.facet_count() != q.facet_count() || p.vertex_count() != q.vertex_count())
        return;
    const int m = p.facet_count();

    // assignment order: grow from the base vertex along adjacency
    std::vector<int> order;
    FacetSet placed = 0;
    for (int f : p.vertex(0)) {
        order.push_back(f);
        placed |= FacetSet{1} << f;
    }
    while (static_cast<int>(order.size()) < m) {
        int best = -1, best_score = -1;
        for (int f = 0; f < m; ++f) {
            if (placed >> f & 1)
                continue;
            const int score = popcount(p.neighbours(f) & placed);
            if (score > best_score) {
                best = f;
                best_score = score;
            }
        }
        order.push_back(best);
        placed |= FacetSet{1} << best;
    }

    // vertices of P that become complete once order[k] is assigned
    std::vector<std::vector<FacetSet>> completes(static_cast<std::size_t>(m));
    {
        std::vector<int> pos(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
        for (FacetSet v : p.vertex_masks()) {
            int last = 0;
            for (int f : to_list(v))
                last = std::max(last, pos[static_cast<std::size_t>(f)]);
            completes[static_cast<std::size_t>(last)].push_back(v);
        }
    }

    FacetBijection map(static_cast<std::size_t>(m), -1);
    FacetSet used = 0;
    bool stop = false;

    std::function<void(int)> rec = [&](int k) {
        if (stop)
            return;
        if (k == m) {
            if (!visit(static_cast<const FacetBijection &>(map)))
                stop = true;
            return;
        }
        const int f = order[static_cast<std::size_t>(k)];
        for (int g = 0; g < m && !stop; ++g) {
            if (used >> g & 1)
                continue;
            if (p.facet_degree(f) != q.facet_degree(g))
                continue;
            if (filter && !filter(f, g))
                continue;
            bool ok = true;
            for (int t = 0; t < k && ok; ++t) {
                const int f2 = order[static_cast<std::size_t>(t)];
                const int g2 = map[static_cast<std::size_t>(f2)];
                ok = ((p.neighbours(f) >> f2) & 1) == ((q.neighbours(g) >> g2) & 1);
            }
            if (!ok)
                continue;
            map[static_cast<std::size_t>(f)] = g;
            for (FacetSet v : completes[static_cast<std::size_t>(k)]) {
                FacetSet img = 0;
                for (FacetSet s = v; s; s &= s - 1)
                    img |= FacetSet{1} << map[static_cast<std::size_t>(std::countr_zero(s))];
                if (!q.find_vertex(img)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used |= FacetSet{1} << g;
                rec(k + 1);
                used &= ~(FacetSet{1} << g);
            }
            map[static_cast<std::size_t>(f)] = -1;
        }
    };
    rec(0);
}

inline std::vector<FacetBijection> isomorphisms(const SimplePolytope &p, const SimplePolytope &q,
                                                const FacetFilter &filter = {}) {
    std::vector<FacetBijection> out;
    for_each_isomorphism(
        p, q,
        [&](const FacetBijection &b) {
            out.push_back(b);
            return true;
        },
        filter);
    return out;
}

/// Canonical relabeling of P together with every facet bijection realizing it.
///
/// The canonical labeling minimizes the colex-sorted vertex list (vertices
/// compared by their largest facet first). Labels are handed out in
/// increasing order, so the vertices completed so far always form a prefix
/// of the final list, which is what makes prefix pruning sound.
struct CanonicalLabeling {
    SimplePolytope reference;
    std::vector<FacetBijection> maps; // each maps facets of P onto facets of reference
};

inline CanonicalLabeling canonical_labeling(const SimplePolytope &p) {
    const int m = p.facet_count();
    const int n = p.dim();
    using Key = std::vector<int>; // vertex as facets sorted descending

    auto colex_less = [](const Key &a, const Key &b) { return a < b; };

    std::vector<Key> best;
    bool have_best = false;
    std::vector<FacetBijection> maps;
    std::vector<Key> cur;
    FacetBijection label(static_cast<std::size_t>(m), -1);
    FacetSet assigned = 0;
    long version = 0;

    // per-facet vertices, for completion checks
    std::vector<std::vector<int>> on_facet(static_cast<std::size_t>(m));
    for (int v = 0; v < p.vertex_count(); ++v)
        for (int f : p.vertex(v))
            on_facet[static_cast<std::size_t>(f)].push_back(v);

    // state: 0 = prefix equals best's prefix, 1 = prefix strictly better
    std::function<void(int, int, long)> rec = [&](int k, int state, long marked) {
        // a replaced best came from inside this subtree, so the prefix now equals it
        auto current_state = [&] { return state == 1 && marked == version ? 1 : 0; };
        if (k == m) {
            state = current_state();
            if (!have_best || state == 1) {
                best = cur;
                have_best = true;
                maps.clear();
                ++version;
            }
            maps.push_back(label);
            return;
        }
        for (int f = 0; f < m; ++f) {
            if (assigned >> f & 1)
                continue;
            if (k < n) {
                // the first n labels must sit on a common vertex
                const FacetSet s = assigned | (FacetSet{1} << f);
                bool inside = false;
                for (FacetSet v : p.vertex_masks())
                    if ((v & s) == s) {
                        inside = true;
                        break;
                    }
                if (!inside)
                    continue;
            }
            label[static_cast<std::size_t>(f)] = k;
            assigned |= FacetSet{1} << f;
            const std::size_t before = cur.size();
            std::vector<Key> group;
            for (int v : on_facet[static_cast<std::size_t>(f)]) {
                if ((p.vertex_mask(v) & ~assigned) != 0)
                    continue;
                Key key;
                for (int g : p.vertex(v))
                    key.push_back(label[static_cast<std::size_t>(g)]);
                std::sort(key.rbegin(), key.rend());
                group.push_back(std::move(key));
            }
            std::sort(group.begin(), group.end(), colex_less);
            for (auto &g : group)
                cur.push_back(std::move(g));

            int child_state = current_state();
            long child_mark = marked;
            bool prune = false;
            if (have_best && child_state == 0) {
                for (std::size_t i = before; i < cur.size(); ++i) {
                    if (colex_less(cur[i], best[i])) {
                        child_state = 1;
                        child_mark = version;
                        break;
                    }
                    if (colex_less(best[i], cur[i])) {
                        prune = true;
                        break;
                    }
                }
                // best completed a vertex here that we did not
                if (!prune && child_state == 0 && best.size() > cur.size() && best[cur.size()].front() <= k)
                    prune = true;
            }
            if (!prune)
                rec(k + 1, child_state, child_mark);
            cur.resize(before);
            assigned &= ~(FacetSet{1} << f);
            label[static_cast<std::size_t>(f)] = -1;
        }
    };
    rec(0, 0, 0);
    return CanonicalLabeling{relabel(p, maps.front()), std::move(maps)};
}

/// Per-vertex orientation signs for the sorted facet ordering of each vertex.
struct OrientationAssignment {
    std::vector<int> sign; // +-1 per vertex index
    int base = 0;
};

namespace detail {

inline int permutation_sign(std::vector<int> v) {
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j])
                s = -s;
    return s;
}

template <class Shuffle>
OrientationAssignment orient(const SimplePolytope &p, Shuffle &&shuffle) {
    const auto nv = static_cast<std::size_t>(p.vertex_count());
    OrientationAssignment o;
    o.sign.assign(nv, 0);
    o.base = 0;
    o.sign[0] = 1;
    std::queue<int> todo;
    todo.push(0);
    while (!todo.empty()) {
        const int v = todo.front();
        todo.pop();
        std::vector<int> inc = p.incident_edges(v);
        shuffle(inc);
        for (int k : inc) {
            const auto &e = p.edges()[static_cast<std::size_t>(k)];
            const bool forward = e.a == v;
            const int w = forward ? e.b : e.a;
            const int drop = forward ? e.dropped_a : e.dropped_b;
            const int add = forward ? e.dropped_b : e.dropped_a;
            // replace `drop` by `add` in place, then sort
            std::vector<int> tuple = p.vertex(v);
            std::replace(tuple.begin(), tuple.end(), drop, add);
            const int sw = -o.sign[static_cast<std::size_t>(v)] * permutation_sign(tuple);
            auto &slot = o.sign[static_cast<std::size_t>(w)];
            if (slot == 0) {
                slot = sw;
                todo.push(w);
            } else if (slot != sw) {
                throw Error(ErrorKind::NonOrientable,
                            "contradictory orientation at vertex " + std::to_string(w));
            }
        }
    }
    return o;
}

} // namespace detail

/// Orientation signs propagated from the base vertex: crossing an edge
/// replaces one facet in place and flips the sign of the ordered tuple.
inline OrientationAssignment orientation_assignment(const SimplePolytope &p) {
    return detail::orient(p, [](std::vector<int> &) {});
}

/// Same assignment, visiting neighbours in a random order.
template <class URBG>
OrientationAssignment orientation_assignment(const SimplePolytope &p, URBG &rng) {
    return detail::orient(p, [&](std::vector<int> &v) { std::shuffle(v.begin(), v.end(), rng); });
}

/// Sign of an ordering of a vertex relative to its sorted ordering.
inline int ordering_sign(std::span<const int> ordering) {
    return detail::permutation_sign(std::vector<int>(ordering.begin(), ordering.end()));
}

/// +1 when the base-vertex orientation of relabel(p, pi) agrees with the one
/// transported from p along pi, -1 otherwise.
inline int relabel_orientation_sign(const SimplePolytope &p, std::span<const int> pi) {
    const SimplePolytope q = relabel(p, pi);
    const auto op = orientation_assignment(p);
    const auto oq = orientation_assignment(q);
    const FacetList &f = p.vertex(0);
    std::vector<int> image;
    FacetSet s = 0;
    for (int i : f) {
        image.push_back(pi[static_cast<std::size_t>(i)]);
        s |= FacetSet{1} << image.back();
    }
    const int w = *q.find_vertex(s);
    return op.sign[0] * oq.sign[static_cast<std::size_t>(w)] * ordering_sign(image);
}

} // namespace qtoric
