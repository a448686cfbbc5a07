#pragma once

// GKM graphs: the edge graph of P labelled by the tangent weights of the
// invariant 2-spheres, reconstruction of the characteristic columns from the
// labels, and labelled-graph congruence.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quasitoric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qtoric {

struct GkmEdge {
    int a = 0;
    int b = 0;
    IntVector label;                 // primitive, first nonzero entry positive
    std::optional<FacetList> support; // the n-1 facets containing the edge
};

struct GkmGraph {
    int dim = 0;
    int vertex_count = 0;
    std::optional<std::vector<FacetList>> vertex_facets; // facets through each vertex
    std::vector<GkmEdge> edges;
};

inline GkmGraph build_gkm(const QuasitoricPair &q) {
    const SimplePolytope &p = q.polytope();
    GkmGraph g;
    g.dim = q.dim();
    g.vertex_count = p.vertex_count();
    g.vertex_facets = p.vertices();

    std::vector<VertexFrame> frames;
    frames.reserve(static_cast<std::size_t>(p.vertex_count()));
    for (int v = 0; v < p.vertex_count(); ++v)
        frames.push_back(vertex_frame(q, v));

    auto label_at = [&](int v, int dropped) {
        const auto &f = frames[static_cast<std::size_t>(v)];
        const auto k = static_cast<std::size_t>(
            std::find(f.ordering.begin(), f.ordering.end(), dropped) - f.ordering.begin());
        return sign_normalized(f.weights.row(k));
    };

    for (const auto &e : p.edges()) {
        IntVector la = label_at(e.a, e.dropped_a);
        const IntVector lb = label_at(e.b, e.dropped_b);
        if (la != lb)
            throw Error(ErrorKind::InconsistentWeights,
                        "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " has endpoint labels that differ");
        g.edges.push_back(GkmEdge{e.a, e.b, std::move(la), to_list(e.support)});
    }
    return g;
}

namespace detail {

inline const std::vector<FacetList> &require_facets(const GkmGraph &g) {
    if (!g.vertex_facets)
        throw Error(ErrorKind::InvalidDocument, "GKM graph carries no facet data");
    return *g.vertex_facets;
}

inline int gkm_facet_count(const GkmGraph &g) {
    int m = 0;
    for (const auto &v : require_facets(g))
        for (int f : v)
            m = std::max(m, f + 1);
    return m;
}

/// Support of an edge: stored, or else the common facets of its endpoints.
inline FacetSet edge_support(const GkmGraph &g, const GkmEdge &e) {
    if (e.support)
        return to_mask(*e.support);
    const auto &vf = require_facets(g);
    return to_mask(vf.at(static_cast<std::size_t>(e.a))) & to_mask(vf.at(static_cast<std::size_t>(e.b)));
}

} // namespace detail

/// Columns of the characteristic matrix up to sign, one per facet, as the
/// primitive generator of the annihilator of the labels on that facet.
inline IntMatrix reconstruct_lambda(const GkmGraph &g) {
    const int m = detail::gkm_facet_count(g);
    const auto n = static_cast<std::size_t>(g.dim);
    IntMatrix out(n, static_cast<std::size_t>(m));
    for (int f = 0; f < m; ++f) {
        std::vector<IntVector> labels;
        for (const auto &e : g.edges)
            if (detail::edge_support(g, e) >> f & 1)
                labels.push_back(e.label);
        const auto kernel = integer_kernel(labels, n);
        if (kernel.size() != 1)
            throw Error(ErrorKind::RankNotOne, "labels on facet " + std::to_string(f) + " leave a kernel of rank " +
                                                   std::to_string(kernel.size()));
        out.set_column(static_cast<std::size_t>(f), primitive_generator(kernel));
    }
    return out;
}

struct GkmWitness {
    std::vector<int> vertex_map; // vertex id in G -> vertex id in G'
    FacetBijection facet_map;
};

/// Graph isomorphism matching labels exactly and facet supports to facet
/// supports. Graphs without facet data are refused.
inline std::optional<GkmWitness> gkm_equiv(const GkmGraph &g, const GkmGraph &g2) {
    const auto &vf = detail::require_facets(g);
    const auto &vf2 = detail::require_facets(g2);
    if (g.dim != g2.dim || g.vertex_count != g2.vertex_count || g.edges.size() != g2.edges.size())
        return std::nullopt;
    const int m = detail::gkm_facet_count(g);
    if (m != detail::gkm_facet_count(g2))
        return std::nullopt;
    const SimplePolytope p = validate_polytope(vf, g.dim, m);
    const SimplePolytope p2 = validate_polytope(vf2, g2.dim, m);

    // labels per facet as a multiset, used to prune facet assignments
    auto facet_labels = [m](const GkmGraph &gr) {
        std::vector<std::vector<IntVector>> out(static_cast<std::size_t>(m));
        for (const auto &e : gr.edges) {
            const FacetSet s = detail::edge_support(gr, e);
            for (int f = 0; f < m; ++f)
                if (s >> f & 1)
                    out[static_cast<std::size_t>(f)].push_back(e.label);
        }
        for (auto &v : out)
            std::sort(v.begin(), v.end());
        return out;
    };
    const auto fl = facet_labels(g);
    const auto fl2 = facet_labels(g2);

    // vertex ids of each graph by facet set
    auto id_by_mask = [](const std::vector<FacetList> &facets) {
        std::map<FacetSet, int> out;
        for (std::size_t i = 0; i < facets.size(); ++i)
            out.emplace(to_mask(facets[i]), static_cast<int>(i));
        return out;
    };
    const auto ids2 = id_by_mask(vf2);
    std::map<std::pair<int, int>, IntVector> labels2;
    for (const auto &e : g2.edges) {
        labels2[{e.a, e.b}] = e.label;
        labels2[{e.b, e.a}] = e.label;
    }

    std::optional<GkmWitness> found;
    for_each_isomorphism(
        p, p2,
        [&](const FacetBijection &pi) {
            std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count));
            for (std::size_t v = 0; v < vf.size(); ++v) {
                FacetSet img = 0;
                for (int f : vf[v])
                    img |= FacetSet{1} << pi[static_cast<std::size_t>(f)];
                vmap[v] = ids2.at(img);
            }
            for (const auto &e : g.edges) {
                auto it = labels2.find({vmap[static_cast<std::size_t>(e.a)], vmap[static_cast<std::size_t>(e.b)]});
                if (it == labels2.end() || it->second != e.label)
                    return true; // keep searching
            }
            found = GkmWitness{std::move(vmap), pi};
            return false;
        },
        [&](int a, int b) { return fl[static_cast<std::size_t>(a)] == fl2[static_cast<std::size_t>(b)]; });
    return found;
}

} // namespace qtoric
