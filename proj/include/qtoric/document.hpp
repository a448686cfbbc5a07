#pragma once

// JSON documents for quasitoric pairs and GKM graphs. Integers outside the
// range exactly representable as a double are written as decimal strings.

#include "qtoric/error.hpp"
#include "qtoric/gkm.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quasitoric.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtoric {

using Json = nlohmann::ordered_json;

inline constexpr Int kJsonSafeInteger = Int{1} << 53;

inline Json int_to_json(Int v) {
    if (v > kJsonSafeInteger || v < -kJsonSafeInteger)
        return Json(std::to_string(v));
    return Json(v);
}

inline Int int_from_json(const Json &j, const char *what) {
    if (j.is_number_integer())
        return j.get<Int>();
    if (j.is_string()) {
        const auto &s = j.get_ref<const std::string &>();
        std::size_t used = 0;
        Int v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == s.size() && used > 0)
            return v;
    }
    throw Error(ErrorKind::InvalidDocument, std::string(what) + ": expected an integer");
}

namespace detail {

inline const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::InvalidDocument, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline int small_int(const Json &j, const char *what) {
    const Int v = int_from_json(j, what);
    if (v < INT32_MIN || v > INT32_MAX)
        throw Error(ErrorKind::InvalidDocument, std::string(what) + ": value out of range");
    return static_cast<int>(v);
}

inline FacetList int_list(const Json &j, const char *what) {
    if (!j.is_array())
        throw Error(ErrorKind::InvalidDocument, std::string(what) + ": expected an array");
    FacetList out;
    for (const auto &x : j)
        out.push_back(small_int(x, what));
    return out;
}

inline IntVector int_vector(const Json &j, const char *what) {
    if (!j.is_array())
        throw Error(ErrorKind::InvalidDocument, std::string(what) + ": expected an array");
    IntVector out;
    for (const auto &x : j)
        out.push_back(int_from_json(x, what));
    return out;
}

inline Json vector_json(std::span<const Int> v) {
    Json a = Json::array();
    for (Int x : v)
        a.push_back(int_to_json(x));
    return a;
}

inline Json list_json(std::span<const int> v) {
    Json a = Json::array();
    for (int x : v)
        a.push_back(x);
    return a;
}

} // namespace detail

struct QuasitoricDocument {
    QuasitoricPair pair;
    std::optional<std::vector<std::string>> labels;
};

inline Json matrix_to_json(const IntMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(detail::vector_json(m.row(i)));
    return rows;
}

inline IntMatrix matrix_from_json(const Json &j, std::size_t rows, std::size_t cols, const char *what) {
    if (!j.is_array() || j.size() != rows)
        throw Error(ErrorKind::InvalidDocument, std::string(what) + ": expected " + std::to_string(rows) + " rows");
    std::vector<IntVector> rs;
    for (const auto &r : j) {
        rs.push_back(detail::int_vector(r, what));
        if (rs.back().size() != cols)
            throw Error(ErrorKind::InvalidDocument,
                        std::string(what) + ": expected rows of length " + std::to_string(cols));
    }
    if (rows == 0)
        return IntMatrix(0, cols);
    return IntMatrix::from_rows(rs);
}

inline Json to_json(const QuasitoricPair &q, const std::optional<std::vector<std::string>> &labels = std::nullopt) {
    Json j;
    j["dim"] = q.dim();
    j["facets"] = q.facet_count();
    Json vs = Json::array();
    for (const auto &v : q.polytope().vertices())
        vs.push_back(detail::list_json(v));
    j["vertices"] = std::move(vs);
    j["lambda"] = matrix_to_json(q.lambda());
    if (labels)
        j["labels"] = *labels;
    return j;
}

inline Json to_json(const QuasitoricDocument &d) { return to_json(d.pair, d.labels); }

/// Parse and validate. Schema problems raise InvalidDocument; combinatorial
/// or lattice problems raise the corresponding validation error.
inline QuasitoricDocument document_from_json(const Json &j) {
    const int n = detail::small_int(detail::field(j, "dim"), "dim");
    const int m = detail::small_int(detail::field(j, "facets"), "facets");
    if (n < 1 || m < 1)
        throw Error(ErrorKind::InvalidDocument, "dim and facets must be positive");
    const Json &jv = detail::field(j, "vertices");
    if (!jv.is_array())
        throw Error(ErrorKind::InvalidDocument, "vertices: expected an array");
    std::vector<FacetList> vs;
    for (const auto &v : jv)
        vs.push_back(detail::int_list(v, "vertices"));
    IntMatrix l = matrix_from_json(detail::field(j, "lambda"), static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                                   "lambda");
    std::optional<std::vector<std::string>> labels;
    if (j.contains("labels")) {
        const Json &jl = j.at("labels");
        if (!jl.is_array() || jl.size() != static_cast<std::size_t>(m))
            throw Error(ErrorKind::InvalidDocument, "labels: expected one name per facet");
        labels.emplace();
        for (const auto &x : jl) {
            if (!x.is_string())
                throw Error(ErrorKind::InvalidDocument, "labels: expected strings");
            labels->push_back(x.get<std::string>());
        }
    }
    SimplePolytope p = validate_polytope(std::move(vs), n, m);
    return QuasitoricDocument{validate_characteristic(std::move(p), std::move(l)), std::move(labels)};
}

inline QuasitoricDocument parse_document(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::InvalidDocument, std::string("malformed JSON: ") + e.what());
    }
    return document_from_json(j);
}

// ---------------------------------------------------------------- GKM graphs

inline Json to_json(const GkmGraph &g) {
    Json j;
    j["dim"] = g.dim;
    j["vertices"] = g.vertex_count;
    if (g.vertex_facets) {
        Json vf = Json::array();
        for (const auto &v : *g.vertex_facets)
            vf.push_back(detail::list_json(v));
        j["vertex_facets"] = std::move(vf);
    }
    Json es = Json::array();
    for (const auto &e : g.edges) {
        Json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["label"] = detail::vector_json(e.label);
        if (e.support)
            je["support"] = detail::list_json(*e.support);
        es.push_back(std::move(je));
    }
    j["edges"] = std::move(es);
    return j;
}

inline GkmGraph gkm_from_json(const Json &j) {
    GkmGraph g;
    g.dim = detail::small_int(detail::field(j, "dim"), "dim");
    g.vertex_count = detail::small_int(detail::field(j, "vertices"), "vertices");
    if (g.dim < 1 || g.vertex_count < 1)
        throw Error(ErrorKind::InvalidDocument, "dim and vertices must be positive");
    if (j.contains("vertex_facets")) {
        const Json &vf = j.at("vertex_facets");
        if (!vf.is_array() || vf.size() != static_cast<std::size_t>(g.vertex_count))
            throw Error(ErrorKind::InvalidDocument, "vertex_facets: expected one entry per vertex");
        g.vertex_facets.emplace();
        for (const auto &v : vf)
            g.vertex_facets->push_back(detail::int_list(v, "vertex_facets"));
    }
    const Json &es = detail::field(j, "edges");
    if (!es.is_array())
        throw Error(ErrorKind::InvalidDocument, "edges: expected an array");
    for (const auto &je : es) {
        GkmEdge e;
        e.a = detail::small_int(detail::field(je, "a"), "edge endpoint");
        e.b = detail::small_int(detail::field(je, "b"), "edge endpoint");
        if (e.a < 0 || e.b < 0 || e.a >= g.vertex_count || e.b >= g.vertex_count)
            throw Error(ErrorKind::InvalidDocument, "edge endpoint out of range");
        e.label = detail::int_vector(detail::field(je, "label"), "label");
        if (e.label.size() != static_cast<std::size_t>(g.dim))
            throw Error(ErrorKind::InvalidDocument, "label length differs from dim");
        if (je.contains("support"))
            e.support = detail::int_list(je.at("support"), "support");
        g.edges.push_back(std::move(e));
    }
    return g;
}

inline GkmGraph parse_gkm(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::InvalidDocument, std::string("malformed JSON: ") + e.what());
    }
    return gkm_from_json(j);
}

} // namespace qtoric
