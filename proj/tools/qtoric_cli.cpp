// Command-line front end. Every subcommand prints one JSON document on
// stdout. Exit codes: 0 success, 1 usage, 2 invalid data, 3 internal error.

#include "qtoric/qtoric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using qtoric::Json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_error(const std::string &kind, const std::string &message) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

qtoric::QuasitoricDocument load(const std::string &path) { return qtoric::parse_document(read_file(path)); }

void print(const Json &j) { std::cout << j.dump(2) << '\n'; }

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw UsageError("bad integer '" + tok + "'");
        } catch (const std::logic_error &) {
            throw UsageError("bad integer '" + tok + "'");
        }
    }
    return out;
}

Json int_list(const std::vector<int> &v) {
    Json a = Json::array();
    for (int x : v)
        a.push_back(x);
    return a;
}

Json weak_witness_json(const qtoric::WeakWitness &w) {
    Json j;
    j["bijection"] = int_list(w.bijection);
    j["matrix"] = qtoric::matrix_to_json(w.matrix);
    j["signs"] = int_list(w.signs);
    return j;
}

Json report_json(const qtoric::ClassificationReport &r) {
    Json j;
    j["total"] = r.total;
    j["class_count"] = r.classes.size();
    Json cs = Json::array();
    for (const auto &c : r.classes) {
        Json e;
        e["canonical_form"] = c.form.bytes;
        e["multiplicity"] = c.multiplicity;
        e["representative"] = qtoric::to_json(r.instances[c.representative]);
        cs.push_back(std::move(e));
    }
    j["classes"] = std::move(cs);
    return j;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quasitoric manifold toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (affects speed only)")->check(CLI::PositiveNumber);

    std::string file_a, file_b, monomial;
    int fam_n = 2, fam_k = 0;
    qtoric::Int fam_a = 0;
    std::string fam_dims = "1,1";
    qtoric::Int bound = 1;
    double cap = qtoric::kDefaultEnumerationCap;
    bool bar = false;

    auto *validate = app.add_subcommand("validate", "Validate a document");
    validate->add_option("file", file_a)->required();
    bool echo = false;
    validate->add_flag("--echo", echo, "Also print the normalized document");
    auto *betti = app.add_subcommand("betti", "Betti numbers b_0, b_2, ..., b_2n");
    betti->add_option("file", file_a)->required();
    auto *integ = app.add_subcommand("integrate", "Pair a monomial with the fundamental class");
    integ->add_option("file", file_a)->required();
    integ->add_option("--monomial", monomial, "Facet indices with repetition, e.g. 0,0,3")->required();
    auto *charnum = app.add_subcommand("charnum", "All characteristic numbers");
    charnum->add_option("file", file_a)->required();
    auto *classical = app.add_subcommand("classical", "p1, top Chern and signature pairings");
    classical->add_option("file", file_a)->required();
    auto *canon = app.add_subcommand("canon", "Canonical form under weak equivalence");
    canon->add_option("file", file_a)->required();
    auto *equiv = app.add_subcommand("equiv", "Weak equivariant equivalence");
    equiv->add_option("a", file_a)->required();
    equiv->add_option("b", file_b)->required();
    auto *sequiv = app.add_subcommand("strong-equiv", "Strong equivariant equivalence");
    sequiv->add_option("a", file_a)->required();
    sequiv->add_option("b", file_b)->required();
    auto *gkm = app.add_subcommand("gkm", "Labelled GKM graph");
    gkm->add_option("file", file_a)->required();
    auto *recon = app.add_subcommand("reconstruct", "Characteristic columns (up to sign) from a GKM graph");
    recon->add_option("file", file_a)->required();
    auto *gequiv = app.add_subcommand("gkm-equiv", "Labelled GKM graph congruence");
    gequiv->add_option("a", file_a)->required();
    gequiv->add_option("b", file_b)->required();

    auto *family = app.add_subcommand("family", "Standard examples");
    family->require_subcommand(1);
    auto *fam_prism = family->add_subcommand("prism", "Prism manifold over Delta^1 x Delta^{n-1}");
    fam_prism->add_option("--n", fam_n)->required();
    fam_prism->add_option("--k", fam_k)->required();
    auto *fam_product = family->add_subcommand("product", "Product of projective spaces");
    fam_product->add_option("--dims", fam_dims)->required();
    auto *fam_cpn = family->add_subcommand("cpn", "Complex projective space");
    fam_cpn->add_option("--n", fam_n)->required();
    auto *fam_hirz = family->add_subcommand("hirzebruch", "Hirzebruch surface");
    fam_hirz->add_option("--a", fam_a)->required();

    auto *enumerate = app.add_subcommand("enumerate", "Classes of bounded characteristic matrices over a polytope");
    enumerate->add_option("file", file_a, "Document whose polytope is used")->required();
    enumerate->add_option("--bound", bound)->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--cap", cap, "Maximum raw search-space size");
    auto *count = app.add_subcommand("count-alpha", "Count prism classes and compare with the closed form");
    count->add_option("--n", fam_n)->required();
    count->add_flag("--bar", bar, "Even k instead of odd k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        emit_error("UsageError", e.what());
        return kExitUsage;
    }

    try {
        if (validate->parsed()) {
            const auto d = load(file_a);
            Json j{{"valid", true}};
            if (echo)
                j["document"] = qtoric::to_json(d);
            print(j);
        } else if (betti->parsed()) {
            const auto d = load(file_a);
            Json b = Json::array();
            for (auto x : qtoric::f_h_vectors(d.pair.polytope()).h)
                b.push_back(x);
            print(Json{{"betti", b}});
        } else if (integ->parsed()) {
            const auto d = load(file_a);
            const auto facets = parse_int_list(monomial);
            const auto mon = qtoric::Monomial::from_facets(d.pair.facet_count(), facets);
            print(Json{{"value", qtoric::int_to_json(qtoric::integrate(d.pair, mon))}});
        } else if (charnum->parsed()) {
            const auto d = load(file_a);
            Json entries = Json::array();
            for (const auto &[mon, val] : qtoric::char_numbers(d.pair)) {
                Json e;
                e["monomial"] = int_list(mon.facets());
                e["value"] = qtoric::int_to_json(val);
                entries.push_back(std::move(e));
            }
            print(Json{{"numbers", entries}});
        } else if (classical->parsed()) {
            const auto d = load(file_a);
            const auto c = qtoric::classical_numbers(d.pair);
            Json j;
            j["p1_pair"] = qtoric::int_to_json(c.p1_pair);
            j["c_top_pair"] = qtoric::int_to_json(c.c_top_pair);
            if (c.signature)
                j["signature"] = *c.signature;
            print(j);
        } else if (canon->parsed()) {
            const auto d = load(file_a);
            const auto s = qtoric::detail::canonical_search(d.pair);
            Json j;
            j["canonical_form"] = s.form.bytes;
            j["matrix"] = qtoric::matrix_to_json(s.matrix);
            print(j);
        } else if (equiv->parsed()) {
            const auto a = load(file_a);
            const auto b = load(file_b);
            const auto w = qtoric::weak_equiv(a.pair, b.pair);
            Json j;
            j["equivalent"] = w.has_value();
            if (w)
                j["witness"] = weak_witness_json(*w);
            print(j);
        } else if (sequiv->parsed()) {
            const auto a = load(file_a);
            const auto b = load(file_b);
            const auto w = qtoric::strong_equiv(a.pair, b.pair);
            Json j;
            j["equivalent"] = w.has_value();
            if (w)
                j["witness"] = Json{{"bijection", int_list(w->bijection)}, {"signs", int_list(w->signs)}};
            print(j);
        } else if (gkm->parsed()) {
            print(qtoric::to_json(qtoric::build_gkm(load(file_a).pair)));
        } else if (recon->parsed()) {
            const auto g = qtoric::parse_gkm(read_file(file_a));
            print(Json{{"lambda", qtoric::matrix_to_json(qtoric::reconstruct_lambda(g))}});
        } else if (gequiv->parsed()) {
            const auto g = qtoric::parse_gkm(read_file(file_a));
            const auto g2 = qtoric::parse_gkm(read_file(file_b));
            const auto w = qtoric::gkm_equiv(g, g2);
            Json j;
            j["equivalent"] = w.has_value();
            if (w)
                j["witness"] = Json{{"vertex_map", int_list(w->vertex_map)}, {"facet_map", int_list(w->facet_map)}};
            print(j);
        } else if (family->parsed()) {
            if (fam_prism->parsed())
                print(qtoric::to_json(qtoric::prism_family(fam_n, fam_k)));
            else if (fam_product->parsed()) {
                const auto dims = parse_int_list(fam_dims);
                print(qtoric::to_json(qtoric::product_family(dims)));
            } else if (fam_cpn->parsed())
                print(qtoric::to_json(qtoric::projective_space(fam_n)));
            else
                print(qtoric::to_json(qtoric::hirzebruch(fam_a)));
        } else if (enumerate->parsed()) {
            const auto d = load(file_a);
            print(report_json(qtoric::enumerate_classes(d.pair.polytope(), bound, cap)));
        } else if (count->parsed()) {
            const int c = qtoric::count_alpha(fam_n, bar);
            const int f = qtoric::alpha_closed_form(fam_n, bar);
            print(Json{{"count", c}, {"closed_form", f}, {"match", c == f}});
        }
    } catch (const UsageError &e) {
        emit_error("UsageError", e.what());
        return kExitUsage;
    } catch (const qtoric::Error &e) {
        emit_error(std::string(qtoric::to_string(e.kind())), e.what());
        return qtoric::is_internal(e.kind()) ? kExitInternal : kExitData;
    } catch (const std::exception &e) {
        emit_error("Internal", e.what());
        return kExitInternal;
    }
    return 0;
}
