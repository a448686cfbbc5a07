#pragma once

// Brute-force face-ring evaluator used to cross-check the localization
// integrator: graded linear algebra over Q in the free generators.

#include "qtoric/cohomology.hpp"
#include "qtoric/error.hpp"
#include "qtoric/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace qtoric {

namespace oracle_detail {

using Exponents = std::vector<int>;
using Polynomial = std::map<Exponents, Rational>;

inline constexpr std::size_t kMaxPieceSize = 20000;

inline Polynomial multiply(const Polynomial &a, const Polynomial &b) {
    Polynomial out;
    for (const auto &[ea, ca] : a)
        for (const auto &[eb, cb] : b) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
}

/// Graded piece of the polynomial ring in the free generators, with the
/// Stanley-Reisner relations pushed into that degree.
class GradedPiece {
  public:
    GradedPiece(const CohomologyPresentation &pres, int degree) : degree_(degree) {
        const auto k = static_cast<int>(pres.free.size());
        for (auto &m : monomials_of_degree(k, degree)) {
            index_.emplace(m.exponents, basis_.size());
            basis_.push_back(m.exponents);
        }
        if (k == 0 && degree == 0) {
            index_.emplace(Exponents{}, 0);
            basis_.push_back({});
        }
        if (basis_.size() > kMaxPieceSize)
            throw Error(ErrorKind::SearchSpaceTooLarge, "graded piece too large for the oracle");

        RationalMatrix rows;
        for (const auto &nonface : pres.monomial_relations) {
            const int rest = degree - static_cast<int>(nonface.size());
            if (rest < 0)
                continue;
            Polynomial base = one(k);
            for (int f : nonface)
                base = multiply(base, linear(pres, f));
            for (auto &m : monomials_of_degree(k, rest)) {
                Polynomial p = multiply(base, Polynomial{{m.exponents, Rational(1)}});
                rows.push_back(vectorize(p));
                if (rows.size() > kMaxPieceSize * 4)
                    throw Error(ErrorKind::SearchSpaceTooLarge, "relation space too large for the oracle");
            }
            if (k == 0 && rest == 0)
                rows.push_back(vectorize(base));
        }
        relations_ = std::move(rows);
        pivots_ = rref(relations_);
    }

    std::size_t quotient_dimension() const { return basis_.size() - pivots_.size(); }

    std::vector<Rational> vectorize(const Polynomial &p) const {
        std::vector<Rational> v(basis_.size());
        for (const auto &[e, c] : p)
            v[index_.at(e)] = c;
        return v;
    }

    std::vector<Rational> reduce(const Polynomial &p) const {
        auto v = vectorize(p);
        reduce_by(v, relations_, pivots_);
        return v;
    }

    static Polynomial one(int k) { return Polynomial{{Exponents(static_cast<std::size_t>(k), 0), Rational(1)}}; }

    static Polynomial linear(const CohomologyPresentation &pres, int facet) {
        const IntVector c = pres.linear_form(facet);
        Polynomial p;
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c[a] == 0)
                continue;
            Exponents e(c.size(), 0);
            e[a] = 1;
            p.emplace(std::move(e), Rational(c[a]));
        }
        return p;
    }

    static Polynomial rewrite(const CohomologyPresentation &pres, const Monomial &mon) {
        Polynomial p = one(static_cast<int>(pres.free.size()));
        for (int f : mon.facets())
            p = multiply(p, linear(pres, f));
        return p;
    }

  private:
    int degree_;
    std::vector<Exponents> basis_;
    std::map<Exponents, std::size_t> index_;
    RationalMatrix relations_;
    std::vector<std::size_t> pivots_;
};

} // namespace oracle_detail

/// b_0, b_2, ..., b_2n as dimensions of the graded quotients.
inline std::vector<std::int64_t> betti_oracle(const QuasitoricPair &q) {
    const auto pres = presentation(q);
    std::vector<std::int64_t> b;
    for (int d = 0; d <= q.dim(); ++d)
        b.push_back(static_cast<std::int64_t>(oracle_detail::GradedPiece(pres, d).quotient_dimension()));
    return b;
}

/// <mon, [M]> by reduction against the base-vertex monomial, whose pairing is sigma(v0).
inline Int integrate_oracle(const QuasitoricPair &q, const Monomial &mon) {
    if (static_cast<int>(mon.exponents.size()) != q.facet_count())
        throw Error(ErrorKind::DimensionMismatch, "monomial has wrong number of variables");
    if (mon.degree() != q.dim())
        return 0;
    const auto pres = presentation(q);
    const oracle_detail::GradedPiece top(pres, q.dim());
    if (top.quotient_dimension() != 1)
        throw Error(ErrorKind::QuotientNotRankOne,
                    "top-degree quotient has dimension " + std::to_string(top.quotient_dimension()));
    const auto ref_mon = Monomial::from_facets(q.facet_count(), pres.base);
    const auto ref = top.reduce(oracle_detail::GradedPiece::rewrite(pres, ref_mon));
    const auto val = top.reduce(oracle_detail::GradedPiece::rewrite(pres, mon));
    const Int sigma0 = vertex_frame(q, 0).sigma;

    // both vectors live in the same 1-dimensional quotient; find the ratio
    Rational ratio = 0;
    bool found = false;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (ref[i] == 0)
            continue;
        if (!found) {
            ratio = val[i] / ref[i];
            found = true;
        } else if (val[i] != ratio * ref[i]) {
            throw Error(ErrorKind::QuotientNotRankOne, "reduced vectors are not proportional");
        }
    }
    if (!found)
        throw Error(ErrorKind::QuotientNotRankOne, "reference vertex monomial vanishes in the quotient");
    for (std::size_t i = 0; i < ref.size(); ++i)
        if (ref[i] == 0 && val[i] != 0)
            throw Error(ErrorKind::QuotientNotRankOne, "reduced vectors are not proportional");
    const Rational result = ratio * sigma0;
    if (!is_integral(result))
        throw Error(ErrorKind::NonIntegralResult, "oracle pairing is not an integer");
    return to_int(boost::multiprecision::numerator(result));
}

} // namespace qtoric
