#pragma once

// Random *valid* Lie algebroids: constant Lie algebras (optionally scaled by
// a basic function, which preserves the Jacobi identity since the residual
// is quadratic in c), action algebroids with polynomial anchors, tangent
// algebroids, and random constant changes of basis.

#include <functional>

#include "jforge/algebroid.hpp"
#include "support/random_gen.hpp"

namespace jforge::testing {

using algebroid::AlgebroidData;
using algebroid::Multisection;

inline ChartPtr base_chart_m(int m) {
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
    return poly::share(Chart::plain(names));
}

inline AlgebroidData abelian(int m, int r) { return AlgebroidData(base_chart_m(m), r); }

inline AlgebroidData so3_algebra(int m = 0) {
    AlgebroidData a(base_chart_m(m), 3);
    auto one = Polynomial::constant(a.base_chart(), Scalar(1));
    a.set_c(0, 1, 2, one);
    a.set_c(1, 2, 0, one);
    a.set_c(2, 0, 1, one);
    return a;
}

inline AlgebroidData heisenberg(int m = 0) {
    AlgebroidData a(base_chart_m(m), 3);
    a.set_c(0, 1, 2, Polynomial::constant(a.base_chart(), Scalar(1)));
    return a;
}

// [e0,e1] = e1
inline AlgebroidData aff1(int m = 0) {
    AlgebroidData a(base_chart_m(m), 2);
    a.set_c(0, 1, 1, Polynomial::constant(a.base_chart(), Scalar(1)));
    return a;
}

// filiform n4: [e0,e1] = e2, [e0,e2] = e3
inline AlgebroidData filiform4(int m = 0) {
    AlgebroidData a(base_chart_m(m), 4);
    a.set_c(0, 1, 2, Polynomial::constant(a.base_chart(), Scalar(1)));
    a.set_c(0, 2, 3, Polynomial::constant(a.base_chart(), Scalar(1)));
    return a;
}

inline AlgebroidData tangent_algebroid(const ChartPtr& base) {
    AlgebroidData a(base, base->dim());
    for (int i = 0; i < base->dim(); ++i)
        a.set_anchor(i, i, Polynomial::constant(base, Scalar(1)));
    return a;
}

// sl(2) acting on R^1 by d/dx, x d/dx, x^2 d/dx.
inline AlgebroidData sl2_action() {
    auto base = base_chart_m(1);
    AlgebroidData a(base, 3);
    auto cst = [&](long v) { return Polynomial::constant(base, Scalar(v)); };
    a.set_c(0, 1, 0, cst(1));   // [e0,e1] = e0
    a.set_c(0, 2, 1, cst(2));   // [e0,e2] = 2 e1
    a.set_c(1, 2, 2, cst(1));   // [e1,e2] = e2
    a.set_anchor(0, 0, cst(1));
    a.set_anchor(1, 0, Polynomial::variable(base, 0));
    a.set_anchor(2, 0, Polynomial::variable(base, 0) * Polynomial::variable(base, 0));
    return a;
}

// Constant change of basis e~_a = sum_b S[b][a] e_b, optionally fixing e_0.
inline AlgebroidData change_basis(Rng& rng, const AlgebroidData& a, bool fix_first) {
    const int r = a.rank();
    std::vector<std::vector<Scalar>> s(static_cast<size_t>(r),
                                       std::vector<Scalar>(static_cast<size_t>(r), Scalar(0)));
    std::vector<std::vector<Scalar>> sinv = s;
    for (int i = 0; i < r; ++i) s[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        sinv[static_cast<size_t>(i)][static_cast<size_t>(i)] = Scalar(1);
    // random elementary column operations: col_j += k col_i (i != j)
    std::uniform_int_distribution<int> pick(fix_first ? 1 : 0, r - 1);
    std::uniform_int_distribution<int> kdist(-2, 2);
    int lo = fix_first ? 1 : 0;
    for (int step = 0; step < 2 * r && r - lo >= 2; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Scalar k(kdist(rng));
        if (k == 0) continue;
        // S -> S * E  (E adds k * col i to col j); S^-1 -> E^-1 * S^-1
        for (int row = 0; row < r; ++row)
            s[static_cast<size_t>(row)][static_cast<size_t>(j)] +=
                k * s[static_cast<size_t>(row)][static_cast<size_t>(i)];
        for (int col = 0; col < r; ++col)
            sinv[static_cast<size_t>(i)][static_cast<size_t>(col)] -=
                k * sinv[static_cast<size_t>(j)][static_cast<size_t>(col)];
    }
    AlgebroidData out(a.base_chart(), r, a.section_names());
    out.distinguished = a.distinguished;
    for (int al = 0; al < r; ++al) {
        for (int be = al + 1; be < r; ++be) {
            for (int la = 0; la < r; ++la) {
                Polynomial coeff = Polynomial::zero(a.base_chart());
                for (int g = 0; g < r; ++g)
                    for (int d = 0; d < r; ++d)
                        for (int ep = 0; ep < r; ++ep) {
                            Scalar w = s[static_cast<size_t>(g)][static_cast<size_t>(al)] *
                                       s[static_cast<size_t>(d)][static_cast<size_t>(be)] *
                                       sinv[static_cast<size_t>(la)][static_cast<size_t>(ep)];
                            if (w != 0) coeff = coeff + a.c(g, d, ep) * w;
                        }
                out.set_c(al, be, la, coeff);
            }
        }
        for (int l = 0; l < a.base_dim(); ++l) {
            Polynomial coeff = Polynomial::zero(a.base_chart());
            for (int g = 0; g < r; ++g)
                coeff = coeff + a.anchor(g, l) * s[static_cast<size_t>(g)][static_cast<size_t>(al)];
            out.set_anchor(al, l, coeff);
        }
    }
    return out;
}

// Scale all structure functions by a basic polynomial (anchor must be zero
// for this to stay a Lie algebroid).
inline AlgebroidData scale_bundle_of_algebras(Rng& rng, const AlgebroidData& a) {
    AlgebroidData out(a.base_chart(), a.rank(), a.section_names());
    out.distinguished = a.distinguished;
    Polynomial f = random_polynomial(rng, a.base_chart(), 1, 2, 2);
    for (const auto& [key, p] : a.c_table()) out.set_c(key[0], key[1], key[2], p * f);
    return out;
}

// A random valid algebroid with m <= 2, r <= 4.
inline AlgebroidData random_valid_algebroid(Rng& rng, int max_m = 2, int max_r = 4,
                                            bool allow_anchor = true) {
    std::uniform_int_distribution<int> md(0, max_m);
    int m = md(rng);
    std::uniform_int_distribution<int> family(0, 6);
    AlgebroidData a = abelian(m, 1);
    for (;;) {
        int f = family(rng);
        if (f == 0) {
            std::uniform_int_distribution<int> rd(1, max_r);
            a = abelian(m, rd(rng));
        } else if (f == 1 && max_r >= 3) {
            a = so3_algebra(m);
        } else if (f == 2 && max_r >= 3) {
            a = heisenberg(m);
        } else if (f == 3 && max_r >= 2) {
            a = aff1(m);
        } else if (f == 4 && max_r >= 4) {
            a = filiform4(m);
        } else if (f == 5 && allow_anchor && max_r >= 3 && max_m >= 1) {
            a = sl2_action();
        } else if (f == 6 && allow_anchor && m >= 1 && max_r >= m) {
            a = tangent_algebroid(base_chart_m(m));
        } else {
            continue;
        }
        break;
    }
    std::uniform_int_distribution<int> coin(0, 3);
    if (m >= 1 && a.base_dim() >= 1 && coin(rng) == 0 && a.anchor_table().empty())
        a = scale_bundle_of_algebras(rng, a);
    if (coin(rng) != 0) a = change_basis(rng, a, false);
    return a;
}

inline Multisection random_multisection(Rng& rng, const AlgebroidData& a, int degree,
                                        int coeff_deg = 1, int terms = 2) {
    Multisection x(a.base_chart(), a.rank(), degree);
    std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& idx, int pos,
                                                               int start) {
        if (pos == degree) {
            std::uniform_int_distribution<int> coin(0, 1);
            if (coin(rng)) x.add_term(idx, random_polynomial(rng, a.base_chart(), coeff_deg, terms));
            return;
        }
        for (int i = start; i < a.rank(); ++i) {
            idx[static_cast<size_t>(pos)] = i;
            rec(idx, pos + 1, i + 1);
        }
    };
    if (degree == 0) {
        return Multisection::scalar(a.base_chart(), a.rank(),
                                    random_polynomial(rng, a.base_chart(), coeff_deg, terms));
    }
    std::vector<int> idx(static_cast<size_t>(degree));
    rec(idx, 0, 0);
    return x;
}

}  // namespace jforge::testing
