#include "jforge/algebroid.hpp"

#include <algorithm>
#include <functional>

namespace jforge::algebroid {

namespace {

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

}  // namespace

SectionTensor::SectionTensor(ChartPtr base_chart, int range, int degree)
    : chart_(std::move(base_chart)), range_(range), degree_(degree) {
    if (degree_ < 0) throw Error("section tensor degree must be nonnegative");
}

SectionTensor SectionTensor::scalar(ChartPtr base_chart, int range, Polynomial f) {
    SectionTensor t(std::move(base_chart), range, 0);
    if (!f.is_zero()) t.comps_.emplace(Indices{}, std::move(f));
    return t;
}

SectionTensor SectionTensor::basis(ChartPtr base_chart, int range, int a) {
    SectionTensor t(base_chart, range, 1);
    t.add_term({a}, Polynomial::constant(base_chart, Scalar(1)));
    return t;
}

void SectionTensor::add_term(Indices idx, Polynomial coeff) {
    poly::require_same_chart(chart_, coeff.chart());
    if (static_cast<int>(idx.size()) != degree_)
        throw Error("index tuple length does not match tensor degree");
    for (int i : idx)
        if (i < 0 || i >= range_) throw Error("section index out of range");
    if (coeff.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    if (sign < 0) coeff = -coeff;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(std::move(idx), std::move(coeff));
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Polynomial SectionTensor::component(const Indices& sorted_idx) const {
    auto it = comps_.find(sorted_idx);
    return it == comps_.end() ? Polynomial::zero(chart_) : it->second;
}

SectionTensor SectionTensor::operator+(const SectionTensor& o) const {
    poly::require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_ || range_ != o.range_)
        throw Error("section tensor shape mismatch in sum");
    SectionTensor r = *this;
    for (const auto& [idx, c] : o.comps_) r.add_term(idx, c);
    return r;
}

SectionTensor SectionTensor::operator-(const SectionTensor& o) const { return *this + (-o); }

SectionTensor SectionTensor::operator-() const {
    SectionTensor r(chart_, range_, degree_);
    for (const auto& [idx, c] : comps_) r.comps_.emplace(idx, -c);
    return r;
}

SectionTensor SectionTensor::operator*(const Scalar& c) const {
    SectionTensor r(chart_, range_, degree_);
    if (c == 0) return r;
    for (const auto& [idx, p] : comps_) r.comps_.emplace(idx, p * c);
    return r;
}

SectionTensor SectionTensor::operator*(const Polynomial& f) const {
    SectionTensor r(chart_, range_, degree_);
    for (const auto& [idx, p] : comps_) {
        Polynomial q = p * f;
        if (!q.is_zero()) r.comps_.emplace(idx, std::move(q));
    }
    return r;
}

bool SectionTensor::operator==(const SectionTensor& o) const {
    return degree_ == o.degree_ && range_ == o.range_ && *chart_ == *o.chart_ &&
           comps_ == o.comps_;
}

SectionTensor wedge(const SectionTensor& p, const SectionTensor& q) {
    poly::require_same_chart(p.base_chart(), q.base_chart());
    if (p.range() != q.range()) throw Error("section tensor range mismatch");
    SectionTensor r(p.base_chart(), p.range(), p.degree() + q.degree());
    for (const auto& [ia, ca] : p.components()) {
        for (const auto& [ib, cb] : q.components()) {
            SectionTensor::Indices idx(ia);
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(std::move(idx), ca * cb);
        }
    }
    return r;
}

AlgebroidData::AlgebroidData(ChartPtr base_chart, int rank, std::vector<std::string> names)
    : base_chart_(std::move(base_chart)), rank_(rank), names_(std::move(names)) {
    if (rank_ < 1) throw Error("algebroid rank must be at least 1");
    if (names_.empty())
        for (int a = 0; a < rank_; ++a) names_.push_back("e" + std::to_string(a));
    if (static_cast<int>(names_.size()) != rank_)
        throw Error("section name count does not match rank");
}

void AlgebroidData::set_c(int a, int b, int g, const Polynomial& p) {
    poly::require_same_chart(base_chart_, p.chart());
    if (a == b) {
        if (!p.is_zero()) throw Error("c must be antisymmetric: c^g_{aa} = 0");
        return;
    }
    if (a > b) {
        set_c(b, a, g, -p);
        return;
    }
    if (a < 0 || b >= rank_ || g < 0 || g >= rank_) throw Error("section index out of range");
    if (p.is_zero())
        c_.erase({a, b, g});
    else
        c_.insert_or_assign({a, b, g}, p);
}

Polynomial AlgebroidData::c(int a, int b, int g) const {
    if (a == b) return Polynomial::zero(base_chart_);
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = c_.find({a, b, g});
    Polynomial out = it == c_.end() ? Polynomial::zero(base_chart_) : it->second;
    return flip ? -out : out;
}

void AlgebroidData::set_anchor(int a, int l, const Polynomial& p) {
    poly::require_same_chart(base_chart_, p.chart());
    if (a < 0 || a >= rank_ || l < 0 || l >= base_dim())
        throw Error("anchor index out of range");
    if (p.is_zero())
        rho_.erase({a, l});
    else
        rho_.insert_or_assign({a, l}, p);
}

Polynomial AlgebroidData::anchor(int a, int l) const {
    auto it = rho_.find({a, l});
    return it == rho_.end() ? Polynomial::zero(base_chart_) : it->second;
}

Multisection AlgebroidData::basis_bracket(int a, int b) const {
    Multisection out(base_chart_, rank_, 1);
    for (int g = 0; g < rank_; ++g) out.add_term({g}, c(a, b, g));
    return out;
}

Polynomial AlgebroidData::anchor_apply(int a, const Polynomial& f) const {
    Polynomial out = Polynomial::zero(base_chart_);
    for (int l = 0; l < base_dim(); ++l) out = out + anchor(a, l) * f.derivative(l);
    return out;
}

bool AlgebroidData::operator==(const AlgebroidData& o) const {
    return rank_ == o.rank_ && *base_chart_ == *o.base_chart_ && c_ == o.c_ &&
           rho_ == o.rho_ && distinguished == o.distinguished;
}

AxiomReport check_axioms(const AlgebroidData& a) {
    AxiomReport rep;
    const int r = a.rank();
    // [e_a, X] for a degree-1 multisection X, by the Leibniz rule
    auto ad = [&](int al, const Multisection& x) {
        Multisection out(a.base_chart(), r, 1);
        for (const auto& [idx, coeff] : x.components()) {
            out = out + a.basis_bracket(al, idx[0]) * coeff;
            out.add_term(idx, a.anchor_apply(al, coeff));
        }
        return out;
    };
    for (int al = 0; al < r && rep.pass; ++al) {
        for (int be = al + 1; be < r && rep.pass; ++be) {
            for (int ga = be + 1; ga < r && rep.pass; ++ga) {
                Multisection res = ad(al, a.basis_bracket(be, ga)) -
                                   ad(be, a.basis_bracket(al, ga)) +
                                   ad(ga, a.basis_bracket(al, be));
                if (!res.is_zero()) {
                    rep.pass = false;
                    rep.jacobi_witness = {al, be, ga};
                    rep.jacobi_residual = res;
                }
            }
        }
    }
    if (!rep.pass) return rep;
    for (int al = 0; al < r && rep.pass; ++al) {
        for (int be = al + 1; be < r && rep.pass; ++be) {
            Multisection br = a.basis_bracket(al, be);
            for (int l = 0; l < a.base_dim(); ++l) {
                Polynomial lhs = Polynomial::zero(a.base_chart());
                for (const auto& [idx, coeff] : br.components())
                    lhs = lhs + coeff * a.anchor(idx[0], l);
                Polynomial rhs = Polynomial::zero(a.base_chart());
                for (int k = 0; k < a.base_dim(); ++k)
                    rhs = rhs + a.anchor(al, k) * a.anchor(be, l).derivative(k) -
                          a.anchor(be, k) * a.anchor(al, l).derivative(k);
                if (lhs != rhs) {
                    rep.pass = false;
                    rep.anchor_witness = {al, be};
                    break;
                }
            }
        }
    }
    return rep;
}

void require_axioms(const AlgebroidData& a) {
    if (!check_axioms(a).pass)
        throw PreconditionError("algebroid axioms not verified");
}

AlgebroidForm exterior_derivative(const AlgebroidData& a, const AlgebroidForm& mu) {
    require_axioms(a);
    if (mu.range() != a.rank())
        throw Error("form range does not match algebroid rank");
    const int r = a.rank();
    const int k = mu.degree();
    AlgebroidForm out(a.base_chart(), r, k + 1);
    // iterate over strictly increasing (k+1)-tuples
    std::vector<int> idx(static_cast<size_t>(k + 1));
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k + 1) {
            Polynomial val = Polynomial::zero(a.base_chart());
            for (int i = 0; i <= k; ++i) {
                std::vector<int> rest;
                for (int t = 0; t <= k; ++t)
                    if (t != i) rest.push_back(idx[static_cast<size_t>(t)]);
                Polynomial term = a.anchor_apply(idx[static_cast<size_t>(i)], mu.component(rest));
                val = val + (i % 2 == 0 ? term : -term);
            }
            for (int i = 0; i <= k; ++i) {
                for (int jj = i + 1; jj <= k; ++jj) {
                    std::vector<int> rest;
                    for (int t = 0; t <= k; ++t)
                        if (t != i && t != jj) rest.push_back(idx[static_cast<size_t>(t)]);
                    // mu([e_i, e_j], rest) expanded over c
                    Multisection br = a.basis_bracket(idx[static_cast<size_t>(i)],
                                                      idx[static_cast<size_t>(jj)]);
                    Polynomial term = Polynomial::zero(a.base_chart());
                    for (const auto& [bidx, coeff] : br.components()) {
                        std::vector<int> full;
                        full.push_back(bidx[0]);
                        full.insert(full.end(), rest.begin(), rest.end());
                        int sign = sort_sign(full);
                        if (sign == 0) continue;
                        Polynomial piece = coeff * mu.component(full);
                        term = term + (sign > 0 ? piece : -piece);
                    }
                    val = val + ((i + jj) % 2 == 0 ? term : -term);
                }
            }
            out.add_term(idx, val);
            return;
        }
        for (int i = start; i < r; ++i) {
            idx[static_cast<size_t>(pos)] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (k + 1 <= r) rec(0, 0);
    return out;
}

JacobiStructure linear_poisson(const AlgebroidData& a, std::vector<std::string> fiber_names) {
    require_axioms(a);
    const int r = a.rank();
    const int m = a.base_dim();
    if (fiber_names.empty())
        for (int i = 0; i < r; ++i) fiber_names.push_back("xi" + std::to_string(i + 1));
    std::vector<std::string> base_names;
    for (int l = 0; l < m; ++l) base_names.push_back(a.base_chart()->var(l).name);
    ChartPtr chart = poly::share(Chart::bundle(base_names, fiber_names));
    std::vector<int> base_map(static_cast<size_t>(m));
    for (int l = 0; l < m; ++l) base_map[static_cast<size_t>(l)] = l;

    auto lift_base = [&](const Polynomial& p) { return p.remap(chart, base_map); };

    Multivector lambda(chart, 2);
    for (int al = 0; al < r; ++al) {
        for (int be = al + 1; be < r; ++be) {
            Polynomial coeff = Polynomial::zero(chart);
            for (int g = 0; g < r; ++g)
                coeff = coeff + lift_base(a.c(al, be, g)) * Polynomial::variable(chart, m + g);
            lambda.add_term({m + al, m + be}, coeff);
        }
        for (int l = 0; l < m; ++l)
            lambda.add_term({m + al, l}, lift_base(a.anchor(al, l)));
    }
    return JacobiStructure(std::move(lambda), Multivector::zero(chart, 1));
}

ChartPtr total_chart(const AlgebroidData& a, std::vector<std::string> fiber_names) {
    const int r = a.rank();
    if (fiber_names.empty())
        for (int i = 0; i < r; ++i) fiber_names.push_back("y" + std::to_string(i + 1));
    std::vector<std::string> base_names;
    for (int l = 0; l < a.base_dim(); ++l) base_names.push_back(a.base_chart()->var(l).name);
    return poly::share(Chart::bundle(base_names, fiber_names));
}

namespace {

// Complete lift of the basis section e_a:
//   e_a^c = rho^l_a d/dx^l - sum_{b,g} y^g c^b_{ag} d/dy^b
Multivector complete_lift_basis(const AlgebroidData& a, int al, const ChartPtr& chart,
                                const std::vector<int>& base_map) {
    const int m = a.base_dim();
    const int r = a.rank();
    Multivector out(chart, 1);
    for (int l = 0; l < m; ++l)
        out.add_term({l}, a.anchor(al, l).remap(chart, base_map));
    for (int be = 0; be < r; ++be) {
        Polynomial coeff = Polynomial::zero(chart);
        for (int g = 0; g < r; ++g)
            coeff = coeff - a.c(al, g, be).remap(chart, base_map) *
                                Polynomial::variable(chart, m + g);
        out.add_term({m + be}, coeff);
    }
    return out;
}

}  // namespace

Multivector lift(const AlgebroidData& a, const Multisection& x, LiftMode mode,
                 const ChartPtr& total) {
    require_axioms(a);
    if (x.range() != a.rank())
        throw Error("multisection range does not match algebroid rank");
    ChartPtr chart = total ? total : total_chart(a);
    const int m = a.base_dim();
    const int r = a.rank();
    std::vector<int> base_map(static_cast<size_t>(m));
    for (int l = 0; l < m; ++l) base_map[static_cast<size_t>(l)] = l;
    auto lift_base = [&](const Polynomial& p) { return p.remap(chart, base_map); };

    // f^c = iota_{df} = sum_a rho(e_a)(f) y^a
    auto complete_fn = [&](const Polynomial& f) {
        Polynomial out = Polynomial::zero(chart);
        for (int al = 0; al < r; ++al)
            out = out + lift_base(a.anchor_apply(al, f)) * Polynomial::variable(chart, m + al);
        return out;
    };

    const int k = x.degree();
    if (mode == LiftMode::Vertical) {
        Multivector out(chart, k);
        for (const auto& [idx, coeff] : x.components()) {
            Multivector::Indices v;
            for (int i : idx) v.push_back(m + i);
            out.add_term(std::move(v), lift_base(coeff));
        }
        return out;
    }

    if (k == 0) return Multivector::scalar(complete_fn(x.component({})));

    Multivector out(chart, k);
    for (const auto& [idx, coeff] : x.components()) {
        // (f e_I)^c = f^v (e_I)^c + f^c (e_I)^v
        Multivector eic(chart, k);
        for (size_t j = 0; j < idx.size(); ++j) {
            Multivector factor = complete_lift_basis(a, idx[j], chart, base_map);
            Multivector term = Multivector::scalar(Polynomial::constant(chart, Scalar(1)));
            for (size_t t = 0; t < idx.size(); ++t) {
                if (t == j)
                    term = wedge(term, factor);
                else
                    term = wedge(term, Multivector::basis_vector(chart, m + idx[t]));
            }
            eic = eic + term;
        }
        Multivector eiv(chart, k);
        {
            Multivector::Indices v;
            for (int i : idx) v.push_back(m + i);
            eiv.add_term(std::move(v), Polynomial::constant(chart, Scalar(1)));
        }
        out = out + eic * lift_base(coeff) + eiv * complete_fn(coeff);
    }
    return out;
}

// [U,V] in the odd realization over the section generators eta_a:
//   [U,V] = sum_a (d_r U/d eta_a) rho_a(V) - sum_a rho_a(U) (d_l V/d eta_a)
//         + sum_{a,b} (d_r U/d eta_a) ^ iota_{[e_a,e_b]} ^ (d_l V/d eta_b)
Multisection algebroid_schouten(const AlgebroidData& a, const Multisection& u,
                                const Multisection& v) {
    poly::require_same_chart(u.base_chart(), v.base_chart());
    if (u.range() != a.rank() || v.range() != a.rank())
        throw Error("multisection range does not match algebroid rank");
    const int r = a.rank();
    int rdeg = u.degree() + v.degree() - 1;
    if (rdeg < 0) return Multisection(u.base_chart(), r, 0);
    Multisection out(u.base_chart(), r, rdeg);

    for (const auto& [ia, ca] : u.components()) {
        for (const auto& [ib, cb] : v.components()) {
            // right derivative of U at slot j against anchor action on V
            for (size_t j = 0; j < ia.size(); ++j) {
                Polynomial act = a.anchor_apply(ia[j], cb);
                if (act.is_zero()) continue;
                Multisection::Indices idx;
                for (size_t t = 0; t < ia.size(); ++t)
                    if (t != j) idx.push_back(ia[t]);
                idx.insert(idx.end(), ib.begin(), ib.end());
                Polynomial coeff = ca * act;
                if ((ia.size() - 1 - j) % 2 == 1) coeff = -coeff;
                out.add_term(std::move(idx), std::move(coeff));
            }
            // anchor action on U against left derivative of V
            for (size_t j = 0; j < ib.size(); ++j) {
                Polynomial act = a.anchor_apply(ib[j], ca);
                if (act.is_zero()) continue;
                Multisection::Indices idx(ia);
                for (size_t t = 0; t < ib.size(); ++t)
                    if (t != j) idx.push_back(ib[t]);
                Polynomial coeff = act * cb;
                if (j % 2 == 0) coeff = -coeff;
                out.add_term(std::move(idx), std::move(coeff));
            }
            // structure-function term
            for (size_t j = 0; j < ia.size(); ++j) {
                for (size_t t = 0; t < ib.size(); ++t) {
                    for (int g = 0; g < r; ++g) {
                        Polynomial cg = a.c(ia[j], ib[t], g);
                        if (cg.is_zero()) continue;
                        Multisection::Indices idx;
                        for (size_t s = 0; s < ia.size(); ++s)
                            if (s != j) idx.push_back(ia[s]);
                        idx.push_back(g);
                        for (size_t s = 0; s < ib.size(); ++s)
                            if (s != t) idx.push_back(ib[s]);
                        Polynomial coeff = ca * cg * cb;
                        int sign = 1;
                        if ((ia.size() - 1 - j) % 2 == 1) sign = -sign;  // right deriv of U
                        if (t % 2 == 1) sign = -sign;                    // left deriv of V
                        if (sign < 0) coeff = -coeff;
                        out.add_term(std::move(idx), std::move(coeff));
                    }
                }
            }
        }
    }
    return out;
}

SpecialReport detect_special(const AlgebroidData& a) {
    require_axioms(a);
    if (!a.distinguished)
        throw PreconditionError("detect_special needs a distinguished index");
    const int d = *a.distinguished;
    const int r = a.rank();
    SpecialReport rep;

    // ideal property: [e_d, e_b] proportional to e_d, and rho(e_d) = 0
    for (int b = 0; b < r; ++b) {
        if (b == d) continue;
        for (int g = 0; g < r; ++g)
            if (g != d && !a.c(d, b, g).is_zero()) return rep;  // Neither
    }
    for (int l = 0; l < a.base_dim(); ++l)
        if (!a.anchor(d, l).is_zero()) return rep;  // Neither

    AlgebroidForm x0(a.base_chart(), r, 1);
    for (int b = 0; b < r; ++b) {
        if (b == d) continue;
        // [1~, a~] = -X0bar(a~) 1~
        x0.add_term({b}, -a.c(d, b, d));
    }
    // re-verify the cocycle property of X0bar in the full complex
    if (!exterior_derivative(a, x0).is_zero())
        throw Error("almost-special data with non-closed X0bar; axioms inconsistent");
    rep.xbar0 = x0;
    rep.kind = x0.is_zero() ? SpecialKind::Special : SpecialKind::AlmostSpecial;
    return rep;
}

}  // namespace jforge::algebroid
