#include "jforge/correspond.hpp"

#include <algorithm>

#include "jforge/foliation.hpp"

namespace jforge::correspond {

namespace {

using poly::Chart;
using poly::VarRole;

// Correspondence charts are required to list base variables first, then
// fiber variables, so that section/slot arithmetic stays mechanical.
void require_bundle_order(const ChartPtr& chart) {
    if (!chart->has_split())
        throw PreconditionError("operation needs a chart with a base/fiber split");
    bool seen_fiber = false;
    for (int i = 0; i < chart->dim(); ++i) {
        if (chart->role(i) == VarRole::Extra)
            throw PreconditionError("correspondence charts cannot carry extra variables");
        if (chart->role(i) == VarRole::Fiber) seen_fiber = true;
        else if (seen_fiber)
            throw PreconditionError("chart must list base variables before fiber variables");
    }
}

std::vector<std::string> base_names(const ChartPtr& chart) {
    std::vector<std::string> out;
    for (int i : chart->base_indices()) out.push_back(chart->var(i).name);
    return out;
}

std::vector<std::string> fiber_names(const ChartPtr& chart) {
    std::vector<std::string> out;
    for (int i : chart->fiber_indices()) out.push_back(chart->var(i).name);
    return out;
}

// identity on the first m slots, -1 elsewhere
std::vector<int> base_only_map(int from_dim, int m) {
    std::vector<int> map(static_cast<size_t>(from_dim), -1);
    for (int l = 0; l < m; ++l) map[static_cast<size_t>(l)] = l;
    return map;
}

void require_master_self_check(const JacobiStructure& j, const char* who) {
    auto rep = jacobi::check_master(j);
    if (!rep.pass)
        throw Error(std::string(who) + ": output failed the master-equation self-test");
}

}  // namespace

TripleData::TripleData(AlgebroidData s, AlgebroidForm x, AlgebroidForm p)
    : star(std::move(s)), x0(std::move(x)), p0(std::move(p)) {
    if (x0.degree() != 1 || p0.degree() != 2)
        throw Error("TripleData needs a 1-cochain X0 and a 2-cochain P0");
    if (x0.range() != star.rank() || p0.range() != star.rank())
        throw Error("cochain range does not match the star algebroid rank");
    poly::require_same_chart(star.base_chart(), x0.base_chart());
    poly::require_same_chart(star.base_chart(), p0.base_chart());
}

JacobiStructure jacobi_from_algebroid(const AlgebroidData& a, bool self_check) {
    algebroid::require_axioms(a);
    if (!a.distinguished || *a.distinguished != 0)
        throw PreconditionError("jacobi_from_algebroid needs distinguished index 0");
    const int n = a.rank() - 1;
    if (n < 1)
        throw PreconditionError(
            "rank-0 affine bundle: use the local-Lie-algebra route (poissonize_rank0 inverse)");
    const int m = a.base_dim();

    std::vector<std::string> fibers(a.section_names().begin() + 1, a.section_names().end());
    std::vector<std::string> bases;
    for (int l = 0; l < m; ++l) bases.push_back(a.base_chart()->var(l).name);
    ChartPtr chart = poly::share(Chart::bundle(bases, fibers));
    auto bmap = base_only_map(m, m);
    auto cR = [&](int x, int y, int g) { return a.c(x, y, g).remap(chart, bmap); };
    auto rhoR = [&](int al, int l) { return a.anchor(al, l).remap(chart, bmap); };
    auto yv = [&](int al) { return Polynomial::variable(chart, m + al - 1); };  // al in 1..n

    Multivector lambda(chart, 2);
    for (int al = 1; al <= n; ++al) {
        for (int be = al + 1; be <= n; ++be) {
            Polynomial k = Polynomial::zero(chart);
            for (int g = 1; g <= n; ++g) {
                k = k + cR(0, al, g) * yv(g) * yv(be);
                k = k - cR(0, be, g) * yv(g) * yv(al);
                k = k + cR(al, be, g) * yv(g);
            }
            k = k + cR(0, al, 0) * yv(be) - cR(0, be, 0) * yv(al) + cR(al, be, 0);
            lambda.add_term({m + al - 1, m + be - 1}, k);
        }
        for (int l = 0; l < m; ++l)
            lambda.add_term({m + al - 1, l}, rhoR(al, l) - yv(al) * rhoR(0, l));
    }
    Multivector e(chart, 1);
    for (int be = 1; be <= n; ++be) {
        Polynomial k = cR(0, be, 0);
        for (int g = 1; g <= n; ++g) k = k + cR(0, be, g) * yv(g);
        e.add_term({m + be - 1}, k);
    }
    for (int l = 0; l < m; ++l) e.add_term({l}, rhoR(0, l));

    JacobiStructure out(std::move(lambda), std::move(e));
    if (self_check) {
        require_master_self_check(out, "jacobi_from_algebroid");
        if (jacobi::classify(out).is_affine != jacobi::Flag::True)
            throw Error("jacobi_from_algebroid: output is not affine");
    }
    return out;
}

AlgebroidData algebroid_from_jacobi(const JacobiStructure& j, bool self_check) {
    require_bundle_order(j.chart());
    auto rep = jacobi::classify(j);
    if (rep.is_affine != jacobi::Flag::True) {
        auto* w = rep.witness_for("affine");
        throw PreconditionError("structure is not affine",
                                w ? "{" + w->first + ", " + w->second + "}" : "");
    }
    const auto& chart = j.chart();
    const int m = chart->base_dim();
    const int n = chart->fiber_dim();
    if (n < 1)
        throw PreconditionError("rank-0 structure: A+ is a local Lie algebra, not an algebroid");

    ChartPtr base = poly::share(Chart::plain(base_names(chart)));
    std::vector<std::string> sections;
    sections.push_back("~1");
    for (const auto& nm : fiber_names(chart)) sections.push_back(nm);
    AlgebroidData a(base, n + 1, sections);
    a.distinguished = 0;

    std::vector<int> to_base(static_cast<size_t>(chart->dim()), -1);
    for (int l = 0; l < m; ++l) to_base[static_cast<size_t>(l)] = l;
    auto down = [&](const Polynomial& p) { return p.remap(base, to_base); };
    auto yvar = [&](int al) { return Polynomial::variable(chart, m + al - 1); };
    auto one = Polynomial::constant(chart, Scalar(1));

    auto put = [&](int lo, int hi, const Polynomial& bracket) {
        a.set_c(lo, hi, 0, down(bracket.basic_part()));
        for (int g = 1; g <= n; ++g)
            a.set_c(lo, hi, g, down(bracket.linear_coefficient(m + g - 1)));
    };
    for (int be = 1; be <= n; ++be) put(0, be, jacobi::jacobi_bracket(j, one, yvar(be)));
    for (int al = 1; al <= n; ++al)
        for (int be = al + 1; be <= n; ++be)
            put(al, be, jacobi::jacobi_bracket(j, yvar(al), yvar(be)));

    for (int l = 0; l < m; ++l) {
        Polynomial xl = Polynomial::variable(chart, l);
        a.set_anchor(0, l, down(jacobi::jacobi_bracket(j, one, xl)));
        for (int al = 1; al <= n; ++al) {
            Polynomial rho = jacobi::jacobi_bracket(j, yvar(al), xl) -
                             xl * jacobi::jacobi_bracket(j, yvar(al), one);
            if (!rho.is_basic())
                throw Error("algebroid_from_jacobi: anchor extraction not basic");
            a.set_anchor(al, l, down(rho));
        }
    }
    if (self_check && !algebroid::check_axioms(a).pass)
        throw Error("algebroid_from_jacobi: extracted data fails the axioms");
    return a;
}

JacobiStructure jacobi_from_triple(const TripleData& t, bool self_check,
                                   std::vector<std::string> fibers) {
    foliation::require_cocycles(t);
    const int n = t.rank();
    const int m = t.star.base_dim();
    if (fibers.empty()) {
        for (int i = 0; i < n; ++i)
            fibers.push_back((m == 0 ? "x" : "y") + std::to_string(i + 1));
    }
    JacobiStructure lie_poisson = algebroid::linear_poisson(t.star, fibers);
    const auto& chart = lie_poisson.chart();
    auto bmap = base_only_map(m, m);

    Multivector x0v(chart, 1);
    for (int al = 0; al < n; ++al)
        x0v.add_term({m + al}, t.x0.component({al}).remap(chart, bmap));
    Multivector p0v(chart, 2);
    for (int al = 0; al < n; ++al)
        for (int be = al + 1; be < n; ++be)
            p0v.add_term({m + al, m + be}, t.p0.component({al, be}).remap(chart, bmap));

    Multivector lambda =
        lie_poisson.lambda - p0v + wedge(liouville_field(chart), x0v);
    JacobiStructure out(std::move(lambda), -x0v);
    if (self_check) {
        require_master_self_check(out, "jacobi_from_triple");
        if (jacobi::classify(out).is_strongly_affine != jacobi::Flag::True)
            throw Error("jacobi_from_triple: output is not strongly-affine");
    }
    return out;
}

TripleData extract_triple(const JacobiStructure& j, bool self_check) {
    require_bundle_order(j.chart());
    auto rep = jacobi::classify(j);
    if (rep.is_strongly_affine != jacobi::Flag::True) {
        auto* w = rep.witness_for("strongly_affine");
        throw PreconditionError("structure is not strongly-affine",
                                w ? "{" + w->first + ", " + w->second + "}" : "");
    }
    const auto& chart = j.chart();
    const int m = chart->base_dim();
    const int n = chart->fiber_dim();

    ChartPtr base = poly::share(Chart::plain(base_names(chart)));
    AlgebroidData star(base, n, fiber_names(chart));
    std::vector<int> to_base(static_cast<size_t>(chart->dim()), -1);
    for (int l = 0; l < m; ++l) to_base[static_cast<size_t>(l)] = l;
    auto down = [&](const Polynomial& p) { return p.remap(base, to_base); };
    auto yvar = [&](int a) { return Polynomial::variable(chart, m + a); };  // a in 0..n-1
    auto one = Polynomial::constant(chart, Scalar(1));

    AlgebroidForm x0(base, n, 1);
    AlgebroidForm p0(base, n, 2);
    for (int al = 0; al < n; ++al) {
        x0.add_term({al}, down(-jacobi::jacobi_bracket(j, one, yvar(al))));
        for (int be = al + 1; be < n; ++be) {
            Polynomial br = jacobi::jacobi_bracket(j, yvar(al), yvar(be));
            p0.add_term({al, be}, down(-br.basic_part()));
            for (int g = 0; g < n; ++g)
                star.set_c(al, be, g, down(br.linear_coefficient(m + g)));
        }
        for (int l = 0; l < m; ++l) {
            Polynomial xl = Polynomial::variable(chart, l);
            Polynomial rho = jacobi::jacobi_bracket(j, yvar(al), xl) -
                             xl * jacobi::jacobi_bracket(j, yvar(al), one);
            star.set_anchor(al, l, down(rho));
        }
    }
    TripleData out(std::move(star), std::move(x0), std::move(p0));
    if (self_check) {
        foliation::require_cocycles(out);
        if (!(jacobi_from_triple(out, false, fiber_names(chart)) == j))
            throw Error("extract_triple: round trip does not close");
    }
    return out;
}

JacobiStructure poissonize(const JacobiStructure& j, bool self_check) {
    require_bundle_order(j.chart());
    auto rep = jacobi::classify(j);
    if (rep.is_affine != jacobi::Flag::True) {
        auto* w = rep.witness_for("affine");
        throw PreconditionError("structure is not affine",
                                w ? "{" + w->first + ", " + w->second + "}" : "");
    }
    const auto& chart = j.chart();
    const int m = chart->base_dim();
    const int n = chart->fiber_dim();
    if (n < 1) throw PreconditionError("rank-0 structure: use poissonize_rank0");

    std::string iota = "i1";
    while (chart->index_of(iota) >= 0) iota += "_";
    std::vector<std::string> fibers;
    fibers.push_back(iota);
    for (const auto& nm : fiber_names(chart)) fibers.push_back(nm);
    ChartPtr hull = poly::share(Chart::bundle(base_names(chart), fibers));

    // old chart slot -> hull slot (fibers shift by one past i1)
    std::vector<int> up(static_cast<size_t>(chart->dim()));
    for (int l = 0; l < m; ++l) up[static_cast<size_t>(l)] = l;
    for (int a = 0; a < n; ++a) up[static_cast<size_t>(m + a)] = m + 1 + a;
    Polynomial i1 = Polynomial::variable(hull, m);

    // homogenization: the basic part picks up a factor of i1
    auto bar = [&](const Polynomial& p) {
        if (!p.is_affine_fn())
            throw Error("poissonize: non-affine value in homogenization");
        Polynomial basic = p.basic_part();
        return basic.remap(hull, up) * i1 + (p - basic).remap(hull, up);
    };

    auto one = Polynomial::constant(chart, Scalar(1));
    auto yvar = [&](int a) { return Polynomial::variable(chart, m + a); };
    Multivector lambda(hull, 2);
    for (int al = 0; al < n; ++al) {
        lambda.add_term({m, m + 1 + al}, bar(jacobi::jacobi_bracket(j, one, yvar(al))));
        for (int be = al + 1; be < n; ++be)
            lambda.add_term({m + 1 + al, m + 1 + be},
                            bar(jacobi::jacobi_bracket(j, yvar(al), yvar(be))));
        for (int l = 0; l < m; ++l) {
            Polynomial xl = Polynomial::variable(chart, l);
            Polynomial rho = jacobi::jacobi_bracket(j, yvar(al), xl) -
                             xl * jacobi::jacobi_bracket(j, yvar(al), one);
            if (!rho.is_basic()) throw Error("poissonize: anchor component not basic");
            lambda.add_term({m + 1 + al, l}, rho.remap(hull, up));
        }
    }
    for (int l = 0; l < m; ++l) {
        Polynomial el = jacobi::jacobi_bracket(j, one, Polynomial::variable(chart, l));
        lambda.add_term({m, l}, el.remap(hull, up));
    }
    JacobiStructure out(std::move(lambda), Multivector::zero(hull, 1));
    if (self_check) {
        require_master_self_check(out, "poissonize");
        auto hrep = jacobi::classify(out);
        if (hrep.is_linear != jacobi::Flag::True || hrep.is_homogeneous != jacobi::Flag::True)
            throw Error("poissonize: hull structure is not linear homogeneous");
    }
    return out;
}

JacobiStructure poissonize_rank0(const JacobiStructure& j, bool self_check) {
    const auto& chart = j.chart();
    if (chart->has_split() && chart->fiber_dim() > 0)
        throw PreconditionError("poissonize_rank0 needs a base-only chart");
    const int d = chart->dim();

    std::vector<Chart::Var> vars = chart->vars();
    for (auto& v : vars) v.role = VarRole::Base;
    std::string tname = "t";
    while (chart->index_of(tname) >= 0) tname += "_";
    vars.push_back({tname, true, VarRole::Extra});
    ChartPtr ext = poly::share(Chart(vars, true));

    std::vector<int> up(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) up[static_cast<size_t>(i)] = i;
    Polynomial tinv = Polynomial::variable(ext, d, -1);

    Multivector lambda(ext, 2);
    for (const auto& [idx, c] : j.lambda.components())
        lambda.add_term(idx, c.remap(ext, up) * tinv);
    for (const auto& [idx, c] : j.e.components())
        lambda.add_term({d, idx[0]}, c.remap(ext, up));

    JacobiStructure out(std::move(lambda), Multivector::zero(ext, 1));
    if (self_check) require_master_self_check(out, "poissonize_rank0");
    return out;
}

FirstOrderOp linear_kvector_to_affine_op(const Multivector& pbar, int iota_var) {
    const auto& chart = pbar.chart();
    if (!chart->has_split() || chart->fiber_dim() < 1)
        throw PreconditionError("hull chart with a fiber block required");
    if (iota_var < 0) iota_var = chart->fiber_indices().front();
    if (pbar.degree() < 1)
        throw PreconditionError("linear k-vector correspondence needs degree >= 1");

    // linearity: all-fiber components linear, single-base components basic,
    // double-base components absent
    for (const auto& [idx, c] : pbar.components()) {
        int nbase = 0;
        for (int i : idx)
            if (chart->role(i) == VarRole::Base) ++nbase;
        bool ok = (nbase == 0 && c.is_linear_fn()) || (nbase == 1 && c.is_basic());
        if (!ok) {
            std::string witness = "(";
            for (size_t t = 0; t < idx.size(); ++t)
                witness += (t ? ", " : "") + chart->var(idx[t]).name;
            witness += ")";
            throw PreconditionError("k-vector is not linear", witness);
        }
    }

    Polynomial i1 = Polynomial::variable(chart, iota_var);
    Multivector qbar = insert_differential(pbar, i1);
    Multivector pprime = pbar - wedge(liouville_field(chart), qbar);
    Multivector p = pprime.restrict_to_slice(iota_var, Scalar(1));
    Multivector q = qbar.restrict_to_slice(iota_var, Scalar(1));
    return FirstOrderOp(std::move(p), std::move(q));
}

JacobiStructure tangent_jacobi_lift(const AlgebroidData& a, const Multisection& lambda,
                                    const Multisection& e, bool self_check) {
    algebroid::require_axioms(a);
    Multisection r1 = algebroid::algebroid_schouten(a, lambda, lambda) +
                      algebroid::wedge(lambda, e) * Scalar(2);
    Multisection r2 = algebroid::algebroid_schouten(a, lambda, e);
    if (!r1.is_zero() || !r2.is_zero())
        throw PreconditionError("pair does not satisfy the algebroid master equations");

    auto total = algebroid::total_chart(a);
    using algebroid::LiftMode;
    Multivector lc = algebroid::lift(a, lambda, LiftMode::Complete, total);
    Multivector lv = algebroid::lift(a, lambda, LiftMode::Vertical, total);
    Multivector ec = algebroid::lift(a, e, LiftMode::Complete, total);
    Multivector ev = algebroid::lift(a, e, LiftMode::Vertical, total);
    Multivector big_lambda = lc - lv - wedge(liouville_field(total), ec - ev);
    JacobiStructure out(std::move(big_lambda), std::move(ec));
    if (self_check) {
        require_master_self_check(out, "tangent_jacobi_lift");
        if (jacobi::classify(out).is_affine != jacobi::Flag::True)
            throw Error("tangent_jacobi_lift: output is not affine");
    }
    return out;
}

JacobiStructure tangent_jacobi_lift(const JacobiStructure& j, bool self_check) {
    const auto& chart = j.chart();
    const int d = chart->dim();
    std::vector<Chart::Var> base_vars;
    for (const auto& v : chart->vars()) base_vars.push_back({v.name, v.laurent, VarRole::Base});
    ChartPtr base = poly::share(Chart(base_vars, false));

    AlgebroidData tm(base, d);
    for (int i = 0; i < d; ++i)
        tm.set_anchor(i, i, Polynomial::constant(base, Scalar(1)));

    std::vector<int> idmap(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) idmap[static_cast<size_t>(i)] = i;
    Multisection lam(base, d, 2);
    for (const auto& [idx, c] : j.lambda.components()) lam.add_term(idx, c.remap(base, idmap));
    Multisection ev(base, d, 1);
    for (const auto& [idx, c] : j.e.components()) ev.add_term(idx, c.remap(base, idmap));

    algebroid::require_axioms(tm);
    Multisection r1 = algebroid::algebroid_schouten(tm, lam, lam) +
                      algebroid::wedge(lam, ev) * Scalar(2);
    Multisection r2 = algebroid::algebroid_schouten(tm, lam, ev);
    if (!r1.is_zero() || !r2.is_zero())
        throw PreconditionError("input does not satisfy the master equations on TM");

    // doubled chart with fiber names d<var>
    std::vector<std::string> fibers;
    for (const auto& v : chart->vars()) fibers.push_back("d" + v.name);
    auto total = algebroid::total_chart(tm, fibers);
    using algebroid::LiftMode;
    Multivector lc = algebroid::lift(tm, lam, LiftMode::Complete, total);
    Multivector lv = algebroid::lift(tm, lam, LiftMode::Vertical, total);
    Multivector ec = algebroid::lift(tm, ev, LiftMode::Complete, total);
    Multivector evv = algebroid::lift(tm, ev, LiftMode::Vertical, total);
    Multivector big_lambda = lc - lv - wedge(liouville_field(total), ec - evv);
    JacobiStructure out(std::move(big_lambda), std::move(ec));
    if (self_check) {
        require_master_self_check(out, "tangent_jacobi_lift");
        if (jacobi::classify(out).is_affine != jacobi::Flag::True)
            throw Error("tangent_jacobi_lift: output is not affine");
    }
    return out;
}

}  // namespace jforge::correspond
