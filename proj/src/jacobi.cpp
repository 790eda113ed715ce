#include "jforge/jacobi.hpp"

#include <functional>

namespace jforge::jacobi {

namespace {

bool odd(int k) { return ((k % 2) + 2) % 2 == 1; }

Polynomial apply_vf(const Multivector& v, const Polynomial& f) {
    // v(f) for a vector field
    Polynomial out = Polynomial::zero(f.chart());
    for (const auto& [idx, c] : v.components()) out = out + c * f.derivative(idx[0]);
    return out;
}

}  // namespace

JacobiStructure::JacobiStructure(Multivector l, Multivector ev)
    : lambda(std::move(l)), e(std::move(ev)) {
    poly::require_same_chart(lambda.chart(), e.chart());
    if (lambda.degree() != 2 || e.degree() != 1)
        throw Error("JacobiStructure needs a bivector and a vector field");
}

MasterReport check_master(const JacobiStructure& j) {
    Multivector r1 = schouten_nijenhuis(j.lambda, j.lambda) + wedge(j.e, j.lambda) * Scalar(2);
    Multivector r2 = schouten_nijenhuis(j.e, j.lambda);
    return MasterReport{r1.is_zero() && r2.is_zero(), std::move(r1), std::move(r2)};
}

Polynomial jacobi_bracket(const JacobiStructure& j, const Polynomial& f, const Polynomial& g) {
    poly::require_same_chart(j.chart(), f.chart());
    poly::require_same_chart(j.chart(), g.chart());
    Polynomial out = contract_all(j.lambda, {f, g});
    out = out + f * apply_vf(j.e, g) - g * apply_vf(j.e, f);
    return out;
}

Multivector hamiltonian_vf(const JacobiStructure& j, const Polynomial& f) {
    return insert_differential(j.lambda, f) + j.e * f;
}

FirstOrderOp::FirstOrderOp(Multivector p_part) : p(std::move(p_part)) {
    if (p.degree() >= 1) q = Multivector::zero(p.chart(), p.degree() - 1);
}

FirstOrderOp::FirstOrderOp(Multivector p_part, Multivector q_part)
    : p(std::move(p_part)), q(std::move(q_part)) {
    poly::require_same_chart(p.chart(), q->chart());
    if (p.degree() == 0) throw Error("degree-0 operator carries no I-part");
    if (q->degree() != p.degree() - 1)
        throw Error("FirstOrderOp needs deg Q = deg P - 1");
}

bool FirstOrderOp::operator==(const FirstOrderOp& o) const {
    if (p != o.p) return false;
    bool zq = !q || q->is_zero();
    bool ozq = !o.q || o.q->is_zero();
    if (zq && ozq) return true;
    if (zq != ozq) return false;
    return *q == *o.q;
}

FirstOrderOp schouten_jacobi(const FirstOrderOp& a, const FirstOrderOp& b) {
    poly::require_same_chart(a.chart(), b.chart());
    const auto& chart = a.chart();
    int k1 = a.degree(), k2 = b.degree();
    int sa = k1 - 1, sb = k2 - 1;
    int sign_a = odd(sa) ? -1 : 1;
    int kr = std::max(k1 + k2 - 1, 0);

    Multivector pr = Multivector::zero(chart, kr);
    auto accum = [](Multivector& acc, const Multivector& v) {
        if (v.is_zero()) return;
        acc = acc + v;
    };

    accum(pr, schouten_nijenhuis(a.p, b.p));
    if (b.q && sa != 0) accum(pr, wedge(a.p, *b.q) * Scalar(sa));
    if (a.q && sb != 0) accum(pr, wedge(*a.q, b.p) * Scalar(-sign_a * sb));

    if (kr == 0) return FirstOrderOp(std::move(pr));

    Multivector qr = Multivector::zero(chart, kr - 1);
    if (b.q) accum(qr, schouten_nijenhuis(a.p, *b.q) * Scalar(sign_a));
    if (a.q) accum(qr, schouten_nijenhuis(*a.q, b.p));
    if (a.q && b.q && sa != sb) accum(qr, wedge(*a.q, *b.q) * Scalar(sa - sb));
    return FirstOrderOp(std::move(pr), std::move(qr));
}

const std::pair<std::string, std::string>* ClassificationReport::witness_for(
    const std::string& flag) const {
    for (const auto& [name, pair] : witnesses)
        if (name == flag) return &pair;
    return nullptr;
}

namespace {

// Generator list (1, x^1..x^m, y^1..y^n) with names and defining functions.
struct Generators {
    std::vector<std::string> names;
    std::vector<Polynomial> fns;
    std::vector<int> base_vars;   // chart indices
    std::vector<int> fiber_vars;  // chart indices
};

Generators make_generators(const ChartPtr& chart) {
    Generators g;
    g.names.push_back("1");
    g.fns.push_back(Polynomial::constant(chart, Scalar(1)));
    for (int i : chart->base_indices()) {
        g.base_vars.push_back(i);
        g.names.push_back(chart->var(i).name);
        g.fns.push_back(Polynomial::variable(chart, i));
    }
    for (int i : chart->fiber_indices()) {
        g.fiber_vars.push_back(i);
        g.names.push_back(chart->var(i).name);
        g.fns.push_back(Polynomial::variable(chart, i));
    }
    return g;
}

using Witness = std::optional<std::pair<std::string, std::string>>;

// Scans all generator pairs (u,v), u before v, in lexicographic order with
// a per-pair predicate; returns the first failing pair.
Witness scan_pairs(const Generators& g,
                   const std::function<bool(size_t, size_t)>& pair_ok) {
    for (size_t u = 0; u < g.names.size(); ++u)
        for (size_t v = u + 1; v < g.names.size(); ++v)
            if (!pair_ok(u, v)) return std::make_pair(g.names[u], g.names[v]);
    return std::nullopt;
}

enum class GenKind { One, Base, Fiber };

GenKind kind_of(const Generators& g, size_t i) {
    if (i == 0) return GenKind::One;
    return i <= g.base_vars.size() ? GenKind::Base : GenKind::Fiber;
}

}  // namespace

ClassificationReport classify(const JacobiStructure& j) {
    const auto& chart = j.chart();
    if (!chart->has_split())
        throw PreconditionError("classify needs a chart with a base/fiber split");

    ClassificationReport rep;
    Generators g = make_generators(chart);
    const size_t m = g.base_vars.size();
    const size_t n = g.fiber_vars.size();

    auto e_of = [&](const Polynomial& f) { return apply_vf(j.e, f); };
    auto lambda_of = [&](const Polynomial& f, const Polynomial& h) {
        return contract_all(j.lambda, {f, h});
    };
    auto bracket = [&](size_t u, size_t v) { return jacobi_bracket(j, g.fns[u], g.fns[v]); };

    // poisson: E identically zero
    if (j.e.is_zero()) {
        rep.is_poisson = Flag::True;
    } else {
        rep.is_poisson = Flag::False;
        for (size_t v = 1; v < g.names.size(); ++v) {
            if (!e_of(g.fns[v]).is_zero()) {
                rep.witnesses.push_back({"poisson", {g.names[0], g.names[v]}});
                break;
            }
        }
    }

    if (n == 0) {
        // rank-0 route: every function is basic, the bracket closes trivially;
        // the remaining flags are statements about a fiber that is not there.
        rep.rank_zero = true;
        rep.is_affine = Flag::True;
        rep.is_linear = Flag::NotApplicable;
        rep.is_homogeneous = Flag::NotApplicable;
        rep.is_affine_homogeneous = Flag::NotApplicable;
        rep.is_strongly_affine = Flag::NotApplicable;
        return rep;
    }

    // affine: closure on the generators plus the basic-function conditions
    Witness w_affine = scan_pairs(g, [&](size_t u, size_t v) {
        GenKind ku = kind_of(g, u), kv = kind_of(g, v);
        if (ku == GenKind::One && kv == GenKind::Base) return e_of(g.fns[v]).is_basic();
        if (ku == GenKind::One && kv == GenKind::Fiber) return e_of(g.fns[v]).is_affine_fn();
        if (ku == GenKind::Base && kv == GenKind::Base)
            return lambda_of(g.fns[u], g.fns[v]).is_zero();
        if (ku == GenKind::Base && kv == GenKind::Fiber)
            return (bracket(u, v) - g.fns[u] * e_of(g.fns[v])).is_basic();
        return bracket(u, v).is_affine_fn();  // fiber-fiber
    });
    rep.is_affine = w_affine ? Flag::False : Flag::True;
    if (w_affine) rep.witnesses.push_back({"affine", *w_affine});

    // linear: closure of the bracket on linear functions (no condition on
    // pairs involving 1, which is affine but not linear)
    Witness w_linear = scan_pairs(g, [&](size_t u, size_t v) {
        GenKind ku = kind_of(g, u), kv = kind_of(g, v);
        if (ku == GenKind::One) return true;
        if (ku == GenKind::Base && kv == GenKind::Base)
            return lambda_of(g.fns[u], g.fns[v]).is_zero();
        if (ku == GenKind::Base && kv == GenKind::Fiber)
            return (bracket(u, v) - g.fns[u] * e_of(g.fns[v])).is_basic();
        return bracket(u, v).is_linear_fn();  // fiber-fiber
    });
    rep.is_linear = w_linear ? Flag::False : Flag::True;
    if (w_linear) rep.witnesses.push_back({"linear", *w_linear});

    // homogeneous, bracket route of the characterization: linear + affine +
    // {1, linear} basic + E kills basic functions
    Witness w_hom = scan_pairs(g, [&](size_t u, size_t v) {
        GenKind ku = kind_of(g, u), kv = kind_of(g, v);
        if (ku == GenKind::One && kv == GenKind::Base) return e_of(g.fns[v]).is_zero();
        if (ku == GenKind::One && kv == GenKind::Fiber) return e_of(g.fns[v]).is_basic();
        if (ku == GenKind::Base && kv == GenKind::Base)
            return lambda_of(g.fns[u], g.fns[v]).is_zero();
        if (ku == GenKind::Base && kv == GenKind::Fiber)
            return (bracket(u, v) - g.fns[u] * e_of(g.fns[v])).is_basic();
        return bracket(u, v).is_linear_fn();
    });
    rep.is_homogeneous = w_hom ? Flag::False : Flag::True;
    if (w_hom) rep.witnesses.push_back({"homogeneous", *w_hom});

    // affine-homogeneous via the invariance characterization: E is an
    // invariant vertical field and Lambda is an affine tensor
    Witness w_ah = scan_pairs(g, [&](size_t u, size_t v) {
        GenKind ku = kind_of(g, u), kv = kind_of(g, v);
        if (ku == GenKind::One && kv == GenKind::Base) return e_of(g.fns[v]).is_zero();
        if (ku == GenKind::One && kv == GenKind::Fiber) return e_of(g.fns[v]).is_basic();
        if (ku == GenKind::Base && kv == GenKind::Base)
            return lambda_of(g.fns[u], g.fns[v]).is_zero();
        if (ku == GenKind::Base && kv == GenKind::Fiber)
            return lambda_of(g.fns[u], g.fns[v]).is_basic();
        return lambda_of(g.fns[u], g.fns[v]).is_affine_fn();
    });
    rep.is_affine_homogeneous = w_ah ? Flag::False : Flag::True;
    if (w_ah) rep.witnesses.push_back({"affine_homogeneous", *w_ah});

    // strongly-affine: hamiltonian fields of affine functions stay affine.
    // Scan order: strictly increasing pairs first, then the diagonal fiber
    // pairs, then the base components of E.
    Witness w_sa;
    if (w_affine) {
        w_sa = w_affine;
    } else {
        w_sa = scan_pairs(g, [&](size_t u, size_t v) {
            if (v == 0) return true;
            Polynomial xuv = apply_vf(hamiltonian_vf(j, g.fns[u]), g.fns[v]);
            GenKind kv = kind_of(g, v);
            return kv == GenKind::Base ? xuv.is_basic() : xuv.is_affine_fn();
        });
        if (!w_sa) {
            for (size_t a = 0; a < n && !w_sa; ++a) {
                size_t idx = 1 + m + a;
                Polynomial diag = apply_vf(hamiltonian_vf(j, g.fns[idx]), g.fns[idx]);
                if (!diag.is_affine_fn()) w_sa = std::make_pair(g.names[idx], g.names[idx]);
            }
        }
        if (!w_sa) {
            for (size_t i = 0; i < m && !w_sa; ++i) {
                if (!e_of(g.fns[1 + i]).is_zero())
                    w_sa = std::make_pair(g.names[0], g.names[1 + i]);
            }
        }
    }
    rep.is_strongly_affine = w_sa ? Flag::False : Flag::True;
    if (w_sa) rep.witnesses.push_back({"strongly_affine", *w_sa});

    return rep;
}

bool homogeneous_via_lie_derivative(const JacobiStructure& j) {
    Multivector delta = liouville_field(j.chart());
    return lie_derivative(delta, j.lambda) == -j.lambda &&
           lie_derivative(delta, j.e) == -j.e;
}

namespace {

// Component conditions shared by the strongly-affine routes.
struct SplitView {
    std::vector<int> base, fiber;
    explicit SplitView(const ChartPtr& c) : base(c->base_indices()), fiber(c->fiber_indices()) {}
};

bool is_affine_structure(const JacobiStructure& j) {
    auto rep = classify(j);
    return rep.is_affine == Flag::True;
}

}  // namespace

bool strongly_affine_via_ii(const JacobiStructure& j) {
    // E affine-invariant (vertical with basic components) and Lambda affine
    // as a tensor, read off componentwise.
    const auto& chart = j.chart();
    for (const auto& [idx, c] : j.e.components()) {
        if (chart->role(idx[0]) == poly::VarRole::Base) return false;
        if (!c.is_basic()) return false;
    }
    for (const auto& [idx, c] : j.lambda.components()) {
        poly::VarRole r0 = chart->role(idx[0]);
        poly::VarRole r1 = chart->role(idx[1]);
        int nbase = (r0 == poly::VarRole::Base ? 1 : 0) + (r1 == poly::VarRole::Base ? 1 : 0);
        if (nbase == 2) return false;
        if (nbase == 1 && !c.is_basic()) return false;
        if (nbase == 0 && !c.is_affine_fn()) return false;
    }
    return true;
}

bool strongly_affine_via_iii(const JacobiStructure& j) {
    if (!is_affine_structure(j)) return false;
    const auto& chart = j.chart();
    SplitView s(chart);
    auto field_affine = [&](const Multivector& x) {
        for (int i : s.base)
            if (!apply_vf(x, Polynomial::variable(chart, i)).is_basic()) return false;
        for (int a : s.fiber)
            if (!apply_vf(x, Polynomial::variable(chart, a)).is_affine_fn()) return false;
        return true;
    };
    std::vector<Polynomial> gens;
    gens.push_back(Polynomial::constant(chart, Scalar(1)));
    for (int i : s.base) gens.push_back(Polynomial::variable(chart, i));
    for (int a : s.fiber) gens.push_back(Polynomial::variable(chart, a));
    for (int i : s.base)
        for (int a : s.fiber)
            gens.push_back(Polynomial::variable(chart, i) * Polynomial::variable(chart, a));
    for (const auto& f : gens)
        if (!field_affine(hamiltonian_vf(j, f))) return false;
    return true;
}

bool strongly_affine_via_iv(const JacobiStructure& j) {
    if (!is_affine_structure(j)) return false;
    const auto& chart = j.chart();
    SplitView s(chart);
    std::vector<Polynomial> affine_gens;
    for (int a : s.fiber) affine_gens.push_back(Polynomial::variable(chart, a));
    for (int i : s.base)
        for (int a : s.fiber)
            affine_gens.push_back(Polynomial::variable(chart, i) * Polynomial::variable(chart, a));
    std::vector<Polynomial> basic_gens;
    basic_gens.push_back(Polynomial::constant(chart, Scalar(1)));
    for (int i : s.base) basic_gens.push_back(Polynomial::variable(chart, i));
    for (const auto& a : affine_gens)
        for (const auto& f : basic_gens)
            if (!jacobi_bracket(j, a, f).is_basic()) return false;
    return true;
}

bool strongly_affine_via_v(const JacobiStructure& j) {
    if (!is_affine_structure(j)) return false;
    const auto& chart = j.chart();
    SplitView s(chart);
    auto e_of = [&](const Polynomial& f) { return apply_vf(j.e, f); };
    for (int a : s.fiber)
        if (!e_of(Polynomial::variable(chart, a)).is_basic()) return false;
    for (int i : s.base)
        if (!e_of(Polynomial::variable(chart, i)).is_zero()) return false;
    // C^inf-linearity of the induced section of the hull
    for (int i : s.base) {
        Polynomial xi = Polynomial::variable(chart, i);
        for (int a : s.fiber) {
            Polynomial ya = Polynomial::variable(chart, a);
            if (e_of(xi * ya) != xi * e_of(ya)) return false;
        }
    }
    return true;
}

bool affine_homogeneous_via_i(const JacobiStructure& j) {
    const auto& chart = j.chart();
    SplitView s(chart);
    FirstOrderOp jop = FirstOrderOp::from_jacobi(j);
    std::vector<FirstOrderOp> gens;
    for (int a : s.fiber) gens.push_back(FirstOrderOp(Multivector::basis_vector(chart, a)));
    gens.push_back(FirstOrderOp(Multivector::scalar(Polynomial::constant(chart, Scalar(1)))));
    for (int i : s.base)
        gens.push_back(FirstOrderOp(Multivector::scalar(Polynomial::variable(chart, i))));
    for (const auto& d2 : gens) {
        FirstOrderOp inner = schouten_jacobi(d2, jop);
        for (const auto& d1 : gens)
            if (!schouten_jacobi(d1, inner).is_zero()) return false;
    }
    return true;
}

}  // namespace jforge::jacobi
