#include "jforge/foliation.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace jforge::foliation {

namespace {

// Bernoulli numbers with B1 = +1/2 (generating function t/(1 - e^{-t})),
// as needed for d/ds log(e^X e^{sY}) = sum_k B_k/k! ad_Z^k(Y).
const std::vector<Scalar>& bernoulli_plus() {
    static const std::vector<Scalar> b = {
        Scalar(1),          Scalar(1, 2),  Scalar(1, 6),   Scalar(0),
        Scalar(-1, 30),     Scalar(0),     Scalar(1, 42),  Scalar(0),
        Scalar(-1, 30),     Scalar(0),     Scalar(5, 66),  Scalar(0),
        Scalar(-691, 2730), Scalar(0),     Scalar(7, 6)};
    return b;
}

void require_constant_triple(const TripleData& t) {
    if (t.star.base_dim() != 0)
        throw PreconditionError("this operation needs a constant triple (m = 0)");
}

Scalar const_eval(const poly::Polynomial& p) { return p.evaluate({}); }

// constant structure constants c[g][a][b], antisymmetric in (a,b)
std::vector<std::vector<std::vector<Scalar>>> constant_c(const TripleData& t) {
    const int n = t.rank();
    std::vector<std::vector<std::vector<Scalar>>> c(
        static_cast<size_t>(n),
        std::vector<std::vector<Scalar>>(static_cast<size_t>(n),
                                         std::vector<Scalar>(static_cast<size_t>(n), Scalar(0))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                c[static_cast<size_t>(g)][static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    const_eval(t.star.c(a, b, g));
    return c;
}

std::vector<Scalar> bracket_const(const std::vector<std::vector<std::vector<Scalar>>>& c,
                                  const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    const size_t n = u.size();
    std::vector<Scalar> out(n, Scalar(0));
    for (size_t g = 0; g < n; ++g)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) out[g] += c[g][a][b] * u[a] * v[b];
    return out;
}

}  // namespace

CocycleReport cocycle_check(const TripleData& t) {
    CocycleReport rep;
    rep.star_axioms_ok = algebroid::check_axioms(t.star).pass;
    if (!rep.star_axioms_ok) {
        rep.pass = false;
        return rep;
    }
    auto dx0 = algebroid::exterior_derivative(t.star, t.x0);
    auto dp0 = algebroid::exterior_derivative(t.star, t.p0) + algebroid::wedge(t.x0, t.p0);
    if (!dx0.is_zero()) {
        rep.pass = false;
        rep.residual_x0 = dx0;
    }
    if (!dp0.is_zero()) {
        rep.pass = false;
        rep.residual_p0 = dp0;
    }
    return rep;
}

void require_cocycles(const TripleData& t) {
    auto rep = cocycle_check(t);
    if (!rep.pass) {
        std::string what = "triple invariants violated:";
        if (!rep.star_axioms_ok) what += " star bracket fails the Jacobi identity;";
        if (rep.residual_x0) what += " d_* X0 != 0;";
        if (rep.residual_p0) what += " d_* P0 + X0 ^ P0 != 0;";
        throw PreconditionError(what);
    }
}

namespace {

template <typename Num>
struct PointView {
    std::vector<std::vector<Num>> lambda_matrix;
    std::vector<Num> e_vector;
};

PointView<Scalar> eval_exact(const JacobiStructure& j, const std::vector<Scalar>& point) {
    const int d = j.chart()->dim();
    PointView<Scalar> out;
    out.lambda_matrix.assign(static_cast<size_t>(d),
                             std::vector<Scalar>(static_cast<size_t>(d), Scalar(0)));
    out.e_vector.assign(static_cast<size_t>(d), Scalar(0));
    for (const auto& [idx, c] : j.lambda.components()) {
        Scalar v = c.evaluate(point);
        out.lambda_matrix[static_cast<size_t>(idx[0])][static_cast<size_t>(idx[1])] = v;
        out.lambda_matrix[static_cast<size_t>(idx[1])][static_cast<size_t>(idx[0])] = -v;
    }
    for (const auto& [idx, c] : j.e.components())
        out.e_vector[static_cast<size_t>(idx[0])] = c.evaluate(point);
    return out;
}

PointView<double> eval_float(const JacobiStructure& j, const std::vector<double>& point) {
    const int d = j.chart()->dim();
    PointView<double> out;
    out.lambda_matrix.assign(static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 0.0));
    out.e_vector.assign(static_cast<size_t>(d), 0.0);
    for (const auto& [idx, c] : j.lambda.components()) {
        double v = c.evaluate_double(point);
        out.lambda_matrix[static_cast<size_t>(idx[0])][static_cast<size_t>(idx[1])] = v;
        out.lambda_matrix[static_cast<size_t>(idx[1])][static_cast<size_t>(idx[0])] = -v;
    }
    for (const auto& [idx, c] : j.e.components())
        out.e_vector[static_cast<size_t>(idx[0])] = c.evaluate_double(point);
    return out;
}

}  // namespace

CharRank char_rank(const JacobiStructure& j, const std::vector<Scalar>& point) {
    auto view = eval_exact(j, point);
    int rank_lambda = linalg::rank(view.lambda_matrix);
    auto augmented = view.lambda_matrix;
    for (size_t i = 0; i < augmented.size(); ++i) augmented[i].push_back(view.e_vector[i]);
    int rank_full = linalg::rank(augmented);
    CharRank out;
    out.rank = rank_full;
    out.odd = rank_full % 2 == 1;
    out.e_in_image = rank_full == rank_lambda;
    return out;
}

CharRank char_rank(const JacobiStructure& j, const std::vector<double>& point, double rel_tol) {
    auto view = eval_float(j, point);
    int rank_lambda = linalg::rank_double(view.lambda_matrix, rel_tol);
    auto augmented = view.lambda_matrix;
    for (size_t i = 0; i < augmented.size(); ++i) augmented[i].push_back(view.e_vector[i]);
    int rank_full = linalg::rank_double(augmented, rel_tol);
    CharRank out;
    out.rank = rank_full;
    out.odd = rank_full % 2 == 1;
    out.e_in_image = rank_full == rank_lambda;
    return out;
}

namespace {

LeafClass to_class(const CharRank& r) {
    if (r.rank == 0) return LeafClass::ZeroDim;
    return r.e_in_image ? LeafClass::LCS : LeafClass::Contact;
}

}  // namespace

LeafClass classify_point(const JacobiStructure& j, const std::vector<Scalar>& point) {
    return to_class(char_rank(j, point));
}

LeafClass classify_point(const JacobiStructure& j, const std::vector<double>& point,
                         double rel_tol) {
    return to_class(char_rank(j, point, rel_tol));
}

std::vector<std::vector<double>> AffineField::linear_double() const {
    std::vector<std::vector<double>> out;
    for (const auto& row : linear) {
        std::vector<double> r;
        for (const auto& x : row) r.push_back(to_double(x));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> AffineField::translation_double() const {
    std::vector<double> out;
    for (const auto& x : translation) out.push_back(to_double(x));
    return out;
}

AffineField infinitesimal_generator(const TripleData& t, const CoalgebraElement& a) {
    require_constant_triple(t);
    require_cocycles(t);
    const int n = t.rank();
    if (static_cast<int>(a.alpha.size()) != n)
        throw Error("coalgebra element dimension mismatch");
    JacobiStructure j = correspond::jacobi_from_triple(t, false);
    const auto& chart = j.chart();

    poly::Polynomial f = poly::Polynomial::constant(chart, a.lambda);
    for (int i = 0; i < n; ++i)
        f = f + poly::Polynomial::variable(chart, i) * a.alpha[static_cast<size_t>(i)];
    Multivector x = jacobi::hamiltonian_vf(j, f);

    AffineField out;
    out.linear.assign(static_cast<size_t>(n), linalg::Vector(static_cast<size_t>(n), Scalar(0)));
    out.translation.assign(static_cast<size_t>(n), Scalar(0));
    for (const auto& [idx, c] : x.components()) {
        if (!c.is_affine_fn())
            throw Error("hamiltonian field of an affine function is not affine");
        size_t row = static_cast<size_t>(idx[0]);
        out.translation[row] = -c.basic_part().evaluate(std::vector<Scalar>(
            static_cast<size_t>(n), Scalar(0)));
        for (int v = 0; v < n; ++v) {
            poly::Polynomial lc = c.linear_coefficient(v);
            out.linear[row][static_cast<size_t>(v)] = -lc.evaluate(std::vector<Scalar>(
                static_cast<size_t>(n), Scalar(0)));
        }
    }
    return out;
}

std::vector<double> affine_flow(const AffineField& f, double time, const std::vector<double>& x0) {
    const int n = f.dim();
    std::vector<std::vector<double>> h(static_cast<size_t>(n + 1),
                                       std::vector<double>(static_cast<size_t>(n + 1), 0.0));
    auto ld = f.linear_double();
    auto bd = f.translation_double();
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) h[static_cast<size_t>(i)][static_cast<size_t>(k)] =
            time * ld[static_cast<size_t>(i)][static_cast<size_t>(k)];
        h[static_cast<size_t>(i)][static_cast<size_t>(n)] = time * bd[static_cast<size_t>(i)];
    }
    auto e = linalg::expm(h);
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = e[static_cast<size_t>(i)][static_cast<size_t>(n)];
        for (int k = 0; k < n; ++k)
            acc += e[static_cast<size_t>(i)][static_cast<size_t>(k)] * x0[static_cast<size_t>(k)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

linalg::Vector affine_flow_exact(const AffineField& f, const Scalar& time,
                                 const linalg::Vector& x0) {
    const size_t n = f.translation.size();
    linalg::Matrix h(n + 1, linalg::Vector(n + 1, Scalar(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) h[i][k] = f.linear[i][k];
        h[i][n] = f.translation[i];
    }
    auto e = linalg::expm_nilpotent(h, time);
    linalg::Vector out(n, Scalar(0));
    for (size_t i = 0; i < n; ++i) {
        Scalar acc = e[i][n];
        for (size_t k = 0; k < n; ++k) acc += e[i][k] * x0[k];
        out[i] = acc;
    }
    return out;
}

OrbitSample orbit_sample(const TripleData& t, const std::vector<double>& x0,
                         const OrbitOptions& opt) {
    require_constant_triple(t);
    require_cocycles(t);
    const int n = t.rank();
    JacobiStructure j = correspond::jacobi_from_triple(t, false);

    std::vector<AffineField> gens;
    for (int i = 0; i < n; ++i) {
        CoalgebraElement a;
        a.alpha.assign(static_cast<size_t>(n), Scalar(0));
        a.alpha[static_cast<size_t>(i)] = Scalar(1);
        a.lambda = Scalar(0);
        gens.push_back(infinitesimal_generator(t, a));
    }
    {
        CoalgebraElement unit;
        unit.alpha.assign(static_cast<size_t>(n), Scalar(0));
        unit.lambda = Scalar(1);
        gens.push_back(infinitesimal_generator(t, unit));
    }

    OrbitSample out;
    out.base_point = x0;
    out.base_rank = char_rank(j, x0, opt.rank_tol);
    out.base_class = to_class(out.base_rank);
    out.invariant_log.assign(opt.invariants.size(), {});

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_real_distribution<double> tdist(-opt.max_step, opt.max_step);

    std::vector<double> p = x0;
    std::string word;
    int in_word = 0;
    for (int step = 0; step < opt.step_budget; ++step) {
        size_t g = pick(rng);
        double tau = tdist(rng);
        p = affine_flow(gens[g], tau, p);
        std::ostringstream piece;
        piece << (in_word ? ";" : "") << "g" << g << ":" << tau;
        word += piece.str();
        ++in_word;
        out.points.push_back({word, p});
        for (size_t k = 0; k < opt.invariants.size(); ++k)
            out.invariant_log[k].push_back(opt.invariants[k].evaluate_double(p));
        CharRank r = char_rank(j, p, opt.rank_tol);
        if (r.rank != out.base_rank.rank || r.e_in_image != out.base_rank.e_in_image)
            out.rank_constant = false;
        if (in_word == opt.word_length) {
            word.clear();
            in_word = 0;
        }
    }
    return out;
}

Scalar sigma0_eval(const TripleData& t, const std::vector<Scalar>& xi) {
    require_constant_triple(t);
    const int n = t.rank();
    if (static_cast<int>(xi.size()) != n) throw Error("dimension mismatch in sigma0");
    Scalar out(0);
    for (int i = 0; i < n; ++i)
        out += xi[static_cast<size_t>(i)] * const_eval(t.x0.component({i}));
    return out;
}

int nilpotency_class(const TripleData& t) {
    require_constant_triple(t);
    const int n = t.rank();
    auto c = constant_c(t);
    // lower central series by spanning sets
    std::vector<std::vector<Scalar>> layer;
    for (int a = 0; a < n; ++a) {
        std::vector<Scalar> ea(static_cast<size_t>(n), Scalar(0));
        ea[static_cast<size_t>(a)] = Scalar(1);
        layer.push_back(std::move(ea));
    }
    int cls = 1;
    int prev_dim = n;
    for (int iter = 0; iter <= n + 1; ++iter) {
        std::vector<std::vector<Scalar>> next;
        for (int a = 0; a < n; ++a) {
            std::vector<Scalar> ea(static_cast<size_t>(n), Scalar(0));
            ea[static_cast<size_t>(a)] = Scalar(1);
            for (const auto& w : layer) next.push_back(bracket_const(c, ea, w));
        }
        int dim = linalg::rank(next);
        if (dim == 0) return cls;
        if (dim >= prev_dim && iter > 0)
            throw PreconditionError("star algebra is not nilpotent; group mode unavailable");
        prev_dim = dim;
        layer = std::move(next);
        ++cls;
    }
    throw PreconditionError("star algebra is not nilpotent; group mode unavailable");
}

std::vector<Scalar> bch_product(const TripleData& t, const std::vector<Scalar>& x,
                                const std::vector<Scalar>& y) {
    require_constant_triple(t);
    const int cls = nilpotency_class(t);
    const size_t n = static_cast<size_t>(t.rank());
    if (x.size() != n || y.size() != n) throw Error("dimension mismatch in BCH product");
    auto c = constant_c(t);

    // Z(s) = log(e^X e^{sY}) solves Z' = sum_k B+_k/k! ad_Z^k(Y), Z(0) = X.
    // Coordinates are polynomials in s; the fixed-point iteration gains one
    // bracket-filtration order per pass and the series terminates at the
    // nilpotency class.
    using SPoly = std::vector<Scalar>;                 // coefficients by power of s
    using SVec = std::vector<SPoly>;                   // one SPoly per coordinate
    auto spoly_mul = [](const SPoly& a, const SPoly& b) {
        SPoly out(a.size() + b.size() - 1, Scalar(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
        return out;
    };
    auto svec_bracket = [&](const SVec& u, const SVec& v) {
        SVec out(n, SPoly{Scalar(0)});
        for (size_t g = 0; g < n; ++g) {
            SPoly acc{Scalar(0)};
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) {
                    if (c[g][a][b] == 0) continue;
                    SPoly piece = spoly_mul(u[a], v[b]);
                    for (auto& q : piece) q *= c[g][a][b];
                    if (piece.size() > acc.size()) acc.resize(piece.size(), Scalar(0));
                    for (size_t i = 0; i < piece.size(); ++i) acc[i] += piece[i];
                }
            out[g] = std::move(acc);
        }
        return out;
    };

    SVec yv(n), z(n);
    for (size_t i = 0; i < n; ++i) {
        yv[i] = SPoly{y[i]};
        z[i] = SPoly{x[i], y[i]};  // initial guess X + sY
    }
    const auto& bern = bernoulli_plus();
    for (int pass = 0; pass < cls + 2; ++pass) {
        // rhs(s) = sum_{k < cls} B+_k/k! ad_Z^k(Y), starting from the k = 0 term
        SVec adk = yv;
        Scalar fact(1);
        SVec rhs(n, SPoly{Scalar(0)});
        for (size_t i = 0; i < n; ++i) rhs[i] = yv[i];
        for (int k = 1; k < cls; ++k) {
            adk = svec_bracket(z, adk);
            fact *= Scalar(k);
            if (static_cast<size_t>(k) >= bern.size())
                throw Error("nilpotency class exceeds the tabulated Bernoulli numbers");
            Scalar w = bern[static_cast<size_t>(k)] / fact;
            if (w == 0) continue;
            for (size_t i = 0; i < n; ++i) {
                SPoly piece = adk[i];
                for (auto& q : piece) q *= w;
                if (piece.size() > rhs[i].size()) rhs[i].resize(piece.size(), Scalar(0));
                for (size_t q = 0; q < piece.size(); ++q) rhs[i][q] += piece[q];
            }
        }
        // Z <- X + int_0^s rhs
        SVec znew(n);
        for (size_t i = 0; i < n; ++i) {
            SPoly zi(rhs[i].size() + 1, Scalar(0));
            zi[0] = x[i];
            for (size_t q = 0; q < rhs[i].size(); ++q)
                zi[q + 1] = rhs[i][q] / Scalar(static_cast<long>(q + 1));
            znew[i] = std::move(zi);
        }
        z = std::move(znew);
    }
    std::vector<Scalar> out(n, Scalar(0));
    for (size_t i = 0; i < n; ++i)
        for (const auto& q : z[i]) out[i] += q;  // evaluate at s = 1
    return out;
}

GroupElement group_law(const TripleData& t, const GroupCochain& phi0, const GroupElement& g1,
                       const GroupElement& g2) {
    require_constant_triple(t);
    if (!phi0) throw PreconditionError("group_law needs a supplied 2-cochain phi0");
    const size_t n = static_cast<size_t>(t.rank());
    std::vector<Scalar> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = Scalar(g1.xi[i]);
        y[i] = Scalar(g2.xi[i]);
    }
    auto prod = bch_product(t, x, y);
    GroupElement out;
    out.xi.resize(n);
    for (size_t i = 0; i < n; ++i) out.xi[i] = to_double(prod[i]);
    std::vector<Scalar> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = Scalar(g1.xi[i]);
    double sigma = to_double(sigma0_eval(t, xs));
    out.t = g1.t + std::exp(sigma) * g2.t - phi0(g1.xi, g2.xi);
    return out;
}

double group_cochain_differential(const TripleData& t, const GroupCochain& phi0,
                                  const GroupElement& g1, const GroupElement& g2,
                                  const GroupElement& g3) {
    const size_t n = static_cast<size_t>(t.rank());
    auto mul = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<Scalar> x(n), y(n);
        for (size_t i = 0; i < n; ++i) {
            x[i] = Scalar(a[i]);
            y[i] = Scalar(b[i]);
        }
        auto p = bch_product(t, x, y);
        std::vector<double> out(n);
        for (size_t i = 0; i < n; ++i) out[i] = to_double(p[i]);
        return out;
    };
    std::vector<Scalar> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = Scalar(g1.xi[i]);
    double sigma = to_double(sigma0_eval(t, xs));
    return std::exp(sigma) * phi0(g2.xi, g3.xi) - phi0(mul(g1.xi, g2.xi), g3.xi) +
           phi0(g1.xi, mul(g2.xi, g3.xi)) - phi0(g1.xi, g2.xi);
}

double phi_to_p0(const TripleData& t, const GroupCochain& phi0, int i, int k, double h) {
    const size_t n = static_cast<size_t>(t.rank());
    auto f = [&](double a, double b) {
        std::vector<double> xi(n, 0.0), eta(n, 0.0);
        xi[static_cast<size_t>(i)] = a;
        eta[static_cast<size_t>(k)] = b;
        return phi0(xi, eta) - phi0(eta, xi);
    };
    return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
}

LeafGeometry leaf_geometry(const TripleData& t, const std::vector<Scalar>& y) {
    require_constant_triple(t);
    require_cocycles(t);
    const int n = t.rank();
    JacobiStructure j = correspond::jacobi_from_triple(t, false);
    LeafGeometry out;
    CharRank r = char_rank(j, y);
    out.classification = to_class(r);
    if (out.classification == LeafClass::ZeroDim) return out;

    auto c = constant_c(t);
    if (out.classification == LeafClass::Contact) {
        // eta(alpha_Y) = -alpha(Y) on the generator frame, eta(X0^v) = -1
        for (int a = 0; a < n; ++a) out.eta.push_back(-y[static_cast<size_t>(a)]);
        out.eta.push_back(Scalar(-1));
    } else {
        out.omega2.assign(static_cast<size_t>(n),
                          std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                // Omega(alpha_Y, beta_Y) = [alpha,beta]_*(Y) - P0(alpha,beta)
                Scalar v(0);
                for (int g = 0; g < n; ++g)
                    v += c[static_cast<size_t>(g)][static_cast<size_t>(a)][static_cast<size_t>(b)] *
                         y[static_cast<size_t>(g)];
                int lo = std::min(a, b), hi = std::max(a, b);
                Scalar p = const_eval(t.p0.component({lo, hi}));
                if (a > b) p = -p;
                if (a != b) v -= p;
                out.omega2[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
            }
            // omega(alpha_Y) = -alpha(X0)
            out.omega1.push_back(-const_eval(t.x0.component({a})));
        }
    }
    return out;
}

}  // namespace jforge::foliation
