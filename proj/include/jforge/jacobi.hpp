#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jforge/multivector.hpp"

namespace jforge::jacobi {

using poly::Chart;
using poly::ChartPtr;
using poly::Multivector;
using poly::Polynomial;

// A pair (Lambda, E) of a bivector and a vector field on one chart.  The
// master equations [L,L] = -2 E^L, [E,L] = 0 are verified by check_master;
// raw construction does not verify them.
struct JacobiStructure {
    Multivector lambda;
    Multivector e;

    JacobiStructure(Multivector l, Multivector ev);
    const ChartPtr& chart() const { return lambda.chart(); }

    static JacobiStructure zero(const ChartPtr& chart) {
        return JacobiStructure(Multivector::zero(chart, 2), Multivector::zero(chart, 1));
    }
    bool operator==(const JacobiStructure& o) const {
        return lambda == o.lambda && e == o.e;
    }
};

struct MasterReport {
    bool pass;
    Multivector residual_lambda;  // [L,L] + 2 E^L
    Multivector residual_e;       // [E,L]
};

MasterReport check_master(const JacobiStructure& j);

// {f,g} = L(df,dg) + f E(g) - g E(f)
Polynomial jacobi_bracket(const JacobiStructure& j, const Polynomial& f, const Polynomial& g);

// X_f = #_L(df) + f E
Multivector hamiltonian_vf(const JacobiStructure& j, const Polynomial& f);

// First-order polydifferential operator P + I^Q with deg Q = deg P - 1
// (Q absent in degree 0).
struct FirstOrderOp {
    Multivector p;
    std::optional<Multivector> q;

    explicit FirstOrderOp(Multivector p_part);
    FirstOrderOp(Multivector p_part, Multivector q_part);

    int degree() const { return p.degree(); }
    const ChartPtr& chart() const { return p.chart(); }
    bool is_zero() const { return p.is_zero() && (!q || q->is_zero()); }
    bool operator==(const FirstOrderOp& o) const;

    static FirstOrderOp from_jacobi(const JacobiStructure& j) {
        return FirstOrderOp(j.lambda, j.e);
    }
};

// The Schouten-Jacobi bracket [.,.]_1 on first-order polydifferential
// operators, with the degree placeholders of the displayed formula read as
// shifted degrees a = deg A - 1, b = deg B - 1 (the reading under which
// [L + I^E, L + I^E]_1 = [L,L] + 2 I^[E,L] + 2 L^E).
FirstOrderOp schouten_jacobi(const FirstOrderOp& a, const FirstOrderOp& b);

enum class Flag { False, True, NotApplicable };

struct ClassificationReport {
    Flag is_poisson = Flag::False;
    Flag is_linear = Flag::False;
    Flag is_affine = Flag::False;
    Flag is_homogeneous = Flag::False;
    Flag is_affine_homogeneous = Flag::False;
    Flag is_strongly_affine = Flag::False;
    bool rank_zero = false;  // n = 0: local-Lie-algebra route, flags above NA

    // witness generator pair for each false flag, by flag name
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> witnesses;

    const std::pair<std::string, std::string>* witness_for(const std::string& flag) const;
};

// Finite generator checks over {1, x^i, y^a}; requires a split chart.
ClassificationReport classify(const JacobiStructure& j);

// The two routes of the homogeneity characterization; classify uses the
// bracket route, this one is the Lie-derivative route (L_D L = -L and
// L_D E = -E), kept separate so the agreement is testable.
bool homogeneous_via_lie_derivative(const JacobiStructure& j);

// The four equivalent strongly-affine characterizations for rank > 0,
// each implemented on its own finite reduction:
//   (ii)  E affine-invariant and Lambda affine
//   (iii) hamiltonian fields of generator affine functions are affine
//   (iv)  basic functions form a bracket ideal in the affine functions
//   (v)   E(a) is basic and C^inf-linear in the section of A+
bool strongly_affine_via_ii(const JacobiStructure& j);
bool strongly_affine_via_iii(const JacobiStructure& j);
bool strongly_affine_via_iv(const JacobiStructure& j);
bool strongly_affine_via_v(const JacobiStructure& j);
// (i) affine-homogeneity probed on the vertical-lift generator operators
bool affine_homogeneous_via_i(const JacobiStructure& j);

}  // namespace jforge::jacobi
