#pragma once

// Shared fixtures: the running example structures of the test suites.

#include "jforge/jacobi.hpp"

namespace jforge::testing {

using jacobi::JacobiStructure;
using poly::Chart;
using poly::ChartPtr;
using poly::Multivector;
using poly::Polynomial;

inline ChartPtr chart_r3_vs() { return poly::share(Chart::vector_space({"x1", "x2", "x3"})); }

// L = x1 x3 d2^d3 - x1^2 d1^d2, E = x1 d2 on the vector space R^3.  Affine
// Jacobi, not strongly-affine.
inline JacobiStructure affine_r3() {
    auto c = chart_r3_vs();
    Multivector l(c, 2);
    l.add_term({1, 2}, Polynomial::variable(c, 0) * Polynomial::variable(c, 2));
    l.add_term({0, 1}, -(Polynomial::variable(c, 0) * Polynomial::variable(c, 0)));
    Multivector e(c, 1);
    e.add_term({1}, Polynomial::variable(c, 0));
    return JacobiStructure(std::move(l), std::move(e));
}

// so(3) Lie-Poisson: L = x3 d1^d2 + x1 d2^d3 + x2 d3^d1, E = 0.
inline JacobiStructure so3_lie_poisson() {
    auto c = chart_r3_vs();
    Multivector l(c, 2);
    l.add_term({0, 1}, Polynomial::variable(c, 2));
    l.add_term({1, 2}, Polynomial::variable(c, 0));
    l.add_term({2, 0}, Polynomial::variable(c, 1));
    return JacobiStructure(std::move(l), Multivector::zero(c, 1));
}

// Contact structure of dz - y dx on R^3 (plain chart):
// L = dx^dy - y dy^dz, E = dz.  E^L is nonzero.
inline JacobiStructure contact_r3() {
    auto c = poly::share(Chart::vector_space({"x", "y", "z"}));
    Multivector l(c, 2);
    l.add_term({0, 1}, Polynomial::constant(c, Scalar(1)));
    l.add_term({1, 2}, -Polynomial::variable(c, 1));
    Multivector e(c, 1);
    e.add_term({2}, Polynomial::constant(c, Scalar(1)));
    return JacobiStructure(std::move(l), std::move(e));
}

}  // namespace jforge::testing
