#pragma once

#include <map>
#include <vector>

#include "jforge/polynomial.hpp"

namespace jforge::poly {

// Antisymmetric contravariant tensor with polynomial coefficients: the map
// sends strictly increasing index tuples of length k to coefficients, so
// x1*d1^d2 is stored as {(0,1): x1}.  Degree 0 is a single polynomial under
// the empty tuple.
class Multivector {
  public:
    using Indices = std::vector<int>;
    using Components = std::map<Indices, Polynomial>;

    Multivector(ChartPtr chart, int degree);

    static Multivector zero(ChartPtr chart, int degree) { return Multivector(std::move(chart), degree); }
    static Multivector scalar(const Polynomial& f);
    // Coordinate vector field d/dz_i, optionally with a coefficient.
    static Multivector basis_vector(ChartPtr chart, int i);

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    // Adds c * dz_{i1}^...^dz_{ik} for an arbitrary (possibly unsorted,
    // possibly repeating) tuple; repeated indices drop the term.
    void add_term(Indices idx, Polynomial coeff);

    Polynomial component(const Indices& sorted_idx) const;
    Polynomial scalar_part() const;  // degree 0 only

    Multivector operator+(const Multivector& o) const;
    Multivector operator-(const Multivector& o) const;
    Multivector operator-() const;
    Multivector operator*(const Scalar& c) const;
    Multivector operator*(const Polynomial& f) const;
    bool operator==(const Multivector& o) const;
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    Multivector evaluate(const std::vector<Scalar>& point) const;

    // Chart surgery: reinterpret on `target` sending variable i to
    // index_map[i]; -1 drops a variable (its coefficients must not use it
    // and no component index may carry it).
    Multivector remap(ChartPtr target, const std::vector<int>& index_map) const;

    // Restriction to the slice {var = value}: substitutes in coefficients,
    // requires the result tangent to the slice (no surviving component with
    // the var's direction), then drops the variable.
    Multivector restrict_to_slice(int var, const Scalar& value) const;

  private:
    ChartPtr chart_;
    int degree_ = 0;
    Components comps_;
};

Multivector wedge(const Multivector& p, const Multivector& q);

// i_{df} p: contraction with an exact differential.  For a bivector L this
// is #_L(df); errors on degree 0.
Multivector insert_differential(const Multivector& p, const Polynomial& f);

// Full contraction p(df1,...,dfk) as iterated insertion.
Polynomial contract_all(const Multivector& p, const std::vector<Polynomial>& fs);

// Schouten-Nijenhuis bracket in the graded-Lie convention used throughout:
// [X,f] = X(f), [X,Y] the Lie bracket, graded antisymmetry
// [p,q] = -(-1)^{(k-1)(l-1)}[q,p] and the graded Leibniz rule.  See
// docs/conventions.md for the resulting sign table.
Multivector schouten_nijenhuis(const Multivector& p, const Multivector& q);

// Lie derivative along a vector field; equal to schouten_nijenhuis(x, p) in
// this convention (sign +1).
Multivector lie_derivative(const Multivector& x, const Multivector& p);

// Liouville (Euler) field of a split chart: sum of y^a d/dy^a.
Multivector liouville_field(const ChartPtr& chart);

}  // namespace jforge::poly
