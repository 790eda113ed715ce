#pragma once

#include "jforge/algebroid.hpp"
#include "jforge/jacobi.hpp"

namespace jforge::correspond {

using algebroid::AlgebroidData;
using algebroid::AlgebroidForm;
using algebroid::Multisection;
using jacobi::FirstOrderOp;
using jacobi::JacobiStructure;
using poly::ChartPtr;
using poly::Multivector;
using poly::Polynomial;

// The strongly-affine seed: a Lie algebroid structure on the dual bundle
// (constant structure constants in the vector-space case m = 0), a
// 1-cocycle X0 and a 2-cochain P0 with d_* P0 = -X0 ^ P0.  X0 and P0 are
// cochains of the star algebroid, i.e. elements of g and /\^2 g with
// polynomial components when m > 0.
struct TripleData {
    AlgebroidData star;
    AlgebroidForm x0;
    AlgebroidForm p0;

    TripleData(AlgebroidData s, AlgebroidForm x, AlgebroidForm p);
    int rank() const { return star.rank(); }
    bool operator==(const TripleData& o) const {
        return star == o.star && x0 == o.x0 && p0 == o.p0;
    }

    static TripleData zero(AlgebroidData s) {
        AlgebroidForm x(s.base_chart(), s.rank(), 1);
        AlgebroidForm p(s.base_chart(), s.rank(), 2);
        return TripleData(std::move(s), std::move(x), std::move(p));
    }
};

// The unique affine Jacobi structure with tilde{a,b} = [a~, b~]+, written
// in coordinates; the distinguished index of `a` must be 0.  The chart is
// (x^1..x^m; y^1..y^n) with the fiber names taken from the section names.
JacobiStructure jacobi_from_algebroid(const AlgebroidData& a, bool self_check = true);

// The Lie algebroid on A+ of an affine-verified Jacobi structure, with
// section 0 the distinguished 1~.
AlgebroidData algebroid_from_jacobi(const JacobiStructure& j, bool self_check = true);

// Lambda = Lambda-bar_* - P0^v + Delta ^ X0^v,  E = -X0^v.
JacobiStructure jacobi_from_triple(const TripleData& t, bool self_check = true,
                                   std::vector<std::string> fiber_names = {});

// Inverse of jacobi_from_triple on strongly-affine structures.
TripleData extract_triple(const JacobiStructure& j, bool self_check = true);

// The homogeneous Poisson structure on the vector hull, on the chart
// (x^1..x^m; i1; y^1..y^n) with i1 the coordinate dual to 1~ and the
// physical slice i1 = 1.
JacobiStructure poissonize(const JacobiStructure& j, bool self_check = true);

// Rank-0 Poissonization: for a Jacobi structure on a base-only chart,
// the linear Poisson tensor (1/t) Lambda + d/dt ^ E on the chart extended
// by the Laurent variable t.
JacobiStructure poissonize_rank0(const JacobiStructure& j, bool self_check = true);

// Linear k-vector on the hull chart -> affine first-order operator on the
// slice i1 = 1:  P' = Pbar - Delta ^ i(d i1) Pbar, Q' = i(d i1) Pbar.
// iota_var < 0 selects the first fiber variable.
FirstOrderOp linear_kvector_to_affine_op(const Multivector& pbar, int iota_var = -1);

// The affine Jacobi structure (L^c - L^v - Delta ^ (E^c - E^v), E^c) on the
// total space of the algebroid, for a pair satisfying the algebroid master
// equations.
JacobiStructure tangent_jacobi_lift(const AlgebroidData& a, const Multisection& lambda,
                                    const Multisection& e, bool self_check = true);

// TM specialization: lifts a Jacobi structure on M to the affine tangent
// Jacobi structure on TM (doubled chart, fiber names d<var>).
JacobiStructure tangent_jacobi_lift(const JacobiStructure& j, bool self_check = true);

}  // namespace jforge::correspond
