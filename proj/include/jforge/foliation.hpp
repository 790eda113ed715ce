#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jforge/correspond.hpp"
#include "jforge/linalg.hpp"

namespace jforge::foliation {

using correspond::TripleData;
using jacobi::JacobiStructure;
using poly::Multivector;
using poly::Polynomial;

struct CocycleReport {
    bool pass = true;
    bool star_axioms_ok = true;
    // residuals: d_* X0 (a 2-cochain) and d_* P0 + X0 ^ P0 (a 3-cochain)
    std::optional<algebroid::AlgebroidForm> residual_x0;
    std::optional<algebroid::AlgebroidForm> residual_p0;
};

CocycleReport cocycle_check(const TripleData& t);
void require_cocycles(const TripleData& t);

struct CharRank {
    int rank = 0;
    bool odd = false;
    bool e_in_image = false;
};

// rank of Im(#_Lambda)_x + <E_x>; exact at rational points.
CharRank char_rank(const JacobiStructure& j, const std::vector<Scalar>& point);
// float variant with a relative singular-value threshold.
CharRank char_rank(const JacobiStructure& j, const std::vector<double>& point,
                   double rel_tol = 1e-10);

enum class LeafClass { Contact, LCS, ZeroDim };

LeafClass classify_point(const JacobiStructure& j, const std::vector<Scalar>& point);
LeafClass classify_point(const JacobiStructure& j, const std::vector<double>& point,
                         double rel_tol = 1e-10);

// Affine vector field Y -> L Y + b with exact rational entries.
struct AffineField {
    linalg::Matrix linear;  // n x n
    linalg::Vector translation;

    int dim() const { return static_cast<int>(translation.size()); }
    std::vector<std::vector<double>> linear_double() const;
    std::vector<double> translation_double() const;
};

// An element of g+ = g* x R in the basis (eps^1..eps^n; 1).
struct CoalgebraElement {
    std::vector<Scalar> alpha;
    Scalar lambda;
};

// minus the hamiltonian field of the affine function alpha + lambda under
// jacobi_from_triple(t); constant triples only (m = 0).
AffineField infinitesimal_generator(const TripleData& t, const CoalgebraElement& a);

// Exact flow of an affine field via the homogeneous-matrix exponential.
std::vector<double> affine_flow(const AffineField& f, double time,
                                const std::vector<double>& x0);
// Exact rational flow; requires a nilpotent linear part.
linalg::Vector affine_flow_exact(const AffineField& f, const Scalar& time,
                                 const linalg::Vector& x0);

struct OrbitSample {
    std::vector<double> base_point;
    // (word description, reached point)
    std::vector<std::pair<std::string, std::vector<double>>> points;
    // per supplied invariant: values along the orbit
    std::vector<std::vector<double>> invariant_log;
    CharRank base_rank;
    LeafClass base_class = LeafClass::ZeroDim;
    bool rank_constant = true;
};

struct OrbitOptions {
    int word_length = 4;
    int step_budget = 200;
    unsigned seed = 1;
    double max_step = 1.0;
    double rank_tol = 1e-7;
    std::vector<Polynomial> invariants;  // on the chart of jacobi_from_triple(t)
};

OrbitSample orbit_sample(const TripleData& t, const std::vector<double>& x0,
                         const OrbitOptions& opt = {});

// sigma0(exp xi) = xi(X0) in exponential coordinates.
Scalar sigma0_eval(const TripleData& t, const std::vector<Scalar>& xi);

struct GroupElement {
    std::vector<double> xi;  // exponential coordinate on G*
    double t = 0.0;
};

// Group 2-cochain on G*, evaluable in exponential coordinates.
using GroupCochain = std::function<double(const std::vector<double>&, const std::vector<double>&)>;

// Nilpotency class of the (constant) star bracket; 0 for abelian; throws
// PreconditionError when the lower central series does not terminate.
int nilpotency_class(const TripleData& t);

// Truncated-exact BCH product on g* (nilpotent/abelian mode).
std::vector<Scalar> bch_product(const TripleData& t, const std::vector<Scalar>& x,
                                const std::vector<Scalar>& y);

// (g1,t1)(g2,t2) = (g1 g2, t1 + e^{sigma0(g1)} t2 - phi0(g1,g2))
GroupElement group_law(const TripleData& t, const GroupCochain& phi0, const GroupElement& g1,
                       const GroupElement& g2);

// group-cochain differential (d_sigma0 phi)(g1,g2,g3), pointwise.
double group_cochain_differential(const TripleData& t, const GroupCochain& phi0,
                                  const GroupElement& g1, const GroupElement& g2,
                                  const GroupElement& g3);

// Antisymmetrized mixed second derivative of phi0 at the identity by central
// finite differences with step h.
double phi_to_p0(const TripleData& t, const GroupCochain& phi0, int i, int k, double h = 1e-3);

struct LeafGeometry {
    LeafClass classification = LeafClass::ZeroDim;
    // contact: eta on the generator frame (alpha_Y for each basis alpha),
    // plus eta(X0^v) = -1 as the last entry
    std::vector<Scalar> eta;
    // l.c.s.: Omega on generator pairs (a<b) and omega on generators
    std::vector<std::vector<Scalar>> omega2;  // n x n antisymmetric
    std::vector<Scalar> omega1;
};

LeafGeometry leaf_geometry(const TripleData& t, const std::vector<Scalar>& y);

}  // namespace jforge::foliation
