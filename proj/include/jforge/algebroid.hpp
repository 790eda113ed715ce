#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jforge/jacobi.hpp"
#include "jforge/multivector.hpp"

namespace jforge::algebroid {

using jacobi::JacobiStructure;
using poly::Chart;
using poly::ChartPtr;
using poly::Multivector;
using poly::Polynomial;

// Skew-symmetric table of polynomial components over strictly increasing
// section-index tuples.  Used both for multisections of /\^k A (components
// X^{a1..ak}) and for algebroid k-forms (components mu_{a1..ak}); the
// coefficients live on the base chart.
class SectionTensor {
  public:
    using Indices = std::vector<int>;
    using Components = std::map<Indices, Polynomial>;

    SectionTensor(ChartPtr base_chart, int range, int degree);

    static SectionTensor scalar(ChartPtr base_chart, int range, Polynomial f);
    static SectionTensor basis(ChartPtr base_chart, int range, int a);

    int degree() const { return degree_; }
    int range() const { return range_; }
    const ChartPtr& base_chart() const { return chart_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    void add_term(Indices idx, Polynomial coeff);
    Polynomial component(const Indices& sorted_idx) const;

    SectionTensor operator+(const SectionTensor& o) const;
    SectionTensor operator-(const SectionTensor& o) const;
    SectionTensor operator-() const;
    SectionTensor operator*(const Scalar& c) const;
    SectionTensor operator*(const Polynomial& f) const;
    bool operator==(const SectionTensor& o) const;
    bool operator!=(const SectionTensor& o) const { return !(*this == o); }

  private:
    ChartPtr chart_;
    int range_ = 0;
    int degree_ = 0;
    Components comps_;
};

SectionTensor wedge(const SectionTensor& p, const SectionTensor& q);

using Multisection = SectionTensor;
using AlgebroidForm = SectionTensor;

// Lie algebroid data on a trivial bundle: rank r, base dimension m,
// polynomial structure functions c^g_{ab} (a < b) and anchor components
// rho^l_a.  Raw data may violate the axioms; check_axioms decides.
class AlgebroidData {
  public:
    AlgebroidData(ChartPtr base_chart, int rank,
                  std::vector<std::string> section_names = {});

    int rank() const { return rank_; }
    int base_dim() const { return base_chart_->dim(); }
    const ChartPtr& base_chart() const { return base_chart_; }
    const std::vector<std::string>& section_names() const { return names_; }

    std::optional<int> distinguished;  // marks e_0 as the section 1~

    void set_c(int a, int b, int g, const Polynomial& p);
    Polynomial c(int a, int b, int g) const;  // antisymmetric in a,b
    void set_anchor(int a, int l, const Polynomial& p);
    Polynomial anchor(int a, int l) const;

    const std::map<std::array<int, 3>, Polynomial>& c_table() const { return c_; }
    const std::map<std::array<int, 2>, Polynomial>& anchor_table() const { return rho_; }

    // [e_a, e_b] as a degree-1 multisection.
    Multisection basis_bracket(int a, int b) const;
    // rho(e_a)(f) for a base-chart polynomial.
    Polynomial anchor_apply(int a, const Polynomial& f) const;

    bool operator==(const AlgebroidData& o) const;

  private:
    ChartPtr base_chart_;
    int rank_;
    std::vector<std::string> names_;
    std::map<std::array<int, 3>, Polynomial> c_;   // key {a,b,g}, a<b
    std::map<std::array<int, 2>, Polynomial> rho_;  // key {a,l}
};

struct AxiomReport {
    bool pass = true;
    // first failing basis triple of the Jacobi identity, with the residual
    std::optional<std::array<int, 3>> jacobi_witness;
    std::optional<Multisection> jacobi_residual;
    // first failing pair of the anchor-homomorphism identity
    std::optional<std::array<int, 2>> anchor_witness;
};

AxiomReport check_axioms(const AlgebroidData& a);
void require_axioms(const AlgebroidData& a);

// Cartan-formula exterior derivative on algebroid forms; d on a degree-0 form
// f gives (df)(e_a) = rho(e_a)(f).
AlgebroidForm exterior_derivative(const AlgebroidData& a, const AlgebroidForm& mu);

// The homogeneous (linear) Poisson structure on the dual bundle, on the
// chart (x; fiber_names) where the fiber coordinates are the linear
// functions of the basis sections.
JacobiStructure linear_poisson(const AlgebroidData& a,
                               std::vector<std::string> fiber_names = {});

enum class LiftMode { Complete, Vertical };

// Chart of the total space (x; y^1..y^r) used by lifts.
ChartPtr total_chart(const AlgebroidData& a, std::vector<std::string> fiber_names = {});

Multivector lift(const AlgebroidData& a, const Multisection& x, LiftMode mode,
                 const ChartPtr& total = nullptr);

// Schouten bracket of the algebroid on multisections, generated by
// [e_a,e_b] = c^g_{ab} e_g and [e_a, f] = rho(e_a)(f).
Multisection algebroid_schouten(const AlgebroidData& a, const Multisection& u,
                                const Multisection& v);

enum class SpecialKind { Special, AlmostSpecial, Neither };

struct SpecialReport {
    SpecialKind kind = SpecialKind::Neither;
    // X0-bar of the almost-special relation [1~, a~] = -X0bar(a~) 1~,
    // as a 1-form on the algebroid (zero in the special case)
    std::optional<AlgebroidForm> xbar0;
};

SpecialReport detect_special(const AlgebroidData& a);

}  // namespace jforge::algebroid
