#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jforge/chart.hpp"
#include "jforge/scalar.hpp"

namespace jforge::poly {

// Sparse exact-rational polynomial on a chart.  Exponents may be negative
// only for variables with the Laurent flag.  Zero coefficients are never
// stored, so equality is structural.
class Polynomial {
  public:
    using Exponents = std::vector<int>;
    using Terms = std::map<Exponents, Scalar>;

    explicit Polynomial(ChartPtr chart) : chart_(std::move(chart)) {}

    static Polynomial zero(ChartPtr chart) { return Polynomial(std::move(chart)); }
    static Polynomial constant(ChartPtr chart, const Scalar& c);
    static Polynomial variable(ChartPtr chart, int index, int power = 1);
    static Polynomial monomial(ChartPtr chart, const Exponents& e, const Scalar& c);

    const ChartPtr& chart() const { return chart_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Scalar& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Scalar& c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int var) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    // Substitute one variable by a rational value; result stays on the same
    // chart with that variable eliminated from every exponent vector.
    Polynomial substitute(int var, const Scalar& value) const;

    // Reinterpret on another chart; index_map[i] is the target slot of
    // variable i (-1 drops a variable, legal only when it does not occur).
    Polynomial remap(ChartPtr target, const std::vector<int>& index_map) const;

    // Total degree in the given variable set; 0 for the zero polynomial.
    int degree_in(const std::vector<int>& vars) const;
    int total_degree() const;

    // Split-chart predicates.  "Basic" means no fiber or extra variable
    // occurs; "affine" allows fiber degree at most one; "linear" is affine
    // with no basic part.
    bool is_basic() const;
    bool is_affine_fn() const;
    bool is_linear_fn() const;
    // Basic part (fiber-degree-0 terms) of an affine function.
    Polynomial basic_part() const;
    // Coefficient of the first-power fiber variable `fiber_var` (the terms
    // with exponent 1 there and 0 on all other fiber vars).
    Polynomial linear_coefficient(int fiber_var) const;

    std::string to_string() const;

  private:
    ChartPtr chart_;
    Terms terms_;

    void check_exponents(const Exponents& e) const;
};

inline Polynomial operator*(const Scalar& c, const Polynomial& p) { return p * c; }

}  // namespace jforge::poly
