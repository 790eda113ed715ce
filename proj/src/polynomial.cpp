#include "jforge/polynomial.hpp"

#include <sstream>

namespace jforge::poly {

namespace {

Scalar scalar_pow(const Scalar& base, int e) {
    if (e == 0) return Scalar(1);
    if (e < 0) {
        if (base == 0) throw PoleError("negative power of zero at evaluation point");
        return Scalar(1) / scalar_pow(base, -e);
    }
    Scalar r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

void Polynomial::check_exponents(const Exponents& e) const {
    if (static_cast<int>(e.size()) != chart_->dim())
        throw Error("exponent vector length does not match chart dimension");
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && !chart_->laurent_allowed(static_cast<int>(i)))
            throw Error("negative exponent for non-Laurent variable '" +
                        chart_->var(static_cast<int>(i)).name + "'");
}

Polynomial Polynomial::constant(ChartPtr chart, const Scalar& c) {
    Polynomial p(std::move(chart));
    p.add_term(Exponents(static_cast<size_t>(p.chart_->dim()), 0), c);
    return p;
}

Polynomial Polynomial::variable(ChartPtr chart, int index, int power) {
    Polynomial p(std::move(chart));
    Exponents e(static_cast<size_t>(p.chart_->dim()), 0);
    e[static_cast<size_t>(index)] = power;
    p.add_term(e, Scalar(1));
    return p;
}

Polynomial Polynomial::monomial(ChartPtr chart, const Exponents& e, const Scalar& c) {
    Polynomial p(std::move(chart));
    p.add_term(e, c);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
    if (c == 0) return;
    check_exponents(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_chart(chart_, o.chart_);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    require_same_chart(chart_, o.chart_);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(chart_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_chart(chart_, o.chart_);
    Polynomial r(chart_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Scalar& c) const {
    Polynomial r(chart_);
    if (c == 0) return r;
    for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, coeff * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return *chart_ == *o.chart_ && terms_ == o.terms_;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(chart_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        Exponents d(e);
        d[static_cast<size_t>(var)] = k - 1;
        r.add_term(d, c * Scalar(k));
    }
    return r;
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != chart_->dim())
        throw Error("point dimension does not match chart");
    Scalar sum(0);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (size_t i = 0; i < e.size(); ++i) t *= scalar_pow(point[i], e[i]);
        sum += t;
    }
    return sum;
}

double Polynomial::evaluate_double(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != chart_->dim())
        throw Error("point dimension does not match chart");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (size_t i = 0; i < e.size(); ++i) {
            int k = e[i];
            if (k < 0 && point[i] == 0.0)
                throw PoleError("negative power of zero at evaluation point");
            for (int j = 0; j < k; ++j) t *= point[i];
            for (int j = 0; j > k; --j) t /= point[i];
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::substitute(int var, const Scalar& value) const {
    Polynomial r(chart_);
    for (const auto& [e, c] : terms_) {
        Exponents d(e);
        int k = d[static_cast<size_t>(var)];
        d[static_cast<size_t>(var)] = 0;
        r.add_term(d, c * scalar_pow(value, k));
    }
    return r;
}

Polynomial Polynomial::remap(ChartPtr target, const std::vector<int>& index_map) const {
    if (static_cast<int>(index_map.size()) != chart_->dim())
        throw Error("index map length does not match chart dimension");
    Polynomial r(std::move(target));
    for (const auto& [e, c] : terms_) {
        Exponents d(static_cast<size_t>(r.chart_->dim()), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (index_map[i] < 0) {
                if (e[i] != 0)
                    throw Error("cannot drop variable '" + chart_->var(static_cast<int>(i)).name +
                                "': it occurs in the polynomial");
                continue;
            }
            d[static_cast<size_t>(index_map[i])] = e[i];
        }
        r.add_term(d, c);
    }
    return r;
}

int Polynomial::degree_in(const std::vector<int>& vars) const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int v : vars) d += e[static_cast<size_t>(v)];
        deg = std::max(deg, d);
    }
    return deg;
}

int Polynomial::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int k : e) d += k;
        deg = std::max(deg, d);
    }
    return deg;
}

bool Polynomial::is_basic() const {
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && chart_->role(static_cast<int>(i)) != VarRole::Base) return false;
    return true;
}

bool Polynomial::is_affine_fn() const {
    for (const auto& [e, c] : terms_) {
        int fiber_deg = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            VarRole role = chart_->role(static_cast<int>(i));
            if (role == VarRole::Fiber) fiber_deg += e[i];
            if (role == VarRole::Extra && e[i] != 0) return false;
        }
        if (fiber_deg > 1) return false;
    }
    return true;
}

bool Polynomial::is_linear_fn() const {
    for (const auto& [e, c] : terms_) {
        int fiber_deg = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            VarRole role = chart_->role(static_cast<int>(i));
            if (role == VarRole::Fiber) fiber_deg += e[i];
            if (role == VarRole::Extra && e[i] != 0) return false;
        }
        if (fiber_deg != 1) return false;
    }
    return true;
}

Polynomial Polynomial::basic_part() const {
    Polynomial r(chart_);
    for (const auto& [e, c] : terms_) {
        bool basic = true;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && chart_->role(static_cast<int>(i)) != VarRole::Base) basic = false;
        if (basic) r.add_term(e, c);
    }
    return r;
}

Polynomial Polynomial::linear_coefficient(int fiber_var) const {
    Polynomial r(chart_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<size_t>(fiber_var)] != 1) continue;
        bool ok = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) == fiber_var) continue;
            if (e[i] != 0 && chart_->role(static_cast<int>(i)) != VarRole::Base) ok = false;
        }
        if (!ok) continue;
        Exponents d(e);
        d[static_cast<size_t>(fiber_var)] = 0;
        r.add_term(d, c);
    }
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << chart_->var(static_cast<int>(i)).name;
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace jforge::poly
