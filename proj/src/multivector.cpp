#include "jforge/multivector.hpp"

#include <algorithm>

namespace jforge::poly {

namespace {

// Sorts an index tuple in place, returning the permutation sign, or 0 when
// an index repeats.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

// Position of i in the sorted tuple, or -1.
int position_of(const std::vector<int>& idx, int i) {
    auto it = std::lower_bound(idx.begin(), idx.end(), i);
    if (it == idx.end() || *it != i) return -1;
    return static_cast<int>(it - idx.begin());
}

}  // namespace

Multivector::Multivector(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw Error("multivector degree must be nonnegative");
}

Multivector Multivector::scalar(const Polynomial& f) {
    Multivector m(f.chart(), 0);
    if (!f.is_zero()) m.comps_.emplace(Indices{}, f);
    return m;
}

Multivector Multivector::basis_vector(ChartPtr chart, int i) {
    Multivector m(chart, 1);
    m.add_term({i}, Polynomial::constant(chart, Scalar(1)));
    return m;
}

void Multivector::add_term(Indices idx, Polynomial coeff) {
    require_same_chart(chart_, coeff.chart());
    if (static_cast<int>(idx.size()) != degree_)
        throw Error("index tuple length does not match multivector degree");
    for (int i : idx)
        if (i < 0 || i >= chart_->dim()) throw Error("component index out of range");
    if (coeff.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    if (sign < 0) coeff = -coeff;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(std::move(idx), std::move(coeff));
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Polynomial Multivector::component(const Indices& sorted_idx) const {
    auto it = comps_.find(sorted_idx);
    return it == comps_.end() ? Polynomial::zero(chart_) : it->second;
}

Polynomial Multivector::scalar_part() const {
    if (degree_ != 0) throw Error("scalar_part on multivector of positive degree");
    auto it = comps_.find(Indices{});
    return it == comps_.end() ? Polynomial::zero(chart_) : it->second;
}

Multivector Multivector::operator+(const Multivector& o) const {
    require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw Error("degree mismatch in multivector sum");
    Multivector r = *this;
    for (const auto& [idx, c] : o.comps_) r.add_term(idx, c);
    return r;
}

Multivector Multivector::operator-(const Multivector& o) const { return *this + (-o); }

Multivector Multivector::operator-() const {
    Multivector r(chart_, degree_);
    for (const auto& [idx, c] : comps_) r.comps_.emplace(idx, -c);
    return r;
}

Multivector Multivector::operator*(const Scalar& c) const {
    Multivector r(chart_, degree_);
    if (c == 0) return r;
    for (const auto& [idx, p] : comps_) r.comps_.emplace(idx, p * c);
    return r;
}

Multivector Multivector::operator*(const Polynomial& f) const {
    Multivector r(chart_, degree_);
    for (const auto& [idx, p] : comps_) {
        Polynomial q = p * f;
        if (!q.is_zero()) r.comps_.emplace(idx, std::move(q));
    }
    return r;
}

bool Multivector::operator==(const Multivector& o) const {
    return degree_ == o.degree_ && *chart_ == *o.chart_ && comps_ == o.comps_;
}

Multivector Multivector::evaluate(const std::vector<Scalar>& point) const {
    Multivector r(chart_, degree_);
    for (const auto& [idx, p] : comps_) {
        Scalar v = p.evaluate(point);
        if (v != 0) r.comps_.emplace(idx, Polynomial::constant(chart_, v));
    }
    return r;
}

Multivector Multivector::remap(ChartPtr target, const std::vector<int>& index_map) const {
    Multivector r(target, degree_);
    for (const auto& [idx, p] : comps_) {
        Indices mapped;
        mapped.reserve(idx.size());
        for (int i : idx) {
            if (index_map[static_cast<size_t>(i)] < 0)
                throw Error("cannot drop variable '" + chart_->var(i).name +
                            "': a component points along it");
            mapped.push_back(index_map[static_cast<size_t>(i)]);
        }
        r.add_term(std::move(mapped), p.remap(target, index_map));
    }
    return r;
}

Multivector Multivector::restrict_to_slice(int var, const Scalar& value) const {
    // Substitute first, then require tangency.
    Multivector sub(chart_, degree_);
    for (const auto& [idx, p] : comps_) sub.add_term(idx, p.substitute(var, value));
    for (const auto& [idx, p] : sub.comps_)
        if (position_of(idx, var) >= 0)
            throw PreconditionError("multivector is not tangent to the slice " +
                                    chart_->var(var).name + " = " + Scalar(value).str());

    std::vector<Chart::Var> vars;
    std::vector<int> index_map(static_cast<size_t>(chart_->dim()), -1);
    int k = 0;
    for (int i = 0; i < chart_->dim(); ++i) {
        if (i == var) continue;
        vars.push_back(chart_->var(i));
        index_map[static_cast<size_t>(i)] = k++;
    }
    return sub.remap(share(Chart(std::move(vars), chart_->has_split())), index_map);
}

Multivector wedge(const Multivector& p, const Multivector& q) {
    require_same_chart(p.chart(), q.chart());
    Multivector r(p.chart(), p.degree() + q.degree());
    for (const auto& [ia, ca] : p.components()) {
        for (const auto& [ib, cb] : q.components()) {
            Multivector::Indices idx(ia);
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(std::move(idx), ca * cb);
        }
    }
    return r;
}

Multivector insert_differential(const Multivector& p, const Polynomial& f) {
    require_same_chart(p.chart(), f.chart());
    if (p.degree() < 1)
        throw PreconditionError("insert_differential needs tensor degree >= 1");
    Multivector r(p.chart(), p.degree() - 1);
    for (const auto& [idx, c] : p.components()) {
        for (size_t j = 0; j < idx.size(); ++j) {
            Polynomial fj = f.derivative(idx[j]);
            if (fj.is_zero()) continue;
            Multivector::Indices rest;
            for (size_t t = 0; t < idx.size(); ++t)
                if (t != j) rest.push_back(idx[t]);
            Polynomial coeff = fj * c;
            if (j % 2 == 1) coeff = -coeff;
            r.add_term(std::move(rest), std::move(coeff));
        }
    }
    return r;
}

Polynomial contract_all(const Multivector& p, const std::vector<Polynomial>& fs) {
    if (static_cast<int>(fs.size()) != p.degree())
        throw Error("contract_all needs exactly degree-many functions");
    Multivector cur = p;
    for (const auto& f : fs) {
        if (cur.degree() == 0) break;
        cur = insert_differential(cur, f);
    }
    return cur.scalar_part();
}

// The bracket is computed in the odd-coordinate realization: a multivector
// is a Grassmann polynomial in xi_i <-> d/dz_i over the coefficient ring,
// and
//   [P,Q] = sum_i dP/dxi_i (right) ^ dQ/dz_i  -  sum_i dP/dz_i ^ dQ/dxi_i (left).
// This realizes the generator rules [X,f] = X(f), [X,Y] = Lie bracket with
// graded antisymmetry and Leibniz in the k-1 grading.
Multivector schouten_nijenhuis(const Multivector& p, const Multivector& q) {
    require_same_chart(p.chart(), q.chart());
    int rdeg = p.degree() + q.degree() - 1;
    if (rdeg < 0) return Multivector::zero(p.chart(), 0);
    Multivector r(p.chart(), rdeg);

    for (const auto& [ia, ca] : p.components()) {
        for (const auto& [ib, cb] : q.components()) {
            // sum_i (d_r P / dxi_i) ^ (dQ/dz_i)
            for (size_t j = 0; j < ia.size(); ++j) {
                int i = ia[j];
                Polynomial db = cb.derivative(i);
                if (db.is_zero()) continue;
                Multivector::Indices idx;
                for (size_t t = 0; t < ia.size(); ++t)
                    if (t != j) idx.push_back(ia[t]);
                idx.insert(idx.end(), ib.begin(), ib.end());
                Polynomial coeff = ca * db;
                // right derivative: sign (-1)^{k-1-j}
                if ((ia.size() - 1 - j) % 2 == 1) coeff = -coeff;
                r.add_term(std::move(idx), std::move(coeff));
            }
            // - sum_i (dP/dz_i) ^ (d_l Q / dxi_i)
            for (size_t j = 0; j < ib.size(); ++j) {
                int i = ib[j];
                Polynomial da = ca.derivative(i);
                if (da.is_zero()) continue;
                Multivector::Indices idx(ia);
                for (size_t t = 0; t < ib.size(); ++t)
                    if (t != j) idx.push_back(ib[t]);
                Polynomial coeff = da * cb;
                // left derivative sign (-1)^j, and the overall minus
                if (j % 2 == 0) coeff = -coeff;
                r.add_term(std::move(idx), std::move(coeff));
            }
        }
    }
    return r;
}

Multivector lie_derivative(const Multivector& x, const Multivector& p) {
    if (x.degree() != 1)
        throw PreconditionError("lie_derivative needs a vector field (degree 1)");
    return schouten_nijenhuis(x, p);
}

Multivector liouville_field(const ChartPtr& chart) {
    Multivector d(chart, 1);
    for (int i : chart->fiber_indices())
        d.add_term({i}, Polynomial::variable(chart, i));
    return d;
}

}  // namespace jforge::poly
