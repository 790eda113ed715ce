#include "jforge/chart.hpp"

#include <set>

namespace jforge::poly {

Chart::Chart(std::vector<Var> vars, bool has_split)
    : vars_(std::move(vars)), has_split_(has_split) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (!seen.insert(v.name).second)
            throw Error("duplicate variable name '" + v.name + "' in chart");
    }
}

Chart Chart::plain(const std::vector<std::string>& names) {
    std::vector<Var> vs;
    for (const auto& n : names) vs.push_back({n, false, VarRole::Base});
    return Chart(std::move(vs), false);
}

Chart Chart::vector_space(const std::vector<std::string>& names) {
    std::vector<Var> vs;
    for (const auto& n : names) vs.push_back({n, false, VarRole::Fiber});
    return Chart(std::move(vs), true);
}

Chart Chart::bundle(const std::vector<std::string>& base,
                    const std::vector<std::string>& fiber) {
    std::vector<Var> vs;
    for (const auto& n : base) vs.push_back({n, false, VarRole::Base});
    for (const auto& n : fiber) vs.push_back({n, false, VarRole::Fiber});
    return Chart(std::move(vs), true);
}

std::vector<int> Chart::base_indices() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i) {
        // On an unsplit chart every variable counts as base.
        if (!has_split_ || vars_[static_cast<size_t>(i)].role == VarRole::Base) out.push_back(i);
    }
    return out;
}

std::vector<int> Chart::fiber_indices() const {
    std::vector<int> out;
    if (!has_split_) return out;
    for (int i = 0; i < dim(); ++i)
        if (vars_[static_cast<size_t>(i)].role == VarRole::Fiber) out.push_back(i);
    return out;
}

int Chart::index_of(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (vars_[static_cast<size_t>(i)].name == name) return i;
    return -1;
}

bool Chart::operator==(const Chart& other) const {
    if (has_split_ != other.has_split_ || vars_.size() != other.vars_.size()) return false;
    for (size_t i = 0; i < vars_.size(); ++i) {
        const auto& a = vars_[i];
        const auto& b = other.vars_[i];
        if (a.name != b.name || a.laurent != b.laurent) return false;
        if (has_split_ && a.role != b.role) return false;
    }
    return true;
}

}  // namespace jforge::poly
