#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jforge/errors.hpp"

namespace jforge::poly {

enum class VarRole { Base, Fiber, Extra };

// An ordered list of coordinate names on a trivializing chart.  When the
// chart carries a bundle split, each variable is tagged as a base
// coordinate x^i, a fiber coordinate y^a, or an extra coordinate (the t of
// the rank-0 Poissonization, the s of lifts).
class Chart {
  public:
    struct Var {
        std::string name;
        bool laurent = false;
        VarRole role = VarRole::Fiber;
    };

    Chart() = default;
    Chart(std::vector<Var> vars, bool has_split);

    // Unsplit chart, plain polynomial variables.
    static Chart plain(const std::vector<std::string>& names);
    // All-fiber split chart (vector-space case, m = 0).
    static Chart vector_space(const std::vector<std::string>& names);
    // Base block followed by fiber block.
    static Chart bundle(const std::vector<std::string>& base,
                        const std::vector<std::string>& fiber);

    int dim() const { return static_cast<int>(vars_.size()); }
    const Var& var(int i) const { return vars_[static_cast<size_t>(i)]; }
    const std::vector<Var>& vars() const { return vars_; }
    bool has_split() const { return has_split_; }

    bool laurent_allowed(int i) const { return vars_[static_cast<size_t>(i)].laurent; }
    VarRole role(int i) const { return vars_[static_cast<size_t>(i)].role; }

    std::vector<int> base_indices() const;
    std::vector<int> fiber_indices() const;
    int base_dim() const { return static_cast<int>(base_indices().size()); }
    int fiber_dim() const { return static_cast<int>(fiber_indices().size()); }

    // -1 when absent.
    int index_of(const std::string& name) const;

    bool operator==(const Chart& other) const;
    bool operator!=(const Chart& other) const { return !(*this == other); }

  private:
    std::vector<Var> vars_;
    bool has_split_ = false;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr share(Chart c) { return std::make_shared<const Chart>(std::move(c)); }

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a.get() != b.get() && *a != *b)
        throw ChartMismatchError("values live on different charts");
}

}  // namespace jforge::poly
