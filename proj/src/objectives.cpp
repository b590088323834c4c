#include "mvp/objectives.hpp"

#include <algorithm>

namespace mvp {

UpObjective::UpObjective(CnfFormula formula, std::vector<int> input_vars)
    : Objective(static_cast<int>(input_vars.size())),
      formula_(std::move(formula)),
      input_vars_(std::move(input_vars)) {
    std::vector<bool> seen(static_cast<std::size_t>(formula_.num_vars()) + 1, false);
    for (int v : input_vars_) {
        if (v < 1 || v > formula_.num_vars())
            throw std::invalid_argument("UpObjective: input variable out of range");
        if (seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("UpObjective: duplicate input variable");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

PropagationResult UpObjective::propagate(const BitVector& a) const {
    if (a.size() != dimension()) throw std::invalid_argument("UpObjective: point size mismatch");
    PartialAssignment seed(formula_.num_vars());
    for (int i = 1; i <= dimension(); ++i)
        seed.assign(input_vars_[static_cast<std::size_t>(i - 1)], a.get(i));
    return unit_propagate(formula_, seed);
}

double UpObjective::value_of(const BitVector& a) const { return propagate(a).satisfied_count; }

ConjugatedObjective::ConjugatedObjective(const Objective& base, const MergingMapping& mapping)
    : base_(base), mapping_(mapping) {
    if (base.dimension() != mapping.dimension())
        throw std::invalid_argument("ConjugatedObjective: dimension mismatch");
}

std::unique_ptr<Objective> onemax(int n) { return std::make_unique<OneMaxObjective>(n); }

std::unique_ptr<Objective> trap(int n) { return std::make_unique<TrapObjective>(n); }

std::unique_ptr<Objective> clause_count_objective(CnfFormula formula) {
    return std::make_unique<ClauseCountObjective>(std::move(formula));
}

std::unique_ptr<Objective> up_objective(CnfFormula formula, std::vector<int> input_vars) {
    return std::make_unique<UpObjective>(std::move(formula), std::move(input_vars));
}

ConjugatedObjective conjugate(const Objective& base, const MergingMapping& m) {
    return ConjugatedObjective(base, m);
}

} // namespace mvp
