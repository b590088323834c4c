#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mvp/bitvector.hpp"
#include "mvp/cnf.hpp"
#include "mvp/merging.hpp"

namespace mvp {

/// A deterministic pseudo-Boolean objective f: {0,1}^n -> R.
///
/// Evaluation is pure; the only mutable state is the atomic evaluation
/// counter, so one instance may be evaluated from many workers at once.
/// All search methods are costed through this counter.
class Objective {
public:
    explicit Objective(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("Objective: dimension must be positive");
    }
    virtual ~Objective() = default;

    Objective(const Objective&) = delete;
    Objective& operator=(const Objective&) = delete;

    int dimension() const noexcept { return n_; }

    double evaluate(const BitVector& a) const {
        assert(a.size() == n_);
        evals_.fetch_add(1, std::memory_order_relaxed);
        return value_of(a);
    }

    std::uint64_t eval_count() const noexcept { return evals_.load(std::memory_order_relaxed); }

protected:
    virtual double value_of(const BitVector& a) const = 0;

private:
    int n_;
    mutable std::atomic<std::uint64_t> evals_{0};
};

/// Number of ones; maximum n at the all-ones point.
class OneMaxObjective final : public Objective {
public:
    explicit OneMaxObjective(int n) : Objective(n) {}

protected:
    double value_of(const BitVector& a) const override { return a.count_ones(); }
};

/// n+1 at the all-zeros point, otherwise the number of ones: the global
/// maximum sits alone at all-zeros while the slope pulls toward all-ones.
class TrapObjective final : public Objective {
public:
    explicit TrapObjective(int n) : Objective(n) {
        if (n < 2) throw std::invalid_argument("TrapObjective: dimension must be >= 2");
    }

protected:
    double value_of(const BitVector& a) const override {
        const int ones = a.count_ones();
        return ones == 0 ? dimension() + 1 : ones;
    }
};

/// Number of clauses satisfied by the full assignment.
class ClauseCountObjective final : public Objective {
public:
    explicit ClauseCountObjective(CnfFormula formula)
        : Objective(formula.num_vars()), formula_(std::move(formula)) {}

    const CnfFormula& formula() const noexcept { return formula_; }

protected:
    double value_of(const BitVector& a) const override { return count_satisfied(formula_, a); }

private:
    CnfFormula formula_;
};

/// Assign the declared input variables from the point, run unit
/// propagation, and count the clauses satisfied by the resulting
/// (possibly partial) assignment. When the input set is a strong
/// propagation backdoor, the assignment is total and the value equals the
/// plain clause count of the completed assignment. On conflict the count
/// is taken at the moment propagation stopped.
class UpObjective final : public Objective {
public:
    UpObjective(CnfFormula formula, std::vector<int> input_vars);

    const CnfFormula& formula() const noexcept { return formula_; }
    const std::vector<int>& input_vars() const noexcept { return input_vars_; }

    /// Propagation outcome for a given input point (for decoding results).
    PropagationResult propagate(const BitVector& a) const;

protected:
    double value_of(const BitVector& a) const override;

private:
    CnfFormula formula_;
    std::vector<int> input_vars_;
};

/// Adapter for ad-hoc objectives (frozen tables, test landscapes).
class CallableObjective final : public Objective {
public:
    CallableObjective(int n, std::function<double(const BitVector&)> fn)
        : Objective(n), fn_(std::move(fn)) {}

protected:
    double value_of(const BitVector& a) const override { return fn_(a); }

private:
    std::function<double(const BitVector&)> fn_;
};

/// The objective composed with tau: evaluates merged points through the
/// mapping. Evaluation cost is charged to the base objective's counter.
class ConjugatedObjective {
public:
    ConjugatedObjective(const Objective& base, const MergingMapping& mapping);

    double evaluate(const MergedPoint& beta) const { return base_.evaluate(tau(mapping_, beta)); }

    const Objective& base() const noexcept { return base_; }
    const MergingMapping& mapping() const noexcept { return mapping_; }

private:
    const Objective& base_;
    const MergingMapping& mapping_;
};

std::unique_ptr<Objective> onemax(int n);
std::unique_ptr<Objective> trap(int n);
std::unique_ptr<Objective> clause_count_objective(CnfFormula formula);
std::unique_ptr<Objective> up_objective(CnfFormula formula, std::vector<int> input_vars);
ConjugatedObjective conjugate(const Objective& base, const MergingMapping& m);

} // namespace mvp
