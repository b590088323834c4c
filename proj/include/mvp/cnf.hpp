#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvp/bitvector.hpp"

namespace mvp {

/// Error raised by the DIMACS reader; carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Immutable CNF formula.
///
/// Clauses are stored flat, deduplicated within each clause (repeated
/// literals carry no information); tautological clauses are kept and
/// flagged — they count as satisfied under any assignment. Occurrence
/// lists are precomputed so propagation never scans the whole formula.
class CnfFormula {
public:
    CnfFormula(int num_vars, const std::vector<std::vector<int>>& clauses);

    int num_vars() const noexcept { return num_vars_; }
    int num_clauses() const noexcept { return static_cast<int>(offsets_.size()) - 1; }

    std::span<const int> clause(int c) const {
        return {lits_.data() + offsets_[static_cast<std::size_t>(c)],
                lits_.data() + offsets_[static_cast<std::size_t>(c) + 1]};
    }

    bool is_tautology(int c) const { return tautology_[static_cast<std::size_t>(c)]; }
    int tautology_count() const noexcept { return tautology_count_; }

    /// Clause ids containing the given literal (positive or negative var).
    const std::vector<int>& occurrences(int lit) const { return occ_[lit_slot(lit)]; }

    std::string to_dimacs() const;

private:
    std::size_t lit_slot(int lit) const {
        const int v = lit > 0 ? lit : -lit;
        return static_cast<std::size_t>(2 * (v - 1) + (lit < 0 ? 1 : 0));
    }

    int num_vars_;
    int tautology_count_ = 0;
    std::vector<int> lits_;
    std::vector<std::size_t> offsets_;
    std::vector<bool> tautology_;
    std::vector<std::vector<int>> occ_;
};

/// Per-variable state in {true, false, unassigned}; assignments are
/// monotone — a variable can be assigned once and never flipped.
class PartialAssignment {
public:
    explicit PartialAssignment(int num_vars)
        : vals_(static_cast<std::size_t>(num_vars) + 1, 0), assigned_(0) {
        if (num_vars < 0) throw std::invalid_argument("PartialAssignment: negative size");
    }

    int num_vars() const noexcept { return static_cast<int>(vals_.size()) - 1; }
    bool is_assigned(int var) const { return vals_[check(var)] != 0; }
    bool value(int var) const { return vals_[check(var)] > 0; }
    int assigned_count() const noexcept { return assigned_; }
    bool is_total() const noexcept { return assigned_ == num_vars(); }

    void assign(int var, bool v) {
        const std::size_t s = check(var);
        const signed char nv = v ? 1 : -1;
        if (vals_[s] == nv) return;
        if (vals_[s] != 0) throw std::invalid_argument("PartialAssignment: conflicting reassignment");
        vals_[s] = nv;
        ++assigned_;
    }

    /// Full assignment restricted to the hypercube form; requires totality.
    BitVector to_bitvector() const;

private:
    std::size_t check(int var) const {
        if (var < 1 || var >= static_cast<int>(vals_.size()))
            throw std::invalid_argument("PartialAssignment: variable out of range");
        return static_cast<std::size_t>(var);
    }

    std::vector<signed char> vals_;
    int assigned_;
};

enum class PropagationStatus { fixpoint, conflict };

struct PropagationResult {
    PartialAssignment assignment;
    PropagationStatus status;
    int satisfied_count;
    int conflict_clause; // -1 unless status == conflict
};

/// Parse a DIMACS CNF document. Comment lines and arbitrary whitespace are
/// tolerated; header/body mismatches, out-of-range literals and empty
/// clauses raise ParseError with the line number.
CnfFormula parse_dimacs(const std::string& text);

/// Input-variable declarations: either a sidecar file of whitespace
/// separated indices, or `c input <indices...>` comment lines inside the
/// DIMACS document itself.
std::vector<int> parse_input_vars(const std::string& text);
std::vector<int> dimacs_input_vars(const std::string& dimacs_text);

/// Append each literal as a unit clause. Rejects complementary pairs.
CnfFormula apply_assumptions(const CnfFormula& f, const std::vector<int>& literals);

/// Run unit propagation from the seed to a fixpoint or the first falsified
/// clause. Deterministic: initial units are collected in clause order, the
/// propagation queue is FIFO, and occurrence lists are scanned in clause
/// order. The satisfied count is taken under the final (possibly partial)
/// assignment.
PropagationResult unit_propagate(const CnfFormula& f, const PartialAssignment& seed);

/// Satisfied-clause count under a full assignment.
int count_satisfied(const CnfFormula& f, const BitVector& a);
int count_satisfied(const CnfFormula& f, const PartialAssignment& a);

/// Exhaustively confirm that assigning all input variables always lets
/// propagation finish with a total assignment or a conflict.
/// Limited to |input_vars| <= max_inputs seeds (2^k propagation runs).
bool is_supbs(const CnfFormula& f, const std::vector<int>& input_vars, int max_inputs = 16);

} // namespace mvp
