#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvp/bitvector.hpp"
#include "mvp/cnf.hpp"
#include "mvp/rng.hpp"

namespace mvp {

/// One archived strong local extremum with the critical domain size that
/// failed to escape it (the largest block size among the mappings that
/// confirmed it).
struct TabuEntry {
    BitVector point;
    int critical_size;
};

/// Append-only archive of strong local extrema. Duplicate points keep a
/// single entry whose critical size is the maximum observed.
class TabuArchive {
public:
    explicit TabuArchive(int n) : n_(n) {}

    int dimension() const noexcept { return n_; }
    const std::vector<TabuEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    void record(const BitVector& point, int critical_size);

    std::string to_json() const;
    static TabuArchive from_json(const std::string& text);

private:
    int n_;
    std::vector<TabuEntry> entries_;
};

/// Conjunction of exact Hamming-distance constraints
/// d_H(z, anchor_q) = target_q over a common dimension.
struct DistanceConstraint {
    BitVector anchor;
    int target;
};

struct DistanceConstraintSystem {
    std::vector<DistanceConstraint> constraints;

    int dimension() const { return constraints.empty() ? 0 : constraints.front().anchor.size(); }
};

/// Build the first restart system from an archive: one constraint per
/// entry with target critical_size + 1, capped at the dimension.
DistanceConstraintSystem initial_system(const TabuArchive& archive);

/// Complete solver for a distance-constraint system. Returns a point whose
/// distance to every anchor equals the target exactly (re-verified before
/// returning), or nullopt when no such point exists. When several
/// solutions exist the branching order, and hence the returned one, is
/// driven by the rng; uniformity over the solution set is not guaranteed.
std::optional<BitVector> solve_distance_system(const DistanceConstraintSystem& s, SplitMix64& rng);

/// All solutions, in deterministic order (complete enumeration).
std::vector<BitVector> enumerate_distance_solutions(const DistanceConstraintSystem& s,
                                                    std::size_t limit = static_cast<std::size_t>(-1));

/// Solve the system as given; if it is infeasible, relax it. A point
/// belongs to some raised-target system (every target >= its initial
/// value, at least one strictly) iff d(z, anchor_q) >= target_q for all
/// q, so the single relaxation round searches that whole family at once.
/// nullopt means no admissible relaxation is feasible. max_rounds is
/// validated for interface stability; nothing remains to try past the
/// first relaxation.
std::optional<BitVector> relax_and_retry(const DistanceConstraintSystem& s, SplitMix64& rng,
                                         int max_rounds = 1);

/// Reduce the system to CNF: variables 1..n are the point's bits, each
/// cardinality equality is encoded with sequential counters over fresh
/// auxiliaries. Satisfiable iff the system is.
CnfFormula export_system_as_cnf(const DistanceConstraintSystem& s);

/// Read the point back out of a model of the exported CNF.
BitVector decode_cnf_model(const DistanceConstraintSystem& s, const PartialAssignment& model);

/// record_strong_extremum: archive update used by the search driver.
inline void record_strong_extremum(TabuArchive& archive, const BitVector& point, int critical_size) {
    archive.record(point, critical_size);
}

} // namespace mvp
