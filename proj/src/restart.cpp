#include "mvp/restart.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace mvp {

void TabuArchive::record(const BitVector& point, int critical_size) {
    if (point.size() != n_) throw std::invalid_argument("TabuArchive: dimension mismatch");
    if (critical_size < 1) throw std::invalid_argument("TabuArchive: critical size must be >= 1");
    for (auto& e : entries_) {
        if (e.point == point) {
            e.critical_size = std::max(e.critical_size, critical_size);
            return;
        }
    }
    entries_.push_back({point, critical_size});
}

std::string TabuArchive::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : entries_)
        arr.push_back({{"point", e.point.to_string()}, {"critical_size", e.critical_size}});
    j["entries"] = std::move(arr);
    return j.dump();
}

TabuArchive TabuArchive::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TabuArchive archive(j.at("n").get<int>());
    for (const auto& e : j.at("entries"))
        archive.record(BitVector::from_string(e.at("point").get<std::string>()),
                       e.at("critical_size").get<int>());
    return archive;
}

DistanceConstraintSystem initial_system(const TabuArchive& archive) {
    if (archive.empty()) throw std::invalid_argument("initial_system: empty archive");
    DistanceConstraintSystem s;
    for (const auto& e : archive.entries())
        s.constraints.push_back({e.point, std::min(e.critical_size + 1, archive.dimension())});
    return s;
}

namespace {

void validate_system(const DistanceConstraintSystem& s) {
    if (s.constraints.empty()) throw std::invalid_argument("distance system: no constraints");
    const int n = s.dimension();
    for (const auto& c : s.constraints) {
        if (c.anchor.size() != n) throw std::invalid_argument("distance system: anchor dimension mismatch");
        if (c.target < 0 || c.target > n)
            throw std::invalid_argument("distance system: target outside [0, n]");
    }
}

// Necessary conditions between anchor pairs: the two exact distances must
// bracket the anchors' own distance and match its parity.
bool pairwise_feasible(const DistanceConstraintSystem& s) {
    const std::size_t R = s.constraints.size();
    for (std::size_t a = 0; a < R; ++a) {
        for (std::size_t b = a + 1; b < R; ++b) {
            const int d = hamming_distance(s.constraints[a].anchor, s.constraints[b].anchor);
            const int la = s.constraints[a].target;
            const int lb = s.constraints[b].target;
            if (la + lb < d || std::abs(la - lb) > d) return false;
            if (((la + lb) - d) % 2 != 0) return false;
        }
    }
    return true;
}

// Depth-first search over bit positions with per-anchor remaining-flip
// bounds. In exact mode a solution hits every target exactly; in at-least
// mode any point with d(z, anchor_q) >= target_q qualifies (used for the
// relaxed restart systems, whose admissible target vectors are exactly
// the points of that region). rng (when present) picks which bit value to
// branch on first; collect (when present) receives every solution instead
// of stopping at the first one.
struct DistanceSearch {
    const DistanceConstraintSystem& sys;
    int n;
    bool at_least = false;
    SplitMix64* rng = nullptr;
    std::vector<BitVector>* collect = nullptr;
    std::size_t limit = static_cast<std::size_t>(-1);

    std::vector<int> rem; // flips still required per anchor
    BitVector z;
    std::optional<BitVector> found;

    explicit DistanceSearch(const DistanceConstraintSystem& s)
        : sys(s), n(s.dimension()), z(s.dimension()) {
        rem.reserve(sys.constraints.size());
        for (const auto& c : sys.constraints) rem.push_back(c.target);
    }

    bool run() {
        if (!at_least && !pairwise_feasible(sys)) return false;
        return descend(1);
    }

    // returns true when the search may stop (first solution found, or
    // collection limit reached)
    bool descend(int depth) {
        if (depth > n) {
            for (int r : rem)
                if (r > 0 || (!at_least && r != 0)) return false;
            if (collect) {
                collect->push_back(z);
                return collect->size() >= limit;
            }
            found = z;
            return true;
        }
        const int remaining_after = n - depth; // positions strictly below this one
        const bool first = rng ? (rng->next_u64() & 1u) : false;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const bool bit = attempt == 0 ? first : !first;
            bool ok = true;
            for (std::size_t q = 0; q < sys.constraints.size(); ++q) {
                const bool differs = sys.constraints[q].anchor.get(depth) != bit;
                const int next = rem[q] - (differs ? 1 : 0);
                if (next > remaining_after || (!at_least && next < 0)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (std::size_t q = 0; q < sys.constraints.size(); ++q)
                if (sys.constraints[q].anchor.get(depth) != bit) --rem[q];
            z.set(depth, bit);
            if (descend(depth + 1)) return true;
            for (std::size_t q = 0; q < sys.constraints.size(); ++q)
                if (sys.constraints[q].anchor.get(depth) != bit) ++rem[q];
        }
        return false;
    }
};

} // namespace

std::optional<BitVector> solve_distance_system(const DistanceConstraintSystem& s, SplitMix64& rng) {
    validate_system(s);
    DistanceSearch search(s);
    search.rng = &rng;
    search.run();
    if (search.found) {
        // contract: every returned point re-verifies all exact distances
        for (const auto& c : s.constraints)
            if (hamming_distance(*search.found, c.anchor) != c.target)
                throw std::logic_error("solve_distance_system: solution failed re-verification");
    }
    return search.found;
}

std::vector<BitVector> enumerate_distance_solutions(const DistanceConstraintSystem& s, std::size_t limit) {
    validate_system(s);
    std::vector<BitVector> out;
    DistanceSearch search(s);
    search.collect = &out;
    search.limit = limit;
    search.run();
    return out;
}

std::optional<BitVector> relax_and_retry(const DistanceConstraintSystem& s, SplitMix64& rng,
                                         int max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("relax_and_retry: max_rounds must be >= 1");
    validate_system(s);
    // round 0: the system as given, exact distances
    if (auto point = solve_distance_system(s, rng)) return point;
    // One relaxation round covers every admissible raised-target system at
    // once: a point satisfies *some* exact system with targets >= the
    // given ones iff d(z, anchor_q) >= target_q for all q. Schedules that
    // raise targets blindly can march straight past the (bounded) feasible
    // window, so the union is solved directly instead.
    DistanceSearch search(s);
    search.at_least = true;
    search.rng = &rng;
    search.run();
    if (search.found) {
        for (const auto& c : s.constraints)
            if (hamming_distance(*search.found, c.anchor) < c.target)
                throw std::logic_error("relax_and_retry: solution failed re-verification");
    }
    return search.found;
}

namespace {

struct CnfBuilder {
    int next_var;
    std::vector<std::vector<int>> clauses;

    explicit CnfBuilder(int primary_vars) : next_var(primary_vars + 1) {}

    int fresh() { return next_var++; }
    void add(std::vector<int> clause) { clauses.push_back(std::move(clause)); }
};

// Sequential-counter encoding of sum(lits) <= k.
void encode_at_most(CnfBuilder& b, const std::vector<int>& lits, int k) {
    const int p = static_cast<int>(lits.size());
    if (k >= p) return;
    if (k == 0) {
        for (int lit : lits) b.add({-lit});
        return;
    }
    // s[i][j] := among the first i literals at least j are true
    std::vector<std::vector<int>> s(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(k) + 1, 0));
    for (int i = 1; i <= p - 1; ++i)
        for (int j = 1; j <= k; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b.fresh();

    const auto y = [&](int i) { return lits[static_cast<std::size_t>(i - 1)]; };
    const auto reg = [&](int i, int j) { return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

    b.add({-y(1), reg(1, 1)});
    for (int j = 2; j <= k; ++j) b.add({-reg(1, j)});
    for (int i = 2; i <= p - 1; ++i) {
        b.add({-y(i), reg(i, 1)});
        b.add({-reg(i - 1, 1), reg(i, 1)});
        for (int j = 2; j <= k; ++j) {
            b.add({-y(i), -reg(i - 1, j - 1), reg(i, j)});
            b.add({-reg(i - 1, j), reg(i, j)});
        }
        b.add({-y(i), -reg(i - 1, k)});
    }
    b.add({-y(p), -reg(p - 1, k)});
}

} // namespace

CnfFormula export_system_as_cnf(const DistanceConstraintSystem& s) {
    validate_system(s);
    const int n = s.dimension();
    CnfBuilder b(n);
    for (const auto& c : s.constraints) {
        // y_i is true iff z_i differs from the anchor's bit i
        std::vector<int> diff, same;
        diff.reserve(static_cast<std::size_t>(n));
        same.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            const int lit = c.anchor.get(i) ? -i : i;
            diff.push_back(lit);
            same.push_back(-lit);
        }
        encode_at_most(b, diff, c.target);      // at most L differ
        encode_at_most(b, same, n - c.target);  // at least L differ
    }
    return CnfFormula(b.next_var - 1, b.clauses);
}

BitVector decode_cnf_model(const DistanceConstraintSystem& s, const PartialAssignment& model) {
    const int n = s.dimension();
    if (model.num_vars() < n) throw std::invalid_argument("decode_cnf_model: model too small");
    BitVector out(n);
    for (int i = 1; i <= n; ++i) {
        if (!model.is_assigned(i)) throw std::invalid_argument("decode_cnf_model: primary variable unassigned");
        out.set(i, model.value(i));
    }
    return out;
}

} // namespace mvp
