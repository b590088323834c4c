#include "mvp/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace mvp {

CnfFormula::CnfFormula(int num_vars, const std::vector<std::vector<int>>& clauses) : num_vars_(num_vars) {
    if (num_vars < 1) throw std::invalid_argument("CnfFormula: num_vars must be positive");
    offsets_.push_back(0);
    std::vector<signed char> mark(static_cast<std::size_t>(num_vars) + 1, 0);
    for (const auto& cl : clauses) {
        if (cl.empty()) throw std::invalid_argument("CnfFormula: empty clause");
        bool taut = false;
        const std::size_t begin = lits_.size();
        for (int lit : cl) {
            const int v = std::abs(lit);
            if (lit == 0 || v > num_vars) throw std::invalid_argument("CnfFormula: literal out of range");
            const signed char polarity = lit > 0 ? 1 : 2;
            if (mark[static_cast<std::size_t>(v)] & polarity) continue; // duplicate literal
            if (mark[static_cast<std::size_t>(v)] & (3 ^ polarity)) taut = true;
            mark[static_cast<std::size_t>(v)] |= polarity;
            lits_.push_back(lit);
        }
        for (std::size_t i = begin; i < lits_.size(); ++i)
            mark[static_cast<std::size_t>(std::abs(lits_[i]))] = 0;
        offsets_.push_back(lits_.size());
        tautology_.push_back(taut);
        if (taut) ++tautology_count_;
    }
    occ_.resize(static_cast<std::size_t>(2 * num_vars));
    for (int c = 0; c < num_clauses(); ++c)
        for (int lit : clause(c)) occ_[lit_slot(lit)].push_back(c);
}

std::string CnfFormula::to_dimacs() const {
    std::ostringstream out;
    out << "p cnf " << num_vars_ << ' ' << num_clauses() << '\n';
    for (int c = 0; c < num_clauses(); ++c) {
        for (int lit : clause(c)) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

BitVector PartialAssignment::to_bitvector() const {
    if (!is_total()) throw std::invalid_argument("PartialAssignment: not total");
    BitVector out(num_vars());
    for (int v = 1; v <= num_vars(); ++v) out.set(v, value(v));
    return out;
}

namespace {

struct Tokenizer {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    bool fresh_line = true; // nothing but whitespace so far on this line

    explicit Tokenizer(const std::string& t) : text(t) {}

    void skip_space_and_comments() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '\n') {
                ++line;
                ++pos;
                fresh_line = true;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else if (c == 'c' && fresh_line) {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool next_token(std::string& tok) {
        skip_space_and_comments();
        if (pos >= text.size()) return false;
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tok = text.substr(start, pos - start);
        fresh_line = false;
        return true;
    }
};

int parse_int(const std::string& tok, int line, const char* what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    return value;
}

} // namespace

CnfFormula parse_dimacs(const std::string& text) {
    Tokenizer tz(text);
    std::string tok;

    if (!tz.next_token(tok)) throw ParseError(tz.line, "missing 'p cnf' header");
    if (tok != "p") throw ParseError(tz.line, "expected 'p cnf' header");
    const int header_line = tz.line;
    if (!tz.next_token(tok) || tok != "cnf") throw ParseError(header_line, "expected 'p cnf' header");
    if (!tz.next_token(tok)) throw ParseError(header_line, "header missing variable count");
    const int nvars = parse_int(tok, header_line, "variable count");
    if (!tz.next_token(tok)) throw ParseError(header_line, "header missing clause count");
    const int nclauses = parse_int(tok, header_line, "clause count");
    if (nvars < 1) throw ParseError(header_line, "variable count must be positive");
    if (nclauses < 0) throw ParseError(header_line, "clause count must be nonnegative");

    std::vector<std::vector<int>> clauses;
    clauses.reserve(static_cast<std::size_t>(nclauses));
    std::vector<int> current;
    while (tz.next_token(tok)) {
        const int lit = parse_int(tok, tz.line, "literal");
        if (lit == 0) {
            if (current.empty()) throw ParseError(tz.line, "empty clause");
            clauses.push_back(current);
            current.clear();
            continue;
        }
        if (std::abs(lit) > nvars)
            throw ParseError(tz.line, "literal " + std::to_string(lit) + " out of range");
        current.push_back(lit);
    }
    if (!current.empty()) throw ParseError(tz.line, "unterminated clause at end of input");
    if (static_cast<int>(clauses.size()) != nclauses)
        throw ParseError(tz.line, "header declares " + std::to_string(nclauses) + " clauses, found " +
                                      std::to_string(clauses.size()));
    return CnfFormula(nvars, clauses);
}

std::vector<int> parse_input_vars(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> vars;
    int v;
    while (in >> v) vars.push_back(v);
    if (!in.eof()) throw std::invalid_argument("input-variable file: non-integer token");
    return vars;
}

std::vector<int> dimacs_input_vars(const std::string& dimacs_text) {
    std::vector<int> vars;
    std::istringstream in(dimacs_text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a >> b)) continue;
        if (a != "c" || b != "input") continue;
        int v;
        while (ls >> v) vars.push_back(v);
    }
    return vars;
}

CnfFormula apply_assumptions(const CnfFormula& f, const std::vector<int>& literals) {
    std::vector<signed char> mark(static_cast<std::size_t>(f.num_vars()) + 1, 0);
    for (int lit : literals) {
        const int v = std::abs(lit);
        if (lit == 0 || v > f.num_vars())
            throw std::invalid_argument("apply_assumptions: literal out of range");
        const signed char s = lit > 0 ? 1 : -1;
        if (mark[static_cast<std::size_t>(v)] == -s)
            throw std::invalid_argument("apply_assumptions: complementary literal pair");
        mark[static_cast<std::size_t>(v)] = s;
    }
    std::vector<std::vector<int>> clauses;
    clauses.reserve(static_cast<std::size_t>(f.num_clauses()) + literals.size());
    for (int c = 0; c < f.num_clauses(); ++c) {
        const auto cl = f.clause(c);
        clauses.emplace_back(cl.begin(), cl.end());
    }
    for (int lit : literals) clauses.push_back({lit});
    return CnfFormula(f.num_vars(), clauses);
}

PropagationResult unit_propagate(const CnfFormula& f, const PartialAssignment& seed) {
    if (seed.num_vars() != f.num_vars())
        throw std::invalid_argument("unit_propagate: seed size mismatch");

    PartialAssignment assignment = seed;
    std::deque<int> queue; // literals assigned true, occurrences pending

    const auto lit_value = [&](int lit) -> int {
        const int v = std::abs(lit);
        if (!assignment.is_assigned(v)) return 0;
        return assignment.value(v) == (lit > 0) ? 1 : -1;
    };

    const auto finish = [&](PropagationStatus st, int conflict) {
        int satisfied = 0;
        for (int c = 0; c < f.num_clauses(); ++c) {
            if (f.is_tautology(c)) { // satisfied under any assignment
                ++satisfied;
                continue;
            }
            for (int lit : f.clause(c)) {
                if (lit_value(lit) == 1) {
                    ++satisfied;
                    break;
                }
            }
        }
        return PropagationResult{std::move(assignment), st, satisfied, conflict};
    };

    for (int v = 1; v <= f.num_vars(); ++v)
        if (seed.is_assigned(v)) queue.push_back(seed.value(v) ? v : -v);

    // per-clause count of literals not yet known false
    std::vector<int> open(static_cast<std::size_t>(f.num_clauses()));
    std::vector<bool> satisfied_flag(static_cast<std::size_t>(f.num_clauses()), false);

    // examine a clause whose open count dropped; returns a conflict clause
    // id, or -1
    const auto examine = [&](int c) -> int {
        int unassigned_lit = 0;
        int unassigned_seen = 0;
        for (int lit : f.clause(c)) {
            const int lv = lit_value(lit);
            if (lv == 1) {
                satisfied_flag[static_cast<std::size_t>(c)] = true;
                return -1;
            }
            if (lv == 0) {
                ++unassigned_seen;
                unassigned_lit = lit;
            }
        }
        if (unassigned_seen == 0) return c; // falsified
        if (unassigned_seen == 1) {
            assignment.assign(std::abs(unassigned_lit), unassigned_lit > 0);
            queue.push_back(unassigned_lit);
        }
        return -1;
    };

    // initial pass in clause order, after the seed is in place
    for (int c = 0; c < f.num_clauses(); ++c) {
        int cnt = 0;
        bool sat = false;
        for (int lit : f.clause(c)) {
            const int lv = lit_value(lit);
            if (lv == 1) sat = true;
            if (lv != -1) ++cnt;
        }
        open[static_cast<std::size_t>(c)] = cnt;
        if (sat) {
            satisfied_flag[static_cast<std::size_t>(c)] = true;
            continue;
        }
        if (cnt == 0) return finish(PropagationStatus::conflict, c);
        if (cnt == 1) {
            const int conflict = examine(c);
            if (conflict >= 0) return finish(PropagationStatus::conflict, conflict);
        }
    }

    while (!queue.empty()) {
        const int lit = queue.front();
        queue.pop_front();
        for (int c : f.occurrences(lit)) satisfied_flag[static_cast<std::size_t>(c)] = true;
        for (int c : f.occurrences(-lit)) {
            if (satisfied_flag[static_cast<std::size_t>(c)]) continue;
            if (--open[static_cast<std::size_t>(c)] <= 1) {
                const int conflict = examine(c);
                if (conflict >= 0) return finish(PropagationStatus::conflict, conflict);
            }
        }
    }
    return finish(PropagationStatus::fixpoint, -1);
}

int count_satisfied(const CnfFormula& f, const BitVector& a) {
    if (a.size() != f.num_vars()) throw std::invalid_argument("count_satisfied: dimension mismatch");
    int satisfied = 0;
    for (int c = 0; c < f.num_clauses(); ++c) {
        for (int lit : f.clause(c)) {
            const bool val = lit > 0 ? a.get(lit) : !a.get(-lit);
            if (val) {
                ++satisfied;
                break;
            }
        }
    }
    return satisfied;
}

int count_satisfied(const CnfFormula& f, const PartialAssignment& a) {
    if (!a.is_total()) throw std::invalid_argument("count_satisfied: assignment is not total");
    return count_satisfied(f, a.to_bitvector());
}

bool is_supbs(const CnfFormula& f, const std::vector<int>& input_vars, int max_inputs) {
    const int k = static_cast<int>(input_vars.size());
    if (k > max_inputs)
        throw std::invalid_argument("is_supbs: input set too large for exhaustive check");
    for (int v : input_vars)
        if (v < 1 || v > f.num_vars()) throw std::invalid_argument("is_supbs: variable out of range");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        PartialAssignment seed(f.num_vars());
        for (int i = 0; i < k; ++i)
            seed.assign(input_vars[static_cast<std::size_t>(i)], (bits >> i) & 1u);
        const auto res = unit_propagate(f, seed);
        if (res.status == PropagationStatus::fixpoint && !res.assignment.is_total()) return false;
    }
    return true;
}

} // namespace mvp
