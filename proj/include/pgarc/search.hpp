#pragma once

#include "pgarc/multiset.hpp"

#include <optional>
#include <string>

namespace pgarc {

// Exact maximization of the size of a multiset in PG(K, q) whose r-subspace
// multiplicities stay at or below w, by depth-first branch and bound over
// points in index order (multiplicities tried high to low).
struct SearchProblem {
    std::shared_ptr<const ProjectiveSpace> space;
    unsigned r = 1;
    uint64_t w = 1;
    uint16_t point_cap = 0;  // 0 = default: min(w, 65535)
    std::vector<std::pair<size_t, uint16_t>> prescribed;  // fixed point multiplicities
    uint64_t node_limit = 0;     // 0 = unlimited
    double time_limit_s = 0;     // 0 = unlimited
    unsigned threads = 1;
    std::optional<Multiset> warm_start;  // incumbent; must satisfy the caps
    std::string log_path;  // improvement log ("n nodes seconds" lines); empty = no log
};

enum class SearchStatus { Optimal, FeasibleOnly };

struct SearchResult {
    uint64_t best_n = 0;
    std::optional<Multiset> witness;
    SearchStatus status = SearchStatus::Optimal;
    uint64_t nodes = 0;
    bool prescription_used = false;  // optimality is then relative to the prescription
};

// Fixes the K+1 unit-vector points to multiplicity 1. Throws when that
// already overfills an r-subspace (e.g. lines capped below 2).
SearchProblem prescribe_unit_frame(SearchProblem p);

// Independent certificate check: every r-subspace multiplicity <= w,
// evaluated from subspace bases by membership tests (no cached incidence).
bool verify_witness(const Multiset& m, unsigned r, uint64_t w);

SearchResult max_arc_size(const SearchProblem& p);

}  // namespace pgarc
