#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace pgarc {

// g_q(k, d) = sum_{i=0}^{k-1} ceil(d / q^i): minimum length of an [n, k, d]_q
// code by the Griesmer bound.
uint64_t griesmer_g(unsigned q, unsigned k, uint64_t d);

// g_q^{(r)}(k, d_r) = d_r + sum_{i=1}^{k-r} ceil(d_r / (q^i v_r)): the same
// bound for the r-th generalized Hamming weight. r = 1 recovers griesmer_g;
// r = k returns d_r.
uint64_t griesmer_g_r(unsigned q, unsigned k, unsigned r, uint64_t d_r);

// The unique writing d = sigma * q^{k-1} - sum_{i=0}^{k-2} eps_i q^i with
// digits eps_i in [0, q-1].
struct SigmaEps {
    uint64_t sigma = 0;
    std::vector<uint8_t> eps;  // eps[0] .. eps[k-2]
};

SigmaEps sigma_eps_decompose(unsigned q, unsigned k, uint64_t d);

// Length of a Griesmer code via the decomposition:
// sigma * v_k - sum eps_i * v_{i+1}. Equals griesmer_g(q, k, d).
uint64_t griesmer_length_from_decomposition(unsigned q, unsigned k, uint64_t d);

// w_j = t + sum_{i=k-1-j}^{k-1} ceil(d/q^i): the j-th maximal subspace
// multiplicity of the arc of a length-(t + g_q(k,d)) code, 0 <= j <= k-1.
uint64_t griesmer_code_w(unsigned q, unsigned k, uint64_t d, uint64_t t, unsigned j);

// d_r of a Griesmer code with minimum distance d:
// v_r (sigma q^{k-r} - sum_{i=r}^{k-1} eps_{i-1} q^{i-r}) - sum_{i=1}^{r-1} eps_{i-1} v_i.
// Satisfies griesmer_g_r(q, k, r, d_r) = griesmer_g(q, k, d).
uint64_t griesmer_code_dr(unsigned q, unsigned k, uint64_t d, unsigned r);

// Whether a binary [g_2(k, d), k, d] code exists, by the classical
// characterization: write d = s * 2^(k-1) - sum_i 2^(u_i) with
// s = ceil(d / 2^(k-1)) and k > u_1 > ... > u_p >= 0; the length g_2(k, d)
// is attainable iff sum_{i <= min(s+1, p)} (u_i + 1) <= s * k.  Since any
// [n, k, d] code with n = g_2(k, d) meets the Griesmer bound, a negative
// answer rules the parameters out entirely.
bool griesmer_attainable_binary(unsigned k, uint64_t d);

// A query for m_q^{(r)}(K, w): the largest total multiplicity of a multiset
// in PG(K, q) in which every r-subspace has multiplicity at most w.
struct BoundQuery {
    unsigned q = 2, K = 1, r = 1;
    uint64_t w = 1;
};

// Largest n with n >= g_q^{(K-r)}(K+1, n-w); errors for r = K (no constraint).
uint64_t griesmer_upper_bound_m(const BoundQuery& query);

// floor(w * v_{K+1} / v_{r+1}), from double-counting incident
// (point, r-subspace) pairs.
uint64_t counting_bound_m(const BoundQuery& query);

// Table of certified optimal (or best-known) minimum distances of linear
// codes. File lines: "q n k d exact|bkn"; '#' starts a comment. The table is
// closed under the standard derivations: puncturing and lengthening spread
// existence claims to nearby lengths, while nonexistence comes only from
// `exact` entries and the Griesmer bound itself.
class Oracle {
public:
    enum class Tri { Yes, No, Unknown };

    static Oracle load(std::istream& in);
    static Oracle load_file(const std::string& path);

    // Largest d with a certified [n, k, >= d]_q code (0 when none certified).
    uint64_t certified_exists_d(unsigned q, uint64_t n, unsigned k) const;
    // Largest d not excluded for [n, k, d]_q codes.
    uint64_t certified_max_d(unsigned q, uint64_t n, unsigned k) const;
    // Existence of an [n, k, >= d]_q code, as certified by the table.
    Tri code_exists(unsigned q, uint64_t n, unsigned k, uint64_t d) const;

    size_t size() const noexcept { return entries_.size(); }

private:
    struct Entry {
        uint64_t d;
        bool exact;
    };
    // (q, k, n) -> entry
    std::map<std::tuple<unsigned, unsigned, uint64_t>, Entry> entries_;

    void validate() const;
};

// Recursion through optimal code lengths: s_r = w and s_{j+1} = the largest n
// such that an [n, k', n - s_j]_q code exists and an [n+1, k', n+1-s_j]_q
// code does not. FixedDim uses k' = r + 2 throughout (the convention the
// worked bound 21 -> 39 -> 77 follows); IncrementingDim uses k' = j + 2.
enum class CodingMode { FixedDim, IncrementingDim };

struct CodingBoundResult {
    std::optional<uint64_t> value;
    std::vector<uint64_t> chain;  // s_r .. s_K (stops where knowledge ends)
    std::string missing;          // the oracle key that was needed, when !value
};

CodingBoundResult coding_upper_bound_m(const BoundQuery& query, const Oracle& oracle,
                                       CodingMode mode = CodingMode::FixedDim);

struct BestBound {
    uint64_t value = 0;
    std::string source;  // "griesmer" | "counting" | "coding"
};

// Minimum of the applicable upper bounds; ties resolve to the earlier source
// in the order griesmer, counting, coding.
BestBound best_upper_bound(const BoundQuery& query, const Oracle& oracle);

}  // namespace pgarc
