#include "pgarc/bounds.hpp"

#include "pgarc/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgarc {

namespace {

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

uint64_t qpow(unsigned q, unsigned e) {
    uint64_t p = 1;
    for (unsigned i = 0; i < e; ++i) p *= q;
    return p;
}

}  // namespace

uint64_t griesmer_g(unsigned q, unsigned k, uint64_t d) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    uint64_t total = 0, p = 1;
    for (unsigned i = 0; i < k; ++i) {
        total += ceil_div(d, p);
        p *= q;
    }
    return total;
}

uint64_t griesmer_g_r(unsigned q, unsigned k, unsigned r, uint64_t d_r) {
    if (r < 1 || r > k) throw std::invalid_argument("need 1 <= r <= k");
    const uint64_t vr = gaussian_v(q, r);
    uint64_t total = d_r, p = q;
    for (unsigned i = 1; i + r <= k; ++i) {
        total += ceil_div(d_r, p * vr);
        p *= q;
    }
    return total;
}

SigmaEps sigma_eps_decompose(unsigned q, unsigned k, uint64_t d) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    SigmaEps se;
    const uint64_t top = qpow(q, k - 1);
    se.sigma = ceil_div(d, top);
    uint64_t deficit = se.sigma * top - d;
    se.eps.assign(k >= 2 ? k - 1 : 0, 0);
    for (unsigned i = 0; i + 1 < k; ++i) {
        se.eps[i] = static_cast<uint8_t>(deficit % q);
        deficit /= q;
    }
    assert(deficit == 0);
    return se;
}

uint64_t griesmer_length_from_decomposition(unsigned q, unsigned k, uint64_t d) {
    const SigmaEps se = sigma_eps_decompose(q, k, d);
    uint64_t n = se.sigma * gaussian_v(q, k);
    for (unsigned i = 0; i + 1 < k; ++i) n -= se.eps[i] * gaussian_v(q, i + 1);
    return n;
}

uint64_t griesmer_code_w(unsigned q, unsigned k, uint64_t d, uint64_t t, unsigned j) {
    if (j >= k) throw std::invalid_argument("need 0 <= j <= k-1");
    uint64_t total = t;
    for (unsigned i = k - 1 - j; i <= k - 1; ++i) total += ceil_div(d, qpow(q, i));
    return total;
}

uint64_t griesmer_code_dr(unsigned q, unsigned k, uint64_t d, unsigned r) {
    if (r < 1 || r > k) throw std::invalid_argument("need 1 <= r <= k");
    const SigmaEps se = sigma_eps_decompose(q, k, d);
    uint64_t inner = se.sigma * qpow(q, k - r);
    for (unsigned i = r; i <= k - 1; ++i) inner -= se.eps[i - 1] * qpow(q, i - r);
    uint64_t result = gaussian_v(q, r) * inner;
    for (unsigned i = 1; i + 1 <= r; ++i) result -= se.eps[i - 1] * gaussian_v(q, i);
    return result;
}

bool griesmer_attainable_binary(unsigned k, uint64_t d) {
    if (k < 1 || d < 1) throw std::invalid_argument("need k >= 1 and d >= 1");
    const uint64_t block = uint64_t{1} << (k - 1);
    const uint64_t s = ceil_div(d, block);
    uint64_t eps = s * block - d;
    std::vector<unsigned> u;
    for (unsigned b = k; b-- > 0;)
        if (eps & (uint64_t{1} << b)) u.push_back(b);
    uint64_t sum = 0;
    const size_t take = std::min<size_t>(static_cast<size_t>(std::min<uint64_t>(s + 1, 64)), u.size());
    for (size_t i = 0; i < take; ++i) sum += u[i] + 1;
    return sum <= s * k;
}

uint64_t griesmer_upper_bound_m(const BoundQuery& query) {
    if (query.r < 1 || query.r > query.K) throw std::invalid_argument("need 1 <= r <= K");
    if (query.r == query.K)
        throw std::invalid_argument("r = K is a trivial query: the only K-subspace is the whole space");
    if (query.w < 1) throw std::invalid_argument("w must be at least 1");
    const unsigned k = query.K + 1;
    const unsigned gr = query.K - query.r;
    const uint64_t ceiling = query.w * gaussian_v(query.q, query.K + 1);
    for (uint64_t n = query.w;; ++n) {
        const uint64_t d = n - query.w;
        const bool ok = d == 0 || n >= griesmer_g_r(query.q, k, gr, d);
        if (!ok) return n - 1;  // the predicate is monotone: once violated it stays violated
        if (n > ceiling) throw std::logic_error("griesmer upper bound scan passed the counting ceiling");
    }
}

uint64_t counting_bound_m(const BoundQuery& query) {
    if (query.r < 1 || query.r > query.K) throw std::invalid_argument("need 1 <= r <= K");
    return query.w * gaussian_v(query.q, query.K + 1) / gaussian_v(query.q, query.r + 1);
}

Oracle Oracle::load(std::istream& in) {
    Oracle o;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        unsigned q, k;
        uint64_t n, d;
        std::string flag;
        if (!(ls >> q)) continue;  // blank line
        if (!(ls >> n >> k >> d >> flag) || (flag != "exact" && flag != "bkn"))
            throw std::invalid_argument("oracle line " + std::to_string(lineno) +
                                        ": expected 'q n k d exact|bkn'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("oracle line " + std::to_string(lineno) + ": trailing tokens");
        const auto key = std::make_tuple(q, k, n);
        if (o.entries_.count(key))
            throw std::invalid_argument("oracle line " + std::to_string(lineno) + ": duplicate (q, n, k)");
        o.entries_[key] = Entry{d, flag == "exact"};
    }
    o.validate();
    return o;
}

Oracle Oracle::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open oracle file: " + path);
    return load(in);
}

void Oracle::validate() const {
    for (const auto& [key, e] : entries_) {
        const auto& [q, k, n] = key;
        if (e.d < 1 || k < 1 || n < k)
            throw std::invalid_argument("oracle entry out of range for [n, k] = [" + std::to_string(n) + ", " +
                                        std::to_string(k) + "]");
        if (griesmer_g(q, k, e.d) > n)
            throw std::invalid_argument("oracle entry [" + std::to_string(n) + ", " + std::to_string(k) + ", " +
                                        std::to_string(e.d) + "]_" + std::to_string(q) +
                                        " violates the Griesmer bound");
        for (const auto& [key2, e2] : entries_) {
            const auto& [q2, k2, n2] = key2;
            if (q2 != q || k2 != k || !e2.exact) continue;
            // e claims existence of [n, k, e.d]; the exact entry at n2 caps it.
            const uint64_t cap = n >= n2 ? e2.d + (n - n2) : e2.d;
            if (e.d > cap)
                throw std::invalid_argument("oracle entries for k=" + std::to_string(k) + " at n=" +
                                            std::to_string(n) + " and n=" + std::to_string(n2) +
                                            " are monotone-inconsistent");
        }
    }
}

uint64_t Oracle::certified_exists_d(unsigned q, uint64_t n, unsigned k) const {
    uint64_t best = n >= k ? 1 : 0;  // [n, k, 1] exists whenever n >= k
    const auto lo = entries_.lower_bound(std::make_tuple(q, k, uint64_t{0}));
    const auto hi = entries_.upper_bound(std::make_tuple(q, k, UINT64_MAX));
    for (auto it = lo; it != hi; ++it) {
        const uint64_t n2 = std::get<2>(it->first), d2 = it->second.d;
        if (n2 <= n) {
            best = std::max(best, d2);  // lengthen: append nonzero columns
        } else if (d2 > n2 - n) {
            best = std::max(best, d2 - (n2 - n));  // puncture n2 - n times
        }
    }
    return best;
}

uint64_t Oracle::certified_max_d(unsigned q, uint64_t n, unsigned k) const {
    uint64_t cap = 0;  // largest d with g_q(k, d) <= n
    while (griesmer_g(q, k, cap + 1) <= n) ++cap;
    const auto lo = entries_.lower_bound(std::make_tuple(q, k, uint64_t{0}));
    const auto hi = entries_.upper_bound(std::make_tuple(q, k, UINT64_MAX));
    for (auto it = lo; it != hi; ++it) {
        if (!it->second.exact) continue;
        const uint64_t n2 = std::get<2>(it->first), d2 = it->second.d;
        cap = std::min(cap, n >= n2 ? d2 + (n - n2) : d2);
    }
    return cap;
}

Oracle::Tri Oracle::code_exists(unsigned q, uint64_t n, unsigned k, uint64_t d) const {
    if (d == 0) return Tri::Yes;
    if (certified_exists_d(q, n, k) >= d) return Tri::Yes;
    if (certified_max_d(q, n, k) < d) return Tri::No;
    return Tri::Unknown;
}

CodingBoundResult coding_upper_bound_m(const BoundQuery& query, const Oracle& oracle, CodingMode mode) {
    if (query.r < 1 || query.r > query.K) throw std::invalid_argument("need 1 <= r <= K");
    CodingBoundResult res;
    uint64_t s = query.w;
    res.chain.push_back(s);
    for (unsigned j = query.r; j < query.K; ++j) {
        const unsigned kprime = (mode == CodingMode::FixedDim ? query.r : j) + 2;
        for (uint64_t d = 1;; ++d) {
            const Oracle::Tri t = oracle.code_exists(query.q, s + d, kprime, d);
            if (t == Oracle::Tri::Yes) continue;
            if (t == Oracle::Tri::Unknown) {
                res.missing = "[" + std::to_string(s + d) + ", " + std::to_string(kprime) + ", " +
                              std::to_string(d) + "]_" + std::to_string(query.q);
                return res;
            }
            s = s + d - 1;
            break;
        }
        res.chain.push_back(s);
    }
    res.value = s;
    return res;
}

BestBound best_upper_bound(const BoundQuery& query, const Oracle& oracle) {
    BestBound best;
    bool have = false;
    auto offer = [&](uint64_t value, const char* source) {
        if (!have || value < best.value) {
            best.value = value;
            best.source = source;
            have = true;
        }
    };
    if (query.r < query.K) offer(griesmer_upper_bound_m(query), "griesmer");
    offer(counting_bound_m(query), "counting");
    const CodingBoundResult coding = coding_upper_bound_m(query, oracle, CodingMode::FixedDim);
    if (coding.value) offer(*coding.value, "coding");
    return best;
}

}  // namespace pgarc
