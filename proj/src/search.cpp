#include "pgarc/search.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pgarc {

namespace {

using Clock = std::chrono::steady_clock;

struct SharedState {
    // problem geometry (immutable during the search)
    size_t N = 0, S = 0, L = 0;
    std::vector<uint32_t> subs_of_point;  // CSR: L subspace ids per point
    std::vector<int32_t> fixed;           // fixed multiplicity per point, -1 = free
    uint16_t cap = 1;
    uint64_t w = 0;

    // budgets
    uint64_t node_limit = 0;
    Clock::time_point t0;
    double time_limit_s = 0;

    // shared incumbent
    std::atomic<uint64_t> best{0};
    std::atomic<uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::vector<uint16_t> best_mults;
    bool improved = false;
    std::ofstream log;
};

struct Worker {
    SharedState* sh = nullptr;
    std::vector<int64_t> res;      // residual capacity per r-subspace
    std::vector<uint16_t> mults;   // current assignment
    uint64_t n = 0;                // current total multiplicity
    int64_t R = 0;                 // sum of residuals
    uint64_t local_nodes = 0;

    void flush_nodes() {
        sh->nodes.fetch_add(local_nodes, std::memory_order_relaxed);
        local_nodes = 0;
    }

    bool over_budget() {
        if ((local_nodes & 1023) == 0) {
            flush_nodes();
            if (sh->node_limit && sh->nodes.load(std::memory_order_relaxed) >= sh->node_limit)
                sh->stop.store(true, std::memory_order_relaxed);
            if (sh->time_limit_s > 0 &&
                std::chrono::duration<double>(Clock::now() - sh->t0).count() >= sh->time_limit_s)
                sh->stop.store(true, std::memory_order_relaxed);
        }
        return sh->stop.load(std::memory_order_relaxed);
    }

    void report(uint64_t value) {
        std::lock_guard<std::mutex> lock(sh->mu);
        if (value <= sh->best.load(std::memory_order_relaxed)) return;
        sh->best.store(value, std::memory_order_relaxed);
        sh->best_mults = mults;
        sh->improved = true;
        if (sh->log.is_open()) {
            sh->nodes.fetch_add(local_nodes, std::memory_order_relaxed);
            local_nodes = 0;
            const double secs = std::chrono::duration<double>(Clock::now() - sh->t0).count();
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", secs);
            sh->log << value << ' ' << sh->nodes.load(std::memory_order_relaxed) << ' ' << buf << '\n';
            sh->log.flush();
        }
    }

    // Applies multiplicity m at point p; returns false when a cap would go negative.
    bool apply(size_t p, uint16_t m) {
        if (m == 0) return true;
        const uint32_t* subs = sh->subs_of_point.data() + p * sh->L;
        for (size_t i = 0; i < sh->L; ++i)
            if (res[subs[i]] < m) return false;
        for (size_t i = 0; i < sh->L; ++i) res[subs[i]] -= m;
        R -= static_cast<int64_t>(m) * static_cast<int64_t>(sh->L);
        n += m;
        mults[p] = m;
        return true;
    }

    void undo(size_t p, uint16_t m) {
        if (m == 0) return;
        const uint32_t* subs = sh->subs_of_point.data() + p * sh->L;
        for (size_t i = 0; i < sh->L; ++i) res[subs[i]] += m;
        R += static_cast<int64_t>(m) * static_cast<int64_t>(sh->L);
        n -= m;
        mults[p] = 0;
    }

    uint16_t allowed_at(size_t p) const {
        int64_t lim = sh->cap;
        const uint32_t* subs = sh->subs_of_point.data() + p * sh->L;
        for (size_t i = 0; i < sh->L; ++i) {
            lim = std::min(lim, res[subs[i]]);
            if (lim <= 0) return 0;
        }
        return static_cast<uint16_t>(lim);
    }

    void dfs(size_t p) {
        ++local_nodes;
        if (over_budget()) return;
        if (p == sh->N) {
            if (n > sh->best.load(std::memory_order_relaxed)) report(n);
            return;
        }
        // optimistic completion: every further unit consumes L residual
        // capacity, and each untouched point holds at most cap units
        uint64_t completion =
            std::min<uint64_t>(static_cast<uint64_t>(R) / sh->L, (sh->N - p) * static_cast<uint64_t>(sh->cap));
        const uint64_t best_now = sh->best.load(std::memory_order_relaxed);
        if (n + completion <= best_now) return;
        if (n + completion <= best_now + sh->cap + 1) {
            // close call: refine with the per-point allowance, which can only
            // shrink as further units are placed, so its sum stays an upper
            // bound on everything still addable; stop summing as soon as the
            // refinement can no longer prune (the test below then fails)
            uint64_t tight = 0;
            for (size_t p2 = p; p2 < sh->N; ++p2) {
                tight += allowed_at(p2);
                if (n + tight > best_now) break;
            }
            if (n + std::min(completion, tight) <= best_now) return;
        }
        const uint16_t top = allowed_at(p);
        uint16_t lo = 0, hi = top;
        if (sh->fixed[p] >= 0) {
            const uint16_t m = static_cast<uint16_t>(sh->fixed[p]);
            if (m > top) return;  // fixed value no longer feasible on this branch
            lo = hi = m;
        }
        // place hi units in one pass, then hand one unit back per step down
        // to lo instead of re-applying the whole multiplicity each time
        const uint32_t* subs = sh->subs_of_point.data() + p * sh->L;
        if (hi) {
            for (size_t i = 0; i < sh->L; ++i) res[subs[i]] -= hi;
            R -= static_cast<int64_t>(hi) * static_cast<int64_t>(sh->L);
            n += hi;
        }
        for (uint16_t m = hi;; --m) {
            mults[p] = m;
            dfs(p + 1);
            if (m == lo || sh->stop.load(std::memory_order_relaxed)) {
                if (m) {
                    for (size_t i = 0; i < sh->L; ++i) res[subs[i]] += m;
                    R += static_cast<int64_t>(m) * static_cast<int64_t>(sh->L);
                    n -= m;
                }
                mults[p] = 0;
                return;
            }
            for (size_t i = 0; i < sh->L; ++i) ++res[subs[i]];
            R += static_cast<int64_t>(sh->L);
            --n;
        }
    }
};

Worker fresh_worker(SharedState& sh) {
    Worker w;
    w.sh = &sh;
    w.res.assign(sh.S, static_cast<int64_t>(sh.w));
    w.mults.assign(sh.N, 0);
    w.n = 0;
    w.R = static_cast<int64_t>(sh.w) * static_cast<int64_t>(sh.S);
    return w;
}

}  // namespace

bool verify_witness(const Multiset& m, unsigned r, uint64_t w) {
    const ProjectiveSpace& sp = m.space();
    if (r > sp.K()) throw std::invalid_argument("subspace dimension exceeds the space");
    if (r == sp.K()) return m.size() <= w;
    for (const Subspace& s : sp.subspaces(r))
        if (m.subspace_multiplicity(s) > w) return false;
    return true;
}

SearchProblem prescribe_unit_frame(SearchProblem p) {
    if (!p.space) throw std::invalid_argument("search problem has no space");
    const unsigned K = p.space->K();
    for (unsigned i = 0; i <= K; ++i) {
        Vec e(K + 1, 0);
        e[i] = 1;
        p.prescribed.emplace_back(p.space->point_index(e), 1);
    }
    Multiset trial(p.space);
    for (const auto& [pt, m] : p.prescribed) trial.set_mult(pt, m);
    if (!verify_witness(trial, p.r, p.w))
        throw std::invalid_argument("unit-frame prescription already exceeds an r-subspace cap");
    return p;
}

SearchResult max_arc_size(const SearchProblem& p) {
    if (!p.space) throw std::invalid_argument("search problem has no space");
    const ProjectiveSpace& sp = *p.space;
    if (p.r < 1 || p.r >= sp.K())
        throw std::invalid_argument("search needs 1 <= r <= K-1");
    if (p.w < 1) throw std::invalid_argument("w must be at least 1");

    SharedState sh;
    sh.N = sp.num_points();
    const auto& inc = sp.incidence(p.r);
    const size_t words = sp.words_per_set();
    sh.S = inc.size() / words;
    sh.L = sp.subspaces_through_point(p.r);
    sh.w = p.w;
    sh.cap = p.point_cap ? p.point_cap : static_cast<uint16_t>(std::min<uint64_t>(p.w, 65535));
    sh.node_limit = p.node_limit;
    sh.time_limit_s = p.time_limit_s;
    sh.t0 = Clock::now();

    sh.subs_of_point.assign(sh.N * sh.L, 0);
    {
        std::vector<size_t> fill(sh.N, 0);
        for (size_t s = 0; s < sh.S; ++s) {
            const uint64_t* row = inc.data() + s * words;
            for (size_t wd = 0; wd < words; ++wd) {
                uint64_t bits = row[wd];
                while (bits) {
                    const size_t pt = wd * 64 + static_cast<size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    sh.subs_of_point[pt * sh.L + fill[pt]++] = static_cast<uint32_t>(s);
                }
            }
        }
        for (size_t pt = 0; pt < sh.N; ++pt)
            assert(fill[pt] == sh.L);
    }

    sh.fixed.assign(sh.N, -1);
    for (const auto& [pt, m] : p.prescribed) {
        if (pt >= sh.N) throw std::invalid_argument("prescribed point out of range");
        if (sh.fixed[pt] >= 0 && sh.fixed[pt] != static_cast<int32_t>(m))
            throw std::invalid_argument("conflicting prescriptions for one point");
        sh.fixed[pt] = static_cast<int32_t>(m);
    }
    {
        // reject prescriptions that already overfill some r-subspace
        std::vector<int64_t> res(sh.S, static_cast<int64_t>(sh.w));
        for (size_t pt = 0; pt < sh.N; ++pt) {
            if (sh.fixed[pt] <= 0) continue;
            const uint32_t* subs = sh.subs_of_point.data() + pt * sh.L;
            for (size_t i = 0; i < sh.L; ++i) {
                res[subs[i]] -= sh.fixed[pt];
                if (res[subs[i]] < 0) throw std::invalid_argument("prescription violates an r-subspace cap");
            }
        }
    }

    if (p.warm_start) {
        const Multiset& warm = *p.warm_start;
        if (warm.space().q() != sp.q() || warm.space().K() != sp.K())
            throw std::invalid_argument("warm start lives in a different space");
        if (!verify_witness(warm, p.r, p.w)) throw std::invalid_argument("warm start violates the caps");
        sh.best.store(warm.size());
    }

    if (!p.log_path.empty()) {
        sh.log.open(p.log_path);
        if (!sh.log) throw std::runtime_error("cannot open search log: " + p.log_path);
    }

    const unsigned threads = std::max(1u, p.threads);
    if (threads == 1) {
        Worker w = fresh_worker(sh);
        w.dfs(0);
        w.flush_nodes();
    } else {
        // split the top of the tree into prefix tasks, processed by a pool
        size_t depth = 0;
        std::vector<std::vector<uint16_t>> tasks{{}};
        const size_t want = static_cast<size_t>(threads) * 8;
        while (tasks.size() < want && depth < sh.N) {
            std::vector<std::vector<uint16_t>> next;
            for (const auto& prefix : tasks) {
                Worker w = fresh_worker(sh);
                bool ok = true;
                for (size_t i = 0; i < prefix.size() && ok; ++i) ok = w.apply(i, prefix[i]);
                if (!ok) continue;
                const uint16_t hi = w.allowed_at(depth);
                if (sh.fixed[depth] >= 0) {
                    if (sh.fixed[depth] <= hi) {
                        auto t = prefix;
                        t.push_back(static_cast<uint16_t>(sh.fixed[depth]));
                        next.push_back(std::move(t));
                    }
                    continue;
                }
                for (int m = hi; m >= 0; --m) {
                    auto t = prefix;
                    t.push_back(static_cast<uint16_t>(m));
                    next.push_back(std::move(t));
                }
            }
            tasks = std::move(next);
            ++depth;
        }
        std::atomic<size_t> cursor{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t i = cursor.fetch_add(1);
                    if (i >= tasks.size() || sh.stop.load(std::memory_order_relaxed)) break;
                    Worker w = fresh_worker(sh);
                    bool ok = true;
                    for (size_t j = 0; j < tasks[i].size() && ok; ++j) ok = w.apply(j, tasks[i][j]);
                    if (ok) w.dfs(tasks[i].size());
                    w.flush_nodes();
                }
            });
        for (auto& th : pool) th.join();
    }

    SearchResult out;
    out.best_n = sh.best.load();
    out.nodes = sh.nodes.load();
    out.status = sh.stop.load() ? SearchStatus::FeasibleOnly : SearchStatus::Optimal;
    out.prescription_used = !p.prescribed.empty();
    if (sh.improved) {
        Multiset w(p.space);
        for (size_t pt = 0; pt < sh.N; ++pt)
            if (sh.best_mults[pt]) w.set_mult(pt, sh.best_mults[pt]);
        if (w.size() != out.best_n || !verify_witness(w, p.r, p.w))
            throw std::logic_error("search produced an invalid witness");
        out.witness = std::move(w);
    } else if (p.warm_start) {
        out.witness = p.warm_start;
    }
    return out;
}

}  // namespace pgarc
