#include "pgarc/multiset.hpp"

#include "pgarc/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pgarc {

namespace {

std::string point_label(const ProjectiveSpace& sp, size_t p) {
    std::string s = "(";
    const Vec& v = sp.points()[p];
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(',');
        s.push_back(static_cast<char>('0' + v[i]));
    }
    s.push_back(')');
    return s;
}

}  // namespace

Multiset::Multiset(std::shared_ptr<const ProjectiveSpace> sp)
    : sp_(std::move(sp)), mults_(sp_->words_per_set() * 64, 0) {}

void Multiset::set_mult(size_t p, uint16_t m) {
    if (p >= sp_->num_points()) throw std::out_of_range("point index out of range");
    n_ += m;
    n_ -= mults_[p];
    mults_[p] = m;
}

void Multiset::add(size_t p, uint16_t count) {
    if (p >= sp_->num_points()) throw std::out_of_range("point index out of range");
    if (mults_[p] + count > std::numeric_limits<uint16_t>::max())
        throw std::overflow_error("point multiplicity overflow");
    mults_[p] = static_cast<uint16_t>(mults_[p] + count);
    n_ += count;
}

uint16_t Multiset::max_point_mult() const {
    uint16_t m = 0;
    for (size_t p = 0; p < sp_->num_points(); ++p) m = std::max(m, mults_[p]);
    return m;
}

bool Multiset::spans() const {
    std::vector<Vec> rows;
    for (size_t p = 0; p < sp_->num_points(); ++p)
        if (mults_[p]) rows.push_back(sp_->points()[p]);
    if (rows.empty()) return false;
    return rank_of(mat_from_rows(rows, sp_->K() + 1), sp_->field()) == sp_->K() + 1;
}

uint64_t Multiset::subspace_multiplicity(unsigned r, size_t index) const {
    return masked_sum_u16()(mults_.data(), sp_->incidence_row(r, index), sp_->words_per_set());
}

uint64_t Multiset::subspace_multiplicity(const Subspace& s) const {
    uint64_t total = 0;
    for (size_t p = 0; p < sp_->num_points(); ++p)
        if (mults_[p] && sp_->contains(s, p)) total += mults_[p];
    return total;
}

ArcProfile arc_profile(const Multiset& m) {
    const ProjectiveSpace& sp = m.space();
    const unsigned K = sp.K();
    ArcProfile pr;
    pr.w.assign(K + 1, 0);
    pr.u.assign(K + 1, 0);
    uint64_t wmax = 0, umin = std::numeric_limits<uint64_t>::max();
    for (size_t p = 0; p < sp.num_points(); ++p) {
        wmax = std::max<uint64_t>(wmax, m.mult(p));
        umin = std::min<uint64_t>(umin, m.mult(p));
    }
    pr.w[0] = wmax;
    pr.u[0] = umin;
    for (unsigned r = 1; r < K; ++r) {
        const auto& inc = sp.incidence(r);
        const size_t words = sp.words_per_set();
        const size_t count = inc.size() / words;
        const MaskedSumFn fn = masked_sum_u16();
        uint64_t hi = 0, lo = std::numeric_limits<uint64_t>::max();
        for (size_t s = 0; s < count; ++s) {
            const uint64_t v = fn(m.data(), inc.data() + s * words, words);
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
        pr.w[r] = hi;
        pr.u[r] = lo;
    }
    pr.w[K] = pr.u[K] = m.size();
    return pr;
}

uint64_t max_subspace_multiplicity(const Multiset& m, unsigned r) {
    const ProjectiveSpace& sp = m.space();
    if (r > sp.K()) throw std::invalid_argument("subspace dimension exceeds the space");
    if (r == sp.K()) return m.size();
    if (r == 0) return m.max_point_mult();
    const auto& inc = sp.incidence(r);
    const size_t words = sp.words_per_set();
    const size_t count = inc.size() / words;
    const MaskedSumFn fn = masked_sum_u16();
    uint64_t hi = 0;
    for (size_t s = 0; s < count; ++s) hi = std::max<uint64_t>(hi, fn(m.data(), inc.data() + s * words, words));
    return hi;
}

Multiset complement(const Multiset& m, uint16_t s) {
    if (m.max_point_mult() > s)
        throw std::invalid_argument("complement level is below the largest point multiplicity");
    Multiset out(m.space_ptr());
    for (size_t p = 0; p < m.space().num_points(); ++p)
        out.set_mult(p, static_cast<uint16_t>(s - m.mult(p)));
    return out;
}

Multiset msum(const Multiset& a, const Multiset& b) {
    if (a.space().q() != b.space().q() || a.space().K() != b.space().K())
        throw std::invalid_argument("multiset sum requires the same ambient space");
    Multiset out(a.space_ptr());
    for (size_t p = 0; p < a.space().num_points(); ++p) {
        const uint32_t m = static_cast<uint32_t>(a.mult(p)) + b.mult(p);
        if (m > std::numeric_limits<uint16_t>::max()) throw std::overflow_error("point multiplicity overflow");
        out.set_mult(p, static_cast<uint16_t>(m));
    }
    return out;
}

Multiset induced_projection(const Multiset& m, const Subspace& delta, const Subspace& pi) {
    const ProjectiveSpace& sp = m.space();
    if (delta.dim + pi.dim + 1 != sp.K())
        throw std::invalid_argument("projection requires dim(center) + dim(screen) = K - 1");
    if (pi.dim < 1) throw std::invalid_argument("screen must have dimension at least 1");
    Multiset out(get_space(sp.q(), pi.dim));
    for (size_t p = 0; p < sp.num_points(); ++p) {
        const uint16_t mu = m.mult(p);
        if (!mu || sp.contains(delta, p)) continue;
        const size_t image = sp.project_point(delta, p, pi);
        out.add(out.space().point_index(sp.local_coordinates(pi, image)), mu);
    }
    return out;
}

Multiset uniform_multiset(std::shared_ptr<const ProjectiveSpace> sp, uint16_t sigma) {
    Multiset m(std::move(sp));
    for (size_t p = 0; p < m.space().num_points(); ++p) m.set_mult(p, sigma);
    return m;
}

Multiset projective_frame(std::shared_ptr<const ProjectiveSpace> sp) {
    Multiset m(std::move(sp));
    const unsigned K = m.space().K();
    for (unsigned i = 0; i <= K; ++i) {
        Vec e(K + 1, 0);
        e[i] = 1;
        m.add(m.space().point_index(e));
    }
    m.add(m.space().point_index(Vec(K + 1, 1)));
    return m;
}

Multiset ovoid(std::shared_ptr<const ProjectiveSpace> sp) {
    if (sp->K() != 3) throw std::invalid_argument("ovoid construction lives in PG(3, q)");
    const Field& f = sp->field();
    const unsigned q = sp->q();
    unsigned bb = q, cc = q;
    for (unsigned b = 0; b < q && bb == q; ++b)
        for (unsigned c = 0; c < q; ++c) {
            bool irreducible = true;  // y^2 + b*y*z + c*z^2 with no projective root
            for (unsigned y = 0; y < q && irreducible; ++y)
                if ((y * y + b * y + c) % q == 0) irreducible = false;
            if (irreducible) {
                bb = b;
                cc = c;
                break;
            }
        }
    if (bb == q) throw std::logic_error("no irreducible binary quadratic found");
    Multiset m(sp);
    for (size_t p = 0; p < sp->num_points(); ++p) {
        const Vec& v = sp->points()[p];
        const unsigned val =
            (static_cast<unsigned>(v[0]) * v[1] + static_cast<unsigned>(v[2]) * v[2] +
             bb * static_cast<unsigned>(v[2]) * v[3] + cc * static_cast<unsigned>(v[3]) * v[3]) %
            f.q();
        if (val == 0) m.set_mult(p, 1);
    }
    assert(m.size() == static_cast<uint64_t>(q) * q + 1);
    return m;
}

SSRecipe parse_ss(const std::string& text, unsigned K) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    SSRecipe r;
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = +1;
        if (!first) {
            if (s[i] == '-') sign = -1;
            else if (s[i] == '+') sign = +1;
            else throw std::invalid_argument("expected '+' or '-' in recipe: " + text);
            ++i;
        }
        unsigned count = 0;
        bool have_count = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            count = count * 10 + static_cast<unsigned>(s[i] - '0');
            have_count = true;
            ++i;
        }
        if (!have_count) count = 1;
        if (count == 0) throw std::invalid_argument("zero multiplier in recipe: " + text);
        if (i >= s.size() || s[i] != '[') throw std::invalid_argument("expected '[' in recipe: " + text);
        ++i;
        unsigned dim = 0;
        bool have_dim = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            dim = dim * 10 + static_cast<unsigned>(s[i] - '0');
            have_dim = true;
            ++i;
        }
        if (!have_dim || i >= s.size() || s[i] != ']')
            throw std::invalid_argument("expected '[dim]' in recipe: " + text);
        ++i;
        if (first) {
            if (dim != K)
                throw std::invalid_argument("recipe must start with the whole space [" + std::to_string(K) + "]");
            if (count > std::numeric_limits<uint16_t>::max()) throw std::invalid_argument("multiplier too large");
            r.sigma = static_cast<uint16_t>(count);
            first = false;
        } else if (sign < 0) {
            if (dim >= K) throw std::invalid_argument("removed subspaces must be proper: " + text);
            for (unsigned t = 0; t < count; ++t) r.removed_dims.push_back(dim);
        } else {
            if (dim != 0) throw std::invalid_argument("added terms must be points '[0]': " + text);
            r.added_points += count;
        }
    }
    if (first) throw std::invalid_argument("empty recipe");
    return r;
}

std::string format_ss(const SSRecipe& r, unsigned K) {
    std::ostringstream out;
    if (r.sigma != 1) out << r.sigma;
    out << '[' << K << ']';
    std::vector<unsigned> dims = r.removed_dims;
    std::sort(dims.begin(), dims.end(), std::greater<unsigned>());
    for (size_t i = 0; i < dims.size();) {
        size_t j = i;
        while (j < dims.size() && dims[j] == dims[i]) ++j;
        out << '-';
        if (j - i > 1) out << (j - i);
        out << '[' << dims[i] << ']';
        i = j;
    }
    if (r.added_points) out << '+' << r.added_points << "[0]";
    return out.str();
}

namespace {

int intersection_dim(const Subspace& a, const Subspace& b, const Field& f) {
    const size_t meet = a.rr.rank + b.rr.rank - rank_of(vstack(a.basis, b.basis), f);
    return static_cast<int>(meet) - 1;
}

}  // namespace

Multiset build_ss(std::shared_ptr<const ProjectiveSpace> sp, const SSRecipe& recipe,
                  Placement placement, std::optional<unsigned> generic_r) {
    const ProjectiveSpace& space = *sp;
    const unsigned K = space.K();
    const size_t N = space.num_points();
    const Field& f = space.field();
    std::vector<unsigned> dims = recipe.removed_dims;
    std::sort(dims.begin(), dims.end(), std::greater<unsigned>());

    std::vector<Subspace> placed;
    if (placement == Placement::Chain) {
        for (unsigned d : dims) {
            Mat b(d + 1, K + 1);  // span of the last d+1 coordinate axes: chains nest by construction
            for (unsigned i = 0; i <= d; ++i) b.at(i, K - d + i) = 1;
            placed.push_back(make_subspace(std::move(b), f));
        }
    } else {
        std::vector<uint32_t> cov(N, 0);
        for (unsigned d : dims) {
            const auto& cands = space.subspaces(d);
            size_t best = 0;
            int best_meet = std::numeric_limits<int>::max();
            uint32_t best_cov = std::numeric_limits<uint32_t>::max();
            for (size_t idx = 0; idx < cands.size(); ++idx) {
                int meet = -1;
                for (const Subspace& pl : placed) meet = std::max(meet, intersection_dim(cands[idx], pl, f));
                if (meet > best_meet) continue;
                const uint64_t* row = space.incidence_row(d, idx);
                uint32_t covmax = 0;
                for (size_t p = 0; p < N; ++p)
                    covmax = std::max(covmax, cov[p] + static_cast<uint32_t>((row[p / 64] >> (p % 64)) & 1));
                if (meet < best_meet || covmax < best_cov) {
                    best = idx;
                    best_meet = meet;
                    best_cov = covmax;
                }
            }
            const uint64_t* row = space.incidence_row(d, best);
            for (size_t p = 0; p < N; ++p) cov[p] += static_cast<uint32_t>((row[p / 64] >> (p % 64)) & 1);
            placed.push_back(cands[best]);
        }
    }

    std::vector<uint32_t> cov(N, 0);
    for (const Subspace& s : placed)
        for (size_t p = 0; p < N; ++p)
            if (space.contains(s, p)) ++cov[p];
    for (size_t p = 0; p < N; ++p)
        if (cov[p] > recipe.sigma)
            throw std::runtime_error("placement infeasible: point " + point_label(space, p) + " is covered " +
                                     std::to_string(cov[p]) + " times but the base multiplicity is " +
                                     std::to_string(recipe.sigma));

    Multiset m(sp);
    for (size_t p = 0; p < N; ++p) m.set_mult(p, static_cast<uint16_t>(recipe.sigma - cov[p]));
    if (recipe.added_points) {
        if (!generic_r)
            throw std::invalid_argument("recipe adds generic points; the subspace dimension they must stay thin for is required");
        m = add_generic_points(std::move(m), *generic_r, recipe.added_points);
    }
    return m;
}

Multiset add_generic_points(Multiset m, unsigned r, unsigned count) {
    const ProjectiveSpace& sp = m.space();
    if (r == 0 || r >= sp.K()) throw std::invalid_argument("generic points need 0 < r < K");
    const auto& inc = sp.incidence(r);
    const size_t words = sp.words_per_set();
    const size_t S = inc.size() / words;
    const size_t N = sp.num_points();
    const MaskedSumFn fn = masked_sum_u16();
    std::vector<uint64_t> sums(S);
    for (size_t s = 0; s < S; ++s) sums[s] = fn(m.data(), inc.data() + s * words, words);

    std::vector<size_t> candidates(N);
    for (size_t p = 0; p < N; ++p) candidates[p] = p;
    if (N * S > 200'000'000) {  // very large spaces: evaluate a fixed random sample
        std::mt19937 rng(20250815);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        candidates.resize(512);
        std::sort(candidates.begin(), candidates.end());
    }

    for (unsigned added = 0; added < count; ++added) {
        size_t best_p = N;
        uint64_t best_val = std::numeric_limits<uint64_t>::max();
        for (size_t p : candidates) {
            uint64_t through = 0, elsewhere = 0;
            for (size_t s = 0; s < S; ++s) {
                const bool in = (inc[s * words + p / 64] >> (p % 64)) & 1;
                (in ? through : elsewhere) = std::max(in ? through : elsewhere, sums[s]);
            }
            const uint64_t val = std::max(through + 1, elsewhere);
            if (val < best_val) {
                best_val = val;
                best_p = p;
            }
        }
        m.add(best_p);
        for (size_t s = 0; s < S; ++s)
            if ((inc[s * words + best_p / 64] >> (best_p % 64)) & 1) ++sums[s];
    }
    return m;
}

Multiset read_arc(std::istream& in) {
    std::vector<uint64_t> tok;
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long x;
        while (ls >> x) {
            if (x < 0) throw std::invalid_argument("negative value in arc file");
            tok.push_back(static_cast<uint64_t>(x));
        }
    }
    if (tok.size() < 3) throw std::invalid_argument("arc file is missing its 'q K n' header");
    const unsigned q = static_cast<unsigned>(tok[0]), K = static_cast<unsigned>(tok[1]);
    const uint64_t n = tok[2];
    Multiset m(get_space(q, K));
    const size_t width = K + 2;
    if ((tok.size() - 3) % width != 0)
        throw std::invalid_argument("arc rows must hold K+1 coordinates and a multiplicity");
    for (size_t i = 3; i < tok.size(); i += width) {
        Vec v(K + 1);
        for (unsigned j = 0; j <= K; ++j) {
            if (tok[i + j] >= q) throw std::invalid_argument("coordinate out of range in arc file");
            v[j] = static_cast<uint8_t>(tok[i + j]);
        }
        const uint64_t mu = tok[i + K + 1];
        if (mu > std::numeric_limits<uint16_t>::max()) throw std::invalid_argument("multiplicity too large");
        m.add(m.space().point_index(v), static_cast<uint16_t>(mu));
    }
    if (m.size() != n)
        throw std::invalid_argument("arc file claims size " + std::to_string(n) + " but rows sum to " +
                                    std::to_string(m.size()));
    return m;
}

void write_arc(std::ostream& out, const Multiset& m) {
    const ProjectiveSpace& sp = m.space();
    out << sp.q() << ' ' << sp.K() << ' ' << m.size() << '\n';
    for (size_t p = 0; p < sp.num_points(); ++p) {
        if (!m.mult(p)) continue;
        for (uint8_t c : sp.points()[p]) out << static_cast<unsigned>(c) << ' ';
        out << m.mult(p) << '\n';
    }
}

Multiset load_arc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open arc file: " + path);
    return read_arc(in);
}

void save_arc(const std::string& path, const Multiset& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write arc file: " + path);
    write_arc(out, m);
}

}  // namespace pgarc
