#include "pgarc/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace pgarc {

uint64_t gaussian_v(unsigned q, unsigned r) {
    uint64_t p = 1, s = 0;
    for (unsigned i = 0; i < r; ++i) {
        s += p;
        p *= q;
    }
    return s;
}

uint64_t gaussian_binomial(unsigned q, unsigned n, unsigned k) {
    if (k > n) return 0;
    // [n k]_q = prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{k-i} - 1), computed by
    // interleaving to keep intermediates integral and small.
    __uint128_t num = 1;
    auto qpow = [&](unsigned e) {
        __uint128_t p = 1;
        for (unsigned i = 0; i < e; ++i) p *= q;
        return p;
    };
    for (unsigned i = 0; i < k; ++i) num *= qpow(n - i) - 1;
    for (unsigned i = 0; i < k; ++i) num /= qpow(k - i) - 1;
    if (num > UINT64_MAX) throw std::overflow_error("gaussian binomial overflow");
    return static_cast<uint64_t>(num);
}

std::string Subspace::key() const {
    std::string s;
    s.reserve(basis.a.size());
    for (uint8_t x : basis.a) s.push_back(static_cast<char>('0' + x));
    return s;
}

Subspace make_subspace(Mat basis, const Field& f) {
    Subspace s;
    s.rr = rref(basis, f);
    if (s.rr.rank == 0) throw std::invalid_argument("subspace basis has rank 0");
    Mat trimmed(s.rr.rank, basis.cols);
    std::copy(basis.a.begin(), basis.a.begin() + static_cast<long>(s.rr.rank * basis.cols), trimmed.a.begin());
    s.basis = std::move(trimmed);
    s.dim = static_cast<unsigned>(s.rr.rank - 1);
    return s;
}

ProjectiveSpace::ProjectiveSpace(unsigned q, unsigned K) : q_(q), K_(K), f_(q) {
    if (K < 1) throw std::invalid_argument("projective dimension must be at least 1");
    const unsigned n = K_ + 1;
    // Canonical points in lexicographic order: leading-zero blocks from the
    // longest prefix down, free suffix counting up in base q.
    for (int lead = static_cast<int>(n) - 1; lead >= 0; --lead) {
        const unsigned tail = n - 1 - static_cast<unsigned>(lead);
        std::vector<uint8_t> suffix(tail, 0);
        while (true) {
            Vec v(n, 0);
            v[static_cast<size_t>(lead)] = 1;
            std::copy(suffix.begin(), suffix.end(), v.begin() + lead + 1);
            points_.push_back(v);
            int i = static_cast<int>(tail) - 1;
            while (i >= 0 && suffix[static_cast<size_t>(i)] == q_ - 1) suffix[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
            ++suffix[static_cast<size_t>(i)];
        }
    }
    assert(points_.size() == gaussian_v(q_, n));
    for (size_t i = 0; i < points_.size(); ++i) point_lookup_.emplace(pack(points_[i]), i);
    words_ = (points_.size() + 63) / 64;
    subs_.resize(K_ + 1);
    inc_.resize(K_ + 1);
}

uint64_t ProjectiveSpace::pack(const Vec& v) const {
    uint64_t x = 0;
    for (uint8_t c : v) x = x * q_ + c;
    return x;
}

size_t ProjectiveSpace::point_index(Vec v) const {
    if (v.size() != K_ + 1) throw std::invalid_argument("point has wrong coordinate count");
    normalize_projective(v, f_);
    const auto it = point_lookup_.find(pack(v));
    if (it == point_lookup_.end()) throw std::invalid_argument("point coordinates out of range");
    return it->second;
}

uint64_t ProjectiveSpace::subspace_count(unsigned r) const {
    return gaussian_binomial(q_, K_ + 1, r + 1);
}

uint64_t ProjectiveSpace::subspaces_through_point(unsigned r) const {
    return gaussian_binomial(q_, K_, r);
}

void ProjectiveSpace::build_dim(unsigned r) const {
    if (subs_[r]) return;
    const uint64_t count = subspace_count(r);
    if (count > max_subspaces_)
        throw std::length_error("subspace enumeration for r=" + std::to_string(r) + " needs " +
                                std::to_string(count) + " subspaces, above the cap of " +
                                std::to_string(max_subspaces_));
    const unsigned n = K_ + 1, m = r + 1;
    auto subs = std::make_unique<std::vector<Subspace>>();
    subs->reserve(count);
    auto inc = std::make_unique<std::vector<uint64_t>>();
    inc->reserve(count * words_);

    std::vector<size_t> piv(m);
    for (unsigned i = 0; i < m; ++i) piv[i] = i;
    std::vector<uint8_t> coeff(m, 0);
    while (true) {
        std::vector<bool> is_piv(n, false);
        for (size_t p : piv) is_piv[p] = true;
        std::vector<std::pair<unsigned, size_t>> free_pos;
        for (unsigned i = 0; i < m; ++i)
            for (size_t j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);
        std::vector<uint8_t> vals(free_pos.size(), 0);
        while (true) {
            Subspace s;
            s.dim = r;
            s.basis = Mat(m, n);
            for (unsigned i = 0; i < m; ++i) s.basis.at(i, piv[i]) = 1;
            for (size_t t = 0; t < free_pos.size(); ++t) s.basis.at(free_pos[t].first, free_pos[t].second) = vals[t];
            s.rr.rank = m;
            s.rr.pivots.assign(piv.begin(), piv.end());

            // Points of the subspace: combinations with leading coefficient 1
            // are exactly its canonical points (the basis is in RREF).
            const size_t base_word = subs->size() * words_;
            inc->resize(base_word + words_, 0);
            std::fill(coeff.begin(), coeff.end(), 0);
            for (unsigned lead = 0; lead < m; ++lead) {
                std::fill(coeff.begin(), coeff.end(), 0);
                coeff[lead] = 1;
                while (true) {
                    Vec v(n, 0);
                    for (unsigned i = lead; i < m; ++i) {
                        if (coeff[i] == 0) continue;
                        for (size_t j = piv[i]; j < n; ++j)
                            v[j] = f_.add(v[j], f_.mul(coeff[i], s.basis.at(i, j)));
                    }
                    const auto it = point_lookup_.find(pack(v));
                    assert(it != point_lookup_.end());
                    (*inc)[base_word + it->second / 64] |= uint64_t{1} << (it->second % 64);
                    int i = static_cast<int>(m) - 1;
                    while (i > static_cast<int>(lead) && coeff[static_cast<size_t>(i)] == q_ - 1)
                        coeff[static_cast<size_t>(i--)] = 0;
                    if (i == static_cast<int>(lead)) break;
                    ++coeff[static_cast<size_t>(i)];
                }
            }
            subs->push_back(std::move(s));

            int t = static_cast<int>(vals.size()) - 1;
            while (t >= 0 && vals[static_cast<size_t>(t)] == q_ - 1) vals[static_cast<size_t>(t--)] = 0;
            if (t < 0) break;
            ++vals[static_cast<size_t>(t)];
        }
        // next pivot combination in lexicographic order
        int i = static_cast<int>(m) - 1;
        while (i >= 0 && piv[static_cast<size_t>(i)] == n - m + static_cast<size_t>(i)) --i;
        if (i < 0) break;
        ++piv[static_cast<size_t>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
    }
    assert(subs->size() == count);
    subs_[r] = std::move(subs);
    inc_[r] = std::move(inc);
}

const std::vector<Subspace>& ProjectiveSpace::subspaces(unsigned r) const {
    if (r > K_) throw std::invalid_argument("subspace dimension exceeds the space");
    std::lock_guard<std::mutex> lock(mu_);
    build_dim(r);
    return *subs_[r];
}

const std::vector<uint64_t>& ProjectiveSpace::incidence(unsigned r) const {
    if (r > K_) throw std::invalid_argument("subspace dimension exceeds the space");
    std::lock_guard<std::mutex> lock(mu_);
    build_dim(r);
    return *inc_[r];
}

const uint64_t* ProjectiveSpace::incidence_row(unsigned r, size_t s) const {
    return incidence(r).data() + s * words_;
}

bool ProjectiveSpace::contains(const Subspace& s, size_t point) const {
    return contains(s, points_[point]);
}

bool ProjectiveSpace::contains(const Subspace& s, const Vec& v) const {
    return in_span(s.basis, s.rr, v, f_);
}

size_t ProjectiveSpace::project_point(const Subspace& delta, size_t p, const Subspace& pi) const {
    if (delta.dim + pi.dim + 1 != K_)
        throw std::invalid_argument("projection requires dim(center) + dim(screen) = K - 1");
    if (intersect_row_spaces(delta.basis, pi.basis, f_).rows != 0)
        throw std::invalid_argument("projection center meets the screen");
    if (contains(delta, p)) throw std::invalid_argument("projection center contains the point");
    Mat ext = vstack(delta.basis, mat_from_rows({points_[p]}, K_ + 1));
    const Mat meet = intersect_row_spaces(ext, pi.basis, f_);
    if (meet.rows != 1) throw std::logic_error("projection image is not a single point");
    return point_index(meet.row(0));
}

Vec ProjectiveSpace::local_coordinates(const Subspace& pi, size_t point) const {
    Vec local(pi.rr.rank);
    const Vec& v = points_[point];
    for (size_t i = 0; i < pi.rr.rank; ++i) local[i] = v[pi.rr.pivots[i]];
    return local;
}

std::shared_ptr<const ProjectiveSpace> get_space(unsigned q, unsigned K) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const ProjectiveSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{q, K}];
    if (!slot) slot = std::make_shared<ProjectiveSpace>(q, K);
    return slot;
}

}  // namespace pgarc
