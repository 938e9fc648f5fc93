#pragma once

#include "pgarc/gf.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace pgarc {

// v_r = (q^r - 1)/(q - 1): number of points of PG(r-1, q).
uint64_t gaussian_v(unsigned q, unsigned r);

// Gaussian binomial [n k]_q: number of k-dimensional subspaces of F_q^n.
uint64_t gaussian_binomial(unsigned q, unsigned n, unsigned k);

// A projective subspace, stored as an RREF basis of its vector representative.
struct Subspace {
    Mat basis;          // (dim+1) x (K+1), reduced row echelon form
    unsigned dim = 0;   // projective dimension
    RrefResult rr;      // rank/pivots of basis

    std::string key() const;  // canonical key: flattened basis digits
};

Subspace make_subspace(Mat basis, const Field& f);

// PG(K, q) with canonical point list, subspace enumeration and cached
// incidence bitsets. Enumeration order is fixed: points in lexicographic
// order of their canonical (leftmost-nonzero = 1) coordinate vectors;
// subspaces by pivot-column set, then free entries as a base-q odometer.
class ProjectiveSpace {
public:
    ProjectiveSpace(unsigned q, unsigned K);

    unsigned q() const noexcept { return q_; }
    unsigned K() const noexcept { return K_; }
    const Field& field() const noexcept { return f_; }
    size_t num_points() const noexcept { return points_.size(); }
    const std::vector<Vec>& points() const noexcept { return points_; }

    // Index of a point given by any nonzero representative vector.
    size_t point_index(Vec v) const;

    // All subspaces of projective dimension r (0 <= r <= K), built lazily and
    // cached. Throws std::length_error when the count exceeds max_subspaces().
    const std::vector<Subspace>& subspaces(unsigned r) const;
    uint64_t subspace_count(unsigned r) const;  // [K+1, r+1]_q

    // Incidence bitsets for dimension r: words_per_set() words per subspace,
    // bit p of set s <=> point p lies in subspaces(r)[s]. Built with
    // subspaces(r); safe for concurrent readers once built.
    const std::vector<uint64_t>& incidence(unsigned r) const;
    size_t words_per_set() const noexcept { return words_; }
    const uint64_t* incidence_row(unsigned r, size_t s) const;

    // Number of r-subspaces through any fixed point: [K, r]_q.
    uint64_t subspaces_through_point(unsigned r) const;

    // Membership test straight from the basis (no cached bitsets).
    bool contains(const Subspace& s, size_t point) const;
    bool contains(const Subspace& s, const Vec& v) const;

    // Image of point p (not in delta) under the projection with center delta
    // onto screen pi: the point <delta, p> intersect pi. Requires
    // dim delta + dim pi = K - 1 and delta disjoint from pi.
    size_t project_point(const Subspace& delta, size_t p, const Subspace& pi) const;

    // Local coordinates of a point of pi with respect to pi's RREF basis
    // (its values at the pivot columns), as a point of PG(dim pi, q).
    Vec local_coordinates(const Subspace& pi, size_t point) const;

    uint64_t max_subspaces() const noexcept { return max_subspaces_; }
    void set_max_subspaces(uint64_t cap) noexcept { max_subspaces_ = cap; }

private:
    void build_dim(unsigned r) const;

    unsigned q_, K_;
    Field f_;
    std::vector<Vec> points_;
    std::unordered_map<uint64_t, size_t> point_lookup_;  // packed coords -> index
    size_t words_;
    uint64_t max_subspaces_ = 10'000'000;

    mutable std::mutex mu_;
    mutable std::vector<std::unique_ptr<std::vector<Subspace>>> subs_;
    mutable std::vector<std::unique_ptr<std::vector<uint64_t>>> inc_;

    uint64_t pack(const Vec& v) const;
};

std::shared_ptr<const ProjectiveSpace> get_space(unsigned q, unsigned K);

}  // namespace pgarc
