#pragma once

#include "pgarc/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace pgarc {

// A multiset of points of PG(K, q), stored as one multiplicity per canonical
// point. The multiplicity buffer is padded to a whole number of 64-point
// words so the masked-sum kernels may read full blocks.
class Multiset {
public:
    explicit Multiset(std::shared_ptr<const ProjectiveSpace> sp);

    const ProjectiveSpace& space() const noexcept { return *sp_; }
    const std::shared_ptr<const ProjectiveSpace>& space_ptr() const noexcept { return sp_; }

    uint64_t size() const noexcept { return n_; }  // total multiplicity
    uint16_t mult(size_t p) const { return mults_[p]; }
    void set_mult(size_t p, uint16_t m);
    void add(size_t p, uint16_t count = 1);
    const uint16_t* data() const noexcept { return mults_.data(); }

    uint16_t max_point_mult() const;
    bool spans() const;  // support spans the whole space

    // Multiplicity of a subspace: sum of multiplicities of its points.
    // The (r, index) form uses the cached incidence bitsets and the runtime
    // masked-sum kernel; the Subspace form tests membership directly.
    uint64_t subspace_multiplicity(unsigned r, size_t index) const;
    uint64_t subspace_multiplicity(const Subspace& s) const;

    bool operator==(const Multiset& o) const {
        return sp_->q() == o.sp_->q() && sp_->K() == o.sp_->K() && mults_ == o.mults_;
    }

private:
    std::shared_ptr<const ProjectiveSpace> sp_;
    std::vector<uint16_t> mults_;  // padded to 64 * words_per_set entries
    uint64_t n_ = 0;
};

// w[r] / u[r] = max / min multiplicity over the r-subspaces, r = 0..K.
// w[K] = u[K] = total size.
struct ArcProfile {
    std::vector<uint64_t> w, u;
};

ArcProfile arc_profile(const Multiset& m);
uint64_t max_subspace_multiplicity(const Multiset& m, unsigned r);

// s-complement: point p gets multiplicity s - m(p). Requires s >= max mult.
Multiset complement(const Multiset& m, uint16_t s);

// Pointwise sum of two multisets in the same space.
Multiset msum(const Multiset& a, const Multiset& b);

// Multiset induced on the screen pi (as a fresh PG(dim pi, q)) by projecting
// from the center delta: every point outside delta maps to the point where
// <delta, p> meets pi; the mass inside delta is discarded. Requires
// dim delta + dim pi = K - 1, delta disjoint from pi, and dim pi >= 1.
Multiset induced_projection(const Multiset& m, const Subspace& delta, const Subspace& pi);

// Every point of the space taken sigma times.
Multiset uniform_multiset(std::shared_ptr<const ProjectiveSpace> sp, uint16_t sigma);

// Projective base (frame): the K+2 points in general position, i.e. the K+1
// unit-vector points plus the all-ones point, each once.
Multiset projective_frame(std::shared_ptr<const ProjectiveSpace> sp);

// Elliptic quadric of PG(3, q): x0*x1 + f(x2, x3) = 0 for the first (by
// coefficient order) irreducible binary quadratic f. q^2 + 1 points, no three
// collinear.
Multiset ovoid(std::shared_ptr<const ProjectiveSpace> sp);

// Recipe "sigma[K] - sum_i [d_i] + c[0]": start from sigma copies of the
// space, remove one copy of a subspace of projective dimension d_i for each
// listed term, then add c generic points. Text forms accepted:
// "2[6]-[4]-[3]+1[0]", "[5]-2[2]", with an optional multiplier before each
// bracket. The first term must be the whole space.
struct SSRecipe {
    uint16_t sigma = 1;
    std::vector<unsigned> removed_dims;  // one entry per removed subspace
    unsigned added_points = 0;
};

SSRecipe parse_ss(const std::string& text, unsigned K);
std::string format_ss(const SSRecipe& r, unsigned K);

// Placement of the removed subspaces. Chain nests them (tail coordinate
// subspaces); Spread places them greedily as mutually disjoint as possible:
// candidates of each dimension are scanned in enumeration order, minimizing
// first the largest intersection dimension with the subspaces already
// placed, then the largest point coverage, then the index.
enum class Placement { Chain, Spread };

// Builds the recipe. Throws std::runtime_error, naming the first
// over-covered point, when the placement would drive a multiplicity below
// zero. generic_r must be supplied when the recipe adds points: each added
// point greedily minimizes the resulting maximum r-subspace multiplicity.
Multiset build_ss(std::shared_ptr<const ProjectiveSpace> sp, const SSRecipe& recipe,
                  Placement placement, std::optional<unsigned> generic_r = std::nullopt);

// Adds `count` points one at a time, each minimizing the resulting maximum
// multiplicity over the r-subspaces (ties: smallest point index).
Multiset add_generic_points(Multiset m, unsigned r, unsigned count);

// Text format: header "q K n", one "c_0 ... c_K mult" row per point of
// nonzero multiplicity, in point order. '#' starts a comment line.
Multiset read_arc(std::istream& in);
void write_arc(std::ostream& out, const Multiset& m);
Multiset load_arc(const std::string& path);
void save_arc(const std::string& path, const Multiset& m);

}  // namespace pgarc
