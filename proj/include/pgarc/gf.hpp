#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pgarc {

using Vec = std::vector<uint8_t>;

// Arithmetic in a prime field F_q. Element values are 0..q-1.
class Field {
public:
    explicit Field(unsigned q);

    unsigned q() const noexcept { return q_; }
    uint8_t add(uint8_t a, uint8_t b) const noexcept { return static_cast<uint8_t>((a + b) % q_); }
    uint8_t sub(uint8_t a, uint8_t b) const noexcept { return static_cast<uint8_t>((a + q_ - b) % q_); }
    uint8_t neg(uint8_t a) const noexcept { return static_cast<uint8_t>((q_ - a) % q_); }
    uint8_t mul(uint8_t a, uint8_t b) const noexcept {
        return static_cast<uint8_t>((static_cast<unsigned>(a) * b) % q_);
    }
    uint8_t inv(uint8_t a) const;
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

private:
    unsigned q_;
    std::vector<uint8_t> inv_;
};

// Dense row-major matrix over F_q (the field travels separately).
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<uint8_t> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}

    uint8_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint8_t at(size_t i, size_t j) const { return a[i * cols + j]; }
    Vec row(size_t i) const { return Vec(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols)); }
    void set_row(size_t i, const Vec& v) { std::copy(v.begin(), v.end(), a.begin() + static_cast<long>(i * cols)); }
    bool operator==(const Mat&) const = default;
};

Mat vstack(const Mat& top, const Mat& bottom);
Mat mat_from_rows(const std::vector<Vec>& rows, size_t cols);

struct RrefResult {
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of each pivot row, ascending
};

// In-place reduced row echelon form. Deterministic: columns scanned left to
// right, first nonzero row below the current one becomes the pivot.
RrefResult rref(Mat& m, const Field& f);

size_t rank_of(Mat m, const Field& f);

// Scales v so that its leftmost nonzero entry is 1. Throws on the zero vector.
void normalize_projective(Vec& v, const Field& f);

bool is_zero_vec(const Vec& v);

// Membership of v in the row space of a matrix already in RREF.
bool in_span(const Mat& rref_mat, const RrefResult& r, Vec v, const Field& f);

// Row-space basis (in RREF) of the intersection of the row spaces of a and b
// (Zassenhaus block reduction).
Mat intersect_row_spaces(const Mat& a, const Mat& b, const Field& f);

// Basis (rows) of {x : m x = 0}.
Mat null_space(const Mat& m, const Field& f);

}  // namespace pgarc
