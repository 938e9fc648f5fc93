#include "pgarc/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgarc {

Field::Field(unsigned q) : q_(q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    for (unsigned p = 2; p * p <= q; ++p)
        if (q % p == 0) throw std::invalid_argument("field order must be prime, got " + std::to_string(q));
    inv_.assign(q, 0);
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if ((a * b) % q == 1) { inv_[a] = static_cast<uint8_t>(b); break; }
}

uint8_t Field::inv(uint8_t a) const {
    if (a == 0 || a >= q_) throw std::domain_error("no inverse for element " + std::to_string(a));
    return inv_[a];
}

Mat vstack(const Mat& top, const Mat& bottom) {
    if (top.cols != bottom.cols && top.rows != 0 && bottom.rows != 0)
        throw std::invalid_argument("vstack: column count mismatch");
    Mat out(top.rows + bottom.rows, top.rows ? top.cols : bottom.cols);
    std::copy(top.a.begin(), top.a.end(), out.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(), out.a.begin() + static_cast<long>(top.a.size()));
    return out;
}

Mat mat_from_rows(const std::vector<Vec>& rows, size_t cols) {
    Mat out(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("mat_from_rows: row length mismatch");
        out.set_row(i, rows[i]);
    }
    return out;
}

RrefResult rref(Mat& m, const Field& f) {
    RrefResult res;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        const uint8_t s = f.inv(m.at(row, col));
        if (s != 1)
            for (size_t j = col; j < m.cols; ++j) m.at(row, j) = f.mul(m.at(row, j), s);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            const uint8_t c = m.at(i, col);
            if (c == 0) continue;
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

size_t rank_of(Mat m, const Field& f) { return rref(m, f).rank; }

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; });
}

void normalize_projective(Vec& v, const Field& f) {
    for (auto& x : v) {
        if (x != 0) {
            const uint8_t s = f.inv(x);
            if (s != 1)
                for (auto& y : v) y = f.mul(y, s);
            return;
        }
    }
    throw std::invalid_argument("cannot normalize the zero vector");
}

bool in_span(const Mat& rref_mat, const RrefResult& r, Vec v, const Field& f) {
    if (v.size() != rref_mat.cols) throw std::invalid_argument("in_span: length mismatch");
    for (size_t i = 0; i < r.rank; ++i) {
        const uint8_t c = v[r.pivots[i]];
        if (c == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, rref_mat.at(i, j)));
    }
    return is_zero_vec(v);
}

Mat intersect_row_spaces(const Mat& a, const Mat& b, const Field& f) {
    if (a.cols != b.cols) throw std::invalid_argument("intersect_row_spaces: column count mismatch");
    const size_t n = a.cols;
    Mat z(a.rows + b.rows, 2 * n);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < n; ++j) {
            z.at(i, j) = a.at(i, j);
            z.at(i, n + j) = a.at(i, j);
        }
    for (size_t i = 0; i < b.rows; ++i)
        for (size_t j = 0; j < n; ++j) z.at(a.rows + i, j) = b.at(i, j);
    rref(z, f);
    std::vector<Vec> rows;
    for (size_t i = 0; i < z.rows; ++i) {
        bool left_zero = true, right_zero = true;
        for (size_t j = 0; j < n; ++j) {
            if (z.at(i, j) != 0) left_zero = false;
            if (z.at(i, n + j) != 0) right_zero = false;
        }
        if (left_zero && !right_zero) {
            Vec r(n);
            for (size_t j = 0; j < n; ++j) r[j] = z.at(i, n + j);
            rows.push_back(std::move(r));
        }
    }
    Mat out = mat_from_rows(rows, n);
    rref(out, f);
    return out;
}

Mat null_space(const Mat& m, const Field& f) {
    Mat r = m;
    const RrefResult rr = rref(r, f);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t freec = 0; freec < m.cols; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v(m.cols, 0);
        v[freec] = 1;
        for (size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = f.neg(r.at(i, freec));
        basis.push_back(std::move(v));
    }
    Mat out = mat_from_rows(basis, m.cols);
    rref(out, f);
    return out;
}

}  // namespace pgarc
