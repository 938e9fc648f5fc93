#pragma once

#include "pgarc/multiset.hpp"

#include <iosfwd>
#include <string>

namespace pgarc {

// An [n, k] linear code over a prime field, held as a k x n generator matrix.
struct LinearCode {
    Field f;
    Mat gen;

    unsigned q() const noexcept { return f.q(); }
    size_t k() const noexcept { return gen.rows; }
    size_t n() const noexcept { return gen.cols; }
};

LinearCode make_code(unsigned q, Mat gen);

// Matrix file format: a "q k n" header line, then k lines of exactly n digits
// (one symbol per coordinate, no separators). '#' starts a comment line.
LinearCode read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const LinearCode& c);
LinearCode load_matrix(const std::string& path);

// True when the generator matrix has rank k and no zero column, i.e. the code
// really uses all n coordinates.
bool is_full_length(const LinearCode& c);

// Columns of the generator matrix read as points of PG(k-1, q), with
// multiplicities. Throws on a zero column or rank below k.
Multiset matrix_to_multiset(const LinearCode& c);

// A generator matrix with the given column multiset: each point contributes
// mult(p) equal columns, in point order. Requires the multiset to span.
LinearCode multiset_to_matrix(const Multiset& m);

// Weight hierarchy d_1 < ... < d_k: d_r = size of the smallest support of an
// r-dimensional subcode. Two independent routes:
//   geometric: d_r = n - w_{k-r-1} over the column multiset;
//   direct: enumerate the RREF coefficient bases of all r-dimensional
//   subcodes and take the minimum support, with no geometry involved.
std::vector<uint64_t> weight_hierarchy_geometric(const LinearCode& c);
std::vector<uint64_t> weight_hierarchy_direct(const LinearCode& c);

}  // namespace pgarc
