#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgarc/code.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace pgarc;

namespace {

// Random generator matrix of full rank with no zero column (retries until hit).
LinearCode random_full_length_code(std::mt19937& rng, unsigned q, size_t k, size_t n) {
    std::uniform_int_distribution<unsigned> dist(0, q - 1);
    for (;;) {
        Mat g(k, n);
        for (auto& x : g.a) x = static_cast<uint8_t>(dist(rng));
        LinearCode c = make_code(q, g);
        if (is_full_length(c)) return c;
    }
}

LinearCode code_from_rows(unsigned q, const std::vector<Vec>& rows) {
    return make_code(q, mat_from_rows(rows, rows.at(0).size()));
}

}  // namespace

TEST_CASE("geometric and direct weight hierarchies agree on random codes") {
    std::mt19937 rng(20260815);
    int instances = 0;
    while (instances < 500) {
        const unsigned q = (instances % 2 == 0) ? 2 : 3;
        const size_t k = 1 + rng() % 5;           // up to 5
        const size_t n = k + rng() % (21 - k);    // up to 20, at least k
        LinearCode c = random_full_length_code(rng, q, k, n);
        CAPTURE(q); CAPTURE(k); CAPTURE(n);
        const auto geo = weight_hierarchy_geometric(c);
        const auto dir = weight_hierarchy_direct(c);
        REQUIRE(geo.size() == k);
        CHECK(geo == dir);
        // strictly increasing, ending at the full support
        for (size_t r = 1; r < k; ++r) CHECK(geo[r - 1] < geo[r]);
        CHECK(geo[k - 1] == n);
        CHECK(geo[0] >= 1);
        ++instances;
    }
    CHECK(instances >= 500);
}

TEST_CASE("known hierarchies of classical binary codes") {
    // simplex [7, 3]: columns are all nonzero vectors of F_2^3
    {
        Mat g(3, 7);
        size_t col = 0;
        for (unsigned v = 1; v < 8; ++v, ++col)
            for (unsigned b = 0; b < 3; ++b) g.at(b, col) = (v >> b) & 1;
        LinearCode simplex = make_code(2, g);
        CHECK(weight_hierarchy_geometric(simplex) == std::vector<uint64_t>{4, 6, 7});
        CHECK(weight_hierarchy_direct(simplex) == std::vector<uint64_t>{4, 6, 7});
    }
    // Hamming [7, 4]
    LinearCode hamming = code_from_rows(2, {{1, 0, 0, 0, 1, 1, 0},
                                            {0, 1, 0, 0, 1, 0, 1},
                                            {0, 0, 1, 0, 0, 1, 1},
                                            {0, 0, 0, 1, 1, 1, 1}});
    CHECK(weight_hierarchy_geometric(hamming) == std::vector<uint64_t>{3, 5, 6, 7});
    CHECK(weight_hierarchy_direct(hamming) == std::vector<uint64_t>{3, 5, 6, 7});
    // extended Hamming [8, 4]: overall parity appended
    LinearCode ext = code_from_rows(2, {{1, 0, 0, 0, 1, 1, 0, 1},
                                        {0, 1, 0, 0, 1, 0, 1, 1},
                                        {0, 0, 1, 0, 0, 1, 1, 1},
                                        {0, 0, 0, 1, 1, 1, 1, 0}});
    CHECK(weight_hierarchy_geometric(ext) == std::vector<uint64_t>{4, 6, 7, 8});
    CHECK(weight_hierarchy_direct(ext) == std::vector<uint64_t>{4, 6, 7, 8});
    // first-order Reed-Muller of length 16: all-ones row plus the four
    // coordinate functions on F_2^4
    {
        Mat g(5, 16);
        for (unsigned col = 0; col < 16; ++col) {
            g.at(0, col) = 1;
            for (unsigned b = 0; b < 4; ++b) g.at(1 + b, col) = (col >> b) & 1;
        }
        LinearCode rm = make_code(2, g);
        CHECK(weight_hierarchy_geometric(rm) == std::vector<uint64_t>{8, 12, 14, 15, 16});
        CHECK(weight_hierarchy_direct(rm) == std::vector<uint64_t>{8, 12, 14, 15, 16});
    }
    // a ternary MDS [4, 2, 3] code: d_r = n - k + r
    LinearCode mds = code_from_rows(3, {{1, 0, 1, 1}, {0, 1, 1, 2}});
    CHECK(weight_hierarchy_geometric(mds) == std::vector<uint64_t>{3, 4});
    CHECK(weight_hierarchy_direct(mds) == std::vector<uint64_t>{3, 4});
}

TEST_CASE("full-length detection and conversion guards") {
    // a zero column disqualifies
    LinearCode zc = code_from_rows(2, {{1, 0, 0}, {0, 0, 1}});
    CHECK(!is_full_length(zc));
    CHECK_THROWS_AS(matrix_to_multiset(zc), std::invalid_argument);
    // a rank deficit disqualifies
    LinearCode rd = code_from_rows(2, {{1, 0, 1}, {1, 0, 1}});
    CHECK(!is_full_length(rd));
    CHECK_THROWS_AS(matrix_to_multiset(rd), std::invalid_argument);
    // and the good case
    LinearCode ok = code_from_rows(2, {{1, 0, 1}, {0, 1, 1}});
    CHECK(is_full_length(ok));
    CHECK(make_code(2, ok.gen).q() == 2);
    CHECK_THROWS_AS(make_code(2, Mat()), std::invalid_argument);
    CHECK_THROWS_AS(make_code(2, mat_from_rows({{0, 2, 0}}, 3)), std::invalid_argument);
}

TEST_CASE("matrix <-> multiset round trip is exact both ways") {
    std::mt19937 rng(606);
    int instances = 0;
    for (unsigned q : {2u, 3u}) {
        for (int trial = 0; trial < 110; ++trial) {
            const size_t k = 2 + rng() % 3;
            const size_t n = k + rng() % 10;
            LinearCode c = random_full_length_code(rng, q, k, n);
            Multiset m = matrix_to_multiset(c);
            CHECK(m.size() == n);
            CHECK(m.spans());
            LinearCode back = multiset_to_matrix(m);
            // the rebuilt matrix sorts columns by point order; its multiset
            // is identical, and its size/shape survive
            CHECK(back.k() == k);
            CHECK(back.n() == n);
            CHECK(matrix_to_multiset(back) == m);
            ++instances;
        }
    }
    CHECK(instances >= 200);
    // a non-spanning multiset cannot produce a generator matrix
    auto sp = get_space(2, 2);
    Multiset flat(sp);
    flat.set_mult(0, 2);
    CHECK_THROWS_AS(multiset_to_matrix(flat), std::invalid_argument);
}

TEST_CASE("matrix text format round trips and rejects malformed input") {
    LinearCode c = code_from_rows(3, {{1, 0, 2, 1}, {0, 1, 1, 2}});
    std::ostringstream out;
    write_matrix(out, c);
    std::istringstream in(out.str());
    LinearCode back = read_matrix(in);
    CHECK(back.gen == c.gen);
    CHECK(back.q() == 3);

    auto reject = [](const std::string& text) {
        std::istringstream is(text);
        CHECK_THROWS_AS(read_matrix(is), std::invalid_argument);
    };
    reject("");
    reject("2 2\n11\n01\n");        // short header
    reject("2 2 3\n110\n");         // missing row
    reject("2 2 3\n110\n0101\n");   // row length mismatch
    reject("2 2 3\n110\n021\n");    // symbol out of range
    std::istringstream ok("# generator\n2 2 3\n110\n011\n");
    CHECK(read_matrix(ok).n() == 3);
}
