#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgarc/search.hpp"

#include <stdexcept>

using namespace pgarc;

namespace {

SearchProblem problem(unsigned q, unsigned K, unsigned r, uint64_t w) {
    SearchProblem p;
    p.space = get_space(q, K);
    p.r = r;
    p.w = w;
    return p;
}

}  // namespace

TEST_CASE("optimal arc sizes in the plane and PG(3, 2)") {
    // lines of PG(2, 2) capped at 2: the hyperoval has 4 points
    SearchResult hyperoval = max_arc_size(problem(2, 2, 1, 2));
    CHECK(hyperoval.best_n == 4);
    CHECK(hyperoval.status == SearchStatus::Optimal);
    REQUIRE(hyperoval.witness.has_value());
    CHECK(verify_witness(*hyperoval.witness, 1, 2));
    CHECK(hyperoval.witness->size() == 4);

    // lines of PG(2, 3) capped at 2: the conic plus nucleus reaches 4
    CHECK(max_arc_size(problem(3, 2, 1, 2)).best_n == 4);

    // planes of PG(3, 2) capped at 3
    SearchResult pg32 = max_arc_size(problem(2, 3, 2, 3));
    CHECK(pg32.best_n == 5);
    CHECK(verify_witness(*pg32.witness, 2, 3));
}

TEST_CASE("line-capped multisets of PG(2, 2) for growing caps") {
    // the full plane appears once every line cap reaches its v_2 = 3 points
    CHECK(max_arc_size(problem(2, 2, 1, 3)).best_n == 7);
    // a doubled cap is met by the doubled hyperoval and nothing larger
    CHECK(max_arc_size(problem(2, 2, 1, 4)).best_n == 8);
    CHECK(max_arc_size(problem(2, 2, 1, 6)).best_n == 14);
}

TEST_CASE("ovoid-level answers match the exact maxima") {
    CHECK(max_arc_size(problem(2, 3, 1, 2)).best_n == 8);
    SearchResult t = max_arc_size(problem(3, 3, 1, 2));
    CHECK(t.best_n == 10);
    CHECK(t.status == SearchStatus::Optimal);
    CHECK(verify_witness(*t.witness, 1, 2));
}

TEST_CASE("witness verification is an independent check that can say no") {
    SearchResult r = max_arc_size(problem(2, 3, 1, 2));
    REQUIRE(r.witness.has_value());
    Multiset good = *r.witness;
    CHECK(verify_witness(good, 1, 2));
    // corrupt the witness: push one occupied point over any line cap
    Multiset bad = good;
    for (size_t p = 0; p < bad.space().num_points(); ++p)
        if (bad.mult(p)) {
            bad.set_mult(p, static_cast<uint16_t>(bad.mult(p) + 2));
            break;
        }
    CHECK(!verify_witness(bad, 1, 2));
    // the whole-space dimension only caps the total size
    CHECK(verify_witness(good, 3, good.size()));
    CHECK(!verify_witness(good, 3, good.size() - 1));
    CHECK_THROWS_AS(verify_witness(good, 4, 2), std::invalid_argument);
}

TEST_CASE("node and time limits give a feasible-only result") {
    SearchProblem p = problem(2, 4, 2, 3);
    p.node_limit = 500;
    SearchResult limited = max_arc_size(p);
    CHECK(limited.status == SearchStatus::FeasibleOnly);
    CHECK(limited.nodes <= 500 + 2048);  // flushed in blocks
    if (limited.witness) CHECK(verify_witness(*limited.witness, 2, 3));

    SearchProblem t = problem(2, 4, 2, 3);
    t.time_limit_s = 1e-9;
    CHECK(max_arc_size(t).status == SearchStatus::FeasibleOnly);
}

TEST_CASE("a warm start must satisfy the caps and speeds the proof") {
    SearchProblem p = problem(2, 2, 1, 2);
    SearchResult base = max_arc_size(p);
    p.warm_start = *base.witness;
    SearchResult warmed = max_arc_size(p);
    CHECK(warmed.best_n == base.best_n);
    CHECK(warmed.status == SearchStatus::Optimal);

    Multiset too_fat = *base.witness;
    too_fat.set_mult(0, 3);
    p.warm_start = too_fat;
    CHECK_THROWS_AS(max_arc_size(p), std::invalid_argument);

    // a warm start from a different space is rejected
    SearchProblem other = problem(2, 3, 1, 2);
    other.warm_start = *base.witness;
    CHECK_THROWS_AS(max_arc_size(other), std::invalid_argument);
}

TEST_CASE("prescriptions pin points and mark the result as conditional") {
    SearchProblem p = problem(2, 2, 1, 2);
    p = prescribe_unit_frame(p);
    CHECK(p.prescribed.size() == 3);
    SearchResult r = max_arc_size(p);
    CHECK(r.prescription_used);
    CHECK(r.best_n == 4);  // the frame of the plane extends to the hyperoval
    for (const auto& [pt, m] : p.prescribed) CHECK(r.witness->mult(pt) == m);

    // prescribing the frame under a cap of 1 per line is contradictory:
    // two unit points always share a line
    CHECK_THROWS_AS(prescribe_unit_frame(problem(2, 2, 1, 1)), std::invalid_argument);

    // conflicting explicit prescriptions are rejected
    SearchProblem c = problem(2, 2, 1, 2);
    c.prescribed = {{0, 1}, {0, 2}};
    CHECK_THROWS_AS(max_arc_size(c), std::invalid_argument);
    // out-of-range points too
    c.prescribed = {{99, 1}};
    CHECK_THROWS_AS(max_arc_size(c), std::invalid_argument);
}

TEST_CASE("prescribed zero keeps a point out of the multiset") {
    SearchProblem p = problem(2, 2, 1, 2);
    p.prescribed = {{0, 0}};
    SearchResult r = max_arc_size(p);
    CHECK(r.best_n == 4);  // hyperovals avoiding a fixed point still exist
    CHECK(r.witness->mult(0) == 0);
}

TEST_CASE("point_cap restricts multiplicities even when w would not") {
    SearchProblem p = problem(2, 2, 1, 6);
    p.point_cap = 1;
    SearchResult r = max_arc_size(p);
    CHECK(r.best_n == 7);  // simple sets cannot beat the full plane
    CHECK(r.witness->max_point_mult() == 1);
}

TEST_CASE("the same problem always returns the same witness") {
    SearchProblem p = problem(2, 3, 2, 3);
    SearchResult a = max_arc_size(p);
    SearchResult b = max_arc_size(p);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(*a.witness == *b.witness);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(max_arc_size(problem(2, 3, 0, 2)), std::invalid_argument);
    CHECK_THROWS_AS(max_arc_size(problem(2, 3, 3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(max_arc_size(problem(2, 3, 1, 0)), std::invalid_argument);
    SearchProblem empty;
    empty.r = 1;
    empty.w = 2;
    CHECK_THROWS_AS(max_arc_size(empty), std::invalid_argument);
    CHECK_THROWS_AS(prescribe_unit_frame(empty), std::invalid_argument);
}

TEST_CASE("multi-threaded runs agree with single-threaded answers") {
    for (unsigned threads : {2u, 4u}) {
        SearchProblem p = problem(2, 3, 2, 3);
        p.threads = threads;
        SearchResult r = max_arc_size(p);
        CHECK(r.best_n == 5);
        CHECK(r.status == SearchStatus::Optimal);
        CHECK(verify_witness(*r.witness, 2, 3));
    }
    SearchProblem big = problem(3, 3, 1, 2);
    big.threads = 3;
    CHECK(max_arc_size(big).best_n == 10);
}
