#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgarc/bounds.hpp"
#include "pgarc/multiset.hpp"

namespace pgarc {

// One row of the shipped value tables: the largest size of a multiset of
// points in PG(K,q) whose r-subspaces all have multiplicity at most w.
// Exact rows have lo == hi; open rows carry the known interval.
struct TableEntry {
    int q = 2;
    int K = 0;
    int r = 0;
    int w = 0;
    long long lo = 0;
    long long hi = 0;
    std::string construction;  // "frame" | "ovoid" | "cited" | SS type string |
                               // "matrix:<id>", each optionally followed by "+c[0]"
    std::string bound_source;  // "griesmer" | "griesmer-inferred" | "coding" |
                               // "lemma" | "cited"

    bool exact() const { return lo == hi; }
    std::string key() const;
};

// An equality claim about a shipped generator matrix: the multiset of its
// columns in PG(k-1,q) has w_r == w.
struct MatrixClaim {
    std::string id;  // file stem under matrices/
    int q = 2;
    int k = 0;
    int n = 0;
    int r = 0;
    int w = 0;
};

std::vector<TableEntry> parse_tables(const std::string& text);
std::vector<TableEntry> load_tables(const std::string& path);
std::string format_tables(const std::vector<TableEntry>& entries);

std::vector<MatrixClaim> parse_claims(const std::string& text);
std::vector<MatrixClaim> load_claims(const std::string& path);

// A documented defect in the shipped data: any hard verification failure
// whose key contains `scope` is downgraded to an informational note carrying
// `explanation`. A scope that downgrades nothing is itself reported as a
// failure, so stale explanations cannot linger.
struct KnownDiscrepancy {
    std::string scope;
    std::string explanation;
};

std::vector<KnownDiscrepancy> parse_discrepancies(const std::string& text);

// Locations of the shipped dataset (tables.tsv, matrix_claims.tsv, oracle.txt,
// known_discrepancies.tsv, matrices/<id>.mat). resolve_data_dir picks, in
// order: the explicit argument, the PGARC_DATA environment variable, the
// compiled-in default.
std::string resolve_data_dir(const std::string& override_dir = "");

struct Dataset {
    std::string dir;
    std::vector<TableEntry> entries;
    std::vector<MatrixClaim> claims;
    Oracle oracle;
    std::vector<KnownDiscrepancy> discrepancies;
};

Dataset load_dataset(const std::string& data_dir);

// Rebuilds the multiset a table entry's construction tag describes.
// Returns nullopt for "cited" (nothing shippable to rebuild).
std::optional<Multiset> build_construction(const TableEntry& e, const Dataset& ds);

struct VerifyItem {
    std::string key;
    bool ok = true;
    bool hard = false;        // a failed hard item is a verification failure;
                              // failed soft items are informational notes
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyItem> items;
    int failures = 0;  // failed hard items
    int notes = 0;     // failed soft items

    void add(VerifyItem item);
};

// Rebuilds the entry's construction and checks size and the w_r cap; evaluates
// the claimed bound source (griesmer exactly; coding in both dimension
// conventions; lemma/cited get a Griesmer sanity check). Mismatches become
// report items, never exceptions.
void verify_entry(const TableEntry& e, const Dataset& ds, VerifyReport& report);

// Loads the matrix, converts it to a multiset, and checks every claim made
// about it. A failing claim names a violating subspace by its basis rows.
void verify_matrix_claims(const std::string& id, const Dataset& ds, VerifyReport& report);

// Runs every entry and every matrix claim; `only` filters by substring of the
// item key (empty = everything). Entries verify in parallel across `threads`;
// the merged report is ordered deterministically.
VerifyReport run_verification(const Dataset& ds, const std::string& only = "",
                              int threads = 1);

// Regenerates the table slice for (q,K,r) as TSV; byte-identical to the
// corresponding rows of the shipped tables file.
std::string emit_table(const Dataset& ds, int q, int K, int r);

}  // namespace pgarc
