#include "pgarc/code.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pgarc {

LinearCode make_code(unsigned q, Mat gen) {
    if (gen.rows == 0 || gen.cols == 0) throw std::invalid_argument("generator matrix is empty");
    Field f(q);
    for (uint8_t x : gen.a)
        if (x >= q) throw std::invalid_argument("generator entry out of range");
    return LinearCode{f, std::move(gen)};
}

LinearCode read_matrix(std::istream& in) {
    std::string line;
    unsigned q = 0;
    size_t k = 0, n = 0;
    bool have_header = false;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        line.erase(0, start);
        if (line.empty()) continue;
        if (!have_header) {
            std::istringstream hs(line);
            if (!(hs >> q >> k >> n)) throw std::invalid_argument("matrix file needs a 'q k n' header");
            have_header = true;
            continue;
        }
        rows.push_back(line);
    }
    if (!have_header) throw std::invalid_argument("matrix file needs a 'q k n' header");
    if (rows.size() != k)
        throw std::invalid_argument("matrix file has " + std::to_string(rows.size()) + " rows, expected " +
                                    std::to_string(k));
    Mat gen(k, n);
    for (size_t i = 0; i < k; ++i) {
        if (rows[i].size() != n)
            throw std::invalid_argument("matrix row " + std::to_string(i + 1) + " has " +
                                        std::to_string(rows[i].size()) + " symbols, expected " + std::to_string(n));
        for (size_t j = 0; j < n; ++j) {
            const char c = rows[i][j];
            if (c < '0' || c >= static_cast<char>('0' + q))
                throw std::invalid_argument("matrix symbol '" + std::string(1, c) + "' out of range for q=" +
                                            std::to_string(q));
            gen.at(i, j) = static_cast<uint8_t>(c - '0');
        }
    }
    return make_code(q, std::move(gen));
}

void write_matrix(std::ostream& out, const LinearCode& c) {
    out << c.q() << ' ' << c.k() << ' ' << c.n() << '\n';
    for (size_t i = 0; i < c.k(); ++i) {
        for (size_t j = 0; j < c.n(); ++j) out << static_cast<char>('0' + c.gen.at(i, j));
        out << '\n';
    }
}

LinearCode load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return read_matrix(in);
}

bool is_full_length(const LinearCode& c) {
    for (size_t j = 0; j < c.n(); ++j) {
        bool nonzero = false;
        for (size_t i = 0; i < c.k(); ++i) nonzero |= c.gen.at(i, j) != 0;
        if (!nonzero) return false;
    }
    return rank_of(c.gen, c.f) == c.k();
}

Multiset matrix_to_multiset(const LinearCode& c) {
    for (size_t j = 0; j < c.n(); ++j) {
        bool nonzero = false;
        for (size_t i = 0; i < c.k(); ++i) nonzero |= c.gen.at(i, j) != 0;
        if (!nonzero) throw std::invalid_argument("column " + std::to_string(j + 1) + " is zero");
    }
    if (rank_of(c.gen, c.f) != c.k()) throw std::invalid_argument("generator matrix rank is below k");
    Multiset m(get_space(c.q(), static_cast<unsigned>(c.k()) - 1));
    for (size_t j = 0; j < c.n(); ++j) {
        Vec col(c.k());
        for (size_t i = 0; i < c.k(); ++i) col[i] = c.gen.at(i, j);
        m.add(m.space().point_index(col));
    }
    return m;
}

LinearCode multiset_to_matrix(const Multiset& m) {
    if (!m.spans()) throw std::invalid_argument("multiset does not span the space");
    const ProjectiveSpace& sp = m.space();
    const size_t k = sp.K() + 1;
    Mat gen(k, m.size());
    size_t col = 0;
    for (size_t p = 0; p < sp.num_points(); ++p)
        for (uint16_t t = 0; t < m.mult(p); ++t) {
            for (size_t i = 0; i < k; ++i) gen.at(i, col) = sp.points()[p][i];
            ++col;
        }
    return make_code(sp.q(), std::move(gen));
}

std::vector<uint64_t> weight_hierarchy_geometric(const LinearCode& c) {
    if (c.k() == 1) {
        // the column multiset lives in the single point of PG(0, q); with no
        // proper subspaces the formula collapses to d_1 = n
        for (size_t j = 0; j < c.n(); ++j)
            if (c.gen.at(0, j) == 0)
                throw std::invalid_argument("column " + std::to_string(j + 1) + " is zero");
        return {c.n()};
    }
    const Multiset m = matrix_to_multiset(c);
    const ArcProfile pr = arc_profile(m);
    const size_t k = c.k();
    std::vector<uint64_t> d(k);
    for (size_t r = 1; r <= k; ++r) d[r - 1] = c.n() - (r == k ? 0 : pr.w[k - r - 1]);
    return d;
}

std::vector<uint64_t> weight_hierarchy_direct(const LinearCode& c) {
    const size_t k = c.k(), n = c.n();
    const Field& f = c.f;
    const unsigned q = c.q();
    std::vector<uint64_t> d(k, 0);
    // For each r, scan the r-dimensional subcodes exactly once via the RREF
    // coefficient bases: choose pivot columns in {0..k-1}, fill the free
    // entries as a base-q odometer, and count the support of coeff * gen.
    for (size_t r = 1; r <= k; ++r) {
        uint64_t best = std::numeric_limits<uint64_t>::max();
        std::vector<size_t> piv(r);
        for (size_t i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            std::vector<bool> is_piv(k, false);
            for (size_t p : piv) is_piv[p] = true;
            std::vector<std::pair<size_t, size_t>> free_pos;
            for (size_t i = 0; i < r; ++i)
                for (size_t j = piv[i] + 1; j < k; ++j)
                    if (!is_piv[j]) free_pos.emplace_back(i, j);
            std::vector<uint8_t> vals(free_pos.size(), 0);
            while (true) {
                Mat coeff(r, k);
                for (size_t i = 0; i < r; ++i) coeff.at(i, piv[i]) = 1;
                for (size_t t = 0; t < free_pos.size(); ++t) coeff.at(free_pos[t].first, free_pos[t].second) = vals[t];
                uint64_t support = 0;
                for (size_t j = 0; j < n; ++j) {
                    bool nonzero = false;
                    for (size_t i = 0; i < r && !nonzero; ++i) {
                        uint8_t s = 0;
                        for (size_t t = 0; t < k; ++t) s = f.add(s, f.mul(coeff.at(i, t), c.gen.at(t, j)));
                        nonzero = s != 0;
                    }
                    support += nonzero;
                }
                best = std::min(best, support);
                int t = static_cast<int>(vals.size()) - 1;
                while (t >= 0 && vals[static_cast<size_t>(t)] == q - 1) vals[static_cast<size_t>(t--)] = 0;
                if (t < 0) break;
                ++vals[static_cast<size_t>(t)];
            }
            int i = static_cast<int>(r) - 1;
            while (i >= 0 && piv[static_cast<size_t>(i)] == k - r + static_cast<size_t>(i)) --i;
            if (i < 0) break;
            ++piv[static_cast<size_t>(i)];
            for (size_t j = static_cast<size_t>(i) + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
        d[r - 1] = best;
    }
    return d;
}

}  // namespace pgarc
