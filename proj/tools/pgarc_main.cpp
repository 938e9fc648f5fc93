#include <CLI11.hpp>

#include "pgarc/bounds.hpp"
#include "pgarc/code.hpp"
#include "pgarc/geometry.hpp"
#include "pgarc/kernels.hpp"
#include "pgarc/multiset.hpp"
#include "pgarc/search.hpp"
#include "pgarc/tables.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitBudget = 3;

pgarc::Oracle load_oracle(const std::string& oracle_path, const std::string& data_dir) {
    if (!oracle_path.empty()) return pgarc::Oracle::load_file(oracle_path);
    try {
        return pgarc::Oracle::load_file(pgarc::resolve_data_dir(data_dir) + "/oracle.txt");
    } catch (const std::runtime_error&) {
        return pgarc::Oracle{};  // no dataset available: internal facts only
    }
}

std::string chain_text(const pgarc::CodingBoundResult& r) {
    std::string t;
    for (size_t i = 0; i < r.chain.size(); ++i) {
        if (i) t += "->";
        t += std::to_string(r.chain[i]);
    }
    return t;
}

pgarc::Mat parse_basis_rows(const std::string& text, unsigned q, unsigned K) {
    std::vector<std::vector<uint8_t>> rows;
    std::string row;
    std::istringstream in(text);
    while (std::getline(in, row, ',')) {
        if (row.size() != K + 1) throw std::invalid_argument("basis row '" + row + "' needs " +
                                                             std::to_string(K + 1) + " digits");
        std::vector<uint8_t> v;
        for (char ch : row) {
            if (ch < '0' || ch >= static_cast<char>('0' + q))
                throw std::invalid_argument("basis row digit out of range for q=" + std::to_string(q));
            v.push_back(static_cast<uint8_t>(ch - '0'));
        }
        rows.push_back(std::move(v));
    }
    if (rows.empty()) throw std::invalid_argument("empty basis");
    return pgarc::mat_from_rows(rows, K + 1);
}

void print_profile(std::ostream& out, const pgarc::Multiset& m) {
    const pgarc::ArcProfile profile = pgarc::arc_profile(m);
    out << "size " << m.size() << "\n";
    out << "w";
    for (uint64_t v : profile.w) out << ' ' << v;
    out << "\nu";
    for (uint64_t v : profile.u) out << ' ' << v;
    out << "\nspans " << (m.spans() ? "yes" : "no") << "\n";
}

int run_bounds(unsigned q, unsigned K, unsigned r, uint64_t w, const std::string& oracle_path,
               const std::string& data_dir) {
    (void)pgarc::Field(q);  // the bound formulas accept any q; the tool is prime-field only
    const pgarc::Oracle oracle = load_oracle(oracle_path, data_dir);
    const pgarc::BoundQuery query{q, K, r, w};
    if (r < K)
        std::cout << "griesmer " << pgarc::griesmer_upper_bound_m(query) << "\n";
    std::cout << "counting " << pgarc::counting_bound_m(query) << "\n";
    const auto fixed = pgarc::coding_upper_bound_m(query, oracle, pgarc::CodingMode::FixedDim);
    if (fixed.value)
        std::cout << "coding " << *fixed.value << " chain " << chain_text(fixed) << "\n";
    else
        std::cout << "coding unknown missing " << fixed.missing << "\n";
    const auto incr = pgarc::coding_upper_bound_m(query, oracle, pgarc::CodingMode::IncrementingDim);
    if (incr.value)
        std::cout << "coding-incrementing " << *incr.value << " chain " << chain_text(incr) << "\n";
    else
        std::cout << "coding-incrementing unknown missing " << incr.missing << "\n";
    const pgarc::BestBound best = pgarc::best_upper_bound(query, oracle);
    std::cout << "best " << best.value << " " << best.source << "\n";
    return kExitOk;
}

int run_decompose(unsigned q, unsigned k, uint64_t d) {
    (void)pgarc::Field(q);
    const pgarc::SigmaEps se = pgarc::sigma_eps_decompose(q, k, d);
    std::cout << "sigma " << se.sigma << "\n";
    for (size_t i = 0; i < se.eps.size(); ++i)
        if (se.eps[i]) std::cout << "eps_" << i << " " << static_cast<int>(se.eps[i]) << "\n";
    std::cout << "g " << pgarc::griesmer_g(q, k, d) << "\n";
    std::cout << "n " << pgarc::griesmer_length_from_decomposition(q, k, d) << "\n";
    return kExitOk;
}

int run_hierarchy(const std::string& matrix_path, bool direct) {
    const pgarc::LinearCode code = pgarc::load_matrix(matrix_path);
    const std::vector<uint64_t> d =
        direct ? pgarc::weight_hierarchy_direct(code) : pgarc::weight_hierarchy_geometric(code);
    for (size_t i = 0; i < d.size(); ++i) std::cout << (i ? " " : "") << d[i];
    std::cout << "\n";
    return kExitOk;
}

int run_construct(const std::string& type, unsigned q, int K_flag, const std::string& placement,
                  int r_flag, const std::string& out_path) {
    unsigned K;
    if (type == "frame" || type == "ovoid") {
        if (K_flag < 1) throw std::invalid_argument("--K is required for type " + type);
        K = static_cast<unsigned>(K_flag);
    } else {
        const size_t open = type.find('['), close = type.find(']');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("cannot read the space dimension from type " + type);
        K = static_cast<unsigned>(std::stoul(type.substr(open + 1, close - open - 1)));
        if (K_flag >= 1 && static_cast<unsigned>(K_flag) != K)
            throw std::invalid_argument("--K disagrees with the type string");
    }
    auto sp = pgarc::get_space(q, K);

    std::optional<pgarc::Multiset> m;
    if (type == "frame") {
        m = pgarc::projective_frame(sp);
    } else if (type == "ovoid") {
        m = pgarc::ovoid(sp);
    } else {
        const pgarc::SSRecipe recipe = pgarc::parse_ss(type, K);
        std::optional<unsigned> generic_r;
        if (r_flag >= 0) generic_r = static_cast<unsigned>(r_flag);
        if (placement == "chain") {
            m = pgarc::build_ss(sp, recipe, pgarc::Placement::Chain, generic_r);
        } else if (placement == "spread") {
            m = pgarc::build_ss(sp, recipe, pgarc::Placement::Spread, generic_r);
        } else {
            try {
                m = pgarc::build_ss(sp, recipe, pgarc::Placement::Chain, generic_r);
            } catch (const std::runtime_error&) {
                m = pgarc::build_ss(sp, recipe, pgarc::Placement::Spread, generic_r);
            }
        }
    }
    print_profile(std::cout, *m);
    if (out_path.empty()) {
        std::cout << "\n";
        pgarc::write_arc(std::cout, *m);
    } else {
        pgarc::save_arc(out_path, *m);
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int run_project(const std::string& arc_path, const std::string& center, const std::string& screen,
                const std::string& out_path) {
    const pgarc::Multiset m = pgarc::load_arc(arc_path);
    const pgarc::Field& f = m.space().field();
    const pgarc::Subspace delta = pgarc::make_subspace(parse_basis_rows(center, f.q(), m.space().K()), f);
    const pgarc::Subspace pi = pgarc::make_subspace(parse_basis_rows(screen, f.q(), m.space().K()), f);
    const pgarc::Multiset proj = pgarc::induced_projection(m, delta, pi);
    print_profile(std::cout, proj);
    if (out_path.empty()) {
        std::cout << "\n";
        pgarc::write_arc(std::cout, proj);
    } else {
        pgarc::save_arc(out_path, proj);
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int run_search(unsigned q, unsigned K, unsigned r, uint64_t w, unsigned cap, uint64_t budget,
               double time_limit, unsigned threads, bool prescribe_frame, const std::string& warm_path,
               const std::string& log_path, const std::string& out_path, bool big) {
    if (K >= 7 && !big)
        throw std::invalid_argument("PG(K>=7, q) searches are expensive; pass --big to confirm");
    pgarc::SearchProblem p;
    p.space = pgarc::get_space(q, K);
    p.r = r;
    p.w = w;
    p.point_cap = static_cast<uint16_t>(cap);
    p.node_limit = budget;
    p.time_limit_s = time_limit;
    p.threads = threads;
    p.log_path = log_path;
    if (!warm_path.empty()) p.warm_start = pgarc::load_arc(warm_path);
    if (prescribe_frame) p = pgarc::prescribe_unit_frame(std::move(p));
    const pgarc::SearchResult res = pgarc::max_arc_size(p);
    std::cout << "best " << res.best_n << "\n";
    std::cout << "status " << (res.status == pgarc::SearchStatus::Optimal ? "optimal" : "feasible-only")
              << "\n";
    std::cout << "nodes " << res.nodes << "\n";
    if (res.prescription_used) std::cout << "prescribed yes\n";
    if (res.witness && !out_path.empty()) {
        pgarc::save_arc(out_path, *res.witness);
        std::cout << "wrote " << out_path << "\n";
    }
    return res.status == pgarc::SearchStatus::Optimal ? kExitOk : kExitBudget;
}

int run_verify(const std::string& data_dir, const std::string& only, int threads) {
    const pgarc::Dataset ds = pgarc::load_dataset(pgarc::resolve_data_dir(data_dir));
    const pgarc::VerifyReport report = pgarc::run_verification(ds, only, threads);
    int passed = 0;
    for (const auto& item : report.items) {
        const char* tag = item.ok ? "PASS" : (item.hard ? "FAIL" : "NOTE");
        if (item.ok) ++passed;
        std::cout << tag << " " << item.key << ": " << item.detail << "\n";
    }
    std::cout << "items " << report.items.size() << " passed " << passed << " notes " << report.notes
              << " failures " << report.failures << "\n";
    return report.failures == 0 ? kExitOk : kExitMismatch;
}

int run_tables(unsigned q, unsigned K, unsigned r, const std::string& data_dir) {
    const pgarc::Dataset ds = pgarc::load_dataset(pgarc::resolve_data_dir(data_dir));
    std::cout << pgarc::emit_table(ds, static_cast<int>(q), static_cast<int>(K), static_cast<int>(r));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiset-arc calculus in PG(K, q): bounds, constructions, and exact searches"};
    app.require_subcommand(1);

    unsigned q = 2, K = 1, r = 1, k = 1, cap = 0, threads = 1;
    uint64_t w = 1, d = 1, budget = 0;
    double time_limit = 0;
    int K_flag = -1, r_flag = -1, verify_threads = 1;
    bool direct = false, prescribe_frame = false, big = false;
    std::string oracle_path, data_dir, matrix_path, type, placement = "auto", out_path, arc_path,
        center, screen, warm_path, log_path, only;

    auto* bounds = app.add_subcommand("bounds", "Upper bounds for the largest multiset with w_r <= w");
    bounds->add_option("--q", q, "field size (prime)")->required();
    bounds->add_option("--K", K, "projective dimension")->required();
    bounds->add_option("--r", r, "subspace dimension")->required();
    bounds->add_option("--w", w, "multiplicity cap")->required();
    bounds->add_option("--oracle", oracle_path, "optimal-length table file");
    bounds->add_option("--data", data_dir, "dataset directory");

    auto* decompose = app.add_subcommand("decompose", "sigma/eps decomposition of a distance");
    decompose->add_option("--q", q)->required();
    decompose->add_option("--k", k, "code dimension")->required();
    decompose->add_option("--d", d, "minimum distance")->required();

    auto* hierarchy = app.add_subcommand("hierarchy", "Weight hierarchy of a generator matrix");
    hierarchy->add_option("--matrix", matrix_path)->required();
    hierarchy->add_flag("--direct", direct, "enumerate subcodes instead of using the geometry");

    auto* construct = app.add_subcommand("construct", "Build a multiset from a type string");
    construct->add_option("--type", type, "e.g. 2[5]-[4]-[3]+1[0], frame, ovoid")->required();
    construct->add_option("--q", q)->required();
    construct->add_option("--K", K_flag, "projective dimension (frame/ovoid)");
    construct->add_option("--placement", placement)->check(CLI::IsMember({"auto", "chain", "spread"}));
    construct->add_option("--r", r_flag, "subspace dimension the added points respect");
    construct->add_option("--out", out_path, "arc file to write");

    auto* project = app.add_subcommand("project", "Project an arc from a center onto a screen");
    project->add_option("--arc", arc_path)->required();
    project->add_option("--center", center, "comma-separated basis rows")->required();
    project->add_option("--screen", screen, "comma-separated basis rows")->required();
    project->add_option("--out", out_path, "arc file to write");

    auto* search = app.add_subcommand("search", "Exact branch-and-bound maximum multiset size");
    search->add_option("--q", q)->required();
    search->add_option("--K", K)->required();
    search->add_option("--r", r)->required();
    search->add_option("--w", w)->required();
    search->add_option("--cap", cap, "per-point multiplicity cap");
    search->add_option("--budget", budget, "node budget (0 = unlimited)");
    search->add_option("--time", time_limit, "time limit in seconds (0 = unlimited)");
    search->add_option("--threads", threads);
    search->add_flag("--prescribe-frame", prescribe_frame, "fix the unit points to multiplicity 1");
    search->add_option("--warm", warm_path, "arc file used as incumbent");
    search->add_option("--log", log_path, "improvement log file");
    search->add_option("--out", out_path, "witness arc file");
    search->add_flag("--big", big, "allow K >= 7");

    auto* verify = app.add_subcommand("verify-data", "Re-check every shipped table entry and matrix");
    verify->add_option("--data", data_dir);
    verify->add_option("--only", only, "substring filter on item keys");
    verify->add_option("--threads", verify_threads);

    auto* tables = app.add_subcommand("tables", "Emit the stored table slice as TSV");
    tables->add_option("--q", q)->required();
    tables->add_option("--K", K)->required();
    tables->add_option("--r", r)->required();
    tables->add_option("--data", data_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bounds->parsed()) return run_bounds(q, K, r, w, oracle_path, data_dir);
        if (decompose->parsed()) return run_decompose(q, k, d);
        if (hierarchy->parsed()) return run_hierarchy(matrix_path, direct);
        if (construct->parsed()) return run_construct(type, q, K_flag, placement, r_flag, out_path);
        if (project->parsed()) return run_project(arc_path, center, screen, out_path);
        if (search->parsed())
            return run_search(q, K, r, w, cap, budget, time_limit, threads, prescribe_frame,
                              warm_path, log_path, out_path, big);
        if (verify->parsed()) return run_verify(data_dir, only, verify_threads);
        if (tables->parsed()) return run_tables(q, K, r, data_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
