// mrlab: command-line front end for tensor-code erasure analysis.
//
// Subcommands: check-pattern, verify, decode, search, construct.
// Exit codes: 0 = pass/correctable, 1 = fail/not correctable, 2 = input
// error, 3 = search exhausted, 4 = inconsistent received data (decode).
// Every certificate printed on a failure path is re-verified first.
// MRLAB_THREADS caps the worker count of parallel library calls.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mrlab/mrlab.hpp"

using namespace mrlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitInconsistent = 4;

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

LinearCode load_code(const std::string& path) {
    auto in = open_or_throw(path);
    return read_code(in);
}

ErasurePattern load_pattern(const std::string& path) {
    auto in = open_or_throw(path);
    return read_pattern(in);
}

// field size argument: a field literal ("p=601", "p=7;x2=3"), a prime, or
// the square of a prime (interpreted as the quadratic extension)
FieldSpec parse_field_size(const std::string& q) {
    if (q.rfind("p=", 0) == 0) return parse_field_literal(q);
    if (q.empty() || q.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error("bad field size '" + q + "'");
    const std::uint64_t v = std::stoull(q);
    if (is_prime_u64(v)) return FieldSpec::prime(v);
    const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    for (std::uint64_t p = r > 1 ? r - 1 : 1; p <= r + 1; ++p)
        if (p >= 3 && p * p == v && is_prime_u64(p)) return FieldSpec::quadratic(p, smallest_nonresidue(p));
    throw std::runtime_error("field size must be a prime or the square of a prime: " + q);
}

void print_set(const char* name, const std::vector<int>& xs) {
    std::cout << name << ":";
    for (int x : xs) std::cout << " " << (x + 1);
    std::cout << "\n";
}

int cmd_check_pattern(const std::string& pattern_path, int m_flag, int n_flag, int a, int b,
                      std::string method, const std::string& code_path, const std::string& col_path,
                      int trials, std::uint64_t seed) {
    ErasurePattern e = load_pattern(pattern_path);
    if (m_flag > 0 && static_cast<std::size_t>(m_flag) != e.m())
        throw std::runtime_error("--m disagrees with the pattern file");
    if (n_flag > 0 && static_cast<std::size_t>(n_flag) != e.n())
        throw std::runtime_error("--n disagrees with the pattern file");
    const int m = static_cast<int>(e.m()), n = static_cast<int>(e.n());
    if (a < 1 || b < 1 || a >= m || b >= n) throw std::runtime_error("need 1 <= a < m and 1 <= b < n");

    if (method.empty()) method = (a == 1) ? "flow" : "generic";

    if (method == "naive") {
        const auto viol = is_regular_naive(e, a, b);
        if (!viol) {
            std::cout << "regular\n";
            return kExitPass;
        }
        // re-verify the certificate by recounting
        int count = 0;
        for (int i : viol->rows)
            for (int j : viol->cols)
                if (e.contains(i, j)) ++count;
        const int bound = static_cast<int>(viol->rows.size()) * b +
                          static_cast<int>(viol->cols.size()) * a - a * b;
        if (count != viol->count || bound != viol->bound || count <= bound)
            throw std::runtime_error("internal error: violation certificate failed re-verification");
        std::cout << "not regular\n";
        print_set("S", viol->rows);
        print_set("T", viol->cols);
        std::cout << "count=" << viol->count << " bound=" << viol->bound << "\n";
        return kExitFail;
    }

    if (method == "flow") {
        const auto blocker = is_excess_compatible(e, a, b);
        if (!blocker) {
            std::cout << "excess-compatible (regular)\n";
            return kExitPass;
        }
        // re-verify the Hall inequality for the failing subproblem
        const ExcessProfile prof = excess_profile(e, a, b);
        long long demand = 0, supply = 0;
        for (int i : blocker->rows) demand += prof.row_excess[i];
        for (int j : blocker->cols) {
            int deg = 0;
            for (int i : blocker->rows)
                if (e.contains(i, j)) ++deg;
            supply += std::min(a, deg);
        }
        if (demand <= supply)
            throw std::runtime_error("internal error: blocker certificate failed re-verification");
        std::cout << "not excess-compatible\n";
        print_set("V", blocker->cols);
        print_set("U", blocker->rows);
        std::cout << "demand=" << demand << " supply=" << supply << "\n";
        return kExitFail;
    }

    if (method == "rank") {
        if (code_path.empty()) throw std::runtime_error("--method rank needs --code");
        LinearCode row = load_code(code_path);
        LinearCode col = [&] {
            if (!col_path.empty()) return load_code(col_path);
            if (a == 1) return parity_code(row.field(), static_cast<std::size_t>(m));
            throw std::runtime_error("--col-code required when a > 1");
        }();
        TensorCode t(col, row);
        if (t.m() != e.m() || t.n() != e.n() || t.a() != static_cast<std::size_t>(a) ||
            t.b() != static_cast<std::size_t>(b))
            throw std::runtime_error("codes do not match the pattern parameters");
        if (is_correctable(t, e)) {
            std::cout << "correctable\n";
            return kExitPass;
        }
        std::vector<int> idx;
        for (const auto& [i, j] : e.cells()) idx.push_back(i * n + j);
        std::cout << "not correctable\n";
        std::cout << "parity columns " << idx.size() << ", rank "
                  << rank(t.parity_check().cols_subset(idx)) << "\n";
        return kExitFail;
    }

    if (method == "generic") {
        if (a > 1)
            std::cout << "note: no combinatorial characterization is known for a > 1; "
                         "answering with the randomized oracle\n";
        if (is_generically_correctable(e, a, b, trials, seed)) {
            std::cout << "generically correctable\n";
            return kExitPass;
        }
        std::cout << "not generically correctable\n";
        return kExitFail;
    }

    throw std::runtime_error("unknown method '" + method + "'");
}

int cmd_verify(const std::string& code_path, int mds_ell, const std::string& col_path) {
    LinearCode code = load_code(code_path);
    if (mds_ell > 0) {
        const auto w = is_mds_ell(code, mds_ell);
        if (!w) {
            std::cout << "MDS(" << mds_ell << "): yes\n";
            return kExitPass;
        }
        // re-verify before printing
        if (intersection_dim(code.generator(), w->family) != w->actual_dim ||
            generic_intersection_dim(code.k(), code.n(), w->family) != w->generic_dim ||
            w->actual_dim == w->generic_dim)
            throw std::runtime_error("internal error: witness failed re-verification");
        std::cout << "MDS(" << mds_ell << "): no\n" << format_witness(*w);
        return kExitFail;
    }
    if (col_path.empty()) throw std::runtime_error("need --mds-ell L or --mr with --col-code");
    LinearCode col = load_code(col_path);
    TensorCode t(col, code);
    const auto fail = verify_mr(t);
    if (!fail) {
        std::cout << "maximally recoverable: yes\n";
        return kExitPass;
    }
    if (!is_generically_correctable(*fail, static_cast<int>(t.a()), static_cast<int>(t.b())) ||
        is_correctable(t, *fail))
        throw std::runtime_error("internal error: pattern failed re-verification");
    std::cout << "maximally recoverable: no\n";
    std::ostringstream pat;
    write_pattern(pat, *fail);
    std::cout << pat.str();
    return kExitFail;
}

int cmd_decode(const std::string& row_path, const std::string& col_path, const std::string& grid_path) {
    LinearCode row = load_code(row_path);
    LinearCode col = load_code(col_path);
    TensorCode t(col, row);
    auto in = open_or_throw(grid_path);
    const Grid g = read_grid(in, row.field(), t.m(), t.n());
    const DecodeResult res = decode_erasures(t, g);
    switch (res.status) {
        case DecodeResult::Status::ok:
            write_grid(std::cout, res.grid);
            return kExitPass;
        case DecodeResult::Status::not_correctable:
            std::cout << "uncorrectable pattern\n";
            return kExitFail;
        case DecodeResult::Status::inconsistent:
            std::cout << "inconsistent data\n";
            return kExitInconsistent;
    }
    return kExitInputError;
}

int cmd_search(int m, int n, int a, int b, const std::string& q, std::uint64_t max_attempts,
               std::uint64_t seed, const std::string& out_prefix) {
    const FieldSpec field = parse_field_size(q);
    const auto t = search_mr_random(static_cast<std::size_t>(m), static_cast<std::size_t>(n), a, b,
                                    field, max_attempts, seed);
    if (!t) {
        std::cout << "not found after " << max_attempts << " attempts\n";
        return kExitNotFound;
    }
    {
        std::ofstream out(out_prefix + "-row.code");
        write_code(out, t->row_code());
    }
    {
        std::ofstream out(out_prefix + "-col.code");
        write_code(out, t->col_code());
    }
    std::cout << "found " << out_prefix << "-row.code and " << out_prefix << "-col.code\n";
    return kExitPass;
}

int cmd_construct(const std::string& type, std::uint64_t p, const std::string& out_path) {
    if (type == "bipartite") {
        const auto fam = build_bipartite(p);
        std::cout << "bipartite family over F_" << p << "^2, " << fam.u.size() << "+" << fam.v.size()
                  << " vectors\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            write_matrix(out, bipartite_matrix(fam));
        }
        const auto viol = verify_bipartite(fam);
        if (!viol) {
            std::cout << "triple intersections: all generic\n";
            return kExitPass;
        }
        std::cout << "violation:";
        for (const auto& [a, b] : viol->pairs) std::cout << " (" << a << "," << b << ")";
        std::cout << "\n";
        return kExitFail;
    }
    if (type == "tripartite") {
        const auto fam = build_tripartite(p);
        std::cout << "tripartite family over F_" << p << "^2: zeta=" << fam.zeta << " c=" << fam.c
                  << " |U|=" << fam.u.size() << " |V|=" << fam.v.size() << " |W|=" << fam.w.size()
                  << "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            write_matrix(out, tripartite_matrix(fam));
        }
        const auto viol = verify_tripartite(fam);
        if (!viol) {
            std::cout << "pair-span intersections: all trivial; union is MDS\n";
            return kExitPass;
        }
        if (viol->mds_failure)
            std::cout << "violation: the union is not MDS\n";
        else
            std::cout << "violation: u(" << viol->ui[0] << "," << viol->ui[1] << ") v(" << viol->vi[0]
                      << "," << viol->vi[1] << ") w(" << viol->wi[0] << "," << viol->wi[1] << ")\n";
        return kExitFail;
    }
    throw std::runtime_error("unknown construction '" + type + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"erasure analysis for tensor codes over exact finite fields"};
    app.require_subcommand(1);

    // check-pattern
    std::string cp_pattern, cp_method, cp_code, cp_col;
    int cp_m = 0, cp_n = 0, cp_a = 1, cp_b = 1, cp_trials = 2;
    std::uint64_t cp_seed = 0;
    auto* cp = app.add_subcommand("check-pattern", "decide correctability of an erasure pattern");
    cp->add_option("pattern", cp_pattern, "pattern file")->required();
    cp->add_option("--m", cp_m, "grid rows (checked against the file)");
    cp->add_option("--n", cp_n, "grid columns (checked against the file)");
    cp->add_option("--a", cp_a, "column parity checks")->required();
    cp->add_option("--b", cp_b, "row parity checks")->required();
    cp->add_option("--method", cp_method,
                   "naive | flow | rank | generic (default: flow if a=1, else generic)");
    cp->add_option("--code", cp_code, "row code file (rank method)");
    cp->add_option("--col-code", cp_col, "column code file (rank method, a > 1)");
    cp->add_option("--trials", cp_trials, "generic oracle trials (default 2)");
    cp->add_option("--seed", cp_seed, "generic oracle seed (default 0)");

    // verify
    std::string vf_code, vf_col;
    int vf_ell = 0;
    auto* vf = app.add_subcommand("verify", "check the MDS(l) order condition or maximal recoverability");
    vf->add_option("code", vf_code, "code file (the row code for --mr)")->required();
    vf->add_option("--mds-ell", vf_ell, "order l of the MDS(l) check");
    vf->add_option("--col-code", vf_col, "column code file (enables --mr)");
    vf->add_flag("--mr", "verify maximal recoverability (needs --col-code)");

    // decode
    std::string dc_row, dc_col, dc_grid;
    auto* dc = app.add_subcommand("decode", "recover erased cells of a received grid");
    dc->add_option("--row-code", dc_row, "row code file")->required();
    dc->add_option("--col-code", dc_col, "column code file")->required();
    dc->add_option("grid", dc_grid, "grid file with ? for erased cells")->required();

    // search
    int sr_m = 0, sr_n = 0, sr_a = 1, sr_b = 1;
    std::string sr_q, sr_out = "mr";
    std::uint64_t sr_attempts = 1000, sr_seed = 0;
    auto* sr = app.add_subcommand("search", "randomized search for a maximally recoverable tensor code");
    sr->add_option("--m", sr_m)->required();
    sr->add_option("--n", sr_n)->required();
    sr->add_option("--a", sr_a)->required();
    sr->add_option("--b", sr_b)->required();
    sr->add_option("--q", sr_q, "field size: prime, prime squared, or a field literal")->required();
    sr->add_option("--max-attempts", sr_attempts, "attempt budget (default 1000)");
    sr->add_option("--seed", sr_seed, "sampling seed (default 0)");
    sr->add_option("--out", sr_out, "output prefix (default 'mr')");

    // construct
    std::string cs_type, cs_out;
    std::uint64_t cs_p = 0;
    auto* cs = app.add_subcommand("construct", "build and verify the near-order-3 point families");
    cs->add_option("--type", cs_type, "bipartite | tripartite")->required();
    cs->add_option("--p", cs_p, "prime parameter")->required();
    cs->add_option("--out", cs_out, "matrix output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cp->parsed())
            return cmd_check_pattern(cp_pattern, cp_m, cp_n, cp_a, cp_b, cp_method, cp_code, cp_col,
                                     cp_trials, cp_seed);
        if (vf->parsed()) return cmd_verify(vf_code, vf_ell, vf_col);
        if (dc->parsed()) return cmd_decode(dc_row, dc_col, dc_grid);
        if (sr->parsed()) return cmd_search(sr_m, sr_n, sr_a, sr_b, sr_q, sr_attempts, sr_seed, sr_out);
        if (cs->parsed()) return cmd_construct(cs_type, cs_p, cs_out);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
