// tensorank: tensor ranks, rank certificates, and entanglement measures for
// small dense complex tensors.  Subcommands: make, rank, genrank, pencil,
// norms, domset, tables.  All randomness flows from --seed; identical
// invocations produce byte-identical output.
#include "tensorank/genrank.hpp"
#include "tensorank/hamming.hpp"
#include "tensorank/json_io.hpp"
#include "tensorank/norms.hpp"
#include "tensorank/pencil.hpp"
#include "tensorank/rankbounds.hpp"
#include "tensorank/rng.hpp"
#include "tensorank/symmetric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tensorank;

constexpr int kExitUsage = 2;
constexpr int kExitBadTensor = 3;
constexpr int kExitBudget = 4;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        write_json(std::cout, j);
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        write_json(f, j);
    }
}

json shape_json(const Shape& s) { return json(s.dims); }

json poly_json(const Poly& p) {
    // coefficient quadruples, ascending degree
    json c = json::array();
    for (const auto& v : p.c)
        c.push_back({v.re.get_num().get_str(), v.re.get_den().get_str(), v.im.get_num().get_str(),
                     v.im.get_den().get_str()});
    return c;
}

Shape parse_shape(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) dims.push_back(std::stoi(part));
    return Shape(dims);
}

json points_json(const VertexSet& v) {
    json a = json::array();
    for (const auto& p : v.points) a.push_back(p);
    return a;
}

json certificate_json(const RankCertificate& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["value"] = c.value;
    j["lower"] = c.is_lower;
    j["upper"] = c.is_upper;
    j["computed"] = c.participates;
    if (!c.note.empty()) j["note"] = c.note;
    if (!c.mode_splits.empty()) {
        j["mode_splits"] = c.mode_splits;
        j["split_ranks"] = c.split_ranks;
    }
    if (c.dec_exact) j["decomposition"] = decomposition_to_json(*c.dec_exact);
    else if (c.dec_numeric) j["decomposition"] = decomposition_to_json(*c.dec_numeric);
    if (!c.det_points.empty()) {
        json pts = json::array();
        for (const auto& p : c.det_points) pts.push_back({p[0], p[1], p[2]});
        j["witness_points"] = pts;
    }
    if (!c.kruskal_blocks.empty()) {
        j["kruskal_blocks"] = c.kruskal_blocks;
        j["kruskal_ranks"] = c.kruskal_ranks;
        j["unique"] = c.uniqueness;
    }
    return j;
}

QTensor make_state(const std::string& spec) {
    auto bad = [&] { throw std::invalid_argument("unknown state spec: " + spec); };
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "w") {
        if (args.empty()) bad();
        return w_state(std::stoi(args));
    }
    if (kind == "ghz") {
        auto comma = args.find(',');
        if (comma == std::string::npos) bad();
        return ghz_state(std::stoi(args.substr(0, comma)), std::stoi(args.substr(comma + 1)));
    }
    if (kind == "wkron2") return kronecker(w_state(3), w_state(3));
    if (kind == "poly") {
        json j;
        std::ifstream f(args);
        if (!f) throw std::invalid_argument("cannot open polynomial file: " + args);
        f >> j;
        HomogeneousPolynomial<GaussianRational> p;
        p.d = j.at("d").get<int>();
        p.n = j.at("n").get<int>();
        for (const auto& [key, val] : j.at("coeffs").items()) {
            ExponentIndex e;
            std::stringstream ss(key);
            std::string part;
            while (std::getline(ss, part, ',')) e.push_back(std::stoi(part));
            // file stores f_j pairs [re, im]; the c(j) convention is internal
            double re = val.at(0).get<double>(), im = val.size() > 1 ? val.at(1).get<double>() : 0.0;
            p.set(e, GaussianRational(rationalize(re, 1000000), rationalize(im, 1000000)));
        }
        return poly_to_tensor(p);
    }
    bad();
    return {};
}

int run(int argc, char** argv) {
    CLI::App app{"tensor ranks, certificates and entanglement measures for small dense tensors"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    uint64_t seed = 0;
    std::string out_path;
    app.add_option("--seed", seed, "seed for all randomized procedures")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");

    // make
    auto* mk = app.add_subcommand("make", "emit a named state as tensor JSON");
    std::string state;
    bool normalize_state = false;
    mk->add_option("--state", state, "w:d | ghz:n,d | wkron2 | poly:<file>")->required();
    mk->add_flag("--normalize", normalize_state, "scale to unit Frobenius norm");

    // rank
    auto* rk = app.add_subcommand("rank", "rank report with machine-checkable certificates");
    std::string rk_in = "-";
    int rk_cap = 0;
    unsigned long rk_den = 1000000;
    bool rk_exact = false;
    rk->add_option("--in", rk_in, "tensor JSON file, - for stdin");
    rk->add_option("--cap", rk_cap, "ALS term cap (0 = formula caps)");
    rk->add_option("--den-bound", rk_den, "denominator bound when rationalizing doubles");
    rk->add_flag("--exact", rk_exact, "require rational quadruple input (no rationalization)");

    // genrank
    auto* gr = app.add_subcommand("genrank", "generic rank by randomized Terracini probes");
    std::string gr_shape;
    int gr_trials = 3;
    uint64_t gr_prime = kPrime61;
    gr->add_option("--shape", gr_shape, "comma-separated mode sizes, e.g. 3,3,3")->required();
    gr->add_option("--trials", gr_trials, "probes per candidate rank")->capture_default_str();
    gr->add_option("--prime", gr_prime, "field prime")->capture_default_str();

    // pencil
    auto* pc = app.add_subcommand("pencil", "exact m x n x 2 rank via the Kronecker pencil structure");
    std::string pc_in = "-";
    unsigned long pc_den = 1000000;
    pc->add_option("--in", pc_in, "tensor JSON file, - for stdin");
    pc->add_option("--den-bound", pc_den, "denominator bound when rationalizing doubles");

    // norms
    auto* nm = app.add_subcommand("norms", "spectral/nuclear norms and entanglement measures");
    std::string nm_in = "-";
    bool nm_spectral = false, nm_nuclear = false, nm_eta = false;
    int nm_starts = 64, nm_rmax = 8;
    nm->add_option("--in", nm_in, "tensor JSON file, - for stdin");
    nm->add_flag("--spectral", nm_spectral, "compute the spectral norm");
    nm->add_flag("--nuclear", nm_nuclear, "compute the nuclear norm with dual certificate");
    nm->add_flag("--eta", nm_eta, "compute the geometric entanglement measure");
    nm->add_option("--starts", nm_starts, "multi-start count")->capture_default_str();
    nm->add_option("--rmax", nm_rmax, "nuclear term cap")->capture_default_str();

    // domset
    auto* dm = app.add_subcommand("domset", "Hamming-graph dominating/3-separated sets and bounds");
    std::string dm_shape;
    dm->add_option("--shape", dm_shape, "comma-separated mode sizes")->required();

    // tables
    auto* tb = app.add_subcommand("tables", "dump embedded known values");
    std::string tb_format = "json";
    tb->add_option("--format", tb_format, "json | tsv")->capture_default_str();

    // global options (--seed, --out) are accepted after the subcommand too
    for (auto* sub : {mk, rk, gr, pc, nm, dm, tb}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (mk->parsed()) {
        QTensor t = make_state(state);
        if (normalize_state) {
            CTensor c = to_numeric(t);
            double n = frobenius_norm(c);
            for (auto& e : c.entries) e /= n;
            emit(tensor_to_json(c), out_path);
        } else {
            emit(tensor_to_json(t), out_path);
        }
        return 0;
    }

    if (rk->parsed()) {
        QTensor t = read_exact_tensor_file(rk_in, rk_exact ? 0 : rk_den);
        ReportOptions opt;
        opt.seed = seed;
        opt.r_cap = rk_cap;
        RankReport rep = rank_report(t, opt);
        json j;
        j["shape"] = shape_json(t.shape);
        j["lower"] = rep.lower;
        j["upper"] = rep.upper;
        if (rep.exact) j["exact"] = *rep.exact;
        json certs = json::array();
        for (const auto& c : rep.certificates) certs.push_back(certificate_json(c));
        j["certificates"] = certs;
        emit(j, out_path);
        return 0;
    }

    if (gr->parsed()) {
        Shape shape = parse_shape(gr_shape);
        GenrankOptions opt;
        opt.seed = seed;
        opt.trials = gr_trials;
        opt.prime = gr_prime;
        GenericRankResult res;
        try {
            res = generic_rank(shape, opt);
        } catch (const std::runtime_error& e) {
            throw BudgetExceeded(e.what());
        }
        json j;
        j["shape"] = shape_json(shape);
        j["r0"] = res.r0;
        j["r_gen"] = res.r_gen;
        json ds = json::array();
        for (auto [r, dim] : res.d_sequence) ds.push_back({{"r", r}, {"dim", dim}});
        j["d_sequence"] = ds;
        j["jacobian"] = {{"rows", res.jacobian_rows}, {"cols", res.jacobian_cols}};
        auto thr = threshold_generic_rank(shape);
        if (thr) j["threshold_formula"] = *thr;
        emit(j, out_path);
        return 0;
    }

    if (pc->parsed()) {
        QTensor t = read_exact_tensor_file(pc_in, pc_den);
        PencilRankResult res = rank_mxnx2(t);
        json j;
        j["rank"] = res.rank;
        j["certificate"] = to_string(res.certificate);
        json st;
        st["column_minimal_indices"] = res.structure.column_minimal_indices;
        st["row_minimal_indices"] = res.structure.row_minimal_indices;
        st["regular_core_dim"] = res.structure.regular_core_dim;
        st["normal_rank"] = res.structure.normal_rank;
        json polys = json::array();
        for (const auto& p : res.structure.invariant_polynomials) polys.push_back(poly_json(p));
        st["invariant_polynomials"] = polys;
        st["multiple_root_factors"] = count_multiple_root_factors(res.structure.invariant_polynomials);
        j["structure"] = st;
        if (t.shape.dims == std::vector<int>{2, 2, 2}) {
            Rank222Class c = classify_222(t);
            j["orbit_label"] = to_string(c.orbit_label);
        }
        emit(j, out_path);
        return 0;
    }

    if (nm->parsed()) {
        CTensor t = read_tensor_file(nm_in);
        if (!nm_spectral && !nm_nuclear && !nm_eta) nm_spectral = true;
        json j;
        j["shape"] = shape_json(t.shape);
        SpectralOptions sopt;
        sopt.seed = seed;
        sopt.starts = nm_starts;
        if (nm_spectral || nm_eta) {
            SpectralResult s = spectral_norm(t, sopt);
            json js;
            js["value"] = s.value;
            js["starts_converged"] = s.starts_converged;
            js["iterations"] = s.iterations;
            js["maximizer"] = decomposition_to_json(s.maximizer);
            j["spectral"] = js;
        }
        if (nm_nuclear) {
            NuclearOptions nopt;
            nopt.seed = seed;
            nopt.r_max_terms = nm_rmax;
            nopt.spectral.seed = derive_seed(seed, 0xced);
            NuclearResult r = nuclear_norm(t, nopt);
            json jn;
            if (r.primal_value < 1e299) jn["primal"] = r.primal_value;
            jn["dual"] = r.dual_value;
            jn["gap"] = r.gap < 1e299 ? json(r.gap) : json();
            jn["fit_residual"] = r.fit_residual < 1e299 ? json(r.fit_residual) : json();
            jn["verified"] = r.verified;
            jn["decomposition"] = decomposition_to_json(r.decomposition);
            auto est = nuclear_rank_estimate(r);
            jn["nuclear_rank_estimate"] = {{"rank", est.rank}, {"heuristic", est.heuristic}};
            j["nuclear"] = jn;
        }
        if (nm_eta) {
            CTensor tn = t;
            double fn = frobenius_norm(tn);
            if (std::abs(fn - 1.0) > 1e-10) {
                std::cerr << "warning: input has ||T||_2 = " << fn << "; normalizing for eta\n";
                for (auto& e : tn.entries) e /= fn;
            }
            EntanglementMeasures m = entanglement_measures(tn, std::nullopt, sopt);
            j["eta"] = m.eta;
            j["eta_upper"] = m.eta_upper;
        }
        emit(j, out_path);
        return 0;
    }

    if (dm->parsed()) {
        Shape shape = parse_shape(dm_shape);
        VertexSet dom = greedy_dominating(shape);
        VertexSet sep = greedy_3separated(shape);
        json j;
        j["shape"] = shape_json(shape);
        j["dominating"] = {{"points", points_json(dom)},
                           {"size", dom.points.size()},
                           {"verified", verify_dominating(shape, dom)}};
        j["separated3"] = {{"points", points_json(sep)},
                           {"size", sep.points.size()},
                           {"verified", verify_3separated(shape, sep)}};
        Rational frac = fractional_bound(shape);
        j["fractional_bound"] = {{"num", frac.get_num().get_str()}, {"den", frac.get_den().get_str()}};
        json chain;
        chain["r0"] = r0_lower_bound(shape);
        chain["gamma_greedy"] = dom.points.size();
        bool allsame = true;
        for (int dmm : shape.dims) allsame &= dmm == shape.dims[0];
        if (allsame && shape.dims[0] >= 2) {
            auto pc_rank = perfect_code_rank(shape.dims[0], shape.order());
            if (pc_rank) chain["perfect_code_r_gen"] = *pc_rank;
        }
        j["bound_chain"] = chain;
        emit(j, out_path);
        return 0;
    }

    if (tb->parsed()) {
        const KnownTables& t = known_tables();
        if (tb_format == "tsv") {
            std::ostream* os = &std::cout;
            std::ofstream f;
            if (!out_path.empty() && out_path != "-") {
                f.open(out_path);
                os = &f;
            }
            *os << "# generic ranks r_gen(n^{x d})\n"
                << "d\tn\tr_gen\tprovenance\n";
            for (const auto& e : t.table1)
                *os << e.d << "\t" << e.n << "\t" << e.value << "\t" << e.provenance << "\n";
            *os << "# r_gen / r_max / R_U for d qunit systems\n"
                << "d\tn\tr_gen\tr_max\tr_max_exact\tR_U\n";
            for (const auto& e : t.table2)
                *os << e.d << "\t" << e.n << "\t" << e.r_gen << "\t" << e.r_max << "\t"
                    << (e.r_max_exact ? 1 : 0) << "\t" << e.r_u << "\n";
            *os << "# r_max(3,3,p), p = 1..9\np\tr_max\n";
            for (size_t p = 1; p <= t.max_rank_33p.size(); ++p) {
                *os << p << "\t";
                const auto& row = t.max_rank_33p[p - 1];
                for (size_t i = 0; i < row.size(); ++i) *os << (i ? "|" : "") << row[i];
                *os << "\n";
            }
            return 0;
        }
        json j;
        json t1 = json::array();
        for (const auto& e : t.table1)
            t1.push_back({{"d", e.d}, {"n", e.n}, {"r_gen", e.value}, {"provenance", e.provenance}});
        j["generic_ranks"] = t1;
        json t2 = json::array();
        for (const auto& e : t.table2)
            t2.push_back({{"d", e.d},
                          {"n", e.n},
                          {"r_gen", e.r_gen},
                          {"r_max", e.r_max},
                          {"r_max_exact", e.r_max_exact},
                          {"R_U", e.r_u}});
        j["rank_comparison"] = t2;
        json t3 = json::array();
        for (size_t p = 1; p <= t.max_rank_33p.size(); ++p)
            t3.push_back({{"p", p}, {"r_max", t.max_rank_33p[p - 1]}});
        j["max_rank_33p"] = t3;
        emit(j, out_path);
        return 0;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << json{{"error", "budget exceeded"}, {"detail", e.what()}}.dump() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "bad input"}, {"detail", e.what()}}.dump() << "\n";
        return kExitBadTensor;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "failure"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
}
