// Command-line front end: fusion tables, ranks, divisor classes, positivity
// scans, the verification suites, and machine-readable reports.
//
// Exit codes: 0 all requested checks passed, 1 a verification failed,
// 2 usage or cap error.

#include "virblocks/acceptance.hpp"
#include "virblocks/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace virblocks;

namespace {

struct RunConfig {
    int k_max = 6;
    int n_max = 12;
    int genus_max = 2;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

// VIRBLOCKS_CAPS="k=8,n=14,g=3" overrides the desk-scale defaults
RunConfig load_caps()
{
    RunConfig cfg;
    if (const char* env = std::getenv("VIRBLOCKS_CAPS")) {
        std::istringstream is(env);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                continue;
            const std::string key = tok.substr(0, eq);
            const int val = std::stoi(tok.substr(eq + 1));
            if (key == "k")
                cfg.k_max = val;
            else if (key == "n")
                cfg.n_max = val;
            else if (key == "g")
                cfg.genus_max = val;
        }
    }
    return cfg;
}

struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_cap(bool ok, const std::string& what)
{
    if (!ok)
        throw CapError("cap exceeded: " + what + " (override with VIRBLOCKS_CAPS=k=..,n=..,g=..)");
}

std::vector<int> parse_labels(const std::string& csv)
{
    std::vector<int> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ','))
        out.push_back(std::stoi(tok));
    if (out.empty())
        throw CLI::ValidationError("--labels", "empty label list");
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg = load_caps();

    CLI::App app{"exact computations with Virasoro conformal block divisors"};
    app.require_subcommand(1);
    int exit_status = 0;

    std::string labels_csv;
    int arg_k = 2, arg_genus = 0, arg_n = 4, arg_m = 2;
    bool conformal_block = false;
    std::string arg_p = "1";
    std::string out_path, jsonl_path;

    // fusion --k K --labels a1,a2,...
    auto* c_fusion = app.add_subcommand("fusion", "iterated fusion product");
    c_fusion->add_option("--k", arg_k, "ring index")->required();
    c_fusion->add_option("--labels", labels_csv, "comma-separated module labels")->required();
    c_fusion->callback([&] {
        require_cap(arg_k <= cfg.k_max, "k");
        const VirasoroRing ring(arg_k);
        const auto labels = parse_labels(labels_csv);
        const FusionVector& f = fuse_all(ring, labels);
        json j;
        j["k"] = arg_k;
        j["labels"] = labels;
        json mult = json::object();
        for (int a = 1; a <= arg_k; ++a)
            if (sgn(f.at(a)) != 0)
                mult[std::to_string(a)] = f.at(a).get_str();
        j["product"] = mult;
        emit(j);
    });

    // rank --k K --genus G --labels ...
    auto* c_rank = app.add_subcommand("rank", "conformal block rank");
    c_rank->add_option("--k", arg_k)->required();
    c_rank->add_option("--genus", arg_genus)->required();
    c_rank->add_option("--labels", labels_csv)->required();
    c_rank->callback([&] {
        require_cap(arg_k <= cfg.k_max, "k");
        require_cap(arg_genus <= std::max(cfg.genus_max, 3), "genus");
        const VirasoroRing ring(arg_k);
        const auto labels = parse_labels(labels_csv);
        json j;
        j["k"] = arg_k;
        j["genus"] = arg_genus;
        j["labels"] = labels;
        j["rank"] = rank_genus(ring, arg_genus, labels, std::max(cfg.genus_max, 3)).get_str();
        emit(j);
    });

    // divisor --k K --genus {0|1} --labels ... [--conformal-block] | --cyclic-m M
    auto* c_div = app.add_subcommand("divisor", "divisor class of the coinvariant sheaf");
    auto* opt_k = c_div->add_option("--k", arg_k);
    c_div->add_option("--genus", arg_genus);
    c_div->add_option("--labels", labels_csv)->required();
    auto* opt_m = c_div->add_option("--cyclic-m", arg_m, "use the cyclic ring of order m");
    c_div->add_flag("--conformal-block", conformal_block, "negate to the conformal block side");
    c_div->callback([&] {
        const auto labels = parse_labels(labels_csv);
        json j;
        j["labels"] = labels;
        j["conformal_block"] = conformal_block;
        if (!opt_m->empty()) {
            const CyclicRing ring(arg_m);
            Divisor0 d = cyclic_coinvariant_divisor0(ring, labels);
            if (conformal_block)
                d *= Rat(-1);
            j["ring"] = "sl(" + std::to_string(arg_m) + ") level 1";
            j["class"] = to_json(d);
        } else {
            if (opt_k->empty())
                throw CLI::ValidationError("divisor", "need --k or --cyclic-m");
            require_cap(arg_k <= cfg.k_max, "k");
            const VirasoroRing ring(arg_k);
            j["ring"] = "Vir(2," + std::to_string(2 * arg_k + 1) + ")";
            if (arg_genus == 0) {
                Divisor0 d = coinvariant_divisor0(ring, labels);
                if (conformal_block)
                    d *= Rat(-1);
                j["class"] = to_json(d);
            } else if (arg_genus == 1) {
                Divisor1 d = coinvariant_divisor1(ring, labels);
                if (conformal_block)
                    d *= Rat(-1);
                j["class"] = to_json(d);
                j["canonical"] = to_json(canonical_form(d));
            } else {
                throw CLI::ValidationError("divisor", "--genus must be 0 or 1");
            }
        }
        emit(j);
    });

    // fnef --k K --genus G --labels ...
    auto* c_fnef = app.add_subcommand("fnef", "exhaustive F-curve positivity scan");
    c_fnef->add_option("--k", arg_k)->required();
    c_fnef->add_option("--genus", arg_genus)->required();
    c_fnef->add_option("--labels", labels_csv)->required();
    c_fnef->callback([&] {
        require_cap(arg_k <= cfg.k_max, "k");
        require_cap(arg_genus <= cfg.genus_max, "genus");
        const auto labels = parse_labels(labels_csv);
        require_cap(static_cast<int>(labels.size()) <= cfg.n_max, "n");
        const PositivityReport rep =
            check_fnef(VirasoroRing(arg_k), arg_genus, labels, cfg.genus_max);
        emit(to_json(rep));
        if (!rep.fnef)
            exit_status = 1;
    });

    // nefcert --k K --labels ...
    auto* c_cert = app.add_subcommand("nefcert", "recursive nefness certificate (genus 0)");
    c_cert->add_option("--k", arg_k)->required();
    c_cert->add_option("--labels", labels_csv)->required();
    c_cert->callback([&] {
        require_cap(arg_k <= cfg.k_max, "k");
        const auto labels = parse_labels(labels_csv);
        require_cap(static_cast<int>(labels.size()) <= cfg.n_max, "n");
        const NefCertificate cert = nef_certificate(VirasoroRing(arg_k), labels);
        emit(to_json(cert));
        if (!cert.complete)
            exit_status = 1;
    });

    // verify {virdeg|genvireff|basis}
    auto* c_verify = app.add_subcommand("verify", "verification suites");
    c_verify->require_subcommand(1);

    int kmax_04 = 6, kmax_11 = 12;
    auto* v_deg = c_verify->add_subcommand("virdeg", "degree determined by rank");
    v_deg->add_option("--k-max", kmax_04, "quadruple sweep bound (default 6)");
    v_deg->add_option("--k-max-genus1", kmax_11, "one-point sweep bound (default 12)");
    v_deg->callback([&] {
        require_cap(kmax_04 <= std::max(cfg.k_max, 6), "k");
        bool ok = true;
        for (int k = 2; k <= kmax_04; ++k)
            ok = ok && verify_degree_law_m04(VirasoroRing(k));
        for (int k = 2; k <= kmax_11; ++k)
            ok = ok && verify_degree_law_m11(VirasoroRing(k));
        json j;
        j["m04_k_max"] = kmax_04;
        j["m11_k_max"] = kmax_11;
        j["pass"] = ok;
        emit(j);
        if (!ok)
            exit_status = 1;
    });

    bool no_analytic = false;
    int genv_nmax_raw = -1;
    auto* v_eff = c_verify->add_subcommand("genvireff", "interior-cone verification for one ring");
    v_eff->add_option("--k", arg_k)->required();
    v_eff->add_option("--n-max", genv_nmax_raw, "truncate the point range");
    v_eff->add_option("--jobs", cfg.jobs, "worker threads");
    v_eff->add_flag("--no-analytic", no_analytic, "compute every coefficient explicitly");
    v_eff->add_option("--jsonl", jsonl_path, "write per-tuple records");
    v_eff->callback([&] {
        require_cap(arg_k <= cfg.k_max, "k (the k = 7, 8 runs take hours; raise the cap to opt in)");
        std::optional<int> genv_nmax;
        if (genv_nmax_raw > 0)
            genv_nmax = genv_nmax_raw;
        const GenvireffReport rep =
            verify_genvireff(arg_k, genv_nmax, cfg.jobs, !no_analytic, !jsonl_path.empty());
        if (!jsonl_path.empty()) {
            std::ofstream out(jsonl_path);
            for (const auto& rec : rep.records)
                out << to_json(rec, rep.k).dump() << "\n";
        }
        GenvireffReport summary = rep;
        summary.records.clear();
        emit(to_json(summary));
        if (!rep.all_certified)
            exit_status = 1;
    });

    auto* v_basis = c_verify->add_subcommand("basis", "genus-1 Picard basis checks");
    v_basis->add_option("--n", arg_n)->required();
    v_basis->callback([&] {
        require_cap(arg_n <= 9, "n (basis matrices are capped at n = 9)");
        json j;
        j["n"] = arg_n;
        const Matrix m = vir5_basis_matrix(arg_n);
        const bool invertible = matrix_rank(m) == pic1_dim(arg_n);
        j["dimension"] = pic1_dim(arg_n);
        j["invertible"] = invertible;
        const VirasoroRing r2(2);
        std::vector<int> labels(static_cast<size_t>(arg_n), 2);
        if (arg_n >= 2)
            j["t_value"] = rat_string(t_functional(coinvariant_divisor1(r2, labels)));
        j["fibonacci_identities"] = fibonacci_identities(arg_n).match();
        j["matrix"] = matrix_to_json(m);
        emit(j);
        if (!invertible)
            exit_status = 1;
    });

    // stable --labels ... [--k-lo --k-hi] [--csv FILE]
    int k_lo = 2, k_hi = 0;
    auto* c_stable = app.add_subcommand("stable", "stable divisor and stabilization scan");
    c_stable->add_option("--labels", labels_csv)->required();
    c_stable->add_option("--k-lo", k_lo);
    c_stable->add_option("--k-hi", k_hi);
    c_stable->add_option("--csv", out_path, "append the scan row to a CSV file");
    c_stable->callback([&] {
        const TupleSpec t(parse_labels(labels_csv));
        require_cap(t.n() <= cfg.n_max, "n");
        const int hi = k_hi > 0 ? k_hi : critical_level(t) + 2;
        require_cap(std::max(hi, stable_ring(t) + 1) <= cfg.k_max, "k");
        json j;
        j["critical_level"] = critical_level(t);
        j["stable_ring"] = stable_ring(t);
        const Divisor0 d = stable_divisor(t);
        j["stable_class"] = to_json(d);
        const StabilizationReport rep = check_stabilization(t, k_lo, hi);
        j["scan"] = to_json(rep);
        if (!out_path.empty()) {
            const bool fresh = !std::filesystem::exists(out_path);
            std::ofstream out(out_path, std::ios::app);
            if (fresh)
                out << stabilization_csv_header() << "\n";
            out << stabilization_csv_row(rep) << "\n";
        }
        emit(j);
        if (!rep.agree)
            exit_status = 1;
    });

    // diff --labels ... --k K
    auto* c_diff = app.add_subcommand("diff", "signed difference of adjacent rings");
    c_diff->add_option("--labels", labels_csv)->required();
    c_diff->add_option("--k", arg_k)->required();
    c_diff->callback([&] {
        const TupleSpec t(parse_labels(labels_csv));
        require_cap(t.n() <= cfg.n_max, "n");
        require_cap(arg_k + 1 <= cfg.k_max + 1, "k");
        json j = to_json(check_difference_fnef(t, arg_k));
        j["class"] = to_json(difference_divisor(t, arg_k));
        emit(j);
    });

    // indsys --p P --n N [--axioms-n M]
    int axioms_n = 0;
    auto* c_ind = app.add_subcommand("indsys", "two-module interpolating family");
    c_ind->add_option("--p", arg_p)->required();
    c_ind->add_option("--n", arg_n)->required();
    c_ind->add_option("--axioms-n", axioms_n, "axiom check bound (default n, capped at 8)");
    c_ind->callback([&] {
        require_cap(arg_n <= cfg.n_max, "n");
        const Rat p = parse_rat(arg_p);
        json j;
        j["p"] = rat_string(p);
        j["n"] = arg_n;
        j["class"] = to_json(d_np_class(p, arg_n));
        const DnpReport pos = check_dnp_positivity(p, arg_n);
        j["positivity"] = to_json(pos);
        const int an = std::min(axioms_n > 0 ? axioms_n : arg_n, 8);
        const AxiomReport ax = verify_axioms(two_module_system(p), an);
        j["axioms"] = to_json(ax);
        emit(j);
        if (!pos.fnef || !ax.all())
            exit_status = 1;
    });

    // report all --out DIR
    auto* c_report = app.add_subcommand("report", "machine-readable reports");
    auto* r_all = c_report->add_subcommand("all", "full verification suite");
    r_all->add_option("--out", out_path, "output directory")->required();
    r_all->add_option("--jobs", cfg.jobs, "worker threads");
    r_all->callback([&] {
        namespace fs = std::filesystem;
        fs::create_directories(out_path);
        const auto results = run_acceptance({}, cfg.jobs);
        bool all = true;
        {
            std::ofstream out(fs::path(out_path) / "acceptance.jsonl");
            for (const auto& r : results) {
                json j;
                j["id"] = r.id;
                j["name"] = r.name;
                j["pass"] = r.pass;
                j["seconds"] = r.seconds;
                j["detail"] = r.detail;
                out << j.dump() << "\n";
                all = all && r.pass;
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.name << "\n";
            }
        }
        {
            const GenvireffReport rep = verify_genvireff(5, std::nullopt, cfg.jobs, true, true);
            std::ofstream out(fs::path(out_path) / "genvireff_k5.jsonl");
            for (const auto& rec : rep.records)
                out << to_json(rec, rep.k).dump() << "\n";
            all = all && rep.all_certified;
        }
        {
            std::ofstream out(fs::path(out_path) / "stabilization.csv");
            out << stabilization_csv_header() << "\n";
            for (int n = 4; n <= 6; ++n) {
                std::vector<std::vector<int>> tuples;
                std::vector<int> stack(static_cast<size_t>(n), 1);
                auto rec = [&](auto&& self, int pos, int lo) -> void {
                    if (pos == n) {
                        tuples.push_back(stack);
                        return;
                    }
                    for (int a = lo; a <= 4; ++a) {
                        stack[static_cast<size_t>(pos)] = a;
                        self(self, pos + 1, a);
                    }
                };
                rec(rec, 0, 1);
                for (const auto& a : tuples) {
                    const TupleSpec t(a);
                    out << stabilization_csv_row(
                               check_stabilization(t, 2, critical_level(t) + 2))
                        << "\n";
                }
            }
        }
        std::cout << (all ? "report: all checks passed" : "report: FAILURES present") << "\n";
        if (!all)
            exit_status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CapError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_status;
}
