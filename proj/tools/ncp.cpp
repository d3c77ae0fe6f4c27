// Command line front end.  Subcommands: build, analyze, decompose, verify,
// check, catalog, export.  Exit codes: 0 success / property holds,
// 1 property fails, 2 input error, 3 resource cap exceeded.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncp/absolute_order.hpp"
#include "ncp/catalog.hpp"
#include "ncp/io.hpp"
#include "ncp/nc_decomp.hpp"
#include "ncp/sperner.hpp"

namespace {

struct PropertyFailed {};

ncp::GroupParams params_from(const std::string& family, int d, int n) {
    if (family == "g11n") {
        if (d != 1) throw ncp::input_error("family g11n requires --d 1");
        return {1, n};
    }
    if (family == "gddn") return {d, n};
    throw ncp::input_error("unknown family '" + family + "' (expected g11n or gddn)");
}

// decompositions refer to element ids, so the file must agree with the
// canonical lattice regenerated from its metadata
ncp::NCLattice lattice_for_file(const ncp::PosetFile& file, int cap) {
    if (!file.meta.family || !file.meta.d || !file.meta.n)
        throw ncp::input_error("poset file lacks construction metadata (family, d, n)");
    const ncp::GroupParams params = params_from(*file.meta.family, *file.meta.d, *file.meta.n);
    ncp::NCLattice lat = ncp::build_nc_lattice(params, cap);
    const ncp::GradedPoset built = ncp::to_graded_poset(lat);
    if (built.m != file.poset.m || built.rank != file.poset.rank || built.up != file.poset.up)
        throw ncp::input_error("poset file does not match the canonical lattice for its metadata");
    return lat;
}

int run(int argc, char** argv) {
    CLI::App app{"noncrossing partition lattice toolkit"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct a lattice and write it to a file");
    std::string build_family, build_out;
    int build_d = 1, build_n = 2, build_cap = ncp::kDefaultElementCap;
    build->add_option("--family", build_family, "g11n or gddn")->required();
    build->add_option("--d", build_d, "color modulus");
    build->add_option("--n", build_n, "number of integers")->required();
    build->add_option("--cap", build_cap, "element cap");
    build->add_option("--out", build_out, "output file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "rank profile of a poset file");
    std::string analyze_file;
    bool analyze_rank = false, analyze_gamma = false, analyze_json = false;
    analyze->add_option("file", analyze_file)->required();
    analyze->add_flag("--rank-vector", analyze_rank);
    analyze->add_flag("--gamma", analyze_gamma);
    analyze->add_flag("--json", analyze_json);

    // decompose
    auto* decompose = app.add_subcommand("decompose", "compute a decomposition of a built lattice");
    std::string dec_file, dec_mode, dec_out;
    decompose->add_option("file", dec_file)->required();
    decompose->add_option("--mode", dec_mode, "chunks, rearranged, sbd, or scd")->required();
    decompose->add_option("--out", dec_out)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "verify a decomposition file against a poset file");
    std::string ver_file, ver_decomp, ver_expect;
    verify->add_option("file", ver_file)->required();
    verify->add_option("decomp", ver_decomp)->required();
    verify->add_option("--expect", ver_expect, "plain, symmetric, boolean, or chain")->required();

    // check
    auto* check = app.add_subcommand("check", "Sperner-type analyses of a poset file");
    std::string check_file;
    bool check_sperner = false, check_strong = false, check_nm = false;
    int check_k = 0;
    check->add_option("file", check_file)->required();
    check->add_flag("--sperner", check_sperner);
    check->add_flag("--strong-sperner", check_strong);
    check->add_flag("--normalized-matching", check_nm);
    check->add_option("--k-family", check_k, "maximum k-family by brute force");

    // catalog
    auto* cat = app.add_subcommand("catalog", "degrees, Coxeter number, and Catalan count");
    std::string cat_family;
    int cat_d = 1, cat_n = 2;
    cat->add_option("--family", cat_family)->required();
    cat->add_option("--d", cat_d);
    cat->add_option("--n", cat_n)->required();

    // export
    auto* exp = app.add_subcommand("export", "render a poset file");
    std::string exp_file, exp_dot;
    exp->add_option("file", exp_file)->required();
    exp->add_option("--dot", exp_dot, "DOT output path")->required();

    app.parse(argc, argv);

    if (*build) {
        const ncp::GroupParams params = params_from(build_family, build_d, build_n);
        const auto invariants =
            ncp::catalog(build_family, params.d, params.n);
        if (invariants.catalan > build_cap)
            throw ncp::resource_limit_error("predicted lattice size " +
                                            std::to_string(invariants.catalan) +
                                            " exceeds the cap");
        const ncp::NCLattice lat = ncp::build_nc_lattice(params, build_cap);
        ncp::PosetMeta meta;
        meta.family = build_family;
        meta.d = params.d;
        meta.n = params.n;
        meta.coxeter = ncp::to_cycle_string(lat.gamma);
        ncp::export_poset(ncp::to_graded_poset(lat), meta, build_out);
        std::cout << "wrote " << lat.size() << " elements to " << build_out << "\n";
        return 0;
    }
    if (*analyze) {
        const ncp::GradedPoset poset = ncp::import_poset(analyze_file).poset;
        const ncp::RankProfile profile = ncp::rank_profile(poset);
        if (analyze_gamma && !profile.gamma_vector)
            throw ncp::input_error("gamma-vector is defined only for rank-symmetric posets");
        if (analyze_json) {
            nlohmann::json j;
            j["rank_vector"] = profile.rank_vector;
            j["symmetric"] = profile.symmetric;
            j["unimodal"] = profile.unimodal;
            if (profile.gamma_vector) {
                j["gamma_vector"] = *profile.gamma_vector;
                j["gamma_nonnegative"] = profile.gamma_nonnegative;
            }
            std::cout << j.dump(1) << "\n";
            return 0;
        }
        const bool all = !analyze_rank && !analyze_gamma;
        auto print_vec = [](const char* name, const std::vector<long long>& v) {
            std::cout << name << ":";
            for (long long x : v) std::cout << " " << x;
            std::cout << "\n";
        };
        if (analyze_rank || all) print_vec("rank-vector", profile.rank_vector);
        if ((analyze_gamma || all) && profile.gamma_vector) print_vec("gamma", *profile.gamma_vector);
        if (all)
            std::cout << "symmetric: " << (profile.symmetric ? "true" : "false")
                      << "\nunimodal: " << (profile.unimodal ? "true" : "false") << "\n";
        return 0;
    }
    if (*decompose) {
        const ncp::PosetFile file = ncp::import_poset(dec_file);
        const ncp::NCLattice lat = lattice_for_file(file, ncp::kDefaultElementCap);
        const ncp::GradedPoset poset = ncp::to_graded_poset(lat);
        ncp::Decomposition d;
        if (dec_mode == "chunks") {
            d = lat.params.d == 1 ? ncp::su_decompose(lat) : ncp::chunk_decompose(lat);
        } else if (dec_mode == "rearranged") {
            d = ncp::rearranged_decompose(lat);
        } else if (dec_mode == "sbd") {
            d = ncp::sbd(lat);
        } else if (dec_mode == "scd") {
            d = ncp::scd_from_sbd(poset, ncp::sbd(lat));
        } else {
            throw ncp::input_error("unknown mode '" + dec_mode + "'");
        }
        ncp::export_decomposition(d, poset, dec_mode, dec_out);
        std::cout << "wrote " << d.parts.size() << " parts to " << dec_out << "\n";
        return 0;
    }
    if (*verify) {
        const ncp::GradedPoset poset = ncp::import_poset(ver_file).poset;
        const ncp::Decomposition d = ncp::import_decomposition(ver_decomp);
        ncp::VerifyMode mode;
        if (ver_expect == "plain")
            mode = ncp::VerifyMode::Plain;
        else if (ver_expect == "symmetric")
            mode = ncp::VerifyMode::Symmetric;
        else if (ver_expect == "boolean")
            mode = ncp::VerifyMode::Boolean;
        else if (ver_expect == "chain")
            mode = ncp::VerifyMode::Chain;
        else
            throw ncp::input_error("unknown expectation '" + ver_expect + "'");
        const auto report = ncp::verify_decomposition(poset, d, mode);
        if (report.ok) {
            std::cout << "ok: " << d.parts.size() << " parts verify as " << ver_expect << "\n";
            return 0;
        }
        for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
        return 1;
    }
    if (*check) {
        const ncp::GradedPoset poset = ncp::import_poset(check_file).poset;
        nlohmann::json j;
        bool all_hold = true;
        j["width"] = ncp::width(poset);
        if (check_sperner) {
            const bool ok = ncp::is_sperner(poset);
            j["sperner"] = ok;
            all_hold = all_hold && ok;
        }
        if (check_strong) {
            auto report = ncp::is_strongly_sperner(poset);
            if (check_k > 0) {
                std::vector<long long> sizes;
                for (int k = 1; k <= check_k; ++k)
                    sizes.push_back(ncp::max_k_family_bruteforce(poset, k));
                report.k_family_sizes = std::move(sizes);
            }
            j["strong_sperner"] = ncp::sperner_report_to_json(report);
            all_hold = all_hold && report.strongly_sperner;
        }
        if (check_nm) {
            const auto [ok, failing] = ncp::normalized_matching(poset);
            j["normalized_matching"] = ok;
            if (failing) j["failing_rank_pair"] = {failing->first, failing->second};
            all_hold = all_hold && ok;
        }
        if (check_k > 0) {
            const long long best = ncp::max_k_family_bruteforce(poset, check_k);
            j["k"] = check_k;
            j["max_k_family"] = best;
            auto counts = ncp::rank_profile(poset).rank_vector;
            std::sort(counts.rbegin(), counts.rend());
            long long sum = 0;
            for (int i = 0; i < check_k && i < static_cast<int>(counts.size()); ++i) sum += counts[i];
            j["k_sperner"] = best == sum;
            all_hold = all_hold && best == sum;
        }
        std::cout << j.dump(1) << "\n";
        return all_hold ? 0 : 1;
    }
    if (*cat) {
        const auto inv = ncp::catalog(cat_family, cat_family == "g11n" ? 1 : cat_d, cat_n);
        std::cout << "degrees:";
        for (int deg : inv.degrees) std::cout << " " << deg;
        std::cout << "\nh: " << inv.h << "\ncatalan: " << inv.catalan << "\n";
        return 0;
    }
    if (*exp) {
        const ncp::GradedPoset poset = ncp::import_poset(exp_file).poset;
        ncp::export_dot(poset, exp_dot);
        std::cout << "wrote " << exp_dot << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App app;
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ncp::resource_limit_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const ncp::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
