// Command line tool for verifying, deriving, enumerating and analysing
// excess coverage arrays and sequence covering arrays.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "excov/analyse.hpp"
#include "excov/binary.hpp"
#include "excov/canon.hpp"
#include "excov/core.hpp"
#include "excov/derive.hpp"
#include "excov/enumerate.hpp"
#include "excov/io.hpp"
#include "excov/verify.hpp"

namespace {

using namespace excov;

int g_jobs = 0;

void print_witness(const Witness& w) {
    if (std::holds_alternative<Interaction>(w.subject)) {
        const auto& inter = std::get<Interaction>(w.subject);
        std::cout << "{";
        for (size_t i = 0; i < inter.pairs.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << "(" << inter.pairs[i].first << "," << int(inter.pairs[i].second) << ")";
        }
        std::cout << "}";
    } else {
        const auto& seq = std::get<Sequence>(w.subject);
        std::cout << "(";
        for (size_t i = 0; i < seq.elements.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << int(seq.elements[i]);
        }
        std::cout << ")";
    }
    std::cout << " required " << w.required << " observed " << w.observed << "\n";
}

int report_result(const VerifyReport& rep) {
    std::cout << (rep.pass ? "pass" : "fail") << "\n";
    for (const auto& w : rep.witnesses) print_witness(w);
    if (!rep.pass) std::cout << "violations " << rep.total_violations << "\n";
    return rep.pass ? 0 : 1;
}

int run_verify(const std::string& file, const std::string& kind, int t, bool exact, std::uint64_t lambda) {
    const auto records = parse_records_file(file);
    bool all_pass = true;
    for (const auto& rec : records) {
        VerifyReport rep;
        if (kind == "sca" || kind == "psca") {
            if (!std::holds_alternative<ScaSet>(rec))
                throw std::invalid_argument("record is not an sca record");
            const auto& x = std::get<ScaSet>(rec);
            const int tt = t > 0 ? t : x.t;
            rep = kind == "sca" ? verify_sca(x, tt) : verify_psca(x, tt, lambda);
        } else {
            if (!std::holds_alternative<Array>(rec))
                throw std::invalid_argument("record is not a cax record");
            const auto& a = std::get<Array>(rec);
            if (t <= 0) throw std::invalid_argument("--t is required for array verification");
            if (kind == "ca")
                rep = verify_ca(a, t);
            else if (kind == "oa")
                rep = verify_oa(a, t);
            else if (kind == "cax")
                rep = verify_cax(a, t, exact);
            else
                throw std::invalid_argument("unknown kind '" + kind + "'");
        }
        if (report_result(rep) != 0) all_pass = false;
    }
    return all_pass ? 0 : 1;
}

std::string deep_stage_path(const std::string& work, int v, int k) {
    return work + "/cat_v" + std::to_string(v) + "_k" + std::to_string(k) + ".caxcat";
}

int run_enumerate(int v, int k, bool oa_free, bool deep, const std::string& out_path,
                  const std::string& work_dir) {
    EnumerateOptions opts;
    opts.jobs = g_jobs;
    opts.oa_free = oa_free;
    opts.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };

    const bool heavy = (v == 6 && k >= 3) || (v == 5 && k >= 5);
    if (heavy && !deep) {
        std::cerr << "this enumeration is a long run; pass --deep (progress is checkpointed)\n";
        return 2;
    }

    if (!deep || oa_free || k <= 3) {
        Catalogue cat = build_catalogue(v, k, opts);
        write_catalogue(cat, out_path, deep);
        const auto cen = census(cat);
        std::cout << cen.oa_count << " " << cen.non_oa_count << "\n";
        return 0;
    }

    // Deep, full catalogue: stage files per depth under the work directory so
    // interrupted runs resume where they stopped.
    const std::string work = work_dir.empty() ? out_path + ".stages" : work_dir;
    std::filesystem::create_directories(work);
    const std::string p3 = deep_stage_path(work, v, 3);
    if (!std::filesystem::exists(p3)) {
        Catalogue cat3 = build_catalogue(v, 3, opts);
        write_catalogue(cat3, p3, true);
        std::cerr << "depth 3: " << cat3.members.size() << " classes\n";
    }
    std::string prev = p3;
    for (int kk = 4; kk <= k; ++kk) {
        const std::string cur = deep_stage_path(work, v, kk);
        if (!std::filesystem::exists(cur)) {
            EnumerateOptions step = opts;
            step.work_dir = cur + ".spill";
            const auto count = extend_catalogue_files(prev, cur, step);
            std::cerr << "depth " << kk << ": " << count << " classes\n";
        }
        prev = cur;
    }
    std::filesystem::copy_file(prev, out_path, std::filesystem::copy_options::overwrite_existing);
    std::filesystem::copy_file(prev + ".meta", out_path + ".meta",
                               std::filesystem::copy_options::overwrite_existing);
    const auto cen = census_file(out_path, g_jobs);
    std::cout << cen.oa_count << " " << cen.non_oa_count << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excess coverage array toolkit"};
    app.require_subcommand(1);
    app.add_option("--jobs", g_jobs, "worker threads for enumeration and classification");

    // verify
    std::string v_file, v_kind;
    int v_t = 0;
    bool v_exact = false;
    std::uint64_t v_lambda = 1;
    auto* sc_verify = app.add_subcommand("verify", "verify an array or permutation set");
    sc_verify->add_option("file", v_file)->required();
    sc_verify->add_option("--kind", v_kind, "ca|cax|oa|sca|psca")->required();
    sc_verify->add_option("--t", v_t, "strength");
    sc_verify->add_flag("--exact", v_exact, "require coverage exactly mu(T)");
    sc_verify->add_option("--lambda", v_lambda, "required multiplicity for psca");

    // enumerate
    int e_v = 0, e_k = 0;
    bool e_oafree = false, e_deep = false;
    std::string e_out, e_work;
    auto* sc_enum = app.add_subcommand("enumerate", "catalogue all isomorphism classes");
    sc_enum->add_option("--v", e_v)->required();
    sc_enum->add_option("--k", e_k)->required();
    sc_enum->add_flag("--oa-free", e_oafree, "only classes without an orthogonal array");
    sc_enum->add_flag("--deep", e_deep, "allow long checkpointed runs");
    sc_enum->add_option("--work", e_work, "stage directory for deep runs");
    sc_enum->add_option("-o,--out", e_out, "catalogue output path")->required();
    sc_enum->add_option("--jobs", g_jobs, "worker threads");

    // extend
    std::string x_in, x_out;
    auto* sc_extend = app.add_subcommand("extend", "one depth of extension");
    sc_extend->add_option("catalogue", x_in)->required();
    sc_extend->add_option("-o,--out", x_out)->required();
    sc_extend->add_option("--jobs", g_jobs, "worker threads");

    // classify / census
    std::string c_in;
    auto* sc_classify = app.add_subcommand("classify", "orthogonal-array split of a catalogue");
    sc_classify->add_option("catalogue", c_in)->required();
    std::string cen_in;
    auto* sc_census = app.add_subcommand("census", "constant-row histogram of a catalogue");
    sc_census->add_option("catalogue", cen_in)->required();

    // derive
    std::string d_file;
    int d_a = 0;
    bool d_census = false;
    auto* sc_derive = app.add_subcommand("derive", "arrays obtained by deleting symbols from an sca");
    sc_derive->add_option("sca", d_file)->required();
    sc_derive->add_option("--a", d_a, "number of deleted symbols")->required();
    sc_derive->add_flag("--census", d_census, "print the multiplicity-vector census instead");

    // canon / auto
    std::string k_file;
    auto* sc_canon = app.add_subcommand("canon", "canonical form of an array");
    sc_canon->add_option("file", k_file)->required();
    std::string a_file;
    auto* sc_auto = app.add_subcommand("auto", "automorphism report of an array");
    sc_auto->add_option("file", a_file)->required();

    // analyse
    auto* sc_analyse = app.add_subcommand("analyse", "structural analyses");
    sc_analyse->require_subcommand(1);
    std::string an_del_file;
    auto* sc_del = sc_analyse->add_subcommand("delete-columns", "per-column deletion report");
    sc_del->add_option("file", an_del_file)->required();
    std::string an_lat_file, an_lat_drop;
    auto* sc_lat = sc_analyse->add_subcommand("latin", "latin square extraction");
    sc_lat->add_option("file", an_lat_file)->required();
    sc_lat->add_option("--drop", an_lat_drop, "two columns to drop, e.g. 1,2")->required();
    std::string an_obs_file;
    auto* sc_obs = sc_analyse->add_subcommand("obstruction", "sequence covering array obstruction");
    sc_obs->add_option("catalogue", an_obs_file)->required();

    // binary
    auto* sc_binary = app.add_subcommand("binary", "binary excess coverage arrays");
    sc_binary->require_subcommand(1);
    int b_t = 0;
    auto* sc_bfam = sc_binary->add_subcommand("family", "all weight profiles on t+1 columns");
    sc_bfam->add_option("--t", b_t)->required();
    int bc_t = 0;
    auto* sc_bcls = sc_binary->add_subcommand("classes", "isomorphism classes of the family");
    sc_bcls->add_option("--t", bc_t)->required();
    int bk_t = 0;
    bool bk_deep = false;
    auto* sc_bk2t = sc_binary->add_subcommand("k2t", "weight-uniform feasibility on 2t columns");
    sc_bk2t->add_option("--t", bk_t)->required();
    sc_bk2t->add_flag("--deep", bk_deep, "allow long exhaustive runs");

    // bound
    int bd_t = 0, bd_v = 0, bd_a = 0;
    std::uint64_t bd_canx = 0;
    auto* sc_bound = app.add_subcommand("bound", "sequence covering array size bound");
    sc_bound->add_option("--t", bd_t)->required();
    sc_bound->add_option("--v", bd_v)->required();
    sc_bound->add_option("--a", bd_a)->required();
    sc_bound->add_option("--canx", bd_canx, "lower bound on the excess coverage array size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc_verify) return run_verify(v_file, v_kind, v_t, v_exact, v_lambda);

        if (*sc_enum) return run_enumerate(e_v, e_k, e_oafree, e_deep, e_out, e_work);

        if (*sc_extend) {
            EnumerateOptions opts;
            opts.jobs = g_jobs;
            Catalogue in = read_catalogue(x_in);
            Catalogue out = extend_catalogue(in, opts);
            write_catalogue(out, x_out);
            std::cout << out.members.size() << "\n";
            return 0;
        }

        if (*sc_classify) {
            const auto cen = census_file(c_in, g_jobs);
            std::cout << cen.oa_count << "\t" << cen.non_oa_count << "\n";
            return 0;
        }

        if (*sc_census) {
            const auto cen = census_file(cen_in, g_jobs);
            for (const auto& [consts, count] : cen.constant_row_histogram)
                std::cout << consts << "\t" << count << "\n";
            return 0;
        }

        if (*sc_derive) {
            const auto records = parse_records_file(d_file);
            if (!std::holds_alternative<ScaSet>(records.front()))
                throw std::invalid_argument("derive expects an sca record");
            const auto& x = std::get<ScaSet>(records.front());
            const auto family = derive_family(x, d_a);
            if (d_census) {
                for (const auto& [vec, count] : multiplicity_census(family)) {
                    for (size_t i = 0; i < vec.counts.size(); ++i) {
                        if (i) std::cout << " ";
                        std::cout << vec.counts[i];
                    }
                    std::cout << "\t" << count << "\n";
                }
            } else {
                for (size_t i = 0; i < family.size(); ++i) {
                    if (i) std::cout << "\n";
                    std::cout << serialize(family[i]);
                }
            }
            return 0;
        }

        if (*sc_canon) {
            const auto records = parse_records_file(k_file);
            if (!std::holds_alternative<Array>(records.front()))
                throw std::invalid_argument("canon expects a cax record");
            std::cout << canonical_form(std::get<Array>(records.front())).bytes();
            return 0;
        }

        if (*sc_auto) {
            const auto records = parse_records_file(a_file);
            if (!std::holds_alternative<Array>(records.front()))
                throw std::invalid_argument("auto expects a cax record");
            const auto rep = automorphisms(std::get<Array>(records.front()));
            std::cout << "order " << rep.order << "\n";
            for (const auto& [ord, count] : rep.element_order_histogram)
                std::cout << "element-order " << ord << " count " << count << "\n";
            for (const auto& orbit : rep.column_orbits) {
                std::cout << "column-orbit";
                for (int c : orbit) std::cout << " " << c;
                std::cout << "\n";
            }
            return 0;
        }

        if (*sc_del) {
            const auto records = parse_records_file(an_del_file);
            const auto reports = column_deletion_analysis(std::get<Array>(records.front()));
            std::vector<CanonicalForm> classes;
            for (const auto& rep : reports) {
                size_t cls = 0;
                for (; cls < classes.size(); ++cls)
                    if (classes[cls] == rep.cls) break;
                if (cls == classes.size()) classes.push_back(rep.cls);
                std::cout << rep.column << "\t" << (rep.contains_oa ? 1 : 0) << "\t" << cls << "\n";
            }
            std::cout << "classes\t" << classes.size() << "\n";
            return 0;
        }

        if (*sc_lat) {
            const auto records = parse_records_file(an_lat_file);
            const auto comma = an_lat_drop.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("--drop expects c1,c2");
            const int c1 = std::stoi(an_lat_drop.substr(0, comma));
            const int c2 = std::stoi(an_lat_drop.substr(comma + 1));
            const auto ext = latin_square_extract(std::get<Array>(records.front()), c1, c2);
            for (int r = 0; r < ext.square.n; ++r) {
                for (int c = 0; c < ext.square.n; ++c) {
                    if (c) std::cout << " ";
                    std::cout << int(ext.square.at(r, c));
                }
                std::cout << "\n";
            }
            std::cout << "transversals " << ext.transversals << "\n";
            return 0;
        }

        if (*sc_obs) {
            Catalogue cat = read_catalogue(an_obs_file);
            const auto rep = obstruction_report(cat);
            for (const auto& chk : rep.checks) std::cout << "check: " << chk << "\n";
            if (rep.concluded) {
                std::cout << "conclusion: " << rep.conclusion << "\n";
                return 0;
            }
            std::cout << "no conclusion\n";
            return 1;
        }

        if (*sc_bfam) {
            for (const auto& p : family_k_t_plus_1(b_t)) std::cout << p.to_line() << "\n";
            return 0;
        }

        if (*sc_bcls) {
            const auto cls = family_isomorphism_classes(bc_t);
            std::cout << "profiles " << cls.profile_count << "\n";
            std::cout << "classes " << cls.class_count << "\n";
            for (auto s : cls.singletons) std::cout << "singleton " << s << "\n";
            for (const auto& [i, j] : cls.pairs) std::cout << "pair " << i << " " << j << "\n";
            return 0;
        }

        if (*sc_bk2t) {
            if (bk_t > 12 && !bk_deep) {
                std::cerr << "t > 12 can run long; pass --deep\n";
                return 2;
            }
            const auto res = k2t_feasibility(bk_t);
            if (res.feasible) {
                std::cout << "feasible " << res.solution->to_line() << "\n";
                return 0;
            }
            if (res.exhausted) {
                std::cout << "infeasible: " << res.certificate << "\n";
                return 1;
            }
            std::cout << "inconclusive: " << res.certificate << "\n";
            return 3;
        }

        if (*sc_bound) {
            std::cout << scan_bound(bd_t, bd_v, bd_a, bd_canx) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
