#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqm/dqm.hpp"

namespace {

using nlohmann::json;

enum class Output { Human, Json, Csv };

struct Options {
    std::string family;
    std::string fixture;
    std::vector<std::string> a;
    std::optional<double> q, phi, alpha_param, beta_param;
    int n = 0;
    int n_max = 10;
    double x = 0.0;
    std::optional<double> tol;
    std::vector<std::string> suites;
    std::string output = "human";
    std::string report;
    std::uint64_t seed = 0;
    std::string table_kind;
};

struct Resolved {
    dqm::FamilyId id;
    dqm::ParamSet params;
    std::string source;
};

Output output_kind(const std::string& s) {
    if (s == "json") return Output::Json;
    if (s == "csv") return Output::Csv;
    return Output::Human;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Resolved resolve(const Options& o) {
    if (o.family.empty()) throw dqm::ValidationError("--family is required");
    auto id = dqm::family_from_string(o.family);
    if (!id) throw dqm::ValidationError("unknown family '" + o.family + "'");
    bool inline_given = !o.a.empty() || o.q || o.phi || o.alpha_param || o.beta_param;
    Resolved r{*id, {}, ""};
    if (!o.fixture.empty() || !inline_given) {
        auto store = dqm::FixtureStore::load_default();
        std::string name = o.fixture.empty() ? "default" : o.fixture;
        r.params = store.get(*id, name);
        r.source = "fixture:" + name;
        if (inline_given) std::cerr << "note: --fixture given, inline parameters ignored\n";
    } else {
        for (const auto& s : o.a) r.params.lambda.push_back(dqm::parse_complex(s));
        if (o.alpha_param) r.params.lambda.push_back(*o.alpha_param);
        if (o.beta_param) r.params.lambda.push_back(*o.beta_param);
        r.params.q = o.q;
        r.params.phi = o.phi;
        r.source = "inline";
    }
    dqm::validate_params(r.id, r.params);
    return r;
}

json config_json(const Options& o, const Resolved& r) {
    json c;
    c["family"] = std::string(dqm::to_string(r.id));
    c["params"] = dqm::params_to_json(r.id, r.params);
    c["source"] = r.source;
    c["n_max"] = o.n_max;
    c["seed"] = o.seed;
    if (o.tol)
        c["tol"] = *o.tol;
    else
        c["tol"] = nullptr;
    c["suites"] = o.suites.empty() ? std::vector<std::string>{"all"} : o.suites;
    return c;
}

json spec_json(const dqm::FamilySpec& f) {
    return {{"slug", f.slug},
            {"name", f.name},
            {"ks_tag", f.ks_tag},
            {"eta", dqm::to_string(f.eta_kind)},
            {"interval", dqm::to_string(f.interval)},
            {"parameters", f.param_schema}};
}

int cmd_list(const Options& o) {
    auto out = output_kind(o.output);
    if (out == Output::Json) {
        json arr = json::array();
        for (const auto& f : dqm::kFamilySpecs) arr.push_back(spec_json(f));
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    if (out == Output::Csv) {
        std::cout << "slug,name,ks_tag,eta,interval,parameters\n";
        for (const auto& f : dqm::kFamilySpecs)
            std::cout << f.slug << ',' << f.name << ',' << f.ks_tag << ',' << dqm::to_string(f.eta_kind) << ','
                      << dqm::to_string(f.interval) << ",\"" << f.param_schema << "\"\n";
        return 0;
    }
    for (const auto& f : dqm::kFamilySpecs) {
        std::string head = std::string(f.name) + " [" + std::string(f.ks_tag) + "]";
        std::printf("%-36s %-24s eta=%-6s %-9s %s\n", head.c_str(), std::string(f.slug).c_str(),
                    std::string(dqm::to_string(f.eta_kind)).c_str(), std::string(dqm::to_string(f.interval)).c_str(),
                    std::string(f.param_schema).c_str());
    }
    return 0;
}

int cmd_eval(const Options& o) {
    auto r = resolve(o);
    if (o.n < 0 || o.n > dqm::kDegreeCap) throw dqm::ValidationError("--n must lie in [0, 30]");
    auto sys = dqm::make_system(r.id, r.params);
    dqm::Diagnostics diag;
    dqm::cplx w = sys->point(o.x), eta = sys->eta(w);
    dqm::cplx hyp = dqm::eval_poly_hypergeometric(*sys, o.n, w, &diag);
    dqm::cplx rec = dqm::eval_poly_recurrence(*sys, o.n, &diag)(eta);
    double phi0 = sys->ground_state(o.x);
    double scale = std::max({std::abs(hyp), std::abs(rec), 1e-300});
    double disc = std::abs(hyp - rec) / scale;
    double E = sys->energy(o.n);

    auto out = output_kind(o.output);
    if (out == Output::Json) {
        json j;
        j["family"] = std::string(dqm::to_string(r.id));
        j["params"] = dqm::params_to_json(r.id, r.params);
        j["n"] = o.n;
        j["x"] = o.x;
        j["eta"] = dqm::format_complex(eta);
        j["P_hypergeometric"] = dqm::format_complex(hyp);
        j["P_recurrence"] = dqm::format_complex(rec);
        j["relative_discrepancy"] = disc;
        j["phi0"] = phi0;
        j["phi_n"] = dqm::format_complex(phi0 * rec);
        j["E_n"] = E;
        j["warnings"] = diag.warnings;
        std::cout << j.dump(2) << "\n";
    } else if (out == Output::Csv) {
        std::cout << "n,x,P_hyp_re,P_hyp_im,P_rec_re,P_rec_im,discrepancy,phi0,E_n\n";
        std::cout << o.n << ',' << g17(o.x) << ',' << g17(hyp.real()) << ',' << g17(hyp.imag()) << ','
                  << g17(rec.real()) << ',' << g17(rec.imag()) << ',' << g17(disc) << ',' << g17(phi0) << ','
                  << g17(E) << "\n";
    } else {
        std::printf("family      %s (%s)\n", std::string(dqm::to_string(r.id)).c_str(), r.source.c_str());
        std::printf("n, x        %d, %.10g\n", o.n, o.x);
        std::printf("P_n (hyp)   %s\n", dqm::format_complex(hyp).c_str());
        std::printf("P_n (rec)   %s\n", dqm::format_complex(rec).c_str());
        std::printf("discrepancy %.3e\n", disc);
        std::printf("phi_n       %s\n", dqm::format_complex(phi0 * rec).c_str());
        std::printf("E_n         %.17g\n", E);
        for (const auto& w : diag.warnings) std::printf("warning     %s\n", w.c_str());
    }
    return 0;
}

int cmd_table(const Options& o) {
    auto r = resolve(o);
    if (o.n_max < 0 || o.n_max > dqm::kDegreeCap) throw dqm::ValidationError("--n-max must lie in [0, 30]");
    auto sys = dqm::make_system(r.id, r.params);
    std::vector<std::string> cols;
    std::vector<std::vector<std::optional<double>>> rows;
    if (o.table_kind == "spectrum") {
        cols = {"n", "E_n"};
        for (int n = 0; n <= o.n_max; ++n) rows.push_back({double(n), sys->energy(n)});
    } else if (o.table_kind == "recurrence") {
        cols = {"n", "A_n", "B_n", "C_n", "c_n", "a_rec", "b_rec", "f_n", "b_n"};
        for (int n = 0; n <= o.n_max; ++n) {
            auto c = sys->coefficients(n);
            std::optional<double> C;
            if (n > 0) C = c.C_n;
            rows.push_back({double(n), c.A_n, c.B_n, C, c.c_n, c.a_n_rec, c.b_n_rec, c.f_n, c.b_n_shift});
        }
    } else if (o.table_kind == "norms") {
        cols = {"n", "h0", "hn_over_h0", "h0_over_hn", "N_n"};
        for (int n = 0; n <= o.n_max; ++n) {
            auto c = sys->coefficients(n);
            rows.push_back({double(n), c.h0, 1.0 / c.h0_over_hn, c.h0_over_hn, c.N_n});
        }
    } else {
        throw dqm::ValidationError("table kind must be spectrum, recurrence or norms");
    }

    auto out = output_kind(o.output);
    if (out == Output::Json) {
        json arr = json::array();
        for (const auto& row : rows) {
            json j;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (k == 0)
                    j[cols[k]] = int(*row[k]);
                else if (row[k])
                    j[cols[k]] = *row[k];
                else
                    j[cols[k]] = nullptr;
            }
            arr.push_back(j);
        }
        std::cout << json{{"family", std::string(dqm::to_string(r.id))},
                          {"params", dqm::params_to_json(r.id, r.params)},
                          {"kind", o.table_kind},
                          {"rows", arr}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    const char* sep = out == Output::Csv ? "," : "  ";
    for (std::size_t k = 0; k < cols.size(); ++k) std::cout << (k ? sep : "") << cols[k];
    std::cout << "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) std::cout << sep;
            if (k == 0)
                std::cout << int(*row[k]);
            else if (row[k])
                std::cout << g17(*row[k]);
            else
                std::cout << "unused";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_verify(const Options& o) {
    auto r = resolve(o);
    dqm::VerifyConfig cfg;
    cfg.n_max = o.n_max;
    cfg.seed = o.seed;
    cfg.tol = o.tol;
    if (o.tol && !(*o.tol > 0)) throw dqm::ValidationError("--tol must be positive");
    if (o.n_max < 1 || o.n_max > dqm::kDegreeCap) throw dqm::ValidationError("--n-max must lie in [1, 30]");
    std::vector<std::string> suites = o.suites.empty() ? std::vector<std::string>{"all"} : o.suites;
    for (const auto& s : suites)
        if (s != "all" && std::find(dqm::suite_ids().begin(), dqm::suite_ids().end(), s) == dqm::suite_ids().end())
            throw dqm::ValidationError("unknown suite '" + s + "'");

    std::vector<dqm::CheckResult> results;
    for (const auto& s : suites) {
        auto part = dqm::run_suite(s, r.id, r.params, cfg);
        results.insert(results.end(), part.begin(), part.end());
    }
    bool all_ok = std::all_of(results.begin(), results.end(), [](const auto& c) { return c.passed; });

    json report;
    report["version"] = 1;
    report["config"] = config_json(o, r);
    report["results"] = json::array();
    for (const auto& c : results) report["results"].push_back(dqm::to_json(c));
    if (!o.report.empty()) {
        std::ofstream f(o.report);
        if (!f) throw dqm::ValidationError("cannot write report " + o.report);
        f << report.dump(2) << "\n";
    }

    auto out = output_kind(o.output);
    if (out == Output::Json) {
        std::cout << report.dump(2) << "\n";
    } else if (out == Output::Csv) {
        std::cout << "check_id,family,n_min,n_max,max_residual,tolerance,passed,samples_used\n";
        for (const auto& c : results)
            std::cout << c.check_id << ',' << dqm::to_string(c.family) << ',' << c.level_range.first << ','
                      << c.level_range.second << ',' << g17(c.max_residual) << ',' << g17(c.tolerance) << ','
                      << (c.passed ? "true" : "false") << ',' << c.samples_used << "\n";
    } else {
        for (const auto& c : results) {
            std::printf("%-4s %-42s %.3e %s %.1e  levels %d..%d\n", c.passed ? "ok" : "FAIL", c.check_id.c_str(),
                        c.max_residual, c.passed ? "<=" : "> ", c.tolerance, c.level_range.first, c.level_range.second);
            if (!c.sequence.empty()) {
                std::printf("     deviations:");
                for (double d : c.sequence) std::printf(" %.3e", d);
                std::printf("\n");
            }
        }
        std::size_t passed = std::count_if(results.begin(), results.end(), [](const auto& c) { return c.passed; });
        std::printf("%zu/%zu checks passed\n", passed, results.size());
    }
    return all_ok ? 0 : 1;
}

void add_param_flags(CLI::App* sub, Options& o) {
    sub->add_option("family,--family", o.family, "family slug or name");
    sub->add_option("--fixture", o.fixture, "named fixture from the fixtures file");
    sub->add_option("--a", o.a, "parameter a_j as a complex literal, repeatable");
    sub->add_option("--q", o.q, "deformation parameter q");
    sub->add_option("--phi", o.phi, "Meixner-Pollaczek angle");
    sub->add_option("--alpha-param", o.alpha_param, "alpha for q-Jacobi and q-Laguerre");
    sub->add_option("--beta-param", o.beta_param, "beta for q-Jacobi");
    sub->add_option("--output", o.output, "output format")->check(CLI::IsMember({"human", "json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exactly solvable discrete quantum mechanics: evaluate, tabulate and verify"};
    app.require_subcommand(1);
    Options o;

    auto* list = app.add_subcommand("list", "list the eleven families");
    list->add_option("--output", o.output, "output format")->check(CLI::IsMember({"human", "json", "csv"}));
    list->add_flag_callback("--json", [&o] { o.output = "json"; }, "same as --output json");

    auto* eval = app.add_subcommand("eval", "evaluate P_n, phi_n and E_n at a point");
    add_param_flags(eval, o);
    eval->add_option("--n", o.n, "level")->required();
    eval->add_option("--x", o.x, "point in the family interval")->required();

    auto* table = app.add_subcommand("table", "tabulate spectrum, recurrence or norms");
    table->add_option("kind", o.table_kind, "spectrum | recurrence | norms")
        ->required()
        ->check(CLI::IsMember({"spectrum", "recurrence", "norms"}));
    add_param_flags(table, o);
    table->add_option("--n-max", o.n_max, "highest level");

    auto* verify = app.add_subcommand("verify", "run identity suites and report residuals");
    add_param_flags(verify, o);
    verify->add_option("--suite", o.suites, "suite id or all, repeatable");
    verify->add_option("--n-max", o.n_max, "highest level");
    verify->add_option("--tol", o.tol, "tolerance override for every check");
    verify->add_option("--report", o.report, "write the JSON report here");
    verify->add_option("--seed", o.seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*list) return cmd_list(o);
        if (*eval) return cmd_eval(o);
        if (*table) return cmd_table(o);
        if (*verify) return cmd_verify(o);
    } catch (const dqm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
