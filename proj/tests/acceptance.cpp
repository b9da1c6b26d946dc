#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "dqm/dqm.hpp"

namespace {

using namespace dqm;

struct Outcome {
    bool passed = true;
    double worst = 0;
    std::string worst_id;
    std::string detail;
    int checks = 0;
};

struct Criterion {
    int number;
    const char* title;
    std::vector<std::string> suites;
    std::vector<std::pair<FamilyId, std::string>> targets;
    double time_budget = 0;
};

std::vector<std::pair<FamilyId, std::string>> every_family() {
    std::vector<std::pair<FamilyId, std::string>> v;
    for (auto id : kAllFamilies) v.emplace_back(id, "default");
    return v;
}

Outcome run(const Criterion& c, const FixtureStore& fs) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& [id, name] : c.targets) {
        for (const auto& suite : c.suites) {
            std::vector<CheckResult> rs;
            try {
                rs = run_suite(suite, id, fs.get(id, name));
            } catch (const Error& e) {
                o.passed = false;
                o.detail += std::string(to_string(id)) + ": " + e.what() + "; ";
                continue;
            }
            for (const auto& r : rs) {
                ++o.checks;
                double scaled = r.max_residual / r.tolerance;
                if (!(scaled <= o.worst)) {
                    o.worst = scaled;
                    o.worst_id = std::string(to_string(id)) + "/" + r.check_id;
                }
                if (!r.passed) {
                    o.passed = false;
                    char buf[256];
                    std::snprintf(buf, sizeof buf, "%s/%s %.3e > %.0e", std::string(to_string(id)).c_str(),
                                  r.check_id.c_str(), r.max_residual, r.tolerance);
                    o.detail += buf;
                    if (!r.sequence.empty()) {
                        o.detail += " [";
                        for (std::size_t k = 0; k < r.sequence.size(); ++k) {
                            std::snprintf(buf, sizeof buf, "%s%.3e", k ? " " : "", r.sequence[k]);
                            o.detail += buf;
                        }
                        o.detail += "]";
                    }
                    o.detail += "; ";
                }
            }
            if (rs.empty()) {
                o.passed = false;
                o.detail += std::string(to_string(id)) + ": suite " + suite + " produced no checks; ";
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_budget > 0 && secs > c.time_budget) {
        o.passed = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.1f s over %.0f s budget; ", secs, c.time_budget);
        o.detail += buf;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    o.detail = std::string(buf) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

std::vector<Criterion> criteria() {
    auto all = every_family();
    return {
        {1, "dual-path polynomial evaluation, n<=10, 20 points, rel 1e-9", {"dual_path"}, all, 10.0},
        {2, "eigen equation and lower-triangular action on eta^n, rel 1e-9", {"eigen"}, all},
        {3, "shape invariance, multiplicative and additive forms, rel 1e-10", {"shape_invariance"}, all},
        {4, "closure relation, expanded conditions and dual closure, 1e-9", {"closure", "dual_closure"}, all},
        {5, "forward/backward shifts, f_n b_(n-1) = E_n, Rodrigues chain, n<=8, rel 1e-9", {"shifts"}, all},
        {6, "ladder actions, commutators and q-oscillator relations, rel 1e-10", {"ladder"}, all},
        {7, "orthogonality Gram matrix n<=6 and closed-form h0 values", {"orthogonality"}, all, 60.0},
        {8, "hermiticity of H on five polynomial pairs, rel 1e-6", {"hermiticity"}, all},
        {9, "coherent states: annihilation 1e-7, closed forms 1e-8", {"coherent"}, all},
        {10,
         "lambda-shift operators X, X^dagger (Meixner-Pollaczek phi=pi/2, continuous dual Hahn), rel 1e-9",
         {"lambda_shift"},
         {{FamilyId::MeixnerPollaczek, "half-pi"}, {FamilyId::ContinuousDualHahn, "default"}}},
        {11, "q->1 limit of Askey-Wilson to Wilson along L = 20, 40, 80", {"limit"}, {{FamilyId::Wilson, "default"}}},
        {12, "spectrum generated by E_1 at shifted parameters, rel 1e-10", {"spectrum"}, all},
    };
}

bool report(const Criterion& c, const FixtureStore& fs) {
    auto o = run(c, fs);
    std::printf("%s  %02d  %s | %d checks, worst %.2e of tolerance (%s) | %s\n", o.passed ? "PASS" : "FAIL", c.number,
                c.title, o.checks, o.worst, o.worst_id.c_str(), o.detail.c_str());
    std::fflush(stdout);
    return o.passed;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: dqm_acceptance [--criterion N]\n");
            return 2;
        }
    }
    FixtureStore fs;
    try {
        fs = FixtureStore::load_default();
    } catch (const Error& e) {
        std::fprintf(stderr, "cannot load fixtures: %s\n", e.what());
        return 2;
    }
    int failures = 0, ran = 0;
    for (const auto& c : criteria()) {
        if (only && c.number != only) continue;
        ++ran;
        if (!report(c, fs)) ++failures;
    }
    if (!ran) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return failures ? 1 : 0;
}
