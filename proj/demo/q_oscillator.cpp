// ladder checks for the q-Hermite and big q-Hermite systems
#include <cstdio>

#include "dqm/dqm.hpp"

using namespace dqm;

int main() {
    auto fs = FixtureStore::load_default();
    for (auto id : {FamilyId::ContinuousQHermite, FamilyId::ContinuousBigQHermite}) {
        std::printf("%s\n", std::string(family_spec(id).name).c_str());
        for (const auto& r : run_suite("ladder", id, fs.get(id)))
            std::printf("  %-40s %.3e  %s\n", r.check_id.c_str(), r.max_residual, r.passed ? "ok" : "FAIL");
    }
    auto s = make_system(FamilyId::ContinuousQHermite, fs.get(FamilyId::ContinuousQHermite));
    std::printf("spectrum q^-n - 1 at q = %.2f:", s->q());
    for (int n = 0; n < 6; ++n) std::printf(" %.4f", s->energy(n));
    std::printf("\n");
    return 0;
}
