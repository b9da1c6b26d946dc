// walks one family up its parameter ladder and prints the spectrum at each rung
#include <cstdio>
#include <string>

#include "dqm/dqm.hpp"

using namespace dqm;

int main(int argc, char** argv) {
    std::string slug = argc > 1 ? argv[1] : "askey-wilson";
    auto id = family_from_string(slug);
    if (!id) {
        std::fprintf(stderr, "unknown family %s\n", slug.c_str());
        return 2;
    }
    auto fs = FixtureStore::load_default();
    auto s = make_system(*id, fs.get(*id));
    std::printf("%s (%s)\n", std::string(s->spec().name).c_str(), std::string(s->spec().ks_tag).c_str());
    for (int k = 0; k < 4; ++k) {
        auto sk = s->shifted(k);
        std::printf("shift %d:", k);
        for (int n = 0; n < 5; ++n) std::printf(" %10.6f", sk->energy(n));
        std::printf("\n");
    }
    std::printf("E_n(lambda) - E_1(lambda) against kappa E_(n-1)(lambda+delta):\n");
    auto s1 = s->shifted(1);
    for (int n = 1; n < 6; ++n)
        std::printf("  n=%d  %.15g  %.15g\n", n, s->energy(n) - s->energy(1), s->kappa() * s1->energy(n - 1));
    auto r = check_shape_invariance(*s, s->sample_points(20));
    std::printf("pointwise shape invariance residual %.3e (%s)\n", r.max_residual, r.passed ? "ok" : "failed");
    return r.passed ? 0 : 1;
}
