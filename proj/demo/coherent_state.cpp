// coherent state of the q-Hermite system, summed term by term and compared with its generating function
#include <cstdio>

#include "dqm/dqm.hpp"

using namespace dqm;

int main() {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    cplx alpha(0.25, 0.1);
    std::printf("  x      terms  partial sum                         closed form                         annihilation\n");
    for (double x : {0.3, 0.9, 1.5, 2.2, 2.9}) {
        Diagnostics d;
        auto ev = check_coherent(*s, alpha, x, 60, &d);
        cplx cf = ev.closed_form.value_or(cplx(NAN, NAN));
        std::printf("%5.2f  %5d  %+.15f%+.15fi  %+.15f%+.15fi  %.2e\n", x, ev.truncation_N, ev.partial_sum.real(),
                    ev.partial_sum.imag(), cf.real(), cf.imag(), ev.annihilation_residual);
        for (const auto& w : d.warnings) std::printf("  warning: %s\n", w.c_str());
    }
    return 0;
}
