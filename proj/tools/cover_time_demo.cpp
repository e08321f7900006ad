// Cover times of the four-cycle chain under each policy, bundled priorities.
#include <cstdio>

#include <walkbound.hpp>

int main() {
    using namespace walkbound;
    for (int k : {2, 4, 8, 16}) {
        auto inst = four_cycle_chain(k);
        std::printf("k=%-3d n=%-4zu", k, inst.g.n());
        for (policy p : all_policies) {
            auto tb = inst.tie_breaker_for(p);
            auto r = run_until_covered(inst.g, p, tb, inst.start, 10'000'000);
            std::printf("  %s=%llu", std::string(to_string(p)).c_str(),
                        static_cast<unsigned long long>(r.metrics.cover_time.value_or(0)));
        }
        std::printf("\n");
    }
}
