#include <benchmark/benchmark.h>

#include <vector>

#include "revconf/event_structures.hpp"
#include "revconf/oracle.hpp"
#include "revconf/residuation.hpp"
#include "revconf/stability.hpp"
#include "revconf/switching.hpp"

namespace {

using namespace revconf;

config_structure sigma_example() {
    event_table t({"a", "b", "c", "d"});
    auto m = [&](std::initializer_list<const char*> names) {
        event_set x = 0;
        for (const char* n : names) x |= single_event(t.index_checked(n));
        return x;
    };
    return config_structure(
        t, {0, m({"a"}), m({"b"}), m({"a", "b"}), m({"a", "c"}), m({"b", "d"})});
}

void bm_enumerate(benchmark::State& state) {
    generator_spec spec;
    spec.universe_size = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        std::size_t count = 0;
        for_each_structure(spec, [&](const config_structure&) {
            ++count;
            return true;
        });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(bm_enumerate)->Arg(3)->Arg(4);

void bm_stability_sweep(benchmark::State& state) {
    generator_spec spec;
    spec.universe_size = static_cast<std::size_t>(state.range(0));
    std::vector<config_structure> all = enumerate_structures(spec);
    for (auto _ : state) {
        std::size_t stable = 0;
        for (const auto& c : all)
            if (is_stable(c)) ++stable;
        benchmark::DoNotOptimize(stable);
    }
}
BENCHMARK(bm_stability_sweep)->Arg(3)->Arg(4);

void bm_orbit(benchmark::State& state) {
    config_structure c = sigma_example();
    for (auto _ : state) {
        auto result = orbit(c);
        benchmark::DoNotOptimize(result.members.size());
    }
}
BENCHMARK(bm_orbit);

void bm_functor_e(benchmark::State& state) {
    config_structure c = sigma_example();
    for (auto _ : state) {
        auto es = functor_e(c);
        benchmark::DoNotOptimize(es.pes.size());
    }
}
BENCHMARK(bm_functor_e);

void bm_adequacy(benchmark::State& state) {
    config_structure c = sigma_example();
    for (auto _ : state) {
        for (event_set x : c.configs()) {
            auto r = adequacy_check(c, x);
            benchmark::DoNotOptimize(r.pass);
        }
    }
}
BENCHMARK(bm_adequacy);

void bm_check_theorem(benchmark::State& state) {
    generator_spec spec;
    spec.universe_size = 3;
    for (auto _ : state) {
        auto report = check_theorem("stable-orbits", spec, 1);
        benchmark::DoNotOptimize(report.instances);
    }
}
BENCHMARK(bm_check_theorem);

}  // namespace

BENCHMARK_MAIN();
