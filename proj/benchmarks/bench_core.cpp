#include <benchmark/benchmark.h>

#include <random>

#include "equizeta/pipeline.hpp"
#include "equizeta/polytope.hpp"
#include "equizeta/repr_ring.hpp"
#include "equizeta/zmat.hpp"

using namespace equizeta;

namespace {

ZMat random_matrix(long n, int seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    ZMat m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(i, j) = dist(rng);
    return m;
}

ProblemSpec e8_spec(GroupChoice gc) {
    ProblemSpec s;
    s.variables = {"x", "y", "z"};
    s.terms = {{{2, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 5}, 1}};
    s.group_choice = gc;
    s.truncation = 12;
    return s;
}

} // namespace

static void BM_SmithNormalForm6(benchmark::State& state) {
    ZMat m = random_matrix(6, 42);
    for (auto _ : state) {
        auto s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.rank);
    }
}
BENCHMARK(BM_SmithNormalForm6);

static void BM_CanonicalizeSubgroup(benchmark::State& state) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(0, 59);
    std::vector<TorsionVector> gens;
    for (int g = 0; g < 3; ++g) {
        std::vector<mpq_class> c;
        for (int i = 0; i < 4; ++i) c.emplace_back(num(rng), 60);
        for (auto& q : c) q.canonicalize();
        gens.emplace_back(c);
    }
    for (auto _ : state) {
        auto grp = FiniteDiagonalGroup::canonicalize(4, gens);
        benchmark::DoNotOptimize(grp.order());
    }
}
BENCHMARK(BM_CanonicalizeSubgroup);

static void BM_NormalizedVolume3d(benchmark::State& state) {
    std::vector<LatticePoint> pts = {
        {0, 0, 0}, {4, 0, 0}, {0, 5, 0}, {0, 0, 6}, {2, 2, 1}, {1, 3, 2},
    };
    for (auto _ : state) {
        auto v = normalized_volume(pts, 3);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_NormalizedVolume3d);

static void BM_VerifyPipelineE8Full(benchmark::State& state) {
    ProblemSpec spec = e8_spec(GroupChoice::FullSymmetry);
    for (auto _ : state) {
        auto r = run_pipeline(spec);
        benchmark::DoNotOptimize(r.ok);
    }
}
BENCHMARK(BM_VerifyPipelineE8Full);

static void BM_PoincareExpandDepth30(benchmark::State& state) {
    ProblemSpec spec = e8_spec(GroupChoice::MonodromyCyclic);
    auto r = run_pipeline(spec);
    auto closed = poincare_closed(PoincareKind::Hypersurface, r.poly, r.ext);
    for (auto _ : state) {
        auto s = expand(closed, 30);
        benchmark::DoNotOptimize(s.coeffs().size());
    }
}
BENCHMARK(BM_PoincareExpandDepth30);

BENCHMARK_MAIN();
