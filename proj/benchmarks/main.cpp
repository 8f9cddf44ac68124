#include <benchmark/benchmark.h>

// The distribution's static benchmark_main is LTO bytecode from another
// compiler release, so the entry point is built here.
BENCHMARK_MAIN();
