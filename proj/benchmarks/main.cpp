// The packaged benchmark_main archive carries LTO bytecode that does not link
// with every GCC, so the entry point lives here.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
