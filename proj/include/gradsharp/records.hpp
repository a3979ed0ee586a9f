#pragma once

#include "gradsharp/synth.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gradsharp {

/// Fixed column order of the benchmark record CSV.
const std::vector<std::string>& bench_csv_columns();

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// One JSON object per line with "scene", "degradation", "report" and "error" members.
void write_bench_jsonl(std::ostream& out, const std::vector<BenchRecord>& records);

} // namespace gradsharp
