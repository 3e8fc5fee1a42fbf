#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace txlab {

// Shortest representation that round-trips a double ("%.17g").
std::string format_g17(double v);

// Worker count for grid sweeps: TRANSDUCER_LAB_THREADS, where 0 or unset
// means hardware concurrency.
std::size_t thread_budget();

// Splits on commas; the CSV formats here never quote fields.
std::vector<std::string> split_csv_line(const std::string& line);

std::string trim(const std::string& s);

}  // namespace txlab
