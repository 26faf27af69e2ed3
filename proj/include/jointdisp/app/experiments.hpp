#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jointdisp/io/io.hpp"

namespace jd::app {

struct ExperimentSpec {
    std::string name;
    io::json parameters = io::json::object();  // missing keys take defaults
    std::uint64_t seed = 1;
};

struct ExperimentOutput {
    io::RunReport report;
    std::vector<std::pair<std::string, io::CsvTable>> csv;  // file stem, table
};

const std::vector<std::string>& experiment_names();

// Validates parameters (InputError) and runs. Deterministic in (spec, seed).
ExperimentOutput run_experiment(const ExperimentSpec& spec);

// Generic analysis of an input document with powers up to k.
io::RunReport analyze_document(const io::InputDocument& in, int k, const MinimizeOptions& opts = {});

// Seeded instance generators shared with the acceptance run.
using Rng = std::mt19937_64;
tree::FreeWord random_reduced_word(Rng& rng, int rank, int min_len, int max_len);
GeneratingSet<tree::FreeTreeGeometry> random_free_set(Rng& rng, int rank, int max_size, int max_len);
// S with L(S) > 0 and two elements that do not commute, so the axes do not all share their ends
GeneratingSet<tree::FreeTreeGeometry> random_noncyclic_free_set(Rng& rng, int rank, int max_size, int max_len);
h2::Moebius random_sl2r(Rng& rng, double range = 3.0);
matrix::MatrixIsometry random_sl2z(Rng& rng, int bound);

}  // namespace jd::app
