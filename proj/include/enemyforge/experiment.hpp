#ifndef ENEMYFORGE_EXPERIMENT_HPP
#define ENEMYFORGE_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enemyforge/evolution.hpp"

namespace enemyforge {

struct BatchConfig {
    std::vector<DifficultyGoal> goals;
    int runs_per_goal = 100;
    EvolutionConfig base_config{}; // goal and seed are overridden per run
    std::uint64_t base_seed = 0;
    int parallelism = 1;
};

void validate(const BatchConfig& config);

// Per-cell aggregate over the runs of one goal. n counts the runs whose
// final archive had the cell occupied; std_dev uses the n-1 denominator and
// is 0 by convention when n < 2.
struct CellStats {
    MovementType movement;
    WeaponType weapon;
    double mean;
    double std_dev;
    double min;
    double max;
    int n;

    bool operator==(const CellStats&) const = default;
};

struct TimingStats {
    DifficultyGoal goal;
    double mean;
    double min;
    double max;
    double std_dev;
};

struct GoalStats {
    DifficultyGoal goal;
    std::array<CellStats, kCellCount> cells; // row-major, movement-major
    TimingStats timing;
};

struct BatchResult {
    std::vector<GoalStats> per_goal; // in config.goals order
    BatchConfig config;
};

// A failed run, tagged with enough context to re-execute it standalone.
struct RunError : std::runtime_error {
    RunError(double goal, int run_index, std::uint64_t seed,
             const std::string& what);
    double goal;
    int run_index;
    std::uint64_t seed;
};

// Seed for run `run_index` of `goal`: splitmix64 finalizer chained over the
// base seed, the goal's bit pattern, and the run index. Pure, so any single
// run from a batch can be re-executed on its own.
std::uint64_t deterministic_mix(std::uint64_t base_seed, DifficultyGoal goal,
                                int run_index);

// Executes runs_per_goal independent evolve calls per goal, OpenMP-parallel
// up to config.parallelism, and aggregates. Statistics are computed from the
// sorted multiset of per-run values, so the result is identical at any
// parallelism level.
BatchResult run_batch(const BatchConfig& config);

// Straight-line sequential reference: same seeds, plain loop, naive two-pass
// aggregation. Kept for testing and benchmarking against run_batch.
BatchResult run_batch_serial(const BatchConfig& config);

// --- reference comparison -------------------------------------------------

struct ReferenceEntry {
    double goal;
    MovementType movement;
    WeaponType weapon;
    double mean;
    double std_dev;
};

struct ReferenceTable {
    std::vector<ReferenceEntry> entries;

    // nullptr when absent.
    const ReferenceEntry* find(double goal, MovementType m, WeaponType w) const;
};

// CSV with header `goal,movement,weapon,mean,std`. Throws
// std::invalid_argument on malformed input.
ReferenceTable load_reference_csv(std::istream& in);
ReferenceTable load_reference_csv_file(const std::string& path);

struct MissingCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TolerancePolicy {
    double floor = 0.15;
    double std_multiplier = 1.0;
};

struct CellComparison {
    MovementType movement;
    WeaponType weapon;
    double our_mean;
    double reference_mean;
    double reference_std;
    double tolerance;
    bool pass;
};

struct ComparisonReport {
    double goal;
    std::vector<CellComparison> cells;
    int passed;
    int failed;
};

// Per-cell pass iff |mean_ours - mean_ref| <= max(floor, mult * std_ref).
// Throws MissingCell when the reference lacks a cell present in the stats.
ComparisonReport compare_to_reference(const GoalStats& stats,
                                      const ReferenceTable& reference,
                                      TolerancePolicy policy = {});

// --- emitters ---------------------------------------------------------------

enum class GridMode { report, machine }; // mean±std at 2 decimals vs raw means

// Header `movement,barehand,sword,bow,bomb_thrower,shield,cure_spell`, one
// row per movement type in ordinal order.
std::string fitness_grid_csv(const GoalStats& stats, GridMode mode);

// Header `difficulty,average,minimum,maximum,std`, one row per goal.
std::string timing_csv(const BatchResult& result);

nlohmann::ordered_json cell_stats_to_json(const CellStats& c);
nlohmann::ordered_json goal_report_json(const GoalStats& stats,
                                        const BatchConfig& config);

} // namespace enemyforge

#endif
