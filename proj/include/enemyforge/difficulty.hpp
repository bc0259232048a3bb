#ifndef ENEMYFORGE_DIFFICULTY_HPP
#define ENEMYFORGE_DIFFICULTY_HPP

#include <optional>
#include <string_view>

#include <json.hpp>

#include "enemyforge/genotype.hpp"

namespace enemyforge {

// Target difficulty the search converges to. Unitless, must be positive.
struct DifficultyGoal {
    double value;

    bool operator==(const DifficultyGoal&) const = default;
};

// Named presets: very-easy=11, easy=13, medium=15, hard=17, very-hard=19.
std::optional<DifficultyGoal> preset_goal(std::string_view name);

struct DifficultyBreakdown {
    double health_factor;
    double movement_factor;
    double strength_factor;
    double gameplay_factor;
    double total; // gameplay_factor * (health + movement + strength)
};

// Scope of the healer-protection weight. The published piecewise form reads
// as halving every enemy that is not an evasive healer, which would cap all
// melee difficulty at half its intended ceiling; `resolved` (the default
// everywhere) applies the 0.5 penalty only to healers with non-evasive
// movement, keeping each gameplay weight scoped to its own enemy class.
// `strict_literal` is kept for side-by-side comparison.
enum class HealerPenaltyRule { resolved, strict_literal };

double health_factor(const EnemyGenotype& e);
double movement_factor(const EnemyGenotype& e);
double strength_factor(const EnemyGenotype& e);
double gameplay_factor(const EnemyGenotype& e,
                       HealerPenaltyRule rule = HealerPenaltyRule::resolved);

DifficultyBreakdown difficulty(const EnemyGenotype& e,
                               HealerPenaltyRule rule = HealerPenaltyRule::resolved);

// Absolute distance between goal and computed difficulty; minimized by the
// search.
double fitness(const EnemyGenotype& e, DifficultyGoal goal);

// Supremum of difficulty over all valid genotypes with this descriptor.
// Every attribute is monotone within a fixed descriptor except
// movement_speed for ranged Follow enemies, which is scanned on a dense
// grid.
double max_cell_difficulty(BehaviorDescriptor desc);

nlohmann::ordered_json breakdown_to_json(const DifficultyBreakdown& b);

} // namespace enemyforge

#endif
