#include "enemyforge/difficulty.hpp"

#include <algorithm>
#include <cmath>

namespace enemyforge {

std::optional<DifficultyGoal> preset_goal(std::string_view name) {
    if (name == "very-easy") return DifficultyGoal{11.0};
    if (name == "easy") return DifficultyGoal{13.0};
    if (name == "medium") return DifficultyGoal{15.0};
    if (name == "hard") return DifficultyGoal{17.0};
    if (name == "very-hard") return DifficultyGoal{19.0};
    return std::nullopt;
}

double health_factor(const EnemyGenotype& e) { return 2.0 * e.health; }

double movement_factor(const EnemyGenotype& e) {
    return e.movement_speed + e.active_time / 3.0 + 1.0 / e.rest_time;
}

double strength_factor(const EnemyGenotype& e) {
    const double s1 = is_melee(e) ? e.damage * e.movement_speed : 1.0;
    const double s2 = is_ranged(e) ? 3.0 * (e.attack_speed * e.projectile_speed) : 1.0;
    const double s3 = is_healer(e) ? 2.0 * e.attack_speed : 1.0;
    return s1 * s2 * s3;
}

double gameplay_factor(const EnemyGenotype& e, HealerPenaltyRule rule) {
    const MovementPredicates m = movement_predicates(e);
    const bool melee = is_melee(e);
    const bool ranged = is_ranged(e);
    const bool healer = is_healer(e);

    double g1 = 1.0;
    if (melee && m.is_follow)
        g1 = 1.25;
    else if (melee && (m.is_any_flee || m.has_no_move))
        g1 = 0.5;

    double g2 = 1.0;
    if (ranged && m.is_flee)
        g2 = 1.25;
    else if (ranged && m.is_flee1d)
        g2 = 1.15;
    else if (ranged && m.has_no_move)
        g2 = 0.5;

    const double g3 =
        (ranged && m.is_follow) ? 0.5 / (2.0 * e.movement_speed) : 1.0;

    const bool evasive = m.is_any_random || m.is_any_flee;
    double g4 = 1.0;
    if (rule == HealerPenaltyRule::resolved) {
        if (healer && !evasive) g4 = 0.5;
    } else {
        if (!(healer && evasive)) g4 = 0.5;
    }

    const double g5 = healer ? 1.15 * e.movement_speed : 1.0;

    return g1 * g2 * g3 * g4 * g5;
}

DifficultyBreakdown difficulty(const EnemyGenotype& e, HealerPenaltyRule rule) {
    DifficultyBreakdown b{};
    b.health_factor = health_factor(e);
    b.movement_factor = movement_factor(e);
    b.strength_factor = strength_factor(e);
    b.gameplay_factor = gameplay_factor(e, rule);
    b.total = b.gameplay_factor *
              (b.health_factor + b.movement_factor + b.strength_factor);
    return b;
}

double fitness(const EnemyGenotype& e, DifficultyGoal goal) {
    return std::abs(goal.value - difficulty(e).total);
}

double max_cell_difficulty(BehaviorDescriptor desc) {
    // Corner genotype: every attribute at its difficulty-maximizing bound
    // for a fixed descriptor. rest_time enters as 1/rest_time, so its lower
    // bound maximizes; everything else maximizes at the upper bound.
    EnemyGenotype e{};
    e.movement_type = desc.movement;
    e.weapon_type = desc.weapon;
    e.health = static_cast<int>(attribute_spec(Attr::health).upper);
    e.damage = static_cast<int>(attribute_spec(Attr::damage).upper);
    e.attack_speed = attribute_spec(Attr::attack_speed).upper;
    e.movement_speed = attribute_spec(Attr::movement_speed).upper;
    e.active_time = attribute_spec(Attr::active_time).upper;
    e.rest_time = attribute_spec(Attr::rest_time).lower;
    e.projectile_speed = attribute_spec(Attr::projectile_speed).upper;

    if (is_ranged(desc.weapon) && desc.movement == MovementType::Follow) {
        // The only non-monotone coordinate: movement speed raises the
        // movement factor but divides the gameplay factor. Scan it.
        const double lo = attribute_spec(Attr::movement_speed).lower;
        const double hi = attribute_spec(Attr::movement_speed).upper;
        constexpr int kSamples = 10000;
        double best = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            e.movement_speed = lo + (hi - lo) * i / (kSamples - 1.0);
            best = std::max(best, difficulty(e).total);
        }
        return best;
    }
    return difficulty(e).total;
}

nlohmann::ordered_json breakdown_to_json(const DifficultyBreakdown& b) {
    nlohmann::ordered_json j;
    j["health_factor"] = b.health_factor;
    j["movement_factor"] = b.movement_factor;
    j["strength_factor"] = b.strength_factor;
    j["gameplay_factor"] = b.gameplay_factor;
    j["total"] = b.total;
    return j;
}

} // namespace enemyforge
