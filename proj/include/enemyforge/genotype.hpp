#ifndef ENEMYFORGE_GENOTYPE_HPP
#define ENEMYFORGE_GENOTYPE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "enemyforge/rng.hpp"

namespace enemyforge {

// Archive row axis. Ordinals are load-bearing: they index archive cells and
// appear in every exported file, so the order is frozen.
enum class MovementType : int {
    None = 0,
    Random = 1,
    Random1D = 2,
    Flee = 3,
    Flee1D = 4,
    Follow = 5,
    Follow1D = 6,
};

// Archive column axis, same deal.
enum class WeaponType : int {
    Barehand = 0,
    Sword = 1,
    Bow = 2,
    BombThrower = 3,
    Shield = 4,
    CureSpell = 5,
};

inline constexpr int kMovementCount = 7;
inline constexpr int kWeaponCount = 6;

constexpr int ordinal(MovementType m) noexcept { return static_cast<int>(m); }
constexpr int ordinal(WeaponType w) noexcept { return static_cast<int>(w); }

std::string_view to_string(MovementType m);
std::string_view to_string(WeaponType w);
// Throw std::invalid_argument on unknown names.
MovementType movement_from_string(std::string_view name);
WeaponType weapon_from_string(std::string_view name);

enum class AttrKind { integer, real, nominal };
enum class AttrSegment { behavior, weapon };

struct AttributeSpec {
    std::string_view name;
    AttrKind kind;
    double lower; // inclusive; nominal entries carry their ordinal range
    double upper; // inclusive
    AttrSegment segment;
};

// Gene indices, in genotype order. The behavior/weapon segment boundary
// sits between rest_time and weapon_type; the fixed-point crossover swaps
// whole segments across it.
enum class Attr : int {
    health = 0,
    damage,
    attack_speed,
    movement_type,
    movement_speed,
    active_time,
    rest_time,
    weapon_type,
    projectile_speed,
};

inline constexpr int kGeneCount = 9;

inline constexpr std::array<AttributeSpec, kGeneCount> kAttributeTable{{
    {"health", AttrKind::integer, 1, 5, AttrSegment::behavior},
    {"damage", AttrKind::integer, 1, 4, AttrSegment::behavior},
    {"attack_speed", AttrKind::real, 0.75, 4.0, AttrSegment::behavior},
    {"movement_type", AttrKind::nominal, 0, kMovementCount - 1, AttrSegment::behavior},
    {"movement_speed", AttrKind::real, 0.8, 2.8, AttrSegment::behavior},
    {"active_time", AttrKind::real, 1.5, 10.0, AttrSegment::behavior},
    {"rest_time", AttrKind::real, 0.3, 1.5, AttrSegment::behavior},
    {"weapon_type", AttrKind::nominal, 0, kWeaponCount - 1, AttrSegment::weapon},
    {"projectile_speed", AttrKind::real, 1.0, 4.0, AttrSegment::weapon},
}};

constexpr const AttributeSpec& attribute_spec(Attr a) noexcept {
    return kAttributeTable[static_cast<int>(a)];
}

// The evolved stat-block. projectile_speed is present for every weapon;
// it is simply inert in the difficulty of non-ranged enemies.
struct EnemyGenotype {
    int health;
    int damage;
    double attack_speed;
    MovementType movement_type;
    double movement_speed;
    double active_time;
    double rest_time;
    WeaponType weapon_type;
    double projectile_speed;

    bool operator==(const EnemyGenotype&) const = default;
};

// Archive coordinates of a genotype; bijective with the 42 cells.
struct BehaviorDescriptor {
    MovementType movement;
    WeaponType weapon;

    bool operator==(const BehaviorDescriptor&) const = default;
};

constexpr BehaviorDescriptor descriptor(const EnemyGenotype& e) noexcept {
    return {e.movement_type, e.weapon_type};
}

// Weapon class partition: melee / ranged / healer are exhaustive and
// disjoint.
constexpr bool is_melee(WeaponType w) noexcept {
    return w == WeaponType::Barehand || w == WeaponType::Sword ||
           w == WeaponType::Shield;
}
constexpr bool is_ranged(WeaponType w) noexcept {
    return w == WeaponType::Bow || w == WeaponType::BombThrower;
}
constexpr bool is_healer(WeaponType w) noexcept {
    return w == WeaponType::CureSpell;
}

constexpr bool is_melee(const EnemyGenotype& e) noexcept { return is_melee(e.weapon_type); }
constexpr bool is_ranged(const EnemyGenotype& e) noexcept { return is_ranged(e.weapon_type); }
constexpr bool is_healer(const EnemyGenotype& e) noexcept { return is_healer(e.weapon_type); }

// Movement predicates used by the gameplay weighting. is_follow is Follow
// only; Follow1D is deliberately excluded.
struct MovementPredicates {
    bool is_follow;
    bool is_follow1d;
    bool is_flee;
    bool is_flee1d;
    bool is_any_flee;
    bool is_any_random;
    bool has_no_move;
};

constexpr MovementPredicates movement_predicates(MovementType m) noexcept {
    MovementPredicates p{};
    p.is_follow = m == MovementType::Follow;
    p.is_follow1d = m == MovementType::Follow1D;
    p.is_flee = m == MovementType::Flee;
    p.is_flee1d = m == MovementType::Flee1D;
    p.is_any_flee = p.is_flee || p.is_flee1d;
    p.is_any_random = m == MovementType::Random || m == MovementType::Random1D;
    p.has_no_move = m == MovementType::None;
    return p;
}

constexpr MovementPredicates movement_predicates(const EnemyGenotype& e) noexcept {
    return movement_predicates(e.movement_type);
}

// Redraw one gene uniformly from its full range / value list.
void redraw_gene(EnemyGenotype& e, Attr a, Rng& rng);

// Every gene drawn uniformly, in genotype order.
EnemyGenotype random_enemy(Rng& rng);

// All numeric genes inside their closed ranges.
bool is_valid(const EnemyGenotype& e);

// Numeric-gene access for the blend crossover; Attr must not be nominal.
double numeric_gene(const EnemyGenotype& e, Attr a);
// Rounds to nearest and clamps for integer genes.
void set_numeric_gene(EnemyGenotype& e, Attr a, double value);

nlohmann::ordered_json enemy_to_json(const EnemyGenotype& e);
// Throws std::invalid_argument on missing keys, unknown names or
// out-of-range values.
EnemyGenotype enemy_from_json(const nlohmann::json& j);

} // namespace enemyforge

#endif
