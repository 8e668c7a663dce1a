"""Puzzle environments: state machines, solvers, and instance generators."""

TASKS: tuple[str, ...] = (
    "cube_roll",
    "rubiks",
    "mental_rotation",
    "sokoban",
    "klotski",
)

PLAN_TASKS: frozenset[str] = frozenset({"sokoban", "klotski"})

TIERS: tuple[str, ...] = ("easy", "medium", "hard")

CATEGORY_BY_TASK: dict[str, str] = {
    "mental_rotation": "visual-centric",
    "cube_roll": "linguistic-centric",
    "rubiks": "linguistic-centric",
    "sokoban": "collaborative",
    "klotski": "collaborative",
}
