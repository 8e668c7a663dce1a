"""Fixed eight-color palette used by every environment and renderer.

Names and hex values are frozen so that prompts and rendered assets stay
byte-stable across releases.
"""

PALETTE: tuple[str, ...] = (
    "white",
    "yellow",
    "green",
    "blue",
    "red",
    "orange",
    "purple",
    "cyan",
)

_HEX = {
    "white": "#F2F2F2",
    "yellow": "#F4D03F",
    "green": "#27AE60",
    "blue": "#2E86DE",
    "red": "#E74C3C",
    "orange": "#E67E22",
    "purple": "#8E44AD",
    "cyan": "#17A2B8",
}

# Standard six-color cube coloring (body face order: up, down, north, south,
# east, west). Used as the reference die in tests and docs.
DICE_COLORING: tuple[str, ...] = ("white", "yellow", "green", "blue", "red", "orange")


def color_hex(name: str) -> str:
    return _HEX[name]
