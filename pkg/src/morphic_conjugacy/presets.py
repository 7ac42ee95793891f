"""Built-in morphism tables for the 5-letter construction.

``F`` and ``G`` generate w5 = G(F^omega(0)); ``f`` and ``g`` are the
reference tables of F^3 and G o F^2, kept as literal data so that the
composition check compares against them rather than against itself.
"""

from __future__ import annotations

from .morphism import Morphism
from .words import CODED, UNDERLYING

F_IMAGES = {"0": "01", "1": "2", "2": "03", "3": "24", "4": "23"}
G_IMAGES = {"0": "abcd", "1": "", "2": "eacd", "3": "becd", "4": "be"}

f_IMAGES = {
    "0": "01203",
    "1": "0124",
    "2": "0120323",
    "3": "01240324",
    "4": "01240323",
}
g_IMAGES = {
    "0": "abcdeacd",
    "1": "abcdbecd",
    "2": "abcdeacdbe",
    "3": "abcdbecdeacdbecd",
    "4": "abcdbecdeacdbe",
}

SEED = "0"
UNDERLYING_MARKER = "01"
CODED_MARKER = "ab"

F = Morphism(UNDERLYING, UNDERLYING, F_IMAGES, name="F")
G = Morphism(UNDERLYING, CODED, G_IMAGES, name="G")
f = Morphism(UNDERLYING, UNDERLYING, f_IMAGES, name="f")
g = Morphism(UNDERLYING, CODED, g_IMAGES, name="g")

PRESETS = {"paper": {"F": F, "G": G}}
