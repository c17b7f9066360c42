"""Best published lower bounds on the maximal area of small n-gons.

These are imported constants, transcribed from the sources named in the
tags. They are never recomputed here; exact optima are only known for
n <= 12, the rest are the best numerical estimates available. Values
for n >= 32 tagged pinter2018 are known to be suboptimal.
"""

from __future__ import annotations

from typing import NamedTuple


class LiteratureBound(NamedTuple):
    value: float
    sources: tuple[str, ...]


LOWER_BOUNDS: dict[int, LiteratureBound] = {
    6: LiteratureBound(0.6749814429, ("bieri1961", "graham1975", "mossinghoff2006")),
    8: LiteratureBound(0.7268684828, ("audet2002", "mossinghoff2006")),
    10: LiteratureBound(0.7491373459, ("henrion2013", "mossinghoff2006")),
    12: LiteratureBound(0.7607298734, ("henrion2013", "mossinghoff2006")),
    14: LiteratureBound(0.7675310111, ("mossinghoff2006",)),
    16: LiteratureBound(0.7718613220, ("mossinghoff2006",)),
    18: LiteratureBound(0.7747881651, ("mossinghoff2006",)),
    20: LiteratureBound(0.7768587560, ("mossinghoff2006",)),
    22: LiteratureBound(0.7783773308, ("pinter2018",)),
    24: LiteratureBound(0.7795240461, ("pinter2018",)),
    26: LiteratureBound(0.7804111201, ("pinter2018",)),
    28: LiteratureBound(0.7811114192, ("pinter2018",)),
    30: LiteratureBound(0.7816739255, ("pinter2018",)),
    32: LiteratureBound(0.7818946320, ("pinter2018",)),
    34: LiteratureBound(0.7823103007, ("pinter2018",)),
    36: LiteratureBound(0.7826513767, ("pinter2018",)),
    38: LiteratureBound(0.7829526627, ("pinter2018",)),
    40: LiteratureBound(0.7832011589, ("pinter2018",)),
    42: LiteratureBound(0.7834135187, ("pinter2018",)),
    44: LiteratureBound(0.7835966860, ("pinter2018",)),
    46: LiteratureBound(0.7837554636, ("pinter2018",)),
    48: LiteratureBound(0.7838942710, ("pinter2018",)),
    50: LiteratureBound(0.7840161496, ("pinter2018",)),
    52: LiteratureBound(0.7841233641, ("pinter2018",)),
    54: LiteratureBound(0.7842192995, ("pinter2018",)),
    56: LiteratureBound(0.7843044654, ("pinter2018",)),
    58: LiteratureBound(0.7843807534, ("pinter2018",)),
    60: LiteratureBound(0.7844492943, ("pinter2018",)),
    62: LiteratureBound(0.7845111362, ("pinter2018",)),
    64: LiteratureBound(0.7834620877, ("pinter2018",)),
    66: LiteratureBound(0.7845910589, ("pinter2018",)),
    68: LiteratureBound(0.7846139029, ("pinter2018",)),
    70: LiteratureBound(0.7846403575, ("pinter2018",)),
    72: LiteratureBound(0.7847454020, ("pinter2018",)),
    74: LiteratureBound(0.7845564840, ("pinter2018",)),
    76: LiteratureBound(0.7847585719, ("pinter2018",)),
    78: LiteratureBound(0.7845160579, ("pinter2018",)),
    80: LiteratureBound(0.7848252941, ("pinter2018",)),
}


def lower_bound(n: int) -> float | None:
    """Best published lower bound for the maximal area, or None if unknown."""
    entry = LOWER_BOUNDS.get(n)
    return entry.value if entry is not None else None
