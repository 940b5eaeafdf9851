"""Small shared helpers: deterministic seeds and exact-number serialization."""

from __future__ import annotations

import zlib
from fractions import Fraction


def derive_seed(*parts):
    """A stable small integer derived from the reprs of the parts.

    Used to give every randomized subcomputation its own reproducible
    stream, independent of process layout or scheduling.
    """
    blob = "|".join(repr(p) for p in parts).encode()
    return zlib.crc32(blob)


def rational_str(q):
    return str(Fraction(q))


def parse_rational(s):
    return Fraction(s)
