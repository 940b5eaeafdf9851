"""Characteristics of the nonzero nilpotent orbits, found by exact sl2 tests.

A dominant integer label vector h is the characteristic of a nilpotent
orbit exactly when it embeds in an sl2-triple (h, e, f) with e of weight 2
and f of weight -2 relative to h.  Candidates are swept over all dominant
{0,1,2} label vectors; each accepted vector is certified by an explicit
triple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .chevalley import LieAlgebra, SL2Triple
from .util import derive_seed


@dataclass(frozen=True)
class Characteristic:
    labels: tuple
    orbit_size: int


def _graded_root_indices(L: LieAlgebra, labels, value):
    rs = L.rs
    return [idx for root, idx in L.index_of_root.items() if rs.root_eval(root, labels) == value]


def _bracket_basis_vector(L: LieAlgebra, basis_idx, vec):
    """[b_i, vec] computed through the sparse table, over Fractions."""
    out = [Fraction(0)] * L.dim
    table = L._table
    for j, c in enumerate(vec):
        if c:
            entries = table.get((basis_idx, j))
            if entries:
                for k, s in entries:
                    out[k] += c * s
    return out


def _is_dense(L: LieAlgebra, g0_idx, g2_idx, e_vec):
    """Check [g(0), e] = g(2) by an exact rank computation."""
    cols = {idx: pos for pos, idx in enumerate(g2_idx)}
    rows = []
    for zi in g0_idx:
        img = _bracket_basis_vector(L, zi, e_vec)
        row = [Fraction(0)] * len(g2_idx)
        for k, c in enumerate(img):
            if c:
                row[cols[k]] = c
        rows.append(row)
    return linalg.rank(rows, len(g2_idx)) == len(g2_idx)


def _solve_partner(L: LieAlgebra, gm2_idx, e_vec, h_vec):
    """Find f in the weight -2 space with [e, f] = h, or None."""
    images = []
    for j in gm2_idx:
        col = _bracket_basis_vector(L, j, e_vec)
        images.append([-c for c in col])
    support = sorted({k for img in images for k, c in enumerate(img) if c}
                     | {k for k, c in enumerate(h_vec) if c})
    rows = [[img[k] for img in images] for k in support]
    rhs = [h_vec[k] for k in support]
    sol = linalg.solve(rows, rhs, len(gm2_idx))
    if sol is None:
        return None
    f = [Fraction(0)] * L.dim
    for j, c in zip(gm2_idx, sol):
        f[j] = c
    return f


def admissible_test(L: LieAlgebra, labels, seed=0, trials=25, bound=3):
    """An exact sl2-triple with the given h, or None if none exists.

    A weight-2 element in the dense orbit of the weight-0 centralizer makes
    the test conclusive: either its partner equation is solvable, or no
    triple through h exists at all.  Random trials look for such an element;
    if none certifies density, every spanning candidate is still tried for a
    partner, which can only add (sound) positives.
    """
    labels = tuple(labels)
    g2 = _graded_root_indices(L, labels, 2)
    if not g2:
        return None
    g0 = _graded_root_indices(L, labels, 0)
    g0 = g0 + [2 * L.n_pos + i for i in range(L.rs.rank)]
    gm2 = _graded_root_indices(L, labels, -2)
    h_vec = L.cartan_to_vector(labels, rational=True)
    rng = random.Random(derive_seed("admissible", seed, labels))
    tried = []
    for attempt in range(trials + 75):
        b = bound if attempt < trials else bound + 2
        coeffs = [Fraction(rng.randint(-b, b)) for _ in g2]
        if not any(coeffs):
            continue
        e = [Fraction(0)] * L.dim
        for j, c in zip(g2, coeffs):
            e[j] = c
        if _is_dense(L, g0, g2, e):
            f = _solve_partner(L, gm2, e, h_vec)
            if f is None:
                return None
            return SL2Triple(tuple(h_vec), tuple(e), tuple(f))
        tried.append(e)
    # No density certificate; fall back to solving the partner equation for a
    # spanning family of candidates.  Any solution is a genuine triple.
    for j in g2:
        e = [Fraction(0)] * L.dim
        e[j] = Fraction(1)
        tried.append(e)
    for e in tried:
        f = _solve_partner(L, gm2, e, h_vec)
        if f is not None:
            return SL2Triple(tuple(h_vec), tuple(e), tuple(f))
    return None


def characteristics(L: LieAlgebra, seed=0, label_bound=2):
    """One dominant representative per nonzero nilpotent orbit."""
    out = []
    l = L.rs.rank
    for labels in product(range(label_bound + 1), repeat=l):
        if not any(labels):
            continue
        if admissible_test(L, labels, seed=seed) is not None:
            out.append(Characteristic(labels, L.rs.orbit_iterate(labels)))
    out.sort(key=lambda c: (sum(c.labels), c.labels))
    return out
