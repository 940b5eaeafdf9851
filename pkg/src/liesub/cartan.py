"""Cartan matrices of the finite semisimple types.

Matrices follow the convention C(i,j) = <alpha_i, alpha_j^v> =
2(alpha_i, alpha_j)/(alpha_j, alpha_j), with Bourbaki node numbering for
the simple types.  A semisimple type is a sorted tuple of (letter, rank)
pairs; its canonical matrix is the block diagonal of the simple blocks.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidCartanMatrix

_POSITIVE_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}


def simple_cartan_matrix(letter, rank):
    """Bourbaki Cartan matrix of one simple type, as a tuple of int tuples."""
    l = rank
    C = [[0] * l for _ in range(l)]
    for i in range(l):
        C[i][i] = 2

    def chain(i, j):
        C[i][j] = C[j][i] = -1

    if letter == "A":
        for i in range(l - 1):
            chain(i, i + 1)
    elif letter == "B":
        if l < 2:
            raise ValueError("B needs rank >= 2")
        for i in range(l - 2):
            chain(i, i + 1)
        C[l - 2][l - 1] = -2
        C[l - 1][l - 2] = -1
    elif letter == "C":
        if l < 3:
            raise ValueError("C needs rank >= 3")
        for i in range(l - 2):
            chain(i, i + 1)
        C[l - 2][l - 1] = -1
        C[l - 1][l - 2] = -2
    elif letter == "D":
        if l < 4:
            raise ValueError("D needs rank >= 4")
        for i in range(l - 3):
            chain(i, i + 1)
        chain(l - 3, l - 2)
        chain(l - 3, l - 1)
    elif letter == "E":
        if l not in (6, 7, 8):
            raise ValueError("E needs rank 6, 7 or 8")
        chain(0, 2)
        chain(1, 3)
        for i in range(2, l - 1):
            chain(i, i + 1)
    elif letter == "F":
        if l != 4:
            raise ValueError("F needs rank 4")
        chain(0, 1)
        chain(2, 3)
        C[1][2] = -2
        C[2][1] = -1
    elif letter == "G":
        if l != 2:
            raise ValueError("G needs rank 2")
        C[0][1] = -1
        C[1][0] = -3
    else:
        raise ValueError(f"unknown simple type {letter}{rank}")
    return tuple(tuple(row) for row in C)


def positive_root_count(letter, rank):
    return _POSITIVE_COUNTS[letter](rank)


def simple_dimension(letter, rank):
    return 2 * positive_root_count(letter, rank) + rank


def type_rank(typ):
    return sum(r for _, r in typ)


def type_dimension(typ):
    return sum(simple_dimension(le, r) for le, r in typ)


def _canonical_simple(letter, rank):
    """Resolve the low-rank coincidences to one canonical name."""
    if rank == 1:
        return ("A", 1)
    if letter == "C" and rank == 2:
        return ("B", 2)
    if letter == "D":
        if rank == 2:
            return None   # splits into A1+A1, handled by caller
        if rank == 3:
            return ("A", 3)
    return (letter, rank)


def sort_type(components):
    return tuple(sorted(components, key=lambda c: (c[1], c[0])))


def parse_type(text):
    """Parse a type string like "A2", "A1+B2" or "2A1+B2" into a sorted tuple."""
    comps = []
    for part in re.split(r"\+", text.replace(" ", "")):
        m = re.fullmatch(r"(\d*)([A-Ga-g])(\d+)", part)
        if not m:
            raise ValueError(f"cannot parse type component {part!r}")
        count = int(m.group(1)) if m.group(1) else 1
        letter = m.group(2).upper()
        rank = int(m.group(3))
        if count < 1 or rank < 1:
            raise ValueError(f"bad type component {part!r}")
        canon = _canonical_simple(letter, rank)
        for _ in range(count):
            if canon is None:   # D2
                comps.extend([("A", 1), ("A", 1)])
            else:
                simple_cartan_matrix(*canon)   # validates rank bounds
                comps.append(canon)
    if not comps:
        raise ValueError("empty type")
    return sort_type(comps)


def type_label(typ):
    """Canonical display label, e.g. "2A1+B2"."""
    out = []
    i = 0
    comps = list(typ)
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        n = j - i
        letter, rank = comps[i]
        out.append(f"{n if n > 1 else ''}{letter}{rank}")
        i = j
    return "+".join(out)


def canonical_matrix(typ):
    """Block-diagonal Cartan matrix of a (sorted) semisimple type."""
    blocks = [simple_cartan_matrix(le, r) for le, r in typ]
    n = sum(len(b) for b in blocks)
    C = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                C[at + i][at + j] = b[i][j]
        at += k
    return tuple(tuple(row) for row in C)


def components(matrix):
    """Connected components of the Dynkin graph, each a sorted index list."""
    n = len(matrix)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and matrix[i][j]:
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(comp))
    return out


def validate_cartan_matrix(matrix):
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise InvalidCartanMatrix("matrix is not square")
    for i in range(n):
        if matrix[i][i] != 2:
            raise InvalidCartanMatrix("diagonal entries must be 2")
        for j in range(n):
            if i == j:
                continue
            v = matrix[i][j]
            if not isinstance(v, int) or v > 0:
                raise InvalidCartanMatrix("off-diagonal entries must be non-positive integers")
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise InvalidCartanMatrix("zero pattern must be symmetric")


def _match_component(matrix, idxs, canon):
    """Backtracking isomorphism search: canonical node a -> matrix index."""
    k = len(idxs)
    assign = [None] * k
    used = [False] * k

    def ok(a, pos):
        for b in range(a):
            q = assign[b]
            if canon[a][b] != matrix[idxs[pos]][idxs[q]] or canon[b][a] != matrix[idxs[q]][idxs[pos]]:
                return False
        return True

    def rec(a):
        if a == k:
            return True
        for pos in range(k):
            if not used[pos] and ok(a, pos):
                assign[a] = pos
                used[pos] = True
                if rec(a + 1):
                    return True
                used[pos] = False
                assign[a] = None
        return False

    if rec(0):
        return [idxs[p] for p in assign]
    return None


def _candidate_simples(rank):
    cands = [("A", rank)]
    if rank >= 2:
        cands.append(("B", rank))
    if rank >= 3:
        cands.append(("C", rank))
    if rank >= 4:
        cands.append(("D", rank))
    if rank in (6, 7, 8):
        cands.append(("E", rank))
    if rank == 4:
        cands.append(("F", 4))
    if rank == 2:
        cands.append(("G", 2))
    return cands


def all_isomorphisms(matrix_a, idxs_a, matrix_b, idxs_b):
    """Every node bijection idxs_a -> idxs_b preserving the Cartan entries."""
    k = len(idxs_a)
    if len(idxs_b) != k:
        return []
    out = []
    assign = [None] * k
    used = [False] * k

    def ok(a, pos):
        for b in range(a):
            q = assign[b]
            if (
                matrix_a[idxs_a[a]][idxs_a[b]] != matrix_b[idxs_b[pos]][idxs_b[q]]
                or matrix_a[idxs_a[b]][idxs_a[a]] != matrix_b[idxs_b[q]][idxs_b[pos]]
            ):
                return False
        return True

    def rec(a):
        if a == k:
            out.append({idxs_a[t]: idxs_b[assign[t]] for t in range(k)})
            return
        for pos in range(k):
            if not used[pos] and matrix_a[idxs_a[a]][idxs_a[a]] == matrix_b[idxs_b[pos]][idxs_b[pos]] and ok(a, pos):
                assign[a] = pos
                used[pos] = True
                rec(a + 1)
                used[pos] = False
                assign[a] = None

    rec(0)
    return out


def identify_type(matrix):
    """Recognise a Cartan matrix: returns (type, mapping).

    ``mapping[p]`` is the matrix index realising node p of the canonical
    matrix of the returned (sorted) type.  Raises InvalidCartanMatrix if the
    matrix is not of finite semisimple type.
    """
    validate_cartan_matrix(matrix)
    found = []
    for idxs in components(matrix):
        hit = None
        for letter, rank in _candidate_simples(len(idxs)):
            try:
                canon = simple_cartan_matrix(letter, rank)
            except ValueError:
                continue
            m = _match_component(matrix, idxs, canon)
            if m is not None:
                hit = ((letter, rank), m)
                break
        if hit is None:
            raise InvalidCartanMatrix(f"component {idxs} is not of finite type")
        found.append(hit)
    found.sort(key=lambda h: (h[0][1], h[0][0], min(h[1])))
    typ = tuple(h[0] for h in found)
    mapping = []
    for _, m in found:
        mapping.extend(m)
    return typ, tuple(mapping)


def symmetrizer(matrix):
    """Half squared root lengths d_i, normalised to minimum 1 per component."""
    n = len(matrix)
    d = [None] * n
    for comp in components(matrix):
        d[comp[0]] = Fraction(1)
        frontier = [comp[0]]
        while frontier:
            i = frontier.pop()
            for j in comp:
                if d[j] is None and matrix[i][j]:
                    # C(i,j) d_j = C(j,i) d_i
                    d[j] = d[i] * Fraction(matrix[j][i], matrix[i][j])
                    frontier.append(j)
        lo = min(d[j] for j in comp)
        for j in comp:
            d[j] /= lo
    return tuple(d)
