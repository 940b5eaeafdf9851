"""Candidate h-parts for subalgebras of one target type.

Tuples are grown one element at a time: the first r-1 entries run over the
classified h-parts of the prefix type (the target's Cartan matrix minus its
last node), the last entry over Weyl orbits of the admissible dominant
representatives.  Three reductions keep the sweep small: the new element's
Gram row against the attached component is forced up to one scalar (the
Dynkin index of the component), elements attached by a single bond must be
conjugate to their neighbour, and whole orbits are skipped when the
character puzzle of (prefix, representative) is unsolvable.  Tuples that
are Weyl-conjugate as sets to an already accepted tuple are dropped before
any construction is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from . import cartan, charpuzzle, weylequiv
from .chevalley import LieAlgebra
from .roots import root_system


@dataclass
class ExtensionData:
    typ: tuple
    canonical: tuple          # canonical Cartan matrix of the target
    ext_matrix: tuple         # same matrix with the peeled node moved last
    order: tuple              # ext position -> canonical node
    prefix_matrix: tuple
    prefix_typ: tuple
    prefix_map: tuple         # canonical node of prefix type -> prefix position
    parent: int | None        # prefix position the new node bonds to (None when isolated)
    bonds: int                # bond multiplicity of that edge (0 when isolated)
    comp_positions: tuple     # ext positions of the new node's component (new node last)
    comp_gram: tuple          # coroot Gram of the component's model algebra


def _chosen_leaf(matrix):
    n = len(matrix)
    leaves = [i for i in range(n) if sum(1 for j in range(n) if j != i and matrix[i][j]) == 1]
    single = []
    for i in leaves:
        j = next(k for k in range(n) if k != i and matrix[i][k])
        if matrix[i][j] * matrix[j][i] == 1:
            single.append(i)
    return min(single) if single else min(leaves)


def extension_data(typ):
    """How to grow the target type from its rank r-1 prefix."""
    typ = cartan.sort_type(typ)
    canon = cartan.canonical_matrix(typ)
    r = len(canon)
    last = typ[-1]
    offset = r - last[1]
    if last[1] == 1:
        r_star = offset
    else:
        r_star = offset + _chosen_leaf(cartan.simple_cartan_matrix(*last))
    order = tuple([i for i in range(r) if i != r_star] + [r_star])
    ext = tuple(tuple(canon[a][b] for b in order) for a in order)
    prefix = tuple(tuple(ext[a][b] for b in range(r - 1)) for a in range(r - 1))
    if r == 1:
        prefix_typ, prefix_map = (), ()
    else:
        prefix_typ, prefix_map = cartan.identify_type(prefix)
    parent = None
    bonds = 0
    for q in range(r - 1):
        if ext[r - 1][q]:
            parent = q
            bonds = ext[r - 1][q] * ext[q][r - 1]
            break
    comp = sorted(cid for cid in range(r) if _connected(ext, r - 1, cid))
    comp = [c for c in comp if c != r - 1] + [r - 1]
    sub = tuple(tuple(ext[a][b] for b in comp) for a in comp)
    comp_gram = root_system(sub).coroot_gram if parent is not None else ()
    return ExtensionData(
        typ, canon, ext, order, prefix, prefix_typ, prefix_map,
        parent, bonds, tuple(comp), comp_gram,
    )


def _connected(matrix, a, b):
    if a == b:
        return True
    n = len(matrix)
    seen = {a}
    stack = [a]
    while stack:
        i = stack.pop()
        for j in range(n):
            if matrix[i][j] and j not in seen:
                if j == b:
                    return True
                seen.add(j)
                stack.append(j)
    return False


@dataclass
class Candidate:
    h_part: tuple
    case: str                 # attached-1bond | attached-multibond | isolated | base
    prefix_index: int
    rep: tuple


class DedupArbiter:
    """Keeps one representative per Weyl-conjugacy class of candidate tuples."""

    def __init__(self, rs, node_cap=10**7):
        self.rs = rs
        self.node_cap = node_cap
        self.buckets = {}

    def _key(self, tup):
        G = weylequiv.tuple_gram(self.rs, tup)
        diag = tuple(sorted(G[i][i] for i in range(len(tup))))
        offd = tuple(sorted(x for i, row in enumerate(G) for j, x in enumerate(row) if i != j))
        return (diag, offd)

    def accept(self, tup):
        key = self._key(tup)
        bucket = self.buckets.setdefault(key, [])
        for seen in bucket:
            if weylequiv.conjugate_sets(self.rs, seen, tup, self.node_cap) is not None:
                return False
        bucket.append(tup)
        return True


def theta_value(rs, data: ExtensionData, prefix):
    """The forced Gram norm of the new element, with the component scale.

    Returns (eta, theta) where eta is the scalar identifying the prefix's
    Gram block with the model coroot Gram of the attached component (the
    Dynkin index of that component) and theta the resulting value each
    swept element must have.  Returns None when the prefix block is not a
    positive multiple of the model Gram, which prunes the tuple.
    """
    if data.parent is None:
        return None
    comp_pref = data.comp_positions[:-1]
    s = len(data.comp_positions)
    B = data.comp_gram
    eta = rs.gram(prefix[comp_pref[0]], prefix[comp_pref[0]]) / B[0][0]
    if eta <= 0:
        return None
    for a in range(s - 1):
        for b in range(s - 1):
            if rs.gram(prefix[comp_pref[a]], prefix[comp_pref[b]]) != eta * B[a][b]:
                return None
    return eta, eta * B[s - 1][s - 1]


def puzzle_prefilter(L: LieAlgebra, target_matrix, h_tuple):
    """False when no module of the target type fits the tuple's marginals,
    in which case the whole Weyl orbit of the last element can be skipped."""
    weights = charpuzzle.smallest_module(L.rs)
    puzzle = charpuzzle.puzzle_of(L.rs, weights, h_tuple)
    return charpuzzle.puzzle_solver(target_matrix).solvable(puzzle)


def extend_candidates(L: LieAlgebra, typ, prefix_tuples, chars, node_cap=10**7, stats=None):
    """Yield deduplicated candidate h-parts for the target type, in the
    node order of ExtensionData.ext_matrix."""
    stats = stats if stats is not None else {}
    for k in ("orbits_swept", "orbit_elements", "killed_gram", "killed_puzzle",
              "prefix_infeasible", "emitted", "dedup_dropped"):
        stats.setdefault(k, 0)
    data = extension_data(typ)
    rs = L.rs
    arbiter = DedupArbiter(rs, node_cap)
    r = len(data.canonical)
    if r == 1:
        for c in chars:
            if arbiter.accept((c.labels,)):
                stats["emitted"] += 1
                yield Candidate((c.labels,), "base", -1, c.labels)
        return
    gram = rs.gram
    comp_pref = data.comp_positions[:-1]
    s = len(data.comp_positions)
    for pidx, prefix in enumerate(prefix_tuples):
        prefix = tuple(tuple(x) for x in prefix)
        if data.parent is not None:
            B = data.comp_gram
            scale = theta_value(rs, data, prefix)
            if scale is None:
                stats["prefix_infeasible"] += 1
                continue
            eta, theta = scale
            if data.bonds == 1:
                reps = [rs.to_dominant(prefix[data.parent])[0]]
            else:
                reps = [c.labels for c in chars if gram(c.labels, c.labels) == theta]
            want_row = [eta * B[s - 1][a] for a in range(s - 1)]
        else:
            reps = [c.labels for c in chars]
            want_row = None
        outside = [q for q in range(r - 1) if q not in comp_pref] if data.parent is not None \
            else list(range(r - 1))
        for rep in reps:
            if not puzzle_prefilter(L, data.ext_matrix, prefix + (tuple(rep),)):
                stats["killed_puzzle"] += 1
                continue
            stats["orbits_swept"] += 1
            hits = []

            def visit(v):
                stats["orbit_elements"] += 1
                if data.parent is not None:
                    for a in range(s - 1):
                        if gram(v, prefix[comp_pref[a]]) != want_row[a]:
                            stats["killed_gram"] += 1
                            return
                for q in outside:
                    if gram(v, prefix[q]):
                        stats["killed_gram"] += 1
                        return
                hits.append(v)

            dom, _ = rs.to_dominant(rep)
            rs.orbit_iterate(dom, visit)
            for v in hits:
                tup = prefix + (tuple(v),)
                if arbiter.accept(tup):
                    stats["emitted"] += 1
                    case = (
                        "attached-1bond" if data.bonds == 1
                        else "attached-multibond" if data.parent is not None
                        else "isolated"
                    )
                    yield Candidate(tup, case, pidx, tuple(rep))
                else:
                    stats["dedup_dropped"] += 1
