"""Weyl conjugacy of tuples of Cartan elements, and linear equivalence.

Two subalgebras given by canonical generators with h-parts in the fixed
Cartan subalgebra are linearly equivalent exactly when their h-part sets
are conjugate under the Weyl group.  The ordered decision reduces the
leading elements to the dominant chamber and recurses inside the
stabiliser, which is itself the Weyl group of a root subsystem; the
unordered decision backtracks over Gram-compatible permutations.
"""

from __future__ import annotations

from .errors import GramMismatch, Undecided
from .roots import RootSystem, word_inverse


def tuple_gram(rs: RootSystem, tup):
    return tuple(tuple(rs.gram(a, b) for b in tup) for a in tup)


def _simple_generators(rs: RootSystem):
    gens = []
    for i in range(rs.rank):
        root = tuple(1 if j == i else 0 for j in range(rs.rank))
        gens.append((root, rs.coreflection_labels(root), (i,)))
    return gens


def _dominate(rs, gens, labels):
    """Reduce into the dominant chamber of the subsystem spanned by gens."""
    cur = tuple(labels)
    word = []
    while True:
        pick = None
        for gi, (root, _, _) in enumerate(gens):
            if rs.root_eval(root, cur) < 0:
                pick = gi
                break
        if pick is None:
            return cur, tuple(word)
        root, q, w = gens[pick]
        cur = rs.reflect_by_root(q, root, cur)
        word.extend(w)


def _stabilizer_generators(rs, gens, dom_labels, wb_word):
    """Simple system of the stabiliser of the element dominated by wb_word."""
    inv = word_inverse(wb_word)
    out = []
    for root, _, w in gens:
        if rs.root_eval(root, dom_labels) == 0:
            r2 = rs.apply_word_to_root(inv, root)
            out.append((r2, rs.coreflection_labels(r2), tuple(wb_word) + w + inv))
    return out


def _conjugate_rec(rs, gens, A, B):
    if not A:
        return ()
    da, wa = _dominate(rs, gens, A[0])
    db, wb = _dominate(rs, gens, B[0])
    if da != db:
        return None
    u = wa + word_inverse(wb)
    rest = [rs.apply_word(u, a) for a in A[1:]]
    sub = _stabilizer_generators(rs, gens, db, wb)
    tail = _conjugate_rec(rs, sub, rest, B[1:])
    if tail is None:
        return None
    return u + tail


def conjugate_ordered(rs: RootSystem, A, B):
    """A Weyl word w with w(A_i) = B_i for all i, or None.

    The tuples must already have equal Gram matrices; a mismatch is a
    caller bug and raises GramMismatch.
    """
    A = [tuple(a) for a in A]
    B = [tuple(b) for b in B]
    if len(A) != len(B):
        raise GramMismatch("tuples of different length")
    if tuple_gram(rs, A) != tuple_gram(rs, B):
        raise GramMismatch("tuples have different Gram matrices")
    return _conjugate_rec(rs, _simple_generators(rs), A, B)


def conjugate_sets(rs: RootSystem, A, B, node_cap=10**7):
    """A pair (word, perm) with word(A[perm[i]]) = B[i] for all i, or None.

    Only permutations preserving the Gram matrix are explored; the
    backtracking node count is capped and Undecided is raised beyond it.
    """
    A = [tuple(a) for a in A]
    B = [tuple(b) for b in B]
    if len(A) != len(B):
        return None
    r = len(A)
    if r == 0:
        return ((), ())
    GA = tuple_gram(rs, A)
    GB = tuple_gram(rs, B)
    if sorted(GA[i][i] for i in range(r)) != sorted(GB[i][i] for i in range(r)):
        return None
    if sorted(x for row in GA for x in row) != sorted(x for row in GB for x in row):
        return None
    perm = [None] * r
    used = [False] * r
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == r:
            word = conjugate_ordered(rs, [A[perm[k]] for k in range(r)], B)
            if word is not None:
                return word
            return None
        for cand in range(r):
            if used[cand]:
                continue
            nodes += 1
            if nodes > node_cap:
                raise Undecided(f"permutation search exceeded {node_cap} nodes")
            ok = GA[cand][cand] == GB[i][i]
            if ok:
                for j in range(i):
                    pj = perm[j]
                    if GA[pj][cand] != GB[j][i] or GA[cand][pj] != GB[i][j]:
                        ok = False
                        break
            if not ok:
                continue
            perm[i] = cand
            used[cand] = True
            word = rec(i + 1)
            if word is not None:
                return word
            used[cand] = False
            perm[i] = None
        return None

    word = rec(0)
    if word is None:
        return None
    return word, tuple(perm)


def linearly_equivalent(L, sub1, sub2, node_cap=10**7):
    """Linear equivalence of two canonically generated subalgebra records.

    The records only need ``cartan_matrix`` and ``h_part`` attributes, with
    h-parts given in label coordinates over the fixed Cartan subalgebra.
    """
    c1 = tuple(map(tuple, sub1.cartan_matrix))
    c2 = tuple(map(tuple, sub2.cartan_matrix))
    if c1 != c2:
        return False
    return conjugate_sets(L.rs, sub1.h_part, sub2.h_part, node_cap) is not None
