"""Brute-force oracles used across the test suite."""

from itertools import permutations

_W_CACHE = {}


def weyl_matrices(rs):
    """Every Weyl group element as an integer matrix acting on label vectors."""
    key = rs.cartan_matrix
    if key in _W_CACHE:
        return _W_CACHE[key]
    l = rs.rank
    C = rs.cartan_matrix

    def gen_matrix(i):
        rows = []
        for j in range(l):
            row = [1 if k == j else 0 for k in range(l)]
            row[i] -= C[j][i]
            rows.append(tuple(row))
        return tuple(rows)

    def mul(A, B):
        return tuple(
            tuple(sum(A[j][k] * B[k][m] for k in range(l)) for m in range(l))
            for j in range(l)
        )

    gens = [gen_matrix(i) for i in range(l)]
    ident = tuple(tuple(1 if a == b else 0 for b in range(l)) for a in range(l))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = mul(g, M)
                if P not in seen:
                    seen.add(P)
                    nxt.append(P)
        frontier = nxt
    out = sorted(seen)
    _W_CACHE[key] = out
    return out


def apply_matrix(M, v):
    return tuple(sum(M[j][k] * v[k] for k in range(len(v))) for j in range(len(v)))


def naive_orbit(rs, labels):
    """Closure of a label vector under all simple reflections."""
    seen = {tuple(labels)}
    frontier = [tuple(labels)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                w = rs.reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def brute_conjugate_sets(rs, W, A, B):
    """Exhaustive search over all Weyl elements and all permutations."""
    r = len(A)
    if r != len(B):
        return None
    for M in W:
        imgs = [apply_matrix(M, a) for a in A]
        for perm in permutations(range(r)):
            if all(imgs[perm[i]] == tuple(B[i]) for i in range(r)):
                return M, perm
    return None


def closed_subsystems_by_growth(rs):
    """All closed symmetric root subsystems, found by additive closure growth.

    This is an independent check of the production enumeration: subsystems
    are grown from single root pairs by repeatedly adjoining one more root
    pair and closing under addition and negation.
    """
    pos = list(rs.positive_roots)
    allroots = set(pos) | {tuple(-c for c in r) for r in pos}

    def close(seed):
        roots = set(seed)
        changed = True
        while changed:
            changed = False
            for a in list(roots):
                na = tuple(-c for c in a)
                if na not in roots:
                    roots.add(na)
                    changed = True
                for b in list(roots):
                    s = tuple(x + y for x, y in zip(a, b))
                    if s in allroots and s not in roots:
                        roots.add(s)
                        changed = True
        return frozenset(roots)

    found = set()
    frontier = []
    for r in pos:
        s = close([r])
        if s not in found:
            found.add(s)
            frontier.append(s)
    while frontier:
        nxt = []
        for s in frontier:
            for r in pos:
                if r in s:
                    continue
                grown = close(set(s) | {r})
                if grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return found


def subsystem_simples(rs, roots):
    """Indecomposable positive elements of a closed symmetric subsystem."""
    plus = sorted(r for r in roots if all(c >= 0 for c in r))
    plus_set = set(plus)
    simples = []
    for r in plus:
        decomposable = False
        for a in plus:
            b = tuple(x - y for x, y in zip(r, a))
            if b != r and b in plus_set and a != r:
                decomposable = True
                break
        if not decomposable:
            simples.append(r)
    return simples
