"""Weight multiplicities of highest-weight modules and character puzzles.

Weights are handled in fundamental-weight coordinates, where the i-th
coordinate of a weight is the eigenvalue of the i-th canonical Cartan
generator.  The Weyl action on weights coincides with the label action of
the dual root system (transposed Cartan matrix), so orbit and dominance
machinery is reused from there.

A puzzle records, for each index i of a target type, the eigenvalue
distribution of h_i on a module: a sum of one-variable Laurent polynomials
with non-negative integer coefficients.  It is solvable when some multiset
of irreducible modules of the target type produces exactly these marginals.
"""

from __future__ import annotations

from fractions import Fraction

from . import cartan
from .errors import NonIntegralEigenvalue
from .roots import RootSystem, root_system

_DIAGRAMS = {}
_SMALLEST = {}


def _weight_gram(rs: RootSystem):
    Ci = rs.cartan_inverse
    d = rs.d
    n = rs.rank
    return tuple(tuple(Ci[i][j] * d[j] for j in range(n)) for i in range(n))


def _form(G, u, v):
    tot = Fraction(0)
    for i, a in enumerate(u):
        if a:
            row = G[i]
            tot += a * sum(row[j] * b for j, b in enumerate(v) if b)
    return tot


def _root_weight_coords(rs: RootSystem, root):
    C = rs.cartan_matrix
    n = rs.rank
    return tuple(sum(root[k] * C[k][j] for k in range(n)) for j in range(n))


def _alpha_coords(rs: RootSystem, weight):
    Ci = rs.cartan_inverse
    n = rs.rank
    return tuple(sum(weight[j] * Ci[j][k] for j in range(n)) for k in range(n))


def weyl_dimension(rs: RootSystem, lam):
    """Exact dimension of the irreducible module with highest weight lam."""
    G = _weight_gram(rs)
    rho = (1,) * rs.rank
    lr = tuple(a + 1 for a in lam)
    num = Fraction(1)
    den = Fraction(1)
    for root in rs.positive_roots:
        rw = _root_weight_coords(rs, root)
        num *= _form(G, lr, rw)
        den *= _form(G, rho, rw)
    dim = num / den
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def weight_multiplicities(rs_or_matrix, lam):
    """Full weight diagram {weight: multiplicity} of the module V(lam).

    Multiplicities come from the Freudenthal recursion on the dominant
    weights; each Weyl orbit then shares its dominant multiplicity.
    """
    rs = rs_or_matrix if isinstance(rs_or_matrix, RootSystem) else root_system(rs_or_matrix)
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError("highest weight must be dominant")
    key = (rs.cartan_matrix, lam)
    got = _DIAGRAMS.get(key)
    if got is not None:
        return got
    dual = rs.dual()
    n = rs.rank
    C = rs.cartan_matrix

    members = {lam}
    def is_member(w):
        dom, _ = dual.to_dominant(w)
        diff = tuple(a - b for a, b in zip(lam, dom))
        return all(c >= 0 for c in _alpha_coords(rs, diff))

    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n):
                child = tuple(w[j] - C[i][j] for j in range(n))
                if child not in members and is_member(child):
                    members.add(child)
                    nxt.append(child)
        frontier = nxt

    dominants = [w for w in members if all(c >= 0 for c in w)]
    dominants.sort(key=lambda w: sum(_alpha_coords(rs, tuple(a - b for a, b in zip(lam, w)))))
    G = _weight_gram(rs)
    rho = (1,) * n
    lr = tuple(a + 1 for a in lam)
    top = _form(G, lr, lr)
    mult = {lam: 1}
    pos_w = [_root_weight_coords(rs, r) for r in rs.positive_roots]

    def mult_of(w):
        if w not in members:
            return 0
        dom, _ = dual.to_dominant(w)
        return mult[dom]

    for w in dominants:
        if w == lam:
            continue
        acc = Fraction(0)
        for aw in pos_w:
            k = 1
            while True:
                up = tuple(a + k * b for a, b in zip(w, aw))
                m = mult_of(up)
                if m == 0:
                    break
                acc += m * _form(G, up, aw)
                k += 1
        wr = tuple(a + 1 for a in w)
        denom = top - _form(G, wr, wr)
        val = 2 * acc / denom
        assert val.denominator == 1 and val > 0
        mult[w] = int(val)

    full = {}
    for w in members:
        dom, _ = dual.to_dominant(w)
        full[w] = mult[dom]
    total = sum(full.values())
    assert total == weyl_dimension(rs, lam), "Freudenthal mass check failed"
    _DIAGRAMS[key] = full
    return full


def marginals(weights, r, eigenvalue):
    """The r marginal distributions of a weight diagram.

    ``eigenvalue(i, weight)`` gives the (integer) eigenvalue of index i on a
    weight; the result is a tuple of sorted (exponent, multiplicity) tuples.
    """
    out = []
    for i in range(r):
        acc = {}
        for w, m in weights.items():
            e = eigenvalue(i, w)
            acc[e] = acc.get(e, 0) + m
        out.append(tuple(sorted(acc.items())))
    return tuple(out)


def module_puzzle(rs: RootSystem, lam):
    """Puzzle of the irreducible module V(lam) of the target type."""
    weights = weight_multiplicities(rs, lam)
    return marginals(weights, rs.rank, lambda i, w: w[i])


def puzzle_of(ambient_rs: RootSystem, module_weights, h_tuple):
    """Puzzle of an ambient module relative to a tuple of Cartan elements.

    Each ambient weight contributes its value on h_i to the i-th marginal;
    the values must be integers, otherwise the tuple cannot consist of
    admissible elements and NonIntegralEigenvalue is raised.
    """
    evals = [ambient_rs.coroot_coordinates(labels) for labels in h_tuple]

    def eigenvalue(i, w):
        u = evals[i]
        v = sum(w[k] * u[k] for k in range(len(u)) if w[k])
        v = Fraction(v)
        if v.denominator != 1:
            raise NonIntegralEigenvalue(f"weight {w} takes value {v} on element {i}")
        return int(v)

    return marginals(module_weights, len(h_tuple), eigenvalue)


def smallest_module(rs: RootSystem):
    """Weight diagram of the smallest nonzero module of the (semisimple) type.

    For one simple factor this is the fundamental module of least dimension;
    for several factors, the direct sum of the factors' smallest modules.
    """
    key = rs.cartan_matrix
    got = _SMALLEST.get(key)
    if got is not None:
        return got
    n = rs.rank
    total = {}
    for comp in rs.components:
        sub = root_system(tuple(tuple(rs.cartan_matrix[i][j] for j in comp) for i in comp))
        best = None
        for i in range(len(comp)):
            lam = tuple(1 if j == i else 0 for j in range(len(comp)))
            dim = weyl_dimension(sub, lam)
            if best is None or dim < best[0]:
                best = (dim, lam)
        for w, m in weight_multiplicities(sub, best[1]).items():
            full = [0] * n
            for pos, val in zip(comp, w):
                full[pos] = val
            full = tuple(full)
            total[full] = total.get(full, 0) + m
    _SMALLEST[key] = total
    return total


class PuzzleSolver:
    """Decides solvability of puzzles against one target type."""

    def __init__(self, target_matrix, cache_limit=10**6):
        self.rs = root_system(target_matrix)
        self.rank = self.rs.rank
        self.cache_limit = cache_limit
        self._memo = {}

    def _candidates(self, puzzle, mass):
        pools = []
        for marg in puzzle:
            exps = sorted({e for e, m in marg if e >= 0}, reverse=True)
            if not exps:
                return []
            pools.append(exps)
        out = []

        def rec(i, cur):
            if i == self.rank:
                out.append(tuple(cur))
                return
            for e in pools[i]:
                cur.append(e)
                rec(i + 1, cur)
                cur.pop()

        rec(0, [])
        keyed = []
        for lam in out:
            dim = weyl_dimension(self.rs, lam)
            if dim <= mass:
                keyed.append((max(lam), dim, lam))
        keyed.sort(reverse=True)
        return [k[2] for k in keyed]

    @staticmethod
    def _subtract(puzzle, other):
        out = []
        for f, g in zip(puzzle, other):
            acc = dict(f)
            for e, m in g:
                v = acc.get(e, 0) - m
                if v < 0:
                    return None
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
            out.append(tuple(sorted(acc.items())))
        return tuple(out)

    def solvable(self, puzzle):
        """True when some multiset of irreducible modules matches the puzzle."""
        puzzle = tuple(tuple(m) for m in puzzle)
        masses = {sum(m for _, m in marg) for marg in puzzle}
        if len(masses) != 1:
            return False
        mass = masses.pop()
        if mass == 0:
            return all(not marg for marg in puzzle)
        return self._solve(puzzle, mass)

    def _solve(self, puzzle, mass):
        got = self._memo.get(puzzle)
        if got is not None:
            return got
        result = False
        for lam in self._candidates(puzzle, mass):
            sub = module_puzzle(self.rs, lam)
            rest = self._subtract(puzzle, sub)
            if rest is None:
                continue
            rest_mass = mass - weyl_dimension(self.rs, lam)
            if rest_mass == 0:
                if all(not marg for marg in rest):
                    result = True
                    break
                continue
            if self._solve(rest, rest_mass):
                result = True
                break
        if len(self._memo) >= self.cache_limit:
            self._memo.clear()
        self._memo[puzzle] = result
        return result


_SOLVERS = {}


def puzzle_solver(target_matrix):
    key = tuple(map(tuple, target_matrix))
    got = _SOLVERS.get(key)
    if got is None:
        got = PuzzleSolver(key)
        _SOLVERS[key] = got
    return got
