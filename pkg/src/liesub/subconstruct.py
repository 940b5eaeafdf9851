"""Completing an h-part to a full canonical generator set, or refuting it.

Given a target Cartan matrix and admissible elements h_1, ..., h_r in the
fixed Cartan subalgebra, the linear method walks one index at a time: pick
a weight vector in the dense orbit of the level-zero centralizer (random
small integer trials, certified by an exact rank check) and solve a linear
system for its partner.  Wherever that breaks down, the remaining
generators are solved for jointly, with indeterminate coefficients, by a
Groebner basis computation over the active field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, polysolve
from .chevalley import CanonicalGenSet, LieAlgebra
from .errors import DegenerateHPart, LiesubError
from .polysolve import MultiPoly, NeedsExtension, NoSolution, Solutions
from .util import derive_seed


@dataclass
class ConstructConfig:
    seed: int = 0
    trials: int = 25
    coeff_bound: int = 3
    gb_pair_budget: int = 200000
    specialize_values: tuple = (1, -1, 2, -2, 3, Fraction(1, 2))


@dataclass
class Found:
    gens: CanonicalGenSet


@dataclass
class NotExist:
    stage: str


@dataclass
class TriangularArtifact:
    """Context for an unsolved system that needs a larger field."""

    target_matrix: tuple
    h_part: tuple
    varnames: tuple
    system_text: str
    field_hint: tuple | None = None


@dataclass
class NeedsOperator:
    artifact: TriangularArtifact


def functionals(target_matrix, h_part):
    """Value rows mu_i(h_j) = C(i, j); the h-part must be independent."""
    r = len(h_part)
    if r == 0:
        raise DegenerateHPart("empty h-part")
    if linalg.rank([[Fraction(x) for x in labels] for labels in h_part], len(h_part[0])) != r:
        raise DegenerateHPart("h-part elements are linearly dependent")
    return [tuple(target_matrix[i][j] for j in range(r)) for i in range(r)]


# -- graded pieces ------------------------------------------------------------


def _graded_indices(L: LieAlgebra, h_part, values):
    """Basis indices of the simultaneous eigenspace for eigenvalues in Z."""
    rs = L.rs
    out = [
        idx
        for root, idx in L.index_of_root.items()
        if all(rs.root_eval(root, lab) == v for lab, v in zip(h_part, values))
    ]
    out.sort()
    if all(v == 0 for v in values):
        out.extend(range(2 * L.n_pos, L.dim))
    return out


def _index_vectors(L, indices):
    vecs = []
    for i in indices:
        v = [Fraction(0)] * L.dim
        v[i] = Fraction(1)
        vecs.append(v)
    return vecs


def _bracket_q(L: LieAlgebra, u, v):
    """Bracket of rational coordinate vectors through the integer table."""
    out = [Fraction(0)] * L.dim
    table = L._table
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            entries = table.get((i, j))
            if entries:
                ab = a * b
                for k, c in entries:
                    out[k] += ab * c
    return out


def _constrained_basis(L, space_indices, constraints):
    """Vectors in the span of the indices whose bracket with each constraint is zero."""
    vecs = _index_vectors(L, space_indices)
    if not constraints:
        return vecs
    rows = []
    for c in constraints:
        images = [_bracket_q(L, v, c) for v in vecs]
        support = sorted({k for img in images for k, x in enumerate(img) if x})
        for k in support:
            rows.append([img[k] for img in images])
    null = linalg.nullspace(rows, len(vecs))
    out = []
    for coeffs in null:
        v = [Fraction(0)] * L.dim
        for c, base in zip(coeffs, vecs):
            if c:
                for k, x in enumerate(base):
                    if x:
                        v[k] += c * x
        out.append(v)
    return out


def _spans(L, z_basis, e_vec, target_dim):
    """Exact check that the brackets [z, e] span a target_dim space."""
    if target_dim == 0:
        return True
    rows = [_bracket_q(L, z, e_vec) for z in z_basis]
    return linalg.rank(rows, L.dim) == target_dim


def _solve_partner(L, y_basis, x_vec, h_vec):
    """Coefficients c with [x, sum c_j y_j] = h, or None."""
    if not y_basis:
        return None
    images = [_bracket_q(L, x_vec, y) for y in y_basis]
    support = sorted(
        {k for img in images for k, c in enumerate(img) if c}
        | {k for k, c in enumerate(h_vec) if c}
    )
    rows = [[img[k] for img in images] for k in support]
    rhs = [h_vec[k] for k in support]
    sol = linalg.solve(rows, rhs, len(y_basis))
    if sol is None:
        return None
    v = [Fraction(0)] * L.dim
    for c, base in zip(sol, y_basis):
        if c:
            for k, x in enumerate(base):
                if x:
                    v[k] += c * x
    return v


def _random_combination(rng, basis, bound):
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        if any(coeffs):
            break
    v = [Fraction(0)] * len(basis[0])
    for c, b in zip(coeffs, basis):
        if c:
            for k, x in enumerate(b):
                if x:
                    v[k] += c * x
    return v


@dataclass
class PartialState:
    h_part: tuple            # label tuples
    h_vectors: tuple         # rational coordinate vectors
    rows: tuple              # value rows mu_i
    xs: list
    ys: list


def step_one(L: LieAlgebra, state: PartialState, rng, cfg: ConstructConfig):
    """First triple: 'found', 'absent' (conclusive) or 'breakdown'."""
    mu = state.rows[0]
    g_plus = _graded_indices(L, state.h_part, mu)
    if not g_plus:
        return "absent"
    g_zero = _graded_indices(L, state.h_part, tuple(0 for _ in mu))
    g_minus = _graded_indices(L, state.h_part, tuple(-v for v in mu))
    z_basis = _index_vectors(L, g_zero)
    plus_basis = _index_vectors(L, g_plus)
    minus_basis = _index_vectors(L, g_minus)
    for _ in range(cfg.trials):
        e = _random_combination(rng, plus_basis, cfg.coeff_bound)
        if _spans(L, z_basis, e, len(g_plus)):
            f = _solve_partner(L, minus_basis, e, state.h_vectors[0])
            if f is None:
                return "absent"
            state.xs.append(e)
            state.ys.append(f)
            return "found"
    return "breakdown"


def linear_method_step(L: LieAlgebra, state: PartialState, rng, cfg: ConstructConfig):
    """Extend the partial set by one index: 'extended' or 'breakdown'."""
    s = len(state.xs)
    mu = state.rows[s]
    g_plus = _constrained_basis(L, _graded_indices(L, state.h_part, mu), state.ys)
    if not g_plus:
        return "breakdown"
    g_zero = _constrained_basis(
        L, _graded_indices(L, state.h_part, tuple(0 for _ in mu)), state.xs
    )
    g_minus = _constrained_basis(
        L, _graded_indices(L, state.h_part, tuple(-v for v in mu)), state.xs
    )
    for _ in range(cfg.trials):
        e = _random_combination(rng, g_plus, cfg.coeff_bound)
        if _spans(L, g_zero, e, len(g_plus)):
            f = _solve_partner(L, g_minus, e, state.h_vectors[s])
            if f is None:
                return "breakdown"
            state.xs.append(e)
            state.ys.append(f)
            return "extended"
    return "breakdown"


# -- polynomial method ---------------------------------------------------------


def _field_vector(L, rational_vec):
    return [L.field.from_rational(c) for c in rational_vec]


def _solve_system(eqs, field, names, cfg, depth=0):
    """Groebner-solve; positive-dimensional systems get free variables pinned."""
    gb = polysolve.groebner(eqs, pair_budget=cfg.gb_pair_budget)
    if polysolve.is_trivial(gb):
        return NotExist("polynomial" if depth == 0 else "specialized")
    try:
        out = polysolve.solve_zero_dim(gb, field, names)
    except polysolve.NotZeroDimensional as exc:
        free = exc.free_variables[0]
        idx = names.index(free)
        pending = None
        for val in cfg.specialize_values:
            pin = MultiPoly.variable(field, len(names), idx) - MultiPoly.constant(
                field, len(names), val
            )
            res = _solve_system(gb + [pin], field, names, cfg, depth + 1)
            if isinstance(res, Solutions):
                return res
            if isinstance(res, NeedsExtension) and pending is None:
                pending = res
        if pending is not None:
            return pending
        return NeedsExtension(gb, names)
    return out


def polynomial_method(L: LieAlgebra, state: PartialState, cfg: ConstructConfig, target_matrix):
    """Solve for all remaining generator pairs jointly over the active field."""
    field = L.field
    s = len(state.xs)
    r = len(state.h_part)
    x_bases = []
    y_bases = []
    for k in range(s, r):
        mu = state.rows[k]
        x_bases.append(_constrained_basis(L, _graded_indices(L, state.h_part, mu), state.ys))
        y_bases.append(
            _constrained_basis(L, _graded_indices(L, state.h_part, tuple(-v for v in mu)), state.xs)
        )
    names = []
    a_start = []
    for k in range(s, r):
        a_start.append(len(names))
        names.extend(f"a{k + 1}_{m + 1}" for m in range(len(x_bases[k - s])))
    b_start = []
    for k in range(s, r):
        b_start.append(len(names))
        names.extend(f"b{k + 1}_{m + 1}" for m in range(len(y_bases[k - s])))
    names = tuple(names)
    nv = len(names)

    eqs = []
    for i in range(s, r):
        bx = x_bases[i - s]
        for j in range(s, r):
            by = y_bases[j - s]
            pair_bracket = [[_bracket_q(L, u, v) for v in by] for u in bx]
            target = state.h_vectors[i] if i == j else None
            for t in range(L.dim):
                terms = {}
                for m in range(len(bx)):
                    va = a_start[i - s] + m
                    for n in range(len(by)):
                        vb = b_start[j - s] + n
                        c = pair_bracket[m][n][t]
                        if c:
                            mono = tuple(
                                1 if q in (va, vb) else 0 for q in range(nv)
                            ) if va != vb else tuple(2 if q == va else 0 for q in range(nv))
                            terms[mono] = terms.get(mono, field.zero) + field.from_rational(c)
                val = target[t] if target is not None else 0
                if val:
                    mono0 = (0,) * nv
                    terms[mono0] = terms.get(mono0, field.zero) - field.from_rational(val)
                p = MultiPoly(field, nv, terms)
                if not p.is_zero():
                    eqs.append(p)
    if not eqs:
        # No relation constrains the unknowns, which can only happen when
        # there is nothing left to find.
        if s == r:
            return _assemble(L, state, target_matrix, [], [], [])
        eqs = [MultiPoly.constant(field, max(nv, 1), 1)]
    out = _solve_system(eqs, field, names, cfg)
    if isinstance(out, NotExist):
        return NotExist("polynomial")
    if isinstance(out, (NeedsExtension,)):
        return NeedsOperator(
            TriangularArtifact(
                tuple(map(tuple, target_matrix)),
                tuple(state.h_part),
                out.varnames,
                out.text(),
                out.field_hint,
            )
        )
    if isinstance(out, NoSolution):
        return NotExist("polynomial")
    point = out.points[0]
    new_xs = []
    new_ys = []
    for k in range(s, r):
        bx = x_bases[k - s]
        xv = L.zero_vector()
        for m, base in enumerate(bx):
            c = point[a_start[k - s] + m]
            if c:
                for t, q in enumerate(base):
                    if q:
                        xv[t] = xv[t] + c * q
        by = y_bases[k - s]
        yv = L.zero_vector()
        for m, base in enumerate(by):
            c = point[b_start[k - s] + m]
            if c:
                for t, q in enumerate(base):
                    if q:
                        yv[t] = yv[t] + c * q
        new_xs.append(xv)
        new_ys.append(yv)
    return _assemble(L, state, target_matrix, new_xs, new_ys, point)


def _assemble(L, state, target_matrix, new_xs, new_ys, _point):
    hs = tuple(tuple(_field_vector(L, h)) for h in state.h_vectors)
    xs = tuple(tuple(_field_vector(L, v)) for v in state.xs) + tuple(tuple(v) for v in new_xs)
    ys = tuple(tuple(_field_vector(L, v)) for v in state.ys) + tuple(tuple(v) for v in new_ys)
    gens = CanonicalGenSet(tuple(map(tuple, target_matrix)), hs, xs, ys)
    if not L.verify_canonical(gens):
        raise LiesubError("constructed generators fail verification")
    return Found(gens)


def construct(L: LieAlgebra, target_matrix, h_part, cfg: ConstructConfig = None):
    """Find canonical generators with the given h-part, or refute them.

    Returns Found with a verified generator set, NotExist with the stage
    that refuted existence, or NeedsOperator carrying the triangular system
    that did not split over the active field.  Reproducible for a fixed
    configuration seed.
    """
    cfg = cfg or ConstructConfig()
    h_part = tuple(tuple(x) for x in h_part)
    rows = tuple(functionals(target_matrix, h_part))
    state = PartialState(
        h_part=h_part,
        h_vectors=tuple(L.cartan_to_vector(lab, rational=True) for lab in h_part),
        rows=rows,
        xs=[],
        ys=[],
    )
    rng = random.Random(derive_seed(cfg.seed, "construct", target_matrix, h_part))
    r = len(h_part)
    outcome = step_one(L, state, rng, cfg)
    if outcome == "absent":
        return NotExist("first-triple")
    if outcome == "breakdown":
        return polynomial_method(L, state, cfg, target_matrix)
    while len(state.xs) < r:
        outcome = linear_method_step(L, state, rng, cfg)
        if outcome == "breakdown":
            return polynomial_method(L, state, cfg, target_matrix)
    return _assemble(L, state, target_matrix, [], [], None)
