"""Multivariate polynomials, Buchberger's algorithm, and triangular solving.

Everything is over the active field (rationals or a simple extension) with
a lexicographic order in which variable 0 is largest.  A reduced lex basis
of a zero-dimensional ideal has a staircase that keeps back-substitution
univariate at every level; root finding below stays inside the field and
reports an unsolved triangular system when the field is too small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, NotZeroDimensional
from .field import NumberField, QQ, rational_sqrt

# -- monomials ---------------------------------------------------------------


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPoly:
    """A multivariate polynomial as a sparse exponent-vector term map."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: field.from_rational(value) if isinstance(value, (int, Fraction)) else value})

    @classmethod
    def variable(cls, field, nvars, i):
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {m: field.one})

    def is_zero(self):
        return not self.terms

    def leading_monomial(self):
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[max(self.terms)]

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.field, self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = -c if s is None else s - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.field, self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                s = c if s is None else s + c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(self.field, self.nvars, out)

    def scale(self, c):
        if not c:
            return MultiPoly(self.field, self.nvars, {})
        return MultiPoly(self.field, self.nvars, {m: c * v for m, v in self.terms.items()})

    def term_mul(self, mono, coeff):
        return MultiPoly(
            self.field, self.nvars, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == self.field.one:
            return self
        inv = self.field.one / lc
        return self.scale(inv)

    def substitute(self, var, value):
        out = {}
        powers = {0: self.field.one}
        for m, c in self.terms.items():
            e = m[var]
            if e not in powers:
                p = self.field.one
                for _ in range(e):
                    p = p * value
                powers[e] = p
            c2 = c * powers[e]
            if not c2:
                continue
            m2 = tuple(0 if i == var else x for i, x in enumerate(m))
            s = out.get(m2)
            s = c2 if s is None else s + c2
            if s:
                out[m2] = s
            else:
                out.pop(m2, None)
        return MultiPoly(self.field, self.nvars, out)

    def evaluate(self, point):
        total = self.field.zero
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                for _ in range(e):
                    v = v * point[i]
            total = total + v
        return total

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def degree_in(self, var):
        return max((m[var] for m in self.terms), default=0)

    def univariate_coeffs(self, var):
        """Coefficient list (constant first) when only ``var`` occurs."""
        deg = self.degree_in(var)
        out = [self.field.zero] * (deg + 1)
        for m, c in self.terms.items():
            out[m[var]] = c
        return out

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return poly_text(self, [f"x{i+1}" for i in range(self.nvars)])


def poly_text(p: MultiPoly, names):
    """Render with explicit exponents, one term per factor, e.g. x1^2*x2 + 3/4*x2."""
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, reverse=True):
        c = p.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        cs = str(c)
        if ("+" in cs[1:]) or ("-" in cs[1:]) or "*" in cs:
            cs = f"({cs})"
        if factors and cs == "1":
            parts.append("*".join(factors))
        elif factors:
            parts.append(cs + "*" + "*".join(factors))
        else:
            parts.append(cs)
    return " + ".join(parts)


# -- Buchberger ----------------------------------------------------------------


def normal_form(p: MultiPoly, basis):
    """Full normal form of p against a list of monic polynomials."""
    field = p.field
    result = {}
    work = dict(p.terms)
    while work:
        m = max(work)
        c = work.pop(m)
        if not c:
            continue
        hit = None
        for g in basis:
            q = mono_div(m, g.leading_monomial())
            if q is not None:
                hit = (g, q)
                break
        if hit is None:
            result[m] = c
            continue
        g, q = hit
        lm = g.leading_monomial()
        for mg, cg in g.terms.items():
            if mg == lm:
                continue
            mm = mono_mul(mg, q)
            s = work.get(mm)
            v = c * cg
            s = -v if s is None else s - v
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return MultiPoly(field, p.nvars, result)


def _s_poly(f: MultiPoly, g: MultiPoly):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    l = mono_lcm(lf, lg)
    one = f.field.one
    return f.term_mul(mono_div(l, lf), one) - g.term_mul(mono_div(l, lg), one)


def groebner(gens, pair_budget=200000):
    """Reduced lexicographic Groebner basis of the ideal of the generators."""
    import heapq

    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("empty generator list")
    basis = [g.monic() for g in gens]
    heap = []

    def push_pair(i, j):
        l = mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())
        heapq.heappush(heap, (sum(l), l, i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)
    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > pair_budget:
            raise BudgetExceeded(f"Groebner pair budget {pair_budget} exceeded")
        li = basis[i].leading_monomial()
        lj = basis[j].leading_monomial()
        if mono_lcm(li, lj) == mono_mul(li, lj):
            continue   # coprime leading terms reduce to zero
        s = normal_form(_s_poly(basis[i], basis[j]), basis)
        if s.is_zero():
            continue
        basis.append(s.monic())
        k = len(basis) - 1
        for t in range(k):
            push_pair(t, k)
    return _interreduce(basis)


def _interreduce(basis):
    basis = [g for g in basis if not g.is_zero()]
    # Drop generators whose leading monomial another one divides.
    keep = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        if any(
            j != i
            and mono_div(lm, h.leading_monomial()) is not None
            and (h.leading_monomial() != lm or j < i)
            for j, h in enumerate(basis)
        ):
            continue
        keep.append(g)
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            rest = keep[:i] + keep[i + 1 :]
            r = normal_form(keep[i], rest) if rest else keep[i]
            if r.is_zero():
                keep.pop(i)
                changed = True
                break
            r = r.monic()
            if r != keep[i]:
                keep[i] = r
                changed = True
    keep.sort(key=lambda g: g.leading_monomial(), reverse=True)
    return keep


def is_trivial(gb):
    return len(gb) == 1 and not gb[0].is_zero() and gb[0].leading_monomial() == (0,) * gb[0].nvars


# -- square roots and univariate roots ------------------------------------------


def scalar_sort_key(field, s):
    return field.coords(s)


def sqrt_scalar(field: NumberField, c):
    """A square root of c inside the field, or None."""
    if field.degree == 1:
        return rational_sqrt(c)
    if field.degree == 2:
        a, b = field.coords(c)
        alpha = -field.minpoly[1]
        beta = -field.minpoly[0]
        cands = []
        if b == 0:
            u = rational_sqrt(a)
            if u is not None:
                cands.append((u, Fraction(0)))
            denom = alpha * alpha / 4 + beta
            if denom:
                v2 = a / denom
                v = rational_sqrt(v2)
                if v is not None:
                    cands.append((-alpha * v / 2, v))
        else:
            A = alpha * alpha + 4 * beta
            disc = (2 * alpha * b + 4 * a) ** 2 - 4 * A * b * b
            sd = rational_sqrt(disc)
            if sd is not None:
                for w in ((2 * alpha * b + 4 * a + sd) / (2 * A), (2 * alpha * b + 4 * a - sd) / (2 * A)):
                    v = rational_sqrt(w)
                    if v is not None and v:
                        u = (b - alpha * v * v) / (2 * v)
                        cands.append((u, v))
        for u, v in cands:
            z = field.element((u, v))
            if z * z == c:
                return z
        return None
    # Higher-degree extension: solve z^2 = c coordinatewise over Q.
    d = field.degree
    coords = field.coords(c)
    eqs = []
    for k in range(d):
        terms = {}
        for i in range(d):
            for j in range(d):
                w = field._powers[i + j][k]
                if w:
                    m = tuple(
                        (2 if t == i else 0) if i == j else (1 if t in (i, j) else 0)
                        for t in range(d)
                    )
                    terms[m] = terms.get(m, Fraction(0)) + w
        mono0 = (0,) * d
        terms[mono0] = terms.get(mono0, Fraction(0)) - coords[k]
        eqs.append(MultiPoly(QQ, d, terms))
    try:
        gb = groebner(eqs, pair_budget=20000)
    except BudgetExceeded:
        return None
    if is_trivial(gb):
        return None
    try:
        out = solve_zero_dim(gb, QQ)
    except NotZeroDimensional:
        return None
    if isinstance(out, Solutions) and out.points:
        z = field.element(out.points[0])
        if z * z == c:
            return z
    return None


def _rational_coeffs(field, coeffs):
    out = []
    for c in coeffs:
        q = field.rational_part(c) if field.degree > 1 else Fraction(c)
        if q is None:
            return None
        out.append(q)
    return out


def _divisors_small(n, cap=10000):
    n = abs(int(n))
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n and d <= cap:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def univariate_roots(field, coeffs):
    """All roots inside the field plus a flag telling whether the polynomial
    was completely split into linear factors over the field."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = []
    while len(coeffs) > 1:
        if not coeffs[0]:
            if field.zero not in roots:
                roots.append(field.zero)
            coeffs.pop(0)
            continue
        deg = len(coeffs) - 1
        if deg == 1:
            r = -coeffs[0] / coeffs[1]
            if r not in roots:
                roots.append(r)
            return roots, True
        if deg == 2:
            c0, c1, c2 = coeffs
            disc = c1 * c1 - 4 * c2 * c0
            s = sqrt_scalar(field, disc)
            if s is None:
                return roots, False
            for r in ((-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)):
                if r not in roots:
                    roots.append(r)
            return roots, True
        rat = _rational_coeffs(field, coeffs)
        if rat is None:
            return roots, False
        from math import lcm

        den = lcm(*[q.denominator for q in rat])
        ints = [int(q * den) for q in rat]
        found = None
        for p in _divisors_small(ints[0]):
            for q in _divisors_small(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = Fraction(0)
                    for c in reversed(rat):
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return roots, False
        r = field.from_rational(found)
        if r not in roots:
            roots.append(r)
        # synthetic division by (x - found)
        new = [Fraction(0)] * deg
        carry = rat[deg]
        for k in range(deg - 1, -1, -1):
            new[k] = carry
            carry = rat[k] + carry * found
        coeffs = [field.from_rational(c) for c in new]
    return roots, True


# -- zero-dimensional solving ------------------------------------------------------


@dataclass
class NoSolution:
    pass


@dataclass
class Solutions:
    points: list


@dataclass
class NeedsExtension:
    system: list
    varnames: tuple
    field_hint: tuple | None = None   # minimal polynomial of a splitting quadratic

    def text(self):
        return "\n".join(poly_text(p, self.varnames) for p in self.system)


def solve_zero_dim(gb, field, varnames=None):
    """Back-substitute a reduced lex basis of a zero-dimensional ideal.

    Returns NoSolution when the basis is {1}; Solutions with every point
    over the field when all univariate factors split; NeedsExtension with
    the stuck triangular system otherwise.  A positive-dimensional ideal
    raises NotZeroDimensional naming the free variables.
    """
    if not gb:
        raise ValueError("empty basis")
    nvars = gb[0].nvars
    names = tuple(varnames) if varnames else tuple(f"x{i+1}" for i in range(nvars))
    if is_trivial(gb):
        return NoSolution()
    covered = set()
    for g in gb:
        lm = g.leading_monomial()
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            covered.add(nz[0])
    free = [names[i] for i in range(nvars) if i not in covered]
    if free:
        raise NotZeroDimensional(free)

    points = []
    stuck = []

    def branch(polys, var, point_suffix):
        live = [p for p in polys if not p.is_zero()]
        for p in live:
            if not p.variables_used() and p.terms:
                return   # nonzero constant, dead branch
        if var < 0:
            if not live:
                points.append(tuple(point_suffix))
            return
        unis = [p for p in live if p.variables_used() <= {var}]
        unis = [p for p in unis if p.variables_used()]
        if not unis:
            # var is unconstrained on this branch; cannot happen for the
            # staircase of a zero-dimensional lex basis
            raise NotZeroDimensional([names[var]])
        unis.sort(key=lambda p: p.degree_in(var))
        coeffs = unis[0].univariate_coeffs(var)
        roots, full = univariate_roots(field, coeffs)
        if not full:
            hint = None
            if len(coeffs) - 1 == 2:
                c0, c1, c2 = (_rational_coeffs(field, coeffs) or (None,) * 3)
                if c0 is not None:
                    disc = c1 * c1 - 4 * c2 * c0
                    hint = (-disc, Fraction(0), Fraction(1))
            stuck.append(([p for p in live], hint))
        for r in sorted(roots, key=lambda s: scalar_sort_key(field, s)):
            ok = True
            for other in unis[1:]:
                if other.substitute(var, r).terms:
                    ok = False
                    break
            if not ok:
                continue
            nxt = [p.substitute(var, r) for p in live if p not in unis]
            branch(nxt, var - 1, [r] + point_suffix)

    branch(list(gb), nvars - 1, [])
    if points:
        points.sort(key=lambda pt: tuple(scalar_sort_key(field, s) for s in pt))
        return Solutions(points)
    if stuck:
        system, hint = stuck[0]
        return NeedsExtension(system, names, hint)
    return NoSolution()
