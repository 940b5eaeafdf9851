"""Exact scalars: the rationals and simple algebraic extensions of Q.

The rational field is represented by plain ``fractions.Fraction`` values.
A proper extension Q[t]/(m(t)) stores its elements as FieldElement vectors
of rational coordinates in the power basis 1, t, ..., t^(d-1).  Every
operation is exact; nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import NotAnEmbedding

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


def rational_sqrt(q):
    """Exact square root of a Fraction, or None if q is not a square in Q."""
    q = as_fraction(q)
    if q < 0:
        return None
    pn, pd = isqrt(q.numerator), isqrt(q.denominator)
    if pn * pn == q.numerator and pd * pd == q.denominator:
        return Fraction(pn, pd)
    return None


def _divisors(n, cap=200000):
    n = abs(n)
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n and d <= cap:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


class NumberField:
    """Q[t]/(m(t)) for a monic polynomial m over Q.

    Degree 1 means Q itself, whose elements are plain Fractions.  The
    minimal polynomial is given by its coefficient list, constant term
    first, e.g. [3, 0, 1] for t^2 + 3.  Irreducibility is the caller's
    responsibility; only a rational-root check is performed here.
    """

    def __init__(self, minimal_polynomial=(0, 1)):
        coeffs = tuple(as_fraction(c) for c in minimal_polynomial)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial needs degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        if self.degree > 1:
            self._reject_rational_roots()
        d = self.degree
        # Coordinates of t^k modulo m(t) for 0 <= k <= 2(d-1).
        powers = []
        for k in range(2 * d - 1):
            if k < d:
                vec = [ZERO] * d
                vec[k] = ONE
            else:
                prev = powers[k - 1]
                vec = [ZERO] + list(prev[: d - 1])
                top = prev[d - 1]
                if top:
                    for i in range(d):
                        vec[i] -= top * self.minpoly[i]
            powers.append(tuple(vec))
        self._powers = tuple(powers)
        if d == 1:
            self.zero = ZERO
            self.one = ONE
        else:
            self.zero = FieldElement(self, (ZERO,) * d)
            self.one = FieldElement(self, (ONE,) + (ZERO,) * (d - 1))

    def _reject_rational_roots(self):
        from math import lcm

        den = lcm(*[c.denominator for c in self.minpoly])
        ints = [int(c * den) for c in self.minpoly]
        if ints[0] == 0:
            raise ValueError("minimal polynomial has root 0, not irreducible")
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = ZERO
                    for c in reversed(self.minpoly):
                        acc = acc * cand + c
                    if acc == 0:
                        raise ValueError(
                            f"minimal polynomial has rational root {cand}, not irreducible"
                        )

    def element(self, coords):
        """Build an element from its power-basis coordinates."""
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        if self.degree == 1:
            return coords[0]
        return FieldElement(self, coords)

    def from_rational(self, q):
        q = as_fraction(q)
        if self.degree == 1:
            return q
        return FieldElement(self, (q,) + (ZERO,) * (self.degree - 1))

    @property
    def generator(self):
        if self.degree == 1:
            raise ValueError("the rational field has no extension generator")
        return FieldElement(self, (ZERO, ONE) + (ZERO,) * (self.degree - 2))

    def coords(self, x):
        """Power-basis coordinates of an element, as a tuple of Fractions."""
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise ValueError("element belongs to a different field")
            return x.coords
        q = as_fraction(x)
        return (q,) + (ZERO,) * (self.degree - 1)

    def rational_part(self, x):
        """The element as a Fraction if it is rational, else None."""
        c = self.coords(x)
        if any(c[1:]):
            return None
        return c[0]

    def _reduce(self, conv):
        d = self.degree
        out = list(conv[:d])
        while len(out) < d:
            out.append(ZERO)
        for k in range(d, len(conv)):
            c = conv[k]
            if c:
                pw = self._powers[k]
                for i in range(d):
                    out[i] += c * pw[i]
        return tuple(out)

    def key(self):
        """Hashable identity used for caching; fields with equal minimal polynomials agree."""
        return self.minpoly

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField(minpoly={[str(c) for c in self.minpoly]})"


QQ = NumberField()


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _poly_trim(a)


class FieldElement:
    """An element of a proper extension field, immutable and hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.coords))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.field.zero
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        conv = [ZERO] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(conv))

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.coords):
            raise ZeroDivisionError("division by zero field element")
        # Extended Euclid against the minimal polynomial: find u with u*a = 1 mod m.
        r0, r1 = list(self.field.minpoly), _poly_trim(list(self.coords))
        s0, s1 = [ZERO], [ONE]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            t = list(s0)
            while len(t) < len(q) + len(s1):
                t.append(ZERO)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        t[i + j] -= qi * sj
            s0, s1 = s1, _poly_trim(t)
            if not r1:
                raise ArithmeticError("minimal polynomial is not irreducible")
        c = r1[0]
        inv = [si / c for si in s1]
        while len(inv) < self.field.degree:
            inv.append(ZERO)
        return FieldElement(self.field, tuple(inv[: self.field.degree]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                raise ZeroDivisionError
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{k}")
        return " + ".join(terms) if terms else "0"


def embed(x, source: NumberField, target: NumberField, image_of_generator=None):
    """Ring-homomorphic image of x under t -> image_of_generator.

    The image must satisfy the source minimal polynomial inside the target
    field; otherwise NotAnEmbedding is raised.  For a rational source the
    image may be omitted.
    """
    if image_of_generator is None:
        if source.degree > 1:
            raise ValueError("image_of_generator is required for a proper extension")
        image_of_generator = target.from_rational(-source.minpoly[0])
    acc = target.zero
    for c in reversed(source.minpoly):
        acc = acc * image_of_generator + target.from_rational(c)
    if acc != target.zero:
        raise NotAnEmbedding("image of generator does not satisfy the minimal polynomial")
    coords = source.coords(x)
    out = target.zero
    for c in reversed(coords):
        out = out * image_of_generator + target.from_rational(c)
    return out
