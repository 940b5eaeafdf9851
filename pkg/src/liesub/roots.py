"""Root systems, the Weyl action on Cartan elements, and orbit traversal.

Elements of the real Cartan subalgebra are handled throughout in label
coordinates: h is stored as the tuple (alpha_1(h), ..., alpha_l(h)).  In
these coordinates dominance is a sign check and a simple reflection is a
single row operation,

    s_i(h)_j = h_j - h_i * C(j, i).

Weyl words are tuples of simple reflection indices, applied left to right:
apply_word((i, j), h) = s_j(s_i(h)).
"""

from __future__ import annotations

from fractions import Fraction

from . import cartan
from .errors import InvalidCartanMatrix, NotDominant

_CACHE = {}


def _mat_inverse(M):
    n = len(M)
    aug = [
        [Fraction(M[i][j]) for j in range(n)] + [Fraction(1 if k == i else 0) for k in range(n)]
        for i in range(n)
    ]
    from .linalg import rref

    piv = rref(aug, n)
    if len(piv) != n:
        raise InvalidCartanMatrix("Cartan matrix is singular")
    return tuple(tuple(row[n:]) for row in aug)


class RootSystem:
    """Immutable root data attached to a valid (possibly decomposable) Cartan matrix."""

    def __init__(self, matrix):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        typ, _ = cartan.identify_type(matrix)   # validates finite semisimple type
        self.cartan_matrix = matrix
        self.typ = typ
        self.rank = len(matrix)
        self.d = cartan.symmetrizer(matrix)
        l = self.rank
        # (alpha_i, alpha_j), short roots of squared length 2 per component
        self.bilinear = tuple(
            tuple(Fraction(matrix[i][j]) * self.d[j] for j in range(l)) for i in range(l)
        )
        # Coroot Gram matrix in the Dynkin-index normalisation: the coroots
        # of the long roots have squared length 2 per component, so that
        # long-root subalgebras get index 1.
        comps = cartan.components(matrix)
        dmax = [None] * l
        for comp in comps:
            m = max(self.d[i] for i in comp)
            for i in comp:
                dmax[i] = m
        self.index_d = tuple(self.d[i] / dmax[i] for i in range(l))
        self.coroot_gram = tuple(
            tuple(Fraction(matrix[i][j], 1) / self.index_d[i] for j in range(l))
            for i in range(l)
        )
        self.cartan_inverse = _mat_inverse(matrix)
        # Gram matrix of the normalised form in label coordinates:
        # gram(h, h') = labels(h)^T M labels(h')
        Cinv = self.cartan_inverse
        Bv = self.coroot_gram
        tmp = [[sum(Bv[i][k] * Cinv[k][j] for k in range(l)) for j in range(l)] for i in range(l)]
        self.gram_matrix = tuple(
            tuple(sum(Cinv[k][i] * tmp[k][j] for k in range(l)) for j in range(l))
            for i in range(l)
        )
        self.positive_roots = self._enumerate_positive()
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self.components = comps
        self._orders = {}
        self._dual = None

    def _enumerate_positive(self):
        l = self.rank
        C = self.cartan_matrix
        seen = set()
        frontier = []
        for i in range(l):
            r = tuple(1 if j == i else 0 for j in range(l))
            seen.add(r)
            frontier.append(r)
        while frontier:
            nxt = []
            for r in frontier:
                for j in range(l):
                    pairing = sum(r[k] * C[k][j] for k in range(l))
                    s = list(r)
                    s[j] -= pairing
                    s = tuple(s)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        pos = [r for r in seen if all(c >= 0 for c in r)]
        pos.sort(key=lambda r: (sum(r), r))
        if 2 * len(pos) != len(seen):
            raise InvalidCartanMatrix("root enumeration did not split into plus/minus halves")
        return tuple(pos)

    # -- basic label-coordinate operations -------------------------------

    def reflect(self, i, labels):
        C = self.cartan_matrix
        c = labels[i]
        if not c:
            return tuple(labels)
        return tuple(labels[j] - c * C[j][i] for j in range(self.rank))

    def apply_word(self, word, labels):
        for i in word:
            labels = self.reflect(i, labels)
        return labels

    def is_dominant(self, labels):
        return all(c >= 0 for c in labels)

    def to_dominant(self, labels):
        """The dominant representative and a witness word moving labels onto it."""
        cur = tuple(labels)
        word = []
        while True:
            neg = next((j for j, c in enumerate(cur) if c < 0), None)
            if neg is None:
                return cur, tuple(word)
            cur = self.reflect(neg, cur)
            word.append(neg)

    def orbit_iterate(self, dominant, visitor=None, stats=None):
        """Visit every element of the Weyl orbit of a dominant element once.

        The traversal walks the spanning tree in which each non-dominant
        element hangs off the reflection at its least negative label, so only
        a root-to-leaf path is ever held in memory.  Returns the orbit size.
        """
        dom = tuple(dominant)
        if not self.is_dominant(dom):
            raise NotDominant(f"labels {dom} have a negative entry")
        l = self.rank
        count = 1
        if visitor is not None:
            visitor(dom)
        stack = [[dom, 0]]
        peak = 1
        while stack:
            labels, j = stack[-1]
            if j == l:
                stack.pop()
                continue
            stack[-1][1] += 1
            if labels[j] > 0:
                child = self.reflect(j, labels)
                first_neg = next(k for k, c in enumerate(child) if c < 0)
                if first_neg == j:
                    count += 1
                    if visitor is not None:
                        visitor(child)
                    stack.append([child, 0])
                    if len(stack) > peak:
                        peak = len(stack)
        if stats is not None:
            stats["visited"] = count
            stats["peak_stack"] = peak
        return count

    def orbit_size(self, labels):
        dom, _ = self.to_dominant(labels)
        return self.orbit_iterate(dom)

    def weyl_order(self):
        key = "order"
        if key not in self._orders:
            regular = tuple(1 for _ in range(self.rank))
            self._orders[key] = self.orbit_iterate(regular)
        return self._orders[key]

    def gram(self, u, v):
        """Normalised invariant form of two Cartan elements in label coordinates."""
        M = self.gram_matrix
        total = Fraction(0)
        for i, a in enumerate(u):
            if a:
                row = M[i]
                total += a * sum(row[j] * b for j, b in enumerate(v) if b)
        return total

    def coroot_coordinates(self, labels):
        """Coordinates of h in the simple coroot basis: a = C^-1 labels."""
        Ci = self.cartan_inverse
        return tuple(
            sum(Ci[i][j] * labels[j] for j in range(self.rank)) for i in range(self.rank)
        )

    # -- arbitrary roots --------------------------------------------------

    def root_eval(self, root, labels):
        """beta(h) for a root given in simple root coordinates."""
        return sum(c * labels[k] for k, c in enumerate(root) if c)

    def root_norm(self, root):
        B = self.bilinear
        tot = Fraction(0)
        for i, a in enumerate(root):
            if a:
                tot += a * sum(B[i][j] * b for j, b in enumerate(root) if b)
        return tot

    def coreflection_labels(self, root):
        """The vector q with s_root(h)_j = h_j - root(h) q_j; q_j = alpha_j(root^v)."""
        norm = self.root_norm(root)
        C = self.cartan_matrix
        q = []
        for j in range(self.rank):
            val = sum(
                Fraction(c) * self.d[k] * C[j][k] for k, c in enumerate(root) if c
            ) * 2 / norm
            if val.denominator != 1:
                raise InvalidCartanMatrix("non-integral coroot pairing")
            q.append(int(val))
        return tuple(q)

    def reflect_by_root(self, root_q, root, labels):
        c = self.root_eval(root, labels)
        if not c:
            return tuple(labels)
        return tuple(labels[j] - c * root_q[j] for j in range(self.rank))

    def reflect_root_action(self, i, root):
        """Image of a root (simple-root coordinates) under the simple reflection s_i."""
        C = self.cartan_matrix
        pairing = sum(root[k] * C[k][i] for k in range(self.rank))
        out = list(root)
        out[i] -= pairing
        return tuple(out)

    def apply_word_to_root(self, word, root):
        for i in word:
            root = self.reflect_root_action(i, root)
        return root

    def dual(self):
        """The root system of the transposed Cartan matrix (weight-side action)."""
        if self._dual is None:
            C = self.cartan_matrix
            n = self.rank
            self._dual = root_system(tuple(tuple(C[j][i] for j in range(n)) for i in range(n)))
        return self._dual

    def __repr__(self):
        return f"RootSystem({cartan.type_label(self.typ)})"


def root_system(matrix):
    """Shared, cached RootSystem for a Cartan matrix."""
    key = tuple(tuple(int(x) for x in row) for row in matrix)
    rs = _CACHE.get(key)
    if rs is None:
        rs = RootSystem(key)
        _CACHE[key] = rs
    return rs


def root_system_of_type(typ):
    return root_system(cartan.canonical_matrix(typ))


def word_inverse(word):
    return tuple(reversed(word))
