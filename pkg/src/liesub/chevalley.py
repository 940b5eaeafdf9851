"""Semisimple Lie algebras over an exact field, in a Chevalley basis.

The basis is {e_beta : beta a root} together with the simple coroots
{h_1, ..., h_l}; all structure constants are integers.  Signs are fixed by
choosing N(a, b) = p + 1 > 0 on extraspecial pairs (the lexicographically
least decomposition of each positive root) and propagating through the
standard identities; the results are convention dependent, everything
downstream only relies on the defining relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cartan, linalg
from .errors import DegenerateRestriction, NotInCartan, NotToral
from .field import QQ
from .roots import RootSystem, root_system

_CONSTS = {}


def _neg(root):
    return tuple(-c for c in root)


class _Constants:
    """Structure constants N(a, b) for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        pos = rs.positive_roots
        self.order = {r: k for k, r in enumerate(pos)}
        self.roots = set(pos) | {_neg(r) for r in pos}
        self.norm = {r: rs.root_norm(r) for r in self.roots}
        self.extraspecial = {}
        self.special = {}
        self._memo = {}
        by_height = sorted(pos, key=lambda r: (sum(r), r))
        for gamma in by_height:
            if sum(gamma) < 2:
                continue
            pairs = []
            for alpha in pos:
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                if beta in self.order and self.order[alpha] < self.order[beta]:
                    pairs.append((alpha, beta))
            pairs.sort(key=lambda p: self.order[p[0]])
            a1, b1 = pairs[0]
            self.extraspecial[gamma] = (a1, b1)
            self.special[(a1, b1)] = self._chain_p(a1, b1) + 1
            for alpha, beta in pairs[1:]:
                self.special[(alpha, beta)] = self._derive(alpha, beta, a1, b1)

    def _chain_p(self, alpha, beta):
        """Largest p with beta - p*alpha a root."""
        p = 0
        cur = tuple(b - a for a, b in zip(alpha, beta))
        while cur in self.roots:
            p += 1
            cur = tuple(c - a for a, c in zip(alpha, cur))
        return p

    def _derive(self, alpha, beta, a1, b1):
        # Jacobi identity on (e_{-a1}, e_alpha, e_beta); the target root is
        # b1 = alpha + beta - a1 and the pivot constant N(gamma, -a1) never
        # vanishes.
        gamma = tuple(a + b for a, b in zip(alpha, beta))
        acc = Fraction(0)
        d1 = tuple(a - b for a, b in zip(alpha, a1))
        if d1 in self.roots:
            acc += self.N(_neg(a1), alpha) * self.N(d1, beta)
        d2 = tuple(b - a for b, a in zip(beta, a1))
        if d2 in self.roots:
            acc += self.N(beta, _neg(a1)) * self.N(d2, alpha)
        pivot = self.N(gamma, _neg(a1))
        val = -acc / pivot
        if val.denominator != 1:
            raise AssertionError("non-integral structure constant")
        return int(val)

    def N(self, a, b):
        key = (a, b)
        got = self._memo.get(key)
        if got is not None:
            return got
        apos = a in self.order
        bpos = b in self.order
        if apos and bpos:
            if self.order[a] < self.order[b]:
                val = self.special[(a, b)]
            else:
                val = -self.N(b, a)
        elif not apos and not bpos:
            val = -self.N(_neg(a), _neg(b))
        elif not apos:
            val = -self.N(b, a)
        else:
            # a positive, b negative
            sigma = tuple(x + y for x, y in zip(a, b))
            if sigma in self.order:
                val = -Fraction(self.norm[sigma], self.norm[a]) * self.N(_neg(b), sigma)
            else:
                val = -self.N(_neg(a), _neg(b))
            if isinstance(val, Fraction):
                if val.denominator != 1:
                    raise AssertionError("non-integral structure constant")
                val = int(val)
        self._memo[key] = val
        return val


def structure_constants(rs: RootSystem) -> _Constants:
    got = _CONSTS.get(rs.cartan_matrix)
    if got is None:
        got = _Constants(rs)
        _CONSTS[rs.cartan_matrix] = got
    return got


@dataclass(frozen=True)
class CanonicalGenSet:
    """Tuples (h_i, x_i, y_i) satisfying the canonical generator relations."""

    cartan_matrix: tuple
    h: tuple
    x: tuple
    y: tuple

    @property
    def rank(self):
        return len(self.h)


@dataclass(frozen=True)
class SL2Triple:
    h: tuple
    e: tuple
    f: tuple


class LieAlgebra:
    """A semisimple Lie algebra with Chevalley multiplication table.

    Basis layout: indices 0..m-1 are the positive root vectors in root
    order, m..2m-1 the corresponding negative root vectors, and the last
    l entries the simple coroots h_i.
    """

    def __init__(self, rs: RootSystem, field=QQ):
        self.rs = rs
        self.field = field
        m = len(rs.positive_roots)
        self.n_pos = m
        self.dim = 2 * m + rs.rank
        self.zero = field.zero
        self.one = field.one
        consts = structure_constants(rs)
        self.consts = consts
        idx = {}
        for k, r in enumerate(rs.positive_roots):
            idx[r] = k
            idx[_neg(r)] = m + k
        self.index_of_root = idx
        self.root_of_index = {v: k for k, v in idx.items()}
        self._table = self._build_table(consts)
        self._killing = None

    def _build_table(self, consts):
        rs = self.rs
        m = self.n_pos
        l = rs.rank
        C = rs.cartan_matrix
        table = {}

        def put(i, j, entries):
            if entries:
                table[(i, j)] = tuple(entries)
                table[(j, i)] = tuple((k, -c) for k, c in entries)

        roots = list(self.index_of_root.items())
        for a, ia in roots:
            for b, ib in roots:
                if ia >= ib:
                    continue
                s = tuple(x + y for x, y in zip(a, b))
                if s in self.index_of_root:
                    put(ia, ib, [(self.index_of_root[s], consts.N(a, b))])
                elif not any(s):
                    # [e_a, e_{-a}] = a^v expressed over the simple coroots
                    pos = a if a in consts.order else b
                    sign = 1 if a in consts.order else -1
                    da = consts.norm[pos] / 2
                    entries = []
                    for k, c in enumerate(pos):
                        if c:
                            coeff = Fraction(c) * rs.d[k] / da
                            if coeff.denominator != 1:
                                raise AssertionError("non-integral coroot")
                            entries.append((2 * m + k, sign * int(coeff)))
                    put(ia, ib, entries)
        for i in range(l):
            hi = 2 * m + i
            for a, ia in roots:
                val = sum(c * C[k][i] for k, c in enumerate(a) if c)
                if val:
                    put(hi, ia, [(ia, val)])
        return table

    # -- vectors ----------------------------------------------------------

    def zero_vector(self):
        return [self.zero] * self.dim

    def standard_generators(self):
        """The algebra's own canonical generators (simple root triples)."""
        hs, xs, ys = [], [], []
        for i in range(self.rs.rank):
            root = tuple(1 if j == i else 0 for j in range(self.rs.rank))
            k = self.index_of_root[root]
            xs.append(tuple(self.basis_vector(k)))
            ys.append(tuple(self.basis_vector(self.n_pos + k)))
            hs.append(tuple(self.basis_vector(2 * self.n_pos + i)))
        return CanonicalGenSet(self.rs.cartan_matrix, tuple(hs), tuple(xs), tuple(ys))

    def basis_vector(self, k, coeff=None):
        v = self.zero_vector()
        v[k] = coeff if coeff is not None else self.one
        return v

    def from_rational_vector(self, vec):
        return [self.field.from_rational(c) for c in vec]

    def bracket(self, u, v):
        out = self.zero_vector()
        table = self._table
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
                        out[k] = out[k] + ab * c
        return out

    def ad_rows(self, v):
        """Matrix of ad(v) as a list of rows: rows[out][in] over the basis."""
        rows = [self.zero_vector() for _ in range(self.dim)]
        table = self._table
        for i, a in enumerate(v):
            if not a:
                continue
            for j in range(self.dim):
                entries = table.get((i, j))
                if entries:
                    for k, c in entries:
                        rows[k][j] = rows[k][j] + a * c
        return rows

    # -- Cartan conversions ------------------------------------------------

    def cartan_to_vector(self, labels, rational=False):
        """The Cartan element with the given labels, as a basis vector."""
        coords = self.rs.coroot_coordinates(labels)
        v = [Fraction(0)] * self.dim if rational else self.zero_vector()
        base = 2 * self.n_pos
        for i, c in enumerate(coords):
            v[base + i] = c if rational else self.field.from_rational(c)
        return v

    def vector_to_cartan(self, v):
        """Label coordinates of a vector lying in the Cartan subalgebra."""
        base = 2 * self.n_pos
        if any(v[:base]):
            raise NotInCartan("vector has nonzero root-space components")
        coords = []
        for c in v[base:]:
            q = c if isinstance(c, (int, Fraction)) else self.field.rational_part(c)
            if q is None:
                raise NotInCartan("vector has non-rational Cartan coordinates")
            coords.append(Fraction(q))
        C = self.rs.cartan_matrix
        l = self.rs.rank
        return tuple(sum(coords[i] * C[j][i] for i in range(l)) for j in range(l))

    # -- invariant forms ----------------------------------------------------

    def killing_gram(self):
        """Integer Gram matrix of the Killing form on the basis (lazy)."""
        if self._killing is None:
            n = self.dim
            K = [[0] * n for _ in range(n)]
            weight = {}
            for k in range(n):
                weight[k] = self.root_of_index.get(k, (0,) * self.rs.rank)
            table = self._table
            for i in range(n):
                wi = weight[i]
                for j in range(i, n):
                    if any(a + b for a, b in zip(wi, weight[j])):
                        continue
                    tot = 0
                    for k in range(n):
                        ent1 = table.get((j, k))
                        if not ent1:
                            continue
                        for mdx, c1 in ent1:
                            ent2 = table.get((i, mdx))
                            if not ent2:
                                continue
                            for ndx, c2 in ent2:
                                if ndx == k:
                                    tot += c1 * c2
                    K[i][j] = K[j][i] = tot
            self._killing = K
        return self._killing

    def killing_form(self, u, v):
        K = self.killing_gram()
        tot = self.zero
        for i, a in enumerate(u):
            if not a:
                continue
            row = K[i]
            for j, b in enumerate(v):
                if b and row[j]:
                    tot = tot + a * b * row[j]
        return tot

    # -- decompositions ------------------------------------------------------

    def _cartan_part(self, v):
        base = 2 * self.n_pos
        if any(v[:base]):
            return None
        out = []
        for c in v[base:]:
            q = c if isinstance(c, (int, Fraction)) else self.field.rational_part(c)
            if q is None:
                return None
            out.append(Fraction(q))
        return out

    def weight_space(self, toral, values):
        """Basis of the simultaneous eigenspace of commuting elements.

        When the toral elements all lie in the fixed Cartan subalgebra the
        space is read off root by root; otherwise an exact kernel is solved.
        """
        for i in range(len(toral)):
            for j in range(i + 1, len(toral)):
                if any(self.bracket(toral[i], toral[j])):
                    raise NotToral("given elements do not commute")
        cartan_parts = [self._cartan_part(t) for t in toral]
        if all(p is not None for p in cartan_parts):
            labels = [
                tuple(
                    sum(p[i] * self.rs.cartan_matrix[j][i] for i in range(self.rs.rank))
                    for j in range(self.rs.rank)
                )
                for p in cartan_parts
            ]
            out = []
            for root, idx in self.index_of_root.items():
                if all(
                    self.rs.root_eval(root, lab) == val for lab, val in zip(labels, values)
                ):
                    out.append(self.basis_vector(idx))
            if all(not v for v in values):
                base = 2 * self.n_pos
                for i in range(self.rs.rank):
                    out.append(self.basis_vector(base + i))
            return out
        rows = []
        for t, val in zip(toral, values):
            ad = self.ad_rows(t)
            for k in range(self.dim):
                row = list(ad[k])
                row[k] = row[k] - val
                rows.append(row)
        return [list(v) for v in linalg.nullspace(rows, self.dim, self.zero, self.one)]

    def centralizer(self, elements):
        """Basis of the joint centralizer of a set of vectors."""
        if not elements:
            return [self.basis_vector(k) for k in range(self.dim)]
        rows = []
        for s in elements:
            rows.extend(self.ad_rows(s))
        return [list(v) for v in linalg.nullspace(rows, self.dim, self.zero, self.one)]

    # -- subalgebra checks ----------------------------------------------------

    def dynkin_index(self, gens: CanonicalGenSet):
        """The index of each simple factor of a canonically generated subalgebra."""
        sub = root_system(gens.cartan_matrix)
        labels = [self.vector_to_cartan(h) for h in gens.h]
        out = []
        for comp in sub.components:
            i0 = comp[0]
            eta = self.rs.gram(labels[i0], labels[i0]) / sub.coroot_gram[i0][i0]
            if not eta:
                raise DegenerateRestriction("invariant form vanishes on the factor")
            for a in comp:
                for b in comp:
                    if self.rs.gram(labels[a], labels[b]) != eta * sub.coroot_gram[a][b]:
                        raise DegenerateRestriction(
                            "restricted form is not proportional to the model form"
                        )
            out.append(eta)
        return out

    def check_relations(self, gens: CanonicalGenSet):
        C = gens.cartan_matrix
        r = gens.rank
        for i in range(r):
            for j in range(r):
                if any(self.bracket(gens.h[i], gens.h[j])):
                    return False
                got = self.bracket(gens.x[i], gens.y[j])
                want = gens.h[i] if i == j else self.zero_vector()
                if any(a - b for a, b in zip(got, want)):
                    return False
                got = self.bracket(gens.h[j], gens.x[i])
                if any(a - C[i][j] * b for a, b in zip(got, gens.x[i])):
                    return False
                got = self.bracket(gens.h[j], gens.y[i])
                if any(a + C[i][j] * b for a, b in zip(got, gens.y[i])):
                    return False
        return True

    def generated_dimension(self, vectors, stop_above=None):
        """Dimension of the subalgebra generated by the given vectors."""
        span = linalg.Span(self.dim, self.zero)
        basis = []
        for v in vectors:
            if span.add(v):
                basis.append(list(v))
        frontier = list(range(len(basis)))
        while frontier:
            new = []
            for fi in frontier:
                for bi in range(len(basis)):
                    w = self.bracket(basis[fi], basis[bi])
                    if span.add(w):
                        basis.append(w)
                        new.append(len(basis) - 1)
                        if stop_above is not None and span.dim > stop_above:
                            return span.dim
            frontier = new
        return span.dim

    def verify_canonical(self, gens: CanonicalGenSet):
        """Exact check of the canonical relations plus the generated dimension."""
        typ, _ = cartan.identify_type(gens.cartan_matrix)
        expected = cartan.type_dimension(typ)
        if not self.check_relations(gens):
            return False
        vectors = list(gens.h) + list(gens.x) + list(gens.y)
        return self.generated_dimension(vectors, stop_above=expected) == expected

    # -- canonical embeddings ---------------------------------------------------

    def embed_basis_images(self, inner: "LieAlgebra", gens: CanonicalGenSet):
        """Images of every basis vector of ``inner`` under the homomorphism
        sending inner's standard generators to ``gens`` (vectors in self)."""
        if inner.rs.cartan_matrix != tuple(map(tuple, gens.cartan_matrix)):
            raise ValueError("generator set does not match the inner algebra's type")
        m = inner.n_pos
        images = [None] * inner.dim
        for i in range(inner.rs.rank):
            images[2 * m + i] = [c for c in gens.h[i]]
        consts = inner.consts
        for k, root in enumerate(inner.rs.positive_roots):
            if sum(root) == 1:
                i = root.index(1)
                images[k] = [c for c in gens.x[i]]
                images[m + k] = [c for c in gens.y[i]]
        for root in sorted(inner.rs.positive_roots, key=lambda r: (sum(r), r)):
            if sum(root) == 1:
                continue
            k = inner.index_of_root[root]
            a1, b1 = consts.extraspecial[root]
            n = consts.N(a1, b1)
            pos = self.bracket(images[inner.index_of_root[a1]], images[inner.index_of_root[b1]])
            images[k] = [c / n for c in pos]
            nn = consts.N(_neg(a1), _neg(b1))
            neg = self.bracket(
                images[inner.index_of_root[_neg(a1)]], images[inner.index_of_root[_neg(b1)]]
            )
            images[m + k] = [c / nn for c in neg]
        return images

    def map_vector(self, images, vec):
        """Push a vector of the inner algebra through precomputed basis images."""
        out = self.zero_vector()
        for i, c in enumerate(vec):
            if c:
                img = images[i]
                for k in range(self.dim):
                    if img[k]:
                        out[k] = out[k] + c * img[k]
        return out

    def __repr__(self):
        return f"LieAlgebra({cartan.type_label(self.rs.typ)}, dim={self.dim})"


_ALGEBRAS = {}


def algebra(rs_or_matrix, field=QQ):
    """Shared LieAlgebra instance per (Cartan matrix, field)."""
    rs = rs_or_matrix if isinstance(rs_or_matrix, RootSystem) else root_system(rs_or_matrix)
    key = (rs.cartan_matrix, field.key())
    got = _ALGEBRAS.get(key)
    if got is None:
        got = LieAlgebra(rs, field)
        _ALGEBRAS[key] = got
    return got
