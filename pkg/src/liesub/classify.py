"""Classification driver: climb through ranks, combine factors, decide inclusions.

A Session owns the active field, the run configuration and a cache of
finished databases keyed by ambient type; recursive classifications (needed
both for prefixes and to decide inclusion) reuse the cache in memory and,
when configured, on disk.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dfield
from fractions import Fraction

from . import candidates as candmod
from . import cartan, subconstruct, weylequiv
from .chevalley import CanonicalGenSet, algebra
from .errors import LiesubError, NotAChain, UnknownId
from .field import NumberField, QQ
from .nilpotent import characteristics
from .roots import root_system
from .subconstruct import ConstructConfig, Found, NeedsOperator, NotExist
from .util import parse_rational, rational_str

log = logging.getLogger("liesub")


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 25
    coeff_bound: int = 3
    gb_pair_budget: int = 200000
    bt_node_cap: int = 10**7
    jobs: int = 1
    cache_dir: str | None = None
    resume: bool = False


@dataclass
class SubalgebraClass:
    id: int
    typ: tuple
    cartan_matrix: tuple
    h_part: tuple
    gens: CanonicalGenSet
    indices: tuple
    regular: bool = False
    maximal: bool = False

    @property
    def type_label(self):
        return cartan.type_label(self.typ)


@dataclass
class PendingConstruction:
    target_typ: tuple
    ext_matrix: tuple
    h_part: tuple
    system_text: str
    varnames: tuple
    field_hint: tuple | None = None


@dataclass
class Database:
    ambient_typ: tuple
    field: NumberField
    classes: list
    inclusions: list = dfield(default_factory=list)
    pending: list = dfield(default_factory=list)
    finished: bool = False

    @property
    def ambient_label(self):
        return cartan.type_label(self.ambient_typ)

    def ambient_matrix(self):
        return cartan.canonical_matrix(self.ambient_typ)

    def by_id(self, cid):
        for c in self.classes:
            if c.id == cid:
                return c
        raise UnknownId(f"no class with id {cid}")

    def classes_of_type(self, typ):
        return [c for c in self.classes if c.typ == tuple(typ)]


def _enumerate_types(max_rank, max_dim):
    """All semisimple types with total rank and dimension within bounds."""
    simples = []
    for k in range(1, max_rank + 1):
        for letter in "ABCDEFG":
            try:
                cartan.simple_cartan_matrix(letter, k)
            except ValueError:
                continue
            canon = cartan._canonical_simple(letter, k)
            if canon != (letter, k):
                continue
            if cartan.simple_dimension(letter, k) <= max_dim:
                simples.append((letter, k))
    simples.sort(key=lambda s: (s[1], s[0]))
    out = []

    def rec(start, left_rank, left_dim, cur):
        if cur:
            out.append(tuple(cur))
        for i in range(start, len(simples)):
            s = simples[i]
            if s[1] > left_rank or cartan.simple_dimension(*s) > left_dim:
                continue
            cur.append(s)
            rec(i, left_rank - s[1], left_dim - cartan.simple_dimension(*s), cur)
            cur.pop()

    rec(0, max_rank, max_dim, [])
    uniq = sorted(
        {cartan.sort_type(t) for t in out},
        key=lambda t: (cartan.type_rank(t), cartan.type_dimension(t), cartan.type_label(t)),
    )
    return uniq


def _permute_gens(gens: CanonicalGenSet, perm, new_matrix):
    """Reindex a generator set: position a of the result is perm[a] of the input."""
    return CanonicalGenSet(
        tuple(map(tuple, new_matrix)),
        tuple(gens.h[p] for p in perm),
        tuple(gens.x[p] for p in perm),
        tuple(gens.y[p] for p in perm),
    )


def _construct_task(args):
    ambient_matrix, minpoly, ext_matrix, h_part, cfg = args
    field = NumberField(minpoly)
    L = algebra(root_system(ambient_matrix), field)
    return subconstruct.construct(L, ext_matrix, h_part, cfg)


class Session:
    """Shared state for one classification run (field, budgets, caches)."""

    def __init__(self, field=QQ, config: RunConfig | None = None):
        self.field = field
        self.config = config or RunConfig()
        self._dbs = {}
        self._inclusion_cache = {}

    # -- plumbing -----------------------------------------------------------

    def algebra_for(self, typ):
        return algebra(root_system(cartan.canonical_matrix(typ)), self.field)

    def _construct_config(self):
        c = self.config
        return ConstructConfig(
            seed=c.seed,
            trials=c.trials,
            coeff_bound=c.coeff_bound,
            gb_pair_budget=c.gb_pair_budget,
        )

    def _cache_path(self, typ):
        if not self.config.cache_dir:
            return None
        label = cartan.type_label(typ).replace("+", "_")
        return os.path.join(self.config.cache_dir, f"{label}.json")

    # -- main entry -----------------------------------------------------------

    def classify(self, typ) -> Database:
        """Database of subalgebra classes for the given ambient type."""
        if isinstance(typ, str):
            typ = cartan.parse_type(typ)
        typ = cartan.sort_type(typ)
        if typ in self._dbs:
            return self._dbs[typ]
        db = None
        path = self._cache_path(typ)
        if path and self.config.resume and os.path.exists(path):
            db = _load_cache(path, self.field)
            if db is not None and db.pending:
                self._retry_pending(db)
        if db is None:
            if len(typ) == 1:
                db = self._classify_simple(typ)
            else:
                left = self.classify(typ[:-1])
                right = self.classify((typ[-1],))
                db = self._combine(left, right)
        self._dbs[typ] = db
        self._finish(db)
        if path:
            os.makedirs(self.config.cache_dir, exist_ok=True)
            _save_cache(path, db)
        return db

    def _finish(self, db):
        if not db.pending and not db.finished:
            self._compute_inclusions(db)
            self._compute_flags(db)
            db.finished = True

    # -- simple ambient ----------------------------------------------------------

    def _classify_simple(self, typ) -> Database:
        L = self.algebra_for(typ)
        chars = characteristics(L, seed=self.config.seed)
        log.info(
            "STAT stage=characteristics ambient=%s count=%d",
            cartan.type_label(typ), len(chars),
        )
        db = Database(ambient_typ=typ, field=self.field, classes=[])
        next_id = 1
        for target in _enumerate_types(cartan.type_rank(typ), L.dim):
            data = candmod.extension_data(target)
            if cartan.type_rank(target) > 1:
                prefix_classes = db.classes_of_type(data.prefix_typ)
                if not prefix_classes:
                    continue
                inv = [0] * len(data.prefix_map)
                for a, p in enumerate(data.prefix_map):
                    inv[p] = a
                prefixes = [
                    tuple(c.h_part[inv[p]] for p in range(len(inv))) for c in prefix_classes
                ]
            else:
                prefixes = []
            stats = {}
            accepted = list(
                candmod.extend_candidates(
                    L, target, prefixes, chars, self.config.bt_node_cap, stats
                )
            )
            outcomes = self._construct_all(L, data.ext_matrix, [c.h_part for c in accepted])
            found = 0
            for cand, out in zip(accepted, outcomes):
                if isinstance(out, Found):
                    cls = self._store_class(L, db, next_id, target, data, out.gens)
                    next_id += 1
                    found += 1
                elif isinstance(out, NeedsOperator):
                    db.pending.append(
                        PendingConstruction(
                            target, data.ext_matrix, cand.h_part,
                            out.artifact.system_text, out.artifact.varnames,
                            out.artifact.field_hint,
                        )
                    )
            log.info(
                "STAT stage=type ambient=%s target=%s candidates=%d found=%d "
                "orbits=%d elements=%d killed_gram=%d killed_puzzle=%d dedup_dropped=%d pending=%d",
                cartan.type_label(typ), cartan.type_label(target), len(accepted), found,
                stats.get("orbits_swept", 0), stats.get("orbit_elements", 0),
                stats.get("killed_gram", 0), stats.get("killed_puzzle", 0),
                stats.get("dedup_dropped", 0), len(db.pending),
            )
        return db

    def _construct_all(self, L, ext_matrix, h_parts):
        cfg = self._construct_config()
        if self.config.jobs > 1 and len(h_parts) > 1:
            args = [
                (L.rs.cartan_matrix, self.field.minpoly, ext_matrix, hp, cfg)
                for hp in h_parts
            ]
            with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                return list(pool.map(_construct_task, args))
        return [subconstruct.construct(L, ext_matrix, hp, cfg) for hp in h_parts]

    def _store_class(self, L, db, cid, target, data, gens_ext):
        # Generators come back in extension order; store them in the node
        # order of the canonical matrix.
        r = len(data.order)
        inv = [0] * r
        for pos, node in enumerate(data.order):
            inv[node] = pos
        gens = _permute_gens(gens_ext, inv, data.canonical)
        h_part = tuple(L.vector_to_cartan(h) for h in gens.h)
        cls = SubalgebraClass(
            id=cid,
            typ=target,
            cartan_matrix=tuple(map(tuple, data.canonical)),
            h_part=h_part,
            gens=gens,
            indices=tuple(L.dynkin_index(gens)),
        )
        db.classes.append(cls)
        return cls

    def _retry_pending(self, db):
        db.finished = False
        L = self.algebra_for(db.ambient_typ)
        cfg = self._construct_config()
        kept = []
        next_id = max((c.id for c in db.classes), default=0) + 1
        for item in db.pending:
            out = subconstruct.construct(L, item.ext_matrix, item.h_part, cfg)
            if isinstance(out, Found):
                data = candmod.extension_data(item.target_typ)
                self._store_class(L, db, next_id, item.target_typ, data, out.gens)
                next_id += 1
            elif isinstance(out, NeedsOperator):
                kept.append(
                    PendingConstruction(
                        item.target_typ, item.ext_matrix, item.h_part,
                        out.artifact.system_text, out.artifact.varnames,
                        out.artifact.field_hint,
                    )
                )
        db.pending = kept
        db.field = self.field

    # -- non-simple ambient ---------------------------------------------------------

    def _combine(self, left: Database, right: Database) -> Database:
        """All classes of the direct sum from the factor databases."""
        typ = cartan.sort_type(left.ambient_typ + right.ambient_typ)
        l1 = cartan.type_rank(left.ambient_typ)
        l2 = cartan.type_rank(right.ambient_typ)
        Lbig = algebra(
            root_system(_block_matrix(left.ambient_matrix(), right.ambient_matrix())),
            self.field,
        )
        Lleft = algebra(root_system(left.ambient_matrix()), self.field)
        Lright = algebra(root_system(right.ambient_matrix()), self.field)
        emb_left = _embedding_map(Lleft, Lbig, 0)
        emb_right = _embedding_map(Lright, Lbig, l1)

        db = Database(ambient_typ=typ, field=self.field, classes=[])
        db.pending = list(left.pending) + list(right.pending)
        next_id = 1

        def lift(c, emb, pad_left, pad_right, Lsrc):
            h_part = tuple(
                (0,) * pad_left + tuple(lab) + (0,) * pad_right for lab in c.h_part
            )
            gens = CanonicalGenSet(
                c.cartan_matrix,
                tuple(emb(v) for v in c.gens.h),
                tuple(emb(v) for v in c.gens.x),
                tuple(emb(v) for v in c.gens.y),
            )
            return h_part, gens

        # Direct sums: no pair among these is ever linearly equivalent.
        sums = []
        for c1 in left.classes:
            sums.append((c1, None))
        for c2 in right.classes:
            sums.append((None, c2))
        for c1 in left.classes:
            for c2 in right.classes:
                sums.append((c1, c2))
        for c1, c2 in sums:
            parts = []
            if c1 is not None:
                parts.append(lift(c1, emb_left, 0, l2, Lleft) + (c1.typ, c1.cartan_matrix))
            if c2 is not None:
                parts.append(lift(c2, emb_right, l1, 0, Lright) + (c2.typ, c2.cartan_matrix))
            h_part = sum((p[0] for p in parts), ())
            hs = sum((p[1].h for p in parts), ())
            xs = sum((p[1].x for p in parts), ())
            ys = sum((p[1].y for p in parts), ())
            matrix = _block_matrix(*[p[3] for p in parts]) if len(parts) > 1 else parts[0][3]
            sub_typ, mapping = cartan.identify_type(matrix)
            gens = _permute_gens(
                CanonicalGenSet(matrix, hs, xs, ys), mapping, cartan.canonical_matrix(sub_typ)
            )
            cls = SubalgebraClass(
                id=next_id,
                typ=sub_typ,
                cartan_matrix=tuple(map(tuple, cartan.canonical_matrix(sub_typ))),
                h_part=tuple(h_part[p] for p in mapping),
                gens=gens,
                indices=tuple(Lbig.dynkin_index(gens)),
            )
            db.classes.append(cls)
            next_id += 1
        n_direct = len(db.classes)

        # Diagonal gluings over every matching of isomorphic factor subsets.
        arbiter = candmod.DedupArbiter(Lbig.rs, self.config.bt_node_cap)
        glued = 0
        for c1 in left.classes:
            comps1 = cartan.components(c1.cartan_matrix)
            for c2 in right.classes:
                comps2 = cartan.components(c2.cartan_matrix)
                for cls in self._gluings(
                    Lbig, left, right, emb_left, emb_right, l1, l2,
                    c1, comps1, c2, comps2, arbiter,
                ):
                    cls.id = next_id
                    next_id += 1
                    db.classes.append(cls)
                    glued += 1
        log.info(
            "STAT stage=combine ambient=%s direct=%d glued=%d",
            cartan.type_label(typ), n_direct, glued,
        )
        return db

    def _gluings(self, Lbig, left, right, emb_left, emb_right, l1, l2,
                 c1, comps1, c2, comps2, arbiter):
        from itertools import combinations

        n1, n2 = len(comps1), len(comps2)
        for k in range(1, min(n1, n2) + 1):
            for s1 in combinations(range(n1), k):
                for s2 in combinations(range(n2), k):
                    nodes1 = [i for c in s1 for i in comps1[c]]
                    nodes2 = [i for c in s2 for i in comps2[c]]
                    isos = cartan.all_isomorphisms(
                        c1.cartan_matrix, nodes1, c2.cartan_matrix, nodes2
                    )
                    for iso in isos:
                        cls = self._build_gluing(
                            Lbig, emb_left, emb_right, l1, l2, c1, c2,
                            set(nodes1), set(nodes2), iso,
                        )
                        if cls is not None and arbiter.accept(cls.h_part):
                            yield cls

    def _build_gluing(self, Lbig, emb_left, emb_right, l1, l2, c1, c2,
                      glue1, glue2, iso):
        def pad_l(lab):
            return tuple(lab) + (0,) * l2

        def pad_r(lab):
            return (0,) * l1 + tuple(lab)

        def vsum(u, v):
            return tuple(a + b for a, b in zip(u, v))

        nodes = []
        hs, xs, ys, labs = [], [], [], []
        for i in range(len(c1.h_part)):
            if i in glue1:
                j = iso[i]
                hs.append(vsum(emb_left(c1.gens.h[i]), emb_right(c2.gens.h[j])))
                xs.append(vsum(emb_left(c1.gens.x[i]), emb_right(c2.gens.x[j])))
                ys.append(vsum(emb_left(c1.gens.y[i]), emb_right(c2.gens.y[j])))
                labs.append(tuple(c1.h_part[i]) + tuple(c2.h_part[j]))
                nodes.append(("g", i))
            else:
                hs.append(emb_left(c1.gens.h[i]))
                xs.append(emb_left(c1.gens.x[i]))
                ys.append(emb_left(c1.gens.y[i]))
                labs.append(pad_l(c1.h_part[i]))
                nodes.append(("a", i))
        for j in range(len(c2.h_part)):
            if j not in glue2:
                hs.append(emb_right(c2.gens.h[j]))
                xs.append(emb_right(c2.gens.x[j]))
                ys.append(emb_right(c2.gens.y[j]))
                labs.append(pad_r(c2.h_part[j]))
                nodes.append(("c", j))
        r = len(hs)
        matrix = [[0] * r for _ in range(r)]
        for a in range(r):
            for b in range(r):
                side_a, ia = nodes[a]
                side_b, ib = nodes[b]
                if side_a == "c" and side_b == "c":
                    matrix[a][b] = c2.cartan_matrix[ia][ib]
                elif side_a != "c" and side_b != "c":
                    matrix[a][b] = c1.cartan_matrix[ia][ib]
        matrix = tuple(map(tuple, matrix))
        sub_typ, mapping = cartan.identify_type(matrix)
        gens = _permute_gens(
            CanonicalGenSet(matrix, tuple(hs), tuple(xs), tuple(ys)),
            mapping,
            cartan.canonical_matrix(sub_typ),
        )
        cls = SubalgebraClass(
            id=-1,
            typ=sub_typ,
            cartan_matrix=tuple(map(tuple, cartan.canonical_matrix(sub_typ))),
            h_part=tuple(labs[p] for p in mapping),
            gens=gens,
            indices=tuple(Lbig.dynkin_index(gens)),
        )
        if not Lbig.verify_canonical(gens):
            raise LiesubError("glued generators fail verification")
        return cls

    # -- inclusion ------------------------------------------------------------------

    def _mapped_subclasses(self, db, sup: SubalgebraClass):
        """Classes of the abstract type of ``sup`` pushed into the ambient algebra."""
        key = (db.ambient_typ, sup.id)
        got = self._inclusion_cache.get(key)
        if got is not None:
            return got
        L = self.algebra_for(db.ambient_typ)
        inner_db = self.classify(sup.typ)
        inner_L = self.algebra_for(sup.typ)
        images = L.embed_basis_images(inner_L, sup.gens)
        out = []
        for c in inner_db.classes:
            gens = CanonicalGenSet(
                c.cartan_matrix,
                tuple(tuple(L.map_vector(images, v)) for v in c.gens.h),
                tuple(tuple(L.map_vector(images, v)) for v in c.gens.x),
                tuple(tuple(L.map_vector(images, v)) for v in c.gens.y),
            )
            h_part = tuple(L.vector_to_cartan(h) for h in gens.h)
            out.append((c.typ, h_part, gens))
        self._inclusion_cache[key] = out
        return out

    def includes(self, db: Database, sub_id, super_id):
        """A witness subalgebra of the superclass linearly equivalent to the
        subclass, or None."""
        sub = db.by_id(sub_id)
        sup = db.by_id(super_id)
        if sub_id == super_id:
            return sub.gens
        if sup.typ == db.ambient_typ:
            return sub.gens
        if cartan.type_dimension(sub.typ) > cartan.type_dimension(sup.typ):
            return None
        if cartan.type_rank(sub.typ) > cartan.type_rank(sup.typ):
            return None
        L = self.algebra_for(db.ambient_typ)
        for typ, h_part, gens in self._mapped_subclasses(db, sup):
            if typ != sub.typ:
                continue
            if weylequiv.conjugate_sets(L.rs, h_part, sub.h_part, self.config.bt_node_cap):
                return gens
        return None

    def _compute_inclusions(self, db):
        edges = []
        order = sorted(db.classes, key=lambda c: c.id)
        for sub in order:
            for sup in order:
                if sub.id == sup.id:
                    continue
                if cartan.type_dimension(sub.typ) >= cartan.type_dimension(sup.typ):
                    continue
                if self.includes(db, sub.id, sup.id) is not None:
                    edges.append((sub.id, sup.id))
        db.inclusions = edges

    def _compute_flags(self, db):
        ambient = next((c for c in db.classes if c.typ == db.ambient_typ), None)
        for c in db.classes:
            if ambient is not None and c.id == ambient.id:
                c.maximal = False
                continue
            supers = [b for a, b in db.inclusions if a == c.id]
            c.maximal = all(
                ambient is not None and b == ambient.id for b in supers
            ) and bool(supers)
        L = self.algebra_for(db.ambient_typ)
        for h_set, typ in closed_subsystem_hparts(L.rs):
            matched = None
            for c in db.classes_of_type(typ):
                if weylequiv.conjugate_sets(L.rs, h_set, c.h_part, self.config.bt_node_cap):
                    matched = c
                    break
            if matched is None:
                raise LiesubError(
                    f"closed root subsystem of type {cartan.type_label(typ)} has no class"
                )
            matched.regular = True

    # -- chains ------------------------------------------------------------------------

    def realize_chain(self, db: Database, chain):
        """Nested generator sets realizing a chain of inclusions, top down."""
        ids = list(chain)
        if not ids:
            raise NotAChain("empty chain")
        for a, b in zip(ids, ids[1:]):
            if self.includes(db, a, b) is None:
                raise NotAChain(f"no inclusion {a} -> {b}")
        L = self.algebra_for(db.ambient_typ)
        out = [None] * len(ids)
        top = db.by_id(ids[-1])
        out[-1] = top.gens
        cur_gens = top.gens
        cur_cls = top
        for k in range(len(ids) - 2, -1, -1):
            want = db.by_id(ids[k])
            inner_db = self.classify(cur_cls.typ)
            inner_L = self.algebra_for(cur_cls.typ)
            images = L.embed_basis_images(inner_L, cur_gens)
            hit = None
            for c in inner_db.classes:
                if c.typ != want.typ:
                    continue
                hs = [tuple(L.map_vector(images, v)) for v in c.gens.h]
                labels = tuple(L.vector_to_cartan(h) for h in hs)
                if weylequiv.conjugate_sets(
                    L.rs, labels, want.h_part, self.config.bt_node_cap
                ):
                    hit = CanonicalGenSet(
                        c.cartan_matrix,
                        tuple(hs),
                        tuple(tuple(L.map_vector(images, v)) for v in c.gens.x),
                        tuple(tuple(L.map_vector(images, v)) for v in c.gens.y),
                    )
                    break
            if hit is None:
                raise NotAChain(f"could not realize {ids[k]} inside {ids[k + 1]}")
            out[k] = hit
            cur_gens = hit
            cur_cls = want
        _check_nested(L, out)
        return out

    # -- verification ---------------------------------------------------------------------

    def verify_database(self, db: Database):
        """Re-check every stored invariant; returns (ok, message)."""
        L = self.algebra_for(db.ambient_typ)
        chars = {c.labels for c in characteristics(L, seed=self.config.seed)}
        for c in db.classes:
            if not L.verify_canonical(c.gens):
                return False, f"class {c.id} fails canonical verification"
            for lab in c.h_part:
                dom, _ = L.rs.to_dominant(lab)
                if dom not in chars:
                    return False, f"class {c.id} has a non-admissible h-part element"
        for i, a in enumerate(db.classes):
            for b in db.classes[i + 1 :]:
                if weylequiv.linearly_equivalent(L, a, b, self.config.bt_node_cap):
                    return False, f"classes {a.id} and {b.id} are linearly equivalent"
        for sub_id, super_id in db.inclusions:
            if self.includes(db, sub_id, super_id) is None:
                return False, f"inclusion {sub_id} -> {super_id} has no witness"
        return True, "ok"


def _check_nested(L, gens_list):
    from . import linalg

    spans = []
    for gens in gens_list:
        span = linalg.Span(L.dim, L.zero)
        basis = []
        for v in list(gens.h) + list(gens.x) + list(gens.y):
            if span.add(v):
                basis.append(list(v))
        frontier = list(basis)
        while frontier:
            new = []
            for u in frontier:
                for w in basis:
                    b = L.bracket(u, w)
                    if span.add(b):
                        basis.append(b)
                        new.append(b)
            frontier = new
        spans.append(span)
    for lower_gens, upper in zip(gens_list, spans[1:]):
        for v in list(lower_gens.h) + list(lower_gens.x) + list(lower_gens.y):
            if not upper.contains(v):
                raise NotAChain("realization is not nested")


def suggest_field(pending) -> NumberField | None:
    """A field expected to resolve the pending constructions, from their hints.

    One quadratic hint gives that quadratic field; two genuinely different
    ones give their compositum Q(sqrt(d1) + sqrt(d2)).  Returns None when no
    machine hint is available.
    """
    from .field import rational_sqrt

    discs = []
    for item in pending:
        if item.field_hint is None:
            continue
        d = -Fraction(item.field_hint[0])   # hint is the minimal polynomial of sqrt(d)
        if not any(rational_sqrt(d * e) is not None for e in discs):
            discs.append(d)
    if not discs:
        return None
    if len(discs) == 1:
        d = discs[0]
        return NumberField([-d, 0, 1])
    d1, d2 = discs[0], discs[1]
    return NumberField([(d1 - d2) ** 2, 0, -2 * (d1 + d2), 0, 1])


def _block_matrix(*blocks):
    n = sum(len(b) for b in blocks)
    M = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                M[at + i][at + j] = b[i][j]
        at += k
    return tuple(map(tuple, M))


def _embedding_map(Lsmall, Lbig, rank_offset):
    """Basis reindexing of a direct summand into the combined algebra."""
    l_small = Lsmall.rs.rank
    l_big = Lbig.rs.rank
    index_map = {}
    for root, idx in Lsmall.index_of_root.items():
        big_root = (0,) * rank_offset + root + (0,) * (l_big - rank_offset - l_small)
        index_map[idx] = Lbig.index_of_root[big_root]
    for i in range(l_small):
        index_map[2 * Lsmall.n_pos + i] = 2 * Lbig.n_pos + rank_offset + i

    def emb(vec):
        out = Lbig.zero_vector()
        for i, c in enumerate(vec):
            if c:
                out[index_map[i]] = c
        return tuple(out)

    return emb


def closed_subsystem_hparts(rs):
    """Simple-system h-parts of all closed symmetric root subsystems.

    Pairwise obtuse independent sets of positive roots are simple systems of
    the reflection subsystems they generate; the closed ones correspond to
    the regular semisimple subalgebras.  Returned per subsystem (not up to
    Weyl conjugacy): a (h-part labels, canonical type) pair, with the h-part
    permuted into canonical node order.
    """
    pos = list(rs.positive_roots)
    n = len(pos)
    root_set = set(rs.positive_roots) | {tuple(-c for c in r) for r in rs.positive_roots}
    pairing = {}

    def pair(a, b):
        key = (a, b)
        if key not in pairing:
            q = rs.coreflection_labels(pos[b])
            pairing[key] = rs.root_eval(pos[a], q)
        return pairing[key]

    seen_systems = set()
    out = []

    def closure(simple_idx):
        roots = {pos[i] for i in simple_idx} | {tuple(-c for c in pos[i]) for i in simple_idx}
        qs = {r: rs.coreflection_labels(r) for r in roots}
        frontier = list(roots)
        while frontier:
            r = frontier.pop()
            for s in list(roots):
                val = rs.root_eval(r, qs.setdefault(s, rs.coreflection_labels(s)))
                img = tuple(a - val * b for a, b in zip(r, s))
                if img not in roots:
                    roots.add(img)
                    frontier.append(img)
        return frozenset(roots)

    def is_closed(roots):
        rl = list(roots)
        for i, a in enumerate(rl):
            for b in rl[i + 1 :]:
                s = tuple(x + y for x, y in zip(a, b))
                if s in root_set and s not in roots:
                    return False
        return True

    def emit(simple_idx):
        roots = closure(simple_idx)
        if roots in seen_systems:
            return
        seen_systems.add(roots)
        if not is_closed(roots):
            return
        labels = [rs.coreflection_labels(pos[i]) for i in simple_idx]
        k = len(simple_idx)
        matrix = tuple(
            tuple(rs.root_eval(pos[a], rs.coreflection_labels(pos[b])) for b in simple_idx)
            for a in simple_idx
        )
        typ, mapping = cartan.identify_type(matrix)
        out.append((tuple(labels[p] for p in mapping), typ))

    def grow(start, cur):
        if cur:
            emit(tuple(cur))
        if len(cur) == rs.rank:
            return
        for i in range(start, n):
            ok = True
            for j in cur:
                v = pair(j, i)
                if v > 0:
                    ok = False
                    break
            if not ok:
                continue
            if any(pair(i, j) > 0 for j in cur):
                continue
            from fractions import Fraction as _F

            rows = [[_F(c) for c in pos[j]] for j in cur] + [[_F(c) for c in pos[i]]]
            from . import linalg as _la

            if _la.rank(rows, rs.rank) != len(cur) + 1:
                continue
            cur.append(i)
            grow(i + 1, cur)
            cur.pop()

    grow(0, [])
    return out


# -- serialization ------------------------------------------------------------------


def _vec_json(field, vec):
    return [[rational_str(c) for c in field.coords(x)] for x in vec]


def _vec_load(field, data):
    return tuple(field.element([parse_rational(s) for s in coords]) for coords in data)


def database_to_json(db: Database):
    classes = []
    for c in sorted(db.classes, key=lambda c: c.id):
        classes.append(
            {
                "id": c.id,
                "type": c.type_label,
                "cartan": [list(r) for r in c.cartan_matrix],
                "hpart": [[rational_str(v) for v in lab] for lab in c.h_part],
                "gens": {
                    "h": [_vec_json(db.field, v) for v in c.gens.h],
                    "x": [_vec_json(db.field, v) for v in c.gens.x],
                    "y": [_vec_json(db.field, v) for v in c.gens.y],
                },
                "indices": [rational_str(q) for q in c.indices],
                "flags": {"regular": c.regular, "maximal": c.maximal},
            }
        )
    return {
        "version": 1,
        "ambient": db.ambient_label,
        "field": {"minpoly": [rational_str(c) for c in db.field.minpoly]},
        "classes": classes,
        "inclusions": [[a, b] for a, b in sorted(db.inclusions)],
    }


def dump_database(db: Database, path):
    blob = json.dumps(database_to_json(db), sort_keys=True, separators=(",", ":")) + "\n"
    with open(path, "w") as fh:
        fh.write(blob)


def database_from_json(data) -> Database:
    field = NumberField([parse_rational(c) for c in data["field"]["minpoly"]])
    classes = []
    for c in data["classes"]:
        matrix = tuple(tuple(int(x) for x in row) for row in c["cartan"])
        gens = CanonicalGenSet(
            matrix,
            tuple(_vec_load(field, v) for v in c["gens"]["h"]),
            tuple(_vec_load(field, v) for v in c["gens"]["x"]),
            tuple(_vec_load(field, v) for v in c["gens"]["y"]),
        )
        typ, _ = cartan.identify_type(matrix)
        classes.append(
            SubalgebraClass(
                id=int(c["id"]),
                typ=typ,
                cartan_matrix=matrix,
                h_part=tuple(tuple(parse_rational(v) for v in lab) for lab in c["hpart"]),
                gens=gens,
                indices=tuple(parse_rational(q) for q in c["indices"]),
                regular=bool(c["flags"]["regular"]),
                maximal=bool(c["flags"]["maximal"]),
            )
        )
    db = Database(
        ambient_typ=cartan.parse_type(data["ambient"]),
        field=field,
        classes=classes,
        inclusions=[(int(a), int(b)) for a, b in data["inclusions"]],
    )
    return db


def load_database(path) -> Database:
    with open(path) as fh:
        return database_from_json(json.load(fh))


def _save_cache(path, db: Database):
    data = {
        "db": database_to_json(db),
        "pending": [
            {
                "target": cartan.type_label(p.target_typ),
                "ext_matrix": [list(r) for r in p.ext_matrix],
                "hpart": [[rational_str(v) for v in lab] for lab in p.h_part],
                "system": p.system_text,
                "varnames": list(p.varnames),
                "field_hint": [rational_str(v) for v in p.field_hint] if p.field_hint else None,
            }
            for p in db.pending
        ],
        "finished": db.finished,
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")


def _load_cache(path, field: NumberField):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    db = database_from_json(data["db"])
    db.pending = [
        PendingConstruction(
            cartan.parse_type(p["target"]),
            tuple(tuple(int(x) for x in row) for row in p["ext_matrix"]),
            tuple(tuple(parse_rational(v) for v in lab) for lab in p["hpart"]),
            p["system"],
            tuple(p["varnames"]),
            tuple(parse_rational(v) for v in p["field_hint"]) if p.get("field_hint") else None,
        )
        for p in data.get("pending", [])
    ]
    db.finished = bool(data.get("finished")) and not db.pending
    if db.field != field:
        # A resumed run under a larger field embeds the cached classes.
        if field.degree == 1:
            return None
        from .field import embed as embed_scalar

        def lift_vec(vec):
            return tuple(embed_scalar(x, db.field, field) for x in vec)

        if db.field.degree != 1:
            return None   # only Q -> extension migration is automatic
        for c in db.classes:
            c.gens = CanonicalGenSet(
                c.cartan_matrix,
                tuple(lift_vec(v) for v in c.gens.h),
                tuple(lift_vec(v) for v in c.gens.x),
                tuple(lift_vec(v) for v in c.gens.y),
            )
        db.field = field
    return db
