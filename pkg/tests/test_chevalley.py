import random
from fractions import Fraction

import pytest

from liesub import cartan
from liesub.chevalley import CanonicalGenSet, algebra, structure_constants
from liesub.errors import NotToral
from liesub.field import NumberField
from liesub.roots import root_system


def alg(name, field=None):
    rs = root_system(cartan.canonical_matrix(cartan.parse_type(name)))
    return algebra(rs, field) if field else algebra(rs)


def test_dimensions():
    assert alg("A1").dim == 3
    assert alg("A2").dim == 8
    assert alg("G2").dim == 14
    assert alg("D4").dim == 28


def test_a1_relations():
    L = alg("A1")
    h, x, y = L.basis_vector(2), L.basis_vector(0), L.basis_vector(1)
    assert L.bracket(h, x) == [2, 0, 0]
    assert L.bracket(x, y) == [0, 0, 1]
    assert L.bracket(h, y) == [0, -2, 0]


def test_structure_constants_have_chain_magnitude():
    for name in ["A2", "B2", "G2", "B3"]:
        rs = root_system(cartan.canonical_matrix(cartan.parse_type(name)))
        co = structure_constants(rs)
        for a in co.roots:
            for b in co.roots:
                s = tuple(x + y for x, y in zip(a, b))
                if s in co.roots:
                    assert abs(co.N(a, b)) == co._chain_p(a, b) + 1
                    assert co.N(a, b) == -co.N(b, a)
                    neg = tuple(-c for c in s)
                    na, nb = tuple(-c for c in a), tuple(-c for c in b)
                    assert co.N(na, nb) == -co.N(a, b)


@pytest.mark.parametrize("name,count", [("G2", 1000), ("A3", 400), ("D4", 400), ("F4", 200)])
def test_jacobi_identity_random_triples(name, count):
    L = alg(name)
    rng = random.Random(42)
    for _ in range(count):
        u, v, w = (L.basis_vector(rng.randrange(L.dim)) for _ in range(3))
        t1 = L.bracket(L.bracket(u, v), w)
        t2 = L.bracket(L.bracket(v, w), u)
        t3 = L.bracket(L.bracket(w, u), v)
        assert all(a + b + c == 0 for a, b, c in zip(t1, t2, t3))


def test_killing_form_values():
    L = alg("A1")
    h = L.basis_vector(2)
    assert L.killing_form(h, h) == 8
    # grading: Cartanperp root vectors
    A2 = alg("A2")
    for i in range(3):
        for j in range(2):
            assert A2.killing_form(A2.basis_vector(i), A2.basis_vector(6 + j)) == 0


def test_killing_form_is_associative():
    L = alg("B2")
    rng = random.Random(9)
    for _ in range(100):
        u, v, w = (L.basis_vector(rng.randrange(L.dim)) for _ in range(3))
        assert L.killing_form(L.bracket(u, v), w) == L.killing_form(u, L.bracket(v, w))
        assert L.killing_form(u, v) == L.killing_form(v, u)


def test_direct_sum_ideals_are_orthogonal():
    L = alg("A1+A1")
    first = [L.index_of_root[(1, 0)], L.n_pos + L.index_of_root[(1, 0)], 2 * L.n_pos]
    second = [L.index_of_root[(0, 1)], L.n_pos + L.index_of_root[(0, 1)], 2 * L.n_pos + 1]
    for i in first:
        for j in second:
            assert L.killing_form(L.basis_vector(i), L.basis_vector(j)) == 0


def test_weight_space_a1():
    L = alg("A1")
    h = L.basis_vector(2)
    plus = L.weight_space([h], [2])
    assert len(plus) == 1 and plus[0][0] == 1
    zero = L.weight_space([h], [0])
    assert len(zero) == 1 and zero[0][2] == 1


def test_weight_space_a2_principal_zero():
    L = alg("A2")
    h = L.cartan_to_vector((2, 2))
    zero = L.weight_space([h], [0])
    assert len(zero) == 2   # exactly the Cartan


def test_weight_space_dimension_sum():
    L = alg("B2")
    h = L.cartan_to_vector((2, 2))
    total = 0
    for val in range(-8, 9):
        total += len(L.weight_space([h], [val]))
    assert total == L.dim


def test_weight_space_rejects_non_commuting():
    L = alg("A2")
    with pytest.raises(NotToral):
        L.weight_space([L.basis_vector(0), L.basis_vector(3)], [0, 0])


def test_centralizer():
    L = alg("A1")
    assert len(L.centralizer([])) == 3
    assert len(L.centralizer([L.basis_vector(2)])) == 1
    A2 = alg("A2")
    gens = A2.standard_generators()
    # centralizer of a regular nilpotent element has dimension = rank
    e = [a + b for a, b in zip(gens.x[0], gens.x[1])]
    assert len(A2.centralizer([e])) == 2


def test_dynkin_index_values():
    A2 = alg("A2")
    gens = A2.standard_generators()
    assert A2.dynkin_index(gens) == [1]
    # principal sl2: known index values 4 (A2), 10 (B2), 28 (G2)
    from liesub.subconstruct import ConstructConfig, Found, construct

    for name, idx in [("A2", 4), ("B2", 10), ("G2", 28)]:
        L = alg(name)
        out = construct(L, ((2,),), [(2, 2)], ConstructConfig())
        assert isinstance(out, Found)
        assert L.dynkin_index(out.gens) == [Fraction(idx)]


def test_verify_canonical_accepts_standard_generators():
    for name in ["A1", "A2", "B2", "G2", "A3", "A1+B2"]:
        L = alg(name)
        assert L.verify_canonical(L.standard_generators())


def test_verify_canonical_rejects_broken_relations():
    L = alg("A2")
    gens = L.standard_generators()
    bad = CanonicalGenSet(
        gens.cartan_matrix,
        gens.h,
        gens.x,
        (gens.y[1], gens.y[0]),   # [x_i, y_j] relations now fail
    )
    assert not L.verify_canonical(bad)


def test_verify_canonical_over_extension():
    F = NumberField([3, 0, 1])
    L = alg("A2", F)
    assert L.verify_canonical(L.standard_generators())


def test_embed_basis_images_respects_brackets():
    amb = alg("A3")
    inner = alg("A2")
    # the top-left A2 of A3 with standard generators
    hs, xs, ys = [], [], []
    for i in range(2):
        root = tuple(1 if j == i else 0 for j in range(3))
        k = amb.index_of_root[root]
        xs.append(tuple(amb.basis_vector(k)))
        ys.append(tuple(amb.basis_vector(amb.n_pos + k)))
        hs.append(tuple(amb.basis_vector(2 * amb.n_pos + i)))
    gens = CanonicalGenSet(inner.rs.cartan_matrix, tuple(hs), tuple(xs), tuple(ys))
    images = amb.embed_basis_images(inner, gens)
    rng = random.Random(1)
    for _ in range(60):
        i, j = rng.randrange(inner.dim), rng.randrange(inner.dim)
        u, v = inner.basis_vector(i), inner.basis_vector(j)
        lhs = amb.map_vector(images, inner.bracket(u, v))
        rhs = amb.bracket(amb.map_vector(images, u), amb.map_vector(images, v))
        assert lhs == rhs
