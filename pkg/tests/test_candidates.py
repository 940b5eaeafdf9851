from fractions import Fraction

from liesub import cartan
from liesub.candidates import (
    DedupArbiter,
    extend_candidates,
    extension_data,
    puzzle_prefilter,
    theta_value,
)
from liesub.chevalley import algebra
from liesub.nilpotent import characteristics
from liesub.roots import root_system

from helpers import apply_matrix, weyl_matrices


def alg(name):
    return algebra(root_system(cartan.canonical_matrix(cartan.parse_type(name))))


def test_extension_data_peels_a_leaf():
    data = extension_data(cartan.parse_type("A2"))
    assert data.prefix_typ == (("A", 1),)
    assert data.parent == 0 and data.bonds == 1
    data = extension_data(cartan.parse_type("2A1"))
    assert data.parent is None
    data = extension_data(cartan.parse_type("B3"))
    assert data.prefix_typ == (("B", 2),)
    data = extension_data(cartan.parse_type("D4"))
    assert data.prefix_typ == (("A", 3),)
    data = extension_data(cartan.parse_type("A1+B2"))
    assert data.prefix_typ == (("A", 1), ("A", 1))   # B2 minus its long leaf


def test_theta_value_forces_the_norm():
    L = alg("A2")
    data = extension_data(cartan.parse_type("A2"))
    # regular A1 prefix: eta = 1, theta = 2
    out = theta_value(L.rs, data, ((1, 1),))
    assert out == (1, 2)
    # principal A1 prefix: eta = 4, theta = 8
    out = theta_value(L.rs, data, ((2, 2),))
    assert out == (Fraction(4), Fraction(8))


def test_base_case_yields_characteristics():
    L = alg("A2")
    chars = characteristics(L)
    cands = list(extend_candidates(L, cartan.parse_type("A1"), [], chars))
    assert [c.h_part for c in cands] == [((1, 1),), ((2, 2),)]


def test_2a1_in_a2_has_no_candidates():
    L = alg("A2")
    chars = characteristics(L)
    prefixes = [((1, 1),), ((2, 2),)]
    cands = list(extend_candidates(L, cartan.parse_type("2A1"), prefixes, chars))
    assert cands == []


def test_a2_in_a2_single_candidate_after_dedup():
    L = alg("A2")
    chars = characteristics(L)
    prefixes = [((1, 1),), ((2, 2),)]
    stats = {}
    cands = list(
        extend_candidates(L, cartan.parse_type("A2"), prefixes, chars, stats=stats)
    )
    assert len(cands) == 1
    assert stats["dedup_dropped"] >= 1
    assert cands[0].case == "attached-1bond"


def test_puzzle_prefilter_soundness():
    L = alg("A2")
    # the ambient's own Cartan matrix with simple coroots must pass
    C = L.rs.cartan_matrix
    hs = tuple(tuple(C[j][i] for j in range(2)) for i in range(2))
    assert puzzle_prefilter(L, C, hs)
    # principal A1 paired against itself as 2A1 dies on the 3-dim module
    twoA1 = cartan.canonical_matrix(cartan.parse_type("2A1"))
    assert not puzzle_prefilter(L, twoA1, ((2, 2), (2, 2)))


def test_filters_never_lose_classes_rank2():
    """Unfiltered exhaustive enumeration at rank <= 2 finds no class that the
    filtered stream misses (soundness of theta/orthogonality/puzzle filters)."""
    from liesub.subconstruct import ConstructConfig, Found, construct
    from liesub.weylequiv import conjugate_sets

    for ambient in ["A2", "B2"]:
        L = alg(ambient)
        chars = characteristics(L)
        prefixes = [(c.labels,) for c in chars]
        for target in ["2A1", "A2", "B2"]:
            typ = cartan.parse_type(target)
            data = extension_data(typ)
            # exhaustive stream: every W-translate of every characteristic
            exhaustive = []
            for prefix in prefixes:
                for ch in chars:
                    collected = []
                    L.rs.orbit_iterate(ch.labels, collected.append)
                    for v in collected:
                        h_part = prefix + (v,)
                        try:
                            from liesub.subconstruct import functionals

                            functionals(data.ext_matrix, h_part)
                        except Exception:
                            continue
                        out = construct(L, data.ext_matrix, h_part, ConstructConfig())
                        if isinstance(out, Found):
                            exhaustive.append(h_part)
            filtered = list(extend_candidates(L, typ, prefixes, chars))
            constructed = [
                c.h_part
                for c in filtered
                if isinstance(construct(L, data.ext_matrix, c.h_part, ConstructConfig()), Found)
            ]
            for h_part in exhaustive:
                assert any(
                    conjugate_sets(L.rs, h_part, got) is not None for got in constructed
                ), (ambient, target, h_part)


def test_dedup_arbiter_rejects_weyl_translates():
    L = alg("A2")
    arb = DedupArbiter(L.rs)
    W = weyl_matrices(L.rs)
    base = ((1, 1), (-2, 1))
    assert arb.accept(base)
    for M in W:
        moved = tuple(apply_matrix(M, h) for h in base)
        assert not arb.accept(moved)
        assert not arb.accept((moved[1], moved[0]))
