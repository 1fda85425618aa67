"""Window families: defects, temperedness, modesty, search."""

from fractions import Fraction

import pytest

from amenlab.errors import BudgetExceededError
from amenlab.folner import (
    DefectReport,
    FolnerSequence,
    product_size,
    builtin_families,
    builtin_sequences,
    defect,
    defect_report,
    description_bits,
    geometric_modesty_check,
    modest_search,
    series_tail,
    temperedness_constant,
)
from amenlab.groups import get_group, normalize_subset, set_product, subset_from_mask
from amenlab.rng import SplitMix64, derive
from amenlab.setcodec import random_connected_subset

Z = get_group("z")
Z2 = get_group("z2")
H3 = get_group("h3")


def z_interval(a, b):
    return normalize_subset(Z.encode((k,)) for k in range(a, b))


# -- built-in families --------------------------------------------------


def test_z_boxes_members():
    seq = builtin_families(Z)["boxes"]
    assert seq.subset(3) == z_interval(0, 3)
    assert [len(seq.subset(i)) for i in seq.indices(5)] == [1, 2, 3, 4, 5]


def test_z2_box_sizes_quadratic():
    seq = builtin_families(Z2)["boxes"]
    assert [len(seq.subset(n)) for n in (1, 2, 5, 8)] == [1, 4, 25, 64]


def test_h3_box_sizes_quartic():
    seq = builtin_families(H3)["boxes"]
    assert [len(seq.subset(n)) for n in (1, 2, 3)] == [1, 16, 81]


def test_dyadic_family_shares_boxes():
    fams = builtin_families(Z)
    assert fams["dyadic"].subset(3) == fams["boxes"].subset(8)
    assert fams["dyadic"].start == 0
    assert len(fams["dyadic"].subset(0)) == 1


def test_sequence_index_validation():
    seq = builtin_families(Z)["boxes"]
    with pytest.raises(ValueError):
        seq.subset(0)
    with pytest.raises(ValueError):
        seq.indices(0)
    assert list(seq.indices(3)) == [1, 2, 3]
    assert builtin_sequences(Z)[0].name == "boxes"


# -- defects ---------------------------------------------------------------


def test_defect_interval_right_shift():
    F = z_interval(0, 10)
    assert defect(Z, F, Z.encode((1,))) == Fraction(1, 10)
    assert defect(Z, F, Z.identity) == 0


def test_defect_plane_box():
    seq = builtin_families(Z2)["boxes"]
    assert defect(Z2, seq.subset(8), Z2.encode((1, 0))) == Fraction(1, 8)


def test_defect_boxes_exact_one_over_n():
    for group in (Z, Z2):
        seq = builtin_families(group)["boxes"]
        for n in (2, 3, 7, 16):
            rep = defect_report(seq, n)
            assert rep.size == n**group.dimension
            assert all(v == Fraction(1, n) for _, v in rep.defects)
            assert rep.max_defect == Fraction(1, n)


def brute_h3_box_defect(n, gen):
    """Independent oracle: explicit triple arithmetic, no group codec."""
    box = {(a, b, c) for a in range(n) for b in range(n) for c in range(n * n)}
    ga, gb, gc = gen
    shifted = {(ga + a, gb + b, gc + c + ga * b) for (a, b, c) in box}
    return Fraction(len(shifted - box), len(box))


def test_h3_box_defects_match_brute_force():
    seq = builtin_families(H3)["boxes"]
    gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
    for n in (2, 3, 6):
        rep = defect_report(seq, n)
        for (g, got), coords in zip(rep.defects, gens):
            assert got == brute_h3_box_defect(n, coords)
    # closed form for the x-shift at n=6: (n^3 + n(n-1)^2/2) / n^4
    assert defect_report(seq, 6).defects[0][1] == Fraction(97, 432)


def test_h3_max_defect_small_by_n16():
    seq = builtin_families(H3)["boxes"]
    assert defect_report(seq, 16).max_defect < Fraction(1, 10)


def test_defect_rejects_empty():
    with pytest.raises(ValueError):
        defect(Z, (), Z.identity)


# -- temperedness ---------------------------------------------------------


def brute_tempered(seq, upto):
    group = seq.group
    best = Fraction(0)
    for i in seq.indices(upto):
        if i == seq.start:
            continue
        Fi = seq.subset(i)
        union = set()
        for j in seq.indices(i - 1):
            inv = {group.inverse(f) for f in seq.subset(j)}
            union |= set_product(group, inv, Fi)
        best = max(best, Fraction(len(union), len(Fi)))
    return best


def test_tempered_dyadic_frozen_value():
    seq = builtin_families(Z)["dyadic"]
    got = temperedness_constant(seq, 10)
    # union of (-2^j, 2^i) over j < i peaks at i=10: (3*2^9 - 1)/2^10
    assert got == Fraction(3 * 2**9 - 1, 2**10)
    assert got <= Fraction(3, 2)
    assert got == brute_tempered(seq, 10)


def test_tempered_boxes_frozen_value():
    seq = builtin_families(Z)["boxes"]
    got = temperedness_constant(seq, 20)
    # union over j<i is [-(i-2), i-1], so the ratio is (2i-2)/i; max at i=20
    assert got == Fraction(19, 10)
    assert got == brute_tempered(seq, 20)


def test_tempered_singleton_sequence_is_one():
    seq = FolnerSequence(Z, "dots", 1, lambda i: (Z.identity,))
    assert temperedness_constant(seq, 5) == 1


def test_tempered_needs_two_indices():
    seq = builtin_families(Z)["boxes"]
    with pytest.raises(ValueError):
        temperedness_constant(seq, 1)


def testproduct_size_matches_generic_sets():
    rng = SplitMix64(derive(31))
    for group in (Z, Z2, H3):
        for trial in range(5):
            A = random_connected_subset(group, 1 + rng.randrange(20), seed=trial)
            B = random_connected_subset(group, 1 + rng.randrange(20), seed=trial + 100)
            assert product_size(group, A, B) == len(set_product(group, A, B))


# -- modesty -------------------------------------------------------------


def test_geometric_modesty_examples():
    assert geometric_modesty_check(Z, z_interval(0, 3))
    assert not geometric_modesty_check(Z, normalize_subset([Z.encode((0,)), Z.encode((2,))]))
    tromino = normalize_subset(Z2.encode(c) for c in [(0, 0), (1, 0), (0, 1)])
    assert geometric_modesty_check(Z2, tromino)


def test_builtin_members_pass_geometric_check():
    for group in (Z, Z2, H3):
        for seq in builtin_sequences(group):
            for i in (seq.start, seq.start + 1, seq.start + 3):
                assert geometric_modesty_check(group, seq.subset(i))


def test_modest_search_hand_traces():
    assert modest_search(Z, 0) == (0,)
    assert modest_search(Z, 1) == (0, 1)


def test_modest_search_i4_golden_and_recheck():
    F = modest_search(Z, 4)
    assert F == subset_from_mask(2047)
    assert len(F) == 11
    # recompute both defining conditions from scratch
    assert len(F) > 4
    Fset = frozenset(F)
    for g in range(4):
        shifted = {Z.multiply(g, f) for f in Fset}
        assert len(shifted - Fset) * 5 < len(Fset)


def test_modest_search_cap():
    with pytest.raises(BudgetExceededError):
        modest_search(Z, 4, cap=100)


def test_description_bits_singleton_codec():
    assert description_bits(Z, (Z.identity,)) == 3


def test_description_bits_interval_at_most_codec():
    for n in (4, 10, 50):
        assert description_bits(Z, z_interval(0, n)) <= n + 2


def test_description_bits_scattered_pair_delta():
    F = normalize_subset([Z.encode((0,)), Z.encode((1000,))])
    # frame(2) + frame(index 0) + frame(gap 1999) = 6 + 2 + 24
    assert description_bits(Z, F) == 32


def test_description_bits_box_ratio_small():
    seq = builtin_families(Z2)["dyadic"]
    F = seq.subset(6)  # 64 x 64
    assert len(F) == 4096
    assert description_bits(Z2, F) / len(F) < 0.05
    F32 = builtin_families(Z2)["boxes"].subset(32)
    assert description_bits(Z2, F32) / 1024 < 0.05


def test_description_bits_empty_set():
    assert description_bits(Z, ()) == 2


# -- tail sums ------------------------------------------------------------


def test_series_tail_geometric_exact():
    total = series_tail(range(1, 21), 1)
    assert total == Fraction(2**20 - 1, 2**20)
    assert total < 1


def test_series_tail_empty():
    assert series_tail([], Fraction(1, 2)) == 0


def test_series_tail_dyadic_quarter_pinned():
    sizes = [2**i for i in range(21)]
    total = series_tail(sizes, Fraction(1, 4))
    assert isinstance(total, float)
    assert abs(total - 2.3644247) < 1e-6


def test_series_tail_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        series_tail([1, 2], 0)
