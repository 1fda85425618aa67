"""Coders: roundtrips, frozen traces, and closed-form bit bounds."""

import math
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from amenlab.complexity import (
    CoderDecodeError,
    freq_coder,
    freq_decode,
    freq_encode,
    freq_read,
    hamming,
    lz78_decode,
    lz78_encode,
    repair_code,
    repair_decode,
    repair_encode,
    resolve_estimator,
    selfdelim_encode,
    selfdelim_length,
    selfdelim_read,
    tuple_overhead,
    tuple_pack,
    tuple_unpack,
    window_estimate,
)
from amenlab.groups import get_group
from amenlab.rng import SplitMix64, derive, site_uniform
from amenlab.symbolic import Alphabet, PartialConfiguration, binary_alphabet

AB = Alphabet(("a", "b"))


def random_word(alphabet, n, seed):
    rng = SplitMix64(derive(seed, n))
    return "".join(alphabet.symbols[rng.randrange(alphabet.size)] for _ in range(n))


def entropy_of_counts(counts):
    n = sum(counts)
    return sum(-(c / n) * math.log2(c / n) for c in counts if c)


def freq_bound(counts, asize):
    n = sum(counts)
    return n * entropy_of_counts(counts) + asize * (2 * math.log2(n + 1) + 2) + 2


# -- self-delimiting integers --------------------------------------------


def test_selfdelim_frozen_forms():
    assert selfdelim_encode(0) == "01"
    assert selfdelim_encode(1) == "1101"
    assert selfdelim_encode(5) == "11001101"


def test_selfdelim_length_law():
    for n in [0, 1, 2, 7, 8, 100, 2**20, 2**40 + 3]:
        s = selfdelim_encode(n)
        assert len(s) == selfdelim_length(n) == 2 * n.bit_length() + 2


def test_selfdelim_roundtrip_with_suffix():
    for n in list(range(300)) + [2**k + j for k in (10, 33, 64) for j in (-1, 0, 1)]:
        s = selfdelim_encode(n) + "110"
        val, pos = selfdelim_read(s, 0)
        assert val == n
        assert s[pos:] == "110"


def test_selfdelim_rejects_bad_streams():
    with pytest.raises(CoderDecodeError):
        selfdelim_read("10", 0)  # invalid pair
    with pytest.raises(CoderDecodeError):
        selfdelim_read("11", 0)  # no terminator
    with pytest.raises(CoderDecodeError):
        selfdelim_read("0001", 0)  # leading zero digit
    with pytest.raises(ValueError):
        selfdelim_encode(-1)


# -- frequency coder ---------------------------------------------------------


def test_freq_constant_word_is_header_only():
    est = freq_coder(AB, "aaaa")
    # counts (4, 0), singleton type class: no payload bits at all
    assert est.stream == selfdelim_encode(4) + selfdelim_encode(0)
    assert est.bits == 10
    assert freq_decode(AB, est.stream) == "aaaa"


def test_freq_alternating_word_close_to_one_bit_per_symbol():
    w = "ab" * 500
    est = freq_coder(AB, w)
    assert est.bits <= 1000 + 50
    assert freq_decode(AB, est.stream) == w


def test_freq_header_arithmetic_exact():
    for n in (1, 2, 17, 200):
        w = random_word(AB, n, seed=7)
        counts = [w.count(s) for s in AB.symbols]
        m = 1
        rem = 0
        for c in counts:
            rem += c
            m *= comb(rem, c)
        expect = sum(selfdelim_length(c) for c in counts) + (m - 1).bit_length()
        assert freq_coder(AB, w).bits == expect


def test_freq_bound_exhaustive_small_words():
    abc = Alphabet(("a", "b", "c"))
    cases = [(AB, 14), (abc, 8)]
    for alphabet, nmax in cases:
        for n in range(1, nmax + 1):
            for tup in product(alphabet.symbols, repeat=n):
                w = "".join(tup)
                counts = [w.count(s) for s in alphabet.symbols]
                est = freq_coder(alphabet, w)
                assert est.bits <= freq_bound(counts, alphabet.size) + 1e-9
                assert freq_decode(alphabet, est.stream) == w


def test_freq_roundtrip_random_words():
    for asize in (1, 2, 3, 5):
        alphabet = Alphabet(tuple("abcde"[:asize]))
        for n in (1, 2, 3, 50, 401):
            w = random_word(alphabet, n, seed=asize * 1000 + n)
            assert freq_decode(alphabet, freq_encode(alphabet, w)) == w


def test_freq_block_mode_roundtrip(monkeypatch):
    monkeypatch.setattr("amenlab.complexity.FREQ_BLOCK", 8)
    for n in range(1, 40):
        w = random_word(AB, n, seed=n)
        stream = freq_encode(AB, w)
        assert freq_decode(AB, stream) == w
        # embedded read stops exactly at the stream end
        word, pos = freq_read(AB, stream + "1111", 0)
        assert word == w and pos == len(stream)


def test_freq_rate_matches_entropy_on_biased_source():
    n = 10**5
    w = "".join("a" if site_uniform(99, k) < 0.1 else "b" for k in range(n))
    est = freq_coder(AB, w)
    assert abs(est.bits / n - 0.46899) < 0.02


def test_freq_rejects_bad_streams():
    with pytest.raises(ValueError):
        freq_encode(AB, "")
    with pytest.raises(ValueError):
        freq_encode(AB, "axb")
    stream = freq_encode(AB, "abba")
    with pytest.raises(CoderDecodeError):
        freq_decode(AB, stream + "0")
    with pytest.raises(CoderDecodeError):
        freq_decode(AB, stream[:-1])
    # all-zero counts would decode to the empty word
    bad = selfdelim_encode(0) + selfdelim_encode(0)
    with pytest.raises(CoderDecodeError):
        freq_decode(AB, bad)


def test_freq_rank_out_of_range():
    # counts (2,2) has class size 6; widths cover 0..7, so ranks 6,7 are junk
    head = selfdelim_encode(2) + selfdelim_encode(2)
    assert freq_decode(AB, head + "000") == "aabb"
    with pytest.raises(CoderDecodeError):
        freq_decode(AB, head + "111")


# -- LZ78 ---------------------------------------------------------------------


def test_lz78_frozen_trace_aaaa():
    stream = lz78_encode(AB, "aaaa")
    assert stream == selfdelim_encode(4) + "0" + "10" + "01"
    assert len(stream) == 13
    assert lz78_decode(AB, stream) == "aaaa"


def test_lz78_single_symbol():
    stream = lz78_encode(AB, "b")
    assert stream == selfdelim_encode(1) + "1"
    assert lz78_decode(AB, stream) == "b"


def test_lz78_constant_word_4096_small():
    w = "a" * 4096
    stream = lz78_encode(AB, w)
    assert len(stream) < 1500
    assert lz78_decode(AB, stream) == w


def test_lz78_roundtrip_random_words():
    for asize in (1, 2, 4):
        alphabet = Alphabet(tuple("abcd"[:asize]))
        for n in (1, 2, 3, 17, 100, 503):
            w = random_word(alphabet, n, seed=asize * 7919 + n)
            assert lz78_decode(alphabet, lz78_encode(alphabet, w)) == w


def test_lz78_roundtrip_with_partial_final_phrase():
    # "abab": phrases a, b, ab; then "ab" again would extend, but input ends
    w = "ababab"
    assert lz78_decode(AB, lz78_encode(AB, w)) == w


def test_lz78_fair_coin_rate_sane():
    n = 1 << 16
    w = "".join("a" if site_uniform(5, k) < 0.5 else "b" for k in range(n))
    rate = len(lz78_encode(AB, w)) / n
    assert 0.95 <= rate <= 1.25


def test_lz78_rejects_bad_streams():
    stream = lz78_encode(AB, "abba")
    with pytest.raises(CoderDecodeError):
        lz78_decode(AB, stream + "0")
    with pytest.raises(CoderDecodeError):
        lz78_decode(AB, stream[:-1])
    with pytest.raises(ValueError):
        lz78_encode(AB, "")


# -- repair coder ---------------------------------------------------------------


def corrupt(alphabet, w, flips, seed):
    rng = SplitMix64(derive(seed, len(w)))
    sites = sorted(rng.randrange(len(w)) for _ in range(3 * flips))
    out = list(w)
    done = set()
    for i in sites:
        if len(done) == flips:
            break
        if i in done:
            continue
        choices = [s for s in alphabet.symbols if s != out[i]]
        out[i] = choices[rng.randrange(len(choices))]
        done.add(i)
    return "".join(out)


def test_repair_identical_is_header_only():
    w = random_word(AB, 200, seed=3)
    est = repair_code(AB, w, w)
    assert est.stream == freq_encode(binary_alphabet(), "0" * 200)
    assert repair_decode(AB, w, est.stream) == w


def test_repair_spec_point_1000_sites_50_flips():
    base = random_word(AB, 1000, seed=11)
    target = corrupt(AB, base, 50, seed=12)
    est = repair_code(AB, base, target)
    assert est.bits <= 1000 * (0.28640 + 0.05) + 120
    assert repair_decode(AB, base, est.stream) == target


def test_repair_full_corruption_binary():
    base = "a" * 500
    target = "b" * 500
    est = repair_code(AB, base, target)
    # n substitute bits plus a tiny all-ones bitmap code
    assert 500 <= est.bits <= 500 + 50
    assert repair_decode(AB, base, est.stream) == target


def test_repair_roundtrip_various_rates():
    abcd = Alphabet(tuple("abcd"))
    for alphabet in (AB, abcd):
        for n, flips in ((1, 0), (1, 1), (64, 3), (500, 50), (500, 500)):
            base = random_word(alphabet, n, seed=n + flips)
            target = corrupt(alphabet, base, flips, seed=n * 31 + flips)
            est = repair_code(alphabet, base, target)
            assert repair_decode(alphabet, base, est.stream) == target


def test_repair_closed_form_bound():
    for alphabet in (AB, Alphabet(tuple("abcd"))):
        for n in (200, 1000):
            for delta in (0.01, 0.05, 0.1):
                flips = max(1, int(delta * n))
                base = random_word(alphabet, n, seed=n)
                target = corrupt(alphabet, base, flips, seed=n + flips)
                d = sum(1 for x, y in zip(base, target) if x != y)
                bound = (
                    n * entropy_of_counts([d, n - d])
                    + d * math.log2(alphabet.size)
                    + 2 * (2 * math.log2(n + 1) + 2)
                    + 3
                )
                assert repair_code(alphabet, base, target).bits <= bound + 1e-9


def test_repair_rejects_mismatch_and_junk():
    with pytest.raises(ValueError):
        repair_encode(AB, "ab", "abb")
    stream = repair_encode(AB, "abba", "abab")
    with pytest.raises(CoderDecodeError):
        repair_decode(AB, "abba", stream + "0")
    with pytest.raises(CoderDecodeError):
        repair_decode(AB, "abb", stream)


# -- tuple framing ----------------------------------------------------------


def test_tuple_frozen_example_123_bits():
    est = tuple_overhead(["1" * 100, "0" * 7])
    assert est.bits == 107 + 2 * 7 + 2 == 123


def test_tuple_single_part_zero_overhead():
    assert tuple_overhead(["10101"]).bits == 5


def test_tuple_roundtrip():
    rng = SplitMix64(derive(17))
    for k in (1, 2, 3, 5):
        parts = []
        for i in range(k):
            n = rng.randrange(64)
            parts.append("".join("01"[rng.randrange(2)] for _ in range(n)))
        assert tuple_unpack(tuple_pack(parts), k) == parts


def test_tuple_unpack_rejects_truncation():
    packed = tuple_pack(["1010", "11"])
    with pytest.raises(CoderDecodeError):
        tuple_unpack(packed[:3], 2)


# -- window helpers ---------------------------------------------------------


def window_on(group, coords, word):
    return PartialConfiguration(
        {group.encode((c,)): s for c, s in zip(coords, word)}
    )


def test_hamming_fractions():
    z = get_group("z")
    t1 = window_on(z, range(4), "0011")
    t2 = window_on(z, range(4), "0010")
    assert hamming(t1, t2) == Fraction(1, 4)
    assert hamming(t1, t1) == 0
    t3 = window_on(z, range(4), "1100")
    assert hamming(t1, t3) == 1


def test_hamming_rejects_support_mismatch():
    z = get_group("z")
    with pytest.raises(ValueError):
        hamming(window_on(z, range(3), "000"), window_on(z, range(4), "0000"))


def test_window_estimate_constant_window():
    z = get_group("z")
    t = window_on(z, range(10**4), "a" * 10**4)
    est = window_estimate(AB, t, "freq")
    assert est.bits / 10**4 < 0.01


def test_window_estimate_empty_support():
    est = window_estimate(AB, PartialConfiguration({}), "freq")
    assert est.bits == 0


def test_resolve_estimator_names():
    assert resolve_estimator("freq") is freq_coder
    with pytest.raises(ValueError):
        resolve_estimator("zip")
