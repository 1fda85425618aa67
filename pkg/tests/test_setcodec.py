import pytest

from amenlab.groups import generator_boundary, get_group, normalize_subset
from amenlab.setcodec import (
    DecodeError,
    EncodingDomainError,
    code_length,
    decode_connected,
    encode_connected,
    random_connected_subset,
)
from amenlab.rng import SplitMix64


def interval(n):
    z = get_group("z")
    return normalize_subset(z.encode((k,)) for k in range(n))


def test_hand_trace_singleton():
    # visit 0: '1'; +1: '0'; -1: '0'
    assert encode_connected(get_group("z"), interval(1)) == "100"


def test_hand_trace_pair():
    # visit 0: '1'; +1 in T: '1'; +2: '0'; 0 visited; -1: '0'
    assert encode_connected(get_group("z"), interval(2)) == "1100"


def test_decode_hand_traces():
    z = get_group("z")
    assert decode_connected(z, "100") == interval(1)
    assert decode_connected(z, "1100") == interval(2)


def test_length_law_on_intervals():
    z = get_group("z")
    for n in (1, 2, 5, 33):
        w = encode_connected(z, interval(n))
        assert len(w) == n + 2
        assert w.count("1") == n
        assert w.count("0") == 2


def test_rejects_bad_sets():
    z = get_group("z")
    with pytest.raises(EncodingDomainError):
        encode_connected(z, [])
    with pytest.raises(EncodingDomainError):
        encode_connected(z, [z.encode((1,)), z.encode((2,))])  # no identity
    with pytest.raises(EncodingDomainError):
        encode_connected(z, [z.encode((0,)), z.encode((2,))])  # gap


def test_rejects_bad_bits():
    z = get_group("z")
    with pytest.raises(DecodeError):
        decode_connected(z, "")
    with pytest.raises(DecodeError):
        decode_connected(z, "10")       # truncated
    with pytest.raises(DecodeError):
        decode_connected(z, "1001")     # leftover bit
    with pytest.raises(DecodeError):
        decode_connected(z, "1x0")
    with pytest.raises(DecodeError):
        decode_connected(z, "000")      # identity outside the set


@pytest.mark.parametrize("name", ["z", "z2", "h3"])
def test_roundtrip_random_sets(name):
    group = get_group(name)
    rng = SplitMix64(2024)
    for trial in range(60):
        size = 1 + rng.randrange(120)
        T = random_connected_subset(group, size, seed=rng.next64())
        w = encode_connected(group, T)
        assert decode_connected(group, w) == T
        # length law against the brute-force boundary
        assert len(w) == len(T) + len(generator_boundary(group, T))
        assert w.count("1") == len(T)
        assert len(w) == code_length(group, T)


def test_distinct_sets_distinct_codes():
    z2 = get_group("z2")
    seen = {}
    rng = SplitMix64(5)
    for trial in range(40):
        T = random_connected_subset(z2, 1 + rng.randrange(40), seed=rng.next64())
        w = encode_connected(z2, T)
        if w in seen:
            assert seen[w] == T
        seen[w] = T


def test_generator_order_matters():
    # the code word depends on the fixed generator order; swapping +1/-1
    # would relabel children, so an asymmetric set must not encode like its
    # mirror image
    z = get_group("z")
    right = normalize_subset([z.encode((0,)), z.encode((1,))])
    left = normalize_subset([z.encode((0,)), z.encode((-1,))])
    assert encode_connected(z, right) != encode_connected(z, left)


def test_random_subset_deterministic():
    z2 = get_group("z2")
    a = random_connected_subset(z2, 50, seed=99)
    b = random_connected_subset(z2, 50, seed=99)
    assert a == b
    assert len(a) == 50
