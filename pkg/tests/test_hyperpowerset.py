from itertools import islice
import random

from hypothesis import given, settings, strategies as st
import pytest

from dsmfusion import hyperpowerset
from dsmfusion.codification import EMPTY, ElementCode, coding_theta, eval_expression, make_frame
from dsmfusion.errors import CapacityError, DecodeError, NotDecodableError
from dsmfusion.hyperpowerset import (
    cardinality_histogram,
    decode,
    decode_many,
    generate_dthetar,
    histogram_csv,
    intersection_basis,
    monotone_boolean_functions,
    power_set_sweep,
)

from oracles import dthetar_bruteforce, intersection_sets, singleton_sets

C = ElementCode.of


def frame_sets(frame):
    return [frozenset(s.parts) for s in frame.singletons]


def generated_sets(frame):
    return [frozenset(e.code.parts) for e in generate_dthetar(frame)]


def test_mbf_counts():
    assert [sum(1 for _ in monotone_boolean_functions(k)) for k in range(6)] == [2, 3, 6, 20, 168, 7581]


def test_basis_examples():
    frame = make_frame(3, ["1n2"])
    basis = intersection_basis(frame)
    assert [b.expression for b in basis] == ["1", "2", "3", "1n3", "2n3"]
    assert [b.code.parts for b in basis][3:] == [(3,), (4,)]
    assert len(intersection_basis(coding_theta(3))) == 7
    assert len(intersection_basis(make_frame(4, "2T"))) == 4


@pytest.mark.parametrize(
    "n, constraints",
    [(1, None), (2, None), (3, None), (4, None), (3, ["1n3"]), (3, ["1n2", "2n3"]), (4, ["1n2", "3n4"]),
     (4, ["1n2n3"]), (4, ["(1u2)n3"]), (4, "2T"), (3, ["1"])],
)
def test_matches_bruteforce(n, constraints):
    frame = make_frame(n, constraints)
    got = generated_sets(frame)
    assert len(got) == len(set(got))
    assert got[0] == frozenset()
    assert set(got) == dthetar_bruteforce(frame_sets(frame))


def test_frame_sets_match_oracle():
    frame = make_frame(4, ["1n3"])
    removed = frozenset(frame.removed_parts.parts)
    assert frame_sets(frame) == singleton_sets(4, removed)
    assert {frozenset(b.code.parts) for b in intersection_basis(frame)} == intersection_sets(frame_sets(frame))


def test_constraints_never_grow():
    free = sum(1 for _ in generate_dthetar(coding_theta(4)))
    assert free == 167
    for constraints in (["1n2"], ["1n2", "1n3"], ["1n2n3n4"], "2T"):
        assert sum(1 for _ in generate_dthetar(make_frame(4, constraints))) <= free


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_shafer_power_set(n):
    assert sum(1 for _ in generate_dthetar(make_frame(n, "2T"))) == 2**n


def test_entries_render():
    frame = make_frame(3, ["1n3"])
    entries = {e.code: e for e in generate_dthetar(frame)}
    assert entries[EMPTY].expression == "{}"
    assert entries[EMPTY].smarandache == "{}"
    assert entries[C([2, 4, 7])].expression == "3u(1n2)"
    for code, entry in entries.items():
        if code:
            assert eval_expression(entry.expression, frame) == code


def test_histogram():
    assert cardinality_histogram(coding_theta(2)) == {1: 1, 2: 2, 3: 1}
    assert cardinality_histogram(coding_theta(3)) == {1: 1, 2: 3, 3: 3, 4: 4, 5: 3, 6: 3, 7: 1}
    assert histogram_csv({1: 1, 2: 2, 3: 1}) == "cardinality,count\n1,1\n2,2\n3,1\n"


def test_capacity():
    with pytest.raises(CapacityError):
        list(generate_dthetar(coding_theta(4), limit=100))
    with pytest.raises(CapacityError):
        next(generate_dthetar(coding_theta(7)))
    # constrained large frames still stream
    assert sum(1 for _ in generate_dthetar(make_frame(9, "2T"))) == 512


def test_stream_is_lazy():
    first = list(islice(generate_dthetar(coding_theta(6)), 3))
    assert first[0].code == EMPTY and len(first) == 3


def test_power_set_sweep():
    sweep = power_set_sweep(coding_theta(2))
    assert [(c.parts, t) for c, t in sweep] == [((), "{}"), ((1, 2), "1"), ((1, 3), "2"), ((1, 2, 3), "1u2")]


def test_decode_examples():
    frame = make_frame(3, ["1n3"])
    assert decode(C([2]), frame) == "1n2"
    assert decode(C([2, 4, 7]), frame) == "3u(1n2)"
    assert decode(EMPTY, frame) == "{}"
    assert decode(frame.universe, frame) == "1u2u3"
    with pytest.raises(NotDecodableError):
        decode(C([2]), coding_theta(2))
    with pytest.raises(DecodeError):
        decode(C([1]), frame)  # removed part
    assert decode_many([C([2]), C([3])], coding_theta(2)) == [None, None]


def test_decode_round_trip_all_n4():
    frame = coding_theta(4)
    codes = [e.code for e in generate_dthetar(frame)]
    texts = decode_many(codes, frame)
    for code, text in zip(codes, texts):
        assert text is not None
        if code:
            assert eval_expression(text, frame) == code


def test_stage_one_avoids_generation(monkeypatch):
    frame = coding_theta(4)

    def boom(*args, **kwargs):
        raise AssertionError("generation started")

    monkeypatch.setattr(hyperpowerset, "generate_dthetar", boom)
    codes = [c for c, _ in power_set_sweep(frame)] + [b.code for b in intersection_basis(frame)]
    assert all(t is not None for t in decode_many(codes, frame))


@given(st.integers(0, 3), st.data())
@settings(max_examples=40, deadline=None)
def test_random_constraints_match_oracle(n_constraints, data):
    n = data.draw(st.integers(2, 4))
    pool = [f"{a}n{b}" for a in range(1, n + 1) for b in range(a + 1, n + 1)] + ["1n2n3" if n >= 3 else "1n2"]
    constraints = data.draw(st.lists(st.sampled_from(pool), max_size=n_constraints, unique=True))
    frame = make_frame(n, constraints or None)
    got = generated_sets(frame)
    assert len(got) == len(set(got))
    assert set(got) == dthetar_bruteforce(frame_sets(frame))


def test_random_decode_n5_sample():
    frame = coding_theta(5)
    rng = random.Random(3)
    entries = list(generate_dthetar(frame))
    sample = rng.sample(entries, 50)
    texts = decode_many([e.code for e in sample], frame)
    for e, text in zip(sample, texts):
        if e.code:
            assert eval_expression(text, frame) == e.code
