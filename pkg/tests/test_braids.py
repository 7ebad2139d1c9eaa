"""Braid words: trajectories, the word problem, slot-assignment arrows.

The oracle here is deliberately independent of the library internals:

* trajectories are recomputed by literally simulating slot contents;
* for each pair of strands (named by their starting slots) we sum the
  signs of the crossings between them — a quantity untouched by both
  braid relations and free cancellation, so any rewrite of a word must
  preserve the whole table;
* equality of small words is confirmed by a bounded breadth-first
  closure under the defining relations (free insertion/deletion,
  far commutation, the adjacent-index triple rewrite).
"""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recouple.braids import (
    BraidWord,
    Permutation,
    SourceTargetMismatch,
    StrandMismatch,
    XBraidArrow,
    adjacent_transposition,
    braid_equal,
    compose_x,
    format_word,
    free_reduce,
    handle_reduce,
    identity_x,
    is_trivial,
    parse_word,
    underlying_perm,
    word,
    word_from_json,
    word_to_json,
)

# --------------------------------------------------------------------------
# Oracles


def oracle_trajectory(w: BraidWord) -> tuple[int, ...]:
    """slot-of-strand table computed by simulating the slots directly."""
    slots = list(range(1, w.strands + 1))  # slots[k] = strand in slot k+1
    for idx, _sign in w.letters:
        slots[idx - 1], slots[idx] = slots[idx], slots[idx - 1]
    final = [0] * w.strands
    for slot_index, strand in enumerate(slots, start=1):
        final[strand - 1] = slot_index
    return tuple(final)


def oracle_pair_sums(w: BraidWord) -> dict[tuple[int, int], int]:
    """Signed crossing count for each pair of strands, keyed by start slots."""
    slots = list(range(1, w.strands + 1))
    sums: dict[tuple[int, int], int] = {}
    for idx, sign in w.letters:
        a, b = slots[idx - 1], slots[idx]
        key = (min(a, b), max(a, b))
        sums[key] = sums.get(key, 0) + sign
        slots[idx - 1], slots[idx] = slots[idx], slots[idx - 1]
    return {k: v for k, v in sums.items() if v != 0}


def _rewrites(letters: tuple[tuple[int, int], ...], strands: int, cap: int):
    """One-step consequences of the defining relations (bounded length)."""
    n = len(letters)
    # free deletion
    for k in range(n - 1):
        if letters[k][0] == letters[k + 1][0] and letters[k][1] == -letters[k + 1][1]:
            yield letters[:k] + letters[k + 2 :]
    # far commutation
    for k in range(n - 1):
        (i, s), (j, t) = letters[k], letters[k + 1]
        if abs(i - j) >= 2:
            yield letters[:k] + ((j, t), (i, s)) + letters[k + 2 :]
    # adjacent-index triple, same sign throughout
    for k in range(n - 2):
        (i, s), (j, t), (i2, s2) = letters[k : k + 3]
        if i == i2 and s == t == s2 and abs(i - j) == 1:
            yield letters[:k] + ((j, s), (i, s), (j, s)) + letters[k + 3 :]
    # free insertion
    if n + 2 <= cap:
        for k in range(n + 1):
            for idx in range(1, strands):
                for s in (1, -1):
                    yield letters[:k] + ((idx, s), (idx, -s)) + letters[k:]


def closure_reaches(w1: BraidWord, w2: BraidWord, cap: int = 12, nodes: int = 30000):
    """True if bounded rewriting transforms w1 into w2; None if inconclusive."""
    start, goal = w1.letters, w2.letters
    if start == goal:
        return True
    seen = {start}
    frontier = [start]
    exhausted_within_bounds = True
    while frontier and len(seen) < nodes:
        nxt = []
        for letters in frontier:
            for out in _rewrites(letters, w1.strands, cap):
                if out == goal:
                    return True
                if out not in seen:
                    seen.add(out)
                    nxt.append(out)
        frontier = nxt
    if len(seen) >= nodes:
        exhausted_within_bounds = False
    return False if exhausted_within_bounds else None


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    return word(
        strands,
        [
            (rng.randrange(1, strands), rng.choice((1, -1)))
            for _ in range(length)
        ],
    )


def scrambled_equal(rng: random.Random, w: BraidWord, steps: int, cap: int) -> BraidWord:
    """A word provably equal to w, built by random relation rewrites."""
    letters = w.letters
    for _ in range(steps):
        options = list(_rewrites(letters, w.strands, cap))
        if options:
            letters = rng.choice(options)
    return BraidWord(w.strands, letters)


# --------------------------------------------------------------------------
# Permutations


def test_permutation_then_applies_left_first():
    p = Permutation((2, 1, 3))
    q = Permutation((1, 3, 2))
    assert p.then(q).image == (3, 1, 2)  # 1 -p-> 2 -q-> 3
    assert q.then(p).image == (2, 3, 1)


def test_permutation_inverse_and_identity():
    p = Permutation((3, 1, 4, 2))
    assert p.then(p.inverse()).is_identity()
    assert p.inverse().then(p) == Permutation.identity(4)
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


def test_from_cycles_and_cycle_string():
    p = Permutation.from_cycles(6, [(1, 2, 6, 4, 3)])
    assert p(1) == 2 and p(2) == 6 and p(6) == 4 and p(4) == 3 and p(3) == 1
    assert p(5) == 5
    assert p.cycle_string() == "(1 2 6 4 3)"
    assert Permutation.identity(4).cycle_string() == "id"
    two = Permutation.from_cycles(5, [(1, 3), (2, 5)])
    assert two.cycle_string() == "(1 3)(2 5)"


def test_adjacent_transposition():
    assert adjacent_transposition(4, 2).image == (1, 3, 2, 4)


# --------------------------------------------------------------------------
# Words and trajectories


def test_word_validation():
    with pytest.raises(ValueError):
        word(3, [(3, 1)])
    with pytest.raises(ValueError):
        word(3, [(1, 2)])
    with pytest.raises(StrandMismatch):
        word(3, [(1, 1)]).concat(word(4, [(1, 1)]))


def test_trajectory_matches_slot_simulation():
    rng = random.Random(7)
    for _ in range(300):
        w = random_word(rng, rng.randrange(2, 6), rng.randrange(0, 10))
        assert underlying_perm(w).image == oracle_trajectory(w)


def test_trajectory_frozen_example():
    # first letter acts first: t1 then t2 sends slot-1 content to slot 3
    w = parse_word("t1 t2")
    assert underlying_perm(w).image == (3, 1, 2)


def test_inverse_and_writhe():
    w = parse_word("t1 t2' t3")
    assert w.inverse().letters == ((3, -1), (2, 1), (1, -1))
    assert w.writhe() == 1
    assert w.concat(w.inverse()).writhe() == 0


# --------------------------------------------------------------------------
# Word problem


def test_free_reduce():
    w = word(3, [(1, 1), (2, 1), (2, -1), (1, -1), (1, 1)])
    assert free_reduce(w).letters == ((1, 1),)


def test_artin_relations_hold():
    for n in range(3, 6):
        for i in range(1, n - 1):
            lhs = word(n, [(i, 1), (i + 1, 1), (i, 1)])
            rhs = word(n, [(i + 1, 1), (i, 1), (i + 1, 1)])
            assert braid_equal(lhs, rhs)
    for i, j in itertools.combinations(range(1, 5), 2):
        if abs(i - j) >= 2:
            assert braid_equal(word(6, [(i, 1), (j, 1)]), word(6, [(j, 1), (i, 1)]))


def test_known_inequalities():
    assert not is_trivial(word(3, [(1, 1)]))
    assert not is_trivial(word(3, [(1, 1), (1, 1)]))
    assert not braid_equal(word(3, [(1, 1), (2, 1)]), word(3, [(2, 1), (1, 1)]))
    # same trajectory and writhe, still different braids
    full_twist_a = parse_word("t1 t2 t1", strands=3)
    assert not braid_equal(full_twist_a, word(3, [(1, 1), (1, 1), (1, 1)]))
    with pytest.raises(StrandMismatch):
        braid_equal(word(3, [(1, 1)]), word(4, [(1, 1)]))


def test_handle_reduce_preserves_the_braid():
    rng = random.Random(21)
    for _ in range(150):
        w = random_word(rng, rng.randrange(2, 5), rng.randrange(0, 9))
        r = handle_reduce(w)
        assert oracle_trajectory(r) == oracle_trajectory(w)
        assert oracle_pair_sums(r) == oracle_pair_sums(w)
        assert r.writhe() == w.writhe()


def test_equal_after_random_rewrites():
    rng = random.Random(5)
    for _ in range(60):
        w = random_word(rng, rng.randrange(2, 5), rng.randrange(0, 6))
        v = scrambled_equal(rng, w, steps=6, cap=10)
        assert braid_equal(w, v)


def test_agreement_with_bounded_closure():
    rng = random.Random(11)
    checked_equal = checked_unequal = 0
    for _ in range(250):
        n = rng.randrange(2, 4)
        w1 = random_word(rng, n, rng.randrange(0, 5))
        w2 = random_word(rng, n, rng.randrange(0, 5))
        if oracle_pair_sums(w1) != oracle_pair_sums(w2):
            assert not braid_equal(w1, w2)
            checked_unequal += 1
            continue
        verdict = closure_reaches(w1, w2, cap=9, nodes=20000)
        if verdict is True:
            assert braid_equal(w1, w2)
            checked_equal += 1
        elif verdict is False:
            assert not braid_equal(w1, w2)
            checked_unequal += 1
    assert checked_equal > 10 and checked_unequal > 10


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_word_times_inverse_is_trivial(data):
    n = data.draw(st.integers(2, 5))
    letters = data.draw(
        st.lists(
            st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=8
        )
    )
    w = word(n, letters)
    assert is_trivial(w.concat(w.inverse()))
    assert braid_equal(w, w)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_equality_is_a_congruence_for_concat(data):
    n = data.draw(st.integers(2, 4))
    mk = st.lists(
        st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=5
    )
    w = word(n, data.draw(mk))
    u = word(n, data.draw(mk))
    relation = word(n, [(1, 1), (1, -1)])
    assert braid_equal(w.concat(relation).concat(u), w.concat(u))


# --------------------------------------------------------------------------
# Slot-assignment arrows


def test_arrow_target_pushes_contents():
    src = Permutation.identity(3)
    arrow = XBraidArrow(src, word(3, [(1, 1)]))
    # slot 1 now shows the strand that sat in slot 2
    assert arrow.target.image == (2, 1, 3)


def test_arrow_target_with_scrambled_source():
    src = Permutation((3, 1, 2))
    arrow = XBraidArrow(src, parse_word("t1 t2"))
    v = underlying_perm(arrow.word)
    assert arrow.target == v.inverse().then(src)
    for slot in range(1, 4):
        # content of final slot came from the slot the trajectory maps onto it
        assert arrow.target(slot) == src(v.inverse()(slot))


def test_compose_x_checks_endpoints():
    a = XBraidArrow(Permutation.identity(3), word(3, [(1, 1)]))
    b = XBraidArrow(a.target, word(3, [(2, 1)]))
    ab = compose_x(a, b)
    assert ab.word.letters == ((1, 1), (2, 1))
    assert ab.source == a.source and ab.target == b.target
    with pytest.raises(SourceTargetMismatch):
        compose_x(a, XBraidArrow(Permutation.identity(3), word(3, [(2, 1)])))


def test_arrow_inverse_round_trip():
    arrow = XBraidArrow(Permutation((2, 3, 1)), parse_word("t1 t2' t1"))
    back = arrow.inverse()
    assert back.source == arrow.target and back.target == arrow.source
    assert is_trivial(arrow.word.concat(back.word))
    ident = identity_x(arrow.source)
    assert ident.target == arrow.source


# --------------------------------------------------------------------------
# Text and JSON forms


def test_parse_format_round_trip():
    w = parse_word("t1 t2' t3")
    assert w.letters == ((1, 1), (2, -1), (3, 1))
    assert w.strands == 4
    assert format_word(w) == "t1 t2' t3"
    assert format_word(word(3)) == "e"
    assert parse_word("", strands=5) == word(5)
    with pytest.raises(ValueError):
        parse_word("t1 x t2")


def test_json_round_trip():
    w = parse_word("t2 t1'", strands=6)
    blob = word_to_json(w)
    assert blob == {"n": 6, "word": [[2, 1], [1, -1]]}
    assert word_from_json(blob) == w
