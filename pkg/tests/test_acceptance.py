"""Acceptance gate: the ten headline properties, one verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines;
each test also fails loudly on its own.  Where a stated runtime budget
exists it is measured and asserted.  All arithmetic is exact (Fraction
scalars or Fraction matrices); there are no tolerances anywhere.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict, deque
from fractions import Fraction

from recouple.braids import BraidWord, Permutation, XBraidArrow, braid_equal, parse_word, word
from recouple.diagrams import (
    Box,
    StringDiagram,
    compose_boxes,
    deformed_pentagon,
    is_commutative,
    plain_pentagon,
)
from recouple.gamma import (
    BraidedRecoupling,
    gamma_arrow,
    gamma_braided,
    gamma_noduled,
    gamma_nodule_change,
    gamma_reattachment,
)
from recouple.models import (
    check_pentagon,
    compose_all,
    ghost_components,
    matrix_hecke,
    matrix_swap,
    scalar_coboundary,
    scalar_power_ac,
    scalar_random,
    scalar_random_braided,
    scalar_strict,
)
from recouple.nodules import NoduleChange, NoduledRecoupling, noduled
from recouple.recouplings import (
    IllegalMove,
    NotSplit,
    adjacent_levels,
    apply_reattachment,
    reattachment,
    recoupling,
    split_about,
)
from recouple.trees import (
    LEAF,
    NULL,
    cut_above,
    cut_below,
    enumerate_trees,
    level_leq,
    make_tree,
    parse_tree,
)


def report(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {name}"
    if detail:
        line += f" — {detail}"
    print(line)
    assert ok, line


# --------------------------------------------------------------------------
# 1. Cut operations


def test_01_cut_operation_lemma():
    started = time.monotonic()
    checked = 0
    for n in range(1, 8):
        for t in enumerate_trees(n):
            size = len(t)
            assert cut_below(t, 1) == LEAF
            for i in (size, size + 1):
                assert cut_below(t, i) == t
                assert cut_above(t, i) == NULL
            if size >= 2:
                assert cut_above(t, 1) == t
                assert len(cut_above(t, size - 1)) == 2
            for i in range(1, size):
                for j in range(1, size):
                    if i != j and level_leq(t, i, j):
                        assert cut_below(t, i) == cut_below(cut_below(t, j), i)
                        inner = cut_above(t, i)
                        assert any(
                            cut_above(inner, k) == cut_above(t, j)
                            for k in range(1, abs(i - j) + 2)
                        )
            checked += 1
    elapsed = time.monotonic() - started
    report(
        1,
        "cut operations: all clauses, every tree of length <= 7",
        elapsed < 10.0,
        f"{checked} trees in {elapsed:.2f}s (budget 10s)",
    )


# --------------------------------------------------------------------------
# 2. Factorization-independence of the evaluation


def _move_graph(n: int):
    trees = enumerate_trees(n)
    out = {
        s: [(apply_reattachment(s, lvl), reattachment(s, lvl)) for lvl in adjacent_levels(s)]
        for s in trees
    }
    dist: dict = {}
    for s in trees:
        d = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u, _mv in out[v]:
                if u not in d:
                    d[u] = d[v] + 1
                    queue.append(u)
        dist[s] = d
    return trees, out, dist


def _admissible_walks(s, out, dist_s):
    """Move sequences from s of length <= distance(endpoint) + 2.

    A prefix longer than that bound can never recover (each step changes
    the distance by at most one), so the pruning is exact.
    """
    walks: dict = defaultdict(list)
    acc: list = []

    def go(v):
        if acc:
            walks[v].append(tuple(acc))
        for u, mv in out[v]:
            if len(acc) + 1 <= dist_s[u] + 2:
                acc.append(mv)
                go(u)
                acc.pop()

    go(s)
    return walks


def test_02_all_walk_evaluations_agree():
    started = time.monotonic()
    leaves_for = {2: [2, 1], 3: [2, 1, 3], 4: [2, 1, 3, 1], 5: [2, 1, 3, 1, 2]}
    models = [scalar_random(seed) for seed in range(20)]
    pairs = walks_total = 0
    for n in range(2, 6):
        trees, out, dist = _move_graph(n)
        leaves = leaves_for[n]
        walk_table = {s: _admissible_walks(s, out, dist[s]) for s in trees}
        for model in models:
            values: dict = {}

            def value_of(mv):
                if mv not in values:
                    values[mv] = gamma_reattachment(mv, leaves, model).value
                return values[mv]

            for s in trees:
                for t in trees:
                    for walk in walk_table[s].get(t, ()):
                        composite = Fraction(1)
                        for mv in walk:
                            composite *= value_of(mv)
                        if s == t:
                            assert composite == 1
                        else:
                            assert composite == gamma_arrow(recoupling(s, t), leaves, model).value
            # every walk of ANY length agrees: the edge values admit a potential
            base = trees[0]
            potential = {base: Fraction(1)}
            queue = deque([base])
            while queue:
                v = queue.popleft()
                for u, mv in out[v]:
                    if u not in potential:
                        potential[u] = potential[v] * value_of(mv)
                        queue.append(u)
            for v in trees:
                for u, mv in out[v]:
                    assert value_of(mv) == potential[u] / potential[v]
        pairs += len(trees) ** 2
        walks_total += sum(len(ws) for s in trees for ws in walk_table[s].values())
    elapsed = time.monotonic() - started
    report(
        2,
        "evaluation is factorization-independent (20 seeded models, exact)",
        elapsed < 300.0,
        f"{pairs} pairs, {walks_total} bounded walks + potential certificate, {elapsed:.1f}s (budget 300s)",
    )


# --------------------------------------------------------------------------
# 3. Pentagon predicate vs the two composite routes


def test_03_pentagon_predicate_matches_routes():
    rng = random.Random(33)
    models = [scalar_power_ac(), scalar_strict()]
    outcomes = {True: 0, False: 0}
    for _ in range(50):
        a, b, c, d = (rng.randint(0, 5) for _ in range(4))
        for model in models:
            one = model.identity
            short = compose_all(
                model, [model.assoc(a + b, c, d), model.assoc(a, b, c + d)]
            )
            long = compose_all(
                model,
                [
                    model.tensor_arrows(model.assoc(a, b, c), one(d)),
                    model.assoc(a, b + c, d),
                    model.tensor_arrows(one(a), model.assoc(b, c, d)),
                ],
            )
            agree = model.equal_arrows(short, long)
            assert agree == check_pentagon(model, a, b, c, d)
            outcomes[agree] += 1
    report(
        3,
        "pentagon predicate iff route-composite equality (50 tuples, 2 families)",
        outcomes[True] > 0 and outcomes[False] > 0,
        f"{outcomes[True]} commuting / {outcomes[False]} broken instances",
    )


# --------------------------------------------------------------------------
# 4. Split factorization and the gapped-move alphabet


def test_04_splits_and_gapped_moves():
    split_checked = 0
    models = [scalar_coboundary(5), scalar_random(3)]
    for n in range(2, 6):
        trees = enumerate_trees(n)
        leaves = [2, 1, 3, 1, 2][:n]
        for s in trees:
            for t in trees:
                r = recoupling(s, t)
                try:
                    first, second = split_about(r, 2)
                except NotSplit:
                    continue
                split_checked += 1
                for model in models:
                    whole = gamma_arrow(r, leaves, model)
                    glued = model.compose(
                        gamma_arrow(first, leaves, model), gamma_arrow(second, leaves, model)
                    )
                    assert model.equal_arrows(whole, glued)
    # gapped-move factorizations agree with adjacent ones in a monoidal model
    monoidal = scalar_coboundary(5)
    pseudo_checked = 0
    for n in range(2, 6):
        leaves = [2, 1, 3, 1, 2][:n]
        for s in enumerate_trees(n):
            for t in enumerate_trees(n):
                r = recoupling(s, t)
                plain = gamma_arrow(r, leaves, monoidal)
                gapped = gamma_arrow(r, leaves, monoidal, mode="pseudo")
                assert monoidal.equal_arrows(plain, gapped)
                pseudo_checked += 1
    # negative: with a broken pentagon the gapped alphabet separates routes
    broken = scalar_power_ac()
    rng = random.Random(41)
    pools = {5: enumerate_trees(5), 6: enumerate_trees(6)}
    leaves_for = {5: [1, 1, 1, 1, 1], 6: [1, 2, 1, 1, 2, 1]}
    witness_trial = None
    for trial in range(1, 10_001):
        n = 5 if rng.random() < 0.7 else 6
        s, t = rng.choice(pools[n]), rng.choice(pools[n])
        r = recoupling(s, t)
        plain = gamma_arrow(r, leaves_for[n], broken)
        gapped = gamma_arrow(r, leaves_for[n], broken, mode="pseudo", unchecked=True)
        if plain.value != gapped.value:
            witness_trial = trial
            break
    report(
        4,
        "split-at-2 factorizations glue; gapped moves agree iff coherent",
        split_checked > 0 and witness_trial is not None,
        f"{split_checked} splits, {pseudo_checked} gapped agreements, "
        f"disagreement witness at trial {witness_trial} (budget 10^4)",
    )


# --------------------------------------------------------------------------
# 5. Marked-leaf arrows: chain consistency and the base unit arrows


def _ghost_subsets(n: int):
    yield frozenset()
    for size in range(1, n):
        for combo in _combos(range(1, n + 1), size):
            yield frozenset(combo)


def _combos(pool, size):
    from itertools import combinations

    return combinations(pool, size)


def test_05_marked_arrows_compose_and_reduce_to_unitors():
    model = scalar_random(2)
    triples = 0
    refused_groups = 0
    for n in range(2, 5):
        trees = enumerate_trees(n)
        base = [2, 1, 3, 2][:n]
        for ghosts in _ghost_subsets(n):
            leaves = [0 if p in ghosts else base[p - 1] for p in range(1, n + 1)]
            marked = [noduled(t, ghosts=ghosts) for t in trees]
            try:
                values = {
                    (x.tree, y.tree): gamma_noduled(NoduledRecoupling(x, y), leaves, model)
                    for x in marked
                    for y in marked
                }
            except IllegalMove:
                # adjacent ghost runs can leave a mark flip with no surviving
                # sibling object; those arrows sit outside the evaluator's
                # supported fragment, so the whole group is skipped
                refused_groups += 1
                continue
            for x in marked:
                for y in marked:
                    for z in marked:
                        whole = values[(x.tree, z.tree)]
                        glued = model.compose(values[(x.tree, y.tree)], values[(y.tree, z.tree)])
                        assert model.equal_arrows(whole, glued)
                        triples += 1
    # the two base mark flips ARE the unit isomorphisms, on the nose
    pair = make_tree([1])
    absorb_left = gamma_nodule_change(
        NoduleChange(noduled(pair, units=(1,)), 1, True), [0, 7], model
    )
    assert model.equal_arrows(absorb_left, model.left_unitor(7))
    wake_left = gamma_nodule_change(
        NoduleChange(noduled(pair, ghosts=(1,)), 1, False), [0, 7], model
    )
    assert model.equal_arrows(wake_left, model.left_unitor_inv(7))
    absorb_right = gamma_nodule_change(
        NoduleChange(noduled(pair, units=(2,)), 2, True), [7, 0], model
    )
    assert model.equal_arrows(absorb_right, model.right_unitor(7))
    wake_right = gamma_nodule_change(
        NoduleChange(noduled(pair, ghosts=(2,)), 2, False), [7, 0], model
    )
    assert model.equal_arrows(wake_right, model.right_unitor_inv(7))
    report(
        5,
        "marked-leaf chains glue; base flips equal the unitors exactly",
        triples > 1000,
        f"{triples} chain triples ({refused_groups} all-ghost-sibling groups refused), "
        "4 base-flip identities",
    )


# --------------------------------------------------------------------------
# 6. Unit-absorption discrepancies


def test_06_ghost_component_identities():
    trivial = scalar_strict()
    comps = ghost_components(trivial)
    assert set(comps) == {"23", "13", "12", "234", "134", "124", "123"}
    for args_len, keys in ((2, ("23", "13", "12")), (3, ("234", "134", "124", "123"))):
        for key in keys:
            for a in range(4):
                for b in range(4):
                    tuples = [(a, b)] if args_len == 2 else [(a, b, c) for c in range(4)]
                    for tup in tuples:
                        assert trivial.is_identity(comps[key](*tup))
    # vanishing middle triangle + coherent rebracketing force the rest
    rng = random.Random(77)
    implied = 0
    for seed in range(6):
        model = scalar_coboundary(seed)
        comps = ghost_components(model)
        for _ in range(100):
            a, b, c = (rng.randint(0, 4) for _ in range(3))
            assert model.is_identity(comps["13"](a, c))  # hypothesis: middle triangle
            assert check_pentagon(model, a, b, c, rng.randint(0, 4))  # hypothesis: coherent
            assert model.is_identity(comps["23"](b, c))
            assert model.is_identity(comps["12"](a, b))
            assert model.is_identity(comps["234"](a, b, c))
            assert model.is_identity(comps["134"](a, b, c))
            assert model.is_identity(comps["124"](a, b, c))
            assert model.is_identity(comps["123"](a, b, c))
            implied += 1
    report(
        6,
        "all seven unit discrepancies trivialize; middle triangle + coherence imply the rest",
        implied == 600,
        f"7 components on a trivial instance; implication on {implied} sampled tuples",
    )


# --------------------------------------------------------------------------
# 7. Word problem vs an independent rewriting oracle


def _pair_sums(w: BraidWord) -> dict:
    slots = list(range(1, w.strands + 1))
    sums: dict = {}
    for idx, sign in w.letters:
        a, b = slots[idx - 1], slots[idx]
        key = (min(a, b), max(a, b))
        sums[key] = sums.get(key, 0) + sign
        slots[idx - 1], slots[idx] = slots[idx], slots[idx - 1]
    return {k: v for k, v in sums.items() if v != 0}


def _rewrites(letters, strands: int, cap: int):
    n = len(letters)
    for k in range(n - 1):
        if letters[k][0] == letters[k + 1][0] and letters[k][1] == -letters[k + 1][1]:
            yield letters[:k] + letters[k + 2 :]
    for k in range(n - 1):
        (i, s), (j, t) = letters[k], letters[k + 1]
        if abs(i - j) >= 2:
            yield letters[:k] + ((j, t), (i, s)) + letters[k + 2 :]
    for k in range(n - 2):
        (i, s), (j, t), (i2, s2) = letters[k : k + 3]
        if i == i2 and s == t == s2 and abs(i - j) == 1:
            yield letters[:k] + ((j, s), (i, s), (j, s)) + letters[k + 3 :]
    if n + 2 <= cap:
        for k in range(n + 1):
            for idx in range(1, strands):
                for s in (1, -1):
                    yield letters[:k] + ((idx, s), (idx, -s)) + letters[k:]


def _closure_reaches(w1: BraidWord, w2: BraidWord, cap: int, nodes: int):
    start, goal = w1.letters, w2.letters
    if start == goal:
        return True
    seen = {start}
    frontier = [start]
    while frontier and len(seen) < nodes:
        step = []
        for letters in frontier:
            for out in _rewrites(letters, w1.strands, cap):
                if out == goal:
                    return True
                if out not in seen:
                    seen.add(out)
                    step.append(out)
        frontier = step
    return False if len(seen) < nodes else None


def _random_word(rng, strands, length):
    return word(strands, [(rng.randrange(1, strands), rng.choice((1, -1))) for _ in range(length)])


def _scrambled(rng, w: BraidWord, steps: int, cap: int) -> BraidWord:
    letters = w.letters
    for _ in range(steps):
        options = list(_rewrites(letters, w.strands, cap))
        if options:
            letters = rng.choice(options)
    return BraidWord(w.strands, letters)


def test_07_word_problem_against_rewriting_oracle():
    rng = random.Random(13)
    agreed_equal = agreed_unequal = inconclusive = 0
    for k in range(10_000):
        n = rng.randrange(2, 5)
        w1 = _random_word(rng, n, rng.randrange(0, 7))
        if k % 5 < 2:
            w2 = _scrambled(rng, w1, steps=5, cap=8)  # equal by a relation certificate
            assert braid_equal(w1, w2)
            agreed_equal += 1
            continue
        w2 = _random_word(rng, n, rng.randrange(0, 7))
        if _pair_sums(w1) != _pair_sums(w2):
            assert not braid_equal(w1, w2)
            agreed_unequal += 1
            continue
        verdict = _closure_reaches(w1, w2, cap=8, nodes=3000)
        if verdict is None:
            inconclusive += 1
        else:
            assert braid_equal(w1, w2) == verdict
            if verdict:
                agreed_equal += 1
            else:
                agreed_unequal += 1
    # the defining relations themselves, and chirality
    assert braid_equal(word(3, [(1, 1), (2, 1), (1, 1)]), word(3, [(2, 1), (1, 1), (2, 1)]))
    assert braid_equal(word(4, [(1, 1), (3, -1)]), word(4, [(3, -1), (1, 1)]))
    assert not braid_equal(word(2, [(1, 1)]), word(2, [(1, -1)]))
    conclusive = agreed_equal + agreed_unequal
    report(
        7,
        "word problem agrees with the independent oracle on 10^4 pairs",
        conclusive >= 9_500 and agreed_equal > 500 and agreed_unequal > 500,
        f"{agreed_equal} equal / {agreed_unequal} unequal / {inconclusive} oracle-inconclusive",
    )


# --------------------------------------------------------------------------
# 8. Matrix crossings: equivalent words, equal matrices


def test_08_matrix_crossing_respects_relations():
    rng = random.Random(29)
    models = [matrix_hecke(Fraction(2)), matrix_swap()]
    pairs = 0
    for _ in range(30):
        n = rng.randrange(2, 5)
        w1 = _random_word(rng, n, rng.randrange(1, 9))
        w2 = _scrambled(rng, w1, steps=4, cap=8)
        tree = make_tree(list(range(1, n)))
        leaves = [1] * n
        for model in models:
            left = gamma_braided(
                BraidedRecoupling(tree, tree, XBraidArrow(Permutation.identity(n), w1)),
                leaves,
                model,
            )
            right = gamma_braided(
                BraidedRecoupling(tree, tree, XBraidArrow(Permutation.identity(n), w2)),
                leaves,
                model,
            )
            assert model.equal_arrows(left, right)
        pairs += 1
    # the two triple-crossing routes agree, by the model and by the evaluator
    yang_baxter = True
    for model in models:
        one = model.identity(1)
        r = model.braiding(1, 1)
        lhs = compose_all(
            model,
            [model.tensor_arrows(r, one), model.tensor_arrows(one, r), model.tensor_arrows(r, one)],
        )
        rhs = compose_all(
            model,
            [model.tensor_arrows(one, r), model.tensor_arrows(r, one), model.tensor_arrows(one, r)],
        )
        yang_baxter &= model.equal_arrows(lhs, rhs)
        tree = make_tree([1, 2])
        for w1, w2 in (
            (word(3, [(1, 1), (2, 1), (1, 1)]), word(3, [(2, 1), (1, 1), (2, 1)])),
        ):
            g1 = gamma_braided(
                BraidedRecoupling(tree, tree, XBraidArrow(Permutation.identity(3), w1)), [1, 1, 1], model
            )
            g2 = gamma_braided(
                BraidedRecoupling(tree, tree, XBraidArrow(Permutation.identity(3), w2)), [1, 1, 1], model
            )
            yang_baxter &= model.equal_arrows(g1, g2) and model.equal_arrows(g1, lhs)
    report(
        8,
        "equivalent words get equal matrices; triple-crossing routes coincide",
        pairs == 30 and yang_baxter,
        f"{pairs} scrambled pairs x 2 models, exact matrix equality",
    )


# --------------------------------------------------------------------------
# 9. The two-box worked example


def test_09_two_box_worked_example(capsys=None):
    braid1 = XBraidArrow(Permutation.identity(6), word(6, [(5, 1), (4, -1), (3, 1), (1, 1)]))
    box1 = Box(
        "F", parse_tree("01234"), parse_tree("23014"), braid1, tuple(f"f{k}" for k in range(1, 7))
    )
    braid2 = XBraidArrow(braid1.target, word(6, [(5, -1), (2, 1)]))
    box2 = Box(
        "G", parse_tree("23014"), parse_tree("14023"), braid2, tuple(f"g{k}" for k in range(1, 7))
    )
    composite = compose_boxes(StringDiagram(6, (box1, box2)))
    perm_ok = composite.recoupling_perm.cycle_string() == "(1 3 4 5 2)"
    word_ok = braid_equal(composite.braid.word, parse_word("t5 t4' t5' t3 t1 t2", 6))
    final_ok = composite.braid.target.cycle_string() == "(1 2 6 4 3)"
    # convention check: computed per-box data vs the example's printed labels
    print("    reference-example convention notes:")
    print(
        "    - computed re-bracketing permutations: "
        f"first box {box1.recoupling_perm.cycle_string()}, "
        f"second box {box2.recoupling_perm.cycle_string()}; the example prints "
        "(1 4)(4 5) for the first box — matching nothing derivable here; its "
        "second-box label (1 3)(2 4) equals our FIRST box's value, so the two "
        "printed labels appear swapped with a digit slip.  Recorded as misprints."
    )
    print(
        "    - computed intermediate strand assignment: "
        f"{braid1.target.cycle_string()}; the example prints (2 3)(5 6), which is "
        "impossible for a word whose only letter touching strand 1 is t1.  Misprint."
    )
    print(
        "    - composite permutation, composite word, and final assignment "
        "reproduce the printed values exactly."
    )
    report(
        9,
        "two-box composition: permutation (1 3 4 5 2), word ~ t5 t4' t5' t3 t1 t2",
        perm_ok and word_ok and final_ok,
        "per-box label discrepancies reported above, composite data exact",
    )


# --------------------------------------------------------------------------
# 10. The diagram checker on the two pentagon graphs


def test_10_diagram_checker_pentagons():
    commuting_models = (
        [scalar_strict(), scalar_power_ac(), scalar_coboundary(3)]
        + [scalar_random(seed) for seed in range(10)]
        + [scalar_random_braided(seed) for seed in range(5)]
    )
    for model in commuting_models:
        for objs in ((1, 1, 1, 1), (1, 2, 1, 3)):
            assert is_commutative(deformed_pentagon(model, *objs), model).commutes
    witnesses = 0
    broken = scalar_power_ac()
    for a in range(3):
        for d in range(3):
            graph = plain_pentagon(broken, a, 1, 2, d)
            outcome = is_commutative(graph, broken)
            assert outcome.commutes == check_pentagon(broken, a, 1, 2, d)
            assert outcome.commutes == (a * d == 0)
            if not outcome.commutes:
                left, right = outcome.witness

                def compose_path(path):
                    value = path[0].arrow
                    for edge in path[1:]:
                        value = broken.compose(value, edge.arrow)
                    return value

                assert not broken.equal_arrows(compose_path(left), compose_path(right))
                witnesses += 1
    report(
        10,
        "deformed pentagon commutes everywhere; bare pentagon fails with witnesses",
        witnesses == 4,
        f"{len(commuting_models)} models commute; {witnesses} concrete witness pairs",
    )
