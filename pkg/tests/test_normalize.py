import itertools
import random

import pytest

from rainbowk.cnf import CnfFormula, evaluate
from rainbowk.gen import random_3cnf, random_normalized_formula
from rainbowk.reduction.normalize import normalize_cnf


def _sat(phi: CnfFormula) -> bool:
    if phi.nvars > 22:
        raise ValueError("too big to brute force")
    return any(
        evaluate(phi, bits)
        for bits in itertools.product((False, True), repeat=phi.nvars)
    )


def test_already_normalized_identity():
    phi = CnfFormula(nvars=3, clauses=((1, -2, 3),))
    out, tr = normalize_cnf(phi)
    assert out is phi
    assert tr.identity


def test_repeated_literal_padding():
    phi = CnfFormula(nvars=2, clauses=((1, 1, 2),))
    out, tr = normalize_cnf(phi)
    assert out.is_normalized()
    assert _sat(phi) == _sat(out)


def test_tautology_dropped():
    phi = CnfFormula(nvars=2, clauses=((1, -1, 2),))
    out, _ = normalize_cnf(phi)
    assert out.nclauses == 0


def test_occurrence_splitting():
    # one variable in six clauses, with two-variable partners
    clauses = tuple((1, v, v + 1) for v in range(2, 14, 2))
    phi = CnfFormula(nvars=13, clauses=clauses)
    assert max(phi.occurrence_counts()) == 6
    out, tr = normalize_cnf(phi)
    assert out.is_normalized()
    assert 1 in tr.copies and len(tr.copies[1]) == 6
    # too many variables for a full brute-force equivalence; check the
    # satisfiable direction through the lift and spot-check ring equality
    model = tr.lift_assignment([True] + [False] * 12)
    assert evaluate(out, model)
    flipped = list(model)
    flipped[tr.copies[1][2] - 1] = False  # break one ring copy
    assert not evaluate(out, flipped)


def test_contradiction_normalizes_to_unsat():
    phi = CnfFormula(nvars=1, clauses=((1,), (-1,)))
    out, _ = normalize_cnf(phi)
    assert out.is_normalized()
    assert not _sat(out)


def test_lift_and_pull_back():
    rng = random.Random(5)
    for _ in range(30):
        phi = random_3cnf(rng.randint(1, 4), rng.randint(1, 4), rng)
        out, tr = normalize_cnf(phi)
        assert out.is_normalized()
        for bits in itertools.product((False, True), repeat=phi.nvars):
            if evaluate(phi, list(bits)):
                lifted = tr.lift_assignment(list(bits))
                assert evaluate(out, lifted)
                back = tr.pull_back_assignment(lifted)
                assert list(bits) == back


def test_equisatisfiable_random():
    rng = random.Random(6)
    for _ in range(40):
        phi = random_3cnf(rng.randint(1, 5), rng.randint(1, 6), rng)
        out, _ = normalize_cnf(phi)
        assert out.is_normalized()
        if out.nvars <= 22:
            assert _sat(phi) == _sat(out)


def test_pull_back_of_any_model_satisfies_source():
    rng = random.Random(13)
    checked = 0
    for _ in range(25):
        phi = random_3cnf(rng.randint(1, 3), rng.randint(1, 4), rng)
        out, tr = normalize_cnf(phi)
        if out.nvars > 18:
            continue
        for bits in itertools.product((False, True), repeat=out.nvars):
            if evaluate(out, list(bits)):
                assert evaluate(phi, tr.pull_back_assignment(list(bits)))
                checked += 1
                break
    assert checked > 0


def test_generator_is_normalized():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(3, 12)
        m = rng.randint(1, (4 * n) // 3 // 3)
        phi = random_normalized_formula(n, m, rng)
        assert phi.is_normalized()


def test_rejects_long_clauses():
    with pytest.raises(ValueError):
        normalize_cnf(CnfFormula(nvars=4, clauses=((1, 2, 3, 4),)))
