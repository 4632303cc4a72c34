import random

import pytest

from triflab.codes import TernaryCode, VectorCode
from triflab.verify import check_k_separating, check_vector_k_separating

from .oracles import brute_force_k_separating

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def lift(code: TernaryCode) -> VectorCode:
    basis = (E1, E2, E3)
    return VectorCode(code.n, 3, "exact", tuple(tuple(basis[s] for s in w) for w in code.words))


def test_trifference_holds_on_full_alphabet_n1():
    report = check_k_separating(TernaryCode.from_strings(["0", "1", "2"]), 3)
    assert report.holds
    assert report.tuples_checked == 1
    assert report.witness_map == {(0, 1, 2): 1}


def test_trifference_violation_example():
    code = TernaryCode.from_strings(["00", "11", "01"])
    report = check_k_separating(code, 3)
    assert not report.holds
    assert report.violation.indices == (0, 1, 2)
    assert report.violation.words == ((0, 0), (1, 1), (0, 1))
    # replaying the violating triple finds no separating coordinate:
    # coordinate 1 gives (0,1,0), coordinate 2 gives (0,1,1)
    ok, _, first = brute_force_k_separating(code.words, 2, 3, "ternary")
    assert not ok and first == (0, 1, 2)


def test_small_codes_hold_vacuously():
    code = TernaryCode.from_strings(["00", "11"])
    report = check_k_separating(code, 3)
    assert report.holds
    assert report.tuples_checked == 0
    assert report.witness_map == {}


def test_k_exceeding_alphabet_rejected():
    code = TernaryCode.from_strings(["0", "1", "2"])
    with pytest.raises(ValueError):
        check_k_separating(code, 4)
    with pytest.raises(ValueError):
        check_k_separating(code, 1)


def test_vector_basis_code_holds():
    code = VectorCode(1, 3, "exact", ((E1,), (E2,), (E3,)))
    report = check_vector_k_separating(code, 3)
    assert report.holds
    assert report.witness_map == {(0, 1, 2): 1}


def test_vector_violation_example():
    code = VectorCode(1, 3, "exact", ((E1,), (E2,), ((1, 1, 0),)))
    report = check_vector_k_separating(code, 3)
    assert not report.holds
    assert report.violation.indices == (0, 1, 2)


def test_vector_k_above_dimension_rejected():
    code = VectorCode(1, 3, "exact", ((E1,), (E2,)))
    with pytest.raises(ValueError):
        check_vector_k_separating(code, 4)


def test_k2_separation_is_pairwise_distinctness():
    # distinct ternary words always differ somewhere, so k=2 always holds
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(1, 5)
        pool = set()
        while len(pool) < min(3 ** n, 6):
            pool.add(tuple(rng.randrange(3) for _ in range(n)))
        report = check_k_separating(TernaryCode(n, tuple(pool)), 2)
        assert report.holds


def random_ternary_code(rng, n, size):
    pool = set()
    while len(pool) < size:
        pool.add(tuple(rng.randrange(3) for _ in range(n)))
    return TernaryCode(n, tuple(sorted(pool)))


def random_exact_vector_code(rng, n, size, d=3):
    pool = set()
    while len(pool) < size:
        word = []
        for _ in range(n):
            v = (0, 0, 0)
            while not any(v):
                v = tuple(rng.randrange(-2, 3) for _ in range(d))
            word.append(v)
        pool.add(tuple(word))
    return VectorCode(n, d, "exact", tuple(sorted(pool)))


def random_float_vector_code(rng, n, size, d=3):
    pool = []
    for _ in range(size):
        word = []
        for _ in range(n):
            v = [rng.gauss(0, 1) for _ in range(d)]
            norm = sum(c * c for c in v) ** 0.5
            word.append(tuple(c / norm for c in v))
        pool.append(tuple(word))
    return VectorCode(n, d, "float", tuple(pool))


def assert_matches_oracle(code, k, kind):
    if kind == "ternary":
        report = check_k_separating(code, k)
    else:
        report = check_vector_k_separating(code, k)
    mode = kind if kind == "ternary" else code.mode
    ok, witness, first = brute_force_k_separating(code.words, code.n, k, mode)
    assert report.holds == ok
    if ok:
        assert report.witness_map == witness
    else:
        assert report.violation.indices == first


def test_oracle_equivalence_random_battery():
    rng = random.Random(20250810)
    for trial in range(60):
        n = rng.randrange(1, 7)
        size = rng.randrange(3, 13)
        assert_matches_oracle(random_ternary_code(rng, n, min(size, 3 ** n)), 3, "ternary")
    for trial in range(30):
        n = rng.randrange(1, 5)
        assert_matches_oracle(random_exact_vector_code(rng, n, rng.randrange(3, 10)), 3, "vector")
    for trial in range(10):
        n = rng.randrange(1, 4)
        assert_matches_oracle(random_float_vector_code(rng, n, rng.randrange(3, 8)), 3, "vector")


def test_monotonicity():
    rng = random.Random(99)
    holding = []
    violating = []
    while len(holding) < 10 or len(violating) < 10:
        code = random_ternary_code(rng, rng.randrange(2, 5), rng.randrange(3, 8))
        (holding if check_k_separating(code, 3).holds else violating).append(code)
    for code in holding[:10]:
        for drop in range(len(code)):
            sub = TernaryCode(code.n, code.words[:drop] + code.words[drop + 1:])
            assert check_k_separating(sub, 3).holds
    for code in violating[:10]:
        extra = None
        words = set(code.words)
        while extra is None:
            cand = tuple(rng.randrange(3) for _ in range(code.n))
            if cand not in words:
                extra = cand
        bigger = TernaryCode(code.n, code.words + (extra,))
        assert not check_k_separating(bigger, 3).holds


def test_lift_soundness():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randrange(1, 5)
        code = random_ternary_code(rng, n, min(rng.randrange(2, 9), 3 ** n))
        r1 = check_k_separating(code, 3)
        r2 = check_vector_k_separating(lift(code), 3)
        assert r1.holds == r2.holds
        if r1.holds:
            assert r1.witness_map == r2.witness_map
        else:
            assert r1.violation.indices == r2.violation.indices


def test_report_json_shape():
    report = check_k_separating(TernaryCode.from_strings(["0", "1", "2"]), 3)
    d = report.as_json_dict()
    assert d["holds"] is True and d["tuples_checked"] == 1
    assert d["witness_sample"] == [{"indices": [0, 1, 2], "coordinate": 1}]
    bad = check_k_separating(TernaryCode.from_strings(["00", "11", "01"]), 3)
    d = bad.as_json_dict()
    assert d["violation"]["words"] == ["00", "11", "01"]
