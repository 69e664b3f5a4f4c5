import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dixc.model import (
    Problem,
    apply_permutation,
    canonical_form,
    elements,
    enumerate_problems,
    interfering_set,
    is_acyclic_induced,
    mask_of,
    nonempty_subsets,
    parse_problem,
    parse_subset_key,
    problem_from_json,
    problem_to_json,
    subset_key,
)
from dixc.rationals import ONE, rat


def closure_has_cycle(p, s_mask):
    """Independent acyclicity oracle: boolean transitive closure over S."""
    nodes = elements(s_mask)
    reach = {(i, j): (i != j and p.side(j) >> (i - 1) & 1) for i in nodes for j in nodes}
    for k in nodes:
        for i in nodes:
            for j in nodes:
                if reach[(i, k)] and reach[(k, j)]:
                    reach[(i, j)] = True
    return any(reach[(i, i)] for i in nodes)


@st.composite
def problems(draw, max_n=4, unit_caps=True):
    n = draw(st.integers(1, max_n))
    side = []
    for j in range(1, n + 1):
        allowed = [i for i in range(1, n + 1) if i != j]
        side.append(mask_of(draw(st.sets(st.sampled_from(allowed)) if allowed else st.just(set()))))
    if unit_caps:
        caps = None
    else:
        caps = {
            subset_key(m): rat(draw(st.integers(0, 16)), 8)
            for m in nonempty_subsets(n)
        }
    text = ";".join(
        f"({j}|{subset_key(a)})" if a else f"({j})" for j, a in enumerate(side, start=1)
    )
    return parse_problem(text, caps)


def test_parse_example_paper_notation():
    p = parse_problem("(1);(2|3);(3|2)")
    assert p.n == 3
    assert p.side_info == (0, 0b100, 0b010)
    assert all(p.cap(m) == ONE for m in nonempty_subsets(3))


def test_parse_smallest_instance():
    p = parse_problem("(1)")
    assert p.n == 1 and p.side_info == (0,) and p.cap(1) == ONE


def test_parse_roundtrip_n4():
    text = "(1|4);(2|3,4);(3|1,2);(4|2,3)"
    p = parse_problem(text)
    assert p.compact() == text
    assert parse_problem(p.compact()) == p


def test_parse_accepts_any_receiver_order():
    assert parse_problem("(2|3);(1);(3|2)") == parse_problem("(1);(2|3);(3|2)")


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "(1;(2)",
        "(1);(1)",
        "(1);(3)",
        "(1|1);(2)",
        "(1|3);(2)",  # id 3 out of range for n=2
        "(0);(1)",
        "(1)(2)",
    ],
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_problem(bad)


def test_parse_rejects_bad_capacities():
    with pytest.raises(ValueError):
        parse_problem("(1);(2)", {"1": "-1"})
    with pytest.raises(ValueError):
        parse_problem("(1);(2)", {"1,3": "1"})
    with pytest.raises(ValueError):
        parse_problem("(1);(2)", {"": "1"})


def test_capacity_overrides():
    p = parse_problem("(1);(2)", {"1,2": "1/2", "2": "3"})
    assert p.cap(0b11) == rat(1, 2)
    assert p.cap(0b10) == rat(3)
    assert p.cap(0b01) == ONE


def test_json_document_roundtrip_and_defaults():
    p = parse_problem("(1);(2|3);(3|2)", {"2,3": "1/2"})
    q = problem_from_json(problem_to_json(p))
    assert q == p
    # omitted capacities default to 1
    r = problem_from_json('{"n": 2, "side_info": {"1": [], "2": [1]}}')
    assert r.cap(0b11) == ONE and r.side(2) == 0b01


def test_json_document_rejects_incomplete_side_info():
    with pytest.raises(ValueError):
        problem_from_json('{"n": 2, "side_info": {"1": []}}')


def test_subset_key_roundtrip():
    assert subset_key(0b101) == "1,3"
    assert parse_subset_key("1,3", 3) == 0b101
    with pytest.raises(ValueError):
        parse_subset_key("1,1", 3)


def test_interfering_set_examples():
    p = parse_problem("(1);(2|3);(3|2)")
    assert interfering_set(p, 1) == mask_of([2, 3])
    q = parse_problem("(1|2,3);(2|1,3);(3|1,2)")
    assert interfering_set(q, 2) == 0
    r = parse_problem("(1|4);(2|3,4);(3|1,2);(4|2,3)")
    assert interfering_set(r, 2) == mask_of([1])
    with pytest.raises(ValueError):
        interfering_set(p, 4)


@given(problems())
def test_side_info_self_and_interfering_partition(p):
    for j in range(1, p.n + 1):
        a, b = p.side(j), interfering_set(p, j)
        me = 1 << (j - 1)
        assert a | b | me == p.full_mask
        assert a & b == a & me == b & me == 0


def test_acyclic_examples():
    p = parse_problem("(1);(2|3);(3|2)")
    assert not is_acyclic_induced(p, mask_of([2, 3]))
    assert is_acyclic_induced(p, 0)
    assert all(is_acyclic_induced(p, 1 << i) for i in range(3))
    q = parse_problem("(1|3);(2|1);(3|2)")
    assert not is_acyclic_induced(q, q.full_mask)
    for s in [0b011, 0b101, 0b110]:
        assert is_acyclic_induced(q, s)


@given(problems(), st.data())
def test_acyclic_matches_closure_oracle_and_is_monotone(p, data):
    s = data.draw(st.integers(0, p.full_mask))
    assert is_acyclic_induced(p, s) == (not closure_has_cycle(p, s))
    if is_acyclic_induced(p, s):
        sub = data.draw(st.integers(0, p.full_mask)) & s
        assert is_acyclic_induced(p, sub)


def test_canonical_form_identifies_relabelings():
    a = parse_problem("(1|2);(2);(3)")
    b = parse_problem("(1);(2|3);(3)")
    assert canonical_form(a)[0] == canonical_form(b)[0]
    c = parse_problem("(1);(2|3);(3|2)")
    d = parse_problem("(1|3);(2|3);(3|2)")
    assert canonical_form(c)[0] != canonical_form(d)[0]


def test_canonical_permutation_witness():
    p = parse_problem("(1|2);(2);(3)")
    canon, sigma = canonical_form(p)
    assert apply_permutation(p, sigma) == canon


@settings(max_examples=60)
@given(problems(unit_caps=False), st.data())
def test_canonical_is_idempotent_and_permutation_invariant(p, data):
    canon, _ = canonical_form(p)
    assert canonical_form(canon)[0] == canon
    sigma = tuple(data.draw(st.permutations(range(1, p.n + 1))))
    assert canonical_form(apply_permutation(p, sigma))[0] == canon


def test_enumerate_counts():
    assert len(enumerate_problems(1)) == 1
    assert len(enumerate_problems(2)) == 4
    assert len(enumerate_problems(3)) == 64
    assert len(enumerate_problems(2, up_to_iso=True)) == 3
    assert len(enumerate_problems(3, up_to_iso=True)) == 16


def test_enumerate_orbits_cover_all_labelings():
    # sum over classes of orbit sizes must recover all 64 labeled problems
    reps = enumerate_problems(3, up_to_iso=True)
    total = 0
    for p in reps:
        from itertools import permutations

        orbit = {apply_permutation(p, s) for s in permutations(range(1, 4))}
        total += len(orbit)
    assert total == 64


def test_enumerate_rejects_large_n():
    with pytest.raises(ValueError):
        enumerate_problems(5)
