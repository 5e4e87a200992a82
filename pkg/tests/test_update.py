import random

import pytest

from causalupd.generate import random_sequence
from causalupd.lang import GLP, RuleName, UpdateSequence, parse_program, parse_sequence
from causalupd.solver import answer_sets
from causalupd.update import (
    ExtendedAlphabet,
    NotAnAnswerSet,
    build_update_program,
    check_declarative,
    is_update_answer_set,
    lift,
    rej,
    rej_weak,
    rejected_rules,
    update_answer_sets,
)

from conftest import lits, load


def test_tv_update_single_answer_set():
    seq = load("tv1.lp", "tv2.lp")
    s = lits("power_failure", "-tv_on", "sleep", "night")
    assert update_answer_sets(seq) == [s]
    assert lift(seq, s) == lits(
        "lv2_power_failure", "lv1_power_failure", "power_failure",
        "-lv2_tv_on", "-lv1_tv_on", "-tv_on", "rej_1_2",
        "lv1_sleep", "sleep", "lv1_night", "night")
    assert lift(seq, s) in answer_sets(build_update_program(seq))


def test_power_restored():
    seq = load("tv1.lp", "tv2.lp", "tv3.lp")
    t = lits("-power_failure", "tv_on", "watch_tv", "night")
    assert update_answer_sets(seq) == [t]
    assert lift(seq, t) == lits(
        "-lv3_power_failure", "-lv2_power_failure", "-lv1_power_failure", "-power_failure",
        "rej_2_1", "lv1_tv_on", "tv_on", "lv1_watch_tv", "watch_tv", "lv1_night", "night")


def test_rejection_sets_per_layer():
    seq = load("tv1.lp", "tv2.lp")
    r = rej(seq, lits("power_failure", "-tv_on", "sleep", "night"))
    assert r.layer(1) == {RuleName(1, 2)} and r.layer(2) == frozenset()
    assert RuleName(1, 2) in r and len(r) == 1
    assert [str(x) for x in rejected_rules(seq, r)] == ["tv_on."]


def test_founded_and_weak_rejection_differ():
    seq = parse_sequence("a.\n#update.\n-a.\n#update.\na.\n")
    s = lits("a")
    assert set(rej(seq, s)) == {RuleName(2, 0)}
    assert set(rej_weak(seq, s)) == {RuleName(1, 0), RuleName(2, 0)}
    # the answer sets agree all the same
    assert check_declarative(seq, s, "founded") and check_declarative(seq, s, "weak")
    assert update_answer_sets(seq) == [s]


def test_inconsistent_later_program_kills_everything():
    seq = parse_sequence(["a.", "b. -b."])
    assert update_answer_sets(seq) == []


def test_lift_rejects_non_answer_sets():
    seq = load("tv1.lp", "tv2.lp")
    with pytest.raises(NotAnAnswerSet):
        lift(seq, lits("tv_on", "night", "watch_tv"))
    with pytest.raises(ValueError):
        check_declarative(seq, lits("night"), "other")


def test_constraints_are_never_rejected():
    seq = parse_sequence(["a :- not b. b :- not a. :- a.", "a."])
    assert update_answer_sets(seq) == []


def test_glp_input_refused():
    with pytest.raises(ValueError):
        build_update_program(parse_sequence("not a.", GLP))


def test_namespace_freshened_on_clash():
    p1 = parse_program("lv1_a. rej_1_0 :- lv1_a.", allow_reserved=True)
    seq = UpdateSequence.of([p1, parse_program("-lv1_a.", allow_reserved=True)])
    ext = ExtendedAlphabet.fresh(seq)
    assert ext.ns == "x"
    assert update_answer_sets(seq) == [lits("-lv1_a")]


@pytest.mark.parametrize("seed", range(4))
def test_simplified_program_same_answer_sets(seed):
    rng = random.Random(seed)
    for _ in range(50):
        seq = random_sequence(rng, atoms=4, programs=rng.randint(1, 3), rules=8, constraints=0.1)
        assert update_answer_sets(seq, simplify=True) == update_answer_sets(seq)


@pytest.mark.parametrize("seed", range(4))
def test_program_and_declarative_readings_agree(seed):
    rng = random.Random(100 + seed)
    for _ in range(50):
        seq = random_sequence(rng, atoms=4, programs=3, rules=8)
        for s in update_answer_sets(seq):
            assert is_update_answer_set(seq, s)
            assert lift(seq, s) in answer_sets(build_update_program(seq))
