import random

import pytest

from causalupd.dynlp import (
    GeneralizedInterpretation,
    build_andor_graph,
    coincidence_check,
    defaults,
    dynamic_answer_sets,
    dynamic_stable_models,
    dynamic_stable_models_via_program,
    elp_to_glp,
    glp_to_elp_interpretation,
    is_dynamic_stable,
    q_translate,
    rejected,
    static_certificate,
)
from causalupd.generate import random_glp_sequence, random_sequence
from causalupd.lang import ELP, GLP, RuleName, parse_sequence
from causalupd.update import update_answer_sets

from conftest import lits, load


def gi(atoms, *positive):
    return GeneralizedInterpretation(frozenset(atoms), frozenset(positive))


def test_tautological_update_keeps_rain():
    seq = load("rain.glp", mode=GLP)
    assert dynamic_stable_models(seq) == [gi({"it_is_raining"}, "it_is_raining")]
    assert set(update_answer_sets(q_translate(seq))) == {lits("it_is_raining"), lits("-it_is_raining")}


def test_tautological_update_extended():
    seq = load("rain_elp.lp")
    assert dynamic_answer_sets(seq) == [lits("it_is_raining")]
    assert set(update_answer_sets(seq)) == {lits("it_is_raining"), lits("-it_is_raining")}


def test_tv_generalized():
    seq = load("tv.glp", mode=GLP)
    model = gi({"power_failure", "tv_on", "watch_tv", "sleep"}, "tv_on", "watch_tv")
    assert dynamic_stable_models(seq) == [model]
    assert str(model) == "{not power_failure, not sleep, tv_on, watch_tv}"
    assert update_answer_sets(q_translate(seq)) == [lits("-power_failure", "tv_on", "watch_tv", "-sleep")]


def test_completion_rules_last_reject_facts():
    # appending the completion rules to the newest program lets them override tv_on.
    seq = load("tv.glp", mode=GLP)
    assert len(update_answer_sets(q_translate(seq, completion="last"))) == 4


def test_cloudy_two_models():
    seq = load("cloudy.glp", mode=GLP)
    atoms = {"it_is_raining", "it_is_cloudy"}
    assert set(dynamic_stable_models(seq)) == {gi(atoms, *atoms), gi(atoms)}
    assert set(update_answer_sets(q_translate(seq))) == {
        lits("it_is_raining", "it_is_cloudy"), lits("-it_is_raining", "-it_is_cloudy")}


def test_rejected_and_defaults():
    seq = load("tv.glp", mode=GLP)
    pos = {"tv_on", "watch_tv"}
    assert RuleName(2, 1) in rejected(seq, pos)
    # power_failure. still has a true body, so only sleep is false by default
    assert defaults(seq, pos) == {"sleep"}
    assert is_dynamic_stable(seq, pos)
    assert not is_dynamic_stable(seq, {"tv_on", "watch_tv", "power_failure"})


def test_emulation_placement():
    seq = parse_sequence(["a. -a.", ""])
    assert dynamic_answer_sets(seq) == []
    assert set(dynamic_answer_sets(seq, emulation="last")) == {lits("a"), lits("-a")}
    assert update_answer_sets(seq) == []


def test_encoding_round_trip():
    assert glp_to_elp_interpretation({"a", "nn_b"}) >= lits("a", "-b")
    enc = elp_to_glp(load("tv1.lp", "tv2.lp"))
    assert enc.mode == GLP
    assert "nn_tv_on" in enc.alphabet


def test_graph_check_tv():
    seq = load("tv.glp", mode=GLP)
    rep = coincidence_check(seq)
    assert rep.agrees and rep.coincide and rep.certificate is True
    assert "static certificate: holds" in rep.render()
    assert static_certificate(seq) == (True, [])


def test_graph_check_tautology_flags_the_odd_answer_set():
    rep = coincidence_check(load("rain.glp", mode=GLP))
    assert rep.agrees and not rep.coincide
    assert rep.certificate is False


def test_certificate_not_applicable_for_extended():
    rep = coincidence_check(load("rain_elp.lp"), level=ELP)
    assert rep.certificate is None
    assert "not applicable" in rep.render()


def test_graph_nodes_present():
    g = build_andor_graph(load("cloudy.glp", mode=GLP))
    assert g.nodes and g.render()


def test_generalized_input_required():
    with pytest.raises(ValueError):
        dynamic_stable_models(load("tv1.lp", "tv2.lp"))


@pytest.mark.parametrize("seed", range(3))
def test_fixpoint_and_program_agree(seed):
    rng = random.Random(seed)
    for _ in range(40):
        seq = random_glp_sequence(rng, atoms=3, programs=rng.randint(1, 3))
        assert dynamic_stable_models_via_program(seq) == dynamic_stable_models(seq)


@pytest.mark.parametrize("seed", range(3))
def test_dynamic_answer_sets_are_update_answer_sets(seed):
    rng = random.Random(50 + seed)
    for _ in range(40):
        seq = random_sequence(rng, atoms=3, programs=rng.randint(1, 3), rules=6)
        assert set(dynamic_answer_sets(seq)) <= set(update_answer_sets(seq))
