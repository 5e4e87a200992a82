"""Acceptance criteria, one test each.

Every test records a one-line verdict in ``RESULTS``; the pytest terminal
summary prints them, and running this file directly prints them too.  Two
criteria are known to fail for reasons documented in the README (the
inheritance override condition and the U6 fixture); they are left red.
"""

import os
import random
import subprocess
import sys
import time

from causalupd.altsem import is_inh_answer_set, to_inheritance
from causalupd.dynlp import (
    GeneralizedInterpretation,
    coincidence_check,
    dynamic_answer_sets,
    dynamic_stable_models,
    is_dynamic_answer_set,
    is_dynamic_stable,
    q_translate,
)
from causalupd.generate import atoms_named, random_glp_sequence, random_program, random_sequence
from causalupd.lang import ELP, Literal, RuleName
from causalupd.minimality import (
    is_minimal_by_test,
    is_minimal_direct,
    is_strictly_minimal_by_test,
    is_strictly_minimal_direct,
    minimal_answer_sets,
    strictly_minimal_answer_sets,
)
from causalupd.postulates import (
    FURTHER_FIXTURES,
    check_further_property,
    iterated_equivalent,
    iterativity_condition,
    run_regression_suite,
)
from causalupd.solver import answer_sets, answer_sets_bruteforce, consistent_interpretations
from causalupd.update import check_declarative, lift, rej, update_answer_sets

from conftest import DATA, lits, load

RESULTS = {}


def record(k, ok, detail):
    RESULTS[k] = (ok, detail)
    assert ok, detail


def _suite(seed, count, *, atoms=6, programs=3, rules=8):
    rng = random.Random(seed)
    return [random_sequence(rng, atoms=rng.randint(1, atoms), programs=rng.randint(1, programs), rules=rules)
            for _ in range(count)]


# 1 -------------------------------------------------------------------------

def test_criterion_1_tv_golden():
    t0 = time.perf_counter()
    seq = load("tv1.lp", "tv2.lp")
    s = lits("power_failure", "-tv_on", "sleep", "night")
    s_lift = lits("lv2_power_failure", "lv1_power_failure", "power_failure",
                  "-lv2_tv_on", "-lv1_tv_on", "-tv_on", "rej_1_2",
                  "lv1_sleep", "sleep", "lv1_night", "night")
    seq3 = load("tv1.lp", "tv2.lp", "tv3.lp")
    t = lits("-power_failure", "tv_on", "watch_tv", "night")
    t_lift = lits("-lv3_power_failure", "-lv2_power_failure", "-lv1_power_failure", "-power_failure",
                  "rej_2_1", "lv1_tv_on", "tv_on", "lv1_watch_tv", "watch_tv", "lv1_night", "night")
    checks = [update_answer_sets(seq) == [s], lift(seq, s) == s_lift,
              update_answer_sets(seq3) == [t], lift(seq3, t) == t_lift]
    dt = time.perf_counter() - t0
    record(1, all(checks) and dt < 1.0, f"checks {checks}, {dt:.3f}s")


# 2 -------------------------------------------------------------------------

def test_criterion_2_minimal_and_strict():
    t0 = time.perf_counter()
    problems = []
    on = lits("night", "-power_failure", "-switched_off", "tv_on", "watch_tv")
    off = lits("night", "-power_failure", "switched_off", "-tv_on", "sleep")
    fri = lits("concert_friday", "-final_rehearsal_friday", "-concert_saturday")
    sun = lits("-concert_friday", "final_rehearsal_friday", "-concert_saturday", "concert_sunday")
    sat = lits("-concert_friday", "final_rehearsal_friday", "concert_saturday")
    cases = [
        # sequence, {answer set: rejected (layer, position)}, minimal, strictly minimal
        (load("tv1.lp", "tv2.lp", "tv3.lp", "tv4.lp"),
         {on: {(2, 1)}, off: {(1, 2), (2, 1)}}, {on}, {on}),
        (load("tv1.lp", "tv2.lp", "tv3_off.lp", "tv4.lp"),
         {on: {(3, 1), (2, 1)}, off: {(1, 2), (2, 1)}}, {on, off}, {off}),
        (load("concert.lp"),
         {sat: {(2, 0), (2, 1)}, sun: {(2, 0)}, fri: {(1, 0)}}, {sun, fri}, {fri}),
    ]
    for k, (seq, rejs, mins, strict) in enumerate(cases):
        if set(update_answer_sets(seq)) != set(rejs):
            problems.append(f"case {k}: answer sets")
        for s, want in rejs.items():
            if set(rej(seq, s)) != {RuleName(*p) for p in want}:
                problems.append(f"case {k}: rejection set")
        for method in ("direct", "testprogram"):
            if set(minimal_answer_sets(seq, method)) != mins:
                problems.append(f"case {k}: minimal via {method}")
            if set(strictly_minimal_answer_sets(seq, method)) != strict:
                problems.append(f"case {k}: strict via {method}")
    dt = time.perf_counter() - t0
    record(2, not problems and dt < 5.0, f"{problems or 'all match'}, {dt:.2f}s")


# 3 -------------------------------------------------------------------------

def test_criterion_3_four_way_oracle():
    t0 = time.perf_counter()
    seqs = _suite(3, 500)
    bad_seqs, bad_cands, cands, applicable_bad = 0, 0, 0, 0
    for seq in seqs:
        ip = to_inheritance(seq)
        u = set(update_answer_sets(seq))
        hit = False
        for s in consistent_interpretations(seq.alphabet):
            cands += 1
            v = (s in u, check_declarative(seq, s, "founded"), check_declarative(seq, s, "weak"),
                 is_inh_answer_set(ip, s))
            if len(set(v)) > 1:
                bad_cands += 1
                hit = True
            if is_inh_answer_set(ip, s, "applicable") != v[0]:
                applicable_bad += 1
        bad_seqs += hit
    dt = time.perf_counter() - t0
    record(3, bad_cands == 0 and dt < 300,
           f"{bad_cands} disagreeing candidates in {bad_seqs}/500 sequences ({cands} candidates);"
           f" applicable-override variant: {applicable_bad} disagreements; {dt:.1f}s")


# 4 -------------------------------------------------------------------------

def test_criterion_4_test_programs():
    seqs = _suite(4, 400, atoms=4)
    mismatches, checked, pair_bad = 0, 0, 0
    for seq in seqs:
        for s in update_answer_sets(seq):
            checked += 1
            mismatches += is_minimal_direct(seq, s) != is_minimal_by_test(seq, s)
            mismatches += is_strictly_minimal_direct(seq, s) != is_strictly_minimal_by_test(seq, s)
        if len(seq) == 2:
            pair_bad += minimal_answer_sets(seq) != strictly_minimal_answer_sets(seq)
    record(4, mismatches == 0 and pair_bad == 0,
           f"{checked} answer sets, {mismatches} method mismatches, {pair_bad} length-2 strict/minimal differences")


# 5 -------------------------------------------------------------------------

def _q_literals(m: GeneralizedInterpretation):
    return frozenset(Literal(a, a not in m.positive) for a in m.atoms)


def test_criterion_5_dynamic_semantics():
    problems = []
    rain = load("rain.glp", mode="glp")
    if [m.positive for m in dynamic_stable_models(rain)] != [{"it_is_raining"}]:
        problems.append("rain: dynamic models")
    q_rain = update_answer_sets(q_translate(rain))
    if set(q_rain) != {lits("it_is_raining"), lits("-it_is_raining")}:
        problems.append("rain: Q answer sets")
    rain_elp = load("rain_elp.lp")
    if dynamic_answer_sets(rain_elp) != [lits("it_is_raining")] or len(update_answer_sets(rain_elp)) != 2:
        problems.append("rain: extended strict containment")
    tv = load("tv.glp", mode="glp")
    if [m.positive for m in dynamic_stable_models(tv)] != [{"tv_on", "watch_tv"}]:
        problems.append("tv: dynamic model")
    if update_answer_sets(q_translate(tv)) != [lits("-power_failure", "tv_on", "watch_tv", "-sleep")]:
        problems.append("tv: Q answer set")
    cloudy = load("cloudy.glp", mode="glp")
    if {m.positive for m in dynamic_stable_models(cloudy)} != {frozenset(), frozenset({"it_is_raining",
                                                                                       "it_is_cloudy"})}:
        problems.append("cloudy: dynamic models")

    rng = random.Random(5)
    uncontained = 0
    for _ in range(200):
        g = random_glp_sequence(rng, atoms=rng.randint(1, 4), programs=rng.randint(1, 3))
        q = set(update_answer_sets(q_translate(g)))
        uncontained += sum(_q_literals(m) not in q for m in dynamic_stable_models(g))
    for seq in _suite(55, 200, atoms=4):
        u = set(update_answer_sets(seq))
        uncontained += sum(s not in u for s in dynamic_answer_sets(seq))
    if uncontained:
        problems.append(f"{uncontained} dynamic models outside the update answer sets")
    record(5, not problems, problems or "examples match; containment on 400 random sequences")


# 6 -------------------------------------------------------------------------

def test_criterion_6_graph_condition():
    t0 = time.perf_counter()
    rng = random.Random(6)
    wrong, entries, fired, cert_wrong = 0, 0, 0, 0
    for k in range(300):
        if k % 2 == 0:
            g = random_glp_sequence(rng, atoms=rng.randint(1, 4), programs=rng.randint(1, 3))
            rep = coincidence_check(g)
            for e in rep.entries:
                direct = is_dynamic_stable(g, {l.atom for l in e.answer_set if not l.neg})
                wrong += e.graph_says_dynamic != direct
            if rep.certificate:
                fired += 1
                q = {frozenset(l.atom for l in e.answer_set if not l.neg) for e in rep.entries}
                dyn = {m.positive for m in dynamic_stable_models(g)}
                cert_wrong += q != dyn
        else:
            seq = random_sequence(rng, atoms=rng.randint(1, 4), programs=rng.randint(1, 3), rules=6)
            rep = coincidence_check(seq, level=ELP)
            for e in rep.entries:
                wrong += e.graph_says_dynamic != is_dynamic_answer_set(seq, e.answer_set)
        entries += len(rep.entries)
    dt = time.perf_counter() - t0
    record(6, wrong == 0 and cert_wrong == 0 and dt < 300,
           f"{entries} answer sets, {wrong} graph/fixpoint mismatches;"
           f" certificate fired {fired} times, {cert_wrong} without bijection; {dt:.1f}s")


# 7 -------------------------------------------------------------------------

def test_criterion_7_postulate_ledger():
    rep = run_regression_suite(seed=0, random_instances=200)
    off = [r.row for r in rep.rows if not r.reproduced]
    further = {n: check_further_property(n, inst).fails for n, inst in FURTHER_FIXTURES.items()}
    rng = random.Random(41)
    ok = bad = tried = 0
    while ok + bad < 100 and tried < 20000:
        tried += 1
        seq = random_sequence(rng, atoms=3, programs=rng.randint(3, 4), rules=8)
        m = rng.randint(2, len(seq) - 1)
        if iterativity_condition(seq, m):
            if iterated_equivalent(seq, m):
                ok += 1
            else:
                bad += 1
    passed = not off and all(further.values()) and ok == 100 and bad == 0
    record(7, passed, f"rows not reproduced: {off or 'none'}; counterexamples reproduce: {further};"
                      f" iterated equivalence {ok} ok / {bad} bad")


# 8 -------------------------------------------------------------------------

def test_criterion_8_solver_oracle():
    rng = random.Random(8)
    bad = 0
    for _ in range(1000):
        atoms = atoms_named(rng.randint(1, 8))
        p = random_program(rng, atoms, max_rules=10, strong=0.3, constraints=0.1)
        bad += answer_sets(p) != answer_sets_bruteforce(p)
    record(8, bad == 0, f"{bad} of 1000 programs differ from brute force")


# 9 -------------------------------------------------------------------------

def _cli(*args):
    env = dict(os.environ)
    return subprocess.run([sys.executable, "-m", "causalupd", *map(str, args)],
                          capture_output=True, env=env)


def test_criterion_9_cli_contract():
    sat = ("solve", "--show-rejected", DATA / "tv1.lp", DATA / "tv2.lp", DATA / "tv3.lp", DATA / "tv4.lp")
    runs = [_cli(*sat) for _ in range(3)]
    structured = [_cli("solve", "--format=structured", DATA / "concert.lp") for _ in range(2)]
    identical = len({r.stdout for r in runs}) == 1 and len({r.stdout for r in structured}) == 1
    codes = (runs[0].returncode, _cli("solve", DATA / "contradiction.lp").returncode,
             _cli("solve", DATA / "malformed.lp").returncode)
    record(9, identical and codes == (0, 1, 2), f"byte-identical: {identical}, exit codes {codes}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
