"""The acceptance criteria, run once and reported one line per criterion."""
import pytest

from projpoly.acceptance import CRITERIA, report, run

NUMBERS = [c[0] for c in CRITERIA]


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run(seed=0)}


def test_all_criteria_ran(results, capsys):
    with capsys.disabled():
        print()
        print(report([results[n] for n in NUMBERS]))
    assert sorted(results) == NUMBERS == list(range(1, 14))


@pytest.mark.parametrize("number", NUMBERS)
def test_criterion(results, number):
    r = results[number]
    assert r.ok, r.line()
    assert r.seconds <= r.limit


def test_mutated_g_fails_criterion_2():
    (r,) = run(only=[2], mutate=True)
    assert not r.ok


def test_mutation_leaves_certificate_check_alone():
    (r,) = run(only=[4], mutate=True)
    assert r.ok
