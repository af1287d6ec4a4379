# -*- coding: utf-8 -*-

"""
Tests for the acceptance suite behind the `verify` command.
"""

# **** IMPORTS ****
import pytest

from treewalk.fixtures import build_fixture
from treewalk.verification import (
    SLOPE_SLACK,
    CheckResult,
    _guarded,
    check_activity,
    check_bound_slope,
    check_commute_identity,
    check_group_orders,
    check_reduction,
    check_section_laws,
    check_star_paths,
    check_symmetric,
    results_to_csv,
    run_suite,
)
from treewalk.exceptions import BudgetError, PreconditionError, ValidationError

# **** FIXTURES ****
@pytest.fixture(scope="module")
def hanoi():
    return build_fixture("hanoi")


@pytest.fixture(scope="module")
def mother3():
    return build_fixture("mother3")


def _raises(error):
    def check():
        raise error
    return check


# **** TESTS ****
def test_guarded_skips_unmet_preconditions_and_fails_other_errors():
    skipped = _guarded("levels", _raises(PreconditionError("too shallow")))
    assert skipped.skipped and skipped.detail == "too shallow"
    assert _guarded("budget", _raises(BudgetError("out of keys"))).skipped
    failed = _guarded("input", _raises(ValidationError("bad word")))
    assert failed.passed is False and failed.detail == "bad word"
    assert _guarded("fine", lambda: (True, "ok")) == CheckResult("fine", True, "ok")


def test_results_csv_marks_skips_and_strips_commas():
    text = results_to_csv([CheckResult("a", True, "x, y"), CheckResult("b", None, "")])
    assert text.splitlines() == ["check,passed,detail", "a,true,x; y", "b,skipped,"]


def test_automaton_checks_pass_on_hanoi(hanoi):
    assert check_symmetric(hanoi, hanoi.measure)[0]
    assert check_activity(hanoi)[0]
    assert check_reduction(hanoi)[0]
    passed, detail = check_section_laws(hanoi)
    assert passed, detail
    assert check_commute_identity(hanoi, hanoi.measure, 1)[0]


def test_directed_checks_pass_on_mother(mother3):
    passed, detail = check_group_orders(mother3)
    assert passed and detail == "|A| = 72 |B| = 6"
    assert check_star_paths(mother3, range(1, 5))[0]


@pytest.mark.slow
def test_suite_skips_what_does_not_apply(mother3):
    names = [result.name for result in run_suite(mother3, mother3.measure, range(1, 3))]
    assert "activity" not in names and "section_laws" not in names
    assert {"group_orders", "star_paths", "resistance_growth"} <= set(names)


def test_bound_slope_needs_deep_enough_levels(hanoi):
    with pytest.raises(PreconditionError):
        check_bound_slope(hanoi, hanoi.measure, range(1, 3))


@pytest.mark.slow
def test_bound_slope_stays_below_alpha_on_the_top_decade(hanoi):
    passed, detail = check_bound_slope(hanoi, hanoi.measure, range(1, 6))
    assert passed, detail
    slope, alpha = (float(part) for part in detail.split()[1::2])
    assert slope <= alpha + SLOPE_SLACK
