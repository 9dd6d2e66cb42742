"""Acceptance suite: one test per verification criterion.

Each test runs the corresponding numbered criterion from pbent.verify and
prints its summary line, so `pytest -v tests/test_acceptance.py` yields one
pass/fail line per criterion. All expected values inside the criteria are
exact (integer counts, frozen coefficient shapes, zero-tolerance equality);
the only budgets are the per-criterion wall-clock limits enforced by
run_criterion itself.
"""

import pytest

from pbent.verify import run_criterion


def _check(number: int) -> None:
    res = run_criterion(number)
    print(res.line())
    assert res.passed, f"{res.line()} details={res.details} error={res.error}"


def test_criterion_1_example_2_classification():
    _check(1)


def test_criterion_2_example_3_classification():
    _check(2)


def test_criterion_3_examples_4_5_6_classification():
    _check(3)


def test_criterion_4_monomial_kernel_dimensions():
    _check(4)


def test_criterion_5_binomial_near_bent_criteria():
    _check(5)


def test_criterion_6_even_dimension_scan_counts():
    _check(6)


def test_criterion_7_odd_dimension_scan_all_weakly_regular():
    _check(7)


def test_criterion_8_random_glueings_prediction_matches_spectrum():
    _check(8)


def test_criterion_9_engine_cross_checks():
    _check(9)
