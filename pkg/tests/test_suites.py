#!/usr/bin/env python

"""Tests for `wrtkernel.suites`."""
import pytest

from wrtkernel.batchrun import run_task
from wrtkernel.suites import ALIASES, SUITES, build_thm1, build_tasks, root_pochhammer_instance


def test_registry():
    assert {"s3", "gauss", "splitting", "oracles", "pairing", "appendix"} <= set(SUITES)
    assert all(entry.doc for entry in SUITES.values())


def test_unknown_suite():
    with pytest.raises(KeyError):
        build_tasks("nope")


@pytest.mark.parametrize("name,rmax", [("s3", 4), ("gauss", 6), ("roots", 5), ("pochhammer", 8), ("splitting", 3),
                                       ("vanishing", 6), ("pairing", 1), ("appendix", 3)])
def test_small_suite_passes(name, rmax):
    tasks = build_tasks(name, rmax)
    assert tasks
    assert len({task.key for task in tasks}) == len(tasks)
    for task in tasks:
        result = run_task(task)
        assert result.passed, (task.key, result.falsified, result.error)


def test_thm1_box():
    exhaustive = [task for task in build_thm1(6) if task.key.startswith("thm1:")]
    assert len(exhaustive) == 7 * 7
    assert {task.args[-1] for task in exhaustive} == {3}
    assert {task.args[0] for task in exhaustive} == set(range(7))


@pytest.mark.parametrize("alias,name", [("thm2", "thm1"), ("prop32", "rootdiv"), ("lemma12", "vanishing")])
def test_aliases(alias, name):
    assert ALIASES[alias] == name
    assert [t.key for t in build_tasks(alias, 4)] == [t.key for t in build_tasks(name, 4)]


def test_pochhammer_range():
    tasks = build_tasks("pochhammer")
    assert [task.args for task in tasks] == [(r,) for r in range(2, 51)]
    assert root_pochhammer_instance(50) == {"r": 50, "value": 50}
