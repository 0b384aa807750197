#!/usr/bin/env python

"""Tests for `wrtkernel.batchrun`."""
import asyncio

import pytest

from wrtkernel.batchrun import Launcher, ResourceManager, Task, run_task
from wrtkernel.errors import FalsificationError, RootSpecError


def passing(n):
    return {"n": n, "square": n * n}


def falsifying(n):
    raise FalsificationError(f"{n} is not a square")


def erroring(n):
    raise RootSpecError(f"r={n} is not admissible")


def crashing(n):
    return n + "1"


@pytest.fixture
def tasks():
    """A mixed batch given out of key order."""
    return [Task("c", erroring, (1,)), Task("b", falsifying, (2,)), Task("a", passing, (3,)),
            Task("d", passing, kwargs={"n": 4})]


def test_run_task_outcomes():
    ok = run_task(Task("ok", passing, (2,)))
    assert ok.passed and ok.payload == {"n": 2, "square": 4}
    assert ok.digest is not None
    bad = run_task(Task("bad", falsifying, (2,)))
    assert not bad.passed
    assert bad.falsified == "2 is not a square"
    assert bad.digest is None
    err = run_task(Task("err", erroring, (0,)))
    assert err.error.startswith("RootSpecError")
    assert err.falsified is None


def test_launcher_sorted(tasks):
    results = Launcher(1).run(tasks)
    assert [r.key for r in results] == ["a", "b", "c", "d"]
    assert [r.to_json()["pass"] for r in results] == [True, False, False, True]
    assert results[1].to_json()["falsified"]
    assert results[2].to_json()["error"]


def test_launcher_jobs_agree(tasks):
    serial = [r.to_json() for r in Launcher(1).run(tasks)]
    parallel = [r.to_json() for r in Launcher(2).run(tasks)]
    assert serial == parallel


def test_launcher_rejects_zero_jobs():
    with pytest.raises(ValueError):
        Launcher(0)


def test_resource_manager():
    async def grab():
        rm = ResourceManager([0, 1])
        async with rm.allocate(2) as slots:
            first = sorted(slots)
        async with rm.allocate() as slots:
            second = slots
        return first, second

    first, second = asyncio.run(grab())
    assert first == [0, 1]
    assert len(second) == 1


def test_unexpected_exception_is_an_error_entry():
    results = Launcher(1).run([Task("x", crashing, (1,)), Task("y", passing, (2,))])
    assert results[0].error.startswith("TypeError")
    assert results[0].falsified is None
    assert results[1].passed
