import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ..errors import FalsificationError
from ..misc import get_hash, json_dumps

try:
    from termcolor import colored
except ImportError:

    def colored(string, color=None, *args, **kwargs):
        codes = {"green": "\033[92m", "red": "\033[91m", "yellow": "\033[93m"}
        return codes.get(color, "") + str(string) + "\033[0m"


logger = logging.getLogger("wrtkernel.batchrun")


class ResourceManager:
    """A pool of worker slots handed out through ``allocate``."""

    def __init__(self, items: List[Any]) -> None:
        self._resources = asyncio.Queue()
        for item in items:
            self._resources.put_nowait(item)
        self._lock = asyncio.Lock()

    @asynccontextmanager
    async def allocate(self, quantity: int = 1):
        items = []
        async with self._lock:
            for _ in range(quantity):
                items.append(await self._resources.get())
        try:
            yield items
        finally:
            for item in items:
                await self._resources.put(item)


@dataclass
class Task:
    """One suite instance: ``fn(*args, **kwargs)`` returns a JSON-ready payload."""

    key: str
    fn: Callable[..., Dict[str, Any]]
    args: tuple = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)


@dataclass
class TaskResult:
    key: str
    passed: bool
    payload: Optional[Dict[str, Any]] = None
    falsified: Optional[str] = None
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def digest(self) -> Optional[str]:
        return None if self.payload is None else get_hash(json_dumps(self.payload))

    def to_json(self) -> dict:
        return {"key": self.key, "pass": self.passed, "digest": self.digest,
                "falsified": self.falsified, "error": self.error}


def run_task(task: Task) -> TaskResult:
    """Run one task, sorting its outcome into pass, falsification or error."""
    start = time.time()
    try:
        payload = task.fn(*task.args, **task.kwargs)
        return TaskResult(task.key, True, payload, seconds=time.time() - start)
    except FalsificationError as err:
        return TaskResult(task.key, False, falsified=str(err), seconds=time.time() - start)
    except Exception as err:
        return TaskResult(task.key, False, error=f"{type(err).__name__}: {err}", seconds=time.time() - start)


class Launcher:
    def __init__(self, jobs: int = 1) -> None:
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        self.jobs = jobs

    def run(self, tasks: List[Task]) -> List[TaskResult]:
        results = asyncio.run(self._run(tasks))
        return sorted(results, key=lambda result: result.key)

    async def _run(self, tasks: List[Task]) -> List[TaskResult]:
        rm = ResourceManager(list(range(self.jobs)))
        executor = ProcessPoolExecutor(max_workers=self.jobs) if self.jobs > 1 else None
        try:
            jobs = [self._launch_task(task, i + 1, rm, executor, total=len(tasks)) for i, task in enumerate(tasks)]
            return await asyncio.gather(*jobs)
        finally:
            if executor is not None:
                executor.shutdown()

    async def _launch_task(self, task: Task, task_id: int, resource_manager: ResourceManager,
                           executor: Optional[Executor], **kwargs) -> TaskResult:
        total = str(kwargs.get('total', '?'))
        async with resource_manager.allocate() as slots:
            if executor is None:
                result = run_task(task)
            else:
                loop = asyncio.get_running_loop()
                result = await loop.run_in_executor(executor, run_task, task)
        slot = ",".join(map(str, slots))
        if result.passed:
            logger.info("%s Task[%d/%s] SLOT=%s (time: %.2fs): %s", colored("SUCCESS", "green"),
                        task_id, total, slot, result.seconds, task.key)
        elif result.falsified:
            logger.error("%s Task[%d/%s] SLOT=%s (time: %.2fs): %s: %s", colored("FAIL", "red"),
                         task_id, total, slot, result.seconds, task.key, result.falsified)
        else:
            logger.warning("%s Task[%d/%s] SLOT=%s (time: %.2fs): %s: %s", colored("FAIL", "yellow"),
                           task_id, total, slot, result.seconds, task.key, result.error)
        return result
